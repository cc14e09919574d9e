"""The shape-times-fill construction and the generating morphisms.

theta(X, Y) replaces every simplex of the shape X that is not a
degenerate point by a copy of the fill Y, producing a precategory whose
objects are the vertices of X.  On top of it sit the spine inclusions,
the filler arrows boit_m(g) (asserting that chains of m composable cells
extend to simplices against g), the corner inclusions attach_n(g)
generating levelwise cofibrations, the representing bijection between
maps out of a simplex shape and elements of a fiber, and the
level-replacement constructions reg / seg / rs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import delta
from .delta import MonotoneMap
from .errors import BudgetError, StructureError
from .precat import (BiEl, Precategory, PrecatMap, biel_of,
                     degenerate_object, empty_precategory,
                     fiber_product_of_homs, point_precategory,
                     precat_pushout, precat_pushout_universal,
                     extract_bipresentation, identity_pmap, segal_map)
from .sset import (El, FiniteSimplicialSet, SSetMap, empty_sset,
                   extract_presentation, identity_map, point,
                   standard_simplex, boundary, simplex_inclusion,
                   is_connected_sset)


# -- the bifunctor --------------------------------------------------------

def theta(X, Y, name=None):
    """The precategory with object set the vertices of X and one copy of
    Y over every non-degenerate simplex of X of positive dimension."""
    name = name or "(%s@%s)" % (X.name, Y.name)
    gens = {}
    efaces = {}
    ifaces = {}
    for v in X.gens_of_dim(0):
        gens[_obj_id(v)] = (0, 0)
    for x, p in X.gens.items():
        if p == 0:
            continue
        for y, q in Y.gens.items():
            gens[_cell_id(x, y)] = (p, q)
    for x, p in X.gens.items():
        if p == 0:
            continue
        for y, q in Y.gens.items():
            gid = _cell_id(x, y)
            for i in range(p + 1):
                fx = X.face(x, i)
                if X.gens[fx.gen] == 0:
                    # the face collapses to an object
                    efaces[(gid, i)] = degenerate_object(
                        _obj_id(fx.gen), p - 1, q)
                else:
                    efaces[(gid, i)] = BiEl(fx.word, (), _cell_id(fx.gen, y))
            for j in range(q + 1):
                if q < 1:
                    continue
                fy = Y.face(y, j)
                ifaces[(gid, j)] = BiEl((), fy.word, _cell_id(x, fy.gen))
    return Precategory(name, gens, efaces, ifaces)


def _obj_id(v):
    return "o(%s)" % v


def _cell_id(x, y):
    return "c(%s;%s)" % (x, y)


def theta_map(f, g, name=None):
    """The induced map theta(f.source, g.source) -> theta(f.target,
    g.target); the bifunctor preserves pushouts in each argument."""
    src = theta(f.source, g.source)
    tgt = theta(f.target, g.target)
    assign = {}
    for v in f.source.gens_of_dim(0):
        assign[_obj_id(v)] = biel_of(_obj_id(f.assign[v].gen))
    for x, p in f.source.gens.items():
        if p == 0:
            continue
        fx = f.assign[x]
        for y, q in g.source.gens.items():
            gid = _cell_id(x, y)
            if f.target.gens[fx.gen] == 0:
                assign[gid] = degenerate_object(_obj_id(fx.gen), p, q)
            else:
                gy = g.assign[y]
                assign[gid] = BiEl(fx.word, gy.word, _cell_id(fx.gen, gy.gen))
    return PrecatMap(src, tgt, assign)


def upsilon(m):
    """The spine: m composable edges through m + 1 vertices."""
    if m < 1:
        raise StructureError("spine needs at least one edge")
    gens = {str(v): 0 for v in range(m + 1)}
    faces = {}
    for k in range(m):
        e = "e%d" % k
        gens[e] = 1
        faces[(e, 0)] = El((), str(k + 1))
        faces[(e, 1)] = El((), str(k))
    return FiniteSimplicialSet("Upsilon(%d)" % m, gens, faces)


def spine_inclusion(m):
    """i_m : Upsilon(m) -> Delta[m], edge k to the principal edge
    (k, k+1)."""
    src = upsilon(m)
    tgt = standard_simplex(m)
    assign = {str(v): El((), str(v)) for v in range(m + 1)}
    for k in range(m):
        assign["e%d" % k] = El((), "%d.%d" % (k, k + 1))
    return SSetMap(src, tgt, assign)


# -- generating arrows ----------------------------------------------------

@dataclass
class GeneratingArrow:
    tag: str
    params: dict
    map: PrecatMap
    arrow_id: str = field(default="")

    def __post_init__(self):
        if not self.arrow_id:
            self.arrow_id = "%s(%s)" % (
                self.tag, ",".join("%s=%s" % kv
                                   for kv in sorted(self.params.items())))

    @property
    def source(self):
        return self.map.source

    @property
    def target(self):
        return self.map.target

    def __repr__(self):
        return "GeneratingArrow(%s)" % self.arrow_id


def boit(m, g, name=None):
    """The filler arrow at level m for g : E -> F.

    Source: the pushout of Upsilon(m)@F <- Upsilon(m)@E -> Delta[m]@E;
    target: Delta[m]@F; the arrow is the universal map, a levelwise mono
    whenever g is one.
    """
    if m < 2:
        raise StructureError("filler arrows need m >= 2")
    i_m = spine_inclusion(m)
    left = theta_map(identity_map(i_m.source), g)     # Up@E -> Up@F
    right = theta_map(i_m, identity_map(g.source))    # Up@E -> Delta[m]@E
    po = precat_pushout(left, right, name or "B(%d)" % m)
    into_tgt_left = theta_map(i_m, identity_map(g.target))
    into_tgt_right = theta_map(identity_map(i_m.target), g)
    real = precat_pushout_universal(po, into_tgt_left, into_tgt_right)
    arrow = GeneratingArrow("boit", {"m": m}, real)
    arrow.pushout = po
    arrow.g = g
    return arrow


def attach(n, g, name=None):
    """The corner inclusion at external degree n for a mono g : X -> Y.

    Source: Delta[n]@X glued with bd(Delta[n])@Y over bd(Delta[n])@X;
    target: Delta[n]@Y.
    """
    if n < 1:
        raise StructureError("corner inclusions need n >= 1")
    gens_inj = all(not el.word for el in g.assign.values())
    if not (gens_inj and len({e.gen for e in g.assign.values()})
            == len(g.assign)):
        raise StructureError("corner inclusions require a mono")
    bd = simplex_inclusion(n)
    left = theta_map(bd, identity_map(g.source))      # bd@X -> Delta[n]@X
    right = theta_map(identity_map(bd.source), g)     # bd@X -> bd@Y
    po = precat_pushout(left, right, name or "corner(%d)" % n)
    into_tgt_left = theta_map(identity_map(bd.target), g)
    into_tgt_right = theta_map(bd, identity_map(g.target))
    real = precat_pushout_universal(po, into_tgt_left, into_tgt_right)
    arrow = GeneratingArrow("attach", {"n": n}, real)
    arrow.pushout = po
    return arrow


def object_inclusion():
    return GeneratingArrow(
        "obj", {},
        PrecatMap(empty_precategory(), point_precategory(), {}, check=False))


def equiv_theta(k):
    """Delta[1]@g for the boundary inclusion g_k."""
    g = simplex_inclusion(k)
    return GeneratingArrow("equiv_theta", {"k": k},
                           theta_map(identity_map(standard_simplex(1)), g))


@dataclass
class GeneratingFamilies:
    fg1: list
    fg2: list
    cofibrations: list

    def all_arrows(self):
        return self.fg1 + self.fg2 + self.cofibrations


def generating_families(max_m, max_k):
    """The generating families for the simplicial enrichment, with the
    boundary inclusions as the only input arrows: the categorification
    family (filler arrows), the equivalence family (object inclusion plus
    shifted boundary inclusions) and the cofibration family (object
    inclusion plus corner inclusions)."""
    if max_m < 2 or max_k < 0:
        raise StructureError("bounds too small")
    fg1 = []
    for m in range(2, max_m + 1):
        for k in range(max_k + 1):
            arrow = boit(m, simplex_inclusion(k))
            arrow.params["k"] = k
            arrow.arrow_id = "boit(m=%d,k=%d)" % (m, k)
            fg1.append(arrow)
    fg2 = [object_inclusion()] + [equiv_theta(k) for k in range(max_k + 1)]
    cof = [object_inclusion()]
    for n in range(1, max_m + 1):
        for k in range(max_k + 1):
            arrow = attach(n, simplex_inclusion(k))
            arrow.params["k"] = k
            arrow.arrow_id = "attach(n=%d,k=%d)" % (n, k)
            cof.append(arrow)
    return GeneratingFamilies(fg1, fg2, cof)


# -- exhaustive map enumeration -------------------------------------------

def enumerate_sset_maps(C, D, budget=None, require=None):
    """All simplicial maps C -> D by backtracking over generator
    assignments in dimension order; `require` may pin images of some
    generators."""
    from .config import default_budget
    budget = default_budget(budget)
    order = sorted(C.gens, key=lambda g: (C.gens[g], g))
    results = []
    nodes = [0]

    def compatible(assign, g, img):
        d = C.gens[g]
        for i in range(d + 1):
            if d < 1:
                break
            fel = C.face(g, i)
            if fel.gen in assign:
                want = SSetMap(C, D, assign, check=False)(fel) \
                    if False else _apply_partial(C, D, assign, fel)
                got = D.act(delta.coface(i, d), img)
                if want != got:
                    return False
        return True

    def rec(k, assign):
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetError("map enumeration budget exceeded")
        if k == len(order):
            results.append(SSetMap(C, D, dict(assign), check=False))
            return
        g = order[k]
        d = C.gens[g]
        if require and g in require:
            candidates = [require[g]]
        else:
            candidates = D.level(d)
        for img in candidates:
            if compatible(assign, g, img):
                assign[g] = img
                rec(k + 1, assign)
                del assign[g]

    rec(0, {})
    return results


def _apply_partial(C, D, assign, el):
    image = assign[el.gen]
    if not el.word:
        return image
    n = C.degree_of(el)
    eta = delta.surjection_from_word(n, el.word)
    return D.act(eta, image)


def enumerate_precat_maps(A, B, budget=None, require=None):
    """All precategory maps A -> B, backtracking in bidegree order."""
    from .config import default_budget
    budget = default_budget(budget)
    order = sorted(A.gens, key=lambda g: (A.gens[g], g))
    results = []
    nodes = [0]

    def partial_apply(assign, el):
        image = assign[el.gen]
        p, q = A.bidegree_of(el)
        etaE = delta.surjection_from_word(p, el.eword)
        etaI = delta.surjection_from_word(q, el.iword)
        return B.act(etaE, etaI, image)

    def compatible(assign, g, img):
        p, q = A.gens[g]
        for i in range(p + 1):
            if p < 1:
                break
            fel = A.eface(g, i)
            if fel.gen in assign:
                if partial_apply(assign, fel) != B.act(
                        delta.coface(i, p), delta.identity(q), img):
                    return False
        for j in range(q + 1):
            if q < 1:
                break
            fel = A.iface(g, j)
            if fel.gen in assign:
                if partial_apply(assign, fel) != B.act(
                        delta.identity(p), delta.coface(j, q), img):
                    return False
        return True

    def rec(k, assign):
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetError("map enumeration budget exceeded")
        if k == len(order):
            results.append(PrecatMap(A, B, dict(assign), check=False))
            return
        g = order[k]
        p, q = A.gens[g]
        if require and g in require:
            candidates = [require[g]]
        else:
            candidates = B.elements(p, q)
        for img in candidates:
            if compatible(assign, g, img):
                assign[g] = img
                rec(k + 1, assign)
                del assign[g]

    rec(0, {})
    return results


# -- the representing bijection -------------------------------------------

def transpose_simplex_map(m, C, F):
    """From a map Delta[m]@C -> A, the pair (object tuple, simplicial map
    C -> fiber(A, m, t))."""
    A = F.target
    src_shape = standard_simplex(m)
    top = ".".join(str(v) for v in range(m + 1))
    t = tuple(F.assign[_obj_id(str(v))].gen for v in range(m + 1))
    fib = A.fiber(m, t)
    assign = {}
    for y, q in F.source.gens.items():
        pass
    for y in C.gens:
        img = F.assign[_cell_id(top, y)]
        assign[y] = A.biel_to_level_el(m, img)
    return t, SSetMap(C, fib, assign)


def untranspose_simplex_map(m, C, A, t, f):
    """From an object tuple and a map C -> fiber(A, m, t), the map
    Delta[m]@C -> A."""
    shape = standard_simplex(m)
    src = theta(shape, C)
    assign = {}
    for v in range(m + 1):
        assign[_obj_id(str(v))] = biel_of(t[v])
    for x, p in shape.gens.items():
        if p == 0:
            continue
        inj = MonotoneMap(p, m, tuple(int(s) for s in x.split(".")))
        for y, q in C.gens.items():
            el = f(El((), y))
            biel = A.level_el_to_biel(m, el)
            assign[_cell_id(x, y)] = A.act(inj, delta.identity(q), biel)
    return PrecatMap(src, A, assign)


def transpose_spine_map(m, C, F):
    """From a map Upsilon(m)@C -> A, the object tuple and the map of C
    into the product of consecutive hom fibers."""
    A = F.target
    t = tuple(F.assign[_obj_id(str(v))].gen for v in range(m + 1))
    ext = fiber_product_of_homs(A, t)
    assign = {}
    for y, q in C.gens.items():
        combo = tuple(A.biel_to_level_el(1, F.assign[_cell_id("e%d" % k, y)])
                      for k in range(m))
        assign[y] = ext.el_of(q, combo)
    return t, SSetMap(C, ext.sset, assign), ext


def untranspose_spine_map(m, C, A, t, combo_of):
    """From an object tuple and per-edge maps C -> A_1(t_k, t_{k+1}),
    the map Upsilon(m)@C -> A.  combo_of(y) lists the m level-1 images
    of a generator y of C."""
    src = theta(upsilon(m), C)
    assign = {}
    for v in range(m + 1):
        assign[_obj_id(str(v))] = biel_of(t[v])
    for k in range(m):
        for y, q in C.gens.items():
            el = combo_of(y)[k]
            assign[_cell_id("e%d" % k, y)] = A.level_el_to_biel(1, el)
    return PrecatMap(src, A, assign)


def hom_transposition_check(m, C, A, budget=None):
    """Exhaustively verify the representing bijection for Delta[m]@C:
    maps into A correspond to pairs (tuple, map of C into the fiber), and
    both round trips are identities.  Returns the two counts."""
    direct = enumerate_precat_maps(theta(standard_simplex(m), C), A,
                                   budget=budget)
    total = 0
    objs = A.objects()
    seen = set()
    for t in itertools.product(objs, repeat=m + 1):
        fib = A.fiber(m, t)
        maps = enumerate_sset_maps(C, fib, budget=budget)
        total += len(maps)
        for f in maps:
            F = untranspose_simplex_map(m, C, A, t, f)
            t2, f2 = transpose_simplex_map(m, C, F)
            if t2 != t or any(f2.assign[y] != f.assign[y] for y in C.gens):
                raise StructureError("transposition round trip failed")
            seen.add(_pmap_key(F))
    for F in direct:
        t, f = transpose_simplex_map(m, C, F)
        F2 = untranspose_simplex_map(m, C, A, t, f)
        if _pmap_key(F2) != _pmap_key(F):
            raise StructureError("untransposition round trip failed")
    if len(direct) != total or {_pmap_key(F) for F in direct} != seen:
        raise StructureError("transposition counts disagree")
    return len(direct), total


def spine_transposition_count(m, C, A, budget=None):
    """|Hom(Upsilon(m)@C, A)| compared with the total count of maps of C
    into the products of consecutive hom fibers."""
    direct = enumerate_precat_maps(theta(upsilon(m), C), A, budget=budget)
    total = 0
    for t in itertools.product(A.objects(), repeat=m + 1):
        ext = fiber_product_of_homs(A, t)
        total += len(enumerate_sset_maps(C, ext.sset, budget=budget))
    if len(direct) != total:
        raise StructureError("spine transposition counts disagree")
    return len(direct), total


def _pmap_key(F):
    return tuple(sorted(F.assign.items()))


# -- level replacement constructions --------------------------------------

def _as_tuple_of_objects(A, m):
    """The discrete presentation of the (m+1)-fold product of the object
    set, with elements the object tuples."""
    objs = A.objects()
    gens = {",".join(t): 0 for t in itertools.product(objs, repeat=m + 1)}
    return FiniteSimplicialSet("objs^%d" % (m + 1), gens, {}, check=False)


def object_tuple_map(A, m):
    """level(A, m) -> objects^(m+1), induced by the vertices."""
    lv = A.level(m)
    tgt = _as_tuple_of_objects(A, m)
    assign = {}
    for gid, (ew, g) in lv._precat_meta.items():
        t = A.object_tuple_of(BiEl(ew, (), g))
        assign[gid] = El(tuple(range(lv.gens[gid])), ",".join(t))
    return SSetMap(lv, tgt, assign, check=False)


@dataclass
class ReplacementSlot:
    """One level replacement: glue a copy of `f : dom -> repl` over every
    index map [q] -> [level]; `collapse` evaluates the structure maps on
    index maps that leave the index set."""

    name: str
    level: int
    dom: FiniteSimplicialSet
    f: SSetMap
    indexset: object
    collapse: object


class ReplacementResult:
    """A replaced precategory plus the bookkeeping needed for canonical
    comparisons: the extraction, the canonical map from the input, and
    the class lookup for raw tokens."""

    def __init__(self, precat, extraction, canonical, class_of, slots):
        self.precat = precat
        self.extraction = extraction
        self.canonical = canonical
        self._class_of = class_of
        self.slots = slots

    def biel_of_token(self, p, q, token):
        return self.extraction.biel_of(p, q, self._class_of(p, q, token))

    def copy_gens(self, slot_name, at_level=None):
        """Generators of the result whose class contains a copy token of
        the named slot (optionally only copies indexed by the identity)."""
        out = []
        for gid, tok in self.extraction.token_of_gen.items():
            if tok[0] == slot_name:
                x = tok[1]
                if at_level is None or (x.is_identity
                                        and x.source_arity == at_level):
                    out.append(gid)
        return sorted(out)


def _replacement(A, slots, name, extra_int=0, extra_ext=0):
    from .sset import _UnionFind
    max_ext = max([A.ext_dim, extra_ext] + [s.level for s in slots] + [0])
    max_int = max([A.int_dim, extra_int, 0])
    ufs = {}
    for q in range(max_ext + 1):
        for n in range(max_int + 1):
            uf = _UnionFind()
            for el in A.elements(q, n):
                uf.add(("A", el))
            for s in slots:
                for x in s.indexset(q):
                    for r_el in s.f.target.level(n):
                        uf.add((s.name, x, r_el))
            for s in slots:
                for x in s.indexset(q):
                    for a_el in s.dom.level(n):
                        biel = A.level_el_to_biel(s.level, a_el)
                        moved = A.act(x, delta.identity(n), biel)
                        uf.add((s.name, x, s.f(a_el)))
                        uf.add(("A", moved))
                        uf.union((s.name, x, s.f(a_el)), ("A", moved))
            ufs[(q, n)] = uf

    slot_by_name = {s.name: s for s in slots}

    def resolve(token, q, n):
        """Send a raw token to its class root, collapsing slot tokens
        whose index left the index set."""
        if token[0] == "A":
            return ufs[(q, n)].find(token)
        s = slot_by_name[token[0]]
        x, el = token[1], token[2]
        if x in set(s.indexset(q)):
            return ufs[(q, n)].find(token)
        return resolve(s.collapse(el, x, q, n), q, n)

    def levels(q, n):
        uf = ufs[(q, n)]
        return sorted({uf.find(t) for t in uf.parent}, key=repr)

    def act(ops, token):
        fe, fi = ops
        q, n = fe.source_arity, fi.source_arity
        if token[0] == "A":
            moved = A.act(fe, fi, token[1])
            return resolve(("A", moved), q, n)
        s = slot_by_name[token[0]]
        x, el = token[1], token[2]
        moved_el = s.f.target.act(fi, el)
        return resolve((s.name, x.compose(fe), moved_el), q, n)

    ext = extract_bipresentation(name, levels, act, max_ext, max_int)
    out = ext.precat
    canonical = PrecatMap(
        A, out,
        {g: ext.biel_of(A.gens[g][0], A.gens[g][1],
                        ufs[A.gens[g]].find(("A", biel_of(g))))
         for g in A.gens})

    def class_of(q, n, token):
        return resolve(token, q, n)

    return ReplacementResult(out, ext, canonical, class_of, slots)


def reg(A, p, f, g, name=None):
    """Replace external level p along f : level(A, p) -> B; the vertex
    data g : B -> objects^(p+1) must extend the vertex map of the level.
    Level q of the result is the pushout of A_q along one copy of f for
    every non-constant map [q] -> [p]."""
    vm = object_tuple_map(A, p)
    if f.source.gens != A.level(p).gens:
        raise StructureError("f must be defined on level %d" % p)
    for gid in f.source.gens:
        if g(f.assign[gid]) != vm.assign[gid]:
            raise StructureError("vertex compatibility fails at %s" % gid)

    def collapse(el, x, q, n):
        i = x.values[0]
        tup = g(el).gen.split(",")
        return ("A", degenerate_object(tup[i], q, n))

    slot = ReplacementSlot("B", p, A.level(p), f,
                           lambda q: delta.off_vertex_maps(q, p), collapse)
    return _replacement(A, [slot], name or "reg(%s,%d)" % (A.name, p),
                        extra_int=max(f.target.dim, 0))


def seg(A, m, f, g, prod_ext, name=None):
    """Replace the Segal level m along f : level(A, m) -> Q; g must
    extend the Segal map into the iterated fiber product (given by its
    extraction prod_ext).  Level q of the result is the pushout of A_q
    along one copy of f for every map [q] -> [m] missing every principal
    edge."""
    if m < 2:
        raise StructureError("Segal replacement needs m >= 2")
    sm = segal_map(A, m)
    if f.source.gens != A.level(m).gens:
        raise StructureError("f must be defined on level %d" % m)
    for gid in f.source.gens:
        if g(f.assign[gid]) != sm.assign[gid]:
            raise StructureError("Segal compatibility fails at %s" % gid)
    lv1 = A.level(1)

    def component(el, i):
        word_eta = delta.surjection_from_word(
            prod_ext.sset.degree_of(el), el.word)
        token = prod_ext.token_of_gen[el.gen]
        return lv1.act(word_eta, token[i])

    def collapse(el, x, q, n):
        i, tau = delta.spine_factorization(x, m)
        comp_el = component(g(el), i)
        biel = A.level_el_to_biel(1, comp_el)
        return ("A", A.act(tau, delta.identity(n), biel))

    slot = ReplacementSlot("Q", m, A.level(m), f,
                           lambda q: delta.off_spine_maps(q, m), collapse)
    return _replacement(A, [slot], name or "seg(%s,%d)" % (A.name, m),
                        extra_int=max(f.target.dim, 0))


# -- painted structure and the combined replacement -----------------------

@dataclass
class Painting:
    """Face-closed generator subsets of levels 1 and m singled out for
    replacement; the Segal map must restrict to the painted parts."""

    m: int
    level1_gens: frozenset
    levelm_gens: frozenset

    def validate(self, A):
        lv1 = A.level(1)
        lvm = A.level(self.m)
        for g in self.level1_gens:
            if g not in lv1.gens:
                raise StructureError("painted level-1 generator unknown")
        for g in self.levelm_gens:
            if g not in lvm.gens:
                raise StructureError("painted level-%d generator unknown"
                                     % self.m)
        sub1 = sub_level(A, 1, self.level1_gens)
        subm = sub_level(A, self.m, self.levelm_gens)
        # the Segal map restricts to the painted parts
        for gid in subm.gens:
            ew, g = A.level(self.m)._precat_meta[gid]
            n = subm.gens[gid]
            for k in range(self.m):
                img = A.act(delta.principal_edge(k, self.m),
                            delta.identity(n), BiEl(ew, (), g))
                el = A.biel_to_level_el(1, img)
                if el.gen not in self.level1_gens:
                    raise StructureError(
                        "painting not closed under the Segal map at %s" % gid)
        return sub1, subm


def full_painting(A, m):
    return Painting(m, frozenset(A.level(1).gens),
                    frozenset(A.level(m).gens))


def sub_level(A, m, gen_subset, name=None):
    from .sset import sub_sset
    lv = A.level(m)
    sub = sub_sset(lv, gen_subset, name or "%s@%d|painted" % (A.name, m))
    sub._precat_meta = {g: lv._precat_meta[g] for g in gen_subset}
    return sub


@dataclass
class RSData:
    """The replacement data of a combined level-(1, m) replacement:
    eta : painted level 1 -> B with vertex data nu, and phi : painted
    level m -> P with spine data psi into the matched m-fold product of
    B over the objects (given by its extraction bprod_ext)."""

    m: int
    eta: SSetMap
    nu: SSetMap
    phi: SSetMap
    psi: SSetMap
    bprod_ext: object


def matched_power(A, B, nu, m, name=None):
    """The m-fold fiber product of B over the object set, matching the
    second vertex of one factor with the first of the next via nu."""
    def endpoints(el):
        return nu(el).gen.split(",")

    def levels(n):
        out = []
        for combo in itertools.product(B.level(n), repeat=m):
            ok = True
            for x, y in zip(combo, combo[1:]):
                if endpoints(x)[1] != endpoints(y)[0]:
                    ok = False
                    break
            if ok:
                out.append(combo)
        return out

    def act(op, token):
        return tuple(B.act(op, el) for el in token)

    top = m * max(B.dim, 0)
    return extract_presentation(name or "power(%s,%d)" % (B.name, m),
                                levels, act, top)


def rs(A, painting, data, name=None):
    """The combined replacement of levels 1 and m of a painted
    precategory: level q of the result is the pushout of A_q along a copy
    of eta for every non-constant [q] -> [1] and a copy of phi for every
    [q] -> [m] missing every principal edge.  Returns the replacement
    together with the new painting (the copies of B and P at the
    identity indices)."""
    m = painting.m
    sub1, subm = painting.validate(A)
    if data.eta.source.gens != sub1.gens or data.phi.source.gens != subm.gens:
        raise StructureError("replacement data must live on the painted part")
    # compatibility: nu o eta is the vertex map, psi o phi the Segal map
    vm = object_tuple_map(A, 1)
    for gid in sub1.gens:
        if data.nu(data.eta.assign[gid]) != vm.assign[gid]:
            raise StructureError("vertex compatibility fails at %s" % gid)
    lv1 = A.level(1)
    B = data.eta.target

    def bcomponent(el, i):
        eta_word = delta.surjection_from_word(
            data.bprod_ext.sset.degree_of(el), el.word)
        token = data.bprod_ext.token_of_gen[el.gen]
        return B.act(eta_word, token[i])

    for gid in subm.gens:
        ew, g = A.level(m)._precat_meta[gid]
        n = subm.gens[gid]
        img = data.psi(data.phi.assign[gid])
        for k in range(m):
            want = A.act(delta.principal_edge(k, m), delta.identity(n),
                         BiEl(ew, (), g))
            got = bcomponent(img, k)
            if data.eta(A.biel_to_level_el(1, want)) != got:
                raise StructureError("Segal compatibility fails at %s" % gid)

    def collapse_b(el, x, q, n):
        i = x.values[0]
        tup = data.nu(el).gen.split(",")
        return ("A", degenerate_object(tup[i], q, n))

    def collapse_p(el, x, q, n):
        i, tau = delta.spine_factorization(x, m)
        b_el = bcomponent(data.psi(el), i)
        if len(set(tau.values)) > 1:
            return ("B", tau, b_el)
        c = tau.values[0]
        tup = data.nu(b_el).gen.split(",")
        return ("A", degenerate_object(tup[c], q, n))

    slot_b = ReplacementSlot("B", 1, sub1, data.eta,
                             lambda q: delta.off_vertex_maps(q, 1),
                             collapse_b)
    slot_p = ReplacementSlot("P", m, subm, data.phi,
                             lambda q: delta.off_spine_maps(q, m),
                             collapse_p)
    res = _replacement(A, [slot_b, slot_p],
                       name or "rs(%s)" % A.name,
                       extra_int=max(B.dim, data.phi.target.dim, 0))
    painted1 = set()
    paintedm = set()
    out = res.precat
    for gid, tok in res.extraction.token_of_gen.items():
        p, q = out.gens[gid]
        if tok[0] == "B" and p == 1 and tok[1].is_identity:
            painted1.add(gid)
        if tok[0] == "P" and p == m and tok[1].is_identity:
            paintedm.add(gid)
    res.new_painting = Painting(m, frozenset(painted1), frozenset(paintedm))
    return res


def identity_rs_data(A, painting):
    """Replacement data built from identities: rs with it returns the
    input up to isomorphism."""
    m = painting.m
    sub1, subm = painting.validate(A)
    nu_full = object_tuple_map(A, 1)
    nu = SSetMap(sub1, nu_full.target,
                 {g: nu_full.assign[g] for g in sub1.gens}, check=False)
    bprod = matched_power(A, sub1, nu, m)
    sm = segal_map(A, m)
    psi_assign = {}
    for gid in subm.gens:
        ew, g = A.level(m)._precat_meta[gid]
        n = subm.gens[gid]
        combo = []
        for k in range(m):
            img = A.act(delta.principal_edge(k, m), delta.identity(n),
                        BiEl(ew, (), g))
            combo.append(A.biel_to_level_el(1, img))
        psi_assign[gid] = bprod.el_of(n, tuple(combo))
    psi = SSetMap(subm, bprod.sset, psi_assign, check=False)
    return RSData(m, identity_map(sub1), nu, identity_map(subm), psi, bprod)


def iso_from_tokens(res_a, res_b, token_map):
    """Build the precategory map sending each generator of res_a.precat to
    the class of token_map(token) in res_b, validate it, and require an
    isomorphism.  Used to certify canonical levelwise identifications."""
    assign = {}
    for gid, tok in res_a.extraction.token_of_gen.items():
        p, q = res_a.precat.gens[gid]
        assign[gid] = res_b.biel_of_token(p, q, token_map(tok, p, q))
    f = PrecatMap(res_a.precat, res_b.precat, assign)
    if not f.is_iso():
        raise StructureError("token map is not an isomorphism")
    return f


# -- collapse maps for degenerate-diagram detection -------------------------

def simplex_collapse(j, m):
    """Delta[m] -> Delta[m-1] induced by the codegeneracy merging j and
    j + 1."""
    src = standard_simplex(m)
    tgt = standard_simplex(m - 1)
    sig = delta.codegeneracy(j, m - 1)
    assign = {}
    for gid in src.gens:
        vs = tuple(int(v) for v in gid.split("."))
        vals = tuple(sig(v) for v in vs)
        word = tuple(i for i in range(len(vals) - 1) if vals[i] == vals[i + 1])
        image = ".".join(str(v) for v in sorted(set(vals)))
        assign[gid] = El(word, image)
    return SSetMap(src, tgt, assign)


def spine_collapse(j, m):
    """Upsilon(m) -> Upsilon(m-1) (Delta[1] when m == 2) collapsing the
    j-th edge."""
    src = upsilon(m)
    if m - 1 >= 2:
        tgt = upsilon(m - 1)
        def vname(v):
            return str(v)
        def ename(k):
            return "e%d" % k
    else:
        tgt = standard_simplex(1)
        def vname(v):
            return str(v)
        def ename(k):
            return "0.1"
    sig = delta.codegeneracy(j, m - 1)
    assign = {}
    for v in range(m + 1):
        assign[str(v)] = El((), vname(sig(v)))
    for k in range(m):
        if k == j:
            assign["e%d" % k] = El((0,), vname(sig(k)))
        elif k < j:
            assign["e%d" % k] = El((), ename(k))
        else:
            assign["e%d" % k] = El((), ename(k - 1))
    return SSetMap(src, tgt, assign)


def boit_collapse(j, arrow, lower):
    """The pair (e, e') collapsing a filler arrow over the codegeneracy
    sigma_j: e sends the arrow's source onto the source of the lower
    arrow (or onto Delta[1]@F when m == 2, with lower None), and e' is
    the matching collapse of the targets."""
    m = arrow.params["m"]
    g = arrow.g
    sc = spine_collapse(j, m)
    xc = simplex_collapse(j, m)
    e_prime = theta_map(xc, identity_map(g.target))
    if m - 1 >= 2:
        if lower is None or lower.params["m"] != m - 1:
            raise StructureError("lower arrow of the wrong level")
        leg_left = lower.pushout.left_map.compose(
            theta_map(sc, identity_map(g.target)))
        leg_right = lower.pushout.right_map.compose(
            theta_map(xc, identity_map(g.source)))
        e = precat_pushout_universal(arrow.pushout, leg_left, leg_right)
        return e, e_prime
    # m == 2: collapse onto Delta[1]@F, the identity case
    leg_left = theta_map(sc, identity_map(g.target))
    leg_right = theta_map(identity_map(xc.target), g).compose(
        theta_map(xc, identity_map(g.source)))
    e = precat_pushout_universal(arrow.pushout, leg_left, leg_right)
    return e, e_prime
