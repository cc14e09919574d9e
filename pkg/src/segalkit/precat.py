"""Finite bisimplicial sets with a discrete object level.

A precategory is presented by generators with a bidegree (external,
internal), an external face table and an internal face table.  The object
set is the external level 0, which is required to be discrete: every
generator of external degree 0 has internal degree 0.  External levels
are derived finite simplicial sets; fibers over object tuples, Segal
maps, colimits, products, the diagonal and the free-ordered checks all
run through the generator presentation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import delta
from .delta import MonotoneMap
from .errors import StructureError
from .oracle import Verdict, we_oracle
from .sset import (El, Extraction, FiniteSimplicialSet, SSetMap, _UnionFind,
                   extract_presentation)


@dataclass(frozen=True, order=True)
class BiEl:
    """A formal bisimplicial element: external and internal degeneracy
    words (both in normal form) applied to a generator."""

    eword: tuple
    iword: tuple
    gen: str

    def __repr__(self):
        return "BiEl(e%s i%s %s)" % (list(self.eword), list(self.iword),
                                     self.gen)


def biel_of(gen):
    return BiEl((), (), gen)


def degenerate_object(obj, p, q):
    """The fully degenerate element of bidegree (p, q) on an object."""
    return BiEl(tuple(range(p)), tuple(range(q)), obj)


class Precategory:
    """A finite bisimplicial set with discrete object level.

    gens   : dict id -> (external degree, internal degree)
    efaces : dict (id, i) -> BiEl, for generators of external degree >= 1
    ifaces : dict (id, j) -> BiEl, for generators of internal degree >= 1
    """

    def __init__(self, name, gens, efaces, ifaces, check=True):
        self.name = name
        self.gens = dict(gens)
        self.efaces = dict(efaces)
        self.ifaces = dict(ifaces)
        self._level_cache = {}
        self._elements_cache = {}
        self._act_cache = {}
        self._tuple_cache = {}
        if check:
            errs = self.validate()
            if errs:
                raise StructureError("%s: %s" % (name, "; ".join(errs)))

    # -- accessors --------------------------------------------------------

    @property
    def is_empty(self):
        return not self.gens

    @property
    def ext_dim(self):
        return max((p for p, _ in self.gens.values()), default=-1)

    @property
    def int_dim(self):
        return max((q for _, q in self.gens.values()), default=-1)

    def gen_ids(self):
        return sorted(self.gens)

    def objects(self):
        return sorted(g for g, (p, q) in self.gens.items() if p == 0)

    def gens_of_bidegree(self, p, q):
        return sorted(g for g, d in self.gens.items() if d == (p, q))

    def bidegree_of(self, el):
        p, q = self.gens[el.gen]
        return (p + len(el.eword), q + len(el.iword))

    def eface(self, gid, i):
        return self.efaces[(gid, i)]

    def iface(self, gid, j):
        return self.ifaces[(gid, j)]

    # -- operator action --------------------------------------------------

    def act_injective(self, emono, imono, gid):
        if not emono.is_identity:
            i = emono.missed()[-1]
            p = emono.target_arity
            rest = MonotoneMap(emono.source_arity, p - 1,
                               tuple(v if v < i else v - 1
                                     for v in emono.values))
            face = self.eface(gid, i)
            return self.act(rest, imono, face)
        if not imono.is_identity:
            j = imono.missed()[-1]
            q = imono.target_arity
            rest = MonotoneMap(imono.source_arity, q - 1,
                               tuple(v if v < j else v - 1
                                     for v in imono.values))
            face = self.iface(gid, j)
            return self.act(emono, rest, face)
        return biel_of(gid)

    def act(self, fe, fi, el):
        """Image of a formal element under a pair of monotone maps."""
        key = (fe, fi, el)
        hit = self._act_cache.get(key)
        if hit is not None:
            return hit
        p, q = self.bidegree_of(el)
        if fe.target_arity != p or fi.target_arity != q:
            raise StructureError("arity mismatch in bisimplicial action")
        etaE = delta.surjection_from_word(p, el.eword)
        etaI = delta.surjection_from_word(q, el.iword)
        epiE, monoE = etaE.compose(fe).epi_mono()
        epiI, monoI = etaI.compose(fi).epi_mono()
        inner = self.act_injective(monoE, monoI, el.gen)
        etaE2 = delta.surjection_from_word(monoE.source_arity, inner.eword)
        etaI2 = delta.surjection_from_word(monoI.source_arity, inner.iword)
        out = BiEl(etaE2.compose(epiE).repeats(),
                   etaI2.compose(epiI).repeats(), inner.gen)
        self._act_cache[key] = out
        return out

    def act_ext(self, fe, el):
        p, q = self.bidegree_of(el)
        return self.act(fe, delta.identity(q), el)

    def act_int(self, fi, el):
        p, q = self.bidegree_of(el)
        return self.act(delta.identity(p), fi, el)

    def elements(self, p, q):
        """All elements of bidegree (p, q), sorted."""
        key = (p, q)
        if key not in self._elements_cache:
            out = []
            for g, (dp, dq) in self.gens.items():
                if dp > p or dq > q:
                    continue
                for ew in itertools.combinations(range(p), p - dp):
                    for iw in itertools.combinations(range(q), q - dq):
                        out.append(BiEl(ew, iw, g))
            self._elements_cache[key] = sorted(out)
        return self._elements_cache[key]

    def object_tuple_of(self, el):
        """Images of the external vertices, as a tuple of objects."""
        p, q = self.bidegree_of(el)
        out = []
        for k in range(p + 1):
            v = self.act(delta.vertex(k, p), delta.identity(q), el)
            out.append(v.gen)
        return tuple(out)

    # -- derived levels ---------------------------------------------------

    def level_gen_id(self, eword, gen):
        if eword:
            return "%s~e%s" % (gen, "".join(str(i) for i in eword))
        return gen

    def level(self, m):
        """The external level m as a finite simplicial set.  Its
        non-degenerate n-cells are the pairs (external degeneracy word
        from [m], generator of internal degree n)."""
        if m in self._level_cache:
            return self._level_cache[m]
        gens = {}
        faces = {}
        meta = {}
        for g, (p, q) in self.gens.items():
            if p > m:
                continue
            for ew in itertools.combinations(range(m), m - p):
                gid = self.level_gen_id(ew, g)
                gens[gid] = q
                meta[gid] = (ew, g)
        for gid, (ew, g) in meta.items():
            q = gens[gid]
            for j in range(q + 1):
                if q < 1:
                    continue
                face = self.act(delta.identity(m), delta.coface(j, q),
                                BiEl(ew, (), g))
                faces[(gid, j)] = El(face.iword,
                                     self.level_gen_id(face.eword, face.gen))
        lv = FiniteSimplicialSet("%s@%d" % (self.name, m), gens, faces,
                                 check=False)
        lv._precat_meta = meta
        self._level_cache[m] = lv
        return lv

    def level_el_to_biel(self, m, el):
        lv = self.level(m)
        ew, g = lv._precat_meta[el.gen]
        return BiEl(ew, el.word, g)

    def biel_to_level_el(self, m, biel):
        p, q = self.bidegree_of(biel)
        if p != m:
            raise StructureError("element does not live at external level %d"
                                 % m)
        return El(biel.iword, self.level_gen_id(biel.eword, biel.gen))

    def level_tuples(self, m):
        """Vertex tuples of the level-m generators, cached."""
        if m not in self._tuple_cache:
            lv = self.level(m)
            self._tuple_cache[m] = {
                gid: self.object_tuple_of(BiEl(ew, (), g))
                for gid, (ew, g) in lv._precat_meta.items()}
        return self._tuple_cache[m]

    def fiber(self, m, t, name=None):
        """The simplicial subset of level m over an object tuple."""
        t = tuple(t)
        if len(t) != m + 1:
            raise StructureError("tuple length must be m + 1")
        objs = set(self.objects())
        for o in t:
            if o not in objs:
                raise StructureError("non-object entry %s in tuple" % (o,))
        lv = self.level(m)
        tuples = self.level_tuples(m)
        keep = {gid for gid, tt in tuples.items() if tt == t}
        gens = {g: lv.gens[g] for g in keep}
        faces = {(g, i): el for (g, i), el in lv.faces.items() if g in keep}
        fib = FiniteSimplicialSet(
            name or "%s@%d(%s)" % (self.name, m, ",".join(map(str, t))),
            gens, faces, check=False)
        fib._precat_meta = {g: lv._precat_meta[g] for g in keep}
        return fib

    def fiber_cached(self, m, t):
        key = ("fiber", m, tuple(t))
        if key not in self._level_cache:
            self._level_cache[key] = self.fiber(m, t)
        return self._level_cache[key]

    def fiber_nonempty(self, m, t):
        return bool(self.fiber(m, t).gens)

    # -- validation -------------------------------------------------------

    def validate(self):
        errs = []
        for g, (p, q) in self.gens.items():
            if p == 0 and q != 0:
                errs.append(
                    "discreteness violated: %s has bidegree (0, %d)" % (g, q))
            for i in range(p + 1):
                if p >= 1 and (g, i) not in self.efaces:
                    errs.append("missing external face (%s, %d)" % (g, i))
            for j in range(q + 1):
                if q >= 1 and (g, j) not in self.ifaces:
                    errs.append("missing internal face (%s, %d)" % (g, j))
        for (g, i), el in list(self.efaces.items()) + list(self.ifaces.items()):
            if g not in self.gens or el.gen not in self.gens:
                errs.append("face table mentions unknown generator near %s" % g)
        if errs:
            return errs
        for g, (p, q) in self.gens.items():
            for (gid, i), el in (((g, i), self.efaces[(g, i)])
                                 for i in range(p + 1) if p >= 1):
                ep, eq = self.bidegree_of(el)
                if (ep, eq) != (p - 1, q):
                    errs.append("external face (%s, %d) has wrong bidegree"
                                % (g, i))
            for (gid, j), el in (((g, j), self.ifaces[(g, j)])
                                 for j in range(q + 1) if q >= 1):
                ip, iq = self.bidegree_of(el)
                if (ip, iq) != (p, q - 1):
                    errs.append("internal face (%s, %d) has wrong bidegree"
                                % (g, j))
        if errs:
            return errs
        for g, (p, q) in self.gens.items():
            # external simplicial identities
            for j in range(p + 1):
                for i in range(j):
                    if p < 2:
                        continue
                    lhs = self.act(delta.coface(i, p - 1), delta.identity(q),
                                   self.eface(g, j))
                    rhs = self.act(delta.coface(j - 1, p - 1),
                                   delta.identity(q), self.eface(g, i))
                    if lhs != rhs:
                        errs.append("external identity fails on %s" % g)
            # internal simplicial identities
            for j in range(q + 1):
                for i in range(j):
                    if q < 2:
                        continue
                    lhs = self.act(delta.identity(p), delta.coface(i, q - 1),
                                   self.iface(g, j))
                    rhs = self.act(delta.identity(p), delta.coface(j - 1, q - 1),
                                   self.iface(g, i))
                    if lhs != rhs:
                        errs.append("internal identity fails on %s" % g)
            # mixed faces commute
            for i in range(p + 1):
                for j in range(q + 1):
                    if p < 1 or q < 1:
                        continue
                    lhs = self.act(delta.identity(p - 1), delta.coface(j, q),
                                   self.eface(g, i))
                    rhs = self.act(delta.coface(i, p), delta.identity(q - 1),
                                   self.iface(g, j))
                    if lhs != rhs:
                        errs.append("mixed identity fails on %s" % g)
        return errs


class PrecatMap:
    """A map of precategories, recorded by generator assignments."""

    def __init__(self, source, target, assign, check=True):
        self.source = source
        self.target = target
        self.assign = dict(assign)
        if check:
            errs = self.validate()
            if errs:
                raise StructureError("; ".join(errs))

    def __call__(self, el):
        image = self.assign[el.gen]
        p, q = self.source.bidegree_of(el)
        etaE = delta.surjection_from_word(p, el.eword)
        etaI = delta.surjection_from_word(q, el.iword)
        return self.target.act(etaE, etaI, image)

    def validate(self):
        errs = []
        for g, (p, q) in self.source.gens.items():
            if g not in self.assign:
                errs.append("no image for generator %s" % g)
                continue
            img = self.assign[g]
            if img.gen not in self.target.gens:
                errs.append("image of %s hits unknown generator" % g)
                continue
            if self.target.bidegree_of(img) != (p, q):
                errs.append("image of %s has wrong bidegree" % g)
        if errs:
            return errs
        for g, (p, q) in self.source.gens.items():
            for i in range(p + 1):
                if p < 1:
                    continue
                lhs = self(self.source.eface(g, i))
                rhs = self.target.act(delta.coface(i, p), delta.identity(q),
                                      self.assign[g])
                if lhs != rhs:
                    errs.append("map fails external d_%d on %s" % (i, g))
            for j in range(q + 1):
                if q < 1:
                    continue
                lhs = self(self.source.iface(g, j))
                rhs = self.target.act(delta.identity(p), delta.coface(j, q),
                                      self.assign[g])
                if lhs != rhs:
                    errs.append("map fails internal d_%d on %s" % (j, g))
        return errs

    def compose(self, other):
        assign = {g: self(other.assign[g]) for g in other.source.gens}
        return PrecatMap(other.source, self.target, assign, check=False)

    def on_objects(self):
        return {o: self.assign[o].gen for o in self.source.objects()}

    def is_levelwise_mono(self):
        """Injectivity on all bidegrees up to one past the generator
        bidegrees; that bound is sufficient for a presheaf map."""
        P = max(self.source.ext_dim, self.target.ext_dim, 0) + 1
        Q = max(self.source.int_dim, self.target.int_dim, 0) + 1
        for p in range(P + 1):
            for q in range(Q + 1):
                els = self.source.elements(p, q)
                if len({self(e) for e in els}) != len(els):
                    return False
        return True

    def is_iso(self):
        images = []
        for g, d in self.source.gens.items():
            img = self.assign[g]
            if img.eword or img.iword or self.target.gens[img.gen] != d:
                return False
            images.append(img.gen)
        return (len(set(images)) == len(images)
                and len(images) == len(self.target.gens))

    def level_map(self, m):
        """Induced simplicial map on external level m."""
        src = self.source.level(m)
        tgt = self.target.level(m)
        assign = {}
        for gid, (ew, g) in src._precat_meta.items():
            img = self(BiEl(ew, (), g))
            assign[gid] = self.target.biel_to_level_el(m, img)
        return SSetMap(src, tgt, assign, check=False)

    def fiber_map(self, m, t):
        """Induced map on the fiber over t into the fiber over f(t)."""
        objmap = self.on_objects()
        ft = tuple(objmap[o] for o in t)
        src = self.source.fiber(m, t)
        tgt = self.target.fiber(m, ft)
        assign = {}
        for gid, (ew, g) in src._precat_meta.items():
            img = self(BiEl(ew, (), g))
            el = self.target.biel_to_level_el(m, img)
            assign[gid] = el
        return SSetMap(src, tgt, assign, check=False)


def identity_pmap(A):
    return PrecatMap(A, A, {g: biel_of(g) for g in A.gens}, check=False)


def empty_precategory(name="empty"):
    return Precategory(name, {}, {}, {}, check=False)


def discrete_precategory(objs, name=None):
    return Precategory(name or "discrete", {o: (0, 0) for o in objs}, {}, {},
                       check=False)


def point_precategory(name="pt", obj="*"):
    return discrete_precategory([obj], name)


def object_inclusion_arrow():
    """The inclusion of the empty precategory into the point."""
    return PrecatMap(empty_precategory(), point_precategory(), {}, check=False)


def sub_precategory(A, gen_subset, name=None):
    subset = set(gen_subset)
    for g in sorted(subset):
        p, q = A.gens[g]
        for i in range(p + 1):
            if p >= 1 and A.eface(g, i).gen not in subset:
                raise StructureError("not closed under external faces at %s"
                                     % g)
        for j in range(q + 1):
            if q >= 1 and A.iface(g, j).gen not in subset:
                raise StructureError("not closed under internal faces at %s"
                                     % g)
    gens = {g: A.gens[g] for g in subset}
    ef = {(g, i): el for (g, i), el in A.efaces.items() if g in subset}
    ifc = {(g, j): el for (g, j), el in A.ifaces.items() if g in subset}
    return Precategory(name or (A.name + "|sub"), gens, ef, ifc, check=False)


def sub_inclusion(sub, A):
    return PrecatMap(sub, A, {g: biel_of(g) for g in sub.gens}, check=False)


# -- bisimplicial extraction ----------------------------------------------

class BiExtraction:
    def __init__(self, precat, token_of_gen, biel_of_token):
        self.precat = precat
        self.token_of_gen = token_of_gen
        self._biel_of_token = biel_of_token

    def biel_of(self, p, q, token):
        return self._biel_of_token[(p, q, token)]


def extract_bipresentation(name, levels, act, max_ext, max_int, gen_id=None):
    """Bisimplicial analogue of extract_presentation; levels(p, q) lists
    tokens, act((fe, fi), token) implements the action."""
    gens = {}
    efaces = {}
    ifaces = {}
    token_of_gen = {}
    biel_of_token = {}
    counters = {}

    def name_gen(p, q, token):
        if gen_id is not None:
            gid = gen_id(p, q, token)
            if gid in gens:
                raise StructureError("duplicate generator id %s" % gid)
            return gid
        k = counters.get((p, q), 0)
        counters[(p, q)] = k + 1
        return "g%d_%d_%d" % (p, q, k)

    for p in range(max_ext + 1):
        for q in range(max_int + 1):
            for tok in sorted(levels(p, q), key=repr):
                key = (p, q, tok)
                if key in biel_of_token:
                    continue
                norm = None
                for j in range(p):
                    dj = act((delta.coface(j, p), delta.identity(q)), tok)
                    if act((delta.codegeneracy(j, p - 1), delta.identity(q)),
                           dj) == tok:
                        base = biel_of_token[(p - 1, q, dj)]
                        etaE = delta.surjection_from_word(p - 1, base.eword)
                        total = etaE.compose(delta.codegeneracy(j, p - 1))
                        norm = BiEl(total.repeats(), base.iword, base.gen)
                        break
                if norm is None:
                    for j in range(q):
                        dj = act((delta.identity(p), delta.coface(j, q)), tok)
                        if act((delta.identity(p),
                                delta.codegeneracy(j, q - 1)), dj) == tok:
                            base = biel_of_token[(p, q - 1, dj)]
                            etaI = delta.surjection_from_word(q - 1, base.iword)
                            total = etaI.compose(delta.codegeneracy(j, q - 1))
                            norm = BiEl(base.eword, total.repeats(), base.gen)
                            break
                if norm is not None:
                    biel_of_token[key] = norm
                    continue
                gid = name_gen(p, q, tok)
                gens[gid] = (p, q)
                token_of_gen[gid] = tok
                biel_of_token[key] = biel_of(gid)
                for i in range(p + 1):
                    if p >= 1:
                        ft = act((delta.coface(i, p), delta.identity(q)), tok)
                        efaces[(gid, i)] = biel_of_token[(p - 1, q, ft)]
                for j in range(q + 1):
                    if q >= 1:
                        ft = act((delta.identity(p), delta.coface(j, q)), tok)
                        ifaces[(gid, j)] = biel_of_token[(p, q - 1, ft)]
    precat = Precategory(name, gens, efaces, ifaces)
    return BiExtraction(precat, token_of_gen, biel_of_token)


# -- colimits and products ----------------------------------------------

class PrecatPushout:
    def __init__(self, precat, left_map, right_map, extraction, ufs):
        self.precat = precat
        self.left_map = left_map
        self.right_map = right_map
        self.extraction = extraction
        self._ufs = ufs


def precat_pushout(f, g, name=None):
    """Pushout of B <-f- A -g-> C, bidegree-levelwise, with discreteness
    of the object level re-checked on the result."""
    if f.source is not g.source and f.source.gens != g.source.gens:
        raise StructureError("pushout legs must share their source")
    A, B, C = f.source, f.target, g.target
    P = max(A.ext_dim, B.ext_dim, C.ext_dim, 0)
    Q = max(A.int_dim, B.int_dim, C.int_dim, 0)
    ufs = {}
    for p in range(P + 1):
        for q in range(Q + 1):
            uf = _UnionFind()
            for el in B.elements(p, q):
                uf.add(("B", el))
            for el in C.elements(p, q):
                uf.add(("C", el))
            for el in A.elements(p, q):
                uf.add(("B", f(el)))
                uf.add(("C", g(el)))
                uf.union(("B", f(el)), ("C", g(el)))
            ufs[(p, q)] = uf

    def levels(p, q):
        uf = ufs[(p, q)]
        return sorted({uf.find(x) for x in uf.parent}, key=repr)

    def act(ops, token):
        fe, fi = ops
        side, el = token
        X = B if side == "B" else C
        moved = X.act(fe, fi, el)
        return ufs[(fe.source_arity, fi.source_arity)].find((side, moved))

    ext = extract_bipresentation(name or "pushout", levels, act, P, Q)
    out = ext.precat

    def induced(X, side):
        assign = {}
        for gid, (p, q) in X.gens.items():
            tok = ufs[(p, q)].find((side, biel_of(gid)))
            assign[gid] = ext.biel_of(p, q, tok)
        return PrecatMap(X, out, assign)

    return PrecatPushout(out, induced(B, "B"), induced(C, "C"), ext, ufs)


def precat_pushout_universal(po, u, w):
    assign = {}
    for gid in po.precat.gens:
        side, el = po.extraction.token_of_gen[gid]
        assign[gid] = u(el) if side == "B" else w(el)
    return PrecatMap(po.precat, u.target, assign)


def precat_coproduct(parts, name=None):
    gens = {}
    ef = {}
    ifc = {}
    for k, X in enumerate(parts):
        for g, d in X.gens.items():
            gens["%d:%s" % (k, g)] = d
        for (g, i), el in X.efaces.items():
            ef[("%d:%s" % (k, g), i)] = BiEl(el.eword, el.iword,
                                             "%d:%s" % (k, el.gen))
        for (g, j), el in X.ifaces.items():
            ifc[("%d:%s" % (k, g), j)] = BiEl(el.eword, el.iword,
                                              "%d:%s" % (k, el.gen))
    return Precategory(name or "coproduct", gens, ef, ifc, check=False)


def precat_coproduct_inclusion(parts, cop, k):
    X = parts[k]
    return PrecatMap(X, cop,
                     {g: biel_of("%d:%s" % (k, g)) for g in X.gens},
                     check=False)


def precat_product(A, B, name=None):
    """Binary product of precategories, bidegree-levelwise."""
    if A.is_empty or B.is_empty:
        return empty_precategory(name or "product")
    P = A.ext_dim + B.ext_dim
    Q = A.int_dim + B.int_dim

    def levels(p, q):
        return [(a, b) for a in A.elements(p, q) for b in B.elements(p, q)]

    def act(ops, token):
        fe, fi = ops
        a, b = token
        return (A.act(fe, fi, a), B.act(fe, fi, b))

    ext = extract_bipresentation(name or "product", levels, act,
                                 max(P, 0), max(Q, 0))
    return ext


def precat_sequential_colimit(maps, budget):
    if not maps:
        raise StructureError("empty chain")
    used = maps[:budget] if budget is not None else list(maps)
    comp = used[0]
    for nxt in used[1:]:
        if nxt.source.gens != comp.target.gens:
            raise StructureError("chain maps not composable")
        comp = nxt.compose(comp)
    return comp.target, comp


# -- Segal structure ------------------------------------------------------

def segal_product(A, m, name=None):
    """The iterated fiber product of level 1 over the objects: degree-n
    elements are m-tuples of level-1 elements with matching endpoints."""
    lv1 = A.level(1)
    maxq = max(A.int_dim, 0)

    def endpoints(el):
        biel = A.level_el_to_biel(1, el)
        return A.object_tuple_of(biel)

    def levels(n):
        out = []
        for combo in itertools.product(lv1.level(n), repeat=m):
            ok = True
            for x, y in zip(combo, combo[1:]):
                if endpoints(x)[1] != endpoints(y)[0]:
                    ok = False
                    break
            if ok:
                out.append(combo)
        return out

    def act(op, token):
        return tuple(lv1.act(op, el) for el in token)

    ext = extract_presentation(name or "%s@segal%d" % (A.name, m),
                               levels, act, m * maxq if m else 0)
    return ext


def fiber_product_of_homs(A, t, name=None, max_dim=None):
    """A_1(t0,t1) x ... x A_1(t_{m-1},t_m) for an object tuple t; an
    optional dimension cap truncates the presentation (callers must stay
    inside it)."""
    m = len(t) - 1
    fibers = [A.fiber_cached(1, (t[k], t[k + 1])) for k in range(m)]
    maxdim = sum(max(f.dim, 0) for f in fibers)
    if max_dim is not None:
        maxdim = min(maxdim, max_dim)
    if any(f.is_empty for f in fibers):
        from .sset import empty_sset
        ext = Extraction(empty_sset(name or "homprod"), {}, {})
        ext.fibers = fibers
        return ext

    def levels(n):
        return list(itertools.product(*(f.level(n) for f in fibers)))

    def act(op, token):
        return tuple(f.act(op, el) for f, el in zip(fibers, token))

    ext = extract_presentation(name or "homprod", levels, act, maxdim)
    ext.fibers = fibers
    return ext


def segal_map(A, m):
    """The map from level m to the iterated fiber product induced by the
    principal edges."""
    if m < 2:
        raise StructureError("Segal maps start at level 2")
    lv = A.level(m)
    ext = segal_product(A, m)
    assign = {}
    for gid, (ew, g) in lv._precat_meta.items():
        n = lv.gens[gid]
        combo = []
        for k in range(m):
            img = A.act(delta.principal_edge(k, m), delta.identity(n),
                        BiEl(ew, (), g))
            combo.append(A.biel_to_level_el(1, img))
        assign[gid] = ext.el_of(n, tuple(combo))
    return SSetMap(lv, ext.sset, assign, check=False)


def segal_map_fiber(A, m, t):
    """The fiberwise Segal map over an object tuple."""
    if m < 2:
        raise StructureError("Segal maps start at level 2")
    fib = A.fiber(m, t)
    ext = fiber_product_of_homs(A, t)
    assign = {}
    for gid, (ew, g) in fib._precat_meta.items():
        n = fib.gens[gid]
        combo = []
        for k in range(m):
            img = A.act(delta.principal_edge(k, m), delta.identity(n),
                        BiEl(ew, (), g))
            el = A.biel_to_level_el(1, img)
            # re-express inside the hom fiber
            combo.append(el)
        assign[gid] = ext.el_of(n, tuple(combo))
    return SSetMap(fib, ext.sset, assign, check=False)


def is_segal_category(A, max_level, oracle=we_oracle):
    """Check the fiberwise Segal maps up to max_level with the weak
    equivalence oracle; returns (bool or None, per-(m, tuple) verdicts).
    None signals an Unknown verdict somewhere."""
    if max_level < 2:
        raise StructureError("max_level must be at least 2")
    objs = A.objects()
    verdicts = {}
    for m in range(2, max_level + 1):
        for t in itertools.product(objs, repeat=m + 1):
            rep = oracle(segal_map_fiber(A, m, t))
            verdicts[(m, t)] = rep.verdict
    if all(v is Verdict.WE for v in verdicts.values()):
        return True, verdicts
    if any(v is Verdict.NOT_WE for v in verdicts.values()):
        return False, verdicts
    return None, verdicts


def is_connected(A):
    """Every pair of objects is chained by objects with a non-empty hom
    fiber in between (in either direction); vacuously true when there is
    at most one object."""
    objs = A.objects()
    if len(objs) <= 1:
        return True
    uf = _UnionFind()
    for o in objs:
        uf.add(o)
    for a in objs:
        for b in objs:
            if a < b and (A.fiber_nonempty(1, (a, b))
                          or A.fiber_nonempty(1, (b, a))):
                uf.union(a, b)
    roots = {uf.find(o) for o in objs}
    return len(roots) == 1


def diagonal(A, max_dim=None, name=None):
    """The diagonal simplicial set: degree n is the bidegree (n, n) level.
    Non-degenerate cells are generators paired with jointly injective
    pairs of degeneracy words; used as input to the homotopy oracle."""
    if A.is_empty:
        from .sset import empty_sset
        return empty_sset(name or "diag")
    top = A.ext_dim + A.int_dim
    if max_dim is not None:
        top = min(top, max_dim)
    gens = {}
    faces = {}
    meta = {}

    def diag_id(g, ew, iw):
        return "%s~e%s~i%s" % (g, "".join(map(str, ew)), "".join(map(str, iw)))

    for g, (p, q) in sorted(A.gens.items()):
        for n in range(max(p, q), min(p + q, top) + 1):
            for ew in itertools.combinations(range(n), n - p):
                rest = [k for k in range(n) if k not in set(ew)]
                for iw in itertools.combinations(rest, n - q):
                    gid = diag_id(g, ew, tuple(sorted(iw)))
                    gens[gid] = n
                    meta[gid] = (g, ew, tuple(sorted(iw)))

    def normalize_diag(biel, n):
        """EZ normal form of a bidegree (n, n) element in the diagonal."""
        common = tuple(sorted(set(biel.eword) & set(biel.iword)))
        if not common:
            return El((), diag_id(biel.gen, biel.eword, biel.iword))
        s = delta.surjection_from_word(n, common)
        sec = s.section_of_surjection()
        etaE = delta.surjection_from_word(n, biel.eword)
        etaI = delta.surjection_from_word(n, biel.iword)
        ew2 = etaE.compose(sec).repeats()
        iw2 = etaI.compose(sec).repeats()
        return El(common, diag_id(biel.gen, ew2, iw2))

    for gid, (g, ew, iw) in meta.items():
        n = gens[gid]
        for i in range(n + 1):
            if n < 1:
                continue
            d = delta.coface(i, n)
            moved = A.act(d, d, BiEl(ew, iw, g))
            faces[(gid, i)] = normalize_diag(moved, n - 1)
    return FiniteSimplicialSet(name or "%s-diag" % A.name, gens, faces)


# -- free-ordered checks --------------------------------------------------

@dataclass
class FreeOrderedReport:
    holds: bool
    undecided: bool
    failures: list

    def __bool__(self):
        return self.holds and not self.undecided


def long_edge_map(A, m, t):
    """A_m(t) -> A_1(t0, tm), induced by the edge from 0 to m."""
    fib = A.fiber(m, t)
    tgt = A.fiber(1, (t[0], t[-1]))
    assign = {}
    for gid, (ew, g) in fib._precat_meta.items():
        n = fib.gens[gid]
        img = A.act(delta.long_edge(m), delta.identity(n), BiEl(ew, (), g))
        assign[gid] = A.biel_to_level_el(1, img)
    return SSetMap(fib, tgt, assign, check=False)


def is_point(X):
    return len(X.gens) == 1 and X.dim == 0


def is_free_ordered(A, order, strict=False, max_level=3, oracle=we_oracle):
    """Free-ordered check against a caller-supplied total order on the
    objects: empty fibers over unordered tuples, long-edge maps weak
    equivalences (isomorphisms when strict), point endo-homs."""
    objs = A.objects()
    if sorted(order) != objs:
        raise StructureError("order must enumerate the objects")
    rank = {o: k for k, o in enumerate(order)}
    failures = []
    undecided = False
    for a in objs:
        fib = A.fiber(1, (a, a))
        if not is_point(fib):
            failures.append(("endo-hom not a point", a))
    for m in range(1, max_level + 1):
        for t in itertools.product(objs, repeat=m + 1):
            ordered = all(rank[x] <= rank[y] for x, y in zip(t, t[1:]))
            if not ordered:
                if A.fiber_nonempty(m, t):
                    failures.append(("unordered tuple has non-empty fiber", t))
                continue
            f = long_edge_map(A, m, t)
            if strict:
                if not f.is_iso():
                    failures.append(("long-edge map not an isomorphism", t))
            else:
                rep = oracle(f)
                if rep.verdict is Verdict.NOT_WE:
                    failures.append(("long-edge map not a weak equivalence", t))
                elif rep.verdict is Verdict.UNKNOWN:
                    undecided = True
    return FreeOrderedReport(not failures, undecided, failures)


def product_object_order(prod_ext, order_a, order_b):
    """Objects of a product precategory in lexicographic order of their
    factors."""
    rank_a = {o: k for k, o in enumerate(order_a)}
    rank_b = {o: k for k, o in enumerate(order_b)}

    def key(o):
        a_el, b_el = prod_ext.token_of_gen[o]
        return (rank_a[a_el.gen], rank_b[b_el.gen])

    return sorted(prod_ext.precat.objects(), key=key)
