"""Finite simplicial sets presented by non-degenerate generators.

A simplicial set is stored as a map from generator ids to dimensions
together with a face table sending (generator, i) to a formal element.
A formal element is a degeneracy word in normal form applied to a
generator; the word is the set of repeat positions of the corresponding
surjection in the simplex category, so the empty word characterises the
non-degenerate elements.  Every level is a finite derived set and the
operator action of an arbitrary monotone map is computed by epi-mono
factorization plus the face table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import delta
from .delta import MonotoneMap
from .errors import StructureError


@dataclass(frozen=True, order=True)
class El:
    """A formal element: degeneracy word (strictly increasing repeat
    positions) applied to a generator.  word == () iff non-degenerate."""

    word: tuple
    gen: str

    def __repr__(self):
        if not self.word:
            return "El(%s)" % self.gen
        return "El(s%s %s)" % (list(self.word), self.gen)


class FiniteSimplicialSet:
    """A finite simplicial set given by generators and a face table.

    gens  : dict generator id -> dimension
    faces : dict (generator id, i) -> El of dimension dim - 1
    """

    def __init__(self, name, gens, faces, check=True):
        self.name = name
        self.gens = dict(gens)
        self.faces = dict(faces)
        self._level_cache = {}
        self._act_cache = {}
        if check:
            errs = self.validate()
            if errs:
                raise StructureError("%s: %s" % (name, "; ".join(errs)))

    # -- basic accessors -------------------------------------------------

    @property
    def dim(self):
        return max(self.gens.values(), default=-1)

    @property
    def is_empty(self):
        return not self.gens

    def gen_ids(self):
        return sorted(self.gens)

    def gens_of_dim(self, n):
        return sorted(g for g, d in self.gens.items() if d == n)

    def gen_counts(self):
        counts = [0] * (self.dim + 1)
        for d in self.gens.values():
            counts[d] += 1
        return tuple(counts)

    def degree_of(self, el):
        return self.gens[el.gen] + len(el.word)

    def face(self, gid, i):
        return self.faces[(gid, i)]

    # -- operator action -------------------------------------------------

    def act_injective(self, mono, gid):
        """The image of a non-degenerate generator under an injection of
        the simplex category, via iterated faces."""
        if mono.is_identity:
            return El((), gid)
        i = mono.missed()[-1]
        p = mono.target_arity
        rest = MonotoneMap(mono.source_arity, p - 1,
                           tuple(v if v < i else v - 1 for v in mono.values))
        return self.act(rest, self.face(gid, i))

    def act(self, f, el):
        """The image of a formal element under a monotone map, in normal
        form.  f : [m] -> [n] acts on elements of degree n."""
        key = (f, el)
        hit = self._act_cache.get(key)
        if hit is not None:
            return hit
        n = self.degree_of(el)
        if f.target_arity != n:
            raise StructureError(
                "arity mismatch: map into [%d] applied to element of degree %d"
                % (f.target_arity, n))
        eta = delta.surjection_from_word(n, el.word)
        epi, mono = eta.compose(f).epi_mono()
        inner = self.act_injective(mono, el.gen)
        eta2 = delta.surjection_from_word(mono.source_arity, inner.word)
        total = eta2.compose(epi)
        out = El(total.repeats(), inner.gen)
        self._act_cache[key] = out
        return out

    def level(self, n):
        """All degree-n elements, sorted."""
        if n not in self._level_cache:
            out = []
            for g, d in self.gens.items():
                if d > n:
                    continue
                for word in itertools.combinations(range(n), n - d):
                    out.append(El(word, g))
            self._level_cache[n] = sorted(out)
        return self._level_cache[n]

    def vertices_of(self, el):
        """The tuple of vertex generators of a formal element."""
        n = self.degree_of(el)
        return tuple(self.act(delta.vertex(i, n), el).gen for i in range(n + 1))

    # -- validation ------------------------------------------------------

    def validate(self):
        errs = []
        for g, d in self.gens.items():
            if d < 0:
                errs.append("generator %s has negative dimension" % g)
            for i in range(d + 1):
                if d >= 1 and (g, i) not in self.faces:
                    errs.append("missing face (%s, %d)" % (g, i))
        for (g, i), el in self.faces.items():
            if g not in self.gens:
                errs.append("face table mentions unknown generator %s" % g)
                continue
            d = self.gens[g]
            if d < 1 or i < 0 or i > d:
                errs.append("face index %d out of range for %s" % (i, g))
                continue
            if el.gen not in self.gens:
                errs.append("face (%s, %d) targets unknown generator %s"
                            % (g, i, el.gen))
                continue
            if self.degree_of(el) != d - 1:
                errs.append("face (%s, %d) has wrong degree" % (g, i))
        if errs:
            return errs
        # simplicial identities d_i d_j = d_{j-1} d_i for i < j
        for g, d in self.gens.items():
            if d < 2:
                continue
            for j in range(d + 1):
                for i in range(j):
                    lhs = self.act(delta.coface(i, d - 1), self.face(g, j))
                    rhs = self.act(delta.coface(j - 1, d - 1), self.face(g, i))
                    if lhs != rhs:
                        errs.append(
                            "simplicial identity d_%d d_%d fails on %s"
                            % (i, j, g))
        return errs


class SSetMap:
    """A simplicial map, recorded by generator assignments."""

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
        if not el.word:
            return image
        n = self.source.degree_of(el)
        eta = delta.surjection_from_word(n, el.word)
        return self.target.act(eta, image)

    def validate(self):
        errs = []
        for g, d in self.source.gens.items():
            if g not in self.assign:
                errs.append("no image for generator %s" % g)
                continue
            img = self.assign[g]
            if img.gen not in self.target.gens:
                errs.append("image of %s hits unknown generator" % g)
                continue
            if self.target.degree_of(img) != d:
                errs.append("image of %s has wrong degree" % g)
        if errs:
            return errs
        for g, d in self.source.gens.items():
            for i in range(d + 1):
                if d < 1:
                    continue
                lhs = self(self.source.face(g, i))
                rhs = self.target.act(delta.coface(i, d), self.assign[g])
                if lhs != rhs:
                    errs.append("map does not commute with d_%d on %s" % (i, g))
        return errs

    def compose(self, other):
        """self o other."""
        assign = {g: self(other.assign[g]) for g in other.source.gens}
        return SSetMap(other.source, self.target, assign, check=False)

    def is_iso(self):
        """A simplicial map is an isomorphism iff it matches generators
        bijectively with empty degeneracy words."""
        images = []
        for g, d in self.source.gens.items():
            img = self.assign[g]
            if img.word or self.target.gens[img.gen] != d:
                return False
            images.append(img.gen)
        return (len(set(images)) == len(images)
                and len(images) == len(self.target.gens))

    def image_elements(self, n):
        return {self(el) for el in self.source.level(n)}


def identity_map(X):
    return SSetMap(X, X, {g: El((), g) for g in X.gens}, check=False)


def empty_sset(name="empty"):
    return FiniteSimplicialSet(name, {}, {}, check=False)


def point(name="pt", vertex="*"):
    return FiniteSimplicialSet(name, {vertex: 0}, {}, check=False)


def vertex_name(vs):
    return ".".join(str(v) for v in vs)


def standard_simplex(n):
    """Delta[n]: non-degenerate k-cells are the (k+1)-subsets of {0..n}."""
    gens = {}
    faces = {}
    for k in range(n + 1):
        for vs in itertools.combinations(range(n + 1), k + 1):
            gid = vertex_name(vs)
            gens[gid] = k
            for i in range(k + 1):
                if k >= 1:
                    sub = vs[:i] + vs[i + 1:]
                    faces[(gid, i)] = El((), vertex_name(sub))
    return FiniteSimplicialSet("Delta[%d]" % n, gens, faces, check=False)


def boundary(n):
    """The boundary of Delta[n]; empty when n == 0."""
    if n == 0:
        return empty_sset("bdDelta[0]")
    full = standard_simplex(n)
    top = vertex_name(range(n + 1))
    gens = {g: d for g, d in full.gens.items() if g != top}
    faces = {(g, i): el for (g, i), el in full.faces.items() if g != top}
    return FiniteSimplicialSet("bdDelta[%d]" % n, gens, faces, check=False)


def simplex_inclusion(n):
    """The generating cofibration bdDelta[n] -> Delta[n]."""
    src = boundary(n)
    tgt = standard_simplex(n)
    return SSetMap(src, tgt, {g: El((), g) for g in src.gens}, check=False)


def sub_sset(X, gen_subset, name=None):
    """The simplicial subset spanned by a face-closed set of generators."""
    subset = set(gen_subset)
    for g in subset:
        if g not in X.gens:
            raise StructureError("unknown generator %s" % g)
    for g in sorted(subset):
        for i in range(X.gens[g] + 1):
            if X.gens[g] >= 1 and X.face(g, i).gen not in subset:
                raise StructureError(
                    "generator subset not closed under faces at %s" % g)
    gens = {g: X.gens[g] for g in subset}
    faces = {(g, i): el for (g, i), el in X.faces.items() if g in subset}
    return FiniteSimplicialSet(name or (X.name + "|sub"), gens, faces,
                               check=False)


def inclusion_map(sub, X):
    return SSetMap(sub, X, {g: El((), g) for g in sub.gens}, check=False)


# -- generic extraction of a generator presentation ----------------------

class Extraction:
    """Result of presenting an abstract level system by its non-degenerate
    elements: the simplicial set, plus translations in both directions."""

    def __init__(self, sset, token_of_gen, el_of_token):
        self.sset = sset
        self.token_of_gen = token_of_gen
        self._el_of_token = el_of_token

    def el_of(self, n, token):
        return self._el_of_token[(n, token)]


def extract_presentation(name, levels, act, max_dim, gen_id=None):
    """Present a level system by generators.

    levels(n) must list the degree-n elements (hashable, deterministically
    comparable), act(f, token) must implement a simplicial operator action,
    and only levels up to max_dim are inspected: the caller guarantees no
    non-degenerate element lives above that bound.
    """
    gens = {}
    faces = {}
    token_of_gen = {}
    el_of_token = {}
    counters = {}

    def name_gen(n, token):
        if gen_id is not None:
            gid = gen_id(n, token)
            if gid in gens:
                raise StructureError("duplicate generator id %s" % gid)
            return gid
        k = counters.get(n, 0)
        counters[n] = k + 1
        return "c%d_%d" % (n, k)

    for n in range(max_dim + 1):
        toks = sorted(levels(n), key=repr)
        for tok in toks:
            key = (n, tok)
            if key in el_of_token:
                continue
            degenerate = False
            for j in range(n):
                dj = act(delta.coface(j, n), tok)
                if act(delta.codegeneracy(j, n - 1), dj) == tok:
                    base = el_of_token[(n - 1, dj)]
                    eta = delta.surjection_from_word(n - 1, base.word)
                    total = eta.compose(delta.codegeneracy(j, n - 1))
                    el_of_token[key] = El(total.repeats(), base.gen)
                    degenerate = True
                    break
            if degenerate:
                continue
            gid = name_gen(n, tok)
            gens[gid] = n
            token_of_gen[gid] = tok
            el_of_token[key] = El((), gid)
            for i in range(n + 1):
                if n >= 1:
                    ft = act(delta.coface(i, n), tok)
                    faces[(gid, i)] = el_of_token[(n - 1, ft)]
    sset = FiniteSimplicialSet(name, gens, faces)
    return Extraction(sset, token_of_gen, el_of_token)


# -- colimits and products ----------------------------------------------

class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        p = self.parent[x]
        if p != x:
            p = self.find(p)
            self.parent[x] = p
        return p

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            # deterministic representative choice
            lo, hi = sorted((rx, ry), key=repr)
            self.parent[hi] = lo

    def classes(self):
        buckets = {}
        for x in self.parent:
            buckets.setdefault(self.find(x), []).append(x)
        return buckets


class PushoutResult:
    def __init__(self, sset, left_map, right_map, extraction, uf_levels):
        self.sset = sset
        self.left_map = left_map
        self.right_map = right_map
        self.extraction = extraction
        self._uf = uf_levels


def pushout(f, g, name=None):
    """Pushout of B <-f- A -g-> C, computed levelwise up to the maximal
    generator dimension (no non-degenerate cell appears above it) and
    re-presented by extracting non-degenerate classes."""
    if f.source is not g.source and f.source.gens != g.source.gens:
        raise StructureError("pushout legs must share their source")
    A, B, C = f.source, f.target, g.target
    N = max(A.dim, B.dim, C.dim, 0)
    ufs = {}
    for n in range(N + 1):
        uf = _UnionFind()
        for el in B.level(n):
            uf.add(("B", el))
        for el in C.level(n):
            uf.add(("C", el))
        for el in A.level(n):
            uf.add(("B", f(el)))
            uf.add(("C", g(el)))
            uf.union(("B", f(el)), ("C", g(el)))
        ufs[n] = uf

    def levels(n):
        return sorted({ufs[n].find(x) for x in ufs[n].parent}, key=repr)

    def act(op, token):
        side, el = token
        X = B if side == "B" else C
        moved = X.act(op, el)
        return ufs[op.source_arity].find((side, moved))

    ext = extract_presentation(name or "pushout", levels, act, N)
    P = ext.sset

    def induced(X, side):
        assign = {}
        for gid, d in X.gens.items():
            tok = ufs[d].find((side, El((), gid)))
            assign[gid] = ext.el_of(d, tok)
        return SSetMap(X, P, assign)

    return PushoutResult(P, induced(B, "B"), induced(C, "C"), ext, ufs)


def pushout_universal(po, u, w):
    """The unique map out of a pushout induced by a commuting cocone
    (u on the left leg's target, w on the right leg's target)."""
    T = u.target
    assign = {}
    for gid, d in po.sset.gens.items():
        tok = po.extraction.token_of_gen[gid]
        side, el = tok
        img = u(el) if side == "B" else w(el)
        assign[gid] = img
    return SSetMap(po.sset, T, assign)


def coproduct(parts, name=None):
    """Disjoint union; generator ids are prefixed by the part index."""
    gens = {}
    faces = {}
    for k, X in enumerate(parts):
        for g, d in X.gens.items():
            gens["%d:%s" % (k, g)] = d
        for (g, i), el in X.faces.items():
            faces[("%d:%s" % (k, g), i)] = El(el.word, "%d:%s" % (k, el.gen))
    return FiniteSimplicialSet(name or "coproduct", gens, faces, check=False)


def coproduct_inclusion(parts, cop, k):
    X = parts[k]
    return SSetMap(X, cop, {g: El((), "%d:%s" % (k, g)) for g in X.gens},
                   check=False)


def product(A, B, name=None):
    """Binary product, levelwise, with non-degenerate (shuffle) cells
    extracted."""
    N = A.dim + B.dim
    if A.is_empty or B.is_empty:
        return empty_sset(name or "product")

    def levels(n):
        return [(a, b) for a in A.level(n) for b in B.level(n)]

    def act(op, token):
        a, b = token
        return (A.act(op, a), B.act(op, b))

    ext = extract_presentation(name or "product", levels, act, max(N, 0))
    return ext.sset


def product_with_projections(A, B, name=None):
    N = max(A.dim + B.dim, 0)

    def levels(n):
        return [(a, b) for a in A.level(n) for b in B.level(n)]

    def act(op, token):
        a, b = token
        return (A.act(op, a), B.act(op, b))

    ext = extract_presentation(name or "product", levels, act, N)
    P = ext.sset
    pa = {g: ext.token_of_gen[g][0] for g in P.gens}
    pb = {g: ext.token_of_gen[g][1] for g in P.gens}
    proj_a = SSetMap(P, A, pa)
    proj_b = SSetMap(P, B, pb)
    return ext, proj_a, proj_b


def sequential_colimit(maps, budget):
    """Colimit of a finite chain, truncated at the budget: the last object
    reached together with the composite from the first source."""
    if not maps:
        raise StructureError("empty chain")
    used = maps[:budget] if budget is not None else list(maps)
    for f, g in zip(used, used[1:]):
        if f.target.gens != g.source.gens:
            raise StructureError("chain maps not composable")
    comp = used[0]
    for nxt in used[1:]:
        comp = nxt.compose(comp)
    return comp.target, comp


def pi0(X):
    """Connected components of the 1-skeleton, as a sorted partition of
    the vertex generators."""
    uf = _UnionFind()
    for v in X.gens_of_dim(0):
        uf.add(v)
    for e in X.gens_of_dim(1):
        a = X.face(e, 0).gen
        b = X.face(e, 1).gen
        uf.union(a, b)
    classes = sorted(tuple(sorted(c)) for c in uf.classes().values())
    return classes


def pi0_class_of(partition, v):
    for k, cls in enumerate(partition):
        if v in cls:
            return k
    raise StructureError("vertex %s not in partition" % v)


def is_connected_sset(X):
    return len(pi0(X)) <= 1
