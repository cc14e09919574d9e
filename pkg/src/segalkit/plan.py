"""Bounded cell-addition plans.

A lifting diagram is a generating arrow together with an attaching map of
its source; a simple step is a finite multiset of lifting diagrams; a
plan is a finite list of simple steps with the induced chain of pushouts.
Rational composition drops diagrams that factor through an earlier stage,
rationalization regroups every diagram at the earliest stage where its
extension attaches, and the marked variants carry chosen fillers with
unique marked factorization.  The painted iteration gates diagrams by the
painted parts of levels 1 and m, and the canonical-marking variant skips
degenerate diagrams and lets them inherit their parents' fillers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import delta
from .delta import MonotoneMap
from .errors import BudgetError, StructureError
from .precat import (BiEl, Precategory, PrecatMap, biel_of,
                     degenerate_object, extract_bipresentation,
                     fiber_product_of_homs, identity_pmap,
                     precat_pushout_universal, segal_map_fiber)
from .sset import El, SSetMap, standard_simplex
from .theta import (GeneratingArrow, _cell_id, _obj_id, enumerate_precat_maps,
                    enumerate_sset_maps, theta, theta_map,
                    untranspose_simplex_map, untranspose_spine_map, upsilon)


# -- diagrams and steps ----------------------------------------------------

@dataclass
class LiftingDiagram:
    arrow: GeneratingArrow
    attach: PrecatMap

    def key(self):
        return (self.arrow.arrow_id,
                tuple(sorted(self.attach.assign.items())))

    def extend(self, f):
        """Push the diagram forward along a map out of its object."""
        return LiftingDiagram(self.arrow, f.compose(self.attach))

    def __repr__(self):
        return "LiftingDiagram(%s)" % (self.arrow.arrow_id,)


class SimpleStep:
    """A finite multiset of lifting diagrams with multiplicities >= 1."""

    def __init__(self, pairs):
        self.diagrams = {}
        self.mult = {}
        for diag, k in pairs:
            if k < 1:
                raise StructureError("multiplicities must be at least 1")
            key = diag.key()
            if key in self.mult:
                self.mult[key] += k
            else:
                self.diagrams[key] = diag
                self.mult[key] = k

    def __len__(self):
        return len(self.diagrams)

    @property
    def is_empty(self):
        return not self.diagrams

    def items(self):
        return [(self.diagrams[k], self.mult[k])
                for k in sorted(self.diagrams)]

    def extend(self, f):
        return SimpleStep([(d.extend(f), k) for d, k in self.items()])


@dataclass
class StepResult:
    precat: Precategory
    canonical: PrecatMap
    fillers: dict        # (diagram key, copy index) -> PrecatMap
    extraction: object


def apply_simple(X, step, name=None):
    """Pushout of X along the coproduct of the step's arrows, one copy
    per unit of multiplicity; returns the new object, the canonical map
    (a levelwise mono when the arrows are monos) and the copy fillers."""
    for diag, _ in step.items():
        if diag.attach.target is not X and diag.attach.target.gens != X.gens:
            raise StructureError("dangling diagram: attach not into X")
    if step.is_empty:
        return StepResult(X, identity_pmap(X), {}, None)
    from .sset import _UnionFind
    copies = []
    for diag, k in step.items():
        for c in range(k):
            copies.append((diag.key(), c, diag))
    P = max([X.ext_dim, 0] + [d.arrow.target.ext_dim for d, _ in step.items()])
    Q = max([X.int_dim, 0] + [d.arrow.target.int_dim for d, _ in step.items()])
    ufs = {}
    for p in range(P + 1):
        for q in range(Q + 1):
            uf = _UnionFind()
            for el in X.elements(p, q):
                uf.add(("X", el))
            for key, c, diag in copies:
                for el in diag.arrow.target.elements(p, q):
                    uf.add(((key, c), el))
                for s in diag.arrow.source.elements(p, q):
                    uf.add(((key, c), diag.arrow.map(s)))
                    uf.add(("X", diag.attach(s)))
                    uf.union(((key, c), diag.arrow.map(s)),
                             ("X", diag.attach(s)))
            ufs[(p, q)] = uf

    by_key = {(key, c): diag for key, c, diag in copies}

    def levels(p, q):
        uf = ufs[(p, q)]
        return sorted({uf.find(t) for t in uf.parent}, key=repr)

    def act(ops, token):
        fe, fi = ops
        side, el = token
        if side == "X":
            moved = X.act(fe, fi, el)
        else:
            moved = by_key[side].arrow.target.act(fe, fi, el)
        return ufs[(fe.source_arity, fi.source_arity)].find((side, moved))

    ext = extract_bipresentation(name or "%s+" % X.name, levels, act, P, Q)
    out = ext.precat
    canonical = PrecatMap(
        X, out,
        {g: ext.biel_of(X.gens[g][0], X.gens[g][1],
                        ufs[X.gens[g]].find(("X", biel_of(g))))
         for g in X.gens})
    fillers = {}
    for key, c, diag in copies:
        T = diag.arrow.target
        assign = {g: ext.biel_of(T.gens[g][0], T.gens[g][1],
                                 ufs[T.gens[g]].find(((key, c), biel_of(g))))
                  for g in T.gens}
        fillers[(key, c)] = PrecatMap(T, out, assign, check=False)
    return StepResult(out, canonical, fillers, ext)


# -- plans ------------------------------------------------------------------

class Plan:
    """A finite list of simple steps together with the induced chain."""

    def __init__(self, base, steps=()):
        self.base = base
        self.steps = []
        self.stages = [base]
        self.maps = []          # maps[k] : stages[k] -> stages[k+1]
        self.results = []
        for step in steps:
            self.push(step)

    @property
    def result(self):
        return self.stages[-1]

    def push(self, step):
        res = apply_simple(self.stages[-1], step,
                           name="%s#%d" % (self.base.name, len(self.steps) + 1))
        self.steps.append(step)
        self.stages.append(res.precat)
        self.maps.append(res.canonical)
        self.results.append(res)
        return res

    def stage_map(self, a, b):
        """The composite stages[a] -> stages[b]."""
        if a == b:
            return identity_pmap(self.stages[a])
        f = self.maps[a]
        for k in range(a + 1, b):
            f = self.maps[k].compose(f)
        return f

    def canonical(self):
        return self.stage_map(0, len(self.stages) - 1)


def map_image_elements(f, p, q):
    return {f(el) for el in f.source.elements(p, q)}


def attach_factors_through(attach, image_of):
    """Whether an attach map lands inside a levelwise image set; valid as
    a factorization test because all stage maps are monos."""
    for g, (p, q) in attach.source.gens.items():
        if attach.assign[g] not in image_of(p, q):
            return False
    return True


def factor_attach(attach, mono):
    """Corestrict an attach map along a levelwise mono containing its
    image; exhaustive preimage lookup."""
    lookup = {}
    assign = {}
    for g, (p, q) in attach.source.gens.items():
        if (p, q) not in lookup:
            lookup[(p, q)] = {mono(el): el
                              for el in mono.source.elements(p, q)}
        img = attach.assign[g]
        if img not in lookup[(p, q)]:
            raise StructureError("attach does not factor")
        assign[g] = lookup[(p, q)][img]
    return PrecatMap(attach.source, mono.source, assign, check=False)


def compose_naive(plan, steps):
    """Concatenation: the steps must attach into the plan's result."""
    out = Plan(plan.base)
    for step in plan.steps:
        out.push(step)
    for step in steps:
        out.push(step)
    return out


def compose_rational(plan, step):
    """Concatenation after deleting every diagram of the new step whose
    attach factors through the previous stage."""
    out = Plan(plan.base)
    for s in plan.steps:
        out.push(s)
    if not out.maps:
        out.push(step)
        return out
    last = out.maps[-1]
    cache = {}

    def image_of(p, q):
        if (p, q) not in cache:
            cache[(p, q)] = map_image_elements(last, p, q)
        return cache[(p, q)]

    kept = [(d, k) for d, k in step.items()
            if not attach_factors_through(d.attach, image_of)]
    out.push(SimpleStep(kept))
    return out


def is_rational(plan):
    """No diagram's extension to the result repeats the extension of a
    diagram from an earlier step."""
    end = len(plan.stages) - 1
    seen = {}
    for b, step in enumerate(plan.steps):
        ext_map = plan.stage_map(b, end)
        for diag, _ in step.items():
            ext = diag.extend(ext_map)
            key = ext.key()
            if key in seen and seen[key] < b:
                return False
            if key not in seen:
                seen[key] = b
    return True


@dataclass
class Rationalization:
    plan: Plan
    witness: PrecatMap      # plan.result -> original result, an iso


def rationalize(plan):
    """Regroup every diagram at the earliest stage its extension to the
    result attaches, summing multiplicities of diagrams with equal
    extensions; the result is rational and isomorphic to the original
    over the base."""
    end = len(plan.stages) - 1
    X_end = plan.stages[-1]
    # collect extensions, merged by key, with their original copy fillers
    merged = {}
    for b, step in enumerate(plan.steps):
        res = plan.results[b]
        tail = plan.stage_map(b + 1, end)
        ext_map = plan.stage_map(b, end)
        for diag, k in step.items():
            ext = diag.extend(ext_map)
            key = ext.key()
            if key not in merged:
                merged[key] = {"diagram": ext, "mult": 0, "fillers": []}
            merged[key]["mult"] += k
            for c in range(k):
                fil = tail.compose(res.fillers[(diag.key(), c)])
                merged[key]["fillers"].append(fil)

    out = Plan(plan.base)
    h = plan.canonical()            # current stage -> X_end
    remaining = dict(merged)
    copy_fillers = {}
    while remaining:
        cache = {}

        def image_of(p, q):
            if (p, q) not in cache:
                cache[(p, q)] = map_image_elements(h, p, q)
            return cache[(p, q)]

        ready = [key for key in sorted(remaining)
                 if attach_factors_through(remaining[key]["diagram"].attach,
                                           image_of)]
        if not ready:
            raise StructureError("rationalization is stuck")
        pairs = []
        for key in ready:
            data = remaining.pop(key)
            diag = LiftingDiagram(
                data["diagram"].arrow,
                factor_attach(data["diagram"].attach, h))
            pairs.append((diag, data["mult"]))
            copy_fillers[diag.key()] = data["fillers"]
        step = SimpleStep(pairs)
        res = out.push(step)
        # extend h over the new stage by the universal property: the old
        # part through h, each copy through its recorded original filler
        assign = {}
        for gid in res.precat.gens:
            side, el = res.extraction.token_of_gen[gid]
            if side == "X":
                assign[gid] = h(el)
            else:
                key, c = side
                assign[gid] = copy_fillers[key][c](el)
        h = PrecatMap(res.precat, X_end, assign)
    if not h.is_iso():
        raise StructureError("rationalization witness is not an isomorphism")
    return Rationalization(out, h)


# -- diagram enumeration and fillers ----------------------------------------

def enumerate_diagrams(X, arrows, dim_bound=None, budget=None):
    """All attach maps of the arrows' sources into X, deterministically
    ordered; arrows whose source exceeds the dimension bound are
    skipped."""
    out = []
    for arrow in arrows:
        src = arrow.source
        top = max([p + q for p, q in src.gens.values()] + [0])
        if dim_bound is not None and top > dim_bound:
            continue
        if arrow.tag == "boit":
            maps = _boit_attaches(X, arrow, budget)
        else:
            maps = enumerate_precat_maps(src, X, budget=budget)
        for att in maps:
            out.append(LiftingDiagram(arrow, att))
    return sorted(out, key=lambda d: d.key())


def _boit_attaches(X, arrow, budget=None):
    """Attach maps of a filler arrow's source, enumerated through the
    representing bijection: an object tuple, a map of the fill into the
    product of consecutive hom fibers, and a compatible map of the
    source of g into the level-m fiber."""
    m = arrow.params["m"]
    g = arrow.g
    E, F = g.source, g.target
    out = []
    for t in itertools.product(X.objects(), repeat=m + 1):
        prod = fiber_product_of_homs(X, t, max_dim=max(F.dim, 0))
        if prod.sset.is_empty and not F.is_empty:
            continue
        fibm = X.fiber_cached(m, t)
        sfm = segal_map_fiber(X, m, t)
        for w in enumerate_sset_maps(F, prod.sset, budget=budget):
            for u in enumerate_sset_maps(E, fibm, budget=budget):
                ok = all(sfm(u(El((), e))) == w(g(El((), e)))
                         for e in E.gens)
                if not ok:
                    continue
                lv1 = X.level(1)

                def combo_of(y, _w=w, _t=t):
                    el = _w(El((), y))
                    eta = delta.surjection_from_word(
                        prod.sset.degree_of(el), el.word)
                    token = prod.token_of_gen[el.gen]
                    return [lv1.act(eta, token[k]) for k in range(m)]

                spine_leg = untranspose_spine_map(m, F, X, t, combo_of)
                simplex_leg = untranspose_simplex_map(m, E, X, t, u)
                att = precat_pushout_universal(arrow.pushout, spine_leg,
                                               simplex_leg)
                out.append(att)
    return out


def has_filler(X, diagram, budget=None):
    """Exhaustive search for a filler of the diagram; True / False /
    raises BudgetError on exhaustion."""
    arrow = diagram.arrow
    T = arrow.target
    require = {}
    for s, d in arrow.source.gens.items():
        img = arrow.map.assign[s]
        if not img.eword and not img.iword:
            want = diagram.attach.assign[s]
            if img.gen in require and require[img.gen] != want:
                return False
            require[img.gen] = want
    for F in enumerate_precat_maps(T, X, budget=budget, require=require):
        if all(F(arrow.map(biel_of(s))) == diagram.attach(biel_of(s))
               for s in arrow.source.gens):
            return True
    return False


def e_plan(arrows, lam, dim_bound=None, budget=None):
    """The one-step plan generator taking every diagram with multiplicity
    lam."""
    if lam < 1:
        raise StructureError("multiplicity must be at least 1")

    def step_for(X):
        return SimpleStep([(d, lam)
                           for d in enumerate_diagrams(X, arrows, dim_bound,
                                                       budget)])
    return step_for


# -- marked objects ----------------------------------------------------------

class Marking:
    """A partial choice of fillers: diagram key -> (diagram, filler)."""

    def __init__(self, entries=()):
        self.entries = dict(entries)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, key):
        return key in self.entries

    def items(self):
        return [(k, self.entries[k]) for k in sorted(self.entries)]

    def add(self, diagram, filler):
        self.entries[diagram.key()] = (diagram, filler)

    def get(self, key):
        return self.entries.get(key)

    def pushforward(self, f):
        out = Marking()
        for _, (diag, fil) in self.items():
            nd = diag.extend(f)
            out.add(nd, f.compose(fil))
        return out

    def validate(self):
        for _, (diag, fil) in self.items():
            for s in diag.arrow.source.gens:
                if fil(diag.arrow.map(biel_of(s))) != diag.attach(biel_of(s)):
                    raise StructureError("marked filler does not commute")


@dataclass
class MarkedObject:
    precat: Precategory
    marking: Marking


@dataclass
class MarkedPlanReport:
    steps_run: int
    saturated: bool
    unfilled: list
    stage_sizes: list


def e_phi_marked(X, arrows, step_budget, dim_bound=None, budget=None):
    """The bounded marked injectivization: rationally composed one-step
    plans, all multiplicities one, marking exactly the attached fillers.
    Partiality is reported, never hidden."""
    plan = Plan(X)
    marking = Marking()
    steps_run = 0
    saturated = False
    for s in range(step_budget):
        cur = plan.result
        diags = enumerate_diagrams(cur, arrows, dim_bound, budget)
        if plan.maps:
            last = plan.maps[-1]
            cache = {}

            def image_of(p, q):
                if (p, q) not in cache:
                    cache[(p, q)] = map_image_elements(last, p, q)
                return cache[(p, q)]

            diags = [d for d in diags
                     if not attach_factors_through(d.attach, image_of)]
        if not diags:
            saturated = True
            break
        res = plan.push(SimpleStep([(d, 1) for d in diags]))
        steps_run += 1
        marking = marking.pushforward(res.canonical)
        for d in diags:
            nd = d.extend(res.canonical)
            marking.add(nd, res.fillers[(d.key(), 0)])
    unfilled = []
    if not saturated:
        cur = plan.result
        for d in enumerate_diagrams(cur, arrows, dim_bound, budget):
            try:
                if not has_filler(cur, d, budget):
                    unfilled.append(d)
            except BudgetError:
                unfilled.append(d)
    report = MarkedPlanReport(steps_run, saturated, unfilled,
                              [len(st.gens) for st in plan.stages])
    return (MarkedObject(plan.result, marking), plan.canonical(), plan,
            report)


def count_marked_factorizations(source, target, base, canonical,
                                budget=None):
    """Exhaustive count of marking-preserving maps F with
    F o canonical == base."""
    require = {}
    for g in canonical.source.gens:
        img = canonical.assign[g]
        if not img.eword and not img.iword:
            require[img.gen] = base.assign[g]
    count = 0
    for F in enumerate_precat_maps(source.precat, target.precat,
                                   budget=budget, require=require):
        if any(F(canonical.assign[g]) != base.assign[g]
               for g in canonical.source.gens):
            continue
        if _preserves_marking(F, source.marking, target.marking):
            count += 1
    return count


def _preserves_marking(F, mu, nu):
    """Whenever a marked diagram lands on a diagram marked in the target,
    the fillers must match; diagrams falling outside the target's marking
    impose no constraint.  (On totally marked targets this is the usual
    preservation condition.)"""
    for _, (diag, fil) in mu.items():
        moved = diag.extend(F)
        entry = nu.get(moved.key())
        if entry is None:
            continue
        _, target_fil = entry
        pushed = F.compose(fil)
        if any(pushed.assign[g] != target_fil.assign[g]
               for g in pushed.source.gens):
            return False
    return True


# -- painted iteration -------------------------------------------------------

from .precat import sub_precategory
from .theta import (Painting, RSData, boit_collapse, full_painting,
                    matched_power, object_tuple_map, sub_level)


def diagram_lands_in_painting(A, painting, diagram):
    """Whether all level-1 and level-m generators of the diagram's source
    attach into the painted parts."""
    m = painting.m
    for s, (p, q) in diagram.arrow.source.gens.items():
        img = diagram.attach.assign[s]
        if p == 1:
            if A.biel_to_level_el(1, img).gen not in painting.level1_gens:
                return False
        elif p == m:
            if A.biel_to_level_el(m, img).gen not in painting.levelm_gens:
                return False
    return True


@dataclass
class PaintedStepResult:
    precat: Precategory
    canonical: PrecatMap
    painting: Painting
    diagrams: list
    witness: object
    witness_ok: bool


def _updated_painting(A, painting, res):
    """Images of the painted generators plus every level-1 and level-m
    avatar of the attached copies (including external degeneracies)."""
    m = painting.m
    out = res.precat
    lm1 = res.canonical.level_map(1)
    lmm = res.canonical.level_map(m)
    painted1 = {lm1.assign[g].gen for g in painting.level1_gens}
    paintedm = {lmm.assign[g].gen for g in painting.levelm_gens}
    copy_gens = {gid for gid, tok in res.extraction.token_of_gen.items()
                 if tok[0] != "X"}
    for L, store in ((1, painted1), (m, paintedm)):
        lv = out.level(L)
        for gid, (ew, g) in lv._precat_meta.items():
            if g in copy_gens:
                store.add(gid)
    return Painting(m, frozenset(painted1), frozenset(paintedm))


def rs_witness_of_step(A, painting, res, new_painting):
    """The replacement data realized by one painted step: eta and phi are
    the induced maps on the painted parts, nu the vertex data, psi the
    spine data; validated against the vertex and Segal compatibilities."""
    m = painting.m
    out = res.precat
    sub1_old = sub_level(A, 1, painting.level1_gens)
    subm_old = sub_level(A, m, painting.levelm_gens)
    sub1_new = sub_level(out, 1, new_painting.level1_gens)
    subm_new = sub_level(out, m, new_painting.levelm_gens)
    lm1 = res.canonical.level_map(1)
    lmm = res.canonical.level_map(m)
    eta = SSetMap(sub1_old, sub1_new,
                  {g: lm1.assign[g] for g in sub1_old.gens}, check=False)
    phi = SSetMap(subm_old, subm_new,
                  {g: lmm.assign[g] for g in subm_old.gens}, check=False)
    nu_full = object_tuple_map(out, 1)
    nu = SSetMap(sub1_new, nu_full.target,
                 {g: nu_full.assign[g] for g in sub1_new.gens}, check=False)
    bprod = matched_power(out, sub1_new, nu, m)
    psi_assign = {}
    lvm = out.level(m)
    ok = True
    for gid in subm_new.gens:
        ew, g = lvm._precat_meta[gid]
        n = subm_new.gens[gid]
        combo = []
        for k in range(m):
            img = out.act(delta.principal_edge(k, m), delta.identity(n),
                          BiEl(ew, (), g))
            el = out.biel_to_level_el(1, img)
            if el.gen not in new_painting.level1_gens:
                ok = False
            combo.append(el)
        psi_assign[gid] = bprod.el_of(n, tuple(combo))
    psi = SSetMap(subm_new, bprod.sset, psi_assign, check=False)
    data = RSData(m, eta, nu, phi, psi, bprod)
    # compatibilities: nu o eta is the vertex map (object names taken
    # through the canonical renaming), psi o phi the Segal map pushed
    # through eta
    omap = {o: res.canonical.assign[o].gen for o in A.objects()}
    vm_old = object_tuple_map(A, 1)
    for g in sub1_old.gens:
        old = vm_old.assign[g]
        renamed = ",".join(omap[o] for o in old.gen.split(","))
        if nu(eta.assign[g]) != El(old.word, renamed):
            ok = False
    lvm_old = A.level(m)
    for gid in subm_old.gens:
        ew, g = lvm_old._precat_meta[gid]
        n = subm_old.gens[gid]
        img = psi(phi.assign[gid])
        eta_word = delta.surjection_from_word(bprod.sset.degree_of(img),
                                              img.word)
        token = bprod.token_of_gen[img.gen]
        for k in range(m):
            want = A.act(delta.principal_edge(k, m), delta.identity(n),
                         BiEl(ew, (), g))
            got = sub1_new.act(eta_word, token[k])
            if eta(A.biel_to_level_el(1, want)) != got:
                ok = False
    return data, ok


def raj_1m(A, painting, arrows, dim_bound=None, budget=None,
           with_witness=True):
    """One painted step: attach every diagram of the given level-m filler
    arrows whose source lands in the painted parts, then repaint with the
    new cells."""
    diags = [d for d in enumerate_diagrams(A, arrows, dim_bound, budget)
             if diagram_lands_in_painting(A, painting, d)]
    if not diags:
        return PaintedStepResult(A, identity_pmap(A), painting, [], None,
                                 True)
    res = apply_simple(A, SimpleStep([(d, 1) for d in diags]))
    new_painting = _updated_painting(A, painting, res)
    witness, ok = (None, True)
    if with_witness:
        witness, ok = rs_witness_of_step(A, painting, res, new_painting)
    return PaintedStepResult(res.precat, res.canonical, new_painting, diags,
                             witness, ok)


@dataclass
class PaintedRunReport:
    steps_run: int
    saturated: bool
    objects_invariant: bool
    witnesses: list
    witnesses_ok: bool


def cat_1m(A, m, arrows, step_budget, dim_bound=None, budget=None,
           with_witness=True):
    """Iterate the painted step from the fully painted input, repainting
    after every stage; stops at saturation or at the step budget."""
    for arrow in arrows:
        if arrow.params.get("m") != m:
            raise StructureError("arrow level does not match m")
    cur = A
    painting = full_painting(A, m)
    canonical = identity_pmap(A)
    witnesses = []
    ok = True
    steps_run = 0
    saturated = False
    objects_invariant = True
    for _ in range(step_budget):
        step = raj_1m(cur, painting, arrows, dim_bound, budget, with_witness)
        if not step.diagrams:
            saturated = True
            break
        steps_run += 1
        images = {step.canonical.assign[o].gen for o in cur.objects()}
        if images != set(step.precat.objects()):
            objects_invariant = False
        canonical = step.canonical.compose(canonical)
        cur = step.precat
        painting = step.painting
        witnesses.append(step.witness)
        ok = ok and step.witness_ok
    report = PaintedRunReport(steps_run, saturated, objects_invariant,
                              witnesses, ok)
    return cur, canonical, report


def bigcat(A, fg1_arrows, rounds, step_budget, dim_bound=None, budget=None):
    """Interleave the painted iterations over the levels present in the
    family, cycling m = 2, 3, ...; the object set never changes."""
    by_m = {}
    for arrow in fg1_arrows:
        by_m.setdefault(arrow.params["m"], []).append(arrow)
    ms = sorted(by_m)
    if not ms:
        raise StructureError("no filler arrows given")
    cur = A
    canonical = identity_pmap(A)
    reports = []
    for r in range(rounds):
        m = ms[r % len(ms)]
        cur, can, report = cat_1m(cur, m, by_m[m], step_budget, dim_bound,
                                  budget)
        canonical = can.compose(canonical)
        reports.append((m, report))
    return cur, canonical, reports


# -- canonical marking -------------------------------------------------------

class ArrowFamily:
    """The filler arrows indexed by (m, k), with the collapse pairs used
    by the degeneracy test."""

    def __init__(self, arrows):
        self.by_mk = {}
        for a in arrows:
            if a.tag != "boit":
                raise StructureError("canonical marking expects filler arrows")
            self.by_mk[(a.params["m"], a.params["k"])] = a
        self._collapse_cache = {}

    def arrows(self):
        return [self.by_mk[key] for key in sorted(self.by_mk)]

    def collapse(self, m, k, j):
        key = (m, k, j)
        if key not in self._collapse_cache:
            arrow = self.by_mk[(m, k)]
            lower = self.by_mk.get((m - 1, k))
            self._collapse_cache[key] = boit_collapse(j, arrow, lower)
        return self._collapse_cache[key]

    def has_level(self, m, k):
        return (m, k) in self.by_mk


def _factor_through_collapse(diagram, e):
    """d' with d = d' o e, if it exists: e is levelwise surjective, so
    try the induced assignment and check."""
    d = diagram.attach
    src = e.source
    assign = {}
    lookup = {}
    for gid, (p, q) in e.target.gens.items():
        if (p, q) not in lookup:
            lookup[(p, q)] = {}
            for x in src.elements(p, q):
                lookup[(p, q)].setdefault(e(x), x)
        pre = lookup[(p, q)].get(biel_of(gid))
        if pre is None:
            return None
        assign[gid] = d(pre)
    try:
        dprime = PrecatMap(e.target, d.target, assign)
    except StructureError:
        return None
    for s in src.gens:
        if dprime(e(biel_of(s))) != d(biel_of(s)):
            return None
    return dprime


def degeneracy_witnesses(diagram, family):
    """All elementary collapse factorizations of a filler diagram:
    entries (kind, parent, e_prime) with kind 'arrow' (parent a lower
    filler diagram) or 'identity' (parent the factored map out of the
    collapsed target)."""
    arrow = diagram.arrow
    if arrow.tag != "boit":
        return []
    m, k = arrow.params["m"], arrow.params["k"]
    out = []
    for j in range(m):
        e, e_prime = family.collapse(m, k, j)
        dprime = _factor_through_collapse(diagram, e)
        if dprime is None:
            continue
        if m - 1 >= 2:
            out.append(("arrow",
                        LiftingDiagram(family.by_mk[(m - 1, k)], dprime),
                        e_prime))
        else:
            out.append(("identity", dprime, e_prime))
    return out


def is_degenerate_diagram(diagram, family):
    return bool(degeneracy_witnesses(diagram, family))


def reduce_diagram(diagram, family):
    """Follow elementary collapses to a non-degenerate parent: returns
    ('nondeg', diagram, e_prime) or ('identity', dprime, e_prime), where
    e_prime composes the target collapses used on the way down."""
    cur = diagram
    e_prime_total = None
    while True:
        ws = degeneracy_witnesses(cur, family)
        if not ws:
            return ("nondeg", cur, e_prime_total)
        kind, parent, e_prime = ws[0]
        e_prime_total = (e_prime if e_prime_total is None
                         else e_prime.compose(e_prime_total))
        if kind == "identity":
            return ("identity", parent, e_prime_total)
        cur = parent


@dataclass
class CanonicalStepResult:
    marked: MarkedObject
    canonical: PrecatMap
    attached: list


def raj_c(marked, family, dim_bound=None, budget=None):
    """Attach exactly the non-degenerate unmarked diagrams, once each,
    then extend the marking canonically: attached diagrams get the copy
    fillers, degenerate diagrams inherit their parents' fillers (or the
    factored map when the parent is an identity)."""
    A = marked.precat
    mu = marked.marking
    diags = enumerate_diagrams(A, family.arrows(), dim_bound, budget)
    unmarked = [d for d in diags if d.key() not in mu]
    to_attach = [d for d in unmarked if not is_degenerate_diagram(d, family)]
    degenerate = [d for d in unmarked if is_degenerate_diagram(d, family)]
    if not to_attach and not degenerate:
        return CanonicalStepResult(marked, identity_pmap(A), [])
    if to_attach:
        res = apply_simple(A, SimpleStep([(d, 1) for d in to_attach]))
        can = res.canonical
        out = res.precat
    else:
        res = None
        can = identity_pmap(A)
        out = A
    nu = mu.pushforward(can)
    for d in to_attach:
        nd = d.extend(can)
        nu.add(nd, res.fillers[(d.key(), 0)])
    for d in degenerate:
        kind, parent, e_prime = reduce_diagram(d, family)
        nd = d.extend(can)
        if nd.key() in nu:
            continue
        if kind == "identity":
            nu.add(nd, can.compose(parent).compose(e_prime))
        else:
            entry = nu.get(parent.extend(can).key())
            if entry is None:
                raise StructureError("parent of a degenerate diagram missing")
            nu.add(nd, entry[1].compose(e_prime))
    return CanonicalStepResult(MarkedObject(out, nu), can, to_attach)


def marking_is_canonical(marked, family):
    """Every marked degenerate diagram must inherit along each of its
    elementary collapses."""
    mu = marked.marking
    for _, (diag, fil) in mu.items():
        for kind, parent, e_prime in degeneracy_witnesses(diag, family):
            if kind == "identity":
                want = parent.compose(e_prime)
            else:
                entry = mu.get(parent.key())
                if entry is None:
                    return False
                want = entry[1].compose(e_prime)
            if any(fil.assign[g] != want.assign[g] for g in fil.source.gens):
                return False
    return True


def cat_c(A, family, step_budget, dim_bound=None, budget=None,
          initial_marking=None):
    """Iterate the canonical step from an (optionally pre-marked) input
    until no non-degenerate unmarked diagram remains or the budget runs
    out; the output marking passes the canonicity check."""
    marked = MarkedObject(A, initial_marking or Marking())
    if initial_marking is not None and not marking_is_canonical(marked,
                                                                family):
        raise StructureError("input marking is not canonical")
    canonical = identity_pmap(A)
    saturated = False
    for _ in range(step_budget):
        step = raj_c(marked, family, dim_bound, budget)
        if not step.attached:
            saturated = True
            marked = step.marked
            break
        canonical = step.canonical.compose(canonical)
        marked = step.marked
    if not marking_is_canonical(marked, family):
        raise StructureError("canonical marking failed its checker")
    return marked, canonical, saturated


# -- shared-stage runs on subobjects ------------------------------------------

def shared_cat_stages(C, subobject_gen_sets, arrows, step_budget,
                      dim_bound=None, budget=None):
    """Run the rational one-step iteration on the ambient object and
    track each face-closed generator subset through the shared diagram
    enumeration: a subobject picks up exactly the copies of the diagrams
    that land in it.  Returns the ambient stages and the generator-set
    chains."""
    chains = [[frozenset(s)] for s in subobject_gen_sets]
    cur = C
    stages = [C]
    prev_map = None
    for _ in range(step_budget):
        diags = enumerate_diagrams(cur, arrows, dim_bound, budget)
        if prev_map is not None:
            cache = {}

            def image_of(p, q):
                if (p, q) not in cache:
                    cache[(p, q)] = map_image_elements(prev_map, p, q)
                return cache[(p, q)]

            diags = [d for d in diags
                     if not attach_factors_through(d.attach, image_of)]
        if not diags:
            break
        res = apply_simple(cur, SimpleStep([(d, 1) for d in diags]))
        copy_gens = {}
        for gid, tok in res.extraction.token_of_gen.items():
            if tok[0] != "X":
                key, c = tok[0]
                copy_gens.setdefault(key, set()).add(gid)
        for chain in chains:
            sub = chain[-1]
            new = {res.canonical.assign[g].gen for g in sub}
            for d in diags:
                lands = all(d.attach.assign[s].gen in sub
                            for s in d.arrow.source.gens)
                if lands:
                    new |= copy_gens.get(d.key(), set())
            chain.append(frozenset(new))
        prev_map = res.canonical
        cur = res.precat
        stages.append(cur)
    return stages, chains
