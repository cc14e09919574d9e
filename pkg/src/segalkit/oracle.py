"""Three-valued weak-equivalence oracle for maps of finite simplicial
sets.  Sound by construction: WE is only returned on certified homotopy
equivalences (components match, the mapping cone is acyclic, and the
fundamental-group obstruction is discharged), NOT_WE only on maps with a
computed homology or component mismatch, everything else is UNKNOWN.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .homology import cone_is_acyclic, homology
from .pi1 import is_trivially_simplifiable, pi1_presentation
from .sset import pi0, sub_sset


class Verdict(Enum):
    WE = "WE"
    NOT_WE = "NotWE"
    UNKNOWN = "Unknown"


@dataclass
class OracleReport:
    verdict: Verdict
    reasons: list = field(default_factory=list)

    def __bool__(self):
        return self.verdict is Verdict.WE


def _el(g):
    from .sset import El
    return El((), g)


def component_decomposition(X):
    """Vertex partition and the spanned simplicial subsets, in matching
    order."""
    parts = pi0(X)
    pieces = []
    for comp in parts:
        verts = set(comp)
        keep = {g for g in X.gens if set(X.vertices_of(_el(g))) & verts}
        pieces.append(sub_sset(X, keep, name="%s|comp" % X.name))
    return parts, pieces


def we_oracle(f, pi1_budget=10000):
    """Decide whether a simplicial map is a weak equivalence, three-valued.

    NOT_WE when component counts or homology differ, or the mapping cone
    has non-trivial homology.  WE when components biject, the cone is
    acyclic, and per matched component either both fundamental-group
    presentations simplify to the trivial group, or both sides are
    1-dimensional with first Betti number at most 1 (where the homology
    isomorphism already controls the free fundamental group).  UNKNOWN
    otherwise.
    """
    X, Y = f.source, f.target
    reasons = []

    parts_x, comps_x = component_decomposition(X)
    parts_y, comps_y = component_decomposition(Y)

    if X.is_empty and Y.is_empty:
        return OracleReport(Verdict.WE, ["both empty"])
    if len(parts_x) != len(parts_y):
        return OracleReport(Verdict.NOT_WE, ["component counts differ"])

    # induced map on components
    target_index = {}
    for k, comp in enumerate(parts_y):
        for v in comp:
            target_index[v] = k
    image_of = []
    for comp in parts_x:
        images = {target_index[f(_el(v)).gen] for v in comp}
        if len(images) != 1:
            return OracleReport(Verdict.NOT_WE,
                                ["a component maps into two components"])
        image_of.append(images.pop())
    if len(set(image_of)) != len(parts_y):
        return OracleReport(Verdict.NOT_WE, ["components not bijective"])

    hx = homology(X)
    hy = homology(Y)
    top = max(len(hx.groups), len(hy.groups)) - 1
    if hx.truncate(top) != hy.truncate(top):
        return OracleReport(Verdict.NOT_WE, ["homology profiles differ"])
    if not cone_is_acyclic(f):
        return OracleReport(Verdict.NOT_WE, ["mapping cone not acyclic"])
    reasons.append("homology isomorphism certified by acyclic cone")

    # fundamental-group obstruction, per matched component
    simply_connected = True
    for comp, piece in zip(parts_x, comps_x):
        pres = pi1_presentation(piece, basepoint=comp[0])
        if not is_trivially_simplifiable(pres, pi1_budget):
            simply_connected = False
            break
    if simply_connected:
        for comp, piece in zip(parts_y, comps_y):
            pres = pi1_presentation(piece, basepoint=comp[0])
            if not is_trivially_simplifiable(pres, pi1_budget):
                simply_connected = False
                break
    if simply_connected:
        reasons.append("all components certified simply connected")
        return OracleReport(Verdict.WE, reasons)

    if X.dim <= 1 and Y.dim <= 1:
        small = all(homology(piece).free_rank(1) <= 1
                    for piece in comps_x + comps_y)
        if small:
            reasons.append("graphs with cyclic fundamental groups")
            return OracleReport(Verdict.WE, reasons)

    reasons.append("outside the certified regimes")
    return OracleReport(Verdict.UNKNOWN, reasons)
