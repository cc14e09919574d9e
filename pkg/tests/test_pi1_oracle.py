import pytest

from segalkit.errors import StructureError
from segalkit.oracle import Verdict, we_oracle
from segalkit.pi1 import (GroupPresentation, is_trivially_simplifiable,
                          pi1_presentation, simplify)
from segalkit.sset import (El, SSetMap, boundary, coproduct, empty_sset,
                           identity_map, point, pushout, simplex_inclusion,
                           standard_simplex)


def test_pi1_simplex_trivial():
    p = pi1_presentation(standard_simplex(2))
    assert is_trivially_simplifiable(p)


def test_pi1_circle_is_free_rank_one():
    p = pi1_presentation(boundary(2))
    q = simplify(p)
    assert q.generator_count == 1 and not q.relators
    assert not is_trivially_simplifiable(p)


def test_pi1_two_sphere_trivial():
    p = pi1_presentation(boundary(3))
    assert is_trivially_simplifiable(p)


def test_pi1_disconnected_errors():
    X = coproduct([point("a", "a"), point("b", "b")])
    with pytest.raises(StructureError):
        pi1_presentation(X)


def test_simplifier_handles_cancellation():
    # < a, b | a b, b > is trivial
    p = GroupPresentation(2, ((1, 2), (2,)))
    assert is_trivially_simplifiable(p)


def test_simplifier_is_sound_on_z2():
    # < a | a^2 > must not simplify to the empty presentation
    p = GroupPresentation(1, ((1, 1),))
    assert not is_trivially_simplifiable(p)


def test_relator_letters_validated():
    with pytest.raises(StructureError):
        GroupPresentation(1, ((2,),))


def test_oracle_identity_we():
    rep = we_oracle(identity_map(boundary(3)))
    assert rep.verdict is Verdict.WE


def test_oracle_point_into_simplex_we():
    pt = point()
    tgt = standard_simplex(3)
    f = SSetMap(pt, tgt, {"*": El((), "2")})
    assert we_oracle(f).verdict is Verdict.WE


def test_oracle_boundary_inclusion_not_we():
    assert we_oracle(simplex_inclusion(2)).verdict is Verdict.NOT_WE


def test_oracle_empty_cases():
    e = empty_sset()
    assert we_oracle(SSetMap(e, e, {})).verdict is Verdict.WE
    assert we_oracle(SSetMap(e, point(), {})).verdict is Verdict.NOT_WE


def test_oracle_discrete_bijection():
    X = coproduct([point("a", "a"), point("b", "b")])
    f = SSetMap(X, X, {"0:a": El((), "0:a"), "1:b": El((), "1:b")})
    assert we_oracle(f).verdict is Verdict.WE
    g = SSetMap(X, X, {"0:a": El((), "0:a"), "1:b": El((), "0:a")})
    assert we_oracle(g).verdict is Verdict.NOT_WE


def test_oracle_circle_self_map_graph_branch():
    C = boundary(2)
    assert we_oracle(identity_map(C)).verdict is Verdict.WE


def test_oracle_sphere_collapse_not_we():
    # boundary(3) -> point is a homology non-iso
    S = boundary(3)
    f = SSetMap(S, point(), {g: El(tuple(range(d)), "*")
                             for g, d in S.gens.items()})
    assert we_oracle(f).verdict is Verdict.NOT_WE


def test_oracle_composition_of_we_is_we():
    pt = point()
    mid = standard_simplex(1)
    top = standard_simplex(2)
    f = SSetMap(pt, mid, {"*": El((), "0")})
    g = SSetMap(mid, top, {"0": El((), "0"), "1": El((), "1"),
                           "0.1": El((), "0.1")})
    assert we_oracle(f).verdict is Verdict.WE
    assert we_oracle(g).verdict is Verdict.WE
    assert we_oracle(g.compose(f)).verdict is Verdict.WE
