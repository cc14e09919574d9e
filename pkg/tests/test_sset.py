import math
import random

import pytest

from segalkit import delta
from segalkit.errors import StructureError
from segalkit.sset import (El, SSetMap, boundary, coproduct, empty_sset,
                           identity_map, pi0, point, product,
                           pushout, pushout_universal, sequential_colimit,
                           simplex_inclusion, standard_simplex, sub_sset,
                           vertex_name)


def delta1_edge():
    return El((), vertex_name((0, 1)))


def test_standard_simplex_counts():
    for n in range(5):
        X = standard_simplex(n)
        assert X.validate() == []
        counts = X.gen_counts()
        for k in range(n + 1):
            assert counts[k] == math.comb(n + 1, k + 1)


def test_boundary_counts():
    assert boundary(0).is_empty
    assert boundary(2).gen_counts() == (3, 3)
    assert boundary(3).gen_counts() == (4, 6, 4)


def test_act_identity():
    X = standard_simplex(2)
    for n in range(3):
        for el in X.level(n):
            assert X.act(delta.identity(n), el) == el


def test_act_face_of_edge():
    X = standard_simplex(1)
    e = delta1_edge()
    assert X.act(delta.coface(0, 1), e) == El((), "1")
    assert X.act(delta.coface(1, 1), e) == El((), "0")


def test_act_degenerate_then_face():
    # d_0 s_0 = id on vertices
    X = standard_simplex(1)
    v = El((), "0")
    up = X.act(delta.codegeneracy(0, 0), v)
    assert up == El((0,), "0")
    assert X.act(delta.coface(0, 1), up) == v


def test_act_arity_mismatch():
    X = standard_simplex(1)
    with pytest.raises(StructureError):
        X.act(delta.coface(0, 2), delta1_edge())


def test_functoriality_random_pairs():
    rng = random.Random(7)
    X = standard_simplex(3)
    for _ in range(1000):
        n = rng.randrange(0, 4)
        m = rng.randrange(0, 4)
        k = rng.randrange(0, 4)
        f = rng.choice(delta.all_maps(m, n))
        g = rng.choice(delta.all_maps(k, m))
        for el in [rng.choice(X.level(n))]:
            assert X.act(g, X.act(f, el)) == X.act(f.compose(g), el)


def test_ez_uniqueness_levels():
    # every level element has a unique (word, generator) expression by
    # construction; check level counts against the closed formula
    X = standard_simplex(2)
    for n in range(5):
        count = sum(math.comb(n, n - d) * math.comb(2 + 1, d + 1)
                    for d in range(min(n, 2) + 1))
        # elements (eta: [n] ->> [d], d-cell of Delta[2])
        got = len(X.level(n))
        want = sum(len(delta.surjections(n, d)) * math.comb(3, d + 1)
                   for d in range(min(n, 2) + 1))
        assert got == want == count


def test_levels_finite_for_degenerate_heavy():
    X = standard_simplex(1)
    assert len(X.level(4)) == 2 + len(delta.surjections(4, 1))


def test_pushout_spine():
    # glue two intervals end to start: 3 vertices, 2 edges
    pt = point()
    d1a = standard_simplex(1)
    d1b = standard_simplex(1)
    f = SSetMap(pt, d1a, {"*": El((), "1")})
    g = SSetMap(pt, d1b, {"*": El((), "0")})
    po = pushout(f, g, "spine2")
    assert po.sset.gen_counts() == (3, 2)
    assert len(pi0(po.sset)) == 1


def test_pushout_of_identities():
    X = standard_simplex(2)
    po = pushout(identity_map(X), identity_map(X))
    assert po.sset.gen_counts() == X.gen_counts()
    assert po.left_map.is_iso()


def test_pushout_universal_property_small():
    # glue two triangles along their boundary: a 2-sphere
    inc = simplex_inclusion(2)
    po = pushout(inc, inc, "two-triangles")
    assert po.sset.gen_counts() == (3, 3, 2)
    # cocone into a single triangle: both legs the identity inclusion
    tgt = standard_simplex(2)
    u = pushout_universal(po, identity_map(tgt), identity_map(tgt))
    assert u.validate() == []
    # factorization: u o left = id
    comp = u.compose(po.left_map)
    assert all(comp.assign[g] == El((), g) for g in tgt.gens)


def test_coproduct_and_pi0():
    X = coproduct([point("a", "a"), point("b", "b")])
    assert len(pi0(X)) == 2
    assert pi0(standard_simplex(5)) and len(pi0(standard_simplex(5))) == 1
    assert len(pi0(boundary(2))) == 1
    assert coproduct([]).is_empty


def test_product_of_intervals():
    P = product(standard_simplex(1), standard_simplex(1))
    assert P.gen_counts() == (4, 5, 2)


def test_product_unit():
    A = boundary(2)
    P = product(point(), A)
    assert P.gen_counts() == A.gen_counts()


def test_product_with_empty():
    assert product(empty_sset(), standard_simplex(1)).is_empty


def test_sequential_colimit_budget():
    X = standard_simplex(0)
    Y = standard_simplex(1)
    f = SSetMap(X, Y, {"0": El((), "0")})
    g = identity_map(Y)
    obj, can = sequential_colimit([f, g, g], budget=2)
    assert obj is g.target
    assert can.assign["0"] == El((), "0")


def test_sub_sset_closure_checked():
    X = standard_simplex(2)
    with pytest.raises(StructureError):
        sub_sset(X, [vertex_name((0, 1, 2))])


def test_simplicial_identity_violation_detected():
    gens = {"a": 0, "b": 0, "c": 0, "e": 1, "f": 1, "t": 2}
    faces = {
        ("e", 0): El((), "b"), ("e", 1): El((), "a"),
        ("f", 0): El((), "c"), ("f", 1): El((), "a"),
        # t's faces deliberately inconsistent
        ("t", 0): El((), "e"), ("t", 1): El((), "e"), ("t", 2): El((), "f"),
    }
    from segalkit.sset import FiniteSimplicialSet
    with pytest.raises(StructureError):
        FiniteSimplicialSet("bad", gens, faces)
