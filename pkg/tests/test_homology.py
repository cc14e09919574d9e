import random

from segalkit.homology import (HomologyProfile, cone_is_acyclic, homology,
                               point_profile, smith_diagonal, sphere_profile)
from segalkit.sset import (El, SSetMap, boundary, coproduct, identity_map,
                           product, pushout, simplex_inclusion,
                           standard_simplex)


def test_smith_small():
    assert smith_diagonal([[2, 4], [-6, 6]]) == [2, 18]
    assert smith_diagonal([[1, 0], [0, 1]]) == [1, 1]
    assert smith_diagonal([]) == []
    assert smith_diagonal([[0, 0], [0, 0]]) == []


def test_smith_known_matrix():
    m = [[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]]
    assert smith_diagonal(m) == [1, 10, 30]


def test_smith_pivot_strategies_agree():
    rng = random.Random(11)
    for _ in range(50):
        rows = rng.randrange(1, 5)
        cols = rng.randrange(1, 5)
        m = [[rng.randrange(-6, 7) for _ in range(cols)] for _ in range(rows)]
        assert smith_diagonal(m, "min") == smith_diagonal(m, "first")


def test_divisibility_chain():
    rng = random.Random(5)
    for _ in range(40):
        m = [[rng.randrange(-9, 10) for _ in range(4)] for _ in range(4)]
        diag = smith_diagonal(m)
        for a, b in zip(diag, diag[1:]):
            assert b % a == 0


def test_homology_simplices_contractible():
    for n in range(4):
        prof = homology(standard_simplex(n))
        assert prof.free_rank(0) == 1
        assert prof.is_zero_above(0)
        assert not prof.torsion(0)


def test_homology_spheres():
    assert homology(boundary(2)) == sphere_profile(1)
    assert homology(boundary(3)) == sphere_profile(2)
    assert homology(boundary(4)) == sphere_profile(3)


def test_homology_coproduct_is_direct_sum():
    A = boundary(2)
    B = boundary(3)
    both = homology(coproduct([A, B]))
    ha, hb = homology(A), homology(B)
    top = max(len(ha.groups), len(hb.groups)) - 1
    for n in range(top + 1):
        assert both.free_rank(n) == ha.free_rank(n) + hb.free_rank(n)
        assert both.torsion(n) == ha.torsion(n) + hb.torsion(n)


def test_homology_empty():
    from segalkit.sset import empty_sset
    prof = homology(empty_sset())
    assert prof.free_rank(0) == 0


def test_two_disks_make_sphere():
    inc = simplex_inclusion(2)
    po = pushout(inc, inc)
    assert homology(po.sset) == sphere_profile(2)


def test_torus_like_product_homology():
    # boundary(2) x boundary(2) has the homology of a torus
    T = product(boundary(2), boundary(2))
    prof = homology(T)
    assert prof.free_rank(0) == 1
    assert prof.free_rank(1) == 2
    assert prof.free_rank(2) == 1
    assert not prof.torsion(1)


def test_cone_detects_non_iso():
    inc = simplex_inclusion(2)
    assert not cone_is_acyclic(inc)
    assert cone_is_acyclic(identity_map(boundary(3)))


def test_cone_point_into_simplex():
    pt = standard_simplex(0)
    tgt = standard_simplex(3)
    f = SSetMap(pt, tgt, {"0": El((), "0")})
    assert cone_is_acyclic(f)


def test_profile_repr_and_helpers():
    prof = HomologyProfile(((1, ()), (0, (2,))))
    assert "Z/2" in repr(prof)
    assert point_profile(2).groups == ((1, ()), (0, ()), (0, ()))
