import math

import pytest

from segalkit import delta
from segalkit.errors import StructureError


def test_compose_and_identity():
    f = delta.MonotoneMap(1, 2, (0, 2))
    g = delta.MonotoneMap(2, 1, (0, 0, 1))
    h = f.compose(g)
    assert h.values == (0, 0, 2)
    assert delta.identity(3).compose(delta.identity(3)).is_identity


def test_monotonicity_enforced():
    with pytest.raises(StructureError):
        delta.MonotoneMap(1, 2, (2, 0))


def test_epi_mono_factorization():
    for m in range(4):
        for n in range(4):
            for f in delta.all_maps(m, n):
                epi, mono = f.epi_mono()
                assert epi.is_surjective and mono.is_injective
                assert mono.compose(epi) == f


def test_word_roundtrip():
    for n in range(6):
        for p in range(n + 1):
            for eta in delta.surjections(n, p):
                word = eta.repeats()
                assert delta.surjection_from_word(n, word) == eta


def test_section_is_section():
    eta = delta.surjection_from_word(4, (1, 2))
    sec = eta.section_of_surjection()
    assert eta.compose(sec).is_identity


def test_hom_count_formula():
    for q in range(4):
        for p in range(4):
            assert len(delta.all_maps(q, p)) == math.comb(p + q + 1, q + 1)


def test_off_vertex_counts():
    # |Delta(q,p)^0| = C(p+q+1, q+1) - (p+1)
    for q in range(4):
        for p in range(4):
            want = math.comb(p + q + 1, q + 1) - (p + 1)
            assert len(delta.off_vertex_maps(q, p)) == want
    assert len(delta.off_vertex_maps(2, 1)) == 2
    assert len(delta.off_vertex_maps(1, 1)) == 1


def test_off_spine_counts():
    maps = delta.off_spine_maps(2, 2)
    assert sorted(f.values for f in maps) == [(0, 0, 2), (0, 1, 2), (0, 2, 2)]
    # every member of Delta(q,m)^1 avoids [0] as well
    for f in delta.off_spine_maps(3, 2):
        assert len(set(f.values)) > 1


def test_spine_factorization():
    f = delta.MonotoneMap(2, 3, (1, 1, 2))
    i, tau = delta.spine_factorization(f, 3)
    assert i == 1
    assert delta.principal_edge(i, 3).compose(tau) == f
    with pytest.raises(StructureError):
        delta.spine_factorization(delta.MonotoneMap(1, 2, (0, 2)), 2)
