"""Arithmetic of the simplex category.

Monotone maps between the finite ordinals [m] = {0 < ... < m}, their
epi-mono factorization, and the index sets of non-degenerate positions
used by the level-replacement constructions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import StructureError


@dataclass(frozen=True, order=True)
class MonotoneMap:
    """A weakly increasing map [m] -> [n], stored by its value tuple."""

    source_arity: int
    target_arity: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.source_arity + 1:
            raise StructureError("value tuple does not match source arity")
        if any(v < 0 or v > self.target_arity for v in self.values):
            raise StructureError("value out of range")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise StructureError("values not weakly increasing")

    def __call__(self, i):
        return self.values[i]

    def __repr__(self):
        return "MonotoneMap(%d->%d, %s)" % (
            self.source_arity, self.target_arity, list(self.values))

    def compose(self, other):
        """self o other, with other applied first."""
        return _compose(self, other)

    @property
    def is_identity(self):
        return (self.source_arity == self.target_arity
                and self.values == tuple(range(self.source_arity + 1)))

    @property
    def is_injective(self):
        return len(set(self.values)) == self.source_arity + 1

    @property
    def is_surjective(self):
        return set(self.values) == set(range(self.target_arity + 1))

    def epi_mono(self):
        """Unique factorization self = mono o epi with epi a surjection
        onto [q] and mono an injection out of [q]."""
        return _epi_mono(self)

    def repeats(self):
        """Positions i with values[i] == values[i+1]; for a surjection this
        is the canonical degeneracy word."""
        return tuple(i for i in range(self.source_arity)
                     if self.values[i] == self.values[i + 1])

    def missed(self):
        """Target values not hit; for an injection this is the canonical
        coface word."""
        hit = set(self.values)
        return tuple(v for v in range(self.target_arity + 1) if v not in hit)

    def section_of_surjection(self):
        """A section picking the first preimage of every target value."""
        if not self.is_surjective:
            raise StructureError("section requested of a non-surjection")
        firsts = []
        seen = set()
        for i, v in enumerate(self.values):
            if v not in seen:
                seen.add(v)
                firsts.append(i)
        return MonotoneMap(self.target_arity, self.source_arity, tuple(firsts))


@lru_cache(maxsize=None)
def identity(n):
    return MonotoneMap(n, n, tuple(range(n + 1)))


@lru_cache(maxsize=None)
def coface(i, n):
    """delta_i : [n-1] -> [n], the injection missing i."""
    if not 0 <= i <= n:
        raise StructureError("coface index out of range")
    return MonotoneMap(n - 1, n, tuple(v for v in range(n + 1) if v != i))


@lru_cache(maxsize=None)
def codegeneracy(i, n):
    """sigma_i : [n+1] -> [n], the surjection hitting i twice."""
    if not 0 <= i <= n:
        raise StructureError("codegeneracy index out of range")
    vals = list(range(i + 1)) + list(range(i, n + 1))
    return MonotoneMap(n + 1, n, tuple(vals))


@lru_cache(maxsize=None)
def vertex(i, n):
    """[0] -> [n] picking out i."""
    return MonotoneMap(0, n, (i,))


def constant(m, i, n):
    """The constant map [m] -> [n] at i."""
    return MonotoneMap(m, n, (i,) * (m + 1))


@lru_cache(maxsize=None)
def principal_edge(i, m):
    """[1] -> [m] sending 0, 1 to i, i+1."""
    return MonotoneMap(1, m, (i, i + 1))


def long_edge(m):
    """[1] -> [m] sending 0, 1 to 0, m."""
    return MonotoneMap(1, m, (0, m))


@lru_cache(maxsize=None)
def surjection_from_word(n, word):
    """The surjection [n] ->> [n - len(word)] whose repeat positions are
    exactly the strictly increasing tuple `word`."""
    word = tuple(word)
    if any(a >= b for a, b in zip(word, word[1:])):
        raise StructureError("degeneracy word not strictly increasing")
    if word and (word[0] < 0 or word[-1] >= n):
        raise StructureError("degeneracy word out of range")
    repeats = set(word)
    vals = [0]
    for i in range(n):
        vals.append(vals[-1] if i in repeats else vals[-1] + 1)
    return MonotoneMap(n, n - len(word), tuple(vals))


@lru_cache(maxsize=None)
def _compose(f, g):
    if g.target_arity != f.source_arity:
        raise StructureError("arity mismatch in composition")
    return MonotoneMap(g.source_arity, f.target_arity,
                       tuple(f.values[v] for v in g.values))


@lru_cache(maxsize=None)
def _epi_mono(f):
    image = sorted(set(f.values))
    q = len(image) - 1
    rank = {v: r for r, v in enumerate(image)}
    epi = MonotoneMap(f.source_arity, q, tuple(rank[v] for v in f.values))
    mono = MonotoneMap(q, f.target_arity, tuple(image))
    return epi, mono


@lru_cache(maxsize=None)
def all_maps(m, n):
    """All monotone maps [m] -> [n], lexicographically ordered."""
    return tuple(
        MonotoneMap(m, n, vals)
        for vals in itertools.combinations_with_replacement(range(n + 1), m + 1)
    )


@lru_cache(maxsize=None)
def surjections(n, p):
    """All surjections [n] ->> [p]."""
    return tuple(f for f in all_maps(n, p) if f.is_surjective)


@lru_cache(maxsize=None)
def injections(q, p):
    """All injections [q] -> [p]."""
    return tuple(f for f in all_maps(q, p) if f.is_injective)


@lru_cache(maxsize=None)
def off_vertex_maps(q, p):
    """Maps [q] -> [p] that do not factor through [0], i.e. non-constant
    maps.  These index the copies glued in by a level-p replacement."""
    return tuple(f for f in all_maps(q, p) if len(set(f.values)) > 1)


@lru_cache(maxsize=None)
def off_spine_maps(q, m):
    """Maps [q] -> [m] whose image lies in no principal edge {i, i+1}.
    These index the copies glued in by a Segal-level replacement."""
    kept = []
    for f in all_maps(q, m):
        img = set(f.values)
        if not any(img <= {i, i + 1} for i in range(m)):
            kept.append(f)
    return tuple(kept)


def spine_factorization(f, m):
    """For f : [q] -> [m] with image inside some {i, i+1}, return (i, tau)
    with f = principal_edge(i, m) o tau and i minimal."""
    img = set(f.values)
    for i in range(m):
        if img <= {i, i + 1}:
            tau = MonotoneMap(f.source_arity, 1,
                              tuple(v - i for v in f.values))
            return i, tau
    raise StructureError("map does not factor through a principal edge")
