"""Edge-path presentations of the fundamental group and a bounded
Tietze simplifier (sound, incomplete)."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import StructureError
from .sset import pi0


@dataclass(frozen=True)
class GroupPresentation:
    """Generators indexed 1..generator_count; relators are words over
    nonzero integers, negative meaning inverse."""

    generator_count: int
    relators: tuple

    def __post_init__(self):
        for rel in self.relators:
            for letter in rel:
                if letter == 0 or abs(letter) > self.generator_count:
                    raise StructureError("relator letter out of range")

    @property
    def is_empty(self):
        return self.generator_count == 0 and not self.relators

    def __repr__(self):
        return "GroupPresentation(gens=%d, relators=%s)" % (
            self.generator_count, [list(r) for r in self.relators])


def trivial_presentation():
    return GroupPresentation(0, ())


def pi1_presentation(X, basepoint=None):
    """Edge-path presentation from a spanning tree of the 1-skeleton,
    one relator per non-degenerate 2-cell.  Requires a connected input."""
    comps = pi0(X)
    if len(comps) != 1:
        raise StructureError("fundamental group requires a connected input")
    vertices = X.gens_of_dim(0)
    if basepoint is None:
        basepoint = vertices[0]
    if basepoint not in X.gens or X.gens[basepoint] != 0:
        raise StructureError("basepoint must be a vertex generator")

    edges = X.gens_of_dim(1)
    # spanning tree by breadth-first search, deterministic order
    tree = set()
    reached = {basepoint}
    frontier = [basepoint]
    while frontier:
        nxt = []
        for e in edges:
            if e in tree:
                continue
            a = X.face(e, 1).gen  # source
            b = X.face(e, 0).gen  # target
            if a in reached and b not in reached:
                tree.add(e)
                reached.add(b)
                nxt.append(b)
            elif b in reached and a not in reached:
                tree.add(e)
                reached.add(a)
                nxt.append(a)
        if not nxt:
            break
        frontier = nxt

    letters = {}
    for e in edges:
        if e not in tree:
            letters[e] = len(letters) + 1

    def letter_of(el):
        # degenerate edges and tree edges contribute nothing
        if el.word or el.gen in tree:
            return None
        return letters[el.gen]

    relators = []
    for t in X.gens_of_dim(2):
        word = []
        for el, sign in ((X.face(t, 2), 1), (X.face(t, 0), 1),
                         (X.face(t, 1), -1)):
            l = letter_of(el)
            if l is not None:
                word.append(sign * l)
        if word:
            relators.append(tuple(word))
    return GroupPresentation(len(letters), tuple(sorted(set(relators))))


def _free_reduce(word):
    out = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    # cyclic reduction
    while len(out) >= 2 and out[0] == -out[-1]:
        out = out[1:-1]
    return tuple(out)


def _substitute(word, gen, repl):
    """Replace every occurrence of gen by the word repl."""
    out = []
    for letter in word:
        if letter == gen:
            out.extend(repl)
        elif letter == -gen:
            out.extend(-x for x in reversed(repl))
        else:
            out.append(letter)
    return tuple(out)


def _drop_generator(presentation, gen, repl):
    """Rewrite gen -> repl everywhere, delete gen and renumber."""
    n = presentation.generator_count
    rels = []
    for rel in presentation.relators:
        rels.append(_free_reduce(_substitute(rel, gen, repl)))

    def renum(letter):
        a = abs(letter)
        shift = a - 1 if a > gen else a
        return shift if letter > 0 else -shift

    new_rels = []
    for rel in rels:
        if any(abs(x) == gen for x in rel):
            raise StructureError("generator survived substitution")
        w = tuple(renum(x) for x in rel)
        if w:
            new_rels.append(w)
    return GroupPresentation(n - 1, tuple(sorted(set(new_rels))))


def simplify(presentation, budget=10000):
    """Bounded Tietze simplification: free/cyclic reduction, removal of
    trivial relators and of generators defined by short relators."""
    p = GroupPresentation(
        presentation.generator_count,
        tuple(sorted({w for w in (_free_reduce(r) for r in presentation.relators)
                      if w})))
    steps = 0
    while steps < budget:
        steps += 1
        # a length-1 relator kills its generator
        hit = None
        for rel in p.relators:
            if len(rel) == 1:
                hit = (abs(rel[0]), ())
                break
            if len(rel) == 2:
                a, b = rel
                if abs(a) != abs(b):
                    # a = b^-1 as group elements
                    hit = (abs(a), (_inv_letter(a, b),))
                    break
                if a == b:
                    # order-2 information only; not a Tietze elimination
                    continue
        if hit is None:
            # a generator occurring exactly once in exactly one relator
            occurrences = {}
            for k, rel in enumerate(p.relators):
                for letter in rel:
                    occurrences.setdefault(abs(letter), []).append(k)
            for g in range(1, p.generator_count + 1):
                occ = occurrences.get(g, [])
                if len(occ) == 1:
                    rel = p.relators[occ[0]]
                    if sum(1 for x in rel if abs(x) == g) == 1:
                        # solve rel = 1 for g
                        i = next(i for i, x in enumerate(rel) if abs(x) == g)
                        rest = rel[i + 1:] + rel[:i]
                        repl = tuple(-x for x in reversed(rest))
                        if rel[i] < 0:
                            repl = tuple(-x for x in reversed(repl))
                        hit = (g, repl)
                        break
        if hit is None:
            break
        g, repl = hit
        p = _drop_generator(p, g, repl)
        p = GroupPresentation(
            p.generator_count,
            tuple(sorted({w for w in (_free_reduce(r) for r in p.relators)
                          if w})))
        if p.generator_count == 0:
            break
    return p


def _inv_letter(a, b):
    """Given the relator (a, b), the replacement word for |a| is b^-1 when
    a > 0 and b when a < 0."""
    return -b if a > 0 else b


def is_trivially_simplifiable(presentation, budget=10000):
    """True only when bounded simplification reaches the empty
    presentation; sound but incomplete triviality test."""
    p = simplify(presentation, budget)
    return p.generator_count == 0 and not p.relators
