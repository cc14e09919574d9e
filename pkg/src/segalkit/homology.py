"""Integral homology of the normalized chain complex on non-degenerate
cells, via Smith normal form over exact integers."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import StructureError


@dataclass(frozen=True)
class HomologyProfile:
    """Per-degree (free rank, invariant factors >= 2)."""

    groups: tuple

    def __repr__(self):
        def fmt(fr, tors):
            parts = []
            if fr == 1:
                parts.append("Z")
            elif fr > 1:
                parts.append("Z^%d" % fr)
            parts.extend("Z/%d" % t for t in tors)
            return "+".join(parts) if parts else "0"
        return "H[" + ", ".join(fmt(*g) for g in self.groups) + "]"

    def free_rank(self, n):
        if 0 <= n < len(self.groups):
            return self.groups[n][0]
        return 0

    def torsion(self, n):
        if 0 <= n < len(self.groups):
            return self.groups[n][1]
        return ()

    def is_zero_above(self, n):
        return all(fr == 0 and not tors
                   for fr, tors in self.groups[n + 1:])

    def truncate(self, n):
        gs = list(self.groups[:n + 1])
        while len(gs) < n + 1:
            gs.append((0, ()))
        return HomologyProfile(tuple(gs))


def point_profile(max_degree=0):
    return HomologyProfile(((1, ()),) + ((0, ()),) * max_degree)


def sphere_profile(k, max_degree=None):
    """Homology of the k-sphere, padded with zeros up to max_degree."""
    top = max_degree if max_degree is not None else k
    gs = [(0, ())] * (top + 1)
    gs[0] = (1, ())
    if k == 0:
        gs[0] = (2, ())
    else:
        gs[k] = (1, ())
    return HomologyProfile(tuple(gs))


def smith_diagonal(mat, pivot="min"):
    """Invariant factors of an integer matrix (list of rows), with a
    choice of pivot strategy so independent recomputations are possible."""
    m = [row[:] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag = []
    r = 0
    c = 0
    while r < rows and c < cols:
        # locate a pivot
        best = None
        for i in range(r, rows):
            for j in range(c, cols):
                v = m[i][j]
                if v != 0:
                    if pivot == "min":
                        if best is None or abs(v) < abs(m[best[0]][best[1]]):
                            best = (i, j)
                    else:
                        if best is None:
                            best = (i, j)
        if best is None:
            break
        bi, bj = best
        m[r], m[bi] = m[bi], m[r]
        for row in m:
            row[c], row[bj] = row[bj], row[c]
        # clear the pivot row and column
        while True:
            again = False
            for i in range(r + 1, rows):
                if m[i][c] == 0:
                    continue
                q = m[i][c] // m[r][c]
                for j in range(c, cols):
                    m[i][j] -= q * m[r][j]
                if m[i][c] != 0:
                    m[r], m[i] = m[i], m[r]
                    again = True
            for j in range(c + 1, cols):
                if m[r][j] == 0:
                    continue
                q = m[r][j] // m[r][c]
                for i in range(r, rows):
                    m[i][j] -= q * m[i][c]
                if m[r][j] != 0:
                    for i in range(r, rows):
                        m[i][c], m[i][j] = m[i][j], m[i][c]
                    again = True
            if not again:
                break
        diag.append(abs(m[r][c]))
        r += 1
        c += 1
    # enforce the divisibility chain
    diag = [d for d in diag if d != 0]
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if b % a != 0:
                g = _gcd(a, b)
                l = a // g * b
                diag[i], diag[i + 1] = g, l
                changed = True
    return diag


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


class ChainComplex:
    """Free chain complex over the integers.

    dims[n] is the rank of C_n; boundaries[n] is the matrix of
    d : C_n -> C_{n-1} with dims[n-1] rows and dims[n] columns.
    """

    def __init__(self, dims, boundaries, check=True):
        self.dims = list(dims)
        self.boundaries = dict(boundaries)
        if check:
            self._check()

    def _check(self):
        for n, mat in self.boundaries.items():
            rows = self.dims[n - 1] if n - 1 < len(self.dims) else 0
            cols = self.dims[n] if n < len(self.dims) else 0
            if len(mat) != rows or (rows and any(len(r) != cols for r in mat)):
                raise StructureError("boundary matrix shape mismatch at %d" % n)
        for n in self.boundaries:
            if n - 1 in self.boundaries or (n + 1) in self.boundaries:
                pass
        for n in sorted(self.boundaries):
            if n + 1 in self.boundaries:
                prod = _mat_mul(self.boundaries[n], self.boundaries[n + 1])
                if any(any(v != 0 for v in row) for row in prod):
                    raise StructureError("d o d != 0 at degree %d" % (n + 1))

    def top_degree(self):
        return len(self.dims) - 1

    def homology(self, max_degree=None, pivot="min"):
        top = self.top_degree() if max_degree is None else max_degree
        groups = []
        for n in range(top + 1):
            cn = self.dims[n] if n < len(self.dims) else 0
            din = self.boundaries.get(n)
            dout = self.boundaries.get(n + 1)
            rank_in = len(smith_diagonal(din, pivot)) if din and cn else 0
            facs_out = smith_diagonal(dout, pivot) if dout else []
            rank_out = len(facs_out)
            free = cn - rank_in - rank_out
            torsion = tuple(d for d in facs_out if d >= 2)
            groups.append((free, torsion))
        return HomologyProfile(tuple(groups))


def _mat_mul(a, b):
    if not a or not b:
        return []
    rows = len(a)
    mid = len(b)
    cols = len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(mid):
            v = a[i][k]
            if v:
                for j in range(cols):
                    out[i][j] += v * b[k][j]
    return out


def chain_complex_of(X, max_degree=None):
    """Normalized chains: one basis element per non-degenerate cell;
    degenerate faces contribute zero."""
    top = X.dim if max_degree is None else min(X.dim, max_degree)
    top = max(top, 0)
    bases = {n: X.gens_of_dim(n) for n in range(top + 1)}
    index = {n: {g: k for k, g in enumerate(bases[n])} for n in bases}
    dims = [len(bases[n]) for n in range(top + 1)]
    boundaries = {}
    for n in range(1, top + 1):
        mat = [[0] * dims[n] for _ in range(dims[n - 1])]
        for j, g in enumerate(bases[n]):
            for i in range(n + 1):
                el = X.face(g, i)
                if el.word:
                    continue
                mat[index[n - 1][el.gen]][j] += (-1) ** i
        boundaries[n] = mat
    return ChainComplex(dims, boundaries, check=False)


def homology(X, max_degree=None, pivot="min"):
    """Integral homology profile of a finite simplicial set."""
    if X.is_empty:
        top = max_degree if max_degree is not None else 0
        return HomologyProfile(((0, ()),) * (top + 1))
    cx = chain_complex_of(X)
    prof = cx.homology(pivot=pivot)
    if max_degree is not None:
        prof = prof.truncate(max_degree)
    return prof


def chain_map_of(f, max_degree=None):
    """Matrices of the induced map on normalized chains; cells sent to
    degenerate elements map to zero."""
    X, Y = f.source, f.target
    top = max(X.dim, Y.dim, 0) if max_degree is None else max_degree
    mats = {}
    for n in range(top + 1):
        xb = X.gens_of_dim(n)
        yb = Y.gens_of_dim(n)
        yindex = {g: k for k, g in enumerate(yb)}
        mat = [[0] * len(xb) for _ in range(len(yb))]
        for j, g in enumerate(xb):
            img = f.assign[g]
            if not img.word:
                mat[yindex[img.gen]][j] = 1
        mats[n] = mat
    return mats


def mapping_cone(f):
    """Cone of the induced chain map; acyclic iff f is a homology
    isomorphism in every degree."""
    X, Y = f.source, f.target
    top = max(X.dim + 1, Y.dim, 0)
    cX = chain_complex_of(X)
    cY = chain_complex_of(Y)
    fm = chain_map_of(f, top)

    def xdim(n):
        return cX.dims[n] if 0 <= n < len(cX.dims) else 0

    def ydim(n):
        return cY.dims[n] if 0 <= n < len(cY.dims) else 0

    dims = [xdim(n - 1) + ydim(n) for n in range(top + 1)]
    boundaries = {}
    for n in range(1, top + 1):
        rows = dims[n - 1]
        cols = dims[n]
        mat = [[0] * cols for _ in range(rows)]
        dx = cX.boundaries.get(n - 1)
        dy = cY.boundaries.get(n)
        # block (-d_X) on the X part
        if dx:
            for i in range(len(dx)):
                for j in range(len(dx[0])):
                    mat[i][j] = -dx[i][j]
        # block f# from X_{n-1} into Y_{n-1}
        fmat = fm.get(n - 1, [])
        for i in range(len(fmat)):
            for j in range(len(fmat[0]) if fmat else 0):
                mat[xdim(n - 2) + i][j] = fmat[i][j]
        # block d_Y on the Y part
        if dy:
            for i in range(len(dy)):
                for j in range(len(dy[0])):
                    mat[xdim(n - 2) + i][xdim(n - 1) + j] = dy[i][j]
        boundaries[n] = mat
    return ChainComplex(dims, boundaries, check=False)


def cone_is_acyclic(f, pivot="min"):
    cone = mapping_cone(f)
    prof = cone.homology(pivot=pivot)
    return all(fr == 0 and not tors for fr, tors in prof.groups)
