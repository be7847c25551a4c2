"""Exact integer and rational linear algebra.

Everything here works on plain nested lists of ``int`` / ``Fraction`` so that
no floating point value ever enters a computation.  Two kinds of routines are
provided:

* dense routines (:func:`snf`, :func:`rank`, :func:`kernel_basis`,
  :func:`det`) for the small matrices that describe lattices and weights;
* a sparse incremental echelon form (:class:`SparseEchelon`) used for the
  large but very sparse differentials of Koszul and Hochschild complexes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Hashable, Iterable, List, Mapping, Sequence

IntMatrix = List[List[int]]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(a))]


def transpose(m: Sequence[Sequence], cols: int | None = None) -> list:
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def det(m: Sequence[Sequence]) -> Fraction:
    """Determinant over Q by Gaussian elimination."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    result = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            result = -result
        result *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return result


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SNFResult:
    """``U * M * V == D`` with ``D`` diagonal, ``d_1 | d_2 | ...``, all ``d_i >= 0``."""

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> List[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def snf(m: Sequence[Sequence[int]], cols: int | None = None) -> SNFResult:
    """Smith normal form with unimodular transforms.

    ``cols`` only matters for a matrix with no rows.
    """
    rows = len(m)
    ncols = len(m[0]) if rows else (cols or 0)
    a = [[int(x) for x in row] for row in m]
    U = identity(rows)
    V = identity(ncols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row[dst] += q * row[src]
        if q:
            ra, rs = a[dst], a[src]
            for j in range(ncols):
                ra[j] += q * rs[j]
            ua, us = U[dst], U[src]
            for j in range(rows):
                ua[j] += q * us[j]

    def add_col(src, dst, q):  # col[dst] += q * col[src]
        if q:
            for row in a:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    t = 0
    while t < min(rows, ncols):
        # smallest nonzero entry of the remaining block becomes the pivot
        best = None
        for i in range(t, rows):
            for j in range(t, ncols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # enforce divisibility on the remaining block
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, ncols):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return SNFResult(D=a, U=U, V=V)


# ---------------------------------------------------------------------------
# Dense rational routines
# ---------------------------------------------------------------------------

def _integer_rows(m: Sequence[Sequence]) -> IntMatrix:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in m:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def rank(m: Sequence[Sequence]) -> int:
    """Rank over Q using fraction-free (Bareiss) elimination."""
    if not m:
        return 0
    a = _integer_rows(m)
    rows, cols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c, cols):
                row_i[j] = (row_i[j] * p - f * row_r[j]) // prev
        prev = p
        r += 1
        if r == rows:
            break
    return r


def rref(m: Sequence[Sequence]) -> tuple[list, list]:
    """Reduced row echelon form over Q; returns ``(rows, pivot_columns)``."""
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def kernel_basis(m: Sequence[Sequence], cols: int | None = None) -> List[List[Fraction]]:
    """Basis of the right null space ``{v : M v = 0}`` over Q."""
    ncols = len(m[0]) if m else (cols or 0)
    reduced, pivots = rref(m) if m else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def integer_kernel(m: Sequence[Sequence[int]], cols: int) -> IntMatrix:
    """Z-basis (as rows) of ``{v in Z^cols : M v = 0}``."""
    if not m:
        return identity(cols)
    res = snf(m)
    r = res.rank
    return [[res.V[i][j] for i in range(cols)] for j in range(r, cols)]


def primitive(v: Sequence[int]) -> List[int]:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return [int(x) // g for x in v] if g else [int(x) for x in v]


# ---------------------------------------------------------------------------
# Sparse incremental elimination
# ---------------------------------------------------------------------------

class SparseEchelon:
    """Incrementally built echelon basis of a span of sparse vectors.

    Vectors are mappings ``column -> coefficient`` with hashable, orderable
    column keys.  Each stored pivot row is normalized so that its leading
    coefficient (at its smallest column) is 1.
    """

    def __init__(self) -> None:
        self.pivots: Dict[Hashable, Dict[Hashable, Fraction]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Mapping) -> Dict:
        r = {k: Fraction(v) for k, v in vec.items() if v}
        pivots = self.pivots
        while r:
            lead = min(r)
            p = pivots.get(lead)
            if p is None:
                return r
            c = r[lead]
            for k, v in p.items():
                nv = r.get(k, 0) - c * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return r

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        lead = min(r)
        inv = 1 / r[lead]
        self.pivots[lead] = {k: v * inv for k, v in r.items()}
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)


def sparse_rank(vectors: Iterable[Mapping]) -> int:
    """Rank of a family of sparse vectors (rows or columns alike)."""
    ech = SparseEchelon()
    for v in vectors:
        ech.add(v)
    return len(ech)
