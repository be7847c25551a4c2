"""Degree slices of Koszul complexes over the character lattice.

For a polynomial ``W`` over ``x_0..x_n`` and a set ``V`` of variables, the
Koszul complex ``C(dW)`` restricted to ``V`` has in position ``-k`` the
elements ``x_I^v (x) m`` with ``I`` a ``k``-subset of ``V`` and ``m`` a
monomial in ``V``.  The differential is contraction with ``dW``::

    x_I^v (x) m  ->  sum_j (-1)^j  x_{I - i_j}^v (x) (d W / d x_{i_j}) m

Internal degrees: ``x_i^v`` carries ``chi - chi_i`` (the twist making the
contraction homogeneous of degree 0), so ``x_I^v (x) m`` has degree
``deg m - sum_I chi_i + k chi``.  This is the convention pinned down by the
calibration check :func:`calibrate`.

When ``W`` does not involve ``x_0`` the differential preserves both the
``x_0``-exponent of ``m`` and whether ``0`` lies in ``I``; the integer
``e_0(m) - [0 in I]`` is the ``x_0``-weight used in the Hochschild tables.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import exact
from .symmetry import CharacterLattice, Class
from .wpoly import WeightedPolynomial


class DegreeConventionUnvalidated(RuntimeError):
    pass


class KoszulError(RuntimeError):
    pass


Basis = List[Tuple[Tuple[int, ...], Tuple[int, ...]]]

_calibration_lock = threading.Lock()
_calibrated = False


def enumerate_monomials(L: CharacterLattice, vars_: Sequence[int], rho: Class) -> List[Tuple[int, ...]]:
    """Monomials in the given variables of class ``rho`` (graded-lex order)."""
    return list(L.monomials(vars_, rho))


class KoszulSlices:
    """Koszul complex of ``W`` restricted to the variables ``V``, one degree at a time."""

    def __init__(self, L: CharacterLattice, W: WeightedPolynomial, V: Sequence[int],
                 check: bool = True):
        self.L = L
        self.V = tuple(sorted(V))
        self.W = W.restrict(self.V)
        self.derivs = {i: self.W.derivative(i) for i in self.V}
        self.x0_free = not self.W.involves(0)
        self.check = check
        self._rank_cache: Dict[Tuple[int, Class], Dict[Optional[int], int]] = {}
        self._basis_cache: Dict[Tuple[int, Class], Basis] = {}

    # -- bases -------------------------------------------------------------
    def basis(self, k: int, D: Class) -> Basis:
        key = (k, D)
        b = self._basis_cache.get(key)
        if b is not None:
            return b
        L = self.L
        out: Basis = []
        if 0 <= k <= len(self.V):
            base = L.sub_(D, L.scale(L.chi, k))
            for I in combinations(self.V, k):
                target = L.add(base, L.sum_(L.var_classes[i] for i in I))
                for m in L.monomials(self.V, target):
                    out.append((I, m))
        self._basis_cache[key] = out
        return out

    def weight(self, I: Tuple[int, ...], m: Tuple[int, ...]) -> int:
        return m[0] - (1 if 0 in I else 0)

    # -- differential ------------------------------------------------------
    def image(self, I: Tuple[int, ...], m: Tuple[int, ...]) -> Dict[Tuple, Fraction]:
        """Contraction of ``x_I^v (x) m`` as a sparse vector keyed by (J, monomial)."""
        out: Dict[Tuple, Fraction] = {}
        for j, i in enumerate(I):
            der = self.derivs[i]
            if not der:
                continue
            J = I[:j] + I[j + 1:]
            sign = -1 if j % 2 else 1
            for e, c in der.items():
                key = (J, tuple(a + b for a, b in zip(e, m)))
                v = out.get(key, 0) + sign * c
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    def differential_columns(self, k: int, D: Class) -> List[Dict[int, Fraction]]:
        """Columns of d: C_{-k} -> C_{-k+1} in the degree-D slice, indexed by basis position."""
        target = self.basis(k - 1, D)
        index = {b: i for i, b in enumerate(target)}
        cols = []
        for I, m in self.basis(k, D):
            img = self.image(I, m)
            col = {}
            for key, v in img.items():
                pos = index.get(key)
                if pos is None:
                    raise KoszulError(f"contraction left the degree slice: {key}")
                col[pos] = v
            cols.append(col)
        return cols

    def check_dd(self, k: int, D: Class) -> None:
        """Assert that d o d vanishes from position -k (k >= 2)."""
        for I, m in self.basis(k, D):
            acc: Dict[Tuple, Fraction] = {}
            for (J, mm), c in self.image(I, m).items():
                for key, v in self.image(J, mm).items():
                    s = acc.get(key, 0) + c * v
                    if s:
                        acc[key] = s
                    else:
                        acc.pop(key, None)
            if acc:
                raise KoszulError(f"d o d != 0 on {I}, {m}")

    # -- ranks ---------------------------------------------------------------
    def rank(self, k: int, D: Class) -> Dict[Optional[int], int]:
        """Rank of d out of position -k, split by x_0-weight when possible."""
        key = (k, D)
        r = self._rank_cache.get(key)
        if r is not None:
            return r
        r = {}
        if 1 <= k <= len(self.V) and D[0] >= 0:
            basis = self.basis(k, D)
            cols = self.differential_columns(k, D)
            if self.check and k >= 2:
                self.check_dd(k, D)
            if self.x0_free:
                groups: Dict[int, List[Dict[int, Fraction]]] = {}
                for (I, m), col in zip(basis, cols):
                    groups.setdefault(self.weight(I, m), []).append(col)
                for wt, cs in groups.items():
                    rk = exact.sparse_rank(cs)
                    if rk:
                        r[wt] = rk
            else:
                rk = exact.sparse_rank(cols)
                if rk:
                    r[None] = rk
        self._rank_cache[key] = r
        return r

    def dims(self, k: int, D: Class) -> Dict[Optional[int], int]:
        out: Dict[Optional[int], int] = {}
        for I, m in self.basis(k, D):
            wt = self.weight(I, m) if self.x0_free else None
            out[wt] = out.get(wt, 0) + 1
        return out

    def cohomology(self, k: int, D: Class) -> Dict[Optional[int], int]:
        """dim H^{-k} in degree D, as {x_0-weight: dim} (key None if untracked)."""
        if k < 0 or k > len(self.V) or D[0] < 0:
            return {}
        out = dict(self.dims(k, D))
        for part in (self.rank(k, D), self.rank(k + 1, D)):
            for wt, rk in part.items():
                out[wt] = out.get(wt, 0) - rk
        for wt, v in out.items():
            if v < 0:
                raise KoszulError("negative cohomology dimension")
        return {wt: v for wt, v in out.items() if v}


def koszul_cohomology_dim(L: CharacterLattice, W: WeightedPolynomial, V: Sequence[int], k: int,
                          rho: Class, strict: bool = False) -> Dict[Optional[int], int]:
    """dim H^{-k}(dW restricted to V) in degree rho, refined by x_0-weight."""
    require_calibration(strict)
    return KoszulSlices(L, W, V).cohomology(k, rho)


def koszul_euler_char(L: CharacterLattice, V: Sequence[int], rho: Class) -> int:
    """Coefficient of rho in prod_{i in V} (1 - [chi - chi_i]) / (1 - [chi_i]).

    Computed by series multiplication over lattice classes, independently of
    the monomial bases used for the ranks.
    """
    zmax = rho[0]
    if zmax < 0:
        return 0
    series: Dict[Class, int] = {L.zero: 1}
    for i in V:
        ci = L.var_classes[i]
        if ci[0] <= 0:
            raise KoszulError("variable weights must be positive")
        geo: Dict[Class, int] = {}
        for c, v in series.items():
            cur = c
            while cur[0] <= zmax:
                geo[cur] = geo.get(cur, 0) + v
                cur = L.add(cur, ci)
        shift = L.sub_(L.chi, ci)
        nxt = dict(geo)
        for c, v in geo.items():
            s = L.add(c, shift)
            if s[0] <= zmax:
                nxt[s] = nxt.get(s, 0) - v
        series = {c: v for c, v in nxt.items() if v}
    return series.get(tuple(rho), 0)


# ---------------------------------------------------------------------------
# calibration
# ---------------------------------------------------------------------------

def calibration_check() -> Tuple[bool, Dict[Optional[int], int]]:
    """The Fermat quartic-curve slice: identity sector, k = 0, degree chi.

    It must have dimension 2 with x_0-weights {4, 1} (the classes x_0^4 and
    x_0 x_1 x_2 x_3).
    """
    from .catalog import fermat

    case = fermat(3)
    L = CharacterLattice(case.w, case.sub)
    got = KoszulSlices(L, case.W, range(case.W.n)).cohomology(0, L.chi)
    return got == {4: 1, 1: 1}, got


def calibrate() -> None:
    global _calibrated
    with _calibration_lock:
        if _calibrated:
            return
        ok, got = calibration_check()
        if not ok:
            raise DegreeConventionUnvalidated(f"calibration slice gave {got}, expected {{4: 1, 1: 1}}")
        _calibrated = True


def is_calibrated() -> bool:
    return _calibrated


def require_calibration(strict: bool) -> None:
    """Strict mode refuses to run before :func:`calibrate`; otherwise calibrate lazily."""
    if _calibrated:
        return
    if strict:
        raise DegreeConventionUnvalidated("run koszul.calibrate() first")
    calibrate()


def _reset_calibration() -> None:
    global _calibrated
    with _calibration_lock:
        _calibrated = False
