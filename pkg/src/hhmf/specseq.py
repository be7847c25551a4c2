"""E1 pages of the divisor spectral sequence for symplectic cohomology.

The input is a normal-crossing compactification divisor ``D = union D_i``
described combinatorially: an ampleness weight ``kappa_i > 0`` and a
discrepancy ``c_i`` per component, plus the Betti numbers of the punctured
normal neighbourhoods ``N°D_J`` of every nonempty stratum (``J = {}`` stands
for the affine variety itself).  The page is

    E1^{p,q} = sum over k in Z_{>=0}^I with sum k_i kappa_i = -p of
               H^{p + q - 2 sum k_i (c_i + 1)}(N°D_{supp k})

Nothing here computes differentials.  :func:`degree_bounds` only uses the
positions of nonzero cells, so its lower bounds are conservative.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple


class SpecSeqError(ValueError):
    pass


class MissingStratum(SpecSeqError):
    pass


class InsufficientColumns(SpecSeqError):
    pass


def stratum_key(J: Sequence[str]) -> str:
    return ",".join(J)


@dataclass
class StrataData:
    I: List[str]
    kappa: List[int]
    c: List[int]
    betti: Dict[str, Optional[List[int]]]  # stratum key -> Betti list; None/[] means empty stratum

    def __post_init__(self):
        if not (len(self.I) == len(self.kappa) == len(self.c)):
            raise SpecSeqError("I, kappa and c must have the same length")
        if len(set(self.I)) != len(self.I):
            raise SpecSeqError("repeated divisor name")
        for k in self.kappa:
            if int(k) != k or k <= 0:
                raise SpecSeqError(f"kappa must be positive integers, got {self.kappa}")
        for v in self.betti.values():
            if v is not None and any(int(b) != b or b < 0 for b in v):
                raise SpecSeqError("Betti numbers must be nonnegative integers")

    def stratum(self, J: Sequence[str]) -> List[int]:
        key = stratum_key(J)
        if key not in self.betti:
            raise MissingStratum(f"no Betti data for stratum {{{key}}}")
        return list(self.betti[key] or [])

    def to_json(self) -> dict:
        return {"I": list(self.I), "kappa": list(self.kappa), "c": list(self.c),
                "betti": {k: (list(v) if v is not None else None) for k, v in sorted(self.betti.items())}}

    @classmethod
    def from_json(cls, data: Mapping) -> "StrataData":
        try:
            betti = {str(k): (None if v is None else [int(b) for b in v]) for k, v in data["betti"].items()}
            return cls([str(x) for x in data["I"]], [int(k) for k in data["kappa"]],
                       [int(c) for c in data["c"]], betti)
        except (KeyError, TypeError, AttributeError) as exc:
            raise SpecSeqError(f"bad strata data: {exc!r}") from exc


@dataclass
class E1Page:
    p_min: int
    grid: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def cell(self, p: int, q: int) -> int:
        return self.grid.get((p, q), 0)

    def degree_total(self, n: int) -> int:
        return sum(v for (p, q), v in self.grid.items() if p + q == n)

    @property
    def degree_totals(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for (p, q), v in self.grid.items():
            out[p + q] = out.get(p + q, 0) + v
        return dict(sorted(out.items()))

    def column(self, p: int) -> Dict[int, int]:
        return {q: v for (pp, q), v in sorted(self.grid.items()) if pp == p}

    def render(self, q_max: Optional[int] = None) -> str:
        """Columns p = p_min..0 left to right, rows q from the top down."""
        if q_max is None:
            q_max = max([q for _, q in self.grid] + [0])
        cols = list(range(self.p_min, 1))
        width = max([len(self._cell_str(v)) for v in self.grid.values()] + [3]) + 1
        lines = []
        for q in range(q_max, -1, -1):
            cells = "".join(self._cell_str(self.cell(p, q)).rjust(width) for p in cols)
            lines.append(f"{q:>3} |{cells}")
        lines.append("    +" + "-" * (width * len(cols)))
        lines.append("     " + "".join(str(p).rjust(width) for p in cols))
        return "\n".join(lines)

    @staticmethod
    def _cell_str(v: int) -> str:
        if v == 0:
            return "0"
        return "C" if v == 1 else f"C^{v}"

    def to_json(self) -> dict:
        return {"p_min": self.p_min,
                "cells": [{"p": p, "q": q, "dim": v} for (p, q), v in sorted(self.grid.items())],
                "degree_totals": {str(n): v for n, v in self.degree_totals.items()}}


def _multiplicities(kappa: Sequence[int], total: int) -> List[Tuple[int, ...]]:
    """All k in Z_{>=0}^I with sum k_i kappa_i = total."""
    out: List[Tuple[int, ...]] = []

    def rec(i, rest, acc):
        if i == len(kappa):
            if rest == 0:
                out.append(tuple(acc))
            return
        for k in range(rest // kappa[i] + 1):
            rec(i + 1, rest - k * kappa[i], acc + [k])

    rec(0, total, [])
    return out


def e1_page(strata: StrataData, p_min: int) -> E1Page:
    if p_min > 0:
        raise SpecSeqError("p_min must be <= 0")
    page = E1Page(p_min)
    for p in range(p_min, 1):
        for k in _multiplicities(strata.kappa, -p):
            J = [name for name, ki in zip(strata.I, k) if ki]
            betti = strata.stratum(J)
            shift = 2 * sum(ki * (ci + 1) for ki, ci in zip(k, strata.c))
            for j, b in enumerate(betti):
                if b:
                    q = j - p + shift
                    page.grid[(p, q)] = page.grid.get((p, q), 0) + b
    return page


@dataclass
class DegreeBound:
    degree: int
    lower: int
    upper: int

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def to_json(self) -> dict:
        return {"degree": self.degree, "lower": self.lower, "upper": self.upper, "exact": self.exact}


def _check_columns(strata: Optional[StrataData], page: E1Page, n_max: int) -> None:
    # column p carries total degree >= 2 |p| (c+1) / kappa_max; degrees up to
    # n_max + 1 are complete once the first missing column starts above that
    if strata is None:
        return
    if strata.I and any(c < 0 for c in strata.c):
        raise InsufficientColumns("negative discrepancies: columns are not bounded below in degree")
    if not strata.I:
        return
    if 2 * (abs(page.p_min) + 1) <= (n_max + 1) * max(strata.kappa):
        need = -((n_max + 1) * max(strata.kappa) // 2)
        raise InsufficientColumns(f"p_min = {page.p_min} too large for degree {n_max}; use p_min <= {need}")


def degree_bounds(page: E1Page, n_max: int, strata: Optional[StrataData] = None) -> List[DegreeBound]:
    """Per-degree [lower, upper] for SH^n, n = 0..n_max.

    upper is the E1 total.  A cell can lose at most the rank of every
    differential ``d_r: (p, q) -> (p + r, q - r + 1)`` touching it, each
    bounded by the smaller of its ends; the sum of those over the cells of
    degree n is subtracted for the lower bound.
    """
    _check_columns(strata, page, n_max)
    grid = page.grid
    out = []
    for n in range(n_max + 1):
        upper = page.degree_total(n)
        loss_total = 0
        for (p, q), v in sorted(grid.items()):
            if p + q != n:
                continue
            loss = 0
            for (pp, qq), w in grid.items():
                # outgoing: target at (p + r, q - r + 1)
                r = pp - p
                if r >= 1 and qq == q - r + 1:
                    loss += min(v, w)
                # incoming: source at (p - r, q + r - 1)
                r = p - pp
                if r >= 1 and qq == q + r - 1:
                    loss += min(v, w)
            loss_total += min(v, loss)
        out.append(DegreeBound(n, upper - loss_total, upper))
    return out


# ---------------------------------------------------------------------------
# built-in strata
# ---------------------------------------------------------------------------

def _smooth_divisor_strata(n: int, mu: int, middle: int) -> StrataData:
    aff = [0] * n
    aff[0] += 1
    aff[n - 1] += mu
    top = 2 * n - 3
    nd = [0] * (top + 1)
    nd[0] += 1
    nd[n - 2] += middle
    nd[n - 1] += middle
    nd[top] += 1
    return StrataData(["D"], [1], [0], {"": aff, "D": nd})


def divisor_middle_betti(n: int, chi: int) -> int:
    """b_{n-2} of a degree hypersurface in projective (n-1)-space from its Euler characteristic."""
    return (-1) ** n * (chi - 2 * ((n - 1) // 2))


def fermat_divisor_euler(n: int) -> int:
    num = (-1) ** n * n ** n + n * (n + 1) - 1
    assert num % (n + 1) == 0
    return num // (n + 1)


def doublecover_divisor_euler(n: int) -> int:
    num = (-1) ** n * (2 * n - 1) ** (n - 1) + 2 * n * (n - 1) + 1
    assert num % (2 * n) == 0
    return num // (2 * n)


def _circle_bundle_middle(n: int, chi: int) -> int:
    # the Euler class kills one even-degree class in the middle when n is even
    return divisor_middle_betti(n, chi) - (1 if n % 2 == 0 else 0)


def fermat_strata(n: int) -> StrataData:
    """Divisor at infinity of x_1^{n+1} + ... + x_n^{n+1} = -1, kappa = 1, c = 0."""
    if n < 2:
        raise SpecSeqError("n >= 2 required")
    mu = n ** n
    middle = mu // (n + 1) + ((-1) ** n + 1) // 2
    assert middle == _circle_bundle_middle(n, fermat_divisor_euler(n))
    return _smooth_divisor_strata(n, mu, middle)


def doublecover_strata(n: int) -> StrataData:
    """Divisor at infinity of x_1^2 + x_2^{2n} + ... + x_n^{2n} = -1."""
    if n < 2:
        raise SpecSeqError("n >= 2 required")
    mu = (2 * n - 1) ** (n - 1)
    middle = mu // (2 * n) + ((-1) ** n + 1) // 2
    assert middle == _circle_bundle_middle(n, doublecover_divisor_euler(n))
    return _smooth_divisor_strata(n, mu, middle)


def circle_bundle_betti(genus: int, euler_number: int) -> List[int]:
    """Betti numbers of a circle bundle over a closed surface of the given genus."""
    if euler_number:
        return [1, 2 * genus, 2 * genus, 1]
    return [1, 2 * genus + 1, 2 * genus + 1, 1]


# ---------------------------------------------------------------------------
# formality certificate
# ---------------------------------------------------------------------------

@dataclass
class FormalityReport:
    verdict: str
    sh1: Optional[Tuple[int, int]]
    hh1_weight0: Optional[int]
    reason: str

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "sh1": list(self.sh1) if self.sh1 else None,
                "hh1_weight0": self.hh1_weight0, "reason": self.reason}


def formality_obstruction_report(bounds: Sequence[DegreeBound], algebra_hh: Mapping[Tuple[int, int], int]) -> FormalityReport:
    """NON-FORMAL when SH^1 is forced to vanish while HH^1(A) has a weight-0 class.

    ``algebra_hh`` maps (Hochschild degree, internal weight) to dimensions.
    """
    sh1 = next(((b.lower, b.upper) for b in bounds if b.degree == 1), None)
    hh1 = algebra_hh.get((1, 0))
    if sh1 is None:
        return FormalityReport("INCONCLUSIVE", None, hh1, "no bound for degree 1")
    if hh1 is None:
        return FormalityReport("INCONCLUSIVE", sh1, None, "HH^1 at weight 0 not computed")
    if sh1 == (0, 0) and hh1 > 0:
        return FormalityReport("NON-FORMAL", sh1, hh1,
                               "SH^1 = 0 but HH^1(A)_0 contains the Euler derivation")
    if sh1 != (0, 0):
        return FormalityReport("INCONCLUSIVE", sh1, hh1, f"SH^1 only bounded by [{sh1[0]}, {sh1[1]}]")
    return FormalityReport("INCONCLUSIVE", sh1, hh1, "HH^1(A)_0 vanishes")
