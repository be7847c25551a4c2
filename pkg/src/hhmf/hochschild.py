"""Hochschild cohomology of equivariant matrix factorizations.

The sector sum: for each ``gamma`` in ``ker chi`` with fixed variables ``V``
and moved variables ``N``, the degree ``t`` part receives
``H^{-k}(dW_gamma)`` for ``0 <= k <= |V|`` with ``k = t - |N| (mod 2)``, read
in the Koszul degree ``D = ((t - |N| + k) / 2) chi + sum_{i in N} chi_i``.
Writing ``k = 2l`` (``t - |N| = 2u``) or ``k = 2l + 1`` (``t - |N| = 2u + 1``)
recovers the usual ``(u, l)`` bookkeeping.

The ``x_0``-weight of a class is ``e_0(m) - [x_0 in I] - [x_0 in N]``: the
``x_0``-exponent with one unit subtracted for every ``x_0^v`` factor.
Weights are only tracked when ``W`` does not involve ``x_0``.

Two code paths are provided: :func:`hh_mf` (Koszul ranks for every sector)
and :func:`hh_cone` (Jacobi bases of the restricted ``w``, for ``W`` free of
``x_0``).  They are independent and must agree.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import koszul
from .symmetry import CharacterLattice, SectorData
from .wpoly import (NotIsolated, WeightedPolynomial, WeightSystem, jacobi_monomial_basis)


class HHError(RuntimeError):
    pass


CalibrationRequired = koszul.DegreeConventionUnvalidated


@dataclass
class Contribution:
    sector: str
    identity: bool
    k: int
    l: int
    u: int
    parity: str
    classes: Dict[Optional[int], int]

    @property
    def dim(self) -> int:
        return sum(self.classes.values())

    def to_json(self) -> dict:
        return {
            "sector": self.sector, "identity": self.identity, "k": self.k, "l": self.l,
            "u": self.u, "parity": self.parity, "dim": self.dim,
            "classes": [{"weight": w, "mult": m} for w, m in _sorted_items(self.classes)],
        }


def _sorted_items(d: Dict[Optional[int], int]):
    return sorted(d.items(), key=lambda kv: (kv[0] is not None, kv[0] if kv[0] is not None else 0))


@dataclass
class HHTable:
    t_max: int
    weights_tracked: bool
    rows: Dict[int, Counter] = field(default_factory=dict)
    provenance: Dict[int, List[Contribution]] = field(default_factory=dict)

    def add(self, t: int, c: Contribution) -> None:
        if not c.classes:
            return
        row = self.rows.setdefault(t, Counter())
        for wt, m in c.classes.items():
            row[wt] += m
        self.provenance.setdefault(t, []).append(c)

    def row(self, t: int) -> Dict[Optional[int], int]:
        return dict(self.rows.get(t, {}))

    def dim(self, t: int) -> int:
        return sum(self.rows.get(t, {}).values())

    def dims(self) -> List[int]:
        return [self.dim(t) for t in range(self.t_max + 1)]

    def render_row(self, t: int) -> str:
        row = self.rows.get(t)
        if not row:
            return "0"
        parts = []
        for wt, m in _sorted_items(row):
            base = "k" if wt is None or wt == 0 else f"k({wt})"
            parts.append(base if m == 1 else f"{base}^{m}")
        return " + ".join(parts)

    def render(self) -> str:
        return "\n".join(f"HH^{t} = {self.render_row(t)}" for t in range(self.t_max + 1))

    def to_json(self, provenance: bool = True) -> List[dict]:
        out = []
        for t in range(self.t_max + 1):
            entry = {"t": t, "classes": [{"weight": w, "mult": m}
                                         for w, m in _sorted_items(self.rows.get(t, {}))]}
            if provenance:
                entry["provenance"] = [c.to_json() for c in self.provenance.get(t, [])]
            out.append(entry)
        return out

    def same_rows(self, other: "HHTable") -> List[int]:
        """Degrees where the two tables differ."""
        return [t for t in range(min(self.t_max, other.t_max) + 1) if self.row(t) != other.row(t)]


def _degree(L: CharacterLattice, s: SectorData, t: int, k: int):
    twice = t - len(s.moved) + k
    assert twice % 2 == 0
    return L.add(L.scale(L.chi, twice // 2), L.sum_(L.var_classes[i] for i in s.moved))


def _bookkeeping(t: int, N: int, k: int) -> Tuple[int, int, str]:
    if k % 2 == 0:
        return (t - N) // 2, k // 2, "even"
    return (t - N - 1) // 2, k // 2, "odd"


def _sector_contributions(L: CharacterLattice, W: WeightedPolynomial, s: SectorData,
                          t_max: int, track: bool, check: bool = True) -> List[Tuple[int, Contribution]]:
    slices = koszul.KoszulSlices(L, W, s.fixed, check=check)
    N = len(s.moved)
    x0_moved = 1 if 0 in s.moved else 0
    out = []
    for t in range(t_max + 1):
        for k in range(len(s.fixed) + 1):
            if (t - N - k) % 2:
                continue
            D = _degree(L, s, t, k)
            if D[0] < 0:
                continue
            coh = slices.cohomology(k, D)
            if not coh:
                continue
            if track:
                classes = {wt - x0_moved: m for wt, m in coh.items()}
            else:
                classes = {None: sum(coh.values())}
            u, l, parity = _bookkeeping(t, N, k)
            out.append((t, Contribution(s.label(), s.is_identity, k, l, u, parity, classes)))
    return out


def _worker(args):
    L, W, sectors, t_max, track, check = args
    return [_sector_contributions(L, W, s, t_max, track, check) for s in sectors]


def _run_sectors(fn, L, W, t_max, track, jobs: int, check: bool = True):
    sectors = L.sectors()
    if jobs <= 1 or len(sectors) < 2:
        return [fn(L, W, s, t_max, track, check) for s in sectors]
    chunk = max(1, len(sectors) // (4 * jobs))
    batches = [sectors[i:i + chunk] for i in range(0, len(sectors), chunk)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        if fn is _sector_contributions:
            results = list(ex.map(_worker, [(L, W, b, t_max, track, check) for b in batches]))
        else:
            results = list(ex.map(_cone_worker, [(L, W, b, t_max, track, check) for b in batches]))
    return [r for batch in results for r in batch]


def hh_mf(W: WeightedPolynomial, L: CharacterLattice, t_max: int,
          track_weights: Optional[bool] = None, strict: bool = False, jobs: int = 1,
          check: bool = True) -> HHTable:
    """HH^t for 0 <= t <= t_max from Koszul cohomology of every sector."""
    koszul.require_calibration(strict)
    if t_max < 0:
        raise HHError("t_max must be non-negative")
    if W.n != L.n + 1:
        raise HHError("W must be a polynomial in x_0, ..., x_n")
    x0_free = not W.involves(0)
    track = x0_free if track_weights is None else (track_weights and x0_free)
    table = HHTable(t_max, track)
    for contribs in _run_sectors(_sector_contributions, L, W, t_max, track, jobs, check):
        for t, c in contribs:
            table.add(t, c)
    return table


# ---------------------------------------------------------------------------
# fast path for cones
# ---------------------------------------------------------------------------

def restricted_jacobi_basis(L: CharacterLattice, fixed: Sequence[int]) -> List[Tuple[int, ...]]:
    """Jacobi basis of w restricted to the fixed variables among x_1..x_n.

    Exponents are returned over x_0..x_n (with zero x_0-exponent).
    """
    F = tuple(i for i in fixed if i >= 1)
    cache = L.__dict__.setdefault("_jac_cache", {})
    if F in cache:
        return cache[F]
    w = L.w
    if not F:
        out = [tuple([0] * (L.n + 1))]
    else:
        terms = []
        for c, e in w.terms:
            if all(e[i - 1] == 0 for i in range(1, L.n + 1) if i not in F):
                terms.append((c, tuple(e[i - 1] for i in F)))
        if not terms:
            raise NotIsolated(f"w vanishes on the fixed locus {F}")
        wg = WeightedPolynomial(tuple(w.variables[i - 1] for i in F), terms, None)
        ws = WeightSystem(tuple(L.ws.d[i - 1] for i in F), L.ws.h)
        out = []
        for e in jacobi_monomial_basis(wg, ws):
            full = [0] * (L.n + 1)
            for i, k in zip(F, e):
                full[i] = k
            out.append(tuple(full))
    cache[F] = out
    return out


def _cone_contributions(L: CharacterLattice, W, s: SectorData, t_max: int, track: bool,
                        check: bool = True) -> List[Tuple[int, Contribution]]:
    basis = restricted_jacobi_basis(L, s.fixed)
    N = len(s.moved)
    x0_fixed = 0 in s.fixed
    x0_moved = 1 if 0 in s.moved else 0
    d0 = L.d0
    sumN = L.sum_(L.var_classes[i] for i in s.moved)
    mclasses = [L.mono_class(m) for m in basis]
    out = []
    for t in range(t_max + 1):
        # k = 0 summand, t - N = 2u; k = 1 summand (x_0 fixed), t - N = 2u + 1
        for k in ((0, 1) if x0_fixed else (0,)):
            if (t - N - k) % 2:
                continue
            u = (t - N - k) // 2
            target = L.add(L.scale(L.chi, u), sumN)
            classes: Dict[Optional[int], int] = {}
            for mc in mclasses:
                if x0_fixed:
                    num = target[0] - mc[0]
                    if num % d0:
                        continue
                    e = num // d0 + k  # x_0-exponent of the full monomial
                    if e < 0:
                        continue
                    if L.add(mc, L.scale(L.chi0, e - k)) != target:
                        continue
                else:
                    if mc != target:
                        continue
                    e = 0
                wt = e - k - x0_moved
                key = wt if track else None
                classes[key] = classes.get(key, 0) + 1
            if classes:
                parity = "even" if k == 0 else "odd"
                out.append((t, Contribution(s.label(), s.is_identity, k, 0, u, parity, classes)))
    return out


def _cone_worker(args):
    L, W, sectors, t_max, track, check = args
    return [_cone_contributions(L, W, s, t_max, track, check) for s in sectors]


def hh_cone(L: CharacterLattice, t_max: int, strict: bool = False, jobs: int = 1) -> HHTable:
    """HH^t for the cone over ``w`` using Jacobi bases of each restriction w_gamma."""
    koszul.require_calibration(strict)
    if L.d0 <= 0:
        raise HHError(f"d_0 = {L.d0} must be positive")
    table = HHTable(t_max, True)
    for contribs in _run_sectors(_cone_contributions, L, None, t_max, True, jobs):
        for t, c in contribs:
            table.add(t, c)
    return table


# ---------------------------------------------------------------------------
# structural checks
# ---------------------------------------------------------------------------

@dataclass
class TwistedReport:
    twisted: bool
    offenders: List[Tuple[str, int, int]]  # (sector, weight, mult)

    def to_json(self) -> dict:
        return {"twisted_deformations": self.twisted,
                "offenders": [{"sector": s, "weight": w, "mult": m} for s, w, m in self.offenders]}


def _require_weights(table: HHTable) -> None:
    if not table.weights_tracked:
        raise HHError("x_0-weights are not tracked for this table")


def twisted_deformation_detector(table: HHTable) -> TwistedReport:
    """Are there HH^2 classes of positive weight outside (identity, u = 1, k = 0)?"""
    _require_weights(table)
    offenders = []
    for c in table.provenance.get(2, []):
        for wt, m in c.classes.items():
            if wt > 0 and not (c.identity and c.u == 1 and c.k == 0):
                offenders.append((c.sector, wt, m))
    return TwistedReport(bool(offenders), offenders)


def deformation_dimension(table: HHTable) -> int:
    """Number of HH^2 classes of positive x_0-weight."""
    _require_weights(table)
    return sum(m for wt, m in table.row(2).items() if wt > 0)


def deformation_weights(table: HHTable) -> List[int]:
    _require_weights(table)
    out = []
    for wt, m in sorted(table.row(2).items()):
        if wt > 0:
            out.extend([wt] * m)
    return out


@dataclass
class CrReport:
    hh0_is_k: bool
    hh1_has_weight_zero: bool
    hh1_positive_part_empty: bool
    violations: List[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"hh0_is_k": self.hh0_is_k, "hh1_has_weight_zero": self.hh1_has_weight_zero,
                "hh1_positive_part_empty": self.hh1_positive_part_empty,
                "violations": list(self.violations)}


def check_cr_hh0(table: HHTable) -> CrReport:
    _require_weights(table)
    v = []
    a = table.row(0) == {0: 1}
    if not a:
        v.append(f"HH^0 = {table.render_row(0)}, expected k")
    b = table.row(1).get(0, 0) > 0
    if not b:
        v.append("HH^1 has no weight-0 class")
    pos = {w: m for w, m in table.row(1).items() if w > 0}
    c = not pos
    if not c:
        v.append(f"HH^1 has positive-weight classes {pos}")
    return CrReport(a, b, c, v)
