"""Character lattices of diagonal symmetry groups and their sectors.

Characters of the group are written in the basis ``chi_1, ..., chi_n, chi``
(``chi`` is the character by which ``w`` is semi-invariant).  A subgroup is
described by the lattice ``L`` of characters that vanish on it, so the
character group of the subgroup is ``Z^{n+1} / L``.

A class is stored as a tuple ``(z, t_1, ..., t_k)``: ``z`` is the integer
weight (``chi_i -> d_i``, ``chi -> h``) and ``t_j`` are residues modulo the
torsion orders of the Smith normal form.  The cone variable ``x_0`` has class
``chi_0 = chi - chi_1 - ... - chi_n``; variables are indexed ``0..n`` with
index 0 for ``x_0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from . import exact
from .wpoly import WeightedPolynomial, WeightSystem, monomials_of_degree

Class = Tuple[int, ...]


class SymmetryError(ValueError):
    pass


class RankNotOne(SymmetryError):
    pass


class GradingElementMissing(SymmetryError):
    pass


class InfiniteKernel(SymmetryError):
    pass


class NotASymmetry(SymmetryError):
    pass


@dataclass(frozen=True)
class SubgroupSpec:
    """``kind`` is ``"full"``, ``"phi_gm"`` or ``"explicit"``."""

    kind: str = "full"
    generators: Tuple[Tuple[Fraction, ...], ...] = ()

    def __post_init__(self):
        if self.kind not in ("full", "phi_gm", "explicit"):
            raise SymmetryError(f"unknown subgroup kind {self.kind!r}")
        gens = tuple(tuple(Fraction(x) % 1 for x in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if self.kind == "explicit" and not gens:
            raise SymmetryError("explicit subgroup needs generators")


FULL = SubgroupSpec("full")
PHI_GM = SubgroupSpec("phi_gm")


def _in_lattice(rows: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Is ``v`` an integer combination of ``rows``?"""
    if not rows:
        return not any(v)
    res = exact.snf(rows)
    coords = exact.matmul([list(v)], res.V)[0]
    for j, c in enumerate(coords):
        dj = res.D[j][j] if j < len(res.D) else 0
        if dj == 0:
            if c != 0:
                return False
        elif c % dj:
            return False
    return True


def relation_lattice(w: WeightedPolynomial, sub: SubgroupSpec) -> List[List[int]]:
    """Generators (rows) of the lattice of characters trivial on the subgroup."""
    ws = w.weight_system
    n = w.n
    full_rows = [list(e) + [-1] for e in w.monomials()]
    if sub.kind == "full":
        return full_rows
    phi = [list(ws.d) + [ws.h]]
    if sub.kind == "phi_gm":
        return exact.integer_kernel(phi, n + 1)
    # explicit: phi condition plus integrality on every generator
    gens = sub.generators
    for g in gens:
        if len(g) != n:
            raise SymmetryError(f"generator {g} has length {len(g)}, expected {n}")
        for e in w.monomials():
            if sum(a * b for a, b in zip(e, g)) % 1:
                raise NotASymmetry(f"generator {g} does not preserve w up to chi "
                                   "or does not kill chi")
    q = 1
    for g in gens:
        for x in g:
            q = q * x.denominator // gcd(q, x.denominator)
    k = len(gens)
    rows = [list(ws.d) + [ws.h] + [0] * k]
    for j, g in enumerate(gens):
        slack = [0] * k
        slack[j] = -q
        rows.append([int(x * q) for x in g] + [0] + slack)
    ker = exact.integer_kernel(rows, n + 1 + k)
    lat = [row[: n + 1] for row in ker]
    # the grading element must lie in the group generated by the generators
    jw = [Fraction(di, ws.h) for di in ws.d]
    qq = q * ws.h // gcd(q, ws.h)
    gen_rows = [[int(x * qq) for x in g] for g in gens]
    gen_rows += [[qq if i == j else 0 for j in range(n)] for i in range(n)]
    if not _in_lattice(gen_rows, [int(x * qq) for x in jw]):
        raise GradingElementMissing("the generators do not produce the grading element j_w")
    for row in full_rows:
        assert _in_lattice(lat, row), "explicit subgroup is not inside the maximal group"
    return lat


@dataclass(frozen=True)
class SectorData:
    """A group element of ker chi, given by its phases on ``x_0, ..., x_n``."""

    gamma: Tuple[Fraction, ...]
    fixed: Tuple[int, ...]
    moved: Tuple[int, ...]
    det_N_dual: Class

    @property
    def is_identity(self) -> bool:
        return not self.moved

    def label(self) -> str:
        return "(" + ",".join(str(x) for x in self.gamma) + ")"


class CharacterLattice:
    """Character group of a diagonal symmetry group, in Smith normal form."""

    def __init__(self, w: WeightedPolynomial, sub: SubgroupSpec = FULL, include_x0: bool = True):
        w = w.with_weights()
        self.w = w
        self.ws: WeightSystem = w.weight_system
        self.sub = sub
        self.include_x0 = include_x0
        self.n = w.n
        n = self.n
        self.relations = relation_lattice(w, sub)
        res = exact.snf(self.relations, cols=n + 1)
        if res.rank != n:
            raise RankNotOne(f"character group has free rank {n + 1 - res.rank}, expected 1")
        self._V = res.V
        diag = res.diagonal
        self._tors_idx = [j for j in range(res.rank) if diag[j] > 1]
        self.torsion: Tuple[int, ...] = tuple(diag[j] for j in self._tors_idx)
        self.d0 = self.ws.d0
        units = [[int(i == j) for j in range(n + 1)] for i in range(n + 1)]
        self.chi_i: List[Class] = [self.cls(units[i]) for i in range(n)]
        self.chi: Class = self.cls(units[n])
        self.chi0: Class = self.sub_(self.chi, self.sum_(self.chi_i))
        # variable classes indexed 0..n, x_0 first
        self.var_classes: List[Class] = [self.chi0] + self.chi_i
        self.var_weights: List[int] = [self.d0] + list(self.ws.d)
        self._mon_cache: Dict[Tuple[Tuple[int, ...], int], Dict[Class, List[Tuple[int, ...]]]] = {}
        self._sectors: Optional[List[SectorData]] = None

    # -- class arithmetic --------------------------------------------------
    def cls(self, a: Sequence[int]) -> Class:
        """Class of the character ``sum a_i chi_i + a_{n+1} chi``."""
        z = sum(x * di for x, di in zip(a, self.ws.d)) + a[self.n] * self.ws.h
        coords = [sum(a[i] * self._V[i][j] for i in range(self.n + 1)) for j in self._tors_idx]
        return (z,) + tuple(c % m for c, m in zip(coords, self.torsion))

    @property
    def zero(self) -> Class:
        return (0,) * (1 + len(self.torsion))

    def add(self, a: Class, b: Class) -> Class:
        return (a[0] + b[0],) + tuple((x + y) % m for x, y, m in zip(a[1:], b[1:], self.torsion))

    def sub_(self, a: Class, b: Class) -> Class:
        return (a[0] - b[0],) + tuple((x - y) % m for x, y, m in zip(a[1:], b[1:], self.torsion))

    def scale(self, a: Class, k: int) -> Class:
        return (a[0] * k,) + tuple((x * k) % m for x, m in zip(a[1:], self.torsion))

    def sum_(self, classes) -> Class:
        out = self.zero
        for c in classes:
            out = self.add(out, c)
        return out

    def mono_class(self, e: Sequence[int]) -> Class:
        """Class of the monomial with exponents ``e`` over ``x_0..x_n``."""
        out = self.zero
        for k, c in zip(e, self.var_classes):
            if k:
                out = self.add(out, self.scale(c, k))
        return out

    def describe(self) -> str:
        parts = ["Z"] + [f"Z/{m}" for m in self.torsion]
        return " x ".join(parts)

    # -- monomial slices ---------------------------------------------------
    def monomials(self, vars_: Sequence[int], target: Class) -> List[Tuple[int, ...]]:
        """Monomials in the variables ``vars_`` (indices into x_0..x_n) of class ``target``.

        Exponent tuples have length n+1; they are returned in graded-lex order.
        """
        z = target[0]
        if z < 0:
            return []
        by_class = self._slice(tuple(sorted(vars_)), z)
        return by_class.get(tuple(target), [])

    def _slice(self, vars_: Tuple[int, ...], z: int) -> Dict[Class, List[Tuple[int, ...]]]:
        key = (vars_, z)
        cached = self._mon_cache.get(key)
        if cached is not None:
            return cached
        weights = tuple(self.var_weights[i] for i in vars_)
        out: Dict[Class, List[Tuple[int, ...]]] = {}
        full = [0] * (self.n + 1)
        for small in monomials_of_degree(weights, z):
            for i, k in zip(vars_, small):
                full[i] = k
            e = tuple(full)
            out.setdefault(self.mono_class(e), []).append(e)
        for lst in out.values():
            lst.sort(key=lambda e: (sum(e), e))
        self._mon_cache[key] = out
        return out

    # -- sectors -----------------------------------------------------------
    def sectors(self) -> List[SectorData]:
        if self._sectors is None:
            self._sectors = enumerate_ker_chi(self)
        return self._sectors


def build_lattice(w: WeightedPolynomial, sub: SubgroupSpec = FULL,
                  include_x0: bool = True) -> CharacterLattice:
    return CharacterLattice(w, sub, include_x0)


def enumerate_ker_chi(L: CharacterLattice) -> List[SectorData]:
    """All elements of ker chi as phase vectors on x_0..x_n, sorted by phases."""
    n = L.n
    rows = [list(r) for r in L.relations] + [[0] * n + [1]]
    res = exact.snf(rows, cols=n + 1)
    if res.rank != n + 1:
        raise InfiniteKernel("chi does not generate a finite-index subgroup")
    diag = res.diagonal
    idx = [j for j in range(n + 1) if diag[j] > 1]
    orders = [diag[j] for j in idx]
    V = res.V
    sectors = []
    for s in product(*[range(m) for m in orders]):
        ph = []
        for i in range(n):
            ph.append(sum(Fraction(V[i][j] * sk, m) for j, sk, m in zip(idx, s, orders)) % 1)
        # chi itself must be killed
        assert sum(Fraction(V[n][j] * sk, m) for j, sk, m in zip(idx, s, orders)) % 1 == 0
        p0 = (-sum(ph)) % 1
        gamma = (p0,) + tuple(ph) if L.include_x0 else (Fraction(0),) + tuple(ph)
        lo = 0 if L.include_x0 else 1
        fixed = tuple(i for i in range(lo, n + 1) if gamma[i] == 0)
        moved = tuple(i for i in range(lo, n + 1) if gamma[i] != 0)
        det_n = L.sub_(L.zero, L.sum_(L.var_classes[i] for i in moved))
        sectors.append(SectorData(gamma, fixed, moved, det_n))
    sectors.sort(key=lambda s: s.gamma)
    return sectors


def sector_census(L: CharacterLattice) -> Dict[str, int]:
    """Counts of sectors by fixed-locus type."""
    out = {"empty": 0, "x0_only": 0, "identity": 0, "other": 0}
    allv = set(range(0 if L.include_x0 else 1, L.n + 1))
    for s in L.sectors():
        f = set(s.fixed)
        if not f:
            out["empty"] += 1
        elif f == {0}:
            out["x0_only"] += 1
        elif f == allv:
            out["identity"] += 1
        else:
            out["other"] += 1
    return out
