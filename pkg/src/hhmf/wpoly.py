"""Weighted homogeneous polynomials.

A polynomial is a list of ``(coefficient, exponent tuple)`` terms over a fixed
ordered list of variable names.  The module provides weight-system inference,
exponent matrices and Berglund-Hubsch transposes, the Hilbert polynomial of
the Jacobi ring, and an explicit monomial basis of the Jacobi ring computed
one weighted-degree slice at a time.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import exact

Exponent = Tuple[int, ...]


class WPolyError(ValueError):
    pass


class NoWeightSystem(WPolyError):
    pass


class AmbiguousWeightSystem(WPolyError):
    pass


class ShapeMismatch(WPolyError):
    pass


class NotInvertible(WPolyError):
    pass


class NonPolynomialSeries(WPolyError):
    pass


class NotIsolated(WPolyError):
    pass


class NotHomogeneous(WPolyError):
    pass


@dataclass(frozen=True)
class WeightSystem:
    """Weights ``(d_1, ..., d_n; h)``."""

    d: Tuple[int, ...]
    h: int

    def __post_init__(self):
        if any(di <= 0 for di in self.d) or self.h <= 0:
            raise WPolyError(f"weights must be positive: {self}")

    @property
    def n(self) -> int:
        return len(self.d)

    @property
    def d0(self) -> int:
        return self.h - sum(self.d)

    def degree(self, exps: Sequence[int]) -> int:
        return sum(e * di for e, di in zip(exps, self.d))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.d)) + f";{self.h})"


@dataclass
class WeightedPolynomial:
    variables: Tuple[str, ...]
    terms: List[Tuple[Fraction, Exponent]]
    weight_system: Optional[WeightSystem] = None

    def __post_init__(self):
        self.variables = tuple(self.variables)
        merged: Dict[Exponent, Fraction] = {}
        for c, e in self.terms:
            e = tuple(int(x) for x in e)
            if len(e) != len(self.variables):
                raise WPolyError(f"exponent {e} does not match {len(self.variables)} variables")
            if any(x < 0 for x in e):
                raise WPolyError(f"negative exponent {e}")
            merged[e] = merged.get(e, Fraction(0)) + Fraction(c)
        self.terms = [(c, e) for e, c in merged.items() if c != 0]
        if self.weight_system is not None:
            ws = self.weight_system
            if ws.n != len(self.variables):
                raise WPolyError("weight system length differs from variable count")
            g = ws.h
            for di in ws.d:
                g = gcd(g, di)
            if g != 1:
                raise WPolyError(f"weight system {ws} is not reduced")
            for _, e in self.terms:
                if ws.degree(e) != ws.h:
                    raise NotHomogeneous(f"monomial {e} has degree {ws.degree(e)} != {ws.h}")

    @property
    def n(self) -> int:
        return len(self.variables)

    def monomials(self) -> List[Exponent]:
        return [e for _, e in self.terms]

    def coeff_map(self) -> Dict[Exponent, Fraction]:
        return {e: c for c, e in self.terms}

    def derivative(self, i: int) -> Dict[Exponent, Fraction]:
        out = {}
        for c, e in self.terms:
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return out

    def restrict(self, keep: Sequence[int]) -> "WeightedPolynomial":
        """Set every variable outside ``keep`` to zero (ambient variables unchanged)."""
        ks = set(keep)
        terms = [(c, e) for c, e in self.terms
                 if all(e[i] == 0 for i in range(self.n) if i not in ks)]
        return WeightedPolynomial(self.variables, terms, None)

    def involves(self, i: int) -> bool:
        return any(e[i] for _, e in self.terms)

    def with_weights(self) -> "WeightedPolynomial":
        if self.weight_system is None:
            return WeightedPolynomial(self.variables, self.terms, infer_weight_system(self))
        return self

    def __str__(self) -> str:
        return format_polynomial(self)


def polynomial(variables: Sequence[str], terms, weights: Optional[Sequence[int]] = None,
               h: Optional[int] = None) -> WeightedPolynomial:
    """Convenience constructor: ``terms`` is a list of ``(coeff, exponents)``."""
    ws = WeightSystem(tuple(weights), h) if weights is not None else None
    p = WeightedPolynomial(tuple(variables), [(Fraction(c), tuple(e)) for c, e in terms], ws)
    return p


def format_monomial(variables: Sequence[str], e: Sequence[int]) -> str:
    parts = []
    for v, k in zip(variables, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts) if parts else "1"


def format_polynomial(p: WeightedPolynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for c, e in sorted(p.terms, key=lambda t: tuple(-x for x in t[1])):
        mono = format_monomial(p.variables, e)
        if mono == "1":
            s = str(c)
        elif c == 1:
            s = mono
        elif c == -1:
            s = "-" + mono
        else:
            s = f"{c}*{mono}"
        out.append(s)
    return " + ".join(out).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------

def infer_weight_system(w: WeightedPolynomial) -> WeightSystem:
    """Unique reduced weights making ``w`` quasi-homogeneous.

    Solve ``sum_i d_i e_i - h = 0`` for each monomial; the null space must be a
    single ray with all coordinates positive.
    """
    n = w.n
    if not w.terms:
        raise NoWeightSystem("zero polynomial")
    rows = [list(e) + [-1] for e in w.monomials()]
    ker = exact.kernel_basis(rows, cols=n + 1)
    if not ker:
        raise NoWeightSystem(f"no weights for {w}")
    if len(ker) > 1:
        raise AmbiguousWeightSystem(f"{len(ker)}-dimensional family of weights for {w}")
    v = ker[0]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    iv = exact.primitive([int(x * den) for x in v])
    if iv[-1] < 0:
        iv = [-x for x in iv]
    d, h = iv[:-1], iv[-1]
    if any(di <= 0 for di in d) or h <= max(d):
        raise NoWeightSystem(f"weights {d};{h} are not positive with h > max d_i")
    return WeightSystem(tuple(d), h)


def exponent_matrix(w: WeightedPolynomial) -> List[List[int]]:
    """Row i holds the exponents of the i-th monomial (sorted by leading variable)."""
    if len(w.terms) != w.n:
        raise ShapeMismatch(f"{len(w.terms)} terms but {w.n} variables")
    mons = w.monomials()
    # put the monomials in an order with a nonzero diagonal when one exists
    order = _diagonal_order(mons)
    return [list(mons[i]) for i in order]


def _diagonal_order(mons: List[Exponent]) -> List[int]:
    n = len(mons)
    best = list(range(n))

    def search(col, used, acc):
        if col == n:
            return acc
        for i in range(n):
            if i not in used and mons[i][col] > 0:
                r = search(col + 1, used | {i}, acc + [i])
                if r is not None:
                    return r
        return None

    found = search(0, frozenset(), [])
    return found if found is not None else best


def is_invertible(w: WeightedPolynomial) -> bool:
    return exact.det(exponent_matrix(w)) != 0


def transpose(w: WeightedPolynomial) -> WeightedPolynomial:
    """Berglund-Hubsch transpose: monomials from the columns of the exponent matrix."""
    a = exponent_matrix(w)
    if exact.det(a) == 0:
        raise NotInvertible(str(w))
    at = exact.transpose(a)
    p = WeightedPolynomial(w.variables, [(Fraction(1), tuple(row)) for row in at], None)
    return p.with_weights()


# ---------------------------------------------------------------------------
# Hilbert polynomial
# ---------------------------------------------------------------------------

def _poly_mul(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(num: List[int], den: List[int]) -> Tuple[List[int], List[int]]:
    num = list(num)
    if len(num) < len(den):
        return [0], num
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        if c % lead:
            raise NonPolynomialSeries("non-integral quotient")
        c //= lead
        q[i] = c
        if c:
            for j, y in enumerate(den):
                num[i + j] -= c * y
    return q, num


def jacobi_hilbert(ws: WeightSystem) -> List[int]:
    """Coefficients of prod (1 - T^{h-d_i}) / (1 - T^{d_i})."""
    num = [1]
    den = [1]
    for di in ws.d:
        e = ws.h - di
        if e <= 0:
            raise NonPolynomialSeries(f"h - d_i = {e} is not positive")
        num = _poly_mul(num, [1] + [0] * (e - 1) + [-1])
        den = _poly_mul(den, [1] + [0] * (di - 1) + [-1])
    q, r = _poly_divmod(num, den)
    if any(r):
        raise NonPolynomialSeries(f"Hilbert series of {ws} is not a polynomial")
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    if any(c < 0 for c in q):
        raise NonPolynomialSeries(f"Hilbert series of {ws} has negative coefficients")
    return q


def milnor_number(ws: WeightSystem) -> int:
    return sum(jacobi_hilbert(ws))


def exponents_w_vector(ws: WeightSystem) -> Tuple[List[int], List[int]]:
    """Return ``(w_tilde, w_tail)`` where ``sum T^{h - w_i}`` is the Hilbert polynomial."""
    hp = jacobi_hilbert(ws)
    wt = []
    for e, c in enumerate(hp):
        wt.extend([ws.h - e] * c)
    wt.sort()
    return wt, wt[1:]


# ---------------------------------------------------------------------------
# monomials and the Jacobi basis
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def monomials_of_degree(weights: Tuple[int, ...], z: int) -> Tuple[Exponent, ...]:
    """All exponent vectors with ``sum e_i w_i == z`` (all weights positive)."""
    if z < 0:
        return ()
    n = len(weights)
    if n == 0:
        return ((),) if z == 0 else ()
    out = []
    last = weights[-1]
    for k in range(z // last + 1):
        for head in monomials_of_degree(weights[:-1], z - k * last):
            out.append(head + (k,))
    return tuple(out)


def grlex_key(e: Sequence[int]):
    return (sum(e), tuple(e))


def jacobi_monomial_basis(w: WeightedPolynomial,
                          ws: Optional[WeightSystem] = None) -> List[Exponent]:
    """Graded-lex smallest monomials forming a basis of the Jacobi ring.

    Works slice by slice in weighted degree; raises NotIsolated when the slice
    dimensions disagree with the Hilbert polynomial.  ``ws`` may be given for
    polynomials whose weights are not reduced (restrictions to fixed loci).
    """
    if ws is None:
        w = w.with_weights()
        ws = w.weight_system
    return list(_jacobi_basis_cached(w.variables, tuple(sorted(w.terms, key=lambda t: t[1])), ws))


@lru_cache(maxsize=256)
def _jacobi_basis_cached(variables, terms, ws: WeightSystem) -> Tuple[Exponent, ...]:
    w = WeightedPolynomial(variables, list(terms), None)
    if ws.n == 0:
        return ((),)
    try:
        hp = jacobi_hilbert(ws)
    except NonPolynomialSeries as exc:
        raise NotIsolated(str(exc)) from exc
    basis = []
    top = len(hp) - 1
    for z in range(top + max(ws.d) + 1):
        picked = jacobi_slice_basis(w, z, ws)
        expected = hp[z] if z <= top else 0
        if len(picked) != expected:
            raise NotIsolated(
                f"Jacobi slice of degree {z} has dimension {len(picked)}, expected {expected}")
        basis.extend(picked)
    return tuple(basis)


def jacobi_slice_basis(w: WeightedPolynomial, z: int,
                       ws: Optional[WeightSystem] = None) -> List[Exponent]:
    """Monomial basis of the degree-z slice of the Jacobi ring."""
    ws = ws or w.weight_system
    mons = sorted(monomials_of_degree(ws.d, z), key=grlex_key)
    ech = ideal_slice_echelon(w, z, ws)
    picked = []
    for m in mons:
        if ech.add({m: 1}):
            picked.append(m)
    return picked


def ideal_slice_echelon(w: WeightedPolynomial, z: int,
                        ws: Optional[WeightSystem] = None) -> exact.SparseEchelon:
    ws = ws or w.weight_system
    ech = exact.SparseEchelon()
    for i in range(w.n):
        der = w.derivative(i)
        if not der:
            continue
        for m in monomials_of_degree(ws.d, z - (ws.h - ws.d[i])):
            vec = {}
            for e, c in der.items():
                key = tuple(a + b for a, b in zip(e, m))
                vec[key] = vec.get(key, 0) + c
            ech.add(vec)
    return ech


# ---------------------------------------------------------------------------
# named families
# ---------------------------------------------------------------------------

def sylvester_sequence(n: int) -> List[int]:
    s = []
    prod = 1
    for _ in range(n):
        s.append(prod + 1)
        prod *= s[-1]
    return s


def sylvester_polynomial(n: int) -> WeightedPolynomial:
    if n < 1:
        raise WPolyError("n must be positive")
    s = sylvester_sequence(n + 1)
    h = s[n] - 1
    names = default_names(n)
    terms = []
    for i in range(n):
        e = [0] * n
        e[i] = s[i]
        terms.append((1, e))
    return polynomial(names, terms, [h // si for si in s[:n]], h)


def default_names(n: int) -> List[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i}" for i in range(1, n + 1)]
