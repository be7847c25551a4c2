"""Built-in polynomial families.

Every entry returns ``(W, w, sub)``: the polynomial ``W`` over ``x_0..x_n``
used for Hochschild cohomology, the polynomial ``w`` over ``x_1..x_n`` that
defines the weights and the symmetry group, and the subgroup choice.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .symmetry import FULL, PHI_GM, SubgroupSpec
from .wpoly import WeightedPolynomial, polynomial, sylvester_polynomial


@dataclass
class Case:
    name: str
    w: WeightedPolynomial
    sub: SubgroupSpec
    W: WeightedPolynomial  # over x_0, ..., x_n

    @property
    def x0_free(self) -> bool:
        return not self.W.involves(0)


def cone(w: WeightedPolynomial, extra=()) -> WeightedPolynomial:
    """Image of ``w`` in k[x_0, ..., x_n], plus extra ``(coeff, exps over x_0..x_n)`` terms."""
    names = ("x0",) + tuple(w.variables)
    terms = [(c, (0,) + e) for c, e in w.terms]
    terms += [(Fraction(c), tuple(e)) for c, e in extra]
    return WeightedPolynomial(names, terms, None)


def _power_sum(exps: List[int]) -> WeightedPolynomial:
    n = len(exps)
    names = [f"x{i}" for i in range(1, n + 1)]
    terms = []
    for i, a in enumerate(exps):
        e = [0] * n
        e[i] = a
        terms.append((1, e))
    return polynomial(names, terms).with_weights()


def fermat(n: int) -> Case:
    w = _power_sum([n + 1] * n)
    return Case(f"fermat{n}", w, FULL, cone(w))


def doublecover(n: int) -> Case:
    w = _power_sum([2] + [2 * n] * (n - 1))
    return Case(f"doublecover{n}", w, FULL, cone(w))


def sylvester(n: int) -> Case:
    w = sylvester_polynomial(n)
    return Case(f"sylvester{n}", w, FULL, cone(w))


def _all_ones(n: int):
    return (1, tuple([1] * (n + 1)))


def cusp(n: int) -> Case:
    """Fermat sum plus x_0 x_1 ... x_n."""
    w = _power_sum([n + 1] * n)
    return Case(f"cusp{n}", w, FULL, cone(w, [_all_ones(n)]))


def cusp_doublecover(n: int) -> Case:
    w = _power_sum([2] + [2 * n] * (n - 1))
    return Case(f"cusp_doublecover{n}", w, FULL, cone(w, [_all_ones(n)]))


def odp(n: int) -> Case:
    """sum x_i^{n+1} - (n+1) x_0 ... x_n, including x_0^{n+1}."""
    w = _power_sum([n + 1] * n)
    x0pow = (1, tuple([n + 1] + [0] * n))
    prod = (-(n + 1), tuple([1] * (n + 1)))
    return Case(f"odp{n}", w, FULL, cone(w, [x0pow, prod]))


def odp_doublecover(n: int) -> Case:
    """x_1^2 + n (x_0^{2n} + x_2^{2n} + ... + x_n^{2n}) - 2n x_0 ... x_n.

    The coefficients put a node at [1 : n : 1 : ... : 1]; with unit
    coefficients (see :func:`odp_doublecover_literal`) the projective
    hypersurface is smooth and the cone has an isolated singularity.
    """
    w = _power_sum([2] + [2 * n] * (n - 1))
    terms = []
    for i in range(n + 1):
        e = [0] * (n + 1)
        e[i] = 2 if i == 1 else 2 * n
        terms.append((Fraction(1 if i == 1 else n), tuple(e)))
    terms.append((Fraction(-2 * n), tuple([1] * (n + 1))))
    W = WeightedPolynomial(("x0",) + tuple(w.variables), terms, None)
    return Case(f"odp_doublecover{n}", w, FULL, W)


def odp_doublecover_literal(n: int) -> Case:
    """x_1^2 + x_2^{2n} + ... + x_n^{2n} + x_0^{2n} + x_0 ... x_n (no node)."""
    w = _power_sum([2] + [2 * n] * (n - 1))
    x0pow = (1, tuple([2 * n] + [0] * n))
    return Case(f"odp_doublecover_literal{n}", w, FULL, cone(w, [x0pow, _all_ones(n)]))


def tacnode(sub: SubgroupSpec = FULL) -> Case:
    w = polynomial(["x", "y"], [(1, (2, 0)), (1, (0, 4))]).with_weights()
    return Case("tacnode" if sub.kind == "full" else f"tacnode_{sub.kind}", w, sub, cone(w))


# name, normal form terms over (x, y, z), weights, mu, w row
UNIMODAL: List[Tuple[str, list, Tuple[int, int, int, int], int, Tuple[int, ...]]] = [
    ("Q10", [(2, 0, 1), (0, 3, 0), (0, 0, 4)], (9, 8, 6, 24), 10,
     (4, 6, 7, 10, 12, 15, 16, 18, 24)),
    ("Q11", [(2, 0, 1), (0, 3, 0), (0, 1, 3)], (7, 6, 4, 18), 11,
     (2, 4, 5, 6, 8, 10, 11, 12, 14, 18)),
    ("Q12", [(2, 0, 1), (0, 3, 0), (0, 0, 5)], (6, 5, 3, 15), 12,
     (1, 3, 4, 4, 6, 7, 9, 9, 10, 12, 15)),
    ("Z11", [(2, 0, 0), (0, 3, 1), (0, 0, 5)], (15, 8, 6, 30), 11,
     (4, 6, 10, 12, 14, 16, 18, 22, 24, 30)),
    ("Z12", [(2, 0, 0), (0, 3, 1), (0, 1, 4)], (11, 6, 4, 22), 12,
     (2, 4, 6, 8, 10, 10, 12, 14, 16, 18, 22)),
    ("Z13", [(2, 0, 0), (0, 3, 1), (0, 0, 6)], (9, 5, 3, 18), 13,
     (1, 3, 4, 6, 7, 8, 9, 10, 12, 13, 15, 18)),
    ("S11", [(2, 0, 1), (1, 2, 0), (0, 0, 4)], (6, 5, 4, 16), 11,
     (2, 3, 4, 6, 7, 8, 10, 11, 12, 16)),
    ("S12", [(2, 0, 1), (1, 2, 0), (0, 1, 3)], (5, 4, 3, 13), 12,
     (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 13)),
    ("W12", [(2, 0, 0), (0, 4, 0), (0, 0, 5)], (10, 5, 4, 20), 12,
     (2, 3, 6, 7, 8, 10, 11, 12, 15, 16, 20)),
    ("W13", [(2, 0, 0), (0, 4, 0), (0, 1, 4)], (8, 4, 3, 16), 13,
     (1, 2, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16)),
    ("E12", [(2, 0, 0), (0, 3, 0), (0, 0, 7)], (21, 14, 6, 42), 12,
     (4, 10, 12, 16, 18, 22, 24, 28, 30, 36, 42)),
    ("E13", [(2, 0, 0), (0, 3, 0), (0, 1, 5)], (15, 10, 4, 30), 13,
     (2, 6, 8, 10, 12, 14, 16, 18, 20, 22, 26, 30)),
    ("E14", [(2, 0, 0), (0, 3, 0), (0, 0, 8)], (12, 8, 3, 24), 14,
     (1, 4, 6, 7, 9, 10, 12, 13, 15, 16, 18, 21, 24)),
    ("U12", [(3, 0, 0), (0, 3, 0), (0, 0, 4)], (4, 4, 3, 12), 12,
     (1, 2, 2, 4, 5, 5, 6, 8, 8, 9, 12)),
]


def unimodal_names() -> List[str]:
    return [row[0] for row in UNIMODAL]


def unimodal_row(name: str):
    for row in UNIMODAL:
        if row[0] == name:
            return row
    raise KeyError(name)


def unimodal(name: str) -> Case:
    _, exps, wts, _, _ = unimodal_row(name)
    w = polynomial(["x", "y", "z"], [(1, e) for e in exps], wts[:3], wts[3])
    return Case(name, w, PHI_GM, cone(w))


def by_name(name: str) -> Case:
    """Resolve names like ``fermat3``, ``cusp_doublecover2``, ``E12``, ``tacnode_phi_gm``."""
    if name in unimodal_names():
        return unimodal(name)
    if name == "tacnode":
        return tacnode(FULL)
    if name == "tacnode_phi_gm":
        return tacnode(PHI_GM)
    families = {
        "fermat": fermat, "doublecover": doublecover, "sylvester": sylvester,
        "cusp_doublecover": cusp_doublecover, "cusp": cusp,
        "odp_doublecover_literal": odp_doublecover_literal,
        "odp_doublecover": odp_doublecover, "odp": odp,
    }
    for prefix in sorted(families, key=len, reverse=True):
        rest = name[len(prefix):]
        if name.startswith(prefix) and rest.isdigit():
            return families[prefix](int(rest))
    raise KeyError(f"unknown built-in case {name!r}")
