"""Equivariant semiuniversal unfoldings.

For each Jacobi basis monomial ``x^j`` look for a positive integer ``w_j``
with ``chi = w_j chi_0 + sum_i j_i chi_i`` in the character group.  Since
``chi_0`` has infinite order, ``w_j`` is forced by the integer component
(``w_j = (h - sum j_i d_i) / d_0``) and only the torsion part remains to be
checked.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .symmetry import CharacterLattice
from .wpoly import WeightedPolynomial, jacobi_monomial_basis


class UnknownParameter(KeyError):
    pass


@dataclass(frozen=True)
class UnfoldingDatum:
    j: Tuple[int, ...]
    w_j: Optional[int]
    name: str = ""


def _solve_wj(L: CharacterLattice, j: Sequence[int]) -> Optional[int]:
    full = (0,) + tuple(j)
    rest = L.sub_(L.chi, L.mono_class(full))
    if L.d0 <= 0 or rest[0] % L.d0:
        return None
    c = rest[0] // L.d0
    if c <= 0:
        return None
    if L.scale(L.chi0, c) != rest:
        return None
    return c


def unfolding_basis(w: WeightedPolynomial, L: CharacterLattice) -> Tuple[List[Tuple[int, ...]], List[UnfoldingDatum]]:
    """Return the Jacobi basis ``J_w`` and the equivariant positive part ``J``."""
    Jw = jacobi_monomial_basis(w.with_weights())
    found = [(j, _solve_wj(L, j)) for j in Jw]
    kept = [(j, c) for j, c in found if c is not None]
    weights = [c for _, c in kept]
    distinct = len(set(weights)) == len(weights)
    J = []
    for j, c in kept:
        name = f"u{c}" if distinct else "u_" + "".join(str(x) for x in j)
        J.append(UnfoldingDatum(tuple(j), c, name))
    return [tuple(j) for j in Jw], J


def dim_U(w: WeightedPolynomial, L: CharacterLattice) -> int:
    return len(unfolding_basis(w, L)[1])


def build_unfolded_polynomial(w: WeightedPolynomial, L: CharacterLattice,
                              assignment: Dict[str, Fraction], x0_name: str = "x0") -> WeightedPolynomial:
    """``w + sum_j u_j x_0^{w_j} x^j`` as a polynomial over x_0..x_n."""
    _, J = unfolding_basis(w, L)
    by_name = {d.name: d for d in J}
    for key in assignment:
        if key not in by_name:
            raise UnknownParameter(key)
    terms = [(c, (0,) + tuple(e)) for c, e in w.terms]
    for key, val in assignment.items():
        d = by_name[key]
        terms.append((Fraction(val), (d.w_j,) + d.j))
    W = WeightedPolynomial((x0_name,) + tuple(w.variables), terms, None)
    for _, e in W.terms:
        assert L.mono_class(e) == L.chi, f"monomial {e} is not of degree chi"
    return W
