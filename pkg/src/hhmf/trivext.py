"""Graded quiver algebras, trivial extensions and their Hochschild cohomology.

A :class:`QuiverAlgebra` is finite dimensional with a basis of elements
``e_l a e_r`` (left vertex ``l``, right vertex ``r``) and sparse structure
constants.  Hochschild cohomology is computed from the normalized cochain
complex relative to the span ``E`` of the vertex idempotents: an ``r``-cochain
of internal degree ``s`` sends a composable chain ``(a_1, ..., a_r)`` of
non-idempotent basis elements to an element of ``e_{l(a_1)} A e_{r(a_r)}`` of
degree ``sum deg a_i + s``.  Its Hochschild degree is ``p = r + s``.

The differential is::

    (d f)(a_1, ..., a_{r+1}) = (-1)^{s |a_1|} a_1 f(a_2, ...)
                             + sum_i (-1)^i f(..., a_i a_{i+1}, ...)
                             + (-1)^{r+1} f(a_1, ..., a_r) a_{r+1}
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import exact

Vec = Dict[int, Fraction]


class TrivExtError(RuntimeError):
    pass


class TruncationExceeded(TrivExtError):
    pass


class NotAssociative(TrivExtError):
    pass


@dataclass
class QuiverAlgebra:
    names: List[str]
    left: List[int]
    right: List[int]
    degree: List[int]
    mult: Dict[Tuple[int, int], Vec]
    vertices: List[object]
    idempotents: List[int]  # basis index of e_v, per vertex

    @property
    def dim(self) -> int:
        return len(self.names)

    def product(self, a: int, b: int) -> Vec:
        return self.mult.get((a, b), {})

    def multiply(self, x: Vec, y: Vec) -> Vec:
        out: Vec = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, v in self.product(a, b).items():
                    s = out.get(c, 0) + ca * cb * v
                    if s:
                        out[c] = s
                    else:
                        out.pop(c, None)
        return out

    def index(self, name: str) -> int:
        return self.names.index(name)

    def radical_basis(self) -> List[int]:
        """Basis elements that are not vertex idempotents (a basis of A/E)."""
        idem = set(self.idempotents)
        return [i for i in range(self.dim) if i not in idem]

    def check(self, full_limit: int = 64, samples: int = 4000, seed: int = 0) -> None:
        """Check grading, vertex compatibility, unit and associativity.

        All composable triples are checked up to ``full_limit`` basis elements,
        a deterministic random sample beyond that.
        """
        n = self.dim
        for (a, b), prod in self.mult.items():
            if self.right[a] != self.left[b] and prod:
                raise TrivExtError(f"{self.names[a]}*{self.names[b]} is not composable")
            for c in prod:
                if self.degree[c] != self.degree[a] + self.degree[b]:
                    raise TrivExtError("product is not homogeneous")
                if self.left[c] != self.left[a] or self.right[c] != self.right[b]:
                    raise TrivExtError("product leaves e_l A e_r")
        for i in range(n):
            for v, e in enumerate(self.idempotents):
                want = {i: Fraction(1)} if self.left[i] == v else {}
                if self.product(e, i) != want:
                    raise TrivExtError(f"e_{v} does not act correctly on {self.names[i]}")
                want = {i: Fraction(1)} if self.right[i] == v else {}
                if self.product(i, e) != want:
                    raise TrivExtError(f"e_{v} does not act correctly on {self.names[i]}")
        if n <= full_limit:
            triples = ((a, b, c) for a in range(n) for b in range(n) for c in range(n)
                       if self.right[a] == self.left[b] and self.right[b] == self.left[c])
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        for a, b, c in triples:
            lhs = self.multiply(self.product(a, b), {c: Fraction(1)})
            rhs = self.multiply({a: Fraction(1)}, self.product(b, c))
            if lhs != rhs:
                raise NotAssociative(f"({self.names[a]} {self.names[b]}) {self.names[c]}")


def tensor_A_quiver_algebra(lengths: Sequence[int]) -> QuiverAlgebra:
    """Tensor product of linearly oriented A_m path algebras (commuting squares).

    Vertices are points of the box prod range(m_i); the basis consists of the
    comparable pairs ``v <= w`` (the unique path class from v to w).
    """
    if any(m < 1 for m in lengths):
        raise TrivExtError("chain lengths must be positive")
    vertices = list(product(*[range(m) for m in lengths]))
    vindex = {v: i for i, v in enumerate(vertices)}
    pairs = []
    for v in vertices:
        for w in vertices:
            if all(a <= b for a, b in zip(v, w)):
                pairs.append((v, w))
    pindex = {p: i for i, p in enumerate(pairs)}

    def name(v, w):
        if v == w:
            return "e" + "".join(map(str, v))
        return "p" + "".join(map(str, v)) + "_" + "".join(map(str, w))

    names = [name(v, w) for v, w in pairs]
    left = [vindex[v] for v, _ in pairs]
    right = [vindex[w] for _, w in pairs]
    mult: Dict[Tuple[int, int], Vec] = {}
    by_left: Dict[object, List[Tuple[object, int]]] = {}
    for (v, w), i in pindex.items():
        by_left.setdefault(v, []).append((w, i))
    for (v, w), i in pindex.items():
        for z, j in by_left[w]:
            mult[(i, j)] = {pindex[(v, z)]: Fraction(1)}
    idem = [pindex[(v, v)] for v in vertices]
    return QuiverAlgebra(names, left, right, [0] * len(pairs), mult, vertices, idem)


def trivial_extension(A0: QuiverAlgebra, d: int) -> QuiverAlgebra:
    """A0 + Hom(A0, k)[-d] with (a, f)(b, g) = (ab, ag + fb)."""
    if d < 1:
        raise TrivExtError("d must be positive")
    n = A0.dim
    names = list(A0.names) + [nm + "*" for nm in A0.names]
    left = list(A0.left) + list(A0.right)
    right = list(A0.right) + list(A0.left)
    degree = list(A0.degree) + [d - g for g in A0.degree]
    mult: Dict[Tuple[int, int], Vec] = {}

    def put(a, b, c, v):
        slot = mult.setdefault((a, b), {})
        s = slot.get(c, 0) + v
        if s:
            slot[c] = s
        else:
            slot.pop(c, None)

    for (a, b), prod in A0.mult.items():
        for c, v in prod.items():
            put(a, b, c, Fraction(v))
    # (a g*)(x) = g*(x a): the x* coefficient of a.g* is [x a]_g
    # (f* b)(x) = f*(b x): the x* coefficient of f*.b is [b x]_f
    for (x, a), prod in A0.mult.items():
        for g, v in prod.items():
            put(a, n + g, n + x, v)
    for (b, x), prod in A0.mult.items():
        for f, v in prod.items():
            put(n + f, b, n + x, v)
    mult = {k: v for k, v in mult.items() if v}
    return QuiverAlgebra(names, left, right, degree, mult, list(A0.vertices), list(A0.idempotents))


def cusp_algebra() -> QuiverAlgebra:
    """Trivial extension of A_2 in degree 1, with the basis renamed e1, e2, u, v, uv, vu."""
    T = trivial_extension(tensor_A_quiver_algebra([2]), 1)
    rename = {"e0": "e1", "e1": "e2", "p0_1": "u", "p0_1*": "v", "e0*": "uv", "e1*": "vu"}
    T.names = [rename[nm] for nm in T.names]
    return T


def frobenius_form(T: QuiverAlgebra, A0_dim: int) -> List[List[int]]:
    """Gram matrix of (x, y) -> coefficient sum of e_v^* in x y."""
    duals = {A0_dim + e for e in T.idempotents}
    n = T.dim
    return [[sum(v for c, v in T.product(x, y).items() if c in duals) for y in range(n)]
            for x in range(n)]


# ---------------------------------------------------------------------------
# Hochschild complex relative to E
# ---------------------------------------------------------------------------

Chain = Tuple[int, ...]
Cochain = Tuple[Chain, int]


class RelativeHochschild:
    """Normalized Hochschild cochains of A relative to the vertex idempotents."""

    def __init__(self, A: QuiverAlgebra, r_max: int = 12):
        self.A = A
        self.r_max = r_max
        self.args = A.radical_basis()
        self.arg_set = set(self.args)
        self.by_left: Dict[int, List[int]] = {}
        for a in self.args:
            self.by_left.setdefault(A.left[a], []).append(a)
        self.targets: Dict[Tuple[int, int, int], List[int]] = {}
        for c in range(A.dim):
            self.targets.setdefault((A.left[c], A.right[c], A.degree[c]), []).append(c)
        # factorizations x -> [(p, q, coeff)] with p q = ... + coeff x
        self.factor: Dict[int, List[Tuple[int, int, Fraction]]] = {}
        for p in self.args:
            for q in self.args:
                for x, v in A.product(p, q).items():
                    if x in self.arg_set:
                        self.factor.setdefault(x, []).append((p, q, v))
        self.dmin = min((A.degree[a] for a in self.args), default=0)
        self.dmax = max((A.degree[a] for a in self.args), default=0)
        self._basis: Dict[Tuple[int, int], List[Cochain]] = {}
        self._rank: Dict[Tuple[int, int], int] = {}

    # -- cochain bases -----------------------------------------------------------
    def chains(self, r: int, lo: int, hi: int) -> Iterator[Chain]:
        """Composable chains of length r >= 1 with total degree in [lo, hi]."""
        A = self.A

        def rec(prefix, last, acc, remaining):
            if remaining == 0:
                if lo <= acc <= hi:
                    yield tuple(prefix)
                return
            if acc + remaining * self.dmin > hi or acc + remaining * self.dmax < lo:
                return
            nxt = self.args if last is None else self.by_left.get(A.right[last], [])
            for a in nxt:
                prefix.append(a)
                yield from rec(prefix, a, acc + A.degree[a], remaining - 1)
                prefix.pop()

        if r == 0:
            return iter([()])
        return rec([], None, 0, r)

    def basis(self, r: int, s: int) -> List[Cochain]:
        key = (r, s)
        if key in self._basis:
            return self._basis[key]
        if r > self.r_max:
            raise TruncationExceeded(f"cochain length {r} exceeds the bound {self.r_max}")
        A = self.A
        out: List[Cochain] = []
        if r < 0:
            pass
        elif r == 0:
            for c in range(A.dim):
                if A.left[c] == A.right[c] and A.degree[c] == s:
                    out.append(((), c))
        else:
            degs = set(A.degree)
            lo, hi = min(degs) - s, max(degs) - s
            for ch in self.chains(r, lo, hi):
                tot = sum(A.degree[a] for a in ch) + s
                for c in self.targets.get((A.left[ch[0]], A.right[ch[-1]], tot), []):
                    out.append((ch, c))
        self._basis[key] = out
        return out

    # -- differential -------------------------------------------------------------
    def delta_column(self, phi: Cochain, s: int) -> Dict[Cochain, Fraction]:
        """Image of the elementary cochain ``phi`` (chain -> target)."""
        A = self.A
        chain, c = phi
        r = len(chain)
        out: Dict[Cochain, Fraction] = {}

        def add(key, v):
            t = out.get(key, 0) + v
            if t:
                out[key] = t
            else:
                out.pop(key, None)

        lv = A.left[c] if r == 0 else A.left[chain[0]]
        rv = A.right[c] if r == 0 else A.right[chain[-1]]
        # first term: b * phi(rest)
        for b in self.args:
            if A.right[b] != lv:
                continue
            sign = -1 if (s * A.degree[b]) % 2 else 1
            for y, v in A.product(b, c).items():
                add(((b,) + chain, y), sign * v)
        # last term: phi(rest) * b
        sign_last = -1 if (r + 1) % 2 else 1
        for b in self.by_left.get(rv, []):
            for y, v in A.product(c, b).items():
                add((chain + (b,), y), sign_last * v)
        # middle terms
        for j, x in enumerate(chain):
            sign = -1 if (j + 1) % 2 else 1
            for p, q, v in self.factor.get(x, []):
                add((chain[:j] + (p, q) + chain[j + 1:], c), sign * v)
        return out

    def apply(self, cochain: Dict[Cochain, Fraction], s: int) -> Dict[Cochain, Fraction]:
        out: Dict[Cochain, Fraction] = {}
        for phi, coeff in cochain.items():
            for key, v in self.delta_column(phi, s).items():
                t = out.get(key, 0) + coeff * v
                if t:
                    out[key] = t
                else:
                    out.pop(key, None)
        return out

    def rank(self, r: int, s: int) -> int:
        """Rank of delta: C^r_s -> C^{r+1}_s."""
        key = (r, s)
        if key in self._rank:
            return self._rank[key]
        if r < 0:
            return 0
        cols = (self.delta_column(phi, s) for phi in self.basis(r, s))
        rk = exact.sparse_rank(cols)
        self._rank[key] = rk
        return rk

    def hh_dim(self, p: int, s: int) -> int:
        r = p - s
        if r < 0:
            return 0
        return len(self.basis(r, s)) - self.rank(r, s) - self.rank(r - 1, s)


class FullBarComplex:
    """Absolute, unnormalized Hochschild cochains Hom(A^{(x) r}, A)_s.

    Arguments are arbitrary tuples of basis elements; only useful as an
    oracle for tiny algebras.
    """

    def __init__(self, A: QuiverAlgebra, r_max: int = 6):
        self.A = A
        self.r_max = r_max
        self.factor: Dict[int, List[Tuple[int, int, Fraction]]] = {}
        for (p, q), prod in A.mult.items():
            for x, v in prod.items():
                self.factor.setdefault(x, []).append((p, q, v))

    def basis(self, r: int, s: int) -> List[Cochain]:
        if r < 0:
            return []
        if r > self.r_max:
            raise TruncationExceeded(f"cochain length {r} exceeds the bound {self.r_max}")
        A = self.A
        out = []
        for ch in product(range(A.dim), repeat=r):
            tot = sum(A.degree[a] for a in ch) + s
            for c in range(A.dim):
                if A.degree[c] == tot:
                    out.append((ch, c))
        return out

    def delta_column(self, phi: Cochain, s: int) -> Dict[Cochain, Fraction]:
        A = self.A
        chain, c = phi
        r = len(chain)
        out: Dict[Cochain, Fraction] = {}

        def add(key, v):
            t = out.get(key, 0) + v
            if t:
                out[key] = t
            else:
                out.pop(key, None)

        for b in range(A.dim):
            sign = -1 if (s * A.degree[b]) % 2 else 1
            for y, v in A.product(b, c).items():
                add(((b,) + chain, y), sign * v)
            sign_last = -1 if (r + 1) % 2 else 1
            for y, v in A.product(c, b).items():
                add((chain + (b,), y), sign_last * v)
        for j, x in enumerate(chain):
            sign = -1 if (j + 1) % 2 else 1
            for p, q, v in self.factor.get(x, []):
                add((chain[:j] + (p, q) + chain[j + 1:], c), sign * v)
        return out

    def rank(self, r: int, s: int) -> int:
        if r < 0:
            return 0
        return exact.sparse_rank(self.delta_column(phi, s) for phi in self.basis(r, s))

    def hh_dim(self, p: int, s: int) -> int:
        r = p - s
        if r < 0:
            return 0
        return len(self.basis(r, s)) - self.rank(r, s) - self.rank(r - 1, s)


def hochschild_algebra(A: QuiverAlgebra, p_max: int, s_min: int, r_max: int = 12) -> Dict[Tuple[int, int], int]:
    """dim HH^p(A)_s for 0 <= p <= p_max and s_min <= s <= 0."""
    H = RelativeHochschild(A, r_max=r_max)
    out = {}
    for p in range(p_max + 1):
        for s in range(s_min, 1):
            out[(p, s)] = H.hh_dim(p, s)
    return out


@dataclass
class EulerReport:
    cocycle: bool
    nontrivial: bool
    leibniz: bool
    zero: bool

    def to_json(self) -> dict:
        return {"cocycle": self.cocycle, "nontrivial": self.nontrivial,
                "leibniz": self.leibniz, "zero": self.zero}


def euler_derivation(A: QuiverAlgebra, H: Optional[RelativeHochschild] = None) -> Tuple[Dict[Cochain, Fraction], EulerReport]:
    """eu(x) = deg(x) x as a 1-cochain of internal degree 0."""
    H = H or RelativeHochschild(A, r_max=2)
    eu = {((a,), a): Fraction(A.degree[a]) for a in H.args if A.degree[a]}
    cocycle = not H.apply(eu, 0)
    ech = exact.SparseEchelon()
    for phi in H.basis(0, 0):
        ech.add(H.delta_column(phi, 0))
    nontrivial = bool(eu) and not ech.contains(eu)
    leibniz = True
    for (a, b), prod in A.mult.items():
        lhs = {c: v * A.degree[c] for c, v in prod.items() if v * A.degree[c]}
        rhs = {c: v * (A.degree[a] + A.degree[b]) for c, v in prod.items()
               if v * (A.degree[a] + A.degree[b])}
        if lhs != rhs:
            leibniz = False
            break
    return eu, EulerReport(cocycle, nontrivial, leibniz, not eu)
