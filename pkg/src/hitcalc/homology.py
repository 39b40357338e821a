"""The divided power algebra dual to the polynomial algebra.

A d-monomial a_1^(d_1)...a_n^(d_n) is the dual basis element of the
monomial u_1^{d_1}...u_n^{d_n}; both sides share one enumeration, so the
pairing of a d-element with a polynomial is just the parity of the number
of common exponent tuples.  The product follows the divided power rule
a^(d) a^(e) = C(d+e, d) a^(d+e).

``dual_sq`` is the transpose of the squaring operation across the pairing:
on a d-monomial it sends a^(m) to the sum over compositions k = k_1+...+k_n
of prod_i C(m_i - k_i, k_i) a^(m-k), which is exactly how the transposed
Cartan matrix acts on a sparse element.  The primitive subspace of degree d
is the joint kernel of the dual squares of 2-power degree; its dimension
matches the cohit dimension, a cross-check of the two code paths that the
test suite exercises rather than assumes.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .budget import Budget, DEFAULT_BUDGET
from .gf2 import EchelonBasis
from .hit import hit_basis
from .steenrod import Polynomial, degree_index, monomial_count

__all__ = [
    "DMonomial",
    "DElement",
    "PrimitiveBasis",
    "pair",
    "dp_product",
    "dual_sq",
    "primitive_basis",
    "dual_kameko_up",
    "zeta_element",
    "parse_dmonomial",
    "parse_delement",
]


@dataclass(frozen=True, order=True)
class DMonomial:
    """A divided-power monomial a_1^(d_1)...a_n^(d_n)."""

    dexponents: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(e < 0 for e in self.dexponents):
            raise ValueError("divided-power exponents must be non-negative")

    @property
    def n(self) -> int:
        return len(self.dexponents)

    @property
    def degree(self) -> int:
        return sum(self.dexponents)

    def __str__(self) -> str:
        return ".".join(f"({e})" for e in self.dexponents)


class DElement:
    """A finite mod-2 sum of d-monomials in a fixed number of variables."""

    __slots__ = ("terms", "n")

    def __init__(self, terms: Iterable[DMonomial], n: int):
        collected: set[DMonomial] = set()
        for t in terms:
            if t.n != n:
                raise ValueError("variable count mismatch")
            collected.symmetric_difference_update((t,))
        self.terms: frozenset[DMonomial] = frozenset(collected)
        self.n = n

    @classmethod
    def zero(cls, n: int) -> "DElement":
        return cls((), n)

    @classmethod
    def from_tuples(cls, tuples: Iterable[tuple[int, ...]], n: int) -> "DElement":
        return cls((DMonomial(t) for t in tuples), n)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int | None:
        degs = {t.degree for t in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("d-element is not homogeneous")
        return degs.pop()

    def tuples(self) -> frozenset[tuple[int, ...]]:
        return frozenset(t.dexponents for t in self.terms)

    def __add__(self, other: "DElement") -> "DElement":
        if self.n != other.n:
            raise ValueError("variable count mismatch")
        return DElement(self.terms ^ other.terms, self.n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, self.terms))

    def sorted_terms(self) -> list[DMonomial]:
        return sorted(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "+".join(str(t) for t in self.sorted_terms())


def parse_dmonomial(text: str) -> DMonomial:
    """Parse the parenthesized dot format, e.g. '(0).(15).(15).(11)'."""
    parts = text.strip().split(".")
    exps = []
    for p in parts:
        p = p.strip()
        if not (p.startswith("(") and p.endswith(")")):
            raise ValueError(f"bad d-monomial piece {p!r}")
        exps.append(int(p[1:-1]))
    return DMonomial(tuple(exps))


def parse_delement(text: str, n: int | None = None) -> DElement:
    parts = [p for p in (s.strip() for s in text.split("+")) if p and p != "0"]
    monos = [parse_dmonomial(p) for p in parts]
    if n is None:
        if not monos:
            raise ValueError("cannot infer variable count of the zero element")
        n = monos[0].n
    return DElement(monos, n)


# -- pairing and product ---------------------------------------------------------


def pair(xi: DElement, f: Polynomial) -> int:
    """The duality pairing: parity of coinciding exponent tuples."""
    if xi.n != f.n:
        raise ValueError("variable count mismatch in pairing")
    xtuples = xi.tuples()
    return sum(1 for m in f.terms if m.exponents in xtuples) & 1


def dp_product(x: DMonomial, y: DMonomial) -> DElement:
    """Divided-power product: one d-monomial or zero, by Lucas on each variable."""
    if x.n != y.n:
        raise ValueError("variable count mismatch")
    for a, b in zip(x.dexponents, y.dexponents):
        if a & b:  # C(a+b, a) is even
            return DElement.zero(x.n)
    return DElement(
        (DMonomial(tuple(a + b for a, b in zip(x.dexponents, y.dexponents))),), x.n
    )


# -- the transposed squaring action ----------------------------------------------


@functools.lru_cache(maxsize=4096)
def _dual_moves(m: int) -> tuple[int, ...]:
    """All k with C(m - k, k) odd, ascending."""
    return tuple(k for k in range(m // 2 + 1) if (k & (m - 2 * k)) == 0)


def dual_sq_targets(k: int, dexps: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Exponent tuples of the terms of the degree-lowering dual square."""
    n = len(dexps)
    if k == 0:
        yield dexps
        return
    suffix_cap = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_cap[i] = suffix_cap[i + 1] + dexps[i] // 2
    if k > suffix_cap[0]:
        return
    target = list(dexps)

    def recurse(i: int, rem: int) -> Iterator[tuple[int, ...]]:
        if i == n - 1:
            if rem <= dexps[i] // 2 and (rem & (dexps[i] - 2 * rem)) == 0:
                target[i] = dexps[i] - rem
                yield tuple(target)
                target[i] = dexps[i]
            return
        for ki in _dual_moves(dexps[i]):
            if ki > rem:
                break
            if rem - ki > suffix_cap[i + 1]:
                continue
            target[i] = dexps[i] - ki
            yield from recurse(i + 1, rem - ki)
        target[i] = dexps[i]

    yield from recurse(0, k)


def dual_sq(k: int, xi: DElement) -> DElement:
    """The transpose of Sq^k across the pairing; lowers degree by k."""
    if k < 0:
        raise ValueError("dual square needs k >= 0")
    acc: set[DMonomial] = set()
    for t in xi.terms:
        for target in dual_sq_targets(k, t.dexponents):
            acc.symmetric_difference_update((DMonomial(target),))
    return DElement(acc, xi.n)


# -- the primitive subspace ------------------------------------------------------


@dataclass(frozen=True)
class PrimitiveBasis:
    n: int
    d: int
    echelon: EchelonBasis  # canonical rows over the degree-d enumeration

    @property
    def dimension(self) -> int:
        return self.echelon.rank

    def elements(self) -> list[DElement]:
        tuples = list(degree_index(self.n, self.d))
        out = []
        for row in self.echelon.row_ints():
            terms = []
            b = row
            while b:
                low = b & -b
                terms.append(tuples[low.bit_length() - 1])
                b ^= low
            out.append(DElement.from_tuples(terms, self.n))
        return out

    def contains(self, xi: DElement) -> bool:
        return self.echelon.reduce_int(_element_bits(xi, self.n, self.d)) == 0


def _element_bits(xi: DElement, n: int, d: int) -> int:
    index = degree_index(n, d)
    bits = 0
    for t in xi.terms:
        bits ^= 1 << index[t.dexponents]
    return bits


def _square_degrees(d: int) -> list[int]:
    out = []
    k = 1
    while 2 * k <= d:
        out.append(k)
        k *= 2
    return out


_primitive_cache: dict[tuple[int, int], PrimitiveBasis] = {}

#: Above this ambient dimension the joint-kernel matrix is not assembled from
#: the transposed action; the kernel of the (identical) hit row space is used.
DUAL_ASSEMBLY_LIMIT = 60_000


def primitive_basis(n: int, d: int, budget: Budget | None = None) -> PrimitiveBasis:
    """Joint kernel of the dual squares of 2-power degree <= d, echelonized."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    cached = _primitive_cache.get((n, d))
    if cached is not None:
        return cached
    budget = budget or DEFAULT_BUDGET
    dim = monomial_count(n, d)
    budget.check_bytes(dim * ((dim + 63) // 64) * 8, f"primitive space ({n}, {d})")

    if dim > DUAL_ASSEMBLY_LIMIT:
        stacked = hit_basis(n, d, budget=budget).basis
    else:
        index = degree_index(n, d)
        rows: dict[tuple[int, tuple[int, ...]], list[int]] = {}
        for src, i in index.items():
            for k in _square_degrees(d):
                for target in dual_sq_targets(k, src):
                    rows.setdefault((k, target), []).append(i)
        stacked = EchelonBasis(dim, budget=budget)
        for key in sorted(rows):
            stacked.insert_indices(rows[key])
    basis = PrimitiveBasis(n, d, stacked.kernel(budget=budget))
    _primitive_cache[(n, d)] = basis
    return basis


def clear_caches() -> None:
    _primitive_cache.clear()


# -- the doubling lift and the distinguished elements ----------------------------


def dual_kameko_up(xi: DElement) -> DElement:
    """Termwise a_i^(e) -> a_i^(2e+1); lifts primitives to primitives."""
    return DElement(
        (DMonomial(tuple(2 * e + 1 for e in t.dexponents)) for t in xi.terms),
        xi.n,
    )


def zeta_element(family: str, t: int, s: int, u: int) -> DElement:
    """The distinguished 4-variable primitives in degree 2^(t+s+u) + 2^(t+s) + 2^t - 3.

    Family A requires (s, u) = (1, 2) and t >= 2; family B requires
    (t, s) = (1, 2) and u >= 1; family C requires t, s, u >= 2.
    """
    fam = family.upper()
    if fam == "A":
        if (s, u) != (1, 2) or t < 2:
            raise ValueError("family A needs s = 1, u = 2 and t >= 2")
        p = 1 << t
        tuples = [
            (0, 4 * p - 1, 4 * p - 1, 3 * p - 1),
            (0, 4 * p - 1, 5 * p - 1, 2 * p - 1),
            (0, 6 * p - 1, 3 * p - 1, 2 * p - 1),
            (0, 7 * p - 1, 2 * p - 1, 2 * p - 1),
        ]
    elif fam == "B":
        if (t, s) != (1, 2) or u < 1:
            raise ValueError("family B needs t = 1, s = 2 and u >= 1")
        a = (1 << (u + 3)) - 1
        tuples = [
            (a, 3, 3, 2),
            (a, 3, 4, 1),
            (a, 5, 2, 1),
            (a, 6, 1, 1),
        ]
    elif fam == "C":
        if t < 2 or s < 2 or u < 2:
            raise ValueError("family C needs t, s, u >= 2")
        tuples = [
            (0, (1 << t) - 1, (1 << (s + t)) - 1, (1 << (s + t + u)) - 1)
        ]
    else:
        raise ValueError(f"unknown family {family!r}; expected A, B or C")
    element = DElement.from_tuples(tuples, 4)
    expected = (1 << (t + s + u)) + (1 << (t + s)) + (1 << t) - 3
    assert element.degree == expected
    return element
