"""The polynomial algebra Z/2[u_1,...,u_n] with its squaring operations.

Monomials are exponent tuples; a polynomial is a mod-2 set of monomials.
``sq`` implements the degree-k squaring operation through the Cartan
formula: Sq^k(u^e) is the sum over compositions k = k_1 + ... + k_n of
prod_i C(e_i, k_i) u^(e+k), with binomial parity decided by Lucas'
theorem (C(a, b) is odd iff b's binary digits are dominated by a's, i.e.
b is a submask of a).  Since the target exponent tuple e+k determines the
composition, no cancellation happens inside a single monomial image.

The ascending lexicographic enumeration of the degree-d monomials defined
here is the global coordinate system used by every bit row in the package.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterator, NamedTuple

__all__ = [
    "Monomial",
    "Polynomial",
    "alpha",
    "mu",
    "generic_degree",
    "GenericDegree",
    "enumerate_monomials",
    "degree_index",
    "monomial_count",
    "sq_monomial",
    "sq",
    "omega_sequence",
    "parse_monomial",
    "parse_polynomial",
]


# -- arithmetic helpers --------------------------------------------------------


def alpha(m: int) -> int:
    """Number of ones in the binary expansion of m."""
    if m < 0:
        raise ValueError("alpha is defined for non-negative integers")
    return m.bit_count()


def mu(ell: int) -> int:
    """Least r >= 0 with alpha(ell + r) <= r."""
    if ell < 0:
        raise ValueError("mu is defined for non-negative integers")
    r = 0
    while alpha(ell + r) > r:
        r += 1
    return r


class GenericDegree(NamedTuple):
    value: int
    constraint_met: bool  # whether mu(ell) < k


def generic_degree(k: int, t: int, ell: int) -> GenericDegree:
    """k(2^t - 1) + ell * 2^t, flagged with whether mu(ell) < k."""
    value = k * ((1 << t) - 1) + (ell << t)
    return GenericDegree(value, mu(ell) < k)


def binom_odd(a: int, b: int) -> bool:
    """Parity of C(a, b) for 0 <= b <= a (Lucas); False outside that range."""
    if b < 0 or b > a:
        return False
    return (b & (a - b)) == 0


# -- monomials and polynomials -------------------------------------------------


@dataclass(frozen=True, order=True)
class Monomial:
    """A monomial u_1^{e_1}...u_n^{e_n}; ordering is ascending lex on exponents."""

    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(e < 0 for e in self.exponents):
            raise ValueError("exponents must be non-negative")

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if len(self.exponents) != len(other.exponents):
            raise ValueError("variable count mismatch")
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __str__(self) -> str:
        return ".".join(str(e) for e in self.exponents)


class Polynomial:
    """A finite mod-2 sum of monomials in a fixed number of variables."""

    __slots__ = ("terms", "n")

    def __init__(self, terms: Iterator[Monomial] | tuple | frozenset, n: int):
        collected: set[Monomial] = set()
        for t in terms:
            if t.n != n:
                raise ValueError("variable count mismatch")
            collected.symmetric_difference_update((t,))
        self.terms: frozenset[Monomial] = frozenset(collected)
        self.n = n

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls((), n)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int | None:
        """Common degree of the terms, or None for the zero polynomial."""
        degs = {t.degree for t in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop()

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if self.n != other.n:
            raise ValueError("variable count mismatch")
        return Polynomial(self.terms ^ other.terms, self.n)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.n != other.n:
            raise ValueError("variable count mismatch")
        acc: set[Monomial] = set()
        for a in self.terms:
            for b in other.terms:
                acc.symmetric_difference_update((a * b,))
        return Polynomial(acc, self.n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, self.terms))

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "+".join(str(t) for t in self.sorted_terms())


def parse_monomial(text: str) -> Monomial:
    """Parse the dot format, e.g. '0.15.15.11'."""
    try:
        return Monomial(tuple(int(p) for p in text.strip().split(".")))
    except ValueError as exc:
        raise ValueError(f"bad monomial {text!r}") from exc


def parse_polynomial(text: str, n: int | None = None) -> Polynomial:
    parts = [p for p in (s.strip() for s in text.split("+")) if p and p != "0"]
    monos = [parse_monomial(p) for p in parts]
    if n is None:
        if not monos:
            raise ValueError("cannot infer variable count of the zero polynomial")
        n = monos[0].n
    return Polynomial(monos, n)


# -- the global monomial enumeration -------------------------------------------


def monomial_count(n: int, d: int) -> int:
    """C(d+n-1, n-1): the number of degree-d monomials in n variables."""
    num, den = 1, 1
    for i in range(1, n):
        num *= d + i
        den *= i
    return num // den


def _enumerate_tuples(n: int, d: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        yield (d,)
        return
    for e1 in range(d + 1):
        for rest in _enumerate_tuples(n - 1, d - e1):
            yield (e1,) + rest


@functools.lru_cache(maxsize=None)
def _tuples(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    return tuple(_enumerate_tuples(n, d))


@functools.lru_cache(maxsize=64)
def degree_index(n: int, d: int) -> dict[tuple[int, ...], int]:
    """Exponent tuple -> index in the ascending-lex degree-d enumeration."""
    return {t: i for i, t in enumerate(_tuples(n, d))}


def enumerate_monomials(n: int, d: int) -> list[Monomial]:
    """All degree-d monomials in n variables, ascending lex on exponent tuples."""
    if n < 1:
        raise ValueError("need at least one variable")
    if d < 0:
        raise ValueError("degree must be non-negative")
    return [Monomial(t) for t in _tuples(n, d)]


# -- Steenrod squares ----------------------------------------------------------


@functools.lru_cache(maxsize=4096)
def _odd_submasks(e: int) -> tuple[int, ...]:
    """All k with C(e, k) odd, i.e. the submasks of e, ascending."""
    subs = []
    s = 0
    while True:
        subs.append(s)
        if s == e:
            break
        s = (s - e) & e  # next submask in increasing order
    return tuple(subs)


def sq_exponent_targets(k: int, exps: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Exponent tuples of the monomials in Sq^k(u^exps); no duplicates occur."""
    n = len(exps)
    if k == 0:
        yield exps
        return
    suffix_cap = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_cap[i] = suffix_cap[i + 1] + exps[i]
    if k > suffix_cap[0]:
        return

    target = list(exps)

    def recurse(i: int, rem: int) -> Iterator[tuple[int, ...]]:
        if i == n - 1:
            if rem & ~exps[i] == 0:  # C(e_i, rem) odd
                target[i] = exps[i] + rem
                yield tuple(target)
                target[i] = exps[i]
            return
        for ki in _odd_submasks(exps[i]):
            if ki > rem:
                break
            if rem - ki > suffix_cap[i + 1]:
                continue
            target[i] = exps[i] + ki
            yield from recurse(i + 1, rem - ki)
        target[i] = exps[i]

    yield from recurse(0, k)


def sq_monomial(k: int, m: Monomial) -> Polynomial:
    """Sq^k of a single monomial via the Cartan formula."""
    if k < 0:
        raise ValueError("Sq^k needs k >= 0")
    return Polynomial(
        (Monomial(t) for t in sq_exponent_targets(k, m.exponents)), m.n
    )


def sq(k: int, p: Polynomial) -> Polynomial:
    """Linear extension of sq_monomial over a polynomial."""
    acc: set[Monomial] = set()
    for m in p.terms:
        for t in sq_exponent_targets(k, m.exponents):
            acc.symmetric_difference_update((Monomial(t),))
    return Polynomial(acc, p.n)


# -- weight sequences ----------------------------------------------------------


def omega_sequence(exps: tuple[int, ...]) -> tuple[int, ...]:
    """Per-bit-position counts: omega_j = #{i : bit j-1 of e_i is set}."""
    if not exps:
        return ()
    out = []
    bit = 0
    maxe = max(exps)
    while maxe >> bit:
        out.append(sum((e >> bit) & 1 for e in exps))
        bit += 1
    return tuple(out)
