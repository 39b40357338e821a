"""Bit-packed linear algebra over the two-element field.

Rows are vectors of F2 coefficients indexed by an external coordinate
enumeration fixed by the caller; this module never reorders coordinates.
The workhorse is :class:`EchelonBasis`, a streaming fully-reduced echelon
form: rows are inserted one at a time and the basis is kept in canonical
reduced row echelon form throughout, so a given span always produces the
same rows regardless of insertion history.

Full reduction is what makes streaming cheap: if every stored row has zeros
in all other rows' pivot coordinates, then reducing an incoming vector is a
single XOR of the stored rows selected by the vector's own bits at pivot
coordinates -- no cascading.  Storage is a packed uint64 matrix; incoming
rows are usually given as sparse coordinate lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .budget import Budget

__all__ = [
    "BitRow",
    "EchelonBasis",
    "reduce_against",
    "insert",
    "kernel_basis",
    "quotient_representatives",
]

_U64_0 = np.uint64(0)
_U64_1 = np.uint64(1)


@dataclass(frozen=True)
class BitRow:
    """A fixed-length vector over F2, packed into a Python int (bit i = coordinate i)."""

    bits: int
    length: int

    def __post_init__(self) -> None:
        if self.bits < 0:
            raise ValueError("BitRow bits must be non-negative")
        if self.bits >> self.length:
            raise ValueError("BitRow has bits outside its stated length")

    @classmethod
    def zero(cls, length: int) -> "BitRow":
        return cls(0, length)

    @classmethod
    def from_indices(cls, indices: Iterable[int], length: int) -> "BitRow":
        bits = 0
        for i in indices:
            bits ^= 1 << i
        return cls(bits, length)

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "BitRow":
        """Build from an explicit 0/1 coordinate sequence, e.g. (1, 1, 0)."""
        bits = 0
        for i, c in enumerate(coords):
            if c & 1:
                bits |= 1 << i
        return cls(bits, len(coords))

    def coords(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.length))

    def support(self) -> tuple[int, ...]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return tuple(out)

    def is_zero(self) -> bool:
        return self.bits == 0

    def __xor__(self, other: "BitRow") -> "BitRow":
        if self.length != other.length:
            raise ValueError("length mismatch in BitRow xor")
        return BitRow(self.bits ^ other.bits, self.length)


def _words_for(length: int) -> int:
    return max(1, (length + 63) // 64)


class EchelonBasis:
    """Canonical reduced echelon basis of a subspace of F2^ambient_length.

    Every stored row is nonzero, has a distinct pivot (its lowest nonzero
    coordinate) and zeros at every other row's pivot.  ``insert`` updates the
    basis in place and reports whether the span grew; the resulting row set
    depends only on the span, not on insertion order.
    """

    def __init__(self, ambient_length: int, budget: Budget | None = None):
        if ambient_length < 0:
            raise ValueError("ambient_length must be non-negative")
        self.ambient_length = ambient_length
        self._words = _words_for(ambient_length)
        self._mat = np.zeros((0, self._words), dtype=np.uint64)
        self._nrows = 0
        self._pivot_row: dict[int, int] = {}  # pivot coordinate -> row index
        self._row_pivot: list[int] = []
        self._budget = budget

    # -- queries ------------------------------------------------------------

    @property
    def rank(self) -> int:
        return self._nrows

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(sorted(self._pivot_row))

    def row_ints(self) -> list[int]:
        """Rows as ints, ordered by increasing pivot (the canonical order)."""
        out = []
        for p in sorted(self._pivot_row):
            r = self._pivot_row[p]
            out.append(int.from_bytes(self._mat[r].tobytes(), "little"))
        return out

    @property
    def rows(self) -> list[BitRow]:
        return [BitRow(b, self.ambient_length) for b in self.row_ints()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EchelonBasis):
            return NotImplemented
        return (
            self.ambient_length == other.ambient_length
            and self.row_ints() == other.row_ints()
        )

    def __repr__(self) -> str:
        return f"EchelonBasis(ambient={self.ambient_length}, rank={self._nrows})"

    def contains(self, v: BitRow) -> bool:
        return reduce_against(v, self).is_zero()

    # -- internal word-level machinery ---------------------------------------

    def _check_length(self, length: int) -> None:
        if length != self.ambient_length:
            raise ValueError(
                f"row length {length} does not match ambient {self.ambient_length}"
            )

    def _int_to_words(self, bits: int) -> np.ndarray:
        buf = bits.to_bytes(self._words * 8, "little")
        return np.frombuffer(buf, dtype="<u8").astype(np.uint64, copy=True)

    def _words_for_indices(self, indices: Sequence[int]) -> np.ndarray:
        v = np.zeros(self._words, dtype=np.uint64)
        for i in indices:
            v[i >> 6] ^= _U64_1 << np.uint64(i & 63)
        return v

    def _select_rows(self, pivot_hits: Sequence[int]) -> np.ndarray | None:
        if not pivot_hits:
            return None
        sel = self._mat[pivot_hits]
        return np.bitwise_xor.reduce(sel, axis=0)

    def _pivot_hits_of_words(self, words: np.ndarray) -> list[int]:
        hits = []
        get = self._pivot_row.get
        for wi in np.nonzero(words)[0]:
            w = int(words[wi])
            base = int(wi) << 6
            while w:
                low = w & -w
                r = get(base + low.bit_length() - 1)
                if r is not None:
                    hits.append(r)
                w ^= low
        return hits

    def _reduce_words(self, words: np.ndarray, hits: list[int]) -> np.ndarray:
        # Full reduction in one shot: with the basis in RREF, the rows to
        # subtract are exactly those whose pivot coordinate is set in the
        # *original* vector.
        acc = self._select_rows(hits)
        if acc is None:
            return words
        return words ^ acc

    @staticmethod
    def _lowest_bit(words: np.ndarray) -> int | None:
        nz = np.nonzero(words)[0]
        if nz.size == 0:
            return None
        w = int(words[nz[0]])
        return (int(nz[0]) << 6) + ((w & -w).bit_length() - 1)

    def _append_row(self, words: np.ndarray, pivot: int) -> None:
        if self._budget is not None:
            self._budget.check_bytes(
                (self._nrows + 1) * self._words * 8, "echelon basis"
            )
        if self._nrows == self._mat.shape[0]:
            cap = max(64, self._mat.shape[0] * 2)
            grown = np.zeros((cap, self._words), dtype=np.uint64)
            grown[: self._nrows] = self._mat[: self._nrows]
            self._mat = grown
        self._mat[self._nrows] = words
        self._pivot_row[pivot] = self._nrows
        self._row_pivot.append(pivot)
        self._nrows += 1

    def _clear_column(self, pivot: int, new_row: np.ndarray) -> None:
        """Zero out coordinate `pivot` in all stored rows (full reduction)."""
        if self._nrows == 0:
            return
        wi, b = divmod(pivot, 64)
        col = self._mat[: self._nrows, wi]
        mask = (col >> np.uint64(b)) & _U64_1
        fix = np.nonzero(mask)[0]
        if fix.size:
            self._mat[fix] ^= new_row

    def _insert_words(self, words: np.ndarray, hits: list[int]) -> bool:
        residual = self._reduce_words(words, hits)
        pivot = self._lowest_bit(residual)
        if pivot is None:
            return False
        self._clear_column(pivot, residual)
        self._append_row(residual, pivot)
        return True

    def insert_indices(self, indices: Sequence[int]) -> bool:
        """Insert a row given as a list of set coordinates (parity semantics)."""
        seen: set[int] = set()
        for i in indices:
            if i >= self.ambient_length or i < 0:
                raise ValueError(f"coordinate {i} outside ambient space")
            seen.symmetric_difference_update((i,))
        get = self._pivot_row.get
        hits = [r for r in (get(i) for i in seen) if r is not None]
        return self._insert_words(self._words_for_indices(tuple(seen)), hits)

    def insert(self, v: BitRow) -> bool:
        """Grow the span by v; returns True iff the rank increased."""
        self._check_length(v.length)
        words = self._int_to_words(v.bits)
        return self._insert_words(words, self._pivot_hits_of_words(words))

    def reduce(self, v: BitRow) -> BitRow:
        """Residual of v modulo the span: zeros at every pivot coordinate."""
        self._check_length(v.length)
        words = self._int_to_words(v.bits)
        out = self._reduce_words(words, self._pivot_hits_of_words(words))
        return BitRow(int.from_bytes(out.tobytes(), "little"), self.ambient_length)

    def reduce_int(self, bits: int) -> int:
        words = self._int_to_words(bits)
        out = self._reduce_words(words, self._pivot_hits_of_words(words))
        return int.from_bytes(out.tobytes(), "little")

    # -- column access (used by kernel extraction) ---------------------------

    def _column_rows(self, coord: int) -> np.ndarray:
        wi, b = divmod(coord, 64)
        col = self._mat[: self._nrows, wi]
        return np.nonzero((col >> np.uint64(b)) & _U64_1)[0]

    def kernel(self, budget: Budget | None = None) -> "EchelonBasis":
        """Reduced basis of the null space of the matrix whose rows are this basis.

        Read off the reduced echelon form: one kernel vector per non-pivot
        coordinate f, with support {f} plus the pivots of the rows having a
        one in column f.
        """
        out = EchelonBasis(self.ambient_length, budget=budget)
        pivotset = self._pivot_row
        for f in range(self.ambient_length):
            if f in pivotset:
                continue
            support = [f]
            for r in self._column_rows(f):
                support.append(self._row_pivot[int(r)])
            out.insert_indices(support)
        return out


# -- module-level operation surface ------------------------------------------


def reduce_against(v: BitRow, b: EchelonBasis) -> BitRow:
    """Unique residual of v modulo span(b); all-zeros iff v lies in the span."""
    return b.reduce(v)


def insert(b: EchelonBasis, v: BitRow) -> tuple[EchelonBasis, bool]:
    """Add v to the span of b.  Returns (updated basis, rank grew).

    The basis object is updated in place; the returned reference is the new
    logical state.  The final row set is the canonical reduced echelon form
    of the span and is independent of insertion history.
    """
    grew = b.insert(v)
    return b, grew


def kernel_basis(
    rows: Iterable[BitRow],
    width: int,
    budget: Budget | None = None,
) -> EchelonBasis:
    """Reduced basis of {x : M x = 0} for the matrix M with the given rows."""
    b = EchelonBasis(width, budget=budget)
    for row in rows:
        if row.length != width:
            raise ValueError(f"row length {row.length} does not match width {width}")
        b.insert(row)
    return b.kernel(budget=budget)


def echelon_from_index_rows(
    rows: Iterator[Sequence[int]] | Iterable[Sequence[int]],
    width: int,
    budget: Budget | None = None,
) -> EchelonBasis:
    """Stream sparse index rows into a fresh canonical echelon basis."""
    b = EchelonBasis(width, budget=budget)
    for idx in rows:
        b.insert_indices(idx)
    return b


def quotient_representatives(ambient_coords: int, b: EchelonBasis) -> list[int]:
    """Non-pivot coordinates in enumeration order.

    The corresponding unit vectors project to a basis of the quotient of the
    ambient space by span(b).
    """
    if b.ambient_length != ambient_coords:
        raise ValueError(
            f"basis ambient {b.ambient_length} does not match {ambient_coords}"
        )
    pivotset = b._pivot_row
    return [c for c in range(ambient_coords) if c not in pivotset]
