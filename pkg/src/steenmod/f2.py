"""Exact linear algebra over the two-element field.

Matrices are dense and bit-packed: each row is a Python int whose bit j is
the entry in column j.  Vectors are single ints of the same shape.  The
inner loops live in a backend module: the compiled extension
``steenmod._f2core`` when available, otherwise ``steenmod._f2pure``.  Set
``STEENMOD_F2_BACKEND=pure|compiled|auto`` to override the selection.

All values are immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

import os
from functools import lru_cache
from typing import Iterable, Optional, Sequence

_choice = os.environ.get("STEENMOD_F2_BACKEND", "auto")
if _choice == "pure":
    from . import _f2pure as _impl
elif _choice == "compiled":
    from . import _f2core as _impl  # type: ignore[no-redef]
elif _choice == "auto":
    try:
        from . import _f2core as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _f2pure as _impl
else:
    raise RuntimeError(f"STEENMOD_F2_BACKEND={_choice!r} not one of pure/compiled/auto")


def backend_name() -> str:
    """Name of the active kernel backend ('pure' or 'compiled')."""
    return _impl.BACKEND_NAME


def rref_rows(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Backend row reduction on raw int rows: (reduced rows, pivot columns)."""
    return _impl.rref(list(rows), ncols)


def mask_to_bits(mask: int) -> list[int]:
    """Positions of the set bits of a vector mask, ascending."""
    out = []
    while mask:
        b = (mask & -mask).bit_length() - 1
        out.append(b)
        mask &= mask - 1
    return out


class BitMatrix:
    """An immutable nrows x ncols matrix over GF(2).

    The matrix of a linear map f: V -> W (in chosen bases) has shape
    (dim W, dim V); column j holds f(e_j), and vectors are multiplied on
    the right: ``m.apply(v)``.
    """

    __slots__ = ("nrows", "ncols", "_rows", "_hash")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[int]):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative matrix dimension")
        if len(rows) != nrows:
            raise ValueError(f"expected {nrows} rows, got {len(rows)}")
        mask = (1 << ncols) - 1
        for r in rows:
            if r < 0 or r & ~mask:
                raise ValueError("row has bits outside the column range")
        self.nrows = nrows
        self.ncols = ncols
        self._rows = tuple(rows)
        self._hash = hash((nrows, ncols, self._rows))

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "BitMatrix":
        return _zero_cached(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return _identity_cached(n)

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "BitMatrix":
        rows = []
        width = ncols
        for er in entries:
            if width is None:
                width = len(er)
            elif len(er) != width:
                raise ValueError("ragged entry rows")
            rows.append(sum((1 << j) for j, e in enumerate(er) if e & 1))
        return cls(len(rows), width or 0, rows)

    @classmethod
    def from_columns(cls, cols: Sequence[int], nrows: int) -> "BitMatrix":
        rows = [0] * nrows
        for j, c in enumerate(cols):
            for i in mask_to_bits(c):
                rows[i] |= 1 << j
        return cls(nrows, len(cols), rows)

    @classmethod
    def vstack(cls, mats: Iterable["BitMatrix"]) -> "BitMatrix":
        mats = list(mats)
        if not mats:
            raise ValueError("vstack of nothing")
        ncols = mats[0].ncols
        rows: list[int] = []
        for m in mats:
            if m.ncols != ncols:
                raise ValueError("column count mismatch in vstack")
            rows.extend(m._rows)
        return cls(len(rows), ncols, rows)

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    def row(self, i: int) -> int:
        return self._rows[i]

    def column(self, j: int) -> int:
        bit = 1 << j
        out = 0
        for i, r in enumerate(self._rows):
            if r & bit:
                out |= 1 << i
        return out

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError("entry out of range")
        return (self._rows[i] >> j) & 1

    def transpose(self) -> "BitMatrix":
        out = [0] * self.ncols
        for i, r in enumerate(self._rows):
            while r:
                j = (r & -r).bit_length() - 1
                out[j] |= 1 << i
                r &= r - 1
        return BitMatrix(self.ncols, self.nrows, out)

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in +")
        return BitMatrix(self.nrows, self.ncols,
                         [a ^ b for a, b in zip(self._rows, other._rows)])

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch in @: {self.shape} x {other.shape}")
        return BitMatrix(self.nrows, other.ncols,
                         _impl.mul(list(self._rows), list(other._rows)))

    def apply(self, v: int) -> int:
        """Matrix times column vector (v is a mask over columns)."""
        if v < 0 or v >> self.ncols:
            raise ValueError("vector outside column range")
        return _impl.apply(list(self._rows), v)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return not any(self._rows)

    def rref(self) -> "BitMatrix":
        red, _ = _impl.rref(list(self._rows), self.ncols)
        return BitMatrix(len(red), self.ncols, red)

    def pivots(self) -> list[int]:
        return _impl.rref(list(self._rows), self.ncols)[1]

    def rank(self) -> int:
        return len(self.pivots())

    def solve(self, target: int) -> Optional[int]:
        """Some x with self @ x = target, verified by substitution."""
        if target < 0 or target >> self.nrows:
            raise ValueError("target outside row range")
        x = _impl.solve(list(self._rows), self.ncols, target)
        if x is not None and self.apply(x) != target:
            raise AssertionError("backend returned an unverified solution")
        return x

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, BitMatrix)
                and self.nrows == other.nrows
                and self.ncols == other.ncols
                and self._rows == other._rows)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"BitMatrix({self.nrows}x{self.ncols})"

    def to_text_rows(self) -> list[str]:
        """Rows as '01...' strings, column 0 first."""
        return ["".join("1" if (r >> j) & 1 else "0" for j in range(self.ncols))
                for r in self._rows]


@lru_cache(maxsize=4096)
def _zero_cached(nrows: int, ncols: int) -> "BitMatrix":
    return BitMatrix(nrows, ncols, [0] * nrows)


@lru_cache(maxsize=512)
def _identity_cached(n: int) -> "BitMatrix":
    return BitMatrix(n, n, [1 << i for i in range(n)])


class Subspace:
    """A subspace of GF(2)^n in canonical form.

    The basis is the reduced row-echelon form of any spanning set, with
    zero rows dropped, so equal subspaces compare bit-identical.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: BitMatrix):
        if basis.ncols != ambient_dim:
            raise ValueError("basis width disagrees with ambient dimension")
        red, pivots = _impl.rref(list(basis.rows), ambient_dim)
        if list(basis.rows) != red:
            raise ValueError("basis is not in canonical reduced form")
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def from_vectors(cls, vectors: Iterable[int], ambient_dim: int) -> "Subspace":
        red, _ = _impl.rref(list(vectors), ambient_dim)
        return cls(ambient_dim, BitMatrix(len(red), ambient_dim, red))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, BitMatrix(0, ambient_dim, []))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, BitMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def is_zero(self) -> bool:
        return self.dim == 0

    def reduce(self, v: int) -> int:
        """Residue of v after elimination against the basis; 0 iff v in span."""
        for r in self.basis.rows:
            low = r & -r
            if v & low:
                v ^= r
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def contains_subspace(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return all(self.contains(r) for r in other.basis.rows)

    def coordinates(self, v: int) -> Optional[int]:
        """Coefficients of v over the basis rows, or None if v is outside."""
        coords = 0
        for i, r in enumerate(self.basis.rows):
            low = r & -r
            if v & low:
                v ^= r
                coords |= 1 << i
        return coords if v == 0 else None

    def sum_with(self, other: "Subspace") -> "Subspace":
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace.from_vectors(self.basis.rows + other.basis.rows,
                                     self.ambient_dim)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"


def rref(m: BitMatrix) -> BitMatrix:
    """The unique reduced row-echelon form of m, zero rows dropped."""
    return m.rref()


def kernel(m: BitMatrix) -> Subspace:
    """{v : m @ v = 0} in canonical form; dim = ncols - rank."""
    basis = _impl.nullspace(list(m.rows), m.ncols)
    return Subspace(m.ncols, BitMatrix(len(basis), m.ncols, basis))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Canonical basis of the intersection (Zassenhaus block elimination).

    Rows [a | a] for a in basis(a) and [b | 0] for b in basis(b) are
    reduced with the first block taking elimination priority; reduced rows
    whose first block vanished carry an intersection basis in the second.
    """
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    n = a.ambient_dim
    stacked = [(r << n) | r for r in a.basis.rows]
    stacked += list(b.basis.rows)
    red, _ = _impl.rref(stacked, 2 * n)
    mask = (1 << n) - 1
    inter = [r >> n for r in red if (r & mask) == 0]
    return Subspace.from_vectors(inter, n)


def solve(m: BitMatrix, target: int) -> Optional[int]:
    """Some x with m @ x = target, or None when the system is inconsistent."""
    return m.solve(target)
