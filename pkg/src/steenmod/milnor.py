"""Arithmetic in the mod-2 Steenrod algebra in the Milnor basis.

A basis monomial Sq(r1, ..., rk) is a tuple of nonnegative ints with no
trailing zeros; the empty tuple is the unit.  Its degree is
sum(r[i] * (2**(i+1) - 1)).  Elements are mod-2 sums of monomials.  The
finite subalgebra A(n) is cut out by the profile bound
r[i] < 2**(n + 1 - i) for 0-based i <= n, r[i] = 0 beyond; it is the
subalgebra generated by Sq(1), Sq(2), ..., Sq(2**n), which the test suite
checks rather than assumes.

Basis lists and multiplication matrices are memoized per (algebra, degree);
construction is idempotent, so concurrent readers are safe.  Set
STEENMOD_CACHE_DIR to also persist multiplication matrices across runs.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .f2 import BitMatrix

Seq = tuple[int, ...]

UNIT: Seq = ()


def _canonical(seq: Iterable[int]) -> Seq:
    s = tuple(seq)
    for r in s:
        if r < 0:
            raise ValueError(f"negative Milnor exponent in {s}")
    while s and s[-1] == 0:
        s = s[:-1]
    return s


def degree(seq: Seq) -> int:
    """Degree of Sq(r1,...,rk): sum of r_i * (2^i - 1)."""
    return sum(r * ((1 << (i + 1)) - 1) for i, r in enumerate(seq))


def in_profile(seq: Seq, n: int) -> bool:
    """Whether the monomial lies in A(n): r_i < 2^(n+1-i), zero past slot n."""
    if n < 0:
        raise ValueError("profile index must be >= 0")
    for i, r in enumerate(seq):
        bound_exp = n + 1 - i
        if bound_exp <= 0:
            if r != 0:
                return False
        elif r >= (1 << bound_exp):
            return False
    return True


@dataclass(frozen=True)
class Algebra:
    """The full algebra (profile None) or the finite subalgebra A(n)."""

    profile_index: Optional[int] = None

    @classmethod
    def full(cls) -> "Algebra":
        return cls(None)

    @classmethod
    def subalgebra(cls, n: int) -> "Algebra":
        if n < 0:
            raise ValueError("subalgebra index must be >= 0")
        return cls(n)

    @property
    def is_full(self) -> bool:
        return self.profile_index is None

    def contains(self, seq: Seq) -> bool:
        return True if self.is_full else in_profile(seq, self.profile_index)

    def top_degree(self) -> Optional[int]:
        """Largest degree with a nonzero component; None for the full algebra."""
        if self.is_full:
            return None
        n = self.profile_index
        top = tuple((1 << (n + 1 - i)) - 1 for i in range(n + 1))
        return degree(top)

    def basis(self, d: int) -> tuple[Seq, ...]:
        return basis_in_degree(d, self)

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    @property
    def label(self) -> str:
        return "full" if self.is_full else f"profile {self.profile_index}"

    def __str__(self) -> str:
        return "A" if self.is_full else f"A({self.profile_index})"


@lru_cache(maxsize=None)
def _basis_cached(d: int, profile_index: Optional[int]) -> tuple[Seq, ...]:
    if d < 0:
        return ()
    out: list[Seq] = []

    def extend(prefix: list[int], slot: int, remaining: int) -> None:
        weight = (1 << (slot + 1)) - 1
        if weight > remaining:
            if remaining == 0:
                out.append(_canonical(prefix))
            return
        if profile_index is not None:
            bound_exp = profile_index + 1 - slot
            rmax = 0 if bound_exp <= 0 else (1 << bound_exp) - 1
        else:
            rmax = remaining // weight
        rmax = min(rmax, remaining // weight)
        for r in range(rmax + 1):
            prefix.append(r)
            extend(prefix, slot + 1, remaining - r * weight)
            prefix.pop()
        # exhausted this slot

    extend([], 0, d)
    return tuple(sorted(out))


def basis_in_degree(d: int, algebra: Algebra) -> tuple[Seq, ...]:
    """All basis monomials of degree d in the algebra, ordered lexicographically."""
    return _basis_cached(d, algebra.profile_index)


def _multinomial_odd(parts: tuple[int, ...]) -> bool:
    """(sum parts)! / prod(parts!) is odd iff the parts are carry-free."""
    total = 0
    xor = 0
    for p in parts:
        total += p
        xor ^= p
    return total == xor


def _matrix_products(r: Seq, s: Seq) -> Iterator[Seq]:
    """Yield the outcome monomial of every product matrix, with odd multiplicity
    handled by the caller via symmetric difference."""
    nr, ns = len(r), len(s)
    # x[i][j]: i in 0..nr, j in 0..ns; row 0 / column 0 hold leftovers.
    x = [[0] * (ns + 1) for _ in range(nr + 1)]
    x[0][1:] = list(s)
    results: list[Seq] = []

    def finish() -> None:
        diag = []
        for n in range(1, nr + ns + 1):
            parts = tuple(x[i][n - i] for i in range(max(0, n - ns), min(n, nr) + 1))
            if not _multinomial_odd(parts):
                return
            diag.append(sum(parts))
        results.append(_canonical(diag))

    def fill_row(i: int) -> None:
        if i > nr:
            finish()
            return
        budget = r[i - 1]

        def fill_entry(j: int, rem: int) -> None:
            if j > ns:
                x[i][0] = rem
                fill_row(i + 1)
                x[i][0] = 0
                return
            cap = min(rem >> j, x[0][j])
            for v in range(cap + 1):
                x[i][j] = v
                x[0][j] -= v
                fill_entry(j + 1, rem - (v << j))
                x[0][j] += v
            x[i][j] = 0

        fill_entry(1, budget)

    fill_row(1)
    return iter(results)


@lru_cache(maxsize=None)
def multiply_seqs(r: Seq, s: Seq) -> frozenset[Seq]:
    """Product of two basis monomials as a mod-2 set of monomials."""
    acc: set[Seq] = set()
    for t in _matrix_products(r, s):
        acc ^= {t}
    return frozenset(acc)


_TERM_RE = re.compile(r"Sq\(([0-9,\s]*)\)")


class Element:
    """A mod-2 sum of Milnor basis monomials.

    Immutable; terms is a frozenset of canonical tuples.  Homogeneous
    elements report their common degree, anything else reports None.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[Seq] = ()):
        self.terms = frozenset(_canonical(t) for t in terms)

    @classmethod
    def sq(cls, *exponents: int) -> "Element":
        return cls([tuple(exponents)])

    @classmethod
    def unit(cls) -> "Element":
        return cls([UNIT])

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> Optional[int]:
        """Common degree of the terms; None when zero or inhomogeneous."""
        degs = {degree(t) for t in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return len({degree(t) for t in self.terms}) <= 1

    def __add__(self, other: "Element") -> "Element":
        return Element(self.terms ^ other.terms)

    def __mul__(self, other: "Element") -> "Element":
        acc: set[Seq] = set()
        for a in self.terms:
            for b in other.terms:
                acc ^= multiply_seqs(a, b)
        return Element(acc)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def sorted_terms(self) -> list[Seq]:
        return sorted(self.terms, key=lambda t: (degree(t), t))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "+".join("Sq(" + ",".join(str(r) for r in t) + ")"
                        for t in self.sorted_terms())

    def __repr__(self) -> str:
        return f"Element({self})"


def product(a: Element, b: Element) -> Element:
    """Bilinear extension of the Milnor product."""
    return a * b


def parse_element(text: str) -> Element:
    """Parse the textual element syntax, e.g. 'Sq(3,1)+Sq(6)'.

    Whitespace-insensitive; terms separated by '+'; 'Sq()' is the unit and
    '0' the zero element.
    """
    compact = "".join(text.split())
    if not compact:
        raise ValueError("empty element text")
    if compact == "0":
        return Element.zero()
    terms: list[Seq] = []
    for part in compact.split("+"):
        m = _TERM_RE.fullmatch(part)
        if not m:
            raise ValueError(f"bad term {part!r} (expected Sq(a,b,...))")
        body = m.group(1).strip()
        if body:
            try:
                seq = tuple(int(x) for x in body.split(","))
            except ValueError as exc:
                raise ValueError(f"bad exponents in {part!r}") from exc
        else:
            seq = UNIT
        terms.append(seq)
    out = Element.zero()
    for t in terms:
        out = out + Element([t])
    return out


def coords_of(elem: Element, d: int, algebra: Algebra) -> int:
    """Coordinate mask of a homogeneous element in basis_in_degree(d)."""
    basis = basis_in_degree(d, algebra)
    index = {seq: i for i, seq in enumerate(basis)}
    v = 0
    for t in elem.terms:
        if degree(t) != d:
            raise ValueError(f"term {t} is not of degree {d}")
        try:
            v |= 1 << index[t]
        except KeyError:
            raise ValueError(f"term {t} lies outside {algebra}") from None
    return v


def element_from_coords(mask: int, d: int, algebra: Algebra) -> Element:
    basis = basis_in_degree(d, algebra)
    if mask < 0 or mask >> len(basis):
        raise ValueError("coordinate mask outside basis range")
    return Element(basis[i] for i in range(len(basis)) if (mask >> i) & 1)


def _cache_dir() -> Optional[str]:
    return os.environ.get("STEENMOD_CACHE_DIR") or None


def _disk_cache_path(d1: int, d2: int, algebra: Algebra) -> Optional[str]:
    root = _cache_dir()
    if root is None:
        return None
    tag = "full" if algebra.is_full else f"p{algebra.profile_index}"
    return os.path.join(root, f"mult-{tag}-{d1}-{d2}.txt")


@lru_cache(maxsize=None)
def multiplication_matrix(d1: int, d2: int, algebra: Algebra) -> BitMatrix:
    """Matrix of the product A^d1 (x) A^d2 -> A^(d1+d2) in the basis ordering.

    Shape: dim A^(d1+d2) rows by dim A^d1 * dim A^d2 columns; the column for
    the pair (i, j) is i * dim A^d2 + j and holds the coordinates of b_i c_j.
    """
    if d1 < 0 or d2 < 0:
        raise ValueError("degrees must be >= 0")
    path = _disk_cache_path(d1, d2, algebra)
    if path and os.path.exists(path):
        with open(path, "r", encoding="ascii") as fh:
            header = fh.readline().split()
            nrows, ncols = int(header[0]), int(header[1])
            rows = [int(fh.readline() or "0", 16) for _ in range(nrows)]
        return BitMatrix(nrows, ncols, rows)

    b1 = basis_in_degree(d1, algebra)
    b2 = basis_in_degree(d2, algebra)
    b3 = basis_in_degree(d1 + d2, algebra)
    index = {seq: i for i, seq in enumerate(b3)}
    rows = [0] * len(b3)
    for i, r in enumerate(b1):
        for j, s in enumerate(b2):
            col = i * len(b2) + j
            for t in multiply_seqs(r, s):
                # profile closure makes the lookup total for subalgebras
                rows[index[t]] |= 1 << col
    mat = BitMatrix(len(b3), len(b1) * len(b2), rows)

    if path:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="ascii") as fh:
            fh.write(f"{mat.nrows} {mat.ncols}\n")
            for r in mat.rows:
                fh.write(f"{r:x}\n")
        os.replace(tmp, path)
    return mat


def left_multiplication(elem: Element, d: int, algebra: Algebra) -> BitMatrix:
    """Matrix of x -> elem * x from A^d to A^(d + deg elem)."""
    k = elem.degree()
    if k is None:
        raise ValueError("need a nonzero homogeneous element")
    src = basis_in_degree(d, algebra)
    dst = basis_in_degree(d + k, algebra)
    index = {seq: i for i, seq in enumerate(dst)}
    cols = []
    for c in src:
        v = 0
        for t in elem.terms:
            for u in multiply_seqs(t, c):
                v ^= 1 << index[u]
        cols.append(v)
    return BitMatrix.from_columns(cols, len(dst))


def right_multiplication(elem: Element, d: int, algebra: Algebra) -> BitMatrix:
    """Matrix of x -> x * elem from A^d to A^(d + deg elem)."""
    k = elem.degree()
    if k is None:
        raise ValueError("need a nonzero homogeneous element")
    src = basis_in_degree(d, algebra)
    dst = basis_in_degree(d + k, algebra)
    index = {seq: i for i, seq in enumerate(dst)}
    cols = []
    for c in src:
        v = 0
        for t in elem.terms:
            for u in multiply_seqs(c, t):
                v ^= 1 << index[u]
        cols.append(v)
    return BitMatrix.from_columns(cols, len(dst))
