"""Pure-Python GF(2) kernels.

Rows are Python ints used as bit masks: bit j of a row is the entry in
column j.  All functions are total and deterministic; steenmod._f2core is
a drop-in compiled replacement that must produce bit-identical results.
"""

from __future__ import annotations

BACKEND_NAME = "pure"


def rref(rows, ncols):
    """Reduced row-echelon form.

    Returns (reduced_rows, pivot_cols).  Zero rows are dropped, so the
    result has exactly rank(rows) rows, ordered by pivot column.
    """
    rows = list(rows)
    nrows = len(rows)
    pivots = []
    r = 0
    for col in range(ncols):
        bit = 1 << col
        piv = -1
        for i in range(r, nrows):
            if rows[i] & bit:
                piv = i
                break
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rv = rows[r]
        for i in range(nrows):
            if i != r and rows[i] & bit:
                rows[i] ^= rv
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def mul(a_rows, b_rows):
    """Rows of the product A @ B; bit j of an A-row selects row j of B."""
    out = []
    for v in a_rows:
        acc = 0
        while v:
            j = (v & -v).bit_length() - 1
            acc ^= b_rows[j]
            v &= v - 1
        out.append(acc)
    return out


def nullspace(rows, ncols):
    """Canonical (rref) basis rows of {v : M @ v = 0}."""
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = 1 << f
        fb = 1 << f
        for k, rv in enumerate(red):
            if rv & fb:
                v |= 1 << pivots[k]
        basis.append(v)
    return rref(basis, ncols)[0]


def solve(rows, ncols, target):
    """Some x with M @ x = target (bit i of target = row i), else None."""
    aug = []
    tbit = 1 << ncols
    for i, rv in enumerate(rows):
        if (target >> i) & 1:
            rv |= tbit
        aug.append(rv)
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = 0
    for k, col in enumerate(pivots):
        if red[k] & tbit:
            x |= 1 << col
    return x


def apply(rows, v):
    """M @ v for a column vector v given as a bit mask over columns."""
    out = 0
    for i, rv in enumerate(rows):
        if (rv & v).bit_count() & 1:
            out |= 1 << i
    return out
