# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2) kernels; bit-identical to steenmod._f2pure.

Rows cross the boundary as Python ints (bit j = column j) and are unpacked
into 64-bit blocks for the inner loops.
"""

from libc.stdlib cimport calloc, free

ctypedef unsigned long long u64

BACKEND_NAME = "compiled"

cdef u64 WORD_MASK = 0xFFFFFFFFFFFFFFFFULL


cdef inline int _ctz(u64 x):
    cdef int n = 0
    if (x & 0xFFFFFFFFULL) == 0:
        n += 32
        x >>= 32
    if (x & 0xFFFFULL) == 0:
        n += 16
        x >>= 16
    if (x & 0xFFULL) == 0:
        n += 8
        x >>= 8
    if (x & 0xFULL) == 0:
        n += 4
        x >>= 4
    if (x & 0x3ULL) == 0:
        n += 2
        x >>= 2
    if (x & 0x1ULL) == 0:
        n += 1
    return n


cdef inline void _unpack(object v, u64 *dst, Py_ssize_t nb):
    cdef Py_ssize_t k
    for k in range(nb):
        dst[k] = <u64> (v & WORD_MASK)
        v >>= 64


cdef object _pack(u64 *src, Py_ssize_t nb):
    cdef object v = 0
    cdef Py_ssize_t k
    for k in range(nb - 1, -1, -1):
        v = (v << 64) | src[k]
    return v


cdef int _rref_buf(u64 *buf, Py_ssize_t nrows, Py_ssize_t ncols,
                   Py_ssize_t nb, list pivots) except -1:
    """In-place reduced row echelon; returns the rank, appends pivot cols."""
    cdef Py_ssize_t r = 0, col, i, k, piv, blk
    cdef u64 bit
    cdef u64 *rowr
    cdef u64 *rowi
    for col in range(ncols):
        if r == nrows:
            break
        blk = col >> 6
        bit = (<u64> 1) << (col & 63)
        piv = -1
        for i in range(r, nrows):
            if buf[i * nb + blk] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rowr = buf + r * nb
            rowi = buf + piv * nb
            for k in range(nb):
                rowr[k], rowi[k] = rowi[k], rowr[k]
        rowr = buf + r * nb
        for i in range(nrows):
            if i != r and (buf[i * nb + blk] & bit):
                rowi = buf + i * nb
                for k in range(nb):
                    rowi[k] ^= rowr[k]
        pivots.append(col)
        r += 1
    return r


def rref(rows, ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t nb = ((<Py_ssize_t> ncols) + 63) >> 6
    if nb == 0:
        nb = 1
    cdef list pivots = []
    cdef u64 *buf = <u64 *> calloc(max(nrows, 1) * nb, sizeof(u64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, r
    try:
        for i in range(nrows):
            _unpack(rows[i], buf + i * nb, nb)
        r = _rref_buf(buf, nrows, ncols, nb, pivots)
        out = [_pack(buf + i * nb, nb) for i in range(r)]
    finally:
        free(buf)
    return out, pivots


def mul(a_rows, b_rows):
    cdef Py_ssize_t na = len(a_rows)
    cdef Py_ssize_t nbrows = len(b_rows)
    cdef Py_ssize_t nb = 1
    cdef Py_ssize_t nab = (nbrows + 63) >> 6
    cdef Py_ssize_t i, j, k, w
    cdef u64 word
    cdef object v
    if nab == 0:
        nab = 1
    for v in b_rows:
        j = (v.bit_length() + 63) >> 6
        if j > nb:
            nb = j
    cdef u64 *bbuf = <u64 *> calloc(max(nbrows, 1) * nb, sizeof(u64))
    cdef u64 *abuf = <u64 *> calloc(nab, sizeof(u64))
    cdef u64 *acc = <u64 *> calloc(nb, sizeof(u64))
    if bbuf == NULL or acc == NULL or abuf == NULL:
        free(bbuf)
        free(abuf)
        free(acc)
        raise MemoryError()
    cdef u64 *brow
    out = []
    try:
        for i in range(nbrows):
            _unpack(b_rows[i], bbuf + i * nb, nb)
        for i in range(na):
            for k in range(nb):
                acc[k] = 0
            _unpack(a_rows[i], abuf, nab)
            for w in range(nab):
                word = abuf[w]
                while word:
                    j = (w << 6) + _ctz(word)
                    brow = bbuf + j * nb
                    for k in range(nb):
                        acc[k] ^= brow[k]
                    word &= word - 1
            out.append(_pack(acc, nb))
    finally:
        free(bbuf)
        free(abuf)
        free(acc)
    return out


def nullspace(rows, ncols):
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    cdef object one = 1
    cdef Py_ssize_t f, k
    for f in range(ncols):
        if f in pivset:
            continue
        fb = one << f
        v = fb
        for k in range(len(red)):
            if red[k] & fb:
                v |= one << pivots[k]
        basis.append(v)
    return rref(basis, ncols)[0]


def solve(rows, ncols, target):
    aug = []
    tbit = 1 << ncols
    cdef Py_ssize_t i
    for i in range(len(rows)):
        rv = rows[i]
        if (target >> i) & 1:
            rv |= tbit
        aug.append(rv)
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[len(pivots) - 1] == ncols:
        return None
    x = 0
    for k in range(len(pivots)):
        if red[k] & tbit:
            x |= 1 << pivots[k]
    return x


def apply(rows, v):
    out = 0
    cdef object one = 1
    cdef Py_ssize_t i
    for i in range(len(rows)):
        if (rows[i] & v).bit_count() & 1:
            out |= one << i
    return out
