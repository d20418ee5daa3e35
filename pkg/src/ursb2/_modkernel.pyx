# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular linear algebra kernel.

Mirrors ``_modkernel_py`` exactly.  Entries are 64-bit integers and the
prime must stay below 2**31 so that a product plus an entry fits.
"""
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memset, memcpy

ctypedef long long i64


cdef inline i64 _inv_mod(i64 a, i64 p):
    cdef i64 result = 1, base = a % p, e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


cdef class ModEchelon:
    cdef i64 ncols
    cdef i64 p
    cdef i64 nrows
    cdef i64 capacity
    cdef i64 *rows
    cdef i64 *pivot_row
    cdef i64 *work

    def __cinit__(self, long long ncols, long long p):
        if p >= (1LL << 31):
            raise ValueError("prime must be below 2**31")
        self.ncols = ncols
        self.p = p
        self.nrows = 0
        self.capacity = 16
        self.rows = <i64 *> malloc(self.capacity * ncols * sizeof(i64))
        self.pivot_row = <i64 *> malloc(ncols * sizeof(i64))
        self.work = <i64 *> malloc(ncols * sizeof(i64))
        if not self.rows or not self.pivot_row or not self.work:
            raise MemoryError()
        cdef i64 i
        for i in range(ncols):
            self.pivot_row[i] = -1

    def __dealloc__(self):
        free(self.rows)
        free(self.pivot_row)
        free(self.work)

    @property
    def rank(self):
        return self.nrows

    cdef int _grow(self) except -1:
        cdef i64 newcap = self.capacity * 2
        cdef i64 *tmp = <i64 *> realloc(self.rows, newcap * self.ncols * sizeof(i64))
        if not tmp:
            raise MemoryError()
        self.rows = tmp
        self.capacity = newcap
        return 0

    cdef int _add(self, i64 *v) except -1:
        """Reduce v in place; store it and return 1 if independent."""
        cdef i64 n = self.ncols, p = self.p
        cdef i64 col, j, x, f, r, inv
        cdef i64 *row
        for col in range(n):
            x = v[col]
            if x == 0:
                continue
            r = self.pivot_row[col]
            if r < 0:
                if self.nrows == self.capacity:
                    self._grow()
                row = self.rows + self.nrows * n
                inv = _inv_mod(x, p)
                memset(row, 0, col * sizeof(i64))
                for j in range(col, n):
                    row[j] = (v[j] * inv) % p
                self.pivot_row[col] = self.nrows
                self.nrows += 1
                return 1
            row = self.rows + r * n
            f = p - x
            for j in range(col, n):
                if row[j]:
                    v[j] = (v[j] + f * row[j]) % p
        return 0

    def add(self, vec):
        cdef i64 j
        cdef i64 n = self.ncols
        if len(vec) != n:
            raise ValueError("vector length does not match the echelon width")
        for j in range(n):
            self.work[j] = (<i64> vec[j]) % self.p
            if self.work[j] < 0:
                self.work[j] += self.p
        return bool(self._add(self.work))


cdef class _SparseGen:
    cdef i64 d
    cdef i64 *rowptr
    cdef i64 *cols
    cdef i64 *vals

    def __cinit__(self, rows, long long d, long long p):
        cdef i64 nnz = 0, i = 0, k
        for r in rows:
            nnz += len(r)
        self.d = d
        self.rowptr = <i64 *> malloc((d + 1) * sizeof(i64))
        self.cols = <i64 *> malloc((nnz + 1) * sizeof(i64))
        self.vals = <i64 *> malloc((nnz + 1) * sizeof(i64))
        if not self.rowptr or not self.cols or not self.vals:
            raise MemoryError()
        k = 0
        for i in range(d):
            self.rowptr[i] = k
            for col, val in rows[i]:
                self.cols[k] = col
                self.vals[k] = val % p
                k += 1
        self.rowptr[d] = k

    def __dealloc__(self):
        free(self.rowptr)
        free(self.cols)
        free(self.vals)


def algebra_dimension(gens, long long d, long long p, long long stop_at=-1):
    """Dimension over GF(p) of the unital algebra generated by sparse matrices."""
    cdef i64 n = d * d
    cdef i64 target = stop_at if stop_at > 0 else n
    cdef ModEchelon ech = ModEchelon(n, p)
    cdef list sparse = [_SparseGen(g, d, p) for g in gens]
    cdef _SparseGen G
    cdef i64 cap = 16, count = 0, head = 0, i, k, t, w, base
    cdef i64 *queue = <i64 *> malloc(cap * n * sizeof(i64))
    cdef i64 *cand = <i64 *> malloc(n * sizeof(i64))
    cdef i64 *W
    cdef i64 *tmp
    if not queue or not cand:
        raise MemoryError()
    try:
        memset(queue, 0, n * sizeof(i64))
        for i in range(d):
            queue[i * d + i] = 1
        memcpy(cand, queue, n * sizeof(i64))
        ech._add(cand)
        count = 1
        while head < count and ech.nrows < target:
            for G in sparse:
                W = queue + head * n
                memset(cand, 0, n * sizeof(i64))
                for i in range(d):
                    base = i * d
                    for k in range(d):
                        w = W[base + k]
                        if w:
                            for t in range(G.rowptr[k], G.rowptr[k + 1]):
                                cand[base + G.cols[t]] = (cand[base + G.cols[t]] + w * G.vals[t]) % p
                if count == cap:
                    tmp = <i64 *> realloc(queue, 2 * cap * n * sizeof(i64))
                    if not tmp:
                        raise MemoryError()
                    queue = tmp
                    cap *= 2
                    W = queue + head * n
                memcpy(queue + count * n, cand, n * sizeof(i64))
                if ech._add(cand):
                    count += 1
                    if ech.nrows >= target:
                        break
            head += 1
        return ech.nrows
    finally:
        free(queue)
        free(cand)


def rank_mod(rows, long long ncols, long long p):
    """Rank over GF(p) of a sparse system given as lists of (column, value) pairs."""
    cdef ModEchelon ech = ModEchelon(ncols, p)
    cdef i64 *v = <i64 *> malloc(ncols * sizeof(i64))
    cdef i64 col
    if not v:
        raise MemoryError()
    try:
        for r in rows:
            memset(v, 0, ncols * sizeof(i64))
            for c, val in r:
                col = c
                v[col] = (v[col] + val % p) % p
            ech._add(v)
            if ech.nrows == ncols:
                break
        return ech.nrows
    finally:
        free(v)
