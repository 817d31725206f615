# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled truncated power-series kernels over GF(2^s), s <= 32.

Mirrors ``_pykernels.FieldKernel`` call for call; see that module for the
contract of each routine.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t, int32_t

BACKEND = "cython"
MAX_DEGREE = 32


cdef uint64_t* _to_c(list a, Py_ssize_t n) except NULL:
    cdef Py_ssize_t i, la = len(a)
    cdef uint64_t* out = <uint64_t*> malloc((n if n > 0 else 1) * sizeof(uint64_t))
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = a[i] if i < la else 0
    return out


cdef list _to_py(uint64_t* a, Py_ssize_t n):
    cdef Py_ssize_t i
    return [a[i] for i in range(n)]


cdef class FieldKernel:
    cdef readonly int s
    cdef readonly object modulus
    cdef uint64_t mod
    cdef uint64_t order
    cdef int32_t* exp_t
    cdef int32_t* log_t
    cdef bint tables

    def __cinit__(self, int s, modulus, exp=None, log=None):
        cdef Py_ssize_t i
        if s < 1 or s > MAX_DEGREE:
            raise ValueError("compiled kernel supports 1 <= s <= 32")
        self.s = s
        self.modulus = modulus
        self.mod = <uint64_t> modulus
        self.order = ((<uint64_t> 1) << s) - 1
        self.exp_t = NULL
        self.log_t = NULL
        self.tables = exp is not None
        if self.tables:
            self.exp_t = <int32_t*> malloc(len(exp) * sizeof(int32_t))
            self.log_t = <int32_t*> malloc(len(log) * sizeof(int32_t))
            if self.exp_t == NULL or self.log_t == NULL:
                raise MemoryError()
            for i in range(len(exp)):
                self.exp_t[i] = exp[i]
            for i in range(len(log)):
                self.log_t[i] = log[i]

    def __dealloc__(self):
        if self.exp_t != NULL:
            free(self.exp_t)
        if self.log_t != NULL:
            free(self.log_t)

    cdef inline uint64_t _mul(self, uint64_t a, uint64_t b) nogil:
        cdef uint64_t r = 0
        cdef int i
        if a == 0 or b == 0:
            return 0
        if self.tables:
            return <uint64_t> self.exp_t[self.log_t[a] + self.log_t[b]]
        while b:
            if b & 1:
                r ^= a
            a <<= 1
            b >>= 1
        for i in range(2 * self.s - 2, self.s - 1, -1):
            if (r >> i) & 1:
                r ^= self.mod << (i - self.s)
        return r

    cdef uint64_t _inv(self, uint64_t a) except? 0:
        cdef uint64_t e, r
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^%d)" % self.s)
        if self.tables:
            return <uint64_t> self.exp_t[self.order - self.log_t[a]]
        e = self.order - 1
        r = 1
        while e:
            if e & 1:
                r = self._mul(r, a)
            a = self._mul(a, a)
            e >>= 1
        return r

    def mul(self, uint64_t a, uint64_t b):
        return self._mul(a, b)

    def inv(self, uint64_t a):
        return self._inv(a)

    def scale(self, list a, uint64_t c, Py_ssize_t n):
        cdef Py_ssize_t i, m = min(len(a), n)
        return [self._mul(<uint64_t> a[i], c) for i in range(m)]

    cdef void _mul_into(self, uint64_t* a, Py_ssize_t la, uint64_t* b, Py_ssize_t lb,
                        uint64_t* res, Py_ssize_t m) nogil:
        cdef Py_ssize_t i, j, top
        cdef uint64_t x
        cdef int32_t lx, y
        for i in range(m):
            res[i] = 0
        if self.tables:
            for i in range(min(la, m)):
                x = a[i]
                if x == 0:
                    continue
                lx = self.log_t[x]
                top = min(lb, m - i)
                for j in range(top):
                    if b[j]:
                        res[i + j] ^= <uint64_t> self.exp_t[lx + self.log_t[b[j]]]
        else:
            for i in range(min(la, m)):
                x = a[i]
                if x == 0:
                    continue
                top = min(lb, m - i)
                for j in range(top):
                    if b[j]:
                        res[i + j] ^= self._mul(x, b[j])

    def mul_trunc(self, list a, list b, Py_ssize_t n):
        cdef Py_ssize_t la = len(a), lb = len(b)
        cdef Py_ssize_t m = min(n, la + lb - 1) if (la and lb) else 0
        if m <= 0:
            return []
        cdef uint64_t* ca = _to_c(a, la)
        cdef uint64_t* cb = _to_c(b, lb)
        cdef uint64_t* res = <uint64_t*> malloc(m * sizeof(uint64_t))
        try:
            self._mul_into(ca, la, cb, lb, res, m)
            return _to_py(res, m)
        finally:
            free(ca)
            free(cb)
            free(res)

    def inv_trunc(self, list a, Py_ssize_t n):
        if n <= 0:
            return []
        cdef Py_ssize_t la = len(a), k, j
        cdef uint64_t c = self._inv(<uint64_t> a[0])
        cdef uint64_t acc
        cdef uint64_t* ca = _to_c(a, la)
        cdef uint64_t* res = <uint64_t*> malloc(n * sizeof(uint64_t))
        try:
            res[0] = c
            for k in range(1, n):
                acc = 0
                for j in range(1, min(k, la - 1) + 1):
                    if ca[j] and res[k - j]:
                        acc ^= self._mul(ca[j], res[k - j])
                res[k] = self._mul(acc, c)
            return _to_py(res, n)
        finally:
            free(ca)
            free(res)

    def compose_trunc(self, list g, list T, Py_ssize_t n):
        if n <= 0:
            return []
        cdef Py_ssize_t lt = len(T), v = 0, top, j, i
        while v < lt and T[v] == 0:
            v += 1
        if v == lt:
            return [g[0] if g else 0] + [0] * (n - 1)
        top = min(len(g), (n - 1) // v + 1)
        cdef uint64_t* cg = _to_c(g, top)
        cdef uint64_t* ct = _to_c(T, lt)
        cdef uint64_t* acc = <uint64_t*> malloc(n * sizeof(uint64_t))
        cdef uint64_t* tmp = <uint64_t*> malloc(n * sizeof(uint64_t))
        cdef uint64_t* sw
        try:
            for i in range(n):
                acc[i] = 0
            for j in range(top - 1, -1, -1):
                self._mul_into(acc, n, ct, lt, tmp, n)
                tmp[0] ^= cg[j]
                sw = acc
                acc = tmp
                tmp = sw
            return _to_py(acc, n)
        finally:
            free(cg)
            free(ct)
            free(acc)
            free(tmp)
