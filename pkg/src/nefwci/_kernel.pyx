# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled sparse product of packed Laurent polynomials.

Exponent vectors are packed into one uint64 key (``width`` bits per
variable, biased by ``2**(width-1)``), so the key of a product term is
``ka + kb - off_key``.  Coefficients are residues modulo word-size primes
below 2**31; products are reduced with a Barrett step.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t
from libcpp.vector cimport vector

cnp.import_array()

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"


cdef inline uint64_t _mix(uint64_t k) noexcept nogil:
    k ^= k >> 33
    k *= 0xff51afd7ed558ccdULL
    k ^= k >> 33
    k *= 0xc4ceb9fe1a85ec53ULL
    k ^= k >> 33
    return k


cdef inline uint64_t _mulmod(uint64_t a, uint64_t b, uint64_t p, uint64_t m) noexcept nogil:
    # a, b < p < 2**31, m = floor(2**64 / p)
    cdef uint64_t x = a * b
    cdef uint64_t q = <uint64_t>((<u128>x * <u128>m) >> 64)
    cdef uint64_t r = x - q * p
    if r >= p:
        r -= p
    return r


cdef class _Table:
    cdef vector[int64_t] slots
    cdef vector[uint64_t] keys
    cdef vector[uint64_t] res
    cdef uint64_t mask
    cdef Py_ssize_t nres

    def __cinit__(self, Py_ssize_t hint, Py_ssize_t nres):
        cdef uint64_t cap = 16
        while cap < <uint64_t>(2 * hint):
            cap <<= 1
        self.slots.assign(cap, -1)
        self.mask = cap - 1
        self.nres = nres
        self.keys.reserve(hint)
        self.res.reserve(hint * nres)

    cdef void _grow(self) noexcept nogil:
        cdef uint64_t cap = (self.mask + 1) << 1
        cdef size_t i
        cdef uint64_t h
        self.slots.assign(cap, -1)
        self.mask = cap - 1
        for i in range(self.keys.size()):
            h = _mix(self.keys[i]) & self.mask
            while self.slots[h] >= 0:
                h = (h + 1) & self.mask
            self.slots[h] = <int64_t>i

    cdef inline int64_t slot_for(self, uint64_t key) noexcept nogil:
        cdef uint64_t h = _mix(key) & self.mask
        cdef int64_t s
        cdef Py_ssize_t r
        while True:
            s = self.slots[h]
            if s < 0:
                s = <int64_t>self.keys.size()
                self.slots[h] = s
                self.keys.push_back(key)
                for r in range(self.nres):
                    self.res.push_back(0)
                if 2 * self.keys.size() > self.mask + 1:
                    self._grow()
                return s
            if self.keys[s] == key:
                return s
            h = (h + 1) & self.mask


def mul(const uint64_t[::1] keys_a, const uint64_t[:, ::1] res_a,
        const uint64_t[::1] keys_b, const uint64_t[:, ::1] res_b,
        const uint64_t[::1] primes, uint64_t off_key, int width, int nvars,
        lo=None, hi=None):
    """Product of two packed polynomials, optionally clipped to a box.

    Returns unsorted ``(keys, residues)`` arrays.  Terms whose exponent in
    some variable ``v`` falls outside ``[lo[v], hi[v]]`` are dropped.
    """
    cdef Py_ssize_t na = keys_a.shape[0], nb = keys_b.shape[0]
    cdef Py_ssize_t P = primes.shape[0]
    cdef Py_ssize_t i, j, r, v
    cdef int64_t s, e
    cdef uint64_t key, ka, acc
    cdef bint windowed = lo is not None
    cdef uint64_t fmask = (<uint64_t>1 << width) - 1 if width < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
    cdef int64_t offset = <int64_t>1 << (width - 1)
    cdef int64_t[::1] lo_v
    cdef int64_t[::1] hi_v
    cdef vector[uint64_t] barrett
    cdef bint inside

    for r in range(P):
        barrett.push_back(<uint64_t>(((<u128>1) << 64) // <u128>primes[r]))
    if windowed:
        lo_v = np.ascontiguousarray(lo, dtype=np.int64)
        hi_v = np.ascontiguousarray(hi, dtype=np.int64)
    else:
        lo_v = np.zeros(max(nvars, 1), dtype=np.int64)
        hi_v = np.zeros(max(nvars, 1), dtype=np.int64)

    cdef _Table table = _Table(max(na, nb) * 4, P)
    cdef uint64_t* out

    with nogil:
        for i in range(na):
            ka = keys_a[i] - off_key
            for j in range(nb):
                key = ka + keys_b[j]
                if windowed:
                    inside = True
                    for v in range(nvars):
                        e = <int64_t>((key >> (width * v)) & fmask) - offset
                        if e < lo_v[v] or e > hi_v[v]:
                            inside = False
                            break
                    if not inside:
                        continue
                s = table.slot_for(key)
                out = &table.res[0] + s * P
                for r in range(P):
                    acc = out[r] + _mulmod(res_a[i, r], res_b[j, r], primes[r], barrett[r])
                    if acc >= primes[r]:
                        acc -= primes[r]
                    out[r] = acc

    cdef Py_ssize_t m = table.keys.size()
    keys = np.empty(m, dtype=np.uint64)
    res = np.empty((m, P), dtype=np.uint64)
    cdef uint64_t[::1] kview = keys
    cdef uint64_t[:, ::1] rview = res
    for i in range(m):
        kview[i] = table.keys[i]
        for r in range(P):
            rview[i, r] = table.res[i * P + r]
    return keys, res
