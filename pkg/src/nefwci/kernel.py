"""Packed multi-modular polynomials and backend selection.

A :class:`PackedContext` fixes the number of variables, the bit width of
each exponent field and a list of primes whose product exceeds twice the
largest coefficient that can occur.  Coefficients live as residues while
products are formed and are lifted back to exact integers by CRT.

The compiled extension ``_kernel`` is used when it imports; otherwise (or
when ``NEFWCI_PURE_PYTHON`` is set to a non-empty value) the pure-Python
twin ``_kernel_py`` is used.
"""

from __future__ import annotations

import math
import os

import numpy as np

from . import _kernel_py

__all__ = ["BACKEND", "PackedContext", "PackedPoly", "available_backends", "primes_for"]


def _load_backends():
    found = {"python": _kernel_py}
    try:
        from . import _kernel
    except ImportError:
        pass
    else:
        found["compiled"] = _kernel
    return found


_BACKENDS = _load_backends()
BACKEND = "python" if os.environ.get("NEFWCI_PURE_PYTHON") else (
    "compiled" if "compiled" in _BACKENDS else "python"
)


def available_backends():
    return tuple(_BACKENDS)


def _is_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_stream():
    p = (1 << 31) - 1
    while True:
        if _is_prime(p):
            yield p
        p -= 2


_PRIMES = []


def primes_for(bound):
    """Fewest 31-bit primes whose product exceeds ``2 * bound``."""
    gen = None
    out, prod = [], 1
    k = 0
    while prod <= 2 * bound or not out:
        if k == len(_PRIMES):
            if gen is None:
                gen = _prime_stream()
                for _ in _PRIMES:
                    next(gen)
            _PRIMES.append(next(gen))
        out.append(_PRIMES[k])
        prod *= _PRIMES[k]
        k += 1
    return tuple(out)


class PackedContext:
    """Exponent packing and residue arithmetic shared by a computation.

    ``max_abs_exponent`` must bound every exponent of every polynomial
    formed in this context, intermediate products included.
    """

    def __init__(self, nvars, max_abs_exponent, coefficient_bound, backend=None):
        if nvars < 1:
            raise ValueError("packing needs at least one variable")
        width = 63 // nvars
        need = max(2, (int(max_abs_exponent)).bit_length() + 2)
        if width < need:
            raise ValueError(
                f"{nvars} variables with exponents up to {max_abs_exponent} do not fit a 64-bit key"
            )
        self.nvars = nvars
        self.width = min(width, 32)
        self.offset = 1 << (self.width - 1)
        self.off_key = sum(self.offset << (self.width * v) for v in range(nvars))
        self.primes = primes_for(coefficient_bound)
        self.modulus = math.prod(self.primes)
        self._np_primes = np.array(self.primes, dtype=np.uint64)
        # CRT basis: e_i = (M/p_i) * ((M/p_i)^-1 mod p_i)
        self._basis = []
        for p in self.primes:
            mp = self.modulus // p
            self._basis.append(mp * pow(mp, -1, p))
        self.backend_name = backend or BACKEND
        self._backend = _BACKENDS[self.backend_name]

    @staticmethod
    def fits(nvars, max_abs_exponent):
        return nvars >= 1 and 63 // nvars >= max(2, int(max_abs_exponent).bit_length() + 2)

    def pack(self, exps):
        w, off = self.width, self.offset
        return sum((e + off) << (w * v) for v, e in enumerate(exps))

    def unpack(self, key):
        w, off = self.width, self.offset
        mask = (1 << w) - 1
        return tuple(((key >> (w * v)) & mask) - off for v in range(self.nvars))

    def lift(self, residues):
        """Exact integer from residues, in the symmetric range."""
        x = sum(int(r) * e for r, e in zip(residues, self._basis)) % self.modulus
        return x - self.modulus if 2 * x > self.modulus else x

    def from_terms(self, terms):
        keys = np.array([self.pack(e) for e in terms], dtype=np.uint64)
        res = np.array(
            [[c % p for p in self.primes] for c in terms.values()], dtype=np.uint64
        ).reshape(len(terms), len(self.primes))
        return PackedPoly(self, keys, res)._sorted()

    def one(self):
        return self.from_terms({(0,) * self.nvars: 1})


class PackedPoly:
    """Terms as sorted packed keys plus a residue row per key."""

    __slots__ = ("ctx", "keys", "res")

    def __init__(self, ctx, keys, res):
        self.ctx = ctx
        self.keys = keys
        self.res = res

    def _sorted(self):
        order = np.argsort(self.keys, kind="stable")
        self.keys = np.ascontiguousarray(self.keys[order])
        self.res = np.ascontiguousarray(self.res[order])
        # exact cancellation leaves all-zero residue rows behind
        live = self.res.any(axis=1)
        if not live.all():
            self.keys = self.keys[live]
            self.res = np.ascontiguousarray(self.res[live])
        return self

    def __len__(self):
        return int(self.keys.shape[0])

    def mul(self, other, lo=None, hi=None):
        """Product, keeping only exponents inside ``[lo, hi]`` when given."""
        ctx = self.ctx
        if lo is not None:
            lo = np.asarray(lo, dtype=np.int64)
            hi = np.asarray(hi, dtype=np.int64)
        keys, res = ctx._backend.mul(
            self.keys, self.res, other.keys, other.res, ctx._np_primes,
            ctx.off_key, ctx.width, ctx.nvars, lo, hi,
        )
        return PackedPoly(ctx, keys, res)._sorted()

    def residues_at(self, exps):
        key = np.uint64(self.ctx.pack(exps))
        i = int(np.searchsorted(self.keys, key))
        if i < len(self) and self.keys[i] == key:
            return self.res[i]
        return None

    def coeff(self, exps):
        r = self.residues_at(exps)
        return 0 if r is None else self.ctx.lift(r)

    def pair_opposite(self, other):
        """Residues of ``sum_e self[e] * other[-e]``."""
        ctx = self.ctx
        # keys are offset-biased, so the key of -e is 2*off_key - key(e)
        target = np.uint64(2 * ctx.off_key) - self.keys
        idx = np.searchsorted(other.keys, target)
        idx_c = np.minimum(idx, max(len(other) - 1, 0))
        hit = (idx < len(other)) & (other.keys[idx_c] == target) if len(other) else idx < 0
        a = self.res[hit]
        b = other.res[idx_c[hit]]
        out = []
        for r, p in enumerate(ctx.primes):
            prod = (a[:, r] * b[:, r]) % np.uint64(p)
            # each product is < 2**31, so chunked sums cannot overflow
            out.append(int(prod.sum(dtype=np.uint64)) % p if len(prod) < (1 << 32) else
                       sum(int(x) for x in prod) % p)
        return out

    def to_terms(self):
        ctx = self.ctx
        return {
            ctx.unpack(int(k)): ctx.lift(r)
            for k, r in zip(self.keys.tolist(), self.res.tolist())
        }
