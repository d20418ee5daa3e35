"""Reduction of cyclotomic data modulo a prime that splits completely.

For a prime p = 1 (mod L) the field GF(p) contains a primitive L-th root of
unity omega, and zeta_L -> omega defines a ring map from the elements whose
denominators are prime to p.  A matrix rank can only drop under this map,
so a full rank found modulo p is a proof of full rank in characteristic 0,
and a trivial kernel modulo p proves a trivial kernel over Q(zeta_L).

The kernel backend is chosen at import time: the compiled extension when it
is importable, the pure-Python module otherwise.  Setting URSB2_PURE_PYTHON
to a non-empty value forces the fallback.
"""
from __future__ import annotations

import os
from functools import lru_cache

from . import _modkernel_py
from .cyclotomic import CycScalar, _prime_factors

if os.environ.get("URSB2_PURE_PYTHON"):
    kernel = _modkernel_py
    BACKEND = "python"
else:
    try:
        from . import _modkernel as kernel  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        kernel = _modkernel_py
        BACKEND = "python"

PRIME_CEILING = 1 << 31


class UnluckyPrime(ArithmeticError):
    """A denominator vanishes modulo the chosen prime."""


def _is_prime(n: int) -> bool:
    """Trial division; only used on numbers below 2**31."""
    if n < 2:
        return False
    if n % 2 == 0 or n % 3 == 0:
        return n in (2, 3)
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


@lru_cache(maxsize=None)
def split_primes(level: int, count: int = 4) -> tuple[int, ...]:
    """The ``count`` largest primes p < 2**31 with p = 1 (mod level)."""
    out = []
    t = (PRIME_CEILING - 2) // level
    while len(out) < count and t > 0:
        p = t * level + 1
        if _is_prime(p):
            out.append(p)
        t -= 1
    return tuple(out)


def primitive_root_of_unity(level: int, p: int) -> int:
    factors = _prime_factors(level) if level > 1 else []
    for g in range(2, p):
        w = pow(g, (p - 1) // level, p)
        if all(pow(w, level // q, p) != 1 for q in factors):
            return w
    raise ValueError("no primitive root of unity found")


class ModContext:
    """Evaluation map Q(zeta_L) -> GF(p) for one split prime."""

    def __init__(self, level: int, index: int = 0):
        self.level = level
        self.p = split_primes(level, index + 1)[index]
        self.omega = primitive_root_of_unity(level, self.p)
        self._powers = [pow(self.omega, i, self.p) for i in range(level)]
        self._cache: dict = {}

    def reduce(self, x: CycScalar) -> int:
        hit = self._cache.get(x)
        if hit is not None:
            return hit
        p = self.p
        if x.den % p == 0:
            raise UnluckyPrime(f"denominator divisible by {p}")
        acc = 0
        for i, c in enumerate(x.num):
            if c:
                acc += c * self._powers[i]
        val = acc * pow(x.den, p - 2, p) % p
        self._cache[x] = val
        return val

    def reduce_rows(self, rows) -> list[list[tuple[int, int]]]:
        """Sparse rows of CycScalars (dicts col -> value) to (col, int) lists."""
        out = []
        for row in rows:
            red = []
            for col, val in sorted(row.items()):
                v = self.reduce(val)
                if v:
                    red.append((col, v))
            out.append(red)
        return out
