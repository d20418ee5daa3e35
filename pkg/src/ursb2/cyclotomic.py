"""Exact arithmetic in cyclotomic fields Q(zeta_L) and root-of-unity bookkeeping.

Elements are stored as an integer numerator vector of length phi(L) together
with a positive common denominator.  The vector holds the coefficients of the
unique representative of degree < phi(L) modulo the L-th cyclotomic
polynomial, so equality of elements is equality of the stored data.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

from .errors import (
    DegenerateParameters,
    DivisionByZero,
    LevelMismatch,
    NotCoprime,
    NotRootOfUnity,
)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _divide_monic(num: list[int], den: Sequence[int]) -> list[int]:
    """Exact quotient of integer polynomials (low degree first), den monic."""
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quot[k - dd] = c
            for i, d in enumerate(den):
                num[k - dd + i] -= c * d
    if any(num[:dd]):
        raise ArithmeticError("inexact cyclotomic division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> tuple[int, ...]:
    """Coefficients of Phi_L, lowest degree first."""
    if L < 1:
        raise ValueError("level must be positive")
    poly = [-1] + [0] * (L - 1) + [1]
    for d in _divisors(L)[:-1]:
        poly = _divide_monic(poly, cyclotomic_polynomial(d))
    return tuple(poly)


class _Field:
    """Per-level tables: reduction of x^k for k < 2*phi and all powers of zeta."""

    __slots__ = ("level", "phi", "modulus", "red", "zpow")

    def __init__(self, L: int):
        self.level = L
        mod = cyclotomic_polynomial(L)
        self.modulus = mod
        phi = len(mod) - 1
        self.phi = phi
        # x^k mod Phi_L, built by repeated multiplication by x.
        cur = [0] * phi
        cur[0] = 1
        top = max(2 * phi - 1, L)
        powers = []
        for _ in range(top):
            powers.append(tuple(cur))
            carry = cur[-1]
            cur = [0] + cur[:-1]
            if carry:
                for i in range(phi):
                    cur[i] -= carry * mod[i]
        self.red = powers
        self.zpow = powers[:L]


@lru_cache(maxsize=None)
def _field(L: int) -> _Field:
    return _Field(L)


def euler_phi(L: int) -> int:
    return _field(L).phi


def _fpoly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _fpoly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] -= c * bi
        a.pop()
        _fpoly_trim(a)
    return _fpoly_trim(q), a


def _fpoly_sub_mul(a: list, q: list, b: list) -> list:
    """a - q*b for Fraction polynomials."""
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, qi in enumerate(q):
        if qi:
            for j, bj in enumerate(b):
                out[i + j] -= qi * bj
    return _fpoly_trim(out)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


class CycScalar:
    """An element of Q(zeta_L) in canonical form."""

    __slots__ = ("level", "num", "den", "_hash")

    def __init__(self, level: int, coeffs: Iterable = (0,)):
        fracs = [_as_fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = lcm(den, f.denominator)
        ints = [int(f * den) for f in fracs]
        F = _field(level)
        if len(ints) > F.phi:
            ints = _reduce_long(F, ints)
        else:
            ints = ints + [0] * (F.phi - len(ints))
        self._set(level, ints, den)

    def _set(self, level: int, num: list[int], den: int) -> None:
        g = gcd(den, *num)
        if den < 0:
            g = -g
        if not any(num):
            den, g = 1, 1
        if g != 1:
            num = [c // g for c in num]
            den //= g
        self.level = level
        self.num = tuple(num)
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, level: int, num: list[int], den: int) -> "CycScalar":
        obj = cls.__new__(cls)
        obj._set(level, num, den)
        return obj

    # ----- constructors -------------------------------------------------
    @classmethod
    def zero(cls, level: int) -> "CycScalar":
        return cls._raw(level, [0] * _field(level).phi, 1)

    @classmethod
    def one(cls, level: int) -> "CycScalar":
        return cls.rational(level, 1)

    @classmethod
    def rational(cls, level: int, q) -> "CycScalar":
        q = _as_fraction(q)
        num = [0] * _field(level).phi
        num[0] = q.numerator
        return cls._raw(level, num, q.denominator)

    @classmethod
    def zeta(cls, level: int, e: int = 1) -> "CycScalar":
        F = _field(level)
        return cls._raw(level, list(F.zpow[e % level]), 1)

    # ----- inspection ---------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def __bool__(self) -> bool:
        return any(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, CycScalar):
            return self.level == other.level and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.num[0], self.den))
            else:
                self._hash = hash((self.level, self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"CycScalar({self.level}, [{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    # ----- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "CycScalar":
        if isinstance(other, CycScalar):
            if other.level != self.level:
                raise LevelMismatch(f"levels {self.level} and {other.level} differ")
            return other
        if isinstance(other, (int, Fraction)):
            return CycScalar.rational(self.level, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return CycScalar._raw(self.level, [a + b for a, b in zip(self.num, o.num)], self.den)
        da, db = self.den, o.den
        return CycScalar._raw(self.level, [a * db + b * da for a, b in zip(self.num, o.num)], da * db)

    __radd__ = __add__

    def __neg__(self):
        return CycScalar._raw(self.level, [-a for a in self.num], self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.num, o.num
        if not any(a[1:]):
            c = a[0]
            return CycScalar._raw(self.level, [c * y for y in b], self.den * o.den)
        if not any(b[1:]):
            c = b[0]
            return CycScalar._raw(self.level, [c * x for x in a], self.den * o.den)
        return CycScalar._raw(self.level, _mul_num(_field(self.level), a, b), self.den * o.den)

    __rmul__ = __mul__

    def inv(self) -> "CycScalar":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycScalar.rational(self.level, Fraction(self.den, self.num[0]))
        F = _field(self.level)
        r0 = [Fraction(c) for c in F.modulus]
        r1 = _fpoly_trim([Fraction(c) for c in self.num])
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, rem = _fpoly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _fpoly_sub_mul(s0, q, s1)
        # r0 is a nonzero constant because Phi_L is irreducible.
        c = r0[0]
        return CycScalar(self.level, [x * self.den / c for x in s0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base, e = self.inv(), -e
        result = CycScalar.one(self.level)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # ----- level changes and serialization ------------------------------
    def raise_level(self, new_level: int) -> "CycScalar":
        """Embed into Q(zeta_{new_level}) using zeta_L = zeta_{new_level}^(new_level/L)."""
        if new_level % self.level:
            raise LevelMismatch(f"{new_level} is not a multiple of {self.level}")
        mult = new_level // self.level
        F = _field(new_level)
        acc = [0] * F.phi
        for i, c in enumerate(self.num):
            if c:
                row = F.zpow[(i * mult) % new_level]
                for j in range(F.phi):
                    acc[j] += c * row[j]
        return CycScalar._raw(new_level, acc, self.den)

    def to_json(self) -> dict:
        return {"level": self.level,
                "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "CycScalar":
        coeffs = [Fraction(int(n), int(d)) for n, d in obj["coeffs"]]
        level = int(obj["level"])
        if len(coeffs) != euler_phi(level):
            raise ValueError("coefficient vector length must equal phi(level)")
        return cls(level, coeffs)


def _mul_num(F: _Field, a: Sequence[int], b: Sequence[int]) -> list[int]:
    phi = F.phi
    prod = [0] * (2 * phi - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    res = prod[:phi]
    red = F.red
    for k in range(phi, 2 * phi - 1):
        c = prod[k]
        if c:
            row = red[k]
            for i in range(phi):
                res[i] += c * row[i]
    return res


def _reduce_long(F: _Field, ints: list[int]) -> list[int]:
    res = [0] * F.phi
    for k, c in enumerate(ints):
        if c:
            row = F.zpow[k % F.level]
            for i in range(F.phi):
                res[i] += c * row[i]
    return res


def order_of_exponent(e: int, L: int) -> int:
    """Multiplicative order of zeta_L^e."""
    return L // gcd(e % L, L)


def order_of(x, level: int | None = None) -> int:
    """Order of a root of unity.

    Given an integer exponent ``x`` and ``level`` this is L/gcd(x, L).  Given
    a CycScalar the order is found by factoring candidate exponents and
    checking x^t = 1, which never requires listing the powers of zeta_L.
    """
    if isinstance(x, int) and not isinstance(x, bool):
        if level is None:
            raise TypeError("an integer exponent needs an explicit level")
        return order_of_exponent(x, level)
    L = x.level
    N = lcm(2, L)
    one = CycScalar.one(L)
    if x ** N != one:
        raise NotRootOfUnity(f"{x!r} is not a root of unity")
    t = N
    for p in _prime_factors(N):
        while t % p == 0 and x ** (t // p) == one:
            t //= p
    if L % t:
        raise NotRootOfUnity(f"{x!r} is not a power of zeta_{L}")
    return t


ORDER_NAMES = {
    "r2s2": (2, 2),
    "rs_inv": (1, -1),
    "r2s_2": (2, -2),
    "rs": (1, 1),
    "r2": (2, 0),
    "s2": (0, 2),
    "r_2s2": (-2, 2),
}


@dataclass(frozen=True)
class RootConfig:
    """Root-of-unity setting: r = zeta_ell^er of order m, s = zeta_ell^es of order n."""

    m: int
    n: int
    k1: int
    k2: int
    ell: int
    er: int
    es: int
    level: int
    orders: dict = field(compare=False, hash=False, repr=False, default_factory=dict)

    @property
    def mult(self) -> int:
        return self.level // self.ell

    @property
    def s1k1(self) -> int:
        """Literal integer exponent of r in q = zeta_ell (not reduced mod ell)."""
        return (self.ell // self.m) * self.k1

    @property
    def s2k2(self) -> int:
        return (self.ell // self.n) * self.k2

    def exponent(self, i: int, j: int) -> int:
        """Exponent of r^i s^j as a power of zeta_ell, reduced mod ell."""
        return (i * self.er + j * self.es) % self.ell

    def ord(self, i: int, j: int) -> int:
        return order_of_exponent(self.exponent(i, j), self.ell)

    def mono(self, i: int, j: int = 0) -> CycScalar:
        """The scalar r^i s^j."""
        return CycScalar.zeta(self.level, self.exponent(i, j) * self.mult)

    @property
    def r(self) -> CycScalar:
        return self.mono(1, 0)

    @property
    def s(self) -> CycScalar:
        return self.mono(0, 1)

    @property
    def delta(self) -> CycScalar:
        """r^2 - s^2, nonzero by construction."""
        return self.mono(2, 0) - self.mono(0, 2)

    def zeta(self, e: int = 1) -> CycScalar:
        return CycScalar.zeta(self.level, e)

    def scalar(self, q) -> CycScalar:
        return CycScalar.rational(self.level, q)

    def one(self) -> CycScalar:
        return CycScalar.one(self.level)

    def zero(self) -> CycScalar:
        return CycScalar.zero(self.level)

    def key(self) -> tuple[int, int, int, int, int]:
        return (self.m, self.n, self.k1, self.k2, self.mult)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "k1": self.k1, "k2": self.k2,
                "ell": self.ell, "level": self.level}

    @classmethod
    def from_json(cls, obj: dict) -> "RootConfig":
        ell = lcm(int(obj["m"]), int(obj["n"]))
        cfg = make_root_config(int(obj["m"]), int(obj["n"]), int(obj["k1"]), int(obj["k2"]),
                               int(obj["level"]) // ell)
        if "ell" in obj and int(obj["ell"]) != cfg.ell:
            raise ValueError("inconsistent ell in config JSON")
        return cfg

    def __str__(self) -> str:
        return f"({self.m},{self.n},{self.k1},{self.k2})"


def make_root_config(m: int, n: int, k1: int, k2: int, level_multiplier: int = 1) -> RootConfig:
    if m < 1 or n < 1 or level_multiplier < 1:
        raise ValueError("m, n and level_multiplier must be positive")
    if gcd(k1, m) != 1 or gcd(k2, n) != 1:
        raise NotCoprime(f"need gcd(k1,m) = gcd(k2,n) = 1, got k1={k1}, m={m}, k2={k2}, n={n}")
    ell = lcm(m, n)
    er = ((ell // m) * k1) % ell
    es = ((ell // n) * k2) % ell
    if (2 * er - 2 * es) % ell == 0:
        raise DegenerateParameters(f"r^2 = s^2 for (m,n,k1,k2) = ({m},{n},{k1},{k2})")
    cfg = RootConfig(m, n, k1, k2, ell, er, es, ell * level_multiplier)
    for name, (i, j) in ORDER_NAMES.items():
        cfg.orders[name] = cfg.ord(i, j)
    return cfg


def geometric(x: CycScalar, k: int) -> CycScalar:
    """1 + x + ... + x^(k-1), which equals (1 - x^k)/(1 - x) when x != 1."""
    total = CycScalar.zero(x.level)
    term = CycScalar.one(x.level)
    for _ in range(k):
        total = total + term
        term = term * x
    return total
