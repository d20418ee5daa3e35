"""Noncommutative polynomials in the ordered basis X1^a X2^b X3^c X4^d.

Products are straightened by moving smaller generators to the left with the
six commutation rules of the algebra.  The core step multiplies a basis
monomial on the right by one generator; it is memoized per configuration,
so repeated products inside identity checks stay cheap.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .cyclotomic import CycScalar, RootConfig, geometric
from .errors import ConfigMismatch, DegenerateParameters

GENS = ("X1", "X2", "X3", "X4")
# Generators counted in letters of e1, e2: X2 = e1e2 - ..., X3 = e2X2 - ...
E_DEGREE = ((1, 0), (1, 1), (1, 2), (0, 1))

Mono = tuple  # (a, b, c, d)
UNIT: Mono = (0, 0, 0, 0)


def _bump(mono: Mono, i: int, by: int = 1) -> Mono:
    lst = list(mono)
    lst[i] += by
    return tuple(lst)


def e_multidegree(mono: Mono) -> tuple[int, int]:
    """(number of e1 letters, number of e2 letters) of a basis monomial."""
    return (sum(mono[i] * E_DEGREE[i][0] for i in range(4)),
            sum(mono[i] * E_DEGREE[i][1] for i in range(4)))


def e_length(mono: Mono) -> int:
    return sum(e_multidegree(mono))


class _Straightener:
    """Memoized right multiplication of basis monomials for one configuration."""

    def __init__(self, config: RootConfig):
        c = config
        one = c.one()
        # (h, g): X_h X_g with h > g rewritten as a list of (coeff, word).
        self.rules = {
            (1, 0): [(c.mono(0, -2), (0, 1))],
            (2, 0): [(c.mono(-2, -2), (0, 2))],
            (3, 0): [(c.mono(-2, 0), (0, 3)), (-c.mono(-2, 0), (1,))],
            (2, 1): [(c.mono(-1, -1), (1, 2))],
            (3, 1): [(c.mono(0, -2), (1, 3)), (one, (2,))],
            (3, 2): [(c.mono(-1, -1), (2, 3))],
        }
        self.one = one
        self._gen_memo: dict = {}
        self._mono_memo: dict = {}

    def times_gen(self, mono: Mono, g: int) -> dict:
        key = (mono, g)
        hit = self._gen_memo.get(key)
        if hit is not None:
            return hit
        h = 3
        while h >= 0 and mono[h] == 0:
            h -= 1
        if h <= g:
            out = {_bump(mono, g): self.one}
        else:
            prefix = _bump(mono, h, -1)
            out = {}
            for coeff, word in self.rules[(h, g)]:
                cur = {prefix: coeff}
                for letter in word:
                    cur = self._apply_gen(cur, letter)
                _accumulate(out, cur)
        self._gen_memo[key] = out
        return out

    def _apply_gen(self, poly: dict, g: int) -> dict:
        out: dict = {}
        for mono, coeff in poly.items():
            for m2, c2 in self.times_gen(mono, g).items():
                v = out.get(m2)
                out[m2] = coeff * c2 if v is None else v + coeff * c2
        return {k: v for k, v in out.items() if v}

    def times_mono(self, left: Mono, right: Mono) -> dict:
        """Normal form of the product (left)(right) of two basis monomials."""
        key = (left, right)
        hit = self._mono_memo.get(key)
        if hit is not None:
            return hit
        g = 3
        while g >= 0 and right[g] == 0:
            g -= 1
        if g < 0:
            out = {left: self.one}
        else:
            out = self._apply_gen(self.times_mono(left, _bump(right, g, -1)), g)
        self._mono_memo[key] = out
        return out


def _accumulate(target: dict, src: dict) -> None:
    for k, v in src.items():
        w = target.get(k)
        target[k] = v if w is None else w + v
    for k in [k for k, v in target.items() if not v]:
        del target[k]


@lru_cache(maxsize=64)
def _engine(config: RootConfig) -> _Straightener:
    return _Straightener(config)


class NCPoly:
    """Element of the algebra in normal form: a map from basis monomials to scalars."""

    __slots__ = ("config", "terms")

    def __init__(self, config: RootConfig, terms: dict | None = None):
        self.config = config
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    # ----- constructors -------------------------------------------------
    @classmethod
    def unit(cls, config: RootConfig) -> "NCPoly":
        return cls(config, {UNIT: config.one()})

    @classmethod
    def gen(cls, config: RootConfig, i: int) -> "NCPoly":
        """Generator X_i, i in 1..4."""
        return cls(config, {_bump(UNIT, i - 1): config.one()})

    @classmethod
    def monomial(cls, config: RootConfig, exps: Sequence[int], coeff=None) -> "NCPoly":
        coeff = config.one() if coeff is None else _scalar(config, coeff)
        return cls(config, {tuple(exps): coeff})

    @classmethod
    def constant(cls, config: RootConfig, c) -> "NCPoly":
        return cls(config, {UNIT: _scalar(config, c)})

    # ----- algebra ------------------------------------------------------
    def _check(self, other: "NCPoly") -> None:
        if other.config != self.config:
            raise ConfigMismatch("polynomials belong to different configurations")

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            other = NCPoly.constant(self.config, other)
        self._check(other)
        out = dict(self.terms)
        _accumulate(out, other.terms)
        return NCPoly(self.config, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.config, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            other = NCPoly.constant(self.config, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NCPoly":
        c = _scalar(self.config, c)
        return NCPoly(self.config, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "NCPoly":
        out = NCPoly.unit(self.config)
        for _ in range(k):
            out = multiply(out, self)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.config == other.config and self.terms == other.terms

    def __hash__(self):
        return hash((self.config, frozenset(self.terms.items())))

    def sorted_terms(self) -> list:
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        return f"NCPoly({format_poly(self)})"

    def to_json(self) -> dict:
        return {"config": self.config.to_json(),
                "terms": [{"exp": list(k), "coeff": v.to_json()} for k, v in self.sorted_terms()]}

    @classmethod
    def from_json(cls, obj: dict) -> "NCPoly":
        cfg = RootConfig.from_json(obj["config"])
        return cls(cfg, {tuple(t["exp"]): CycScalar.from_json(t["coeff"]) for t in obj["terms"]})


def _scalar(config: RootConfig, c) -> CycScalar:
    if isinstance(c, CycScalar):
        return c
    return config.scalar(c)


def multiply(p: NCPoly, q: NCPoly) -> NCPoly:
    if p.config != q.config:
        raise ConfigMismatch("polynomials belong to different configurations")
    eng = _engine(p.config)
    out: dict = {}
    for mq, cq in q.terms.items():
        for mp, cp in p.terms.items():
            c = cp * cq
            for m, v in eng.times_mono(mp, mq).items():
                w = out.get(m)
                out[m] = c * v if w is None else w + c * v
    return NCPoly(p.config, out)


_LETTERS = {"X1": 0, "X2": 1, "X3": 2, "X4": 3, "e1": 0, "e2": 3,
            "1": 0, "2": 1, "3": 2, "4": 3}


def parse_word(word) -> list[int]:
    """Accept "X4 X4 X1", ["X4", "e1"], or integers 1..4; return 0-based indices."""
    if isinstance(word, str):
        word = word.replace(",", " ").split()
    out = []
    for w in word:
        key = str(w).strip()
        if key not in _LETTERS:
            raise ValueError(f"unknown generator {w!r}")
        out.append(_LETTERS[key])
    return out


def normalize(word: Iterable, config: RootConfig) -> NCPoly:
    """Normal form of a product of generators."""
    eng = _engine(config)
    cur = {UNIT: config.one()}
    for g in parse_word(word):
        cur = eng._apply_gen(cur, g)
    return NCPoly(config, cur)


def commutator(a: NCPoly, b: NCPoly) -> NCPoly:
    return a * b - b * a


# ----------------------------------------------------------------------
# Distinguished elements and identity checks
# ----------------------------------------------------------------------

def _gens(config: RootConfig):
    return [NCPoly.gen(config, i) for i in (1, 2, 3, 4)]


def w_tilde(config: RootConfig) -> NCPoly:
    """X2 + (r^2 - s^2) X4 X1, the normal generator of the torsionfree subalgebra."""
    return NCPoly.gen(config, 2) + normalize("X4 X1", config).scale(config.delta)


def _one_minus_rs_inv(config: RootConfig) -> CycScalar:
    d = config.one() - config.mono(1, -1)
    if d.is_zero():
        raise DegenerateParameters("1 - r s^-1 vanishes (r = s)")
    return d


def x_tilde(config: RootConfig) -> NCPoly:
    c = config
    coeff = c.mono(0, 2) * c.delta / _one_minus_rs_inv(c)
    return w_tilde(c) * NCPoly.gen(c, 2) - normalize("X3 X1", c).scale(coeff)


def serre_relations(config: RootConfig) -> tuple[NCPoly, NCPoly]:
    c = config
    e1, e2 = NCPoly.gen(c, 1), NCPoly.gen(c, 4)
    r2, s2, rs = c.mono(2, 0), c.mono(0, 2), c.mono(1, 1)
    first = e1 * e1 * e2 - (e1 * e2 * e1).scale(r2 + s2) + (e2 * e1 * e1).scale(r2 * s2)
    t = r2 + rs + s2
    second = (e1 * e2 ** 3 - (e2 * e1 * e2 ** 2).scale(t)
              + (e2 ** 2 * e1 * e2).scale(rs * t) - (e2 ** 3 * e1).scale(rs ** 3))
    return first, second


def serre_check(config: RootConfig) -> bool:
    return all(rel.is_zero() for rel in serre_relations(config))


def lemma_identity(config: RootConfig, which: int, k: int, reading: str = "repaired"):
    """Both sides of one of the four power-commutation identities.

    ``reading="literal"`` keeps the uncorrected coefficients and exponents;
    ``"repaired"`` uses the corrected versions of
    identities 2 and 4 (see the decisions ledger).  Returns (lhs, rhs).
    """
    c = config
    X1, X2, X3, X4 = _gens(c)
    r, s = c.r, c.s
    q = c.mono(1, -1)
    one = c.one()
    delta = c.delta
    if which == 1:
        lhs = X1 * X4 ** k
        rhs = ((X4 ** k * X1).scale(r ** (2 * k))
               + (X4 ** (k - 1) * X2).scale((r ** (2 * k) - s ** (2 * k)) / delta)
               - (X4 ** (k - 2) * X3).scale(s ** 2 * (r ** k - s ** k) * (r ** (k - 1) - s ** (k - 1))
                                            / ((r - s) * delta)))
    elif which == 2:
        lhs = X4 ** k * X1
        tail = k - 1 if reading == "literal" else k - 2
        rhs = ((X1 * X4 ** k).scale(r ** (-2 * k))
               - (X2 * X4 ** (k - 1)).scale(s ** 2 * c.mono(-2 * k, -2 * k)
                                            * (r ** (2 * k) - s ** (2 * k)) / delta)
               - (X3 * X4 ** tail).scale(r ** (2 - 2 * k) * (q ** k - one) * (q ** (k - 1) - one)
                                         / ((q ** 2 - one) * (q - one))))
    elif which == 3:
        lhs = X4 ** k * X2
        rhs = ((X2 * X4 ** k).scale(s ** (-2 * k))
               + (X3 * X4 ** (k - 1)).scale(c.mono(1 - k, 1 - k) * geometric(q, k)))
    elif which == 4:
        lhs = X2 ** k * X4
        denom = (one - q ** 2) if reading == "literal" else (one - q)
        rhs = ((X4 * X2 ** k).scale(s ** (2 * k))
               - (X3 * X2 ** (k - 1)).scale(s ** (2 * k) * (one - q ** k) / denom))
    else:
        raise ValueError("identity index must be 1..4")
    return lhs, rhs


def lemma22_check(config: RootConfig, k_max: int = 6, reading: str = "repaired") -> bool:
    """All four power-commutation identities for k = 2..k_max."""
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    for k in range(2, k_max + 1):
        for which in (1, 2, 3, 4):
            lhs, rhs = lemma_identity(config, which, k, reading)
            if lhs != rhs:
                return False
    return True


def centrality_check(config: RootConfig) -> bool:
    """Each X_i^ell commutes with every generator."""
    gens = _gens(config)
    for g in gens:
        power = g ** config.ell
        for h in gens:
            if not commutator(power, h).is_zero():
                return False
    return True


def b_relations(config: RootConfig, a_max: int = 5) -> dict[str, bool]:
    """Named checks for the torsionfree subalgebra and its normal element."""
    c = config
    X1, X2, X3, _ = _gens(c)
    W = w_tilde(c)
    X = x_tilde(c)
    q = c.mono(1, -1)
    sd = c.mono(0, 2) * c.delta
    out = {
        "W X1 = r^-2 X1 W": W * X1 == (X1 * W).scale(c.mono(-2, 0)),
        "X2 X1 = s^-2 X1 X2": X2 * X1 == (X1 * X2).scale(c.mono(0, -2)),
        "X3 X1 = (rs)^-2 X1 X3": X3 * X1 == (X1 * X3).scale(c.mono(-2, -2)),
        "X3 X2 = (rs)^-1 X2 X3": X3 * X2 == (X2 * X3).scale(c.mono(-1, -1)),
        "W X3 = rs X3 W": W * X3 == (X3 * W).scale(c.mono(1, 1)),
        "W X2 = X2 W + s^2 D X3 X1": W * X2 == X2 * W + (X3 * X1).scale(sd),
    }
    for a in range(1, a_max + 1):
        lhs = X2 ** a * W
        rhs = W * X2 ** a - (X3 * X1 * X2 ** (a - 1)).scale(sd * geometric(q, a))
        out[f"X2^{a} W"] = lhs == rhs
        lhs = W ** a * X2
        rhs = X2 * W ** a + (X3 * X1 * W ** (a - 1)).scale(sd * geometric(c.mono(-1, 1), a))
        out[f"W^{a} X2"] = lhs == rhs
    for name, other in (("X3 X1", X3 * X1), ("W", W), ("X2", X2)):
        out[f"[Xt, {name}] = 0"] = commutator(X, other).is_zero()
    out["Xt X3 = r^2 s^2 X3 Xt"] = X * X3 == (X3 * X).scale(c.mono(2, 2))
    out["Xt X1 = r^-2 s^-2 X1 Xt"] = X * X1 == (X1 * X).scale(c.mono(-2, -2))
    return out


def b_relations_check(config: RootConfig, a_max: int = 5) -> bool:
    return all(b_relations(config, a_max).values())


# ----------------------------------------------------------------------
# Display
# ----------------------------------------------------------------------

@lru_cache(maxsize=64)
def _monomial_names(config: RootConfig) -> dict:
    """Map zeta-exponent -> shortest signed (i, j) with r^i s^j at that exponent."""
    best: dict = {}
    m, n = config.m, config.n
    for i in range(-((m - 1) // 2), m // 2 + 1):
        for j in range(-((n - 1) // 2), n // 2 + 1):
            e = config.exponent(i, j)
            key = (abs(i) + abs(j), abs(i), i < 0, j < 0)
            if e not in best or key < best[e][0]:
                best[e] = (key, (i, j))
    return {e: ij for e, (_, ij) in best.items()}


def _power_name(sym: str, k: int) -> str:
    return sym if k == 1 else f"{sym}^{k}"


def format_scalar(config: RootConfig, c: CycScalar) -> tuple[int, str]:
    """Return (sign, text) where text is r^i s^j, "1", or a bracketed polynomial in z."""
    L = c.level
    if c.den == 1:
        from .cyclotomic import _field
        F = _field(L)
        for sign in (1, -1):
            target = tuple(sign * x for x in c.num)
            for e, pw in enumerate(F.zpow):
                if pw == target and e % config.mult == 0:
                    ij = _monomial_names(config).get((e // config.mult) % config.ell)
                    if ij is None:
                        break
                    i, j = ij
                    parts = []
                    if i:
                        parts.append(_power_name("r", i))
                    if j:
                        parts.append(_power_name("s", j))
                    return sign, " ".join(parts) or "1"
    return 1, f"({c})"


def format_monomial(mono: Mono) -> str:
    parts = [_power_name(GENS[i], e) for i, e in enumerate(mono) if e]
    return " ".join(parts) or "1"


def format_poly(p: NCPoly) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for mono, coeff in p.sorted_terms():
        sign, text = format_scalar(p.config, coeff)
        mono_text = format_monomial(mono)
        if text == "1":
            body = mono_text
        elif mono_text == "1":
            body = text
        else:
            body = f"{text} * {mono_text}"
        pieces.append((sign, body))
    out = ("-" if pieces[0][0] < 0 else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += (" - " if sign < 0 else " + ") + body
    return out
