"""PI degree from the skew-symmetric commutation matrix, two independent ways.

One route runs a Smith normal form on the integer exponent matrix of the
associated quantum affine space and reads the degree off its invariant
factors.  The other evaluates the closed-form case analysis by parity of m
and n.  The report keeps both numbers and refuses to return if they differ.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .cyclotomic import RootConfig
from .errors import CaseMismatch, RankUnexpected

RS_EQUALS_ONE = "RS_EQUALS_ONE"
ODD = "ODD"
EVEN_DIFFERENT_E2 = "EVEN_DIFFERENT_E2"
EVEN_E2_ONE = "EVEN_E2_ONE"
EVEN_E2_GE2 = "EVEN_E2_GE2"


@dataclass(frozen=True)
class SkewIntMatrix:
    entries: tuple

    def __post_init__(self):
        n = len(self.entries)
        for i in range(n):
            if len(self.entries[i]) != n or self.entries[i][i] != 0:
                raise ValueError("skew matrix must be square with zero diagonal")
            for j in range(n):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise ValueError("matrix is not skew-symmetric")

    @property
    def n(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def two_adic(x: int) -> int:
    """Exponent of 2 in x (x != 0)."""
    x = abs(x)
    e = 0
    while x % 2 == 0:
        x //= 2
        e += 1
    return e


def _exponents(config: RootConfig, reduced: bool) -> tuple[int, int]:
    if reduced:
        return config.er, config.es
    return config.s1k1, config.s2k2


def build_commutation_matrix(config: RootConfig, reduced: bool = False) -> SkewIntMatrix:
    """Exponents of q in X_i X_j = q^{a_ij} X_j X_i for the associated affine space."""
    a, b = _exponents(config, reduced)
    rows = (
        (0, 2 * b, 2 * (a + b), 2 * a),
        (-2 * b, 0, a + b, 2 * b),
        (-2 * (a + b), -(a + b), 0, a + b),
        (-2 * a, -2 * b, -(a + b), 0),
    )
    return SkewIntMatrix(rows)


def build_quotient_matrix(config: RootConfig, reduced: bool = False) -> SkewIntMatrix:
    """Commutation exponents for the quotient algebra by the normal element."""
    a, b = _exponents(config, reduced)
    rows = (
        (0, 2 * b, 2 * (a + b), 2 * a),
        (-2 * b, 0, a + b, a - b),
        (-2 * (a + b), -(a + b), 0, -(a + b)),
        (-2 * a, b - a, a + b, 0),
    )
    return SkewIntMatrix(rows)


def smith_diagonal(mat: Sequence[Sequence[int]]) -> list[int]:
    """Smith normal form diagonal of an integer matrix, zeros included.

    Elementary row and column operations with the smallest nonzero entry as
    pivot.  Nonzero entries come out positive and each divides the next.
    """
    A = [list(r) for r in mat]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    diag = []
    for t in range(min(nr, nc)):
        while True:
            pivot = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                diag.extend([0] * (min(nr, nc) - t))
                return diag
            i, j = pivot
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
            p = A[t][t]
            clean = True
            for i in range(t + 1, nr):
                f = A[i][t] // p
                if f:
                    A[i] = [x - f * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    clean = False
            for j in range(t + 1, nc):
                f = A[t][j] // p
                if f:
                    for row in A:
                        row[j] -= f * row[t]
                if A[t][j]:
                    clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, nr):
                if any(A[i][j] % p for j in range(t + 1, nc)):
                    bad = i
                    break
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
        diag.append(abs(A[t][t]))
    return diag


def smith_invariant_factors(mat) -> list[int]:
    """Nonzero invariant factors (positive, divisibility-chained)."""
    rows = mat.rows() if isinstance(mat, SkewIntMatrix) else mat
    return [d for d in smith_diagonal(rows) if d]


def pi_from_factors(pairs: Sequence[int], ell: int) -> int:
    """Degree of a quantum affine space from one representative per factor pair."""
    out = 1
    for h in pairs:
        out *= ell // gcd(h, ell)
    return out


def _pairs(factors: list[int]) -> list[int]:
    if len(factors) % 2:
        raise RankUnexpected(f"skew matrix with odd rank: {factors}")
    for i in range(0, len(factors), 2):
        if factors[i] != factors[i + 1]:
            raise RankUnexpected(f"invariant factors not paired: {factors}")
    return factors[0::2]


def closed_form_pi(config: RootConfig) -> tuple[int, str]:
    """Case analysis by the parities of m and n."""
    c = config
    if c.exponent(1, 1) == 0:
        return c.orders["r2"], RS_EQUALS_ONE
    base = c.orders["r2s2"] * c.orders["r2s_2"]
    if c.ell % 2:
        return base, ODD
    em, en = two_adic(c.m), two_adic(c.n)
    if em != en:
        return 2 * base, EVEN_DIFFERENT_E2
    if em == 1:
        return base, EVEN_E2_ONE
    return 2 * base, EVEN_E2_GE2


@dataclass
class PiDegreeReport:
    config: RootConfig
    matrix: SkewIntMatrix
    invariant_factors: list
    pi_deg_snf: int
    pi_deg_closed: int
    case_label: str
    pi_deg_reduced: int = 0
    checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "matrix": self.matrix.rows(),
            "invariant_factors": list(self.invariant_factors),
            "pi_deg_snf": self.pi_deg_snf,
            "pi_deg_closed": self.pi_deg_closed,
            "pi_deg_reduced_exponents": self.pi_deg_reduced,
            "case_label": self.case_label,
            "checks": dict(self.checks),
        }


def pi_degree(config: RootConfig) -> PiDegreeReport:
    mat = build_commutation_matrix(config)
    factors = smith_invariant_factors(mat)
    pairs = _pairs(factors)
    snf_value = pi_from_factors(pairs, config.ell)
    reduced_pairs = _pairs(smith_invariant_factors(build_commutation_matrix(config, reduced=True)))
    reduced_value = pi_from_factors(reduced_pairs, config.ell)
    closed, label = closed_form_pi(config)
    a, b = config.s1k1, config.s2k2
    checks = {}
    if len(pairs) == 2:
        h1, h2 = pairs
        checks["h1_gcd"] = h1 == gcd(a + b, a - b)
        checks["h1h2_product"] = h1 * h2 == abs(2 * (a + b) * (a - b))
        checks["h1_divides_h2"] = h2 % h1 == 0
        em, en = two_adic(config.m), two_adic(config.n)
        if em != en:
            checks["claim1_h1_odd"] = h1 % 2 == 1
        elif em >= 1:
            checks["claim2_h1_e2_one"] = two_adic(h1) == 1
    report = PiDegreeReport(config, mat, pairs, snf_value, closed, label, reduced_value, checks)
    if snf_value != closed:
        raise CaseMismatch(f"{config}: SNF route gives {snf_value}, closed form gives {closed} ({label})")
    return report


def quotient_pi_bound(config: RootConfig) -> int:
    """PI degree bound for the quotient by the normal element (rank-2 exponent matrix)."""
    mat = build_quotient_matrix(config)
    factors = smith_invariant_factors(mat)
    if len(factors) != 2:
        raise RankUnexpected(f"{config}: quotient exponent matrix has rank {len(factors)}, expected 2")
    (h1,) = _pairs(factors)
    a, b = config.s1k1, config.s2k2
    if h1 != gcd(a + b, a - b):
        raise CaseMismatch(f"{config}: first invariant factor {h1} differs from gcd formula")
    snf_value = pi_from_factors([h1], config.ell)
    em, en = two_adic(config.m), two_adic(config.n)
    closed = config.ell // 2 if (em == en and em >= 1) else config.ell
    if snf_value != closed:
        raise CaseMismatch(f"{config}: quotient bound SNF {snf_value} vs closed {closed}")
    return closed
