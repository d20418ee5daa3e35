"""Isomorphism tests for the module families.

Two independent routes are implemented.  ``iso_by_criteria`` evaluates the
parameter equations of each family over the finite set of admissible shifts.
``find_intertwiner`` solves the linear system rho(g) T = T rho'(g) for all
generators (row-vector convention, so T maps the first module to the second).
``cross_validate`` samples parameter pairs and demands that both agree.

Three printed shift equations disagree with the eigenvalues read off the
action tables.  ``reading="repaired"`` (default) uses the corrected forms,
``reading="literal"`` the printed ones; the cross validation exhibits the
literal forms failing.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cyclotomic import CycScalar, RootConfig, geometric
from .errors import ConfigMismatch, FamilyMismatch, SchurViolation
from .linalg import CycMatrix, inverse, nullspace
from .modular import ModContext, UnluckyPrime, kernel
from .repmod import (
    B_M1_LAMBDA, B_M2_MU, B_M3_EPSILON, U_M_EPSILON, U_M_LAMBDA, U_M_MU, U_M_NU, U_M_XI,
    Representation, build, dims_for, family_kind, lambda_forbidden_value, parse_params,
    validate_params,
)

LAMBDA_LIKE = (U_M_LAMBDA, B_M1_LAMBDA)
MU_LIKE = (U_M_MU, B_M2_MU)
EPSILON_LIKE = (U_M_EPSILON, B_M3_EPSILON)


@dataclass
class IsoVerdict:
    by_criteria: bool
    witness_shift: tuple | None = None
    by_intertwiner: bool | None = None
    intertwiner: CycMatrix | None = None

    @property
    def consistent(self) -> bool:
        return self.by_intertwiner is None or self.by_intertwiner == self.by_criteria

    def to_json(self) -> dict:
        out = {"by_criteria": self.by_criteria,
               "witness_shift": None if self.witness_shift is None else list(self.witness_shift),
               "by_intertwiner": self.by_intertwiner}
        if self.intertwiner is not None:
            out["intertwiner"] = [[x.to_json() for x in row] for row in self.intertwiner.to_dense()]
        return out


# ----------------------------------------------------------------------
# Criteria
# ----------------------------------------------------------------------

def _shift_ranges(family: str, config: RootConfig, p: Sequence) -> tuple[list, list]:
    rows, cols = dims_for(family, config, p)
    o = config.orders
    if family in LAMBDA_LIKE:
        return list(range(rows)), list(range(cols))
    if family in MU_LIKE:
        return list(range(rows)), [v for v in (0, o["rs_inv"]) if v < cols]
    if family in EPSILON_LIKE:
        return list(range(rows)), [0]
    if family == U_M_NU:
        return list(range(rows)), [v for v in (0, o["r_2s2"]) if v < cols]
    if family == U_M_XI:
        return [u for u in range(rows) if u % o["rs_inv"] == 0], [0]
    raise FamilyMismatch(f"unknown family {family!r}")


def _equations(family: str, c: RootConfig, p, q, u: int, v: int, reading: str) -> bool:
    """Whether the family's equations hold for parameters p, q at shift (u, v)."""
    rows, cols = dims_for(family, c, p)
    mono = c.mono
    if family in LAMBDA_LIKE:
        l1, m1 = rows, cols
        u_exp = u if reading == "literal" else 2 * u
        return (p[0] ** l1 == mono(0, -2 * v * l1) * q[0] ** l1
                and p[1] ** m1 == mono(0, 2 * u * m1) * q[1] ** m1
                and p[2] == mono(u_exp, u_exp) * mono(v, -v) * q[2]
                and p[3] == mono(2 * u, 2 * u) * (q[3] - mono(0, 2) * c.delta
                                                  * geometric(mono(1, -1), v) * q[2]))
    if family in MU_LIKE:
        l2, m2 = rows, cols
        e = 2 * u + v if reading == "literal" else 2 * u
        return (p[0] ** l2 == mono(-2 * v * l2, 0) * q[0] ** l2
                and p[1] == mono(e, e) * q[1]
                and p[2] == mono(2 * u * m2, 0) * q[2])
    if family in EPSILON_LIKE:
        n = rows
        return (p[0] ** n == q[0] ** n
                and p[1] == mono(u, u) * q[1]
                and p[2] == mono(u, -u) * q[2])
    if family == U_M_NU:
        l3, m3 = rows, cols
        e = v if reading == "literal" else u
        return (p[0] ** l3 == mono(0, -2 * v * l3) * q[0] ** l3
                and p[1] == mono(e, e) * q[1]
                and p[2] == mono(0, 2 * u * m3) * q[2])
    if family == U_M_XI:
        return p[0] == mono(-u, -u) * q[0] and p[1] == q[1]
    raise FamilyMismatch(f"unknown family {family!r}")


def iso_by_criteria(family: str, p: Sequence, p2: Sequence, config: RootConfig,
                    reading: str = "repaired") -> IsoVerdict:
    family_kind(family)
    p = validate_params(family, config, p)
    p2 = validate_params(family, config, p2)
    if dims_for(family, config, p) != dims_for(family, config, p2):
        return IsoVerdict(False)
    us, vs = _shift_ranges(family, config, p2)
    for u in us:
        for v in vs:
            if _equations(family, config, p, p2, u, v, reading):
                return IsoVerdict(True, (u, v))
    return IsoVerdict(False)


# ----------------------------------------------------------------------
# Intertwiners
# ----------------------------------------------------------------------

def _equation_rows(rep: Representation, rep2: Representation) -> list[dict]:
    """Rows of the linear map T -> rho(g) T - T rho'(g); unknown T[k][j] at k*d + j."""
    d = rep.dim
    rows = []
    for A, B in zip(rep.generators(), rep2.generators()):
        Bt = B.transpose()
        for i in range(d):
            Ai = A.rows[i]
            for j in range(d):
                row: dict = {}
                for k, val in Ai.items():
                    row[k * d + j] = val
                for k, val in Bt.rows[j].items():
                    key = i * d + k
                    cur = row.get(key)
                    nv = -val if cur is None else cur - val
                    if nv:
                        row[key] = nv
                    else:
                        row.pop(key, None)
                if row:
                    rows.append(row)
    return rows


def intertwiner_nullity_mod(rep: Representation, rep2: Representation, attempt: int = 0) -> int | None:
    """Upper bound on dim Hom(rep, rep2) from a split prime; None if the prime is unlucky."""
    d = rep.dim
    try:
        ctx = ModContext(rep.config.level, attempt)
        red = ctx.reduce_rows(_equation_rows(rep, rep2))
    except UnluckyPrime:
        return None
    return d * d - kernel.rank_mod(red, d * d, ctx.p)


def _same_setting(rep: Representation, rep2: Representation) -> None:
    if rep.config != rep2.config:
        raise ConfigMismatch("representations use different configurations")
    if rep.kind != rep2.kind:
        raise FamilyMismatch("representations are over different algebras")


def find_intertwiner(rep: Representation, rep2: Representation, method: str = "auto") -> CycMatrix | None:
    """A nonzero T with rho(g) T = T rho'(g) for every generator, or None."""
    _same_setting(rep, rep2)
    if rep.dim != rep2.dim:
        return None
    d = rep.dim
    if method in ("auto", "modular"):
        for attempt in range(2):
            k = intertwiner_nullity_mod(rep, rep2, attempt)
            if k == 0:
                return None
            if k is not None:
                break
    basis = nullspace(_equation_rows(rep, rep2), d * d, rep.config.level)
    if not basis:
        return None
    T = CycMatrix.zeros(d, d, rep.config.level)
    for idx, val in basis[0].items():
        T.set(idx // d, idx % d, val)
    return T


def intertwines(rep: Representation, rep2: Representation, T: CycMatrix) -> bool:
    return all(A @ T == T @ B for A, B in zip(rep.generators(), rep2.generators()))


# ----------------------------------------------------------------------
# The explicit isomorphism for the lambda family
# ----------------------------------------------------------------------

def psi_tilde_matrix(rep: Representation, rep2: Representation, u: int, v: int) -> CycMatrix:
    """The map e(a,b) -> (l1'/l1)^a (l2'/l2)^b s^(-2av) [s^(2(a+u)m1) on wrap] e(a+u, b+v)."""
    c = rep.config
    l1, m1 = rep.grid
    lam, lam2 = rep.params, rep2.params
    f1 = lam[0].inv() * lam2[0]
    f2 = lam[1].inv() * lam2[1]
    T = CycMatrix.zeros(rep.dim, rep.dim, c.level)
    for a in range(l1):
        for b in range(m1):
            coeff = f1 ** a * f2 ** b * c.mono(0, -2 * a * v)
            au = (a + u) % l1
            if b + v >= m1:
                coeff = coeff * c.mono(0, 2 * au * m1)
            T.set(a * m1 + b, au * m1 + (b + v) % m1, coeff)
    return T


# ----------------------------------------------------------------------
# Sampling and cross validation
# ----------------------------------------------------------------------

_RATIONALS = (1, 2, 3, -1, Fraction(1, 2), Fraction(-2, 3))


def random_scalar(config: RootConfig, rng: random.Random) -> CycScalar:
    return config.scalar(rng.choice(_RATIONALS)) * config.zeta(rng.randrange(config.level))


def random_params(family: str, config: RootConfig, rng: random.Random) -> tuple:
    count, nonzero = {U_M_LAMBDA: (4, 3), B_M1_LAMBDA: (4, 3), U_M_MU: (3, 2), B_M2_MU: (3, 2),
                      U_M_EPSILON: (3, 3), B_M3_EPSILON: (3, 3), U_M_NU: (3, 2), U_M_XI: (2, 1)}[family]
    while True:
        vals = [random_scalar(config, rng) for _ in range(count)]
        for i in range(nonzero, count):
            if rng.random() < 0.25:
                vals[i] = config.zero()
        if family in LAMBDA_LIKE and vals[3] == lambda_forbidden_value(config, vals[2]):
            continue
        return tuple(vals)


def _root_in_field(config: RootConfig, order: int, rng: random.Random) -> CycScalar:
    """A random element w of Q(zeta_L) with w^order = 1."""
    from math import gcd
    g = gcd(config.level, order)
    return config.zeta((config.level // g) * rng.randrange(g))


def manufacture_positive(family: str, config: RootConfig, p: Sequence, rng: random.Random):
    """Parameters isomorphic to ``p`` obtained by inverting the shift equations."""
    c = config
    mono = c.mono
    p = parse_params(c, p)
    us, vs = _shift_ranges(family, c, p)
    u, v = rng.choice(us), rng.choice(vs)
    rows, cols = dims_for(family, c, p)
    if family in LAMBDA_LIKE:
        q3 = mono(-2 * u, -2 * u) * mono(-v, v) * p[2]
        q = (mono(0, 2 * v) * p[0] * _root_in_field(c, rows, rng),
             mono(0, -2 * u) * p[1] * _root_in_field(c, cols, rng),
             q3,
             mono(-2 * u, -2 * u) * p[3] + mono(0, 2) * c.delta * geometric(mono(1, -1), v) * q3)
    elif family in MU_LIKE:
        q = (mono(2 * v, 0) * p[0] * _root_in_field(c, rows, rng),
             mono(-2 * u, -2 * u) * p[1],
             mono(-2 * u * cols, 0) * p[2])
    elif family in EPSILON_LIKE:
        q = (p[0] * _root_in_field(c, rows, rng), mono(-u, -u) * p[1], mono(-u, u) * p[2])
    elif family == U_M_NU:
        q = (mono(0, 2 * v) * p[0] * _root_in_field(c, rows, rng),
             mono(-u, -u) * p[1],
             mono(0, -2 * u * cols) * p[2])
    elif family == U_M_XI:
        q = (mono(u, u) * p[0], p[1])
    else:
        raise FamilyMismatch(f"unknown family {family!r}")
    return q, (u, v)


def near_miss(family: str, config: RootConfig, q: Sequence, rng: random.Random) -> tuple:
    """Perturb one invariant of ``q`` by a factor that no shift can absorb."""
    q = list(q)
    slot = rng.randrange(len(q))
    if q[slot].is_zero():
        q[slot] = config.one()
    else:
        q[slot] = q[slot] * config.scalar(rng.choice((2, 3, Fraction(1, 2), -2)))
    if family in LAMBDA_LIKE and q[3] == lambda_forbidden_value(config, q[2]):
        q[3] = q[3] + config.one()
    return tuple(q)


@dataclass
class CrossValidationReport:
    family: str
    config: RootConfig
    pairs: int = 0
    positives: int = 0
    mismatches: list = field(default_factory=list)
    schur_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.schur_failures

    def to_json(self) -> dict:
        return {"family": self.family, "config": self.config.to_json(), "pairs": self.pairs,
                "positives": self.positives, "mismatches": self.mismatches,
                "schur_failures": self.schur_failures}


def cross_validate(family: str, config: RootConfig, sample_count: int = 50, seed: int = 0,
                   reading: str = "repaired") -> CrossValidationReport:
    """Compare the parameter criteria with the intertwiner solver on sampled pairs.

    A third of the pairs are manufactured positives, a third are near misses
    and the rest are independent random draws.
    """
    rng = random.Random(seed)
    report = CrossValidationReport(family, config)
    for i in range(sample_count):
        p = random_params(family, config, rng)
        mode = i % 3
        if mode == 0:
            q, _ = manufacture_positive(family, config, p, rng)
        elif mode == 1:
            q, _ = manufacture_positive(family, config, p, rng)
            q = near_miss(family, config, q, rng)
        else:
            q = random_params(family, config, rng)
        verdict = iso_by_criteria(family, p, q, config, reading)
        rep, rep2 = build(family, config, p), build(family, config, q)
        T = find_intertwiner(rep, rep2)
        found = T is not None
        report.pairs += 1
        report.positives += int(found)
        if found != verdict.by_criteria:
            report.mismatches.append({"p": [str(x) for x in p], "q": [str(x) for x in q],
                                      "criteria": verdict.by_criteria, "intertwiner": found,
                                      "mode": ["manufactured", "near_miss", "random"][mode]})
        if found and inverse(T) is None:
            report.schur_failures.append({"p": [str(x) for x in p], "q": [str(x) for x in q]})
    return report


def check_schur(rep: Representation, rep2: Representation, T: CycMatrix) -> None:
    """Raise when a nonzero intertwiner between simple modules is singular."""
    if inverse(T) is None:
        raise SchurViolation("nonzero intertwiner between simple modules is not invertible")
