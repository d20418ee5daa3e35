"""Exact checks on representations: defining relations, simplicity, dimension bound."""
from __future__ import annotations

import os
from dataclasses import dataclass, field

from .cyclotomic import CycScalar
from .errors import DimensionCeiling
from .linalg import CycMatrix, ExactEchelon
from .modular import ModContext, UnluckyPrime, kernel
from .repmod import Representation

DEFAULT_CEILING = 32
CEILING_ENV = "URSB2_CEILING"


def simplicity_ceiling() -> int:
    raw = os.environ.get(CEILING_ENV)
    return int(raw) if raw else DEFAULT_CEILING


@dataclass
class RelationReport:
    residuals: dict = field(default_factory=dict)  # relation name -> True when it holds
    first_failure: tuple | None = None  # (name, (i, j), value as string)

    @property
    def passed(self) -> bool:
        return all(self.residuals.values())

    def to_json(self) -> dict:
        return {"pass": self.passed, "relations": dict(self.residuals),
                "first_failure": None if self.first_failure is None else {
                    "relation": self.first_failure[0],
                    "entry": list(self.first_failure[1]),
                    "value": self.first_failure[2]}}


def _record(report: RelationReport, name: str, residual: CycMatrix) -> None:
    hit = residual.first_nonzero()
    report.residuals[name] = hit is None
    if hit is not None and report.first_failure is None:
        i, j, v = hit
        report.first_failure = (name, (i, j), str(v))


def check_relations(rep: Representation) -> RelationReport:
    """The six commutation relations and both Serre relations with e1 = X1, e2 = X4."""
    c = rep.config
    M = rep.matrices
    X1, X2, X3, X4 = M["X1"], M["X2"], M["X3"], M["X4"]
    mono = c.mono
    rep_ = RelationReport()
    _record(rep_, "X1X2 = s^2 X2X1", X1 @ X2 - (X2 @ X1).scale(mono(0, 2)))
    _record(rep_, "X1X3 = r^2s^2 X3X1", X1 @ X3 - (X3 @ X1).scale(mono(2, 2)))
    _record(rep_, "X1X4 = r^2 X4X1 + X2", X1 @ X4 - (X4 @ X1).scale(mono(2, 0)) - X2)
    _record(rep_, "X2X3 = rs X3X2", X2 @ X3 - (X3 @ X2).scale(mono(1, 1)))
    _record(rep_, "X2X4 = s^2 X4X2 - s^2 X3", X2 @ X4 - (X4 @ X2).scale(mono(0, 2)) + X3.scale(mono(0, 2)))
    _record(rep_, "X3X4 = rs X4X3", X3 @ X4 - (X4 @ X3).scale(mono(1, 1)))
    e1, e2 = X1, X4
    e1e2 = e1 @ e2
    e2e1 = e2 @ e1
    r2, s2, rs = mono(2, 0), mono(0, 2), mono(1, 1)
    serre1 = e1 @ e1e2 - (e1e2 @ e1).scale(r2 + s2) + (e2e1 @ e1).scale(r2 * s2)
    _record(rep_, "serre e1^2 e2", serre1)
    e2sq = e2 @ e2
    t = r2 + rs + s2
    serre2 = (e1e2 @ e2sq - (e2e1 @ e2sq).scale(t) + (e2 @ e2e1 @ e2).scale(rs * t)
              - (e2sq @ e2e1).scale(rs * rs * rs))
    _record(rep_, "serre e1 e2^3", serre2)
    return rep_


def check_b_relations(rep: Representation) -> RelationReport:
    """The six relations among X1, X2, X3 and W of the torsionfree subalgebra."""
    c = rep.config
    M = rep.matrices
    X1, X2, X3, W = M["X1"], M["X2"], M["X3"], M["W"]
    mono = c.mono
    rep_ = RelationReport()
    _record(rep_, "W X1 = r^-2 X1 W", W @ X1 - (X1 @ W).scale(mono(-2, 0)))
    _record(rep_, "X2 X1 = s^-2 X1 X2", X2 @ X1 - (X1 @ X2).scale(mono(0, -2)))
    _record(rep_, "X3 X1 = (rs)^-2 X1 X3", X3 @ X1 - (X1 @ X3).scale(mono(-2, -2)))
    _record(rep_, "X3 X2 = (rs)^-1 X2 X3", X3 @ X2 - (X2 @ X3).scale(mono(-1, -1)))
    _record(rep_, "W X3 = rs X3 W", W @ X3 - (X3 @ W).scale(mono(1, 1)))
    _record(rep_, "W X2 = X2 W + s^2 D X3 X1",
            W @ X2 - X2 @ W - (X3 @ X1).scale(mono(0, 2) * c.delta))
    return rep_


def check(rep: Representation) -> RelationReport:
    return check_b_relations(rep) if rep.kind == "B" else check_relations(rep)


# ----------------------------------------------------------------------
# Simplicity
# ----------------------------------------------------------------------

def _modular_algebra_dimension(gens: list[CycMatrix], d: int, level: int, attempt: int) -> int | None:
    try:
        ctx = ModContext(level, attempt)
        red = [ctx.reduce_rows(g.rows) for g in gens]
    except UnluckyPrime:
        return None
    return kernel.algebra_dimension(red, d, ctx.p, d * d)


def exact_algebra_dimension(gens: list[CycMatrix], d: int, level: int) -> int:
    """Dimension of the unital algebra generated by ``gens`` over Q(zeta_L)."""
    ech = ExactEchelon()
    ident = CycMatrix.identity(d, level)
    ech.add(ident.flatten())
    queue = [ident]
    head = 0
    while head < len(queue) and ech.rank < d * d:
        W = queue[head]
        head += 1
        for G in gens:
            C = W @ G
            if ech.add(C.flatten()):
                queue.append(C)
    return ech.rank


def is_simple(rep: Representation, method: str = "auto", ceiling: int | None = None) -> bool:
    """Absolute irreducibility via the dimension of the generated matrix algebra.

    "modular" reduces modulo split primes: full dimension there proves full
    dimension over Q(zeta_L).  "exact" runs the closure over Q(zeta_L).
    "auto" tries two primes and falls back to the exact closure only when
    neither certifies full dimension, so every answer it gives is exact.
    """
    d = rep.dim
    if ceiling is None:
        ceiling = simplicity_ceiling()
    if d > ceiling:
        raise DimensionCeiling(f"dimension {d} exceeds the simplicity ceiling {ceiling}")
    if d == 1:
        return True
    gens = rep.generators()
    level = rep.config.level
    if method in ("auto", "modular"):
        for attempt in range(2):
            dim = _modular_algebra_dimension(gens, d, level, attempt)
            if dim == d * d:
                return True
            if method == "modular" and dim is not None:
                return False
    if method not in ("auto", "exact", "modular"):
        raise ValueError("method must be 'auto', 'exact' or 'modular'")
    return exact_algebra_dimension(gens, d, level) == d * d


def check_dimension_bound(rep: Representation, report) -> bool:
    return rep.dim <= report.pi_deg_snf
