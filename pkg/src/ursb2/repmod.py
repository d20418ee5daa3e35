"""Explicit module families as exact generator matrices.

Every family is a right module: basis vectors are rows and a generator acts
by right multiplication, so the matrix of a product XY is M_X @ M_Y.  Basis
vectors e(a, b) sit at row a*cols + b; one-index families use e(a) -> a.

Two action tables contain misprints that the relation checker exposes.  The
builder takes a ``reading`` argument: "repaired" (default) uses the
corrected entries, "literal" reproduces the printed ones.  The readings used
are listed in ``Representation.notes``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cyclotomic import CycScalar, RootConfig, geometric
from .errors import ConstraintViolated, FamilyMismatch, SingularX1, ZeroParameter
from .linalg import CycMatrix, inverse

U_M_LAMBDA = "U_M_LAMBDA"
U_M_MU = "U_M_MU"
U_M_EPSILON = "U_M_EPSILON"
U_M_NU = "U_M_NU"
U_M_XI = "U_M_XI"
B_M1_LAMBDA = "B_M1_LAMBDA"
B_M2_MU = "B_M2_MU"
B_M3_EPSILON = "B_M3_EPSILON"

U_FAMILIES = (U_M_LAMBDA, U_M_MU, U_M_EPSILON, U_M_NU, U_M_XI)
B_FAMILIES = (B_M1_LAMBDA, B_M2_MU, B_M3_EPSILON)
FAMILIES = U_FAMILIES + B_FAMILIES

U_GENERATORS = ("X1", "X2", "X3", "X4")
B_GENERATORS = ("X1", "X2", "X3", "W")

# family -> (number of parameters, indices that must be nonzero)
PARAM_SHAPE = {
    U_M_LAMBDA: (4, (0, 1, 2)),
    B_M1_LAMBDA: (4, (0, 1, 2)),
    U_M_MU: (3, (0, 1)),
    B_M2_MU: (3, (0, 1)),
    U_M_EPSILON: (3, (0, 1, 2)),
    B_M3_EPSILON: (3, (0, 1, 2)),
    U_M_NU: (3, (0, 1)),
    U_M_XI: (2, (0,)),
}


def family_kind(family: str) -> str:
    if family in U_FAMILIES:
        return "U"
    if family in B_FAMILIES:
        return "B"
    raise FamilyMismatch(f"unknown family {family!r}")


def generator_names(kind: str) -> tuple[str, ...]:
    return U_GENERATORS if kind == "U" else B_GENERATORS


@dataclass
class Representation:
    family: str
    config: RootConfig
    params: tuple
    dim: int
    grid: tuple
    matrices: dict
    notes: list = field(default_factory=list)

    @property
    def kind(self) -> str:
        if self.family in FAMILIES:
            return family_kind(self.family)
        return "B" if "W" in self.matrices else "U"

    def generators(self) -> list[CycMatrix]:
        return [self.matrices[g] for g in generator_names(self.kind)]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "config": self.config.to_json(),
            "params": [p.to_json() for p in self.params],
            "dim": self.dim,
            "grid": list(self.grid),
            "matrices": {name: [[x.to_json() for x in row] for row in mat.to_dense()]
                         for name, mat in sorted(self.matrices.items())},
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Representation":
        cfg = RootConfig.from_json(obj["config"])
        mats = {}
        for name, rows in obj["matrices"].items():
            dense = [[CycScalar.from_json(x) for x in row] for row in rows]
            mats[name] = CycMatrix.from_dense(dense, cfg.level) if dense else \
                CycMatrix.zeros(0, 0, cfg.level)
        dim = int(obj["dim"])
        for name, m in mats.items():
            if (m.nrows, m.ncols) != (dim, dim):
                raise ValueError(f"matrix {name} has shape {m.nrows}x{m.ncols}, expected {dim}x{dim}")
        return cls(obj["family"], cfg, tuple(CycScalar.from_json(p) for p in obj["params"]),
                   dim, tuple(obj["grid"]), mats, list(obj.get("notes", [])))


# ----------------------------------------------------------------------
# Parameters
# ----------------------------------------------------------------------

def parse_param(config: RootConfig, value) -> CycScalar:
    """Accept a CycScalar, an int/Fraction/str rational, {"zeta": k, "coeff": q}, or scalar JSON."""
    if isinstance(value, CycScalar):
        if value.level != config.level:
            raise ValueError(f"parameter lives at level {value.level}, config needs {config.level}")
        return value
    if isinstance(value, (int, Fraction, str)) and not isinstance(value, bool):
        return config.scalar(Fraction(value))
    if isinstance(value, dict):
        if "coeffs" in value:
            return parse_param(config, CycScalar.from_json(value))
        coeff = config.scalar(Fraction(value.get("coeff", 1)))
        return coeff * config.zeta(int(value.get("zeta", 0)))
    raise TypeError(f"cannot interpret parameter {value!r}")


def parse_params(config: RootConfig, values: Sequence) -> tuple:
    return tuple(parse_param(config, v) for v in values)


def lambda_forbidden_value(config: RootConfig, lam3: CycScalar) -> CycScalar:
    c = config
    return c.mono(0, 2) * c.delta / (c.one() - c.mono(1, -1)) * lam3


def validate_params(family: str, config: RootConfig, params: Sequence) -> tuple:
    count, nonzero = PARAM_SHAPE[family]
    if len(params) != count:
        raise ValueError(f"{family} takes {count} parameters, got {len(params)}")
    params = parse_params(config, params)
    for i in nonzero:
        if params[i].is_zero():
            raise ZeroParameter(f"{family}: parameter {i + 1} must be nonzero")
    if family in (U_M_LAMBDA, B_M1_LAMBDA):
        if params[3] == lambda_forbidden_value(config, params[2]):
            raise ConstraintViolated("lambda_4 equals s^2 (r^2 - s^2) lambda_3 / (1 - r s^-1)")
    return params


# ----------------------------------------------------------------------
# Dimensions
# ----------------------------------------------------------------------

def dims_for(family: str, config: RootConfig, params: Sequence = ()) -> tuple[int, int]:
    o = config.orders
    if family in (U_M_LAMBDA, B_M1_LAMBDA):
        base = o["r2s2"]
        l1 = base if (base * o["rs_inv"]) % o["s2"] == 0 else 2 * base
        return l1, o["rs_inv"]
    if family in (U_M_MU, B_M2_MU):
        mu3_zero = bool(params) and parse_param(config, params[2]).is_zero()
        base = o["rs_inv"]
        m2 = base if ((o["r2s2"] * base) % o["r2"] == 0 or mu3_zero) else 2 * base
        return o["r2s2"], m2
    if family in (U_M_EPSILON, B_M3_EPSILON):
        from math import lcm
        return lcm(o["rs"], o["rs_inv"]), 1
    if family == U_M_NU:
        nu3_zero = bool(params) and parse_param(config, params[2]).is_zero()
        base = o["r_2s2"]
        m3 = base if ((base * o["rs"]) % o["s2"] == 0 or nu3_zero) else 2 * base
        return o["rs"], m3
    if family == U_M_XI:
        from math import lcm
        xi2_zero = bool(params) and parse_param(config, params[1]).is_zero()
        return (o["rs_inv"] if xi2_zero else lcm(o["rs"], o["rs_inv"])), 1
    raise FamilyMismatch(f"unknown family {family!r}")


# ----------------------------------------------------------------------
# Builders
# ----------------------------------------------------------------------

class _Grid:
    def __init__(self, rows: int, cols: int, level: int):
        self.rows, self.cols, self.level = rows, cols, level
        self.dim = rows * cols

    def idx(self, a: int, b: int = 0) -> int:
        return (a % self.rows) * self.cols + b

    def new(self) -> CycMatrix:
        return CycMatrix.zeros(self.dim, self.dim, self.level)

    def cells(self):
        for a in range(self.rows):
            for b in range(self.cols):
                yield a, b


def _lambda_common(c: RootConfig, lam, g: _Grid):
    l1, l2, l3, l4 = lam
    m1 = g.cols
    X1, X2, X3 = g.new(), g.new(), g.new()
    for a, b in g.cells():
        i = g.idx(a, b)
        X1.add_to(i, g.idx(a + 1, b), c.mono(0, -2 * b) * l1)
        if b != m1 - 1:
            X2.add_to(i, g.idx(a, b + 1), l2)
        else:
            X2.add_to(i, g.idx(a, 0), c.mono(0, 2 * a * m1) * l2)
        X3.add_to(i, g.idx(a - 1, b), c.mono(2 * a + b, 2 * a + b) * l1.inv() * l3)
    return X1, X2, X3


def _lambda_bracket(c: RootConfig, lam, b: int) -> CycScalar:
    """lambda_4 - s^2 (r^2 - s^2) [b] lambda_3 with [b] = 1 + q + ... + q^(b-1), q = r s^-1."""
    return lam[3] - c.mono(0, 2) * c.delta * geometric(c.mono(1, -1), b) * lam[2]


def _build_lambda(c: RootConfig, lam, kind: str, reading: str, notes: list):
    l1, l2, l3, l4 = lam
    rows, m1 = dims_for(U_M_LAMBDA, c)
    g = _Grid(rows, m1, c.level)
    X1, X2, X3 = _lambda_common(c, lam, g)
    if kind == "B":
        W = g.new()
        for a, b in g.cells():
            i = g.idx(a, b)
            if b != 0:
                W.add_to(i, g.idx(a, b - 1),
                         l2.inv() * c.mono(2 * a, 2 * a) * _lambda_bracket(c, lam, b))
            else:
                W.add_to(i, g.idx(a, m1 - 1),
                         l2.inv() * l4 * c.mono(2 * a, -2 * a * (m1 - 1)))
        return (rows, m1), {"X1": X1, "X2": X2, "X3": X3, "W": W}
    inv_delta = c.delta.inv()
    X4 = g.new()
    for a, b in g.cells():
        i = g.idx(a, b)
        T = l1.inv() * l2.inv() * _lambda_bracket(c, lam, b)
        if b == 0:
            if reading == "literal":
                # printed exponent of s: -2(a-1)m_1 + 1
                first = c.mono(2 * a, 2 * a) * c.mono(0, -2 * (a - 1) * m1 + 1)
            else:
                first = c.mono(2 * a, 2 * a) * c.mono(0, -2 * ((a - 1) * m1 + 1))
            X4.add_to(i, g.idx(a - 1, m1 - 1), inv_delta * first * T)
            X4.add_to(i, g.idx(a - 1, 1 % m1), -inv_delta * c.mono(0, 2) * l1.inv() * l2)
        elif b == m1 - 1:
            X4.add_to(i, g.idx(a - 1, m1 - 2),
                      inv_delta * c.mono(2 * a, 2 * a + 2 * (m1 - 2)) * T)
            X4.add_to(i, g.idx(a - 1, 0), -inv_delta * c.mono(0, 2 * a * m1) * l1.inv() * l2)
        else:
            X4.add_to(i, g.idx(a - 1, b - 1), inv_delta * c.mono(2 * a, 2 * a + 2 * (b - 1)) * T)
            X4.add_to(i, g.idx(a - 1, b + 1), -inv_delta * c.mono(0, 2 * (b + 1)) * l1.inv() * l2)
    notes.append(f"X4 at b=0 uses s-exponent {'-2(a-1)m1+1' if reading == 'literal' else '-2((a-1)m1+1)'}")
    return (rows, m1), {"X1": X1, "X2": X2, "X3": X3, "X4": X4}


def _build_mu(c: RootConfig, mu, kind: str):
    m1_, m2_, m3_ = mu
    rows, m2 = dims_for(U_M_MU, c, mu)
    g = _Grid(rows, m2, c.level)
    X1, X2, X3 = g.new(), g.new(), g.new()
    q_inv = c.mono(-1, 1)
    sd = c.mono(0, 2) * c.delta
    for a, b in g.cells():
        i = g.idx(a, b)
        X1.add_to(i, g.idx(a + 1, b), c.mono(-2 * b, 0) * m1_)
        if b != 0:
            X2.add_to(i, g.idx(a, b - 1), c.mono(2 * a, 2 * a) * sd * geometric(q_inv, b) * m2_)
        X3.add_to(i, g.idx(a - 1, b), c.mono(2 * a + b, 2 * a + b) * m1_.inv() * m2_)
    mats = {"X1": X1, "X2": X2, "X3": X3}
    if kind == "B":
        W = g.new()
        for a, b in g.cells():
            i = g.idx(a, b)
            if b != m2 - 1:
                W.add_to(i, g.idx(a, b + 1), c.one())
            else:
                W.add_to(i, g.idx(a, 0), c.mono(2 * a * m2, 0) * m3_)
        mats["W"] = W
        return (rows, m2), mats
    inv_delta = c.delta.inv()
    X4 = g.new()
    for a, b in g.cells():
        i = g.idx(a, b)
        if b == m2 - 1:
            X4.add_to(i, g.idx(a - 1, 0), inv_delta * c.mono(2 * a * m2, 0) * m1_.inv() * m3_)
        else:
            X4.add_to(i, g.idx(a - 1, b + 1), inv_delta * c.mono(2 * (b + 1), 0) * m1_.inv())
        if b != 0:
            X4.add_to(i, g.idx(a - 1, b - 1),
                      -inv_delta * c.mono(2 * a, 2 * a) * sd * c.mono(2 * (b - 1), 0)
                      * geometric(q_inv, b) * m1_.inv() * m2_)
    mats["X4"] = X4
    return (rows, m2), mats


def _build_epsilon(c: RootConfig, eps, kind: str):
    e1, e2, e3 = eps
    n, _ = dims_for(U_M_EPSILON, c)
    g = _Grid(n, 1, c.level)
    one_q = c.one() - c.mono(1, -1)
    X1, X2, X3 = g.new(), g.new(), g.new()
    k1 = e1 * e1 * e3 * e2.inv() * one_q / (c.mono(0, 2) * c.delta)
    for a in range(n):
        X1.add_to(a, g.idx(a + 2), k1 * c.mono(0, -2 * a))
        X2.add_to(a, g.idx(a + 1), e1)
        X3.add_to(a, a, c.mono(a, a) * e2)
    mats = {"X1": X1, "X2": X2, "X3": X3}
    if kind == "B":
        W = g.new()
        for a in range(n):
            W.add_to(a, g.idx(a + 1), e1 * e3 * c.mono(a, -a))
        mats["W"] = W
    else:
        X4 = g.new()
        for a in range(n):
            coeff = e1.inv() * e2 * e3.inv() * (e3 * c.mono(a, -a) - c.one()) * c.mono(0, 2 * a) / one_q
            X4.add_to(a, g.idx(a - 1), coeff)
        mats["X4"] = X4
    return (n,), mats


def _build_nu(c: RootConfig, nu, reading: str, notes: list):
    n1, n2, n3 = nu
    rows, m3 = dims_for(U_M_NU, c, nu)
    g = _Grid(rows, m3, c.level)
    X1, X2, X3, X4 = g.new(), g.new(), g.new(), g.new()
    p = c.mono(-1, 1)  # r^-1 s
    rs_shift = c.mono(2, 2) if reading == "literal" else c.mono(-2, -2)
    cw = c.mono(0, -2) - c.mono(-1, -1)
    for a, b in g.cells():
        i = g.idx(a, b)
        if b != 0:
            coeff = (-c.mono(0, -4 * (b - 1)) * rs_shift * (c.one() - p)
                     * geometric(p * p, b) * n1 * n1)
            X1.add_to(i, g.idx(a + 2, b - 1), coeff)
        X2.add_to(i, g.idx(a + 1, b), c.mono(0, -2 * b) * n1)
        X3.add_to(i, i, c.mono(a, a) * n2)
        pre = c.mono(0, 2 * b) / cw
        if b != m3 - 1:
            X4.add_to(i, g.idx(a - 1, b + 1), pre * n1.inv())
        else:
            X4.add_to(i, g.idx(a - 1, 0), pre * c.mono(0, 2 * (a - 1) * m3) * n1.inv() * n3)
        X4.add_to(i, g.idx(a - 1, b), -pre * c.mono(a - 1, a - 1) * n1.inv() * n2)
    notes.append(f"X1 uses the factor {'(rs)^2' if reading == 'literal' else '(rs)^-2'}")
    return (rows, m3), {"X1": X1, "X2": X2, "X3": X3, "X4": X4}


def _build_xi(c: RootConfig, xi):
    x1, x2 = xi
    n, _ = dims_for(U_M_XI, c, xi)
    g = _Grid(n, 1, c.level)
    X1, X2, X3, X4 = g.new(), g.new(), g.new(), g.new()
    q = c.mono(1, -1)
    for a in range(n):
        if a >= 2:
            coeff = (-c.mono(-2 * (a - 1), 0) * geometric(q, a - 1) * (c.one() - q ** a)
                     / (c.one() - q * q) * x1)
            X1.add_to(a, a - 2, coeff)
        if a >= 1:
            X2.add_to(a, a - 1, c.mono(-(a - 1), -(a - 1)) * geometric(q, a) * x1)
        X3.add_to(a, a, c.mono(-a, -a) * x1)
        if a != n - 1:
            X4.add_to(a, a + 1, c.one())
        else:
            X4.add_to(a, 0, x2)
    return (n,), {"X1": X1, "X2": X2, "X3": X3, "X4": X4}


def build(family: str, config: RootConfig, params: Sequence, reading: str = "repaired") -> Representation:
    """Construct the family's generator matrices for the given parameters."""
    if reading not in ("repaired", "literal"):
        raise ValueError("reading must be 'repaired' or 'literal'")
    kind = family_kind(family)
    params = validate_params(family, config, params)
    notes: list = []
    if family in (U_M_LAMBDA, B_M1_LAMBDA):
        grid, mats = _build_lambda(config, params, kind, reading, notes)
    elif family in (U_M_MU, B_M2_MU):
        grid, mats = _build_mu(config, params, kind)
    elif family in (U_M_EPSILON, B_M3_EPSILON):
        grid, mats = _build_epsilon(config, params, kind)
        if kind == "U":
            notes.append("X1 target index read as e(a+2)")
    elif family == U_M_NU:
        grid, mats = _build_nu(config, params, reading, notes)
    else:
        grid, mats = _build_xi(config, params)
    dim = 1
    for x in grid:
        dim *= x
    return Representation(family, config, params, dim, tuple(grid), mats, notes)


def lift_b_module(rep: Representation) -> Representation:
    """Extend a B-module with invertible X1 to the full algebra.

    X4 acts as (W - X2) X1^-1 / (r^2 - s^2); the other generators are kept.
    """
    if rep.kind != "B":
        raise FamilyMismatch("only B-modules can be lifted")
    X1inv = inverse(rep.matrices["X1"])
    if X1inv is None:
        raise SingularX1("X1 does not act invertibly")
    c = rep.config
    X4 = ((rep.matrices["W"] - rep.matrices["X2"]) @ X1inv).scale(c.delta.inv())
    mats = {"X1": rep.matrices["X1"], "X2": rep.matrices["X2"], "X3": rep.matrices["X3"], "X4": X4}
    return Representation("LIFT_" + rep.family, c, rep.params, rep.dim, rep.grid, mats,
                          list(rep.notes) + ["X4 obtained by lifting"])


def direct_sum(rep: Representation, other: Representation) -> Representation:
    """Block-diagonal sum of two representations of the same kind and config."""
    if rep.kind != other.kind or rep.config != other.config:
        raise FamilyMismatch("direct sum needs matching kind and config")
    d = rep.dim
    mats = {}
    for name in generator_names(rep.kind):
        A, B = rep.matrices[name], other.matrices[name]
        M = CycMatrix.zeros(d + other.dim, d + other.dim, rep.config.level)
        for i, row in enumerate(A.rows):
            M.rows[i].update(row)
        for i, row in enumerate(B.rows):
            M.rows[d + i].update({j + d: v for j, v in row.items()})
        mats[name] = M
    return Representation("SUM", rep.config, rep.params + other.params, d + other.dim,
                          (d + other.dim,), mats, ["direct sum"])
