"""Sparse matrices over Q(zeta_L) and exact Gaussian elimination."""
from __future__ import annotations

from typing import Iterable, Sequence

from .cyclotomic import CycScalar
from .errors import LevelMismatch


class CycMatrix:
    """A sparse matrix stored as a list of row dictionaries {column: value}.

    Zero entries are never stored.  Matrices are treated as values once
    built; the ``set`` and ``add_to`` mutators are meant for construction.
    """

    __slots__ = ("nrows", "ncols", "level", "rows")

    def __init__(self, nrows: int, ncols: int, level: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.level = level
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]

    @classmethod
    def zeros(cls, nrows: int, ncols: int, level: int) -> "CycMatrix":
        return cls(nrows, ncols, level)

    @classmethod
    def identity(cls, n: int, level: int) -> "CycMatrix":
        one = CycScalar.one(level)
        return cls(n, n, level, [{i: one} for i in range(n)])

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[CycScalar]], level: int) -> "CycMatrix":
        nrows = len(entries)
        ncols = len(entries[0]) if nrows else 0
        rows = []
        for r in entries:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            rows.append({j: v for j, v in enumerate(r) if v})
        return cls(nrows, ncols, level, rows)

    def to_dense(self) -> list[list[CycScalar]]:
        zero = CycScalar.zero(self.level)
        return [[row.get(j, zero) for j in range(self.ncols)] for row in self.rows]

    def copy(self) -> "CycMatrix":
        return CycMatrix(self.nrows, self.ncols, self.level, [dict(r) for r in self.rows])

    # ----- entry access -------------------------------------------------
    def get(self, i: int, j: int) -> CycScalar:
        v = self.rows[i].get(j)
        return CycScalar.zero(self.level) if v is None else v

    def set(self, i: int, j: int, v: CycScalar) -> None:
        if v:
            self.rows[i][j] = v
        else:
            self.rows[i].pop(j, None)

    def add_to(self, i: int, j: int, v: CycScalar) -> None:
        cur = self.rows[i].get(j)
        self.set(i, j, v if cur is None else cur + v)

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    # ----- algebra ------------------------------------------------------
    def _same_shape(self, other: "CycMatrix") -> None:
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        if self.level != other.level:
            raise LevelMismatch("matrices live over different fields")

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        self._same_shape(other)
        out = self.copy()
        for i, row in enumerate(other.rows):
            for j, v in row.items():
                out.add_to(i, j, v)
        return out

    def __neg__(self) -> "CycMatrix":
        return CycMatrix(self.nrows, self.ncols, self.level,
                         [{j: -v for j, v in r.items()} for r in self.rows])

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        return self + (-other)

    def scale(self, c) -> "CycMatrix":
        if not isinstance(c, CycScalar):
            c = CycScalar.rational(self.level, c)
        if not c:
            return CycMatrix.zeros(self.nrows, self.ncols, self.level)
        return CycMatrix(self.nrows, self.ncols, self.level,
                         [{j: v * c for j, v in r.items()} for r in self.rows])

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        if self.ncols != other.nrows:
            raise ValueError("inner dimensions differ")
        if self.level != other.level:
            raise LevelMismatch("matrices live over different fields")
        out_rows = []
        orows = other.rows
        for row in self.rows:
            acc: dict = {}
            for k, a in row.items():
                for j, b in orows[k].items():
                    cur = acc.get(j)
                    acc[j] = a * b if cur is None else cur + a * b
            out_rows.append({j: v for j, v in acc.items() if v})
        return CycMatrix(self.nrows, other.ncols, self.level, out_rows)

    def __pow__(self, k: int) -> "CycMatrix":
        out = CycMatrix.identity(self.nrows, self.level)
        for _ in range(k):
            out = out @ self
        return out

    def transpose(self) -> "CycMatrix":
        out = CycMatrix.zeros(self.ncols, self.nrows, self.level)
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                out.rows[j][i] = v
        return out

    def is_zero(self) -> bool:
        return not any(self.rows)

    def first_nonzero(self):
        """(i, j, value) of the first nonzero entry in row-major order, or None."""
        for i, row in enumerate(self.rows):
            if row:
                j = min(row)
                return i, j, row[j]
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return ((self.nrows, self.ncols, self.level) == (other.nrows, other.ncols, other.level)
                and self.rows == other.rows)

    def flatten(self) -> dict:
        """Row-major vectorization as a sparse dict {i*ncols + j: value}."""
        n = self.ncols
        return {i * n + j: v for i, row in enumerate(self.rows) for j, v in row.items()}

    def __repr__(self) -> str:
        return f"CycMatrix({self.nrows}x{self.ncols}, level={self.level}, nnz={self.nnz()})"


class ExactEchelon:
    """Incremental reduced echelon basis of sparse vectors over Q(zeta_L).

    Every stored row is 1 at its pivot and 0 at every other pivot column,
    so a single pass over the pivots of a candidate reduces it completely.
    """

    def __init__(self):
        self.rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = dict(vec)
        for p in [c for c in v if c in self.rows]:
            x = v.get(p)
            if not x:
                continue
            for j, y in self.rows[p].items():
                cur = v.get(j)
                val = -x * y if cur is None else cur - x * y
                if val:
                    v[j] = val
                else:
                    v.pop(j, None)
        return v

    def add(self, vec: dict) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = v[p].inv()
        v = {j: y * inv for j, y in v.items()}
        for q, row in self.rows.items():
            x = row.get(p)
            if x:
                for j, y in v.items():
                    cur = row.get(j)
                    val = -x * y if cur is None else cur - x * y
                    if val:
                        row[j] = val
                    else:
                        row.pop(j, None)
        self.rows[p] = v
        return True


def nullspace(rows: Iterable[dict], ncols: int, level: int) -> list[dict]:
    """Exact nullspace basis of a sparse system (list of {col: value} rows)."""
    ech = ExactEchelon()
    for r in rows:
        ech.add(r)
        if ech.rank == ncols:
            return []
    one = CycScalar.one(level)
    basis = []
    for f in range(ncols):
        if f in ech.rows:
            continue
        vec = {f: one}
        for p, row in ech.rows.items():
            y = row.get(f)
            if y:
                vec[p] = -y
        basis.append(vec)
    return basis


def rank(mat: CycMatrix) -> int:
    ech = ExactEchelon()
    for r in mat.rows:
        ech.add(r)
    return ech.rank


def inverse(mat: CycMatrix) -> CycMatrix | None:
    """Exact inverse by Gauss-Jordan on [M | I]; None when M is singular."""
    n = mat.nrows
    if n != mat.ncols:
        raise ValueError("only square matrices have inverses")
    one = CycScalar.one(mat.level)
    ech = ExactEchelon()
    for i, row in enumerate(mat.rows):
        aug = dict(row)
        aug[n + i] = one
        ech.add(aug)
    if any(p >= n for p in ech.rows) or ech.rank < n:
        return None
    out = CycMatrix.zeros(n, n, mat.level)
    for p, row in ech.rows.items():
        for j, v in row.items():
            if j >= n:
                out.rows[p][j - n] = v
    return out
