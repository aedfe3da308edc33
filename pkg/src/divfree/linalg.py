"""Sparse exact linear algebra over the Gaussian rationals.

A vector is a ``dict`` mapping a hashable, mutually comparable key to a
nonzero scalar.  Missing keys are zero.  Everything here is exact; no
pivoting heuristics beyond "smallest key first", which keeps results
deterministic.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping

from .scalars import ONE

Vector = dict

__all__ = [
    "Echelon",
    "SparseMatrix",
    "axpy",
    "coordinates",
    "nullspace",
    "rank",
    "scale",
    "vec_add",
    "vec_equal",
    "vec_sub",
]


def axpy(y: dict, c, x: Mapping) -> dict:
    """y += c*x in place, dropping cancelled entries."""
    if c == 0:
        return y
    for k, v in x.items():
        s = y.get(k)
        if s is None:
            y[k] = c * v
        else:
            s = s + c * v
            if s == 0:
                del y[k]
            else:
                y[k] = s
    return y


def vec_add(x: Mapping, y: Mapping) -> dict:
    return axpy(dict(x), ONE, y)


def vec_sub(x: Mapping, y: Mapping) -> dict:
    return axpy(dict(x), -ONE, y)


def scale(c, x: Mapping) -> dict:
    if c == 0:
        return {}
    return {k: c * v for k, v in x.items()}


def vec_equal(x: Mapping, y: Mapping) -> bool:
    if len(x) != len(y):
        return False
    return all(y.get(k) == v for k, v in x.items())


class Echelon:
    """Incremental fully reduced row echelon form.

    Rows are normalized to 1 at their pivot and are zero at every other
    pivot, so :meth:`reduce` is a single pass.  With ``track=True`` each row
    also carries its expression in terms of the vectors passed to
    :meth:`add`, indexed by insertion order.
    """

    __slots__ = ("rows", "track", "_combos", "_count")

    def __init__(self, track: bool = False):
        self.rows: dict[Hashable, dict] = {}
        self.track = track
        self._combos: dict[Hashable, dict] = {}
        self._count = 0

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self):
        return list(self.rows)

    def reduce(self, v: Mapping, combo: dict | None = None) -> dict:
        r = dict(v)
        for p, row in self.rows.items():
            c = r.get(p)
            if c is not None:
                axpy(r, -c, row)
                if combo is not None:
                    axpy(combo, -c, self._combos[p])
        return r

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def add(self, v: Mapping):
        """Insert v.  Returns None if independent, else its dependency.

        The dependency (only meaningful with ``track=True``) is a dict
        {insertion index: coefficient} of a vanishing combination that uses
        v with coefficient 1.
        """
        idx = self._count
        self._count += 1
        combo = {idx: ONE} if self.track else None
        r = self.reduce(v, combo)
        if not r:
            return combo if combo is not None else {}
        p = min(r)
        inv = ONE / r[p]
        r = {k: inv * x for k, x in r.items()}
        if combo is not None:
            combo = {k: inv * x for k, x in combo.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c is not None:
                axpy(row, -c, r)
                if combo is not None:
                    axpy(self._combos[q], -c, combo)
        self.rows[p] = r
        if combo is not None:
            self._combos[p] = combo
        return None

    def express(self, v: Mapping) -> dict:
        """Coordinates of v w.r.t. the inserted vectors (requires tracking)."""
        if not self.track:
            raise ValueError("express() needs an Echelon built with track=True")
        out: dict = {}
        r = dict(v)
        for p, row in self.rows.items():
            c = r.get(p)
            if c is not None:
                axpy(r, -c, row)
                axpy(out, c, self._combos[p])
        if r:
            raise ValueError("vector is not in the span")
        return out

    def basis(self) -> list[dict]:
        return [dict(row) for row in self.rows.values()]


def rank(vectors: Iterable[Mapping]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def nullspace(columns: list[Mapping]) -> list[dict]:
    """Basis of {c : sum_j c_j columns[j] = 0}, as dicts j -> c_j."""
    e = Echelon(track=True)
    kernel = []
    for col in columns:
        dep = e.add(col)
        if dep is not None:
            kernel.append(dep)
    return kernel


def coordinates(basis: list[Mapping], v: Mapping) -> list:
    """Coefficients of v in ``basis`` (which must be independent)."""
    e = Echelon(track=True)
    for b in basis:
        if e.add(b) is not None:
            raise ValueError("basis vectors are dependent")
    combo = e.express(v)
    return [combo.get(i, 0) for i in range(len(basis))]


class SparseMatrix:
    """Column-sparse exact matrix; ``cols[j]`` maps row index -> entry."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: list[dict] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else [dict() for _ in range(ncols)]

    @classmethod
    def zero(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n, c=ONE):
        if c == 0:
            return cls(n, n)
        return cls(n, n, [{j: c} for j in range(n)])

    @classmethod
    def from_dense(cls, rows: list[list]):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [dict() for _ in range(ncols)]
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if x != 0:
                    cols[j][i] = x
        return cls(nrows, ncols, cols)

    def to_dense(self) -> list[list]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, x in col.items():
                out[i][j] = x
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.cols[j].get(i, 0)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def apply(self, v: Mapping) -> dict:
        """Matrix times sparse vector {col index: coeff}."""
        out: dict = {}
        for j, c in v.items():
            axpy(out, c, self.cols[j])
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        return SparseMatrix(self.nrows, other.ncols, [self.apply(c) for c in other.cols])

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_shape(other)
        return SparseMatrix(self.nrows, self.ncols, [vec_add(a, b) for a, b in zip(self.cols, other.cols)])

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_shape(other)
        return SparseMatrix(self.nrows, self.ncols, [vec_sub(a, b) for a, b in zip(self.cols, other.cols)])

    def __neg__(self):
        return SparseMatrix(self.nrows, self.ncols, [scale(-ONE, c) for c in self.cols])

    def __rmul__(self, c):
        return SparseMatrix(self.nrows, self.ncols, [scale(c, col) for col in self.cols])

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.nrows == other.nrows
            and self.ncols == other.ncols
            and all(vec_equal(a, b) for a, b in zip(self.cols, other.cols))
        )

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def axpy(self, c, other: "SparseMatrix") -> "SparseMatrix":
        """self += c*other in place."""
        self._check_shape(other)
        if c != 0:
            for a, b in zip(self.cols, other.cols):
                axpy(a, c, b)
        return self

    def copy(self) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, [dict(c) for c in self.cols])

    def trace(self):
        t = 0
        for j, col in enumerate(self.cols):
            x = col.get(j)
            if x is not None:
                t = t + x
        return t

    def _check_shape(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
