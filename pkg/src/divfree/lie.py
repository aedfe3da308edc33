"""Elements of the Witt algebra W_n, its divergence-zero subalgebra D_n and
the extended algebra G = D_n x| A_n, with exact brackets.

An element is stored in a canonical form: one coefficient vector ``u`` per
degree ``m`` (the vector field D(u, m) = sum_i u_i t^m d_i) and one scalar per
degree for the commutative part t^m.  D_ij(r) and d_k are constructors that
normalize into this form, so equality of elements is plain dict equality.
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import lattice
from .linalg import Echelon
from .scalars import ONE, ZERO, as_scalar, scalar_from_json, scalar_to_json

__all__ = [
    "Algebra",
    "AlgebraElement",
    "RankMismatch",
    "GradedComponent",
    "bracket",
    "change_coordinates",
    "d",
    "dij",
    "divergence",
    "element_from_json",
    "element_to_json",
    "find_orthogonal",
    "graded_basis",
    "graded_component",
    "graded_coordinates",
    "inner",
    "t",
]


class RankMismatch(ValueError):
    """Operands live over different ambient ranks n."""


class Algebra(str, Enum):
    WITT = "Witt"
    DIVZERO = "DivZero"
    EXTENDED = "Extended"


def inner(u: Sequence, r: Sequence):
    """(u|r) = sum u_i r_i, exact."""
    s = ZERO
    for a, b in zip(u, r):
        if a and b:
            s = s + a * b
    return s


def _vec(u) -> tuple:
    return tuple(as_scalar(x) for x in u)


def _is_zero_vec(u) -> bool:
    return not any(u)


class AlgebraElement:
    """Finite combination sum_m D(u_m, m) + sum_m c_m t^m over rank n.

    Immutable after construction.  ``d_terms`` maps degree -> coefficient
    vector and ``t_terms`` maps degree -> scalar; zero entries are never
    stored.
    """

    __slots__ = ("n", "d_terms", "t_terms", "_hash")

    def __init__(self, n: int, d_terms: Mapping | None = None, t_terms: Mapping | None = None):
        if n < 1:
            raise ValueError("rank must be positive")
        self.n = n
        dd = {}
        for m, u in (d_terms or {}).items():
            m = lattice.lattice_vector(m)
            u = _vec(u)
            if len(m) != n or len(u) != n:
                raise RankMismatch(f"degree {m} / vector {u} do not have length {n}")
            if not _is_zero_vec(u):
                dd[m] = u
        tt = {}
        for m, c in (t_terms or {}).items():
            m = lattice.lattice_vector(m)
            if len(m) != n:
                raise RankMismatch(f"degree {m} does not have length {n}")
            c = as_scalar(c)
            if c != 0:
                tt[m] = c
        self.d_terms = dict(sorted(dd.items()))
        self.t_terms = dict(sorted(tt.items()))
        self._hash = None

    @classmethod
    def _raw(cls, n, dd, tt):
        # trusted constructor: inputs already canonical except for ordering
        obj = object.__new__(cls)
        obj.n = n
        obj.d_terms = dict(sorted(dd.items()))
        obj.t_terms = dict(sorted(tt.items()))
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, n: int) -> "AlgebraElement":
        return cls._raw(n, {}, {})

    def is_zero(self) -> bool:
        return not self.d_terms and not self.t_terms

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.n == other.n and self.d_terms == other.d_terms and self.t_terms == other.t_terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, tuple(self.d_terms.items()), tuple(self.t_terms.items())))
        return self._hash

    def __repr__(self):
        parts = []
        for m, u in self.d_terms.items():
            parts.append(f"D({list(map(str, u))}, {m})")
        for m, c in self.t_terms.items():
            parts.append(f"{c}*t^{m}")
        return " + ".join(parts) if parts else "0"

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected an AlgebraElement, got {type(other).__name__}")
        if other.n != self.n:
            raise RankMismatch(f"rank {self.n} vs rank {other.n}")

    def __add__(self, other):
        self._check(other)
        return self._combine(other, ONE)

    def __sub__(self, other):
        self._check(other)
        return self._combine(other, -ONE)

    def _combine(self, other, c):
        dd = dict(self.d_terms)
        for m, u in other.d_terms.items():
            old = dd.get(m)
            new = tuple(c * x for x in u) if old is None else tuple(a + c * b for a, b in zip(old, u))
            if _is_zero_vec(new):
                dd.pop(m, None)
            else:
                dd[m] = new
        tt = dict(self.t_terms)
        for m, x in other.t_terms.items():
            s = tt.get(m, ZERO) + c * x
            if s == 0:
                tt.pop(m, None)
            else:
                tt[m] = s
        return AlgebraElement._raw(self.n, dd, tt)

    def __neg__(self):
        return self.scale(-ONE)

    def scale(self, c) -> "AlgebraElement":
        c = as_scalar(c)
        if c == 0:
            return AlgebraElement.zero(self.n)
        return AlgebraElement._raw(
            self.n,
            {m: tuple(c * x for x in u) for m, u in self.d_terms.items()},
            {m: c * x for m, x in self.t_terms.items()},
        )

    def __rmul__(self, c):
        return self.scale(c)

    def degrees(self) -> list[tuple]:
        return sorted(set(self.d_terms) | set(self.t_terms))

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> tuple:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("element is not homogeneous of a single degree")
        return degs[0]

    def homogeneous_part(self, m) -> "AlgebraElement":
        m = tuple(m)
        dd = {m: self.d_terms[m]} if m in self.d_terms else {}
        tt = {m: self.t_terms[m]} if m in self.t_terms else {}
        return AlgebraElement._raw(self.n, dd, tt)

    def is_divergence_zero(self) -> bool:
        return all(inner(u, m) == 0 for m, u in self.d_terms.items())

    def in_divzero(self) -> bool:
        """Element of D_n: divergence-zero with no A_n part."""
        return not self.t_terms and self.is_divergence_zero()

    def in_extended(self) -> bool:
        """Element of G = D_n x| A_n."""
        return self.is_divergence_zero()


def d(n: int, k: int) -> AlgebraElement:
    """d_k = t_k d/dt_k = D(e_k, 0), with 1 <= k <= n."""
    if not 1 <= k <= n:
        raise IndexError(f"index {k} out of range 1..{n}")
    u = tuple(ONE if i == k - 1 else ZERO for i in range(n))
    return AlgebraElement._raw(n, {(0,) * n: u}, {})


def t(m, c=ONE) -> AlgebraElement:
    """c * t^m in A_n."""
    m = lattice.lattice_vector(m)
    return AlgebraElement(len(m), {}, {m: c})


def D(u, m) -> AlgebraElement:
    """D(u, m) = sum_i u_i t^m d_i."""
    m = lattice.lattice_vector(m)
    return AlgebraElement(len(m), {m: u}, {})


def dij(i: int, j: int, r) -> AlgebraElement:
    """D_ij(r) = r_j t^r d_i - r_i t^r d_j (indices 1-based)."""
    r = lattice.lattice_vector(r)
    n = len(r)
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"indices ({i}, {j}) out of range 1..{n}")
    u = [ZERO] * n
    u[i - 1] = u[i - 1] + r[j - 1]
    u[j - 1] = u[j - 1] - r[i - 1]
    return AlgebraElement(n, {r: u}, {})


def divergence(u, r) -> tuple:
    """div D(u, r) = (u|r) t^r, returned as the pair ((u|r), r)."""
    return inner(_vec(u), r), tuple(r)


def bracket(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Lie bracket in W_n x| A_n (and hence in every subalgebra).

    [D(p,m), D(q,k)] = D((p|k) q - (q|m) p, m+k),
    [D(u,r), t^m] = (u|m) t^{r+m},  [t^r, t^m] = 0.
    """
    x._check(y)
    n = x.n
    dd: dict = {}
    tt: dict = {}
    for m, p in x.d_terms.items():
        for k, q in y.d_terms.items():
            a = inner(p, k)
            b = inner(q, m)
            if a == 0 and b == 0:
                continue
            w = tuple(a * qi - b * pi for pi, qi in zip(p, q))
            deg = tuple(mi + ki for mi, ki in zip(m, k))
            old = dd.get(deg)
            dd[deg] = w if old is None else tuple(s + v for s, v in zip(old, w))
        for k, c in y.t_terms.items():
            a = inner(p, k)
            if a != 0:
                deg = tuple(mi + ki for mi, ki in zip(m, k))
                tt[deg] = tt.get(deg, ZERO) + a * c
    for m, c in x.t_terms.items():
        for k, q in y.d_terms.items():
            b = inner(q, m)
            if b != 0:
                deg = tuple(mi + ki for mi, ki in zip(m, k))
                tt[deg] = tt.get(deg, ZERO) - b * c
    dd = {m: u for m, u in dd.items() if not _is_zero_vec(u)}
    tt = {m: c for m, c in tt.items() if c != 0}
    return AlgebraElement._raw(n, dd, tt)


class GradedComponent:
    """Basis of a homogeneous component of W_n, D_n or G."""

    __slots__ = ("algebra", "degree", "basis")

    def __init__(self, algebra: Algebra, degree: tuple, basis: list[AlgebraElement]):
        self.algebra = algebra
        self.degree = degree
        self.basis = basis

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"GradedComponent({self.algebra.value}, {self.degree}, dim={self.dim})"


@lru_cache(maxsize=None)
def _dpart_basis(m: tuple) -> tuple:
    """Integer basis of {u : (u|m) = 0} for m != 0, taken from the D_ij(m)."""
    n = len(m)
    ech = Echelon()
    chosen = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            u = [0] * n
            u[i - 1] += m[j - 1]
            u[j - 1] -= m[i - 1]
            if any(u) and ech.add({k: ONE * x for k, x in enumerate(u) if x}) is None:
                chosen.append(tuple(u))
    return tuple(chosen)


@lru_cache(maxsize=None)
def _dpart_solver(m: tuple):
    basis = _dpart_basis(m)
    ech = Echelon(track=True)
    for b in basis:
        ech.add({k: ONE * x for k, x in enumerate(b) if x})
    return ech


def graded_basis(n: int, m, algebra: Algebra = Algebra.EXTENDED) -> list[AlgebraElement]:
    m = lattice.lattice_vector(m)
    if len(m) != n:
        raise RankMismatch(f"degree {m} does not have length {n}")
    algebra = Algebra(algebra)
    zero = not any(m)
    if algebra is Algebra.WITT:
        return [AlgebraElement._raw(n, {m: tuple(ONE if i == j else ZERO for i in range(n))}, {}) for j in range(n)]
    if zero:
        out = [d(n, k) for k in range(1, n + 1)]
    else:
        out = [AlgebraElement._raw(n, {m: tuple(ONE * x for x in u)}, {}) for u in _dpart_basis(m)]
    if algebra is Algebra.EXTENDED:
        out.append(AlgebraElement._raw(n, {}, {m: ONE}))
    return out


def graded_component(algebra, m) -> GradedComponent:
    m = lattice.lattice_vector(m)
    algebra = Algebra(algebra)
    return GradedComponent(algebra, m, graded_basis(len(m), m, algebra))


def graded_coordinates(x: AlgebraElement, m=None) -> list:
    """Coordinates of a homogeneous element of G in ``graded_basis(n, m)``."""
    if m is None:
        m = x.degree()
    m = tuple(m)
    if any(k != m for k in x.degrees()):
        raise ValueError("element has components outside the requested degree")
    n = x.n
    u = x.d_terms.get(m)
    c = x.t_terms.get(m, ZERO)
    if not any(m):
        coords = list(u) if u is not None else [ZERO] * n
        return coords + [c]
    if u is None:
        coords = [ZERO] * (n - 1)
    else:
        if inner(u, m) != 0:
            raise ValueError("element is not divergence-zero")
        combo = _dpart_solver(m).express({k: v for k, v in enumerate(u) if v})
        coords = [combo.get(i, ZERO) for i in range(n - 1)]
    return coords + [c]


def change_coordinates(A: Sequence[Sequence[int]], x: AlgebraElement) -> AlgebraElement:
    """The automorphism T_A: D(u, r) -> D(B u, A r), t^r -> t^{A r}, B = (A^T)^{-1}."""
    A = [list(row) for row in A]
    n = len(A)
    if n != x.n:
        raise RankMismatch(f"matrix of size {n} vs element of rank {x.n}")
    B = _dual_matrix(tuple(tuple(r) for r in A))
    dd = {}
    for r, u in x.d_terms.items():
        dd[lattice.mat_vec(A, r)] = tuple(inner(row, u) for row in B)
    tt = {lattice.mat_vec(A, r): c for r, c in x.t_terms.items()}
    return AlgebraElement._raw(n, dd, tt)


@lru_cache(maxsize=256)
def _dual_matrix(A: tuple) -> list:
    d_ = lattice.det([list(r) for r in A])
    if d_ not in (1, -1):
        raise ValueError(f"change of coordinates needs det A = +-1, got {d_}")
    return lattice.transpose(lattice.unimodular_inverse([list(r) for r in A]))


def find_orthogonal(r, s) -> tuple:
    """u with (u|s) != 0 and (u|r+s) = 0, for s not in Q r.

    Uses the first index pair i < j with s_j r_i - s_i r_j != 0 and returns
    u = (r_i + s_i) e_j - (r_j + s_j) e_i.
    """
    r = lattice.lattice_vector(r)
    s = lattice.lattice_vector(s)
    if len(r) != len(s):
        raise RankMismatch("r and s have different lengths")
    n = len(r)
    for i in range(n):
        for j in range(i + 1, n):
            if s[j] * r[i] - s[i] * r[j] != 0:
                u = [0] * n
                u[j] += r[i] + s[i]
                u[i] -= r[j] + s[j]
                return tuple(ONE * x for x in u)
    raise ValueError(f"s = {s} is collinear with r = {r}")


def homogeneous_basis_window(n: int, degrees: Iterable) -> list[AlgebraElement]:
    out = []
    for m in degrees:
        out.extend(graded_basis(n, m))
    return out


SCHEMA_VERSION = 1


def element_to_json(x: AlgebraElement) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "n": x.n,
        "d_terms": [
            {"degree": list(m), "u": [scalar_to_json(c) for c in u]} for m, u in x.d_terms.items()
        ],
        "t_terms": [{"degree": list(m), "coeff": scalar_to_json(c)} for m, c in x.t_terms.items()],
    }


def element_from_json(data: dict) -> AlgebraElement:
    from .io import check_fields, check_version

    check_version(data, SCHEMA_VERSION, "algebra element")
    check_fields(data, {"schema_version", "n", "d_terms", "t_terms"}, "algebra element")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"field 'n': expected a positive integer, got {n!r}")
    dd: dict = {}
    for i, term in enumerate(data["d_terms"]):
        check_fields(term, {"degree", "u"}, f"d_terms[{i}]")
        m = lattice.lattice_vector(term["degree"])
        if m in dd:
            raise ValueError(f"field 'd_terms[{i}].degree': duplicate degree {list(m)}")
        dd[m] = [scalar_from_json(c) for c in term["u"]]
    tt: dict = {}
    for i, term in enumerate(data["t_terms"]):
        check_fields(term, {"degree", "coeff"}, f"t_terms[{i}]")
        m = lattice.lattice_vector(term["degree"])
        if m in tt:
            raise ValueError(f"field 't_terms[{i}].degree': duplicate degree {list(m)}")
        tt[m] = scalar_from_json(term["coeff"])
    return AlgebraElement(n, dd, tt)
