"""Integer lattice helpers: points of Z^n, determinants, unimodular bases."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

LatticeVector = tuple  # tuple[int, ...]

__all__ = [
    "add",
    "box",
    "det",
    "dot",
    "ext_gcd",
    "geq",
    "is_unimodular",
    "lattice_vector",
    "mat_vec",
    "neg",
    "orthogonal_complement_basis",
    "sub",
    "transpose",
    "unimodular_inverse",
    "zero",
]


def lattice_vector(coords: Sequence[int]) -> tuple:
    out = tuple(coords)
    for c in out:
        if not isinstance(c, int) or isinstance(c, bool):
            raise TypeError(f"lattice coordinates must be integers, got {coords!r}")
    return out


def zero(n: int) -> tuple:
    return (0,) * n


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def neg(a):
    return tuple(-x for x in a)


def dot(a, b):
    s = 0
    for x, y in zip(a, b):
        s = s + x * y
    return s


def geq(m, k) -> bool:
    """Componentwise order: m >= k iff m_i >= k_i for every i."""
    return all(x >= y for x, y in zip(m, k))


def box(n: int, lo: int, hi: int | None = None) -> list[tuple]:
    """All points of [lo, hi]^n in lexicographic order (hi defaults to -lo)."""
    if hi is None:
        lo, hi = -abs(lo), abs(lo)
    pts = [()]
    for _ in range(n):
        pts = [p + (c,) for p in pts for c in range(lo, hi + 1)]
    return pts


def transpose(rows):
    return [list(r) for r in zip(*rows)]


def mat_vec(rows, v):
    return tuple(dot(r, v) for r in rows)


def det(rows) -> int:
    """Exact determinant of a square integer (or rational) matrix."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    a = [[Fraction(x) for x in r] for r in rows]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return int(d) if d.denominator == 1 else d


def is_unimodular(rows) -> bool:
    return det(rows) in (1, -1)


def unimodular_inverse(rows) -> list[list[int]]:
    """Integer inverse of a determinant +-1 integer matrix."""
    n = len(rows)
    d = det(rows)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det = {d})")
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    inv = [[x for x in r[n:]] for r in aug]
    assert all(x.denominator == 1 for r in inv for x in r)
    return [[int(x) for x in r] for r in inv]


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def orthogonal_complement_basis(k: Sequence[int]) -> tuple[list[tuple], tuple]:
    """For primitive k, return (basis of {l : (k|l) = 0}, beta with (k|beta) = 1).

    Column operations by extended gcd steps build a unimodular U with
    k U = (1, 0, ..., 0); its first column is beta and the rest span the
    orthogonal lattice.  The n x n matrix with columns [basis..., beta] is
    therefore unimodular.
    """
    k = lattice_vector(k)
    n = len(k)
    if n < 1 or gcd(*k) != 1:
        raise ValueError(f"coordinates of {k} are not relatively prime")
    nz = [i for i, x in enumerate(k) if x != 0]
    if len(nz) == 1:
        i = nz[0]
        beta = tuple(k[i] if j == i else 0 for j in range(n))
        basis = [tuple(int(j == c) for j in range(n)) for c in range(n) if c != i]
        return basis, beta
    # columns of U, stored as lists; row vector r = k U maintained alongside
    cols = [[int(i == j) for i in range(n)] for j in range(n)]
    r = list(k)
    for j in range(1, n):
        if r[j] == 0:
            continue
        g, x, y = ext_gcd(r[0], r[j])
        a, b = r[0] // g, r[j] // g
        c0, cj = cols[0], cols[j]
        cols[0] = [x * p + y * q for p, q in zip(c0, cj)]
        cols[j] = [-b * p + a * q for p, q in zip(c0, cj)]
        r[0], r[j] = g, 0
    assert r[0] == 1
    beta = tuple(cols[0])
    basis = [tuple(_normalize_sign(c)) for c in cols[1:]]
    beta = _reduce_beta(beta, basis)
    return basis, beta


def _normalize_sign(v):
    for x in v:
        if x != 0:
            return [-y for y in v] if x < 0 else list(v)
    return list(v)


def _reduce_beta(beta, basis):
    # shorten beta by integer combinations of the complement (keeps (k|beta)=1)
    improved = True
    beta = list(beta)
    while improved:
        improved = False
        for b in basis:
            bb = dot(b, b)
            t = round(Fraction(dot(beta, b), bb))
            if t:
                cand = [x - t * y for x, y in zip(beta, b)]
                if dot(cand, cand) < dot(beta, beta):
                    beta = cand
                    improved = True
    return tuple(beta)
