"""Vectorized integer kernels for exhaustive checks over degree windows.

A homogeneous basis element of G is encoded as three integer arrays: its
degree m, its D-part coefficient vector u, and its t-coefficient a.  The
basis produced by :func:`lie.graded_basis` has integer entries, so brackets
of basis elements (and brackets of those) stay in int64 for small windows.
"""

from __future__ import annotations

import numpy as np

from . import lattice
from .lie import AlgebraElement, graded_basis

__all__ = ["BasisArrays", "basis_arrays", "batch_bracket", "jacobi_violations", "antisymmetry_violations"]


class BasisArrays:
    __slots__ = ("deg", "u", "a", "elements")

    def __init__(self, deg, u, a, elements):
        self.deg = deg
        self.u = u
        self.a = a
        self.elements = elements

    def __len__(self):
        return len(self.a)


def basis_arrays(n: int, radius: int) -> BasisArrays:
    """All graded basis elements of G with degree in [-radius, radius]^n."""
    elements: list[AlgebraElement] = []
    degs, us, cs = [], [], []
    for m in lattice.box(n, radius):
        for x in graded_basis(n, m):
            elements.append(x)
            degs.append(m)
            u = x.d_terms.get(m)
            us.append([int(v) for v in u] if u is not None else [0] * n)
            cs.append(int(x.t_terms.get(m, 0)))
    return BasisArrays(
        np.array(degs, dtype=np.int64),
        np.array(us, dtype=np.int64),
        np.array(cs, dtype=np.int64),
        elements,
    )


def batch_bracket(m, p, a, k, q, b):
    """Rowwise bracket of homogeneous elements (m, p, a) and (k, q, b)."""
    pk = np.einsum("ij,ij->i", p, k)
    qm = np.einsum("ij,ij->i", q, m)
    w = pk[:, None] * q - qm[:, None] * p
    c = pk * b - qm * a
    return m + k, w, c


def _jacobi_rows(B: BasisArrays, I, J, K):
    x = (B.deg[I], B.u[I], B.a[I])
    y = (B.deg[J], B.u[J], B.a[J])
    z = (B.deg[K], B.u[K], B.a[K])
    _, w1, c1 = batch_bracket(*x, *batch_bracket(*y, *z))
    _, w2, c2 = batch_bracket(*y, *batch_bracket(*z, *x))
    _, w3, c3 = batch_bracket(*z, *batch_bracket(*x, *y))
    bad = np.any(w1 + w2 + w3 != 0, axis=1) | (c1 + c2 + c3 != 0)
    return bad


def jacobi_violations(B: BasisArrays, limit: int = 10) -> tuple[int, list]:
    """Check Jacobi on every triple i < j < k; returns (triples checked, first violations)."""
    N = len(B)
    checked = 0
    found: list = []
    for i in range(N - 2):
        rest = N - i - 1
        jj, kk = np.triu_indices(rest, 1)
        jj = jj + i + 1
        kk = kk + i + 1
        ii = np.full(jj.shape, i)
        bad = _jacobi_rows(B, ii, jj, kk)
        checked += len(jj)
        if bad.any() and len(found) < limit:
            for t in np.nonzero(bad)[0][: limit - len(found)]:
                found.append((int(i), int(jj[t]), int(kk[t])))
    return checked, found


def antisymmetry_violations(B: BasisArrays) -> list:
    N = len(B)
    I, J = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    I, J = I.ravel(), J.ravel()
    _, w1, c1 = batch_bracket(B.deg[I], B.u[I], B.a[I], B.deg[J], B.u[J], B.a[J])
    _, w2, c2 = batch_bracket(B.deg[J], B.u[J], B.a[J], B.deg[I], B.u[I], B.a[I])
    bad = np.any(w1 + w2 != 0, axis=1) | (c1 + c2 != 0)
    return [(int(I[t]), int(J[t])) for t in np.nonzero(bad)[0]]
