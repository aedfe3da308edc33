import math

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import unimodular
from divfree import lattice


def test_box_order_and_size():
    pts = lattice.box(2, 1)
    assert len(pts) == 9 and pts == sorted(pts)
    assert lattice.box(3, 0, 1)[-1] == (1, 1, 1)


def test_lattice_vector_rejects_non_integers():
    with pytest.raises(TypeError):
        lattice.lattice_vector((1, 0.5))


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_sympy(M):
    assert lattice.det(M) == sympy.Matrix(M).det()


@given(st.sampled_from([2, 3, 4]).flatmap(unimodular))
def test_unimodular_inverse(A):
    n = len(A)
    B = lattice.unimodular_inverse(A)
    prod = [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert prod == [[int(i == j) for j in range(n)] for i in range(n)]


def test_unimodular_inverse_rejects():
    with pytest.raises(ValueError):
        lattice.unimodular_inverse([[2, 0], [0, 1]])


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_ext_gcd(a, b):
    g, x, y = lattice.ext_gcd(a, b)
    assert g == math.gcd(a, b) and a * x + b * y == g


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=4).filter(lambda k: math.gcd(*k) == 1))
def test_orthogonal_complement(k):
    basis, beta = lattice.orthogonal_complement_basis(k)
    assert lattice.dot(k, beta) == 1
    assert all(lattice.dot(k, b) == 0 for b in basis)
    assert lattice.is_unimodular(lattice.transpose(basis + [beta]))


def test_orthogonal_complement_examples():
    basis, beta = lattice.orthogonal_complement_basis((0, 1))
    assert basis == [(1, 0)] and beta == (0, 1)
    basis, beta = lattice.orthogonal_complement_basis((2, 3))
    assert basis in ([(3, -2)], [(-3, 2)])
    assert 2 * beta[0] + 3 * beta[1] == 1
    with pytest.raises(ValueError):
        lattice.orthogonal_complement_basis((2, 4))
