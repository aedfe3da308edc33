from collections import defaultdict

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import elements, unimodular
from divfree import lattice
from divfree.io import DescriptorError
from divfree.lie import (
    Algebra,
    AlgebraElement,
    D,
    RankMismatch,
    bracket,
    change_coordinates,
    d,
    dij,
    divergence,
    element_from_json,
    element_to_json,
    find_orthogonal,
    graded_basis,
    graded_component,
    graded_coordinates,
    homogeneous_basis_window,
    inner,
    t,
)
from divfree.scalars import ONE, ZERO, as_scalar


# ---- operator oracle ---------------------------------------------------------
# Elements of W_n x| A_n realized as (vector field, function) acting on Laurent
# polynomials {exponent: coeff}.  The bracket is recovered from the commutator
# of the vector-field operators and from D1(f2) - D2(f1); nothing is shared
# with the package's bracket formula.


def field_apply(x, poly):
    out = defaultdict(lambda: ZERO)
    for m, u in x.d_terms.items():
        for k, c in poly.items():
            # t^m sum_i u_i t_i d/dt_i applied to t^k
            coeff = sum((ui * ki for ui, ki in zip(u, k)), ZERO)
            out[lattice.add(m, k)] += coeff * c
    return {k: v for k, v in out.items() if v != 0}


def oracle_bracket(x, y):
    n = x.n
    dd = defaultdict(lambda: [ZERO] * n)
    for i in range(n):
        e = tuple(int(j == i) for j in range(n))
        xy = field_apply(x, field_apply(y, {e: ONE}))
        yx = field_apply(y, field_apply(x, {e: ONE}))
        for k in set(xy) | set(yx):
            c = xy.get(k, ZERO) - yx.get(k, ZERO)
            if c:
                dd[lattice.sub(k, e)][i] += c
    tt = defaultdict(lambda: ZERO)
    for k, c in field_apply(x, y.t_terms).items():
        tt[k] += c
    for k, c in field_apply(y, x.t_terms).items():
        tt[k] -= c
    return AlgebraElement(n, dict(dd), dict(tt))


# ---- examples --------------------------------------------------------------


def test_bracket_examples():
    x = D((1, -1, 0), (1, 1, 0))
    assert bracket(x, t((1, 0, 0))) == t((2, 1, 0))
    assert bracket(dij(1, 2, (1, 2)), dij(1, 2, (0, 1))) == -dij(1, 2, (1, 3))
    assert bracket(t((1, 2)), t((3, -1))).is_zero()
    assert bracket(x, x).is_zero()


def test_bracket_rank_mismatch():
    with pytest.raises(RankMismatch):
        bracket(d(2, 1), d(3, 1))


def test_divergence_examples():
    assert divergence((1, 0, 0), (0, 0, 0)) == (0, (0, 0, 0))
    assert divergence((1, 1), (1, -1)) == (0, (1, -1))
    assert divergence((1, 0), (2, 3)) == (2, (2, 3))


def test_dij_examples():
    r = (1, 2, 3)
    assert dij(2, 2, r).is_zero()
    assert dij(1, 2, (0, 0, 0)).is_zero()
    assert (dij(1, 2, r).scale(3) + dij(2, 3, r) + dij(3, 1, r).scale(2)).is_zero()
    assert dij(1, 2, (5, 7)) == -dij(2, 1, (5, 7))
    with pytest.raises(IndexError):
        dij(0, 1, (1, 1))


def test_graded_component_examples():
    comp = graded_component("Extended", (1, 0, 0))
    assert comp.dim == 3
    assert graded_component(Algebra.EXTENDED, (0, 0, 0)).dim == 4
    assert graded_component("DivZero", (1, 0, 0)).dim == 2
    assert graded_component("Witt", (1, 2, 0)).dim == 3
    assert dij(2, 3, (1, 0, 0)).is_zero()
    assert t((2, -1)).degree() == (2, -1)


def test_graded_coordinates_recover_element():
    m = (2, -1, 1)
    basis = graded_basis(3, m)
    x = dij(1, 3, m).scale(as_scalar("2/3")) + t(m, -4)
    coords = graded_coordinates(x)
    total = AlgebraElement.zero(3)
    for c, b in zip(coords, basis):
        total = total + b.scale(c)
    assert total == x


def test_change_coordinates_examples():
    x = dij(1, 2, (1, 0)) + t((3, -1), 2)
    assert change_coordinates([[1, 0], [0, 1]], x) == x
    assert change_coordinates([[0, 1], [1, 0]], d(2, 1)) == d(2, 2)
    with pytest.raises(ValueError):
        change_coordinates([[2, 0], [0, 1]], x)


def test_find_orthogonal_examples():
    u = find_orthogonal((1, 0), (0, 1))
    assert u == (-1, 1)
    with pytest.raises(ValueError):
        find_orthogonal((2, 4), (1, 2))
    r, s = (1, 1, 0), (0, 0, 1)
    u = find_orthogonal(r, s)
    assert inner(u, s) != 0 and inner(u, lattice.add(r, s)) == 0


def test_json_roundtrip_rational():
    x = t((1, -2), as_scalar("1/3")) + dij(1, 2, (1, -2)).scale(as_scalar("5/7"))
    assert element_from_json(element_to_json(x)) == x
    data = element_to_json(x)
    data["junk"] = 1
    with pytest.raises(DescriptorError):
        element_from_json(data)
    data = element_to_json(x)
    data["schema_version"] = 2
    with pytest.raises(DescriptorError, match="schema version 1"):
        element_from_json(data)


# ---- against the operator oracle ------------------------------------------


@pytest.mark.parametrize("n", [2, 3])
def test_bracket_matches_operator_oracle_on_basis(n):
    basis = homogeneous_basis_window(n, lattice.box(n, 1))
    for x in basis:
        for y in basis:
            assert bracket(x, y) == oracle_bracket(x, y)


@given(elements(2, "Witt"), elements(2, "Witt"))
def test_witt_bracket_matches_oracle(x, y):
    assert bracket(x, y) == oracle_bracket(x, y)


@given(elements(3), elements(3))
@settings(max_examples=50)
def test_extended_bracket_matches_oracle(x, y):
    assert bracket(x, y) == oracle_bracket(x, y)


# ---- properties ----------------------------------------------------------


@given(elements(2), elements(2), elements(2), st.sampled_from(["2", "-1/3", "1+i"]))
def test_bilinear_and_antisymmetric(x, y, z, c):
    c = as_scalar(c)
    assert bracket(x + y.scale(c), z) == bracket(x, z) + bracket(y, z).scale(c)
    assert bracket(x, y) == -bracket(y, x)


@given(elements(2, max_terms=2), elements(2, max_terms=2), elements(2, max_terms=2))
@settings(max_examples=60)
def test_jacobi(x, y, z):
    s = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert s.is_zero()


@given(elements(3), elements(3))
@settings(max_examples=50)
def test_closure(x, y):
    assert x.in_extended() and y.in_extended()
    b = bracket(x, y)
    assert b.in_extended()
    dx = AlgebraElement(3, x.d_terms, {})
    dy = AlgebraElement(3, y.d_terms, {})
    assert bracket(dx, dy).in_divzero()
    # D_n with A_n lands in A_n, and t^0 is central
    assert not bracket(dx, AlgebraElement(3, {}, y.t_terms)).d_terms
    assert bracket(x, t((0, 0, 0))).is_zero()


@given(st.data())
def test_grading(data):
    m = data.draw(st.tuples(*[st.integers(-2, 2)] * 3))
    k = data.draw(st.tuples(*[st.integers(-2, 2)] * 3))
    for x in graded_basis(3, m):
        for y in graded_basis(3, k):
            b = bracket(x, y)
            assert b.degrees() in ([], [lattice.add(m, k)])


@given(st.data())
@settings(max_examples=40)
def test_change_coordinates_is_homomorphism(data):
    A = data.draw(unimodular(2))
    A2 = data.draw(unimodular(2))
    x = data.draw(elements(2))
    y = data.draw(elements(2))
    lhs = change_coordinates(A, bracket(x, y))
    assert lhs == bracket(change_coordinates(A, x), change_coordinates(A, y))
    AA2 = [[sum(A[i][k] * A2[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert change_coordinates(AA2, x) == change_coordinates(A, change_coordinates(A2, x))
    assert change_coordinates(A, x).in_extended()


def test_automorphism_spec_pair():
    x, y = dij(1, 2, (1, 0)), t((0, 1))
    for A in ([[1, 1], [0, 1]], [[2, 1], [1, 1]], [[0, -1], [1, 0]]):
        assert change_coordinates(A, bracket(x, y)) == bracket(change_coordinates(A, x), change_coordinates(A, y))


@given(elements(3, coeffs=st.sampled_from([as_scalar("1/3"), as_scalar("-2+1/5i"), as_scalar(7)])))
def test_json_roundtrip(x):
    assert element_from_json(element_to_json(x)) == x
