import random

import pytest
from hypothesis import strategies as st

from divfree import lattice
from divfree.lie import AlgebraElement, D, t
from divfree.scalars import GaussianRational, as_scalar

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def rng():
    return random.Random(20240611)


# ---- hypothesis strategies ---------------------------------------------------

small_ints = st.integers(-3, 3)
rationals = st.builds(lambda p, q: as_scalar(f"{p}/{q}"), st.integers(-5, 5), st.integers(1, 4))
gaussians = st.builds(GaussianRational.make, rationals, rationals)
scalars = st.one_of(rationals, gaussians)


def degrees(n):
    return st.tuples(*[small_ints] * n)


@st.composite
def elements(draw, n=2, algebra="Extended", max_terms=3, coeffs=rationals):
    """Random finite elements of W_n, D_n or G; degrees in [-3, 3]^n."""
    x = AlgebraElement.zero(n)
    for _ in range(draw(st.integers(0, max_terms))):
        m = draw(degrees(n))
        if algebra == "Witt":
            u = [draw(coeffs) for _ in range(n)]
        else:
            # u orthogonal to m: combination of D_ij(m)-type vectors (or anything at m = 0)
            u = [as_scalar(0)] * n
            if not any(m):
                u = [draw(coeffs) for _ in range(n)]
            else:
                for i in range(n):
                    for j in range(i + 1, n):
                        c = draw(coeffs)
                        u[i] = u[i] + c * m[j]
                        u[j] = u[j] - c * m[i]
        x = x + D(u, m)
        if algebra == "Extended":
            x = x + t(draw(degrees(n)), draw(coeffs))
    return x


@st.composite
def unimodular(draw, n):
    """Product of random elementary and signed-permutation matrices."""
    A = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(0, 6))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i != j:
            k = draw(st.integers(-2, 2))
            A = [row[:] for row in A]
            A[i] = [a + k * b for a, b in zip(A[i], A[j])]
        if draw(st.booleans()):
            A = [row[:] for row in A]
            A[i] = [-a for a in A[i]]
    return A


def random_unimodular(rng, n, steps=8):
    A = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        k = rng.choice([-2, -1, 1, 2])
        A[i] = [a + k * b for a, b in zip(A[i], A[j])]
        if rng.random() < 0.3:
            A[j] = [-a for a in A[j]]
    assert lattice.is_unimodular(A)
    return A
