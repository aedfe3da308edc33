import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divfree import lattice
from divfree.jet import JetParams, ModuleView, detect_ghw_vectors
from divfree.lie import D, d, graded_basis
from divfree.scalars import ONE, as_scalar
from divfree.verma import (
    CharacterX,
    Classification,
    JetRestrictionX,
    NotUnimodular,
    build_verma,
    check_action_law,
    classify_truncated,
    find_singular_vectors,
    irreducible_quotient,
    make_triangular,
    rank2_bar,
    rank2_d,
    triangular_from_orthogonal,
)
from pbw_oracle import pbw_count

E12 = make_triangular([(1, 0)], (0, 1))
JP = JetParams((1,), "1/2", ("1/3", "1/5"), 1)


# ---- triangular data ---------------------------------------------------------


def test_make_triangular_examples():
    assert E12.level((3, -2)) == -2
    skew = make_triangular([(1, 1)], (1, 2))
    assert abs(skew.det) == 1
    assert skew.level((0, 1)) == 1
    assert skew.m_part((0, 1)) == (-1, -1)
    with pytest.raises(NotUnimodular):
        make_triangular([(2, 0)], (0, 1))


def test_triangular_from_orthogonal_examples():
    tri = triangular_from_orthogonal((0, 1))
    assert tri.m_basis == ((1, 0),) and tri.beta == (0, 1)
    tri = triangular_from_orthogonal((2, 3))
    assert tri.m_basis[0] in ((3, -2), (-3, 2))
    assert 2 * tri.beta[0] + 3 * tri.beta[1] == 1
    tri = triangular_from_orthogonal((1, 1, 1))
    assert all(lattice.dot((1, 1, 1), m) == 0 for m in tri.m_basis)
    assert abs(tri.det) == 1
    with pytest.raises(ValueError):
        triangular_from_orthogonal((2, 4))


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=3).filter(lambda k: math.gcd(*k) == 1))
def test_level_decomposition(k):
    tri = triangular_from_orthogonal(k)
    for m in lattice.box(len(k), 2):
        lv = tri.level(m)
        assert lattice.add(tri.m_part(m), tuple(lv * b for b in tri.beta)) == m
        assert tri.degree(tri.m_coords(m), lv) == m
        assert lv == lattice.dot(k, m)


# ---- truncated Verma modules --------------------------------------------------


@pytest.mark.parametrize(
    "tri, depth, window",
    [(E12, 2, 2), (E12, 3, 1), (make_triangular([(1, 1)], (1, 2)), 2, 1)],
)
def test_weight_table_matches_pbw_oracle(tri, depth, window):
    mod = build_verma(CharacterX(["1/2", "1/3"], 1), tri, depth, window)
    table = mod.weight_table()
    for lab, k in table.items():
        assert k == pbw_count(2, lab, depth, window, tri.m_basis, tri.beta)
    # and nothing the oracle sees is missing
    for lab in lattice.box(2, depth * (window + 2)):
        if lab not in table:
            assert pbw_count(2, lab, depth, window, tri.m_basis, tri.beta) == 0


def test_weight_table_n3_matches_oracle():
    tri = triangular_from_orthogonal((1, 1, 1))
    mod = build_verma(CharacterX(["1/2", "1/3", "1/5"], 1), tri, 2, 1)
    for lab, k in mod.weight_table().items():
        assert k == pbw_count(3, lab, 2, 1, tri.m_basis, tri.beta)


def test_depth_zero_is_x():
    mod = build_verma(CharacterX(["1/2", "1/3"]), E12, 0, 3)
    assert mod.weight_table() == {(0, 0): 1}
    mod = build_verma(JetRestrictionX(JP, E12, (0, 0), 1), E12, 0, 3)
    assert mod.weight_table() == {(-1, 0): 2, (0, 0): 2, (1, 0): 2}


def test_level_one_multiplicity_two():
    mod = build_verma(CharacterX(["1/2", "1/3"]), E12, 1, 2)
    assert {k for lab, k in mod.weight_table().items() if lab[1] == -1} == {2}


def test_monomials_are_sorted_and_bounded():
    mod = build_verma(CharacterX(["1/2", "1/3"]), E12, 3, 1)
    for lab, keys in mod.table.items():
        for word, _ in keys:
            assert list(word) == sorted(word)
            assert all(1 <= r <= 3 and max(map(abs, mc)) <= 1 for r, mc, _ in word)
            assert sum(r for r, _, _ in word) <= 3


def test_character_weights_are_diagonal():
    lam0 = [as_scalar("1/2"), as_scalar("1/3")]
    mod = build_verma(CharacterX(lam0, 1), E12, 2, 1)
    for lab, keys in mod.table.items():
        for key in keys:
            for i in (1, 2):
                assert mod.apply_element(d(2, i), {key: ONE}) == {key: lam0[i - 1] + lab[i - 1]}


@pytest.mark.parametrize(
    "X",
    [CharacterX(["1/2", "1/3"], 2), CharacterX(["-1", "1/4"], 0), JetRestrictionX(JP, E12, (0, 0), 1)],
    ids=["char", "char0", "jet"],
)
def test_action_law(X):
    mod = build_verma(X, E12, 1, 1)
    gens = [(m, x) for m, x in mod.generators() if abs(E12.level(m)) <= 2]
    assert check_action_law(mod, gens) == []


def test_action_law_depth_two():
    mod = build_verma(CharacterX(["1/2", "1/3"], 2), E12, 2, 1)
    gens = [(m, x) for m, x in mod.generators() if -2 <= E12.level(m) <= 1 and abs(m[0]) <= 1]
    keys = [k for lab in mod.labels if lab[1] >= -2 for k in mod.table[lab]][:12]
    assert check_action_law(mod, gens, keys) == []


def test_positive_part_kills_x():
    mod = build_verma(JetRestrictionX(JP, E12, (0, 0), 1), E12, 1, 1)
    for mc in lattice.box(1, 2):
        for lv in (1, 2):
            deg = E12.degree(mc, lv)
            for x in graded_basis(2, deg):
                for key in mod.table[(0, 0)]:
                    assert mod.apply_element(x, {key: ONE}) == {}


# ---- singular vectors and quotients -----------------------------------------


def test_character_level_one_all_singular():
    mod = build_verma(CharacterX(["1/2", "1/3"], 2), E12, 2, 2)
    rep = find_singular_vectors(mod, 1)
    table = mod.weight_table()
    assert rep.dims() == {lab: k for lab, k in table.items() if lab[1] == -1}
    with pytest.raises(ValueError):
        find_singular_vectors(mod, 3)


@pytest.mark.parametrize("tri", [E12, make_triangular([(1, 1)], (1, 2))])
def test_character_quotient_is_x(tri):
    q = irreducible_quotient(build_verma(CharacterX(["1/2", "1/3"], 2), tri, 2, 1))
    assert {lab: k for lab, k in q.weight_table().items() if k} == {(0, 0): 1}
    assert q.support_violations() == [] and q.closure_violations == []


def test_jet_restriction_quotient():
    mod = build_verma(JetRestrictionX(JP, E12, (0, 0), 1), E12, 2, 1)
    q = irreducible_quotient(mod)
    level1 = {lab: k for lab, k in q.weight_table().items() if lab[1] == -1}
    assert level1 and all(k > 0 for k in level1.values())
    assert q.support_violations() == []
    # X survives untouched
    assert all(q.weight_table()[lab] == 2 for lab in [(-1, 0), (0, 0), (1, 0)])


def test_no_singular_vectors_means_quotient_is_input():
    # depth 0 has nothing below X
    mod = build_verma(CharacterX(["1/2", "1/3"]), E12, 0, 1)
    assert irreducible_quotient(mod).weight_table() == mod.weight_table()


def test_ghw_certificate_on_quotient():
    for X in (CharacterX(["1/2", "1/3"], 2), JetRestrictionX(JP, E12, (0, 0), 1)):
        q = irreducible_quotient(build_verma(X, E12, 1, 1))
        res = detect_ghw_vectors(q, 1)
        top = {lab for lab, _ in res.vectors}
        assert (0, 0) in top


# ---- classification ----------------------------------------------------------


class Empty(ModuleView):
    n = 2
    labels: list = []
    leakage: list = []

    def basis(self, label):
        return []

    def generators(self):
        return []


def test_classify():
    q = irreducible_quotient(build_verma(CharacterX(["1/2", "1/3"], 2), E12, 1, 2))
    res = classify_truncated(q, 1)
    assert res.verdict is Classification.GHW
    assert res.to_json()["verdict"] == "GHW"
    assert classify_truncated(Empty(), 5).verdict is Classification.INCONCLUSIVE


# ---- rank two helpers ---------------------------------------------------------


def test_rank2_helpers():
    assert rank2_bar((1, 0)) == (0, -1)
    assert lattice.dot(rank2_bar((1, 0)), (1, 0)) == 0
    assert rank2_d((1, 1)) == D((1, -1), (1, 1))
    assert rank2_d((0, 0)).is_zero()
    with pytest.raises(ValueError):
        rank2_bar((1, 0, 0))


@given(st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
@settings(max_examples=30)
def test_rank2_d_divergence_free(b):
    assert rank2_d(b).in_divzero()


def test_explicit_level_one_singular_vector_for_jet_restriction():
    # v = sum_c k_c t^{(c,-1)} x_{a-c} with sum k_c = sum c k_c = 0 is killed by
    # every raising element: d(y) v = e sum k_c (c + b) x_{a+b} = 0 and t^y v = 0
    mod = build_verma(JetRestrictionX(JP, E12, (0, 0), 2), E12, 1, 2)
    for b in range(2):
        v = {(((1, (c,), 1),), (b, (-c,))): as_scalar(k) for c, k in zip((-1, 0, 1), (1, -2, 1))}
        assert all(key in mod._keys[(0, -1)] for key in v)
        for mc in lattice.box(1, 6):
            deg = E12.degree(mc, 1)
            for x in graded_basis(2, deg):
                assert mod.apply(x, deg, (0, -1), v) == {}
    rep = find_singular_vectors(mod, 1)
    assert rep.dims()[(0, -1)] >= 2
