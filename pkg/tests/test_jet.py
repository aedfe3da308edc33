import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divfree import lattice
from divfree.io import DescriptorError
from divfree.irreps import build_irrep
from divfree.jet import (
    Irreducibility,
    JetModule,
    JetParams,
    JetWindow,
    WindowTooSmall,
    act,
    act_dij_display,
    check_associativity,
    check_module_axiom,
    cyclic_span_window,
    detect_ghw_vectors,
    is_irreducible,
    jet_params_from_json,
    jet_params_to_json,
    weight_support,
)
from divfree.lie import D, RankMismatch, d, dij, t
from divfree.scalars import ONE, as_scalar

W1 = JetParams((1,), 0, (0, 0), 1)


def vec(b, s, c=ONE):
    return {(b, tuple(s)): as_scalar(c)}


def test_d_and_t_act_as_displayed():
    p = JetParams((1,), "1/2", ("1/3", "-2"), "1+i")
    s = (2, -1)
    for b in range(2):
        assert act(d(2, 1), vec(b, s), p) == vec(b, s, as_scalar("7/3"))
        assert act(d(2, 2), vec(b, s), p) == vec(b, s, -3)
        assert act(t((1, 1)), vec(b, s), p) == vec(b, (3, 0), "1+i")


def test_dij_example():
    # D_12((1,1)) on v_1 (x) t^0 with E_21 v_1 = v_2
    img = act(dij(1, 2, (1, 1)), vec(0, (0, 0)), W1)
    assert img == {(0, (1, 1)): ONE, (1, (1, 1)): ONE}


def test_mode_and_rank_errors():
    with pytest.raises(ValueError):
        act(D((1, 0), (1, 0)), vec(0, (0, 0)), W1)
    assert act(D((1, 0), (1, 0)), vec(0, (0, 0)), W1, mode="W")
    with pytest.raises(RankMismatch):
        act(d(3, 1), vec(0, (0, 0)), W1)


@given(
    st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)),
    st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)),
    st.integers(1, 3),
    st.integers(1, 3),
    st.sampled_from([(1, 0), (0, 1), (1, 1), (2, 0)]),
)
@settings(max_examples=60, deadline=None)
def test_two_formulas_agree(r, s, i, j, lam):
    p = JetParams(lam, "2/3", ("1/2", "-1/3", "1/5"), 1)
    module = JetModule(p)
    for b in range(module.dim):
        w = vec(b, s)
        assert act_dij_display(module, i, j, r, w) == module.act(dij(i, j, r), w)


@pytest.mark.parametrize("lam", [(0,), (1,), (2,)])
@pytest.mark.parametrize("e", [0, 1, "1+i"])
def test_module_axiom_n2(lam, e):
    p = JetParams(lam, "1/2", ("1/3", "1/5"), e)
    assert check_module_axiom(p, window=1).ok
    assert check_associativity(p, window=1).ok


def test_module_axiom_witt_with_functions():
    # the tensor module is also a W_n x| A_n module
    p = JetParams((1,), "-1/2", ("1/4", "2/3"), "1+i")
    rep = check_module_axiom(p, window=1, algebra="WittA")
    assert rep.ok and rep.checked > 0 and rep.window_limited


@pytest.mark.slow
def test_module_axiom_n3_adjoint():
    p = JetParams((1, 1), 1, ("1/2", "1/3", "1/5"), 1)
    assert check_module_axiom(p, window=1, jobs=1).ok


def test_broken_action_is_detected(monkeypatch):
    p = JetParams((1,), 0, ("1/3", "1/5"), 1)
    orig = JetModule.matrix_part
    monkeypatch.setattr(JetModule, "matrix_part", lambda self, r, u: 2 * orig(self, r, u))
    rep = check_module_axiom(p, window=1)
    assert not rep.ok and rep.to_json()["status"] == "fail"


def test_associativity_fails_for_wrong_e(monkeypatch):
    p = JetParams((0,), 0, (0, 0), 2)
    orig = JetModule.scalar_part
    monkeypatch.setattr(JetModule, "scalar_part", lambda self, u, a, s: orig(self, u, a, s) + (1 if a else 0))
    assert not check_associativity(p, window=1).ok


def test_is_irreducible():
    assert is_irreducible(JetParams((1,), 0, (0, 0), 1))[0] is Irreducibility.IRREDUCIBLE
    verdict, notes = is_irreducible(JetParams((1,), 0, (0, 0), 0))
    assert verdict is Irreducibility.UNKNOWN and notes
    F = lambda lam, c, alpha: is_irreducible(JetParams(lam, c, alpha, 0), "F")[0]  # noqa: E731
    assert F((0, 0), 0, (1, -2, 0)) is Irreducibility.REDUCIBLE
    assert F((0, 0), 0, ("1/2", 0, 0)) is Irreducibility.IRREDUCIBLE
    assert F((1, 0), 1, (0, 0, 0)) is Irreducibility.REDUCIBLE
    assert F((0, 1), 2, (0, 0, 0)) is Irreducibility.REDUCIBLE
    assert F((0, 1), 1, (0, 0, 0)) is Irreducibility.IRREDUCIBLE
    verdict, notes = is_irreducible(JetParams((0, 0), 3, (0, 0, 0), 0), "F")
    assert verdict is Irreducibility.REDUCIBLE and any("k = n" in s for s in notes)
    with pytest.raises(ValueError):
        is_irreducible(W1, "X")


@pytest.mark.parametrize("lam, mult", [((1,), 2), ((0,), 1), ((2,), 3)])
def test_weight_support(lam, mult):
    p = JetParams(lam, 0, ("1/3", "1/2"), 1)
    ws = weight_support(p, window=2)
    assert ws.base == p.alpha
    assert set(ws.multiplicity.values()) == {mult}
    assert sorted(ws.present) == lattice.box(2, 2)


def test_no_ghw_vectors_when_e_nonzero():
    for e in (1, "1+i", "-1/2"):
        view = JetWindow(JetParams((1,), 0, ("1/3", "1/5"), e), 1)
        assert detect_ghw_vectors(view, 1).vectors == []
    with pytest.raises(WindowTooSmall):
        detect_ghw_vectors(JetWindow(W1, 1), 2)


def test_e0_jets_can_have_ghw_vectors():
    # with e = 0 and alpha = 0 the vacuum t^0 is killed by everything of positive degree
    view = JetWindow(JetParams((0,), 0, (0, 0), 0), 1)
    assert (0, 0) in {lab for lab, _ in detect_ghw_vectors(view, 1).vectors}


def test_cyclic_span_fills_window_for_e1():
    view = JetWindow(JetParams((1,), 0, ("1/3", "1/5"), 1), 2)
    dims = cyclic_span_window(view, (0, 0), vec(0, (0, 0)))
    assert all(k == 2 for k in dims.values())


def test_cyclic_span_misses_weights_for_e0():
    view = JetWindow(JetParams((0,), 0, (0, 0), 0), 2)
    dims = cyclic_span_window(view, (1, 0), vec(0, (1, 0)))
    assert dims[(0, 0)] == 0 and dims[(1, 0)] == 1


def test_cyclic_span_of_zero():
    view = JetWindow(W1, 1)
    assert set(cyclic_span_window(view, (0, 0), {}).values()) == {0}


def test_irrep_mismatch():
    with pytest.raises(ValueError):
        JetModule(W1, build_irrep((2,), 2, 0))


def test_params_json_roundtrip():
    p = JetParams((1, 0), "1/3", ("1/2", "-1+2i", 0), "1+i")
    assert jet_params_from_json(jet_params_to_json(p)) == p
    data = jet_params_to_json(p)
    data["colour"] = "red"
    with pytest.raises(DescriptorError, match="colour"):
        jet_params_from_json(data)
    data = jet_params_to_json(p)
    del data["e"]
    with pytest.raises(DescriptorError, match="'e'"):
        jet_params_from_json(data)
