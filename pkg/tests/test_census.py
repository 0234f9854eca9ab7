import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fqdyn.census import (
    build_tree_shape,
    compute_tau,
    compute_tau0,
    predict,
    predict_cycles_odd_n,
    predict_even_cycles_even_n,
    predict_fixed_odd_n,
    predict_odd_cycles_even_n,
    predict_trees,
    predict_zero_component,
    tree_exponent,
)
from fqdyn.extension import derive_deltas
from fqdyn.field import chi_m, g_of
from fqdyn.orbits import LEAF, build_successors, graph_report, shape_from_children

from conftest import ext, field, instance

SMALL = [(3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (3, 2), (5, 2), (7, 2)]


def test_odd_cycles_q13():
    E, P = instance(13, 2, 3, 1)
    assert predict_odd_cycles_even_n(E, P) == {1: 2}
    E, P = instance(13, 6, 3, 1)
    assert predict_odd_cycles_even_n(E, P) == {1: 2}


def test_odd_cycles_empty_when_chi_is_one():
    F = field(13)
    for a in range(13):
        for c in range(13):
            if chi_m(F, 2, F.sub(F.mul(a, a), F.mul(c, c))) == 1:
                E, P = instance(13, 2, a, c)
                assert predict_odd_cycles_even_n(E, P) == {}
                assert predict_odd_cycles_even_n(E, P, mode="corrected") == {}
                return
    pytest.fail("no instance with chi = 1")


def test_even_cycles_q13():
    E, P = instance(13, 2, 3, 1)
    even, info = predict_even_cycles_even_n(E, P)
    assert even == {2: 5, 6: 4}
    E, P = instance(13, 6, 3, 1)
    even, info = predict_even_cycles_even_n(E, P)
    assert even == {2: 5}
    assert info["k_values"] == [1]


def test_tree_shapes_q13(f13):
    t = build_tree_shape(f13, 2, levels=2)
    assert t.level_sizes == (1, 1, 2)
    # root with 5 children, exactly one of which has 6 children
    star6 = shape_from_children([LEAF] * 6)
    want = shape_from_children([star6] + [LEAF] * 4)
    assert build_tree_shape(f13, 6, levels=2) == want
    assert build_tree_shape(f13, 3, levels=1).canonical == "(()())"
    with pytest.raises(ValueError):
        build_tree_shape(f13, 5)


def test_tree_choice_q13():
    E, P = instance(13, 2, 3, 1)
    tree, tag, e = predict_trees(E, P)
    assert e == 1 and tree.level_sizes == (1, 1, 2)
    E, P = instance(13, 5, 3, 1)
    assert predict_trees(E, P)[0] is None
    E, P = instance(13, 3, 3, 1)
    tree, _, e = predict_trees(E, P)
    assert e == 0 and tree.canonical == "(()())"


def test_fixed_points_odd_q13():
    E, P = instance(13, 3, 3, 1)
    assert predict_fixed_odd_n(E, P)[2] == 3
    E, P = instance(13, 5, 3, 1)
    assert predict_fixed_odd_n(E, P)[2] == 1


def test_tau_values_q13():
    E, P = instance(13, 3, 3, 1)
    assert compute_tau0(E, P) == 1
    assert compute_tau(E, P) == 12
    E, P = instance(13, 5, 3, 1)
    assert compute_tau0(E, P) == 4
    assert compute_tau(E, P) == 12


def test_odd_cycle_classes_q13():
    E, P = instance(13, 3, 3, 1)
    zero, star, info = predict_cycles_odd_n(E, P)
    assert info["l0"] == 4
    census = {L: zero.get(L, 0) + star.get(L, 0) for L in set(zero) | set(star)}
    assert census == {2: 1, 12: 4}
    E, P = instance(13, 5, 3, 1)
    zero, star, info = predict_cycles_odd_n(E, P)
    assert info["l0"] == 7
    census = {L: zero.get(L, 0) + star.get(L, 0) for L in set(zero) | set(star)}
    assert census == {4: 3, 12: 12}


def test_tau_equals_tau0_when_deltas_agree():
    # delta1 = delta2 forces c = 0 for odd n
    for p in (7, 11, 13):
        E, P = instance(p, 5, 3, 0)
        assert P.delta1 == P.delta2
        assert compute_tau(E, P) == compute_tau0(E, P)


@pytest.mark.parametrize("mode", ["stated", "corrected"])
def test_assembled_predictions(mode):
    E, P = instance(13, 2, 3, 1)
    pred = predict(E, P, mode=mode)
    assert pred.census == {1: 3, 2: 5, 6: 4}
    assert pred.zero_size == 25
    assert pred.nonzero_tree.level_sizes == (1, 1, 2)
    assert pred.audit_ok and pred.audit_total == 169
    E, P = instance(13, 5, 3, 1)
    pred = predict(E, P, mode=mode)
    assert pred.census == {1: 1, 4: 3, 12: 12}
    assert pred.nonzero_tree is None and pred.zero_size == 13
    assert pred.audit_ok
    E, P = instance(13, 4, 0, 0)
    pred = predict(E, P, mode=mode)
    assert pred.census == {1: 1} and pred.zero_size == 169


def test_zero_component_shapes():
    E, P = instance(7, 2, 3, 3)
    shape, size, tag = predict_zero_component(E, P)
    assert (size, tag) == (49, "delta1_zero")
    assert shape.level_sizes == (1, 12, 36)
    E, P = instance(13, 4, 3, 7)
    shape, size, _ = predict_zero_component(E, P)
    assert size == 25 and shape.level_sizes == (1, 12, 12)
    E, P = instance(11, 5, 2, 4)
    shape, size, _ = predict_zero_component(E, P)
    assert size == 11 and shape.level_sizes == (1, 10)


def test_unknown_mode():
    E, P = instance(7, 2, 1, 2)
    with pytest.raises(ValueError):
        predict(E, P, mode="guess")


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.integers(2, 7), st.data())
def test_corrected_prediction_matches_oracle(ps, n, data):
    E = ext(*ps)
    q = E.q
    a, c = data.draw(st.integers(0, q - 1)), data.draw(st.integers(0, q - 1))
    P = derive_deltas(E, a, c, n, allow_trivial=True)
    pred = predict(E, P, mode="corrected")
    rep = graph_report(build_successors(E, P))
    assert pred.census == rep.census
    assert pred.zero_profile == rep.zero_profile
    want = pred.nonzero_tree.canonical if pred.nonzero_tree is not None else "()"
    assert all(sh.canonical == want for sh, _ in rep.nonzero_tree_classes)
    assert pred.audit_ok


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SMALL), st.integers(2, 9), st.data())
def test_stated_audit_or_flagged(ps, n, data):
    # the stated counts either add up to q^2 or the prediction says why not
    E = ext(*ps)
    q = E.q
    a, c = data.draw(st.integers(0, q - 1)), data.draw(st.integers(0, q - 1))
    pred = predict(E, derive_deltas(E, a, c, n, allow_trivial=True))
    assert pred.q2 == q * q
    assert all(isinstance(k, int) for k in pred.census.values())


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from([2, 4, 6, 8]), st.data())
def test_fixed_points_are_delta_o_plus_one(ps, n, data):
    E = ext(*ps)
    q = E.q
    a, c = data.draw(st.integers(1, q - 1)), data.draw(st.integers(0, q - 1))
    P = derive_deltas(E, a, c, n)
    if P.delta1 == 0 or P.delta2 == 0:
        return
    pred = predict(E, P)
    assert pred.census[1] == pred.flags["delta_o"] + 1


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from([2, 4, 6]), st.data())
def test_mobius_consistency(ps, n, data):
    E = ext(*ps)
    F = E.base
    q = E.q
    a, c = data.draw(st.integers(1, q - 1)), data.draw(st.integers(0, q - 1))
    P = derive_deltas(E, a, c, n)
    if chi_m(F, 2, F.sub(F.mul(a, a), F.mul(c, c))) != -1:
        return
    odd = predict_odd_cycles_even_n(E, P)
    delta_o = predict(E, P).flags["delta_o"]
    G = g_of(F, n - 1)
    for m in range(1, 30, 2):
        lhs = sum(i * odd.get(i, 0) for i in range(1, m + 1) if m % i == 0)
        assert lhs == Fraction(delta_o * math.gcd(n**m - 1, q - 1), G)


@pytest.mark.parametrize("q", [13, 25, 27, 49, 81, 121, 169])
def test_standard_tree_level_sizes(q):
    F = field(*{13: (13, 1), 25: (5, 2), 27: (3, 3), 49: (7, 2), 81: (3, 4),
                121: (11, 2), 169: (13, 2)}[q])
    g = lambda m: math.gcd(m, q - 1)  # noqa: E731
    for n in range(2, 10):
        e = tree_exponent(q, n)
        if e is None:
            assert g(n) == 1
            continue
        t = build_tree_shape(F, n, levels=e + 1)
        assert list(t.level_sizes) == [1] + [g(n**i) - g(n ** (i - 1)) for i in range(1, e + 2)]


@pytest.mark.parametrize("p,s,n", [(13, 1, 3), (5, 2, 3), (7, 1, 7), (3, 3, 5), (13, 1, 7)])
def test_zero_variant_tree_against_oracle(p, s, n):
    # odd n with delta1 = a + c = 0
    E, P = instance(p, n, 1, p - 1, s=s)
    assert P.delta1 == 0 and P.delta2 != 0
    tree, tag, _ = predict_trees(E, P, mode="corrected")
    rep = graph_report(build_successors(E, P))
    assert tag == "tree0"
    assert [sh.canonical for sh, _ in rep.nonzero_tree_classes] == [tree.canonical]
    # level one always has q*g(n) - 1 vertices
    assert tree.level_sizes[1] == E.q * g_of(E.base, n) - 1


@pytest.mark.parametrize("p,s,n,a,c", [(13, 1, 2, 3, 1), (13, 1, 5, 3, 1), (7, 2, 4, 5, 9), (11, 1, 3, 2, 7)])
def test_invariant_under_field_choices(p, s, n, a, c):
    F0 = field(p, s)
    gens = [g for g in range(1, F0.q) if F0.elem_order(g) == F0.q - 1][:3]
    nonres = [b for b in range(1, F0.q) if chi_m(F0, 2, b) == -1][:3]
    seen = set()
    for g in gens:
        for b in nonres:
            E, P = instance(p, n, a, c, s=s, b=b, gen=g)
            pred = predict(E, P)
            seen.add((
                tuple(sorted(pred.census.items())),
                pred.zero_profile.canonical,
                pred.nonzero_tree.canonical if pred.nonzero_tree else None,
            ))
    assert len(seen) == 1


def test_six_fixed_point_components_q13_n4():
    # f = (10X^13 + 2X)(X^13 - X)^3 with B^2 = 11 has six components with a nonzero fixed point
    E, P = instance(13, 4, 2, 10, b=11)
    rep = graph_report(build_successors(E, P))
    assert rep.census[1] == 7
    assert predict(E, P, mode="corrected").census == rep.census
    # the stated count gives Delta_o + 1 = 3, short by a factor g(n-1) = 3 on the nonzero part
    stated = predict(E, P, mode="stated")
    assert stated.census[1] == stated.flags["delta_o"] + 1 == 3
