import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from fxi.engine import c_value, length_table
from fxi.monomial import (
    MonomialSpec, classify, closed_form_length, elementary_symmetric, epsilon_analysis,
    exact_fpt, expanded_length, hk_times_fpt, left_limit_at_fpt, liminf_at_fpt, limsup_at_fpt,
    step_error_constant, xi_polynomial, xi_polynomial_derivative,
)
from fxi.ring import Polynomial


def spec(*alphas, p=2):
    return MonomialSpec(alphas, p)


def test_spec_sorts_and_validates():
    assert spec(3, 1, 2).alphas == (1, 2, 3)
    with pytest.raises(ValueError):
        spec(2)
    with pytest.raises(ValueError):
        spec(0, 0)
    with pytest.raises(ValueError):
        spec(-1, 2)
    with pytest.raises(ValueError):
        spec(1, 1, p=4)


def test_elementary_symmetric():
    assert elementary_symmetric(spec(1, 1)) == [2, 1]
    assert elementary_symmetric(spec(1, 2, 3)) == [6, 11, 6]
    assert elementary_symmetric(spec(0, 0, 2)) == [2, 0, 0]


def test_closed_form_length_examples():
    s = spec(1, 1)
    assert closed_form_length(s, 2, 1) == 5
    assert closed_form_length(s, 2, 3) == 1
    assert closed_form_length(s, 2, 4) == 0
    with pytest.raises(ValueError):
        closed_form_length(s, -1, 0)


def test_xi_polynomial():
    assert xi_polynomial(spec(1, 1)).coefficients == (2, -2)
    poly = xi_polynomial(spec(1, 2, 3))
    assert poly.coefficients == (6, -22, 18)
    assert poly.valid_below == F(1, 3)
    assert poly(F(1, 4)) == F(13, 8)


@pytest.mark.parametrize("alphas", [(1, 1), (1, 2, 3), (0, 1, 5), (2, 2, 7, 7)])
def test_xi_at_zero_is_sum(alphas):
    assert xi_polynomial(MonomialSpec(alphas, 3))(0) == sum(alphas)


@pytest.mark.parametrize("a,b,c,zeros", [(1, 2, 3, 0), (2, 3, 5, 1), (1, 1, 4, 2)])
def test_second_derivative_three_positive(a, b, c, zeros):
    poly = xi_polynomial(MonomialSpec((0,) * zeros + (a, b, c), 2))
    for x in [F(0), F(1, 7), F(1, 2)]:
        assert xi_polynomial_derivative(poly, 2, x) == 6 * a * b * c


def test_derivative_small_cases():
    poly = xi_polynomial(spec(1, 1))
    assert xi_polynomial_derivative(poly, 1, F(1, 3)) == -2
    assert xi_polynomial_derivative(poly, 2, 0) == 0
    assert xi_polynomial_derivative(poly, 5, F(1, 2)) == 0
    with pytest.raises(ValueError):
        poly.derivative(0, 0)


def test_exact_fpt():
    assert exact_fpt(spec(1, 2, 3)) == F(1, 3)
    assert exact_fpt(spec(1, 1)) == 1
    for a in range(1, 6):
        s = spec(0, a)
        assert sum(s.alphas) * exact_fpt(s) == 1


def test_left_limit():
    s = spec(1, 2, 3)
    assert left_limit_at_fpt(s) == F(2, 3)
    assert xi_polynomial(s)(F(1, 3)) == F(2, 3)
    assert left_limit_at_fpt(spec(1, 1)) == 0
    assert left_limit_at_fpt(spec(2, 2, 2)) == 0
    assert left_limit_at_fpt(spec(1, 3)) == 2


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=2, max_size=4).filter(lambda a: max(a) > 0))
def test_left_limit_equals_polynomial_at_fpt(alphas):
    s = MonomialSpec(alphas, 2)
    assert left_limit_at_fpt(s) == xi_polynomial(s)(exact_fpt(s))


def test_classify_examples():
    c = classify(spec(1, 3, p=2))
    assert not c.continuous and not c.limit_exists_at_fpt
    assert set(c.analysis.cycle) == {1, 2}
    assert c.analysis.limsup == 2
    c7 = classify(spec(1, 3, p=7))
    assert c7.limit_exists_at_fpt
    assert set(c7.analysis.cycle) == {1}
    for p in [2, 3, 5]:
        c = classify(spec(2, 2, p=p))
        assert c.continuous and c.limit_exists_at_fpt
    assert classify(spec(1, 1)).continuous


def test_limsup_values():
    assert limsup_at_fpt(spec(1, 3, p=2)) == F(4, 3)
    assert limsup_at_fpt(spec(1, 1, p=5)) == 0
    assert limsup_at_fpt(spec(1, 3, p=7)) == F(2, 3)
    # reported separately from the left limit, which is 2 here
    assert left_limit_at_fpt(spec(1, 3, p=7)) == 2
    assert liminf_at_fpt(spec(1, 3, p=2)) == F(2, 3)


def test_limsup_matches_engine_along_tower():
    # for x y^3 at p=2, C_{e, floor(q/3)} = (q - t) eps_e / q with eps_e = 2, 1, 2, ...
    # odd e decrease to the limsup, even e to the smaller cycle value
    s = spec(1, 3, p=2)
    f = s.polynomial()
    odd = [c_value(length_table(f, e), 2**e // 3) for e in (3, 5, 7)]
    even = [c_value(length_table(f, e), 2**e // 3) for e in (2, 4, 6)]
    assert odd == [F(3, 2), F(11, 8), F(43, 32)]
    assert all(a > b > limsup_at_fpt(s) for a, b in zip(odd, odd[1:]))
    assert all(a > b > liminf_at_fpt(s) for a, b in zip(even, even[1:]))
    assert odd[-1] - limsup_at_fpt(s) < F(1, 10)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 12), min_size=2, max_size=3).filter(lambda a: max(a) > 0),
       st.sampled_from([2, 3, 5, 7]))
def test_epsilon_periodicity(alphas, p):
    s = MonomialSpec(alphas, p)
    a = epsilon_analysis(s)
    top = s.top
    assert top == p**a.s * a.q and a.q % p != 0
    assert a.preperiod <= a.s
    for e in range(a.preperiod, a.preperiod + 3 * a.period):
        assert pow(p, e + a.period, top) == pow(p, e, top)
    assert a.cycle == tuple(pow(p, e, top) for e in range(a.preperiod, a.preperiod + a.period))
    assert a.limsup == max(a.cycle) and a.liminf == min(a.cycle)
    # preperiod is minimal
    if a.preperiod > 0:
        e = a.preperiod - 1
        assert pow(p, e + a.period, top) != pow(p, e, top)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=2, max_size=4).filter(lambda a: max(a) > 0),
       st.sampled_from([2, 3, 5]), st.integers(0, 4))
def test_expanded_form_matches_closed_form(alphas, p, e):
    s = MonomialSpec(alphas, p)
    q = p**e
    for t in range(q):
        if (t + 1) * s.top < q:
            assert expanded_length(s, e, t) == closed_form_length(s, e, t)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 5), min_size=2, max_size=4).filter(lambda a: max(a) > 0),
       st.sampled_from([2, 3, 5]), st.integers(0, 5))
def test_closed_form_mass_and_monotone(alphas, p, e):
    s = MonomialSpec(alphas, p)
    q = p**e
    ls = [closed_form_length(s, e, t) for t in range(q + 1)]
    assert sum(ls) == q ** len(alphas)
    assert all(a >= b for a, b in zip(ls, ls[1:]))
    assert ls[-1] == 0


@pytest.mark.parametrize("alphas,p,e_max", [
    ((1, 1), 2, 3), ((1, 2), 3, 2), ((1, 2, 3), 2, 2), ((2, 3), 2, 4), ((0, 1, 2), 3, 2),
])
def test_closed_form_equals_engine(alphas, p, e_max):
    s = MonomialSpec(alphas, p)
    for e in range(e_max + 1):
        table = length_table(s.polynomial(), e)
        assert table.padded() == [closed_form_length(s, e, t) for t in range(table.q)]


@pytest.mark.parametrize("alphas,x", [((1, 2, 3), F(1, 4)), ((1, 1), F(1, 3)),
                                      ((2, 3), F(1, 5)), ((0, 1, 2), F(3, 10))])
def test_step_convergence_bound(alphas, x):
    s = MonomialSpec(alphas, 2)
    K = step_error_constant(s)
    poly = xi_polynomial(s)
    for e in range(1, 25):
        q = 2**e
        t = math.floor(x * q)
        if (t + 1) * s.top >= q:
            continue
        c = F(closed_form_length(s, e, t), q ** s.n)
        assert abs(c - poly(x)) <= F(K, q)


def test_step_error_constant_value():
    assert step_error_constant(spec(1, 2, 3)) == 1 * 2 * 6 + 2 * 4 * 11 + 3 * 8 * 6


def test_zero_exponent_scaling():
    # x^0 y z^2 in three variables: each length is q times that of y z^2 in two
    s3 = MonomialSpec((0, 1, 2), 2)
    two = Polynomial.monomial((1, 2), 2)
    for e in range(3):
        q = 2**e
        t3 = length_table(s3.polynomial(), e)
        t2 = length_table(two, e)
        assert t3.padded() == [q * v for v in t2.padded()]
        assert [closed_form_length(s3, e, t) for t in range(q)] == t3.padded()


@pytest.mark.parametrize("alphas", [(1, 1), (1, 2), (2, 3), (1, 2, 3), (0, 1, 2), (1, 3),
                                    (2, 2), (0, 0, 5), (3, 3, 3, 4)])
def test_hk_times_fpt_at_least_one(alphas):
    s = MonomialSpec(alphas, 2)
    assert hk_times_fpt(s) == sum(alphas) * exact_fpt(s) >= 1
