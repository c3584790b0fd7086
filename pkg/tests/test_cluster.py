"""Cluster variables: frozen values, the recurrence over exact rationals as
an independent oracle, periodicity, and the boundary identities."""
import random
from fractions import Fraction

import pytest

from clusteraut.budget import limit
from clusteraut.cluster import (
    check_relation,
    cluster_var,
    detect_period,
    expected_period,
    is_finite_type,
    laurent_expand,
    verify_identity_y0,
    verify_identity_y0_y5,
    verify_identity_y5,
    y0_expression,
    y5_expression,
)
from clusteraut.errors import BudgetExceeded
from clusteraut.poly import LaurentPoly, Params, parity_exponent
from clusteraut.rings import ZZ
from clusteraut.surface import normal_form


def evaluate(poly, point):
    total = Fraction(0)
    for exps, c in poly.terms():
        v = Fraction(c)
        for e, x in zip(exps, point):
            v *= Fraction(x) ** e
        total += v
    return total


def test_seed_variables():
    params = Params(2, 2)
    assert cluster_var(params, 1).value.term_map() == {(1, 0, 0, 0): 1}
    assert cluster_var(params, 2).value.term_map() == {(0, 1, 0, 0): 1}


def test_frozen_values_1_1():
    params = Params(1, 1)
    assert cluster_var(params, 3).value.term_map() == {
        (-1, 1, 0, 0): 1,
        (-1, 0, 0, 0): 1,
    }
    assert cluster_var(params, 4).value.term_map() == {
        (0, -1, 0, 0): 1,
        (-1, 0, 0, 0): 1,
        (-1, -1, 0, 0): 1,
    }
    assert cluster_var(params, 5).value.term_map() == {
        (1, -1, 0, 0): 1,
        (0, -1, 0, 0): 1,
    }
    assert cluster_var(params, 6).value == cluster_var(params, 1).value
    assert cluster_var(params, 7).value == cluster_var(params, 2).value


def test_frozen_values_2_1():
    params = Params(2, 1)
    assert cluster_var(params, 3).value.term_map() == {
        (-1, 2, 0, 0): 1,
        (-1, 0, 0, 0): 1,
    }
    assert cluster_var(params, 4).value.term_map() == {
        (-1, 1, 0, 0): 1,
        (0, -1, 0, 0): 1,
        (-1, -1, 0, 0): 1,
    }
    assert cluster_var(params, 7).value == cluster_var(params, 1).value
    assert cluster_var(params, 8).value == cluster_var(params, 2).value


def test_recurrence_against_rational_arithmetic():
    rng = random.Random(31)
    for a, b in ((1, 1), (2, 1), (2, 2), (3, 2), (4, 1)):
        params = Params(a, b)
        for _ in range(5):
            v1 = Fraction(rng.randrange(1, 6), rng.randrange(1, 4))
            v2 = Fraction(rng.randrange(1, 6), rng.randrange(1, 4))
            point = (v1, v2, 0, 0)
            seq = {1: v1, 2: v2}
            for n in range(2, 9):
                c = parity_exponent(params, n)
                seq[n + 1] = (seq[n] ** c + 1) / seq[n - 1]
            for n in range(0, -5, -1):
                c = parity_exponent(params, n + 1)
                seq[n] = (seq[n + 1] ** c + 1) / seq[n + 2]
            for n in range(-4, 10):
                got = evaluate(cluster_var(params, n).value, point)
                assert got == seq[n], (a, b, n)


def test_exchange_relation_holds_on_computed_values():
    for a, b in ((2, 2), (3, 2)):
        params = Params(a, b)
        for n in range(-3, 7):
            assert check_relation(params, n)


def test_detected_periods():
    assert detect_period(Params(1, 1)) == 5
    assert detect_period(Params(2, 1)) == 6
    assert detect_period(Params(1, 2)) == 6
    assert detect_period(Params(3, 1)) == 8
    assert detect_period(Params(1, 3)) == 8
    assert detect_period(Params(2, 2), n_max=20) is None


def test_expected_period_matches_detection():
    for a in range(1, 4):
        for b in range(1, 4):
            params = Params(a, b)
            if is_finite_type(params):
                assert detect_period(params) == expected_period(params)
            else:
                assert expected_period(params) is None


def test_periodicity_wraps_negative_indices():
    params = Params(1, 1)
    assert cluster_var(params, 0).value == cluster_var(params, 5).value
    assert cluster_var(params, -1).value == cluster_var(params, 4).value


def test_positivity_observed_on_sample():
    for a, b in ((2, 2), (4, 1), (3, 2)):
        params = Params(a, b)
        for n in range(-4, 9):
            assert cluster_var(params, n).positive


def test_budget_stops_long_walks():
    params = Params(3, 3)
    with limit(50):
        with pytest.raises(BudgetExceeded):
            cluster_var(params, 15)
        assert detect_period(params, n_max=30) is None


def test_boundary_identities():
    for a in range(1, 5):
        for b in range(1, 5):
            params = Params(a, b)
            assert verify_identity_y0(params)
            assert verify_identity_y5(params)
            assert verify_identity_y0_y5(params)
            literal = verify_identity_y5(params, paper_literal=True)
            assert literal == (a == b)


def test_boundary_expressions_match_cluster_walk():
    """y0 and y5 as 4-variable expressions agree with the walk values after
    expanding y3, y4 in the seed cluster."""
    for a, b in ((1, 1), (2, 1), (2, 2), (3, 2)):
        params = Params(a, b)
        assert laurent_expand(params, y0_expression(params)) == cluster_var(
            params, 0
        ).value
        assert laurent_expand(params, y5_expression(params)) == cluster_var(
            params, 5
        ).value


def test_laurent_expansion_is_faithful():
    rng = random.Random(47)
    params = Params(2, 2)
    a, b = params.a, params.b
    y = [LaurentPoly.variable(i) for i in (1, 2, 3, 4)]
    rel1 = y[0] * y[2] - y[1] ** a - LaurentPoly.one()
    rel2 = y[1] * y[3] - y[2] ** b - LaurentPoly.one()
    for _ in range(30):
        terms = {
            tuple(rng.randrange(0, 3) for _ in range(4)): rng.randrange(-4, 5)
            for _ in range(4)
        }
        p = LaurentPoly.from_terms(ZZ, terms)
        mult = LaurentPoly.from_terms(
            ZZ, {tuple(rng.randrange(0, 2) for _ in range(4)): rng.randrange(-2, 3)}
        )
        q = p + mult * rel1 + (mult * mult) * rel2
        assert laurent_expand(params, p) == laurent_expand(params, q)
        assert normal_form(params, p) == normal_form(params, q)
        r = p + LaurentPoly.one()
        assert laurent_expand(params, p) != laurent_expand(params, r)
