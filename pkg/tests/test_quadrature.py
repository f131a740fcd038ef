"""Tests for the adaptive quadrature and the Matsubara summation loop.

All reference values are closed-form integrals of exponentially decaying
integrands, the only class the integrator is built for.
"""

import math

import numpy as np
import pytest

from casimir.quadrature import (
    ConvergenceError,
    ConvergenceSpec,
    integrate_2d,
    integrate_y,
    matsubara_sum,
)


def test_spec_validation():
    ConvergenceSpec(rel_tol=1e-6)
    with pytest.raises(ValueError):
        ConvergenceSpec(rel_tol=0.0)
    with pytest.raises(ValueError):
        ConvergenceSpec(rel_tol=1e-3)  # looser than the 1e-4 ceiling
    with pytest.raises(ValueError):
        ConvergenceSpec(abs_floor=-1.0)
    with pytest.raises(ValueError):
        ConvergenceSpec(max_matsubara=0)
    with pytest.raises(ValueError):
        ConvergenceSpec(y_cutoff_margin=10.0)
    with pytest.raises(ValueError):
        ConvergenceSpec(max_panels=4)


def test_integrate_y_closed_forms():
    # int_0^inf y e^{-y} dy = 1
    res = integrate_y(lambda y: y * np.exp(-y), 0.0)
    assert res.value == pytest.approx(1.0, rel=1e-12)
    assert res.error < 1e-9
    assert res.evals > 0
    # int_xi^inf y e^{-y} dy = (1 + xi) e^{-xi}
    for xi in (0.5, 2.0, 7.0):
        res = integrate_y(lambda y: y * np.exp(-y), xi)
        assert res.value == pytest.approx((1.0 + xi) * math.exp(-xi), rel=1e-12)
    # int_0^inf y^3 e^{-y} dy = 6
    res = integrate_y(lambda y: y**3 * np.exp(-y), 0.0)
    assert res.value == pytest.approx(6.0, rel=1e-12)
    # log-singular slope at the endpoint, still integrable:
    # int_0^inf y ln(1 - e^{-y}) dy = -zeta(3)
    res = integrate_y(lambda y: y * np.log(-np.expm1(-y)), 0.0)
    zeta3 = 1.2020569031595942854
    assert res.value == pytest.approx(-zeta3, rel=1e-11)


def test_integrate_y_tolerance_scaling():
    f = lambda y: y**3 * np.exp(-y) / (1.0 + y)
    loose = integrate_y(f, 0.0, ConvergenceSpec(rel_tol=1e-5))
    tight = integrate_y(f, 0.0, ConvergenceSpec(rel_tol=1e-12))
    # tightening the tolerance must not cost accuracy and must cost evals
    assert abs(loose.value - tight.value) <= max(1e-5 * abs(tight.value), loose.error)
    assert tight.evals >= loose.evals
    assert tight.error <= loose.error


def test_integrate_y_zero_integrand():
    # abs_floor keeps the identically-zero integrand from refining forever
    res = integrate_y(lambda y: np.zeros_like(y), 2.0)
    assert res.value == 0.0


def test_integrate_y_budget_exhaustion():
    # a spike the coarse panels cannot resolve within 8 panels
    f = lambda y: np.exp(-((y - 3.0) ** 2) * 1e8) + 1e-300 * y
    with pytest.raises(ConvergenceError) as exc_info:
        integrate_y(f, 0.0, ConvergenceSpec(rel_tol=1e-10, max_panels=8))
    assert exc_info.value.partial is not None


def test_integrate_y_rejects_negative_lower():
    with pytest.raises(ValueError):
        integrate_y(lambda y: np.exp(-y), -1.0)


def test_integrate_2d_wedge():
    # int_0^inf dxi int_xi^inf y e^{-y} dy = int_0^inf (1 + xi) e^{-xi} dxi = 2
    res = integrate_2d(lambda xi, y: y * np.exp(-y))
    assert res.value == pytest.approx(2.0, rel=1e-9)
    # inner integral of y^2 e^{-y} from xi is e^{-xi}(xi^2 + 2 xi + 2), so
    # the outer integral against e^{-xi} gives 2/8 + 2/4 + 2/2 = 7/4
    res = integrate_2d(lambda xi, y: y**2 * np.exp(-y - xi))
    assert res.value == pytest.approx(1.75, rel=1e-9)


def test_matsubara_sum_geometric():
    # term(l) = e^{-b l}: sum = e^{-b} / (1 - e^{-b})
    for b in (0.5, 2.0):
        q = math.exp(-b)
        value, terms, tail = matsubara_sum(lambda l: q**l)
        assert value == pytest.approx(q / (1.0 - q), rel=1e-9)
        assert terms >= 3
        assert tail <= 1e-8 * abs(value)


def test_matsubara_sum_alternating():
    # term(l) = (-1)^l e^{-l/2}; sum = -q/(1+q) with q = e^{-1/2}
    q = math.exp(-0.5)
    value, terms, tail = matsubara_sum(lambda l: (-q) ** l)
    assert value == pytest.approx(-q / (1.0 + q), rel=1e-9)


def test_matsubara_sum_budget():
    # slowly decaying terms exhaust a tiny budget
    with pytest.raises(ConvergenceError) as exc_info:
        matsubara_sum(lambda l: 1.0 / l**2, ConvergenceSpec(max_matsubara=50))
    assert exc_info.value.partial == pytest.approx(sum(1.0 / l**2 for l in range(1, 51)))


def test_matsubara_sum_stop_rule_needs_three_small_terms():
    # a single accidentally-small term must not stop the sum: term(5) = 0
    # but terms 6..9 are large again
    def term(l):
        if l == 5:
            return 0.0
        return math.exp(-0.8 * l)

    exact = sum(term(l) for l in range(1, 80))
    value, terms, _ = matsubara_sum(term)
    assert value == pytest.approx(exact, rel=1e-9)
    assert terms > 6
