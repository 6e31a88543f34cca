import math

import numpy as np
import pytest

from gaplab import modulus
from gaplab.errors import DomainError, PreconditionError
from gaplab.kernels import ModelParams
from gaplab.solver import solve_model


def test_log_derivative_profile_flat(flat_report):
    p = flat_report.params
    profile = modulus.log_derivative_profile(p, flat_report)
    assert profile.s_nodes[0] == pytest.approx(0.0, abs=1e-12)
    assert profile.f_values[0] == pytest.approx(0.0, abs=1e-9)
    k = math.pi / p.D
    core = profile.s_nodes <= 0.8 * p.half
    expected = -k * np.tan(k * profile.s_nodes[core])
    assert profile.f_values[core] == pytest.approx(expected, rel=1e-5,
                                                   abs=1e-8)
    assert profile.spacing == pytest.approx(
        8 * flat_report.grid.h, rel=1e-12)
    assert np.all(profile.s_nodes < p.half)
    # f′ = −k² sec²(ks)
    assert profile.df_values[core] == pytest.approx(
        -k * k / np.cos(k * profile.s_nodes[core]) ** 2, abs=1e-6)


def test_probe_stride():
    report = solve_model(ModelParams(2, 1.0, 1.0))
    coarse = modulus.log_derivative_profile(report.params, report, stride=16)
    fine = modulus.log_derivative_profile(report.params, report, stride=8)
    assert coarse.s_nodes == pytest.approx(fine.s_nodes[::2])
    with pytest.raises(DomainError):
        modulus.log_derivative_profile(report.params, report, stride=0)


def test_ratio_profile_flat(flat_report):
    p = flat_report.params
    ratio = modulus.ratio_profile(p, flat_report)
    # sin(2ks)/cos(ks) = 2 sin(ks)
    expected = 2 * np.sin(math.pi * ratio.s_nodes / p.D)
    assert ratio.w_values == pytest.approx(expected, abs=1e-6)
    assert ratio.endpoint == pytest.approx(2.0, abs=1e-6)
    assert ratio.endpoint_slope == pytest.approx(0.0, abs=1e-4)
    assert modulus.endpoint_ratio(p, flat_report) == ratio.endpoint


@pytest.mark.parametrize('which', modulus.RESIDUALS)
@pytest.mark.parametrize('n, K, D', [(1, 0.0, 2.0), (4, 1.0, 1.2),
                                     (5, 1.0, 0.7)])
def test_residual_order(which, n, K, D):
    coarse, fine, ratio = modulus.residual_order(ModelParams(n, K, D), which)
    assert fine < coarse
    assert 3.5 <= ratio <= 4.5


def test_residual_order_unknown():
    with pytest.raises(DomainError):
        modulus.residual_order(ModelParams(2, 1.0, 1.0), 'cubic')


def test_residuals_are_small():
    p = ModelParams(2, 1.0, 1.0)
    profile = modulus.log_derivative_profile(p)
    assert modulus.riccati_residual(profile) < 1e-6
    # second-order differences on the coarse stride carry an h² error
    assert modulus.riccati_residual(profile, order=2) > \
        10 * modulus.riccati_residual(profile)
    assert math.isfinite(modulus.second_order_residual(profile))
    ratio = modulus.ratio_profile(p)
    assert math.isfinite(modulus.ratio_residual(ratio, profile))
    with pytest.raises(DomainError):
        modulus.riccati_residual(profile, order=3)


def test_ratio_residual_needs_same_grid():
    p = ModelParams(2, 1.0, 1.0)
    report = solve_model(p)
    profile = modulus.log_derivative_profile(p, report, stride=16)
    with pytest.raises(DomainError):
        modulus.ratio_residual(modulus.ratio_profile(p, report), profile)


@pytest.mark.parametrize('n, D', [(2, 0.5), (3, 1.0), (5, 1.5)])
def test_psi_inequalities(n, D):
    verdict = modulus.psi_inequalities(ModelParams(n, 1.0, D))
    assert verdict.passed
    assert verdict.elliptic_condition and verdict.slope_condition
    assert D < verdict.dprime < math.pi / 2
    if n == 2:
        assert verdict.lambda1_margin is not None
    else:
        assert verdict.lambda1_margin is None


def test_psi_preconditions():
    with pytest.raises(PreconditionError):
        modulus.psi_inequalities(ModelParams(3, -1.0, 1.0))
    with pytest.raises(PreconditionError):
        modulus.psi_inequalities(ModelParams(3, 1.0, 2.0))
    with pytest.raises(DomainError):
        modulus.psi_inequalities(ModelParams(3, 1.0, 1.0), dprime=0.5)


def test_psi_explore_mode(caplog):
    caplog.set_level('INFO')
    verdict = modulus.psi_inequalities(ModelParams(3, -1.0, 1.0),
                                       explore=True)
    assert math.isfinite(verdict.elliptic_margin)
    assert 'explore mode' in caplog.text


def test_default_dprime():
    assert modulus.default_dprime(ModelParams(2, 0.0, 2.0)) == \
        pytest.approx(2.1)
    p = ModelParams(2, 1.0, 1.55)
    assert p.D < modulus.default_dprime(p) < math.pi / 2


@pytest.mark.parametrize('n, K, D', [(2, 1.0, 1.0), (5, 1.0, 0.5),
                                     (3, -1.0, 1.0)])
def test_hessian_limit(n, K, D):
    p = ModelParams(n, K, D)
    assert modulus.hessian_limit_check(p) == pytest.approx(
        -solve_model(p).lambda1, rel=1e-5)


def test_comparison_check():
    p = ModelParams(3, 1.0, 1.0)
    margin, ok = modulus.comparison_check(p, 1.1)
    assert ok
    assert margin > -1e-6
    with pytest.raises(DomainError):
        modulus.comparison_check(p, 1.0)


def test_lower_bound_suite():
    bounds = modulus.lower_bound_suite(ModelParams(4, 1.0, 1.0))
    assert bounds.applies and bounds.passed
    assert bounds.bound == pytest.approx(math.pi ** 2 - 1.5)
    assert bounds.ball_lambda1_floor == pytest.approx(4 * bounds.lambda1)
    assert bounds.ball_lambda2_floor == pytest.approx(
        4 * bounds.lambda1 + 3 * math.pi ** 2)


def test_lower_bound_not_asserted_for_n2(caplog):
    caplog.set_level('INFO')
    bounds = modulus.lower_bound_suite(ModelParams(2, 1.0, 0.5))
    assert not bounds.applies
    assert bounds.passed
    assert 'not asserted' in caplog.text


@pytest.mark.parametrize('n, K, D', [(1, 0.0, 2.0), (2, 1.0, 1.5),
                                     (4, -1.0, 1.5), (6, 0.0, 1.0)])
def test_eigenfunction_suite(n, K, D):
    verdict = modulus.eigenfunction_suite(ModelParams(n, K, D))
    assert verdict.phi1_decreasing
    assert verdict.ratio_nondecreasing
    assert verdict.passed
    assert verdict.endpoint > 0
