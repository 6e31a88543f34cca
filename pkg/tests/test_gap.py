import math

import numpy as np
import pytest

from gaplab import gap, kernels
from gaplab.errors import DomainError, PreconditionError
from gaplab.kernels import ModelParams


def test_gap_report():
    report = gap.gap_report(ModelParams(1, 0.0, 3.0))
    assert report.lambda1 == pytest.approx(math.pi ** 2 / 9, rel=1e-9)
    assert report.normalized_gap == pytest.approx(3.0, rel=1e-9)
    doc = report.as_dict()
    assert list(doc) == ['n', 'K', 'D', 'lambda1', 'lambda2', 'gap',
                         'normalized_gap', 'method', 'grid_m', 'residual']
    assert doc['grid_m'] == 2000


@pytest.mark.parametrize('n, D, reference', [
    (2, 1.5, 2.9940610569),
    (4, 2.1, 3.0854596183),
    (8, 1.57, 3.25303530),
])
def test_published_normalized_gaps(n, D, reference):
    report = gap.gap_report(ModelParams(n, 1.0, D))
    assert report.normalized_gap == pytest.approx(reference, abs=2e-4)


def test_n3_gap_is_exactly_three():
    report = gap.gap_report(ModelParams(3, 1.0, 1.57))
    assert report.normalized_gap == pytest.approx(3.0, abs=1e-8)


def test_monotonicity_verdict():
    assert gap.monotonicity_verdict([1, 2, 3]) == 'increasing'
    assert gap.monotonicity_verdict([3, 2, 1]) == 'decreasing'
    assert gap.monotonicity_verdict([1, 1 + 1e-12, 1]) == 'flat'
    assert gap.monotonicity_verdict([1, 2, 1]) == 'non-monotone'
    assert gap.monotonicity_verdict([1]) == 'flat'
    assert gap.monotonicity_verdict([1, 1.1], tol=0.5) == 'flat'


def test_sweep_params():
    base = ModelParams(2, 1.0, 1.0)
    assert [p.D for p in gap.sweep_params('D', [0.5, 1.0], base)] == \
        [0.5, 1.0]
    assert [p.n for p in gap.sweep_params('n', [2, 3], base)] == [2, 3]
    assert [p.K for p in gap.sweep_params('K', [-1, 0, 1], base)] == \
        [-1.0, 0.0, 1.0]
    with pytest.raises(DomainError):
        gap.sweep_params('R', [1.0], base)
    with pytest.raises(DomainError):
        gap.sweep_params('D', [], base)
    with pytest.raises(DomainError):
        gap.sweep_params('D', [1.0, 1.0], base)
    with pytest.raises(DomainError):
        gap.sweep_params('D', [1.0, 4.0], base)


@pytest.mark.parametrize('n, verdict', [
    (2, 'decreasing'),
    (3, 'flat'),
    (4, 'increasing'),
])
def test_sweep_D(small_grid, n, verdict):
    values = [0.5, 1.0, 1.5, 2.0, 2.5]
    result = gap.sweep('D', values, ModelParams(n, 1.0, 0.5))
    assert result.values == values
    assert result.verdict == verdict
    assert len(result.normalized_gaps) == len(values)


def test_sweep_order_does_not_depend_on_workers(small_grid):
    values = [0.4, 0.8, 1.2, 1.6]
    base = ModelParams(5, -1.0, 0.4)
    one = gap.sweep('D', values, base, workers=1)
    many = gap.sweep('D', values, base, workers=4)
    assert one.normalized_gaps == many.normalized_gaps


def test_sweep_K_is_continuous_through_flat(small_grid):
    result = gap.sweep('K', [-1e-7, 0.0, 1e-7], ModelParams(4, 0.0, 1.0))
    gaps = result.normalized_gaps
    assert max(gaps) - min(gaps) < 1e-6


def test_sweep_beyond_a_of_K_is_logged(small_grid, caplog):
    caplog.set_level('INFO')
    a = kernels.a_of_K(-1.0)
    gap.sweep('D', [1.0, a + 0.5], ModelParams(4, -1.0, 1.0))
    assert 'beyond a(K)' in caplog.text


@pytest.mark.asyncio
async def test_sweep_async_keeps_order(small_grid):
    params = [ModelParams(n, 1.0, 1.0) for n in (5, 2, 4)]
    reports = await gap.sweep_async(params, workers=3)
    assert [r.params.n for r in reports] == [5, 2, 4]


@pytest.mark.parametrize('n, K, D, i', [
    (2, 1.0, 1.0, 1),
    (5, -1.0, 1.0, 2),
    (4, 1.0, 2.0, 1),
])
def test_perturbation_derivative_matches_rescaling(n, K, D, i):
    p = ModelParams(n, K, D)
    value = gap.perturbation_derivative(p, i)
    oracle = gap.rescaled_derivative(p, i, step=1e-3)
    assert value == pytest.approx(oracle, rel=1e-4)


def test_perturbation_derivative_vanishes_when_flat():
    p = ModelParams(4, 0.0, 1.0)
    assert gap.perturbation_derivative(p, 1) == 0.0
    assert gap.gap_derivative_integral(p) == 0.0


@pytest.mark.parametrize('n, sign', [(2, -1), (4, 1), (6, 1)])
def test_gap_derivative_sign(n, sign):
    value = gap.gap_derivative_integral(ModelParams(n, 1.0, 1.5))
    assert sign * value > 0


def test_gap_derivative_is_difference_of_eigenvalue_derivatives():
    p = ModelParams(5, 1.0, 1.0)
    difference = (gap.perturbation_derivative(p, 2)
                  - gap.perturbation_derivative(p, 1))
    assert gap.gap_derivative_integral(p) == pytest.approx(difference,
                                                           rel=1e-4)


def test_crossing_point_flat():
    b = gap.crossing_point(ModelParams(1, 0.0, 2.0))
    assert b == pytest.approx(1 / 3, abs=1e-6)


@pytest.mark.parametrize('n, K, D', [(2, 1.0, 1.0), (4, -1.0, 0.8)])
def test_crossing_point_inside(n, K, D):
    b = gap.crossing_point(ModelParams(n, K, D))
    assert 0 < b < D / 2


def test_ratio_monotonicity():
    verdict = gap.ratio_monotonicity_check(ModelParams(3, 1.0, 1.0), 0.1)
    assert verdict.passed
    assert verdict.after >= verdict.before
    assert verdict.margin == verdict.after - verdict.before


@pytest.mark.parametrize('n, K, D, dD', [
    (2, 1.0, 1.0, 0.1),
    (3, 1.0, 3.0, 0.2),
    (4, -1.0, 1.6, 0.5),
])
def test_ratio_preconditions(n, K, D, dD):
    with pytest.raises(PreconditionError):
        gap.ratio_monotonicity_check(ModelParams(n, K, D), dD)


def test_ratio_decreases_for_negative_curvature(caplog):
    caplog.set_level('INFO')
    verdict = gap.ratio_monotonicity_check(ModelParams(3, -1.0, 0.5), 0.05)
    # λ̄_i = i²π²/D² + 1 for n = 3, K = −1
    closed = [(4 * math.pi ** 2 / D ** 2 + 1) / (math.pi ** 2 / D ** 2 + 1)
              for D in (0.5, 0.55)]
    assert verdict.before == pytest.approx(closed[0], rel=1e-8)
    assert verdict.after == pytest.approx(closed[1], rel=1e-8)
    assert verdict.margin < 0
    assert not verdict.applies and not verdict.nondecreasing
    assert verdict.passed
    assert 'not asserted' in caplog.text


def test_sweep_needs_a_worker():
    with pytest.raises(DomainError):
        gap.sweep('D', [1.0, 1.5], ModelParams(3, 1.0, 1.0), workers=0)


def test_ratio_needs_positive_step():
    with pytest.raises(DomainError):
        gap.ratio_monotonicity_check(ModelParams(3, 1.0, 1.0), 0.0)


def test_ratio_sweep(small_grid):
    ratios, verdict = gap.ratio_sweep([0.5, 1.0, 1.5],
                                      ModelParams(4, 1.0, 0.5))
    assert len(ratios) == 3
    assert verdict == 'increasing'
    assert all(r > 1 for r in ratios)


def test_conjecture_probe(caplog):
    value, holds = gap.conjecture_probe(ModelParams(2, 1.0, 3.1))
    assert holds
    assert 2 < value < 3
    assert 'normalized gap' not in caplog.text
