import math

import numpy as np
import pytest

from gaplab import geometry
from gaplab.errors import DomainError, PreconditionError
from gaplab.geometry import ModelPoint, TangentVec, VariationProbe

PROBES = [VariationProbe(3, K, d0)
          for K in (1.0, 0.0, -1.0) for d0 in (0.3, 1.0, 2.0)]
CURVED = [p for p in PROBES if p.K != 0]


def test_model_points():
    assert ModelPoint([0.0, 0.0, 1.0], 1.0).residual == 0.0
    assert ModelPoint([0.0, 0.0, 1.0], -1.0).residual == 0.0
    with pytest.raises(DomainError):
        ModelPoint([2.0, 0.0, 0.0], 1.0)
    with pytest.raises(DomainError):
        ModelPoint([0.0, 0.0, -1.0], -1.0)
    point = ModelPoint([0.0, 0.0, 1.0], 1.0)
    with pytest.raises(ValueError):
        point.coords[0] = 1.0


def test_tangent_vectors():
    pole = ModelPoint([0.0, 0.0, 1.0], 1.0)
    assert TangentVec(pole, [1.0, 0.0, 0.0]).norm2 == 1.0
    with pytest.raises(DomainError):
        TangentVec(pole, [0.0, 0.0, 1.0])
    with pytest.raises(PreconditionError):
        geometry.exp_map(pole, TangentVec(pole, [2.0, 0.0, 0.0]), 0.5)


def test_lorentz_product():
    assert geometry.inner(-1.0, [1, 2, 3], [1, 1, 1]) == 0.0
    assert geometry.inner(1.0, [1, 2, 3], [1, 1, 1]) == 6.0


def test_distance_between_models():
    with pytest.raises(DomainError):
        geometry.distance(ModelPoint([0.0, 0.0, 1.0], 1.0),
                          ModelPoint([0.0, 0.0, 1.0], -1.0))


@pytest.mark.parametrize('probe', PROBES, ids=str)
def test_exp_distance(probe):
    for r in (probe.d0 / 4, probe.d0 / 2, probe.d0):
        assert geometry.round_trip(probe, r) < 1e-10
    assert geometry.distance(probe.x0, probe.y0) == \
        pytest.approx(probe.d0, rel=1e-12)
    assert probe.d_r(0.0) == pytest.approx(probe.d0, rel=1e-12)


@pytest.mark.parametrize('kwargs', [
    dict(n=1, K=1.0, d0=1.0),
    dict(n=3, K=1.0, d0=0.0),
    dict(n=3, K=1.0, d0=math.pi),
    dict(n=3, K=1.0, d0=1.0, i=3),
    dict(n=3, K=1.0, d0=1.0, i=0),
])
def test_probe_domain(kwargs):
    with pytest.raises(DomainError):
        VariationProbe(**kwargs)


@pytest.mark.parametrize('probe', CURVED, ids=str)
def test_dr_expansion(probe):
    e = geometry.dr_expansion_check(probe)
    assert e.rel_error < 1e-5
    assert e.first_variation == pytest.approx(0.0, abs=1e-8)
    assert np.sign(e.coefficient) == -np.sign(probe.K)


def test_flat_slide_keeps_length():
    probe = VariationProbe(3, 0.0, 1.0)
    assert probe.d_r(0.7) == pytest.approx(1.0, rel=1e-14)
    e = geometry.dr_expansion_check(probe)
    assert e.target == 0
    assert e.rel_error < 1e-8


@pytest.mark.parametrize('probe', PROBES, ids=str)
def test_second_derivative_in_r(probe):
    d = geometry.second_derivative_in_r_check(probe)
    assert set(d.coefficients) == {'start', 'end'}
    assert d.error < 1e-4
    assert d.normal_max < 1e-4


@pytest.mark.parametrize('probe', PROBES, ids=str)
def test_jacobi_orthogonality(probe):
    assert geometry.jacobi_orthogonality_check(probe) < 1e-4


@pytest.mark.parametrize('probe', PROBES, ids=str)
def test_frame(probe):
    assert geometry.frame_check(probe) < 1e-12


@pytest.mark.parametrize('n', [2, 3, 5])
def test_laplacian_comparison(n):
    total, target = geometry.laplacian_comparison_sum(
        VariationProbe(n, 1.0, 1.0))
    assert target == pytest.approx(-2 * (n - 1) * math.tan(0.5))
    assert total == pytest.approx(target, rel=1e-5)


@pytest.mark.parametrize('probe', PROBES, ids=str)
def test_variation_endpoints(probe):
    for r in (-0.1, 0.1):
        start = geometry.variation_eta(probe, r, -probe.d0 / 2)
        end = geometry.variation_eta(probe, r, probe.d0 / 2)
        assert np.allclose(start.coords, probe.p(r), atol=1e-10)
        assert np.allclose(end.coords, probe.q(r), atol=1e-10)
    with pytest.raises(DomainError):
        geometry.variation_eta(probe, 0.0, probe.d0)


def test_unit_direction():
    probe = VariationProbe(3, -1.0, 1.0)
    U = probe.U(0.2)
    assert geometry.inner(probe.K, U, U) == pytest.approx(1.0)
    assert geometry.inner(probe.K, U, probe.p(0.2)) == \
        pytest.approx(0.0, abs=1e-12)


def test_unit_direction_degenerate():
    # both endpoints slide onto the same point
    probe = VariationProbe(3, 1.0, 1.0)
    with pytest.raises(DomainError):
        probe.U(math.pi / 2)
