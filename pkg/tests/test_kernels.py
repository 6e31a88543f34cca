import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gaplab import kernels
from gaplab.errors import ConvergenceError, DomainError
from gaplab.kernels import ModelParams

curvatures = st.floats(min_value=-2.0, max_value=2.0).filter(
    lambda K: K == 0 or abs(K) > 1e-6)
fractions = st.floats(min_value=-0.9, max_value=0.9, allow_nan=False)


def reach(K):
    """A range of s on which every kernel is defined and well scaled."""
    return 1.4 / math.sqrt(K) if K > 0 else 3.0 / math.sqrt(max(-K, 1e-2))


@given(curvatures, fractions)
def test_pythagoras(K, t):
    s = t * reach(K)
    value = kernels.cs(K, s) ** 2 + K * kernels.sn(K, s) ** 2
    assert value == pytest.approx(1.0, abs=1e-12 * (1 + abs(K) * s * s))


@given(curvatures, fractions)
def test_tn_definition(K, t):
    s = t * reach(K)
    expected = K * kernels.sn(K, s) / kernels.cs(K, s)
    assert kernels.tn(K, s) == pytest.approx(expected, rel=1e-12, abs=1e-15)


@given(curvatures, fractions)
def test_m_is_half_derivative_of_l(K, t):
    s = t * reach(K)
    h = 1e-5
    derivative = (kernels.l_fn(K, s + h) - kernels.l_fn(K, s - h)) / (2 * h)
    scale = 1 + abs(K) / kernels.cs(K, s) ** 2
    assert derivative == pytest.approx(2 * kernels.m_fn(K, s),
                                       abs=1e-5 * scale * (1 + abs(s)))


@given(st.floats(min_value=-1e-6, max_value=1e-6), st.floats(-1.0, 1.0))
def test_continuity_through_flat(K, s):
    assert kernels.sn(K, s) == pytest.approx(s, abs=1e-6)
    assert kernels.cs(K, s) == pytest.approx(1.0, abs=1e-6)
    assert kernels.tn(K, s) == pytest.approx(0.0, abs=1e-5)


def test_branches():
    assert kernels.curvature_branch(1.0) == 'trig'
    assert kernels.curvature_branch(0.0) == 'flat'
    assert kernels.curvature_branch(-0.5) == 'hyperbolic'
    with pytest.raises(DomainError):
        kernels.curvature_branch(float('nan'))


def test_closed_forms():
    assert kernels.sn(1.0, 0.5) == pytest.approx(math.sin(0.5), rel=1e-15)
    assert kernels.cs(-4.0, 0.5) == pytest.approx(math.cosh(1.0), rel=1e-15)
    assert kernels.tn(-1.0, 0.5) == pytest.approx(-math.tanh(0.5), rel=1e-15)
    assert kernels.tn(4.0, 0.3) == pytest.approx(2 * math.tan(0.6), rel=1e-14)
    assert kernels.tn(0.0, 5.0) == 0.0


def test_arrays_keep_shape():
    s = np.linspace(-0.5, 0.5, 7)
    for f in (kernels.sn, kernels.cs, kernels.tn, kernels.l_fn,
              kernels.m_fn, kernels.m_prime):
        assert f(1.0, s).shape == s.shape
    assert isinstance(kernels.tn(1.0, 0.1), float)


def test_tn_domain():
    with pytest.raises(DomainError):
        kernels.tn(1.0, math.pi / 2)
    with pytest.raises(DomainError):
        kernels.tn(4.0, np.array([0.0, 0.8]))
    assert math.isfinite(kernels.tn(1.0, 1.5))


def test_a_of_K():
    a = kernels.a_of_K(-1.0)
    assert 1.5 < a < 1.75
    assert kernels.m_prime(-1.0, a) == pytest.approx(0.0, abs=1e-12)
    assert kernels.m_prime(-1.0, a / 2) > 0
    assert kernels.m_prime(-1.0, 2 * a) < 0
    assert kernels.a_of_K(-4.0) == pytest.approx(a / 2, rel=1e-12)


@pytest.mark.parametrize('K', [0.0, 1.0])
def test_a_of_K_domain(K):
    with pytest.raises(DomainError):
        kernels.a_of_K(K)


def test_potential():
    s = np.linspace(-0.4, 0.4, 5)
    assert kernels.potential(3, 1.0, s) == pytest.approx(np.full(5, -1.0))
    assert np.all(kernels.potential(1, 1.0, s) == 0)
    assert np.all(kernels.potential(5, 0.0, s) == 0)
    # (n-1)K/4 ((n-3)/cs^2 - (n-1)) at s = 0
    assert kernels.potential(5, 1.0, 0.0) == pytest.approx(-2.0)


def test_weight():
    assert kernels.weight(3, 1.0, 0.5) == pytest.approx(math.cos(0.5) ** 2)
    assert kernels.weight(1, -1.0, 0.5) == 1.0


def test_model_params():
    p = ModelParams(2, 1, 3)
    assert (p.n, p.K, p.D) == (2, 1.0, 3.0)
    assert isinstance(p.K, float)
    assert p.half == 1.5
    assert p.scaled(0.5).D == 1.5
    assert p.singular(0.2)
    assert not p.singular(0.1)
    assert not ModelParams(2, -1.0, 30.0).singular(1.0)
    assert str(ModelParams(4, 1.0, 2.1)) == 'n=4 K=1 D=2.1'


@pytest.mark.parametrize('n, K, D', [
    (0, 1.0, 1.0),
    (1.5, 1.0, 1.0),
    (True, 1.0, 1.0),
    (2, 1.0, 0.0),
    (2, 1.0, -1.0),
    (2, 1.0, math.pi),
    (2, 4.0, 1.6),
    (2, float('inf'), 1.0),
    (2, 0.0, float('nan')),
])
def test_model_params_domain(n, K, D):
    with pytest.raises(DomainError):
        ModelParams(n, K, D)


def test_convergence_error_diagnostics():
    e = ConvergenceError("no bracket", K=-1.0, bracket=(1, 2))
    assert str(e) == "no bracket (K=-1.0, bracket=(1, 2))"
    assert e.diagnostics['K'] == -1.0
    assert e.exit_code == 2
    assert DomainError.exit_code == 1
