import numpy as np
import pytest

from gaplab import numerics


@pytest.fixture
def samples():
    s = np.linspace(0.0, 1.0, 101)
    return s, s[1] - s[0]


def test_derivative_fourth_order(samples):
    s, h = samples
    d = numerics.derivative(np.sin(3 * s), h)
    assert np.max(np.abs(d - 3 * np.cos(3 * s))) < 1e-6


def test_derivative_exact_on_quartics(samples):
    s, h = samples
    d = numerics.derivative(s ** 4 - 2 * s, h)
    assert d == pytest.approx(4 * s ** 3 - 2, abs=1e-9)


def test_derivative_second_order(samples):
    s, h = samples
    d = numerics.derivative(s ** 2, h, order=2)
    assert d == pytest.approx(2 * s, abs=1e-10)


def test_derivative_errors():
    with pytest.raises(ValueError):
        numerics.derivative(np.ones(10), 0.1, order=3)
    with pytest.raises(ValueError):
        numerics.derivative(np.ones(4), 0.1)


@pytest.mark.parametrize('order, tol', [(2, 1e-2), (4, 1e-5)])
def test_second_derivative(samples, order, tol):
    s, h = samples
    d = numerics.second_derivative(np.cos(2 * s), h, order=order)
    assert np.max(np.abs(d + 4 * np.cos(2 * s))) < tol


def test_second_derivative_exact_on_quintics(samples):
    s, h = samples
    d = numerics.second_derivative(s ** 5, h, order=4)
    assert d == pytest.approx(20 * s ** 3, abs=1e-7)


def test_richardson_limit():
    # f(h) = 1 + h^2 sampled at h = 0.1, 0.05
    assert numerics.richardson_limit(2, [1.01, 1.0025], order=2) \
        == pytest.approx(1.0, abs=1e-15)
    # two levels remove h and h^2 terms
    f = [1 + h + h * h for h in (0.4, 0.2, 0.1)]
    assert numerics.richardson_limit(2, f, order=1) == pytest.approx(1.0)
    assert numerics.richardson_limit(2, [3.0]) == 3.0
    with pytest.raises(ValueError):
        numerics.richardson_limit(2, [])


def test_integrals():
    s = np.linspace(-1.0, 1.0, 2001)
    h = s[1] - s[0]
    f = np.cos(np.pi * s / 2)
    assert numerics.full_integral(f, h) == pytest.approx(4 / np.pi, rel=1e-6)
    assert numerics.half_integral(f, h) == pytest.approx(2 / np.pi, rel=1e-6)


def test_with_boundary():
    assert numerics.with_boundary([1.0, 2.0]).tolist() == [0.0, 1.0, 2.0, 0.0]


def test_sign_changes():
    assert numerics.sign_changes([1, 2, -1, -2, 3]).tolist() == [1, 3]
    assert numerics.sign_changes([1, 0, -1]).tolist() == [0]
    assert numerics.sign_changes([0, 0]).tolist() == []
