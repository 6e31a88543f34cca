"""Finite differences, quadrature and extrapolation on uniform grids."""

import numpy as np
from scipy.integrate import trapezoid

# fourth-order one-sided first-derivative stencils for the first two nodes
_FORWARD4 = (
    np.array([-25, 48, -36, 16, -3]) / 12,
    np.array([-3, -10, 18, -6, 1]) / 12,
)
_FORWARD4_SECOND = (
    np.array([45, -154, 214, -156, 61, -10]) / 12,
    np.array([10, -15, -4, 14, -6, 1]) / 12,
)


def derivative(values, h, order=4):
    """First derivative of uniformly spaced samples.

    Centered in the interior; one-sided of the same order near the ends.
    """
    f = np.asarray(values, dtype=float)
    if order == 2:
        return np.gradient(f, h, edge_order=2)
    if order != 4:
        raise ValueError(f"unsupported order {order}")
    if f.size < 5:
        raise ValueError("fourth-order differences need 5 samples")
    d = np.empty_like(f)
    d[2:-2] = (f[:-4] - 8 * f[1:-3] + 8 * f[3:-1] - f[4:]) / 12
    d[0] = _FORWARD4[0] @ f[:5]
    d[1] = _FORWARD4[1] @ f[:5]
    d[-1] = -(_FORWARD4[0] @ f[-1:-6:-1])
    d[-2] = -(_FORWARD4[1] @ f[-1:-6:-1])
    return d / h


def second_derivative(values, h, order=2):
    f = np.asarray(values, dtype=float)
    d = np.empty_like(f)
    if order == 2:
        d[1:-1] = f[:-2] - 2 * f[1:-1] + f[2:]
        d[0] = 2 * f[0] - 5 * f[1] + 4 * f[2] - f[3]
        d[-1] = 2 * f[-1] - 5 * f[-2] + 4 * f[-3] - f[-4]
    elif order == 4:
        if f.size < 6:
            raise ValueError("fourth-order differences need 6 samples")
        d[2:-2] = (-f[:-4] + 16 * f[1:-3] - 30 * f[2:-2]
                   + 16 * f[3:-1] - f[4:]) / 12
        for i, stencil in enumerate(_FORWARD4_SECOND):
            d[i] = stencil @ f[:6]
            d[-1 - i] = stencil @ f[-1:-7:-1]
    else:
        raise ValueError(f"unsupported order {order}")
    return d / (h * h)


def richardson_limit(step_ratio, values, order=1):
    """Extrapolate a sequence computed with steps h, h/q, h/q², ...

    ``order`` is the exponent of the leading error term in units of
    ``log(step_ratio)``: with step ratio 2 and an h² error, pass
    ``step_ratio=2, order=2``.
    """
    level = list(values)
    if not level:
        raise ValueError("nothing to extrapolate")
    m = 0
    while len(level) > 1:
        m += 1
        mult = step_ratio ** (order * m)
        level = [(mult * high - low) / (mult - 1)
                 for low, high in zip(level, level[1:])]
    return level[0]


def with_boundary(samples):
    """Pad Dirichlet samples with the zero endpoint values."""
    return np.concatenate(([0.0], np.asarray(samples, dtype=float), [0.0]))


def half_integral(integrand_full, h):
    """Trapezoid integral over [0, b] of samples on a grid symmetric about
    s = 0 that includes both endpoints and the center node."""
    f = np.asarray(integrand_full, dtype=float)
    center = (f.size - 1) // 2
    return trapezoid(f[center:], dx=h)


def full_integral(integrand_full, h):
    return trapezoid(np.asarray(integrand_full, dtype=float), dx=h)


def sign_changes(values):
    """Indices i such that values[i] and values[i + 1] have opposite signs,
    ignoring exact zeros."""
    v = np.asarray(values, dtype=float)
    nz = np.flatnonzero(v != 0)
    flips = np.flatnonzero(np.sign(v[nz[:-1]]) != np.sign(v[nz[1:]]))
    return nz[flips]
