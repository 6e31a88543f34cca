"""
Generalized trigonometric functions of constant curvature K and the
auxiliary coefficients of the one-dimensional model operator.

Every function accepts a scalar or an array for ``s`` and returns the same
shape. For |K|·s² below :data:`SERIES_THRESHOLD` the trig and hyperbolic
branches are evaluated through their Taylor series so that values are
continuous in K across K = 0.
"""

import dataclasses
import logging
import math

import numpy as np
from scipy.optimize import brentq

from gaplab.errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

SERIES_THRESHOLD = 1e-8
TN_MARGIN = 1e-12


def curvature_branch(K):
    if not math.isfinite(K):
        raise DomainError(f"curvature must be finite, got {K!r}")
    if K > 0:
        return 'trig'
    if K < 0:
        return 'hyperbolic'
    return 'flat'


def _out(value):
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value


def _small(K, s):
    return abs(K) * np.square(s) < SERIES_THRESHOLD


def sn(K, s):
    s = np.asarray(s, dtype=float)
    branch = curvature_branch(K)
    if branch == 'flat':
        return _out(s)
    x = K * s * s
    series = s * (1 - x / 6 + x * x / 120)
    r = math.sqrt(abs(K))
    closed = (np.sin(r * s) if branch == 'trig' else np.sinh(r * s)) / r
    return _out(np.where(_small(K, s), series, closed))


def cs(K, s):
    s = np.asarray(s, dtype=float)
    branch = curvature_branch(K)
    if branch == 'flat':
        return _out(np.ones_like(s))
    x = K * s * s
    series = 1 - x / 2 + x * x / 24
    r = math.sqrt(abs(K))
    closed = np.cos(r * s) if branch == 'trig' else np.cosh(r * s)
    return _out(np.where(_small(K, s), series, closed))


def check_domain(K, s):
    """Raise unless every ``s`` lies strictly before the first zero of cs."""
    if K <= 0:
        return
    limit = math.pi / 2 - TN_MARGIN
    worst = float(np.max(np.abs(np.asarray(s, dtype=float)))) * math.sqrt(K)
    if worst >= limit:
        raise DomainError(
            f"|s| = {worst / math.sqrt(K)!r} reaches the zero of cs_K "
            f"at pi/(2 sqrt K) = {math.pi / (2 * math.sqrt(K))!r}")


def tn(K, s):
    """K·sn/cs = −cs′/cs: √K tan(√K s), 0 or −√|K| tanh(√|K| s)."""
    s = np.asarray(s, dtype=float)
    branch = curvature_branch(K)
    if branch == 'flat':
        return _out(np.zeros_like(s))
    check_domain(K, s)
    x = K * s * s
    series = K * s * (1 + x / 3 + 2 * x * x / 15)
    r = math.sqrt(abs(K))
    if branch == 'trig':
        closed = r * np.tan(r * s)
    else:
        closed = -r * np.tanh(r * s)
    return _out(np.where(_small(K, s), series, closed))


def l_fn(K, s):
    s = np.asarray(s, dtype=float)
    return _out(tn(K, s) + s * K / np.square(cs(K, s)))


def m_fn(K, s):
    """Half the derivative of :func:`l_fn`."""
    s = np.asarray(s, dtype=float)
    return _out(K / np.square(cs(K, s)) * (1 + s * tn(K, s)))


def m_prime(K, s):
    s = np.asarray(s, dtype=float)
    t = tn(K, s)
    c2 = np.square(cs(K, s))
    return _out(K / c2 * (3 * t + 2 * s * t * t + s * K / c2))


def a_of_K(K):
    """Unique positive zero of m_K′ for K < 0."""
    if not K < 0:
        raise DomainError(f"a(K) is defined for K < 0, got {K!r}")
    r = math.sqrt(-K)
    lo, hi = 1e-3 / r, 10 / r
    f_lo, f_hi = m_prime(K, lo), m_prime(K, hi)
    if not (f_lo > 0 > f_hi):
        raise ConvergenceError("cannot bracket the zero of m'",
                               K=K, bracket=(lo, hi), values=(f_lo, f_hi))
    root = brentq(lambda s: m_prime(K, s), lo, hi, xtol=1e-15, rtol=1e-14)
    logger.debug("a(%g) = %.12g", K, root)
    return root


def potential(n, K, s):
    """V of the normal form −ϕ″ + Vϕ = λϕ, with φ = cs^(−(n−1)/2)·ϕ."""
    s = np.asarray(s, dtype=float)
    if n == 1 or K == 0:
        return _out(np.zeros_like(s))
    check_domain(K, s)
    c2 = np.square(cs(K, s))
    return _out((n - 1) * K / 4 * ((n - 3) / c2 - (n - 1)))


def weight(n, K, s):
    """Density cs^(n−1) of the inner product the model operator is
    symmetric for."""
    return _out(np.power(cs(K, s), n - 1))


@dataclasses.dataclass(frozen=True)
class ModelParams:
    n: int
    K: float
    D: float

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be an integer >= 1, got {self.n!r}")
        object.__setattr__(self, 'n', int(self.n))
        object.__setattr__(self, 'K', float(self.K))
        object.__setattr__(self, 'D', float(self.D))
        curvature_branch(self.K)
        if not (math.isfinite(self.D) and self.D > 0):
            raise DomainError(f"D must be positive, got {self.D!r}")
        if self.K > 0 and self.D >= math.pi / math.sqrt(self.K):
            raise DomainError(
                f"D = {self.D!r} must stay below pi/sqrt(K) = "
                f"{math.pi / math.sqrt(self.K)!r}")

    @property
    def half(self):
        return self.D / 2

    def scaled(self, c):
        return dataclasses.replace(self, D=c * self.D)

    def singular(self, margin):
        """Whether D is within ``margin`` of the conjugate diameter."""
        if self.K <= 0:
            return False
        return math.pi / math.sqrt(self.K) - self.D < margin

    def __str__(self):
        return f"n={self.n} K={self.K:g} D={self.D:g}"
