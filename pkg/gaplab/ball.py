"""
Dirichlet spectra of geodesic balls in the space forms of curvature K ≥ 0.

Separating variables around the center reduces −Δu = λu to the radial
equations

    u″ + (n−1)·(cs_K/sn_K)·u′ + [λ − ℓ(ℓ+n−2)/sn_K²]·u = 0,  u(R) = 0,

one per angular mode ℓ. They are integrated from a Frobenius start at a
small offset ε = ``ball.offset``·R; eigenvalues are located by counting
interior zeros of u, which increase by one at every eigenvalue of the mode,
and then polished by a bracketed root of u(R).
"""

import dataclasses
import functools
import logging
import math
from typing import Dict, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from gaplab import kernels
from gaplab.conf import conf
from gaplab.errors import ConvergenceError, DomainError, PreconditionError
from gaplab.errors import PropertyViolation
from gaplab.kernels import ModelParams
from gaplab.solver import solve_model

logger = logging.getLogger(__name__)

MODES = (0, 1, 2)
MAX_BISECTIONS = 200


@dataclasses.dataclass(frozen=True)
class BallSpec:
    n: int
    K: float
    R: float

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, 'n', int(self.n))
        object.__setattr__(self, 'K', float(self.K))
        object.__setattr__(self, 'R', float(self.R))
        if not math.isfinite(self.K) or self.K < 0:
            raise DomainError(f"balls are supported for K >= 0, got "
                              f"{self.K!r}")
        if not (math.isfinite(self.R) and self.R > 0):
            raise DomainError(f"radius must be positive, got {self.R!r}")
        if self.K > 0 and self.R > self.hemisphere * (1 + 1e-12):
            raise DomainError(f"R = {self.R} exceeds the hemisphere radius "
                              f"{self.hemisphere}")

    @property
    def hemisphere(self):
        return math.pi / (2 * math.sqrt(self.K)) if self.K > 0 else math.inf

    @property
    def D(self):
        return 2 * self.R

    def model(self) -> ModelParams:
        return ModelParams(self.n, self.K, self.D)

    def __str__(self):
        return f"n={self.n} K={self.K:g} R={self.R:g}"


@dataclasses.dataclass(frozen=True)
class BallSpectrum:
    spec: BallSpec
    lambda1: float
    lambda2: float
    mode2_label: Tuple[int, int]
    radial_s: np.ndarray
    radial_u: np.ndarray
    modes: Dict[Tuple[int, int], float]

    @property
    def gap(self):
        return self.lambda2 - self.lambda1

    @property
    def ordered(self):
        """Whether the first ℓ=1 mode lies below the second radial one."""
        return self.modes[1, 1] < self.modes[0, 2]


def _check_mode(ell):
    if ell not in MODES:
        raise DomainError(f"angular mode must be one of {MODES}, got {ell!r}")


def _integrate(spec, ell, lam, offset, rtol, dense=False):
    # u is scaled by ε^−ℓ so that u(ε) = 1 for every mode
    eps = offset * spec.R
    n, K = spec.n, spec.K
    angular = ell * (ell + n - 2)

    def rhs(s, y):
        sn, cs = kernels.sn(K, s), kernels.cs(K, s)
        return [y[1], -(n - 1) * cs / sn * y[1]
                - (lam - angular / (sn * sn)) * y[0]]

    def crossing(s, y):
        return y[0]

    sol = solve_ivp(rhs, (eps, spec.R), [1.0, ell / eps], method='DOP853',
                    rtol=rtol, atol=rtol * 1e-3, events=crossing,
                    dense_output=dense)
    if sol.status != 0:
        raise ConvergenceError("radial integration failed", spec=str(spec),
                               ell=ell, eigenvalue=lam,
                               abscissa=float(sol.t[-1]), reason=sol.message)
    return sol, eps ** ell


def _settings(offset, rtol):
    settings = conf['ball']
    offset = float(settings['offset'] if offset is None else offset)
    rtol = float(settings['ode-rtol'] if rtol is None else rtol)
    if not 0 < offset < 1 or not rtol > 0:
        raise DomainError("Frobenius offset must lie in (0, 1) and the ODE "
                          f"tolerance be positive, got {offset!r}, {rtol!r}")
    return offset, rtol


def radial_shoot(spec: BallSpec, ell, lam, offset=None, rtol=None):
    """u(R) for the Frobenius start u(ε) = ε^ℓ, u′(ε) = ℓ·ε^(ℓ−1)."""
    _check_mode(ell)
    offset, rtol = _settings(offset, rtol)
    sol, scale = _integrate(spec, ell, lam, offset, rtol)
    return float(sol.y[0, -1]) * scale


def node_count(spec: BallSpec, ell, lam, offset=None, rtol=None):
    """Interior zeros of the mode-ℓ solution on (ε, R)."""
    _check_mode(ell)
    offset, rtol = _settings(offset, rtol)
    sol, _ = _integrate(spec, ell, lam, offset, rtol)
    zeros = sol.t_events[0]
    return int(np.count_nonzero(zeros < spec.R * (1 - 1e-12)))


@functools.lru_cache(maxsize=256)
def _mode_eigenvalue(spec, ell, k, offset, rtol):
    count = functools.partial(node_count, spec, ell, offset=offset, rtol=rtol)
    lo = 0.0
    hi = ((k + ell + 1) * math.pi / spec.R) ** 2
    while count(hi) < k:
        lo, hi = hi, 2 * hi
    c_lo, c_hi = count(lo), count(hi)
    for _ in range(MAX_BISECTIONS):
        if c_lo == k - 1 and c_hi == k:
            break
        mid = (lo + hi) / 2
        c_mid = count(mid)
        if c_mid >= k:
            hi, c_hi = mid, c_mid
        else:
            lo, c_lo = mid, c_mid
    else:
        raise ConvergenceError("cannot isolate the eigenvalue by node "
                               "counting", spec=str(spec), ell=ell, k=k,
                               bracket=(lo, hi))
    f = functools.partial(radial_shoot, spec, ell, offset=offset, rtol=rtol)
    # an end of the bracket may sit on a neighbouring eigenvalue, where
    # u(R) vanishes up to roundoff
    f_lo, f_hi = f(lo), f(hi)
    for _ in range(MAX_BISECTIONS):
        if f_lo * f_hi < 0:
            break
        mid = (lo + hi) / 2
        if count(mid) >= k:
            hi, f_hi = mid, f(mid)
        else:
            lo, f_lo = mid, f(mid)
    else:
        raise ConvergenceError("no sign change in the eigenvalue bracket",
                               spec=str(spec), ell=ell, k=k,
                               bracket=(lo, hi))
    lam = brentq(f, lo, hi, xtol=1e-13, rtol=1e-14)
    logger.debug("%s: mode (%d, %d) at %.12g", spec, ell, k, lam)
    return lam


def mode_eigenvalue(spec: BallSpec, ell, k, offset=None, rtol=None):
    """k-th Dirichlet eigenvalue of the angular mode ℓ."""
    _check_mode(ell)
    if k < 1:
        raise DomainError(f"radial index starts at 1, got {k!r}")
    offset, rtol = _settings(offset, rtol)
    return _mode_eigenvalue(spec, ell, int(k), offset, rtol)


def _radial_profile(spec, lam, offset, rtol, samples):
    sol, _ = _integrate(spec, 0, lam, offset, rtol, dense=True)
    s = np.linspace(0, spec.R, samples + 2)[1:-1]
    y = sol.sol(s)
    return s, y[0], y[1]


def ball_spectrum(spec: BallSpec, offset=None, rtol=None) -> BallSpectrum:
    offset, rtol = _settings(offset, rtol)
    modes = {(ell, k): mode_eigenvalue(spec, ell, k, offset, rtol)
             for ell, k in ((0, 1), (0, 2), (1, 1), (2, 1))}
    label = min(((0, 2), (1, 1)), key=modes.get)
    s, u, _ = _radial_profile(spec, modes[0, 1], offset, rtol,
                              conf['ball']['samples'])
    if np.any(u <= 0):
        raise PropertyViolation('radial-profile', f"first radial mode of "
                                                  f"{spec} changes sign")
    s.setflags(write=False)
    u.setflags(write=False)
    spectrum = BallSpectrum(spec, modes[0, 1], modes[label], label, s, u,
                            modes)
    if not spectrum.ordered:
        logger.warning("%s: second radial mode %.10g lies below the first "
                       "l=1 mode %.10g", spec, modes[0, 2], modes[1, 1])
    return spectrum


def offset_study(spec: BallSpec, offset=None):
    """λ₁ with the Frobenius offset ε and ε/2, and their difference."""
    offset, _ = _settings(offset, None)
    first = mode_eigenvalue(spec, 0, 1, offset=offset)
    second = mode_eigenvalue(spec, 0, 1, offset=offset / 2)
    return first, second, abs(first - second)


@dataclasses.dataclass(frozen=True)
class BallVerdict:
    spec: BallSpec
    margins: Dict[str, float]
    tolerance: float

    @property
    def passed(self):
        return all(m >= -self.tolerance for m in self.margins.values())

    @property
    def failures(self):
        return [name for name, m in self.margins.items()
                if m < -self.tolerance]


def _check_convex(spec):
    if spec.K > 0 and spec.D > math.pi / (2 * math.sqrt(spec.K)) + 1e-12:
        raise PreconditionError(
            f"diameter {spec.D} exceeds pi/(2 sqrt K); the comparison is "
            f"only established below it")


def gap_comparison_check(spec: BallSpec, tol=None) -> BallVerdict:
    """Ball spectrum against the model of the same diameter."""
    _check_convex(spec)
    tol = conf['checks']['inequality-tol'] if tol is None else tol
    ball = ball_spectrum(spec)
    model = solve_model(spec.model())
    margins = {
        'gap': ball.gap - model.gap,
        'first-eigenvalue': ball.lambda1 - model.lambda1,
        'first-floor': ball.lambda1 - spec.n * model.lambda1,
    }
    if spec.n >= 3:
        floor = spec.n * model.lambda1 + 3 * math.pi ** 2 / spec.D ** 2
        margins['second-floor'] = ball.lambda2 - floor
    scale = 1 + ball.lambda2
    return BallVerdict(spec, margins, tol * scale)


@dataclasses.dataclass(frozen=True)
class HessianVerdict:
    spec: BallSpec
    bound: float
    radial_max: float
    tangential_max: float
    origin: float
    tolerance: float

    @property
    def passed(self):
        return max(self.radial_max, self.tangential_max,
                   self.origin) <= self.bound + self.tolerance


def ball_hessian_check(spec: BallSpec, tol=None) -> HessianVerdict:
    """Eigenvalues of ∇²log u for the first radial eigenfunction against
    −λ̄₁ of the model with the ball's diameter."""
    _check_convex(spec)
    tol = conf['checks']['inequality-tol'] if tol is None else tol
    offset, rtol = _settings(None, None)
    lam = mode_eigenvalue(spec, 0, 1)
    s, u, du = _radial_profile(spec, lam, offset, rtol,
                               conf['ball']['samples'])
    cot = kernels.cs(spec.K, s) / kernels.sn(spec.K, s)
    ddu = -(spec.n - 1) * cot * du - lam * u
    g = du / u
    radial = ddu / u - g * g
    tangential = g * cot
    bound = -solve_model(spec.model()).lambda1
    return HessianVerdict(spec, bound, float(np.max(radial)),
                          float(np.max(tangential)), -lam / spec.n,
                          tol * (1 + abs(bound)))
