"""
One-dimensional ingredients of the log-concavity estimate.

The first eigenfunction enters through its log-derivative f = φ̄₁′/φ̄₁ and
the second through the quotient w̄ = φ̄₂/φ̄₁. Both are sampled on a probe
grid made of every ``profile.stride``-th node of the solver's fine grid,
starting at s = 0 and stopping two nodes short of the endpoint, where φ̄₁
vanishes and quotients lose their accuracy.

ODE residuals come in two flavours. With ``order=4`` the derivatives of f
are fourth-order differences on the fine grid itself; this is the size of
the residual at a given resolution. With ``order=2`` they are second-order
centered differences on the probe grid, a residual that decays like h² and
from which :func:`residual_order` reads the convergence rate.
"""

import dataclasses
import logging
import math
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline

from gaplab import kernels, numerics
from gaplab.conf import conf
from gaplab.errors import ConvergenceError, DomainError, PreconditionError
from gaplab.kernels import ModelParams
from gaplab.solver import solve_model

logger = logging.getLogger(__name__)

RESIDUALS = ('riccati', 'second-order', 'ratio')
# fine-grid nodes left out next to each endpoint
EDGE = 2


@dataclasses.dataclass(frozen=True)
class LogDerivativeProfile:
    params: ModelParams
    s_nodes: np.ndarray
    f_values: np.ndarray
    lambda1: float
    spacing: float
    # f′ and f″ at the probe nodes by fourth-order differences on the fine
    # grid
    df_values: Optional[np.ndarray] = None
    ddf_values: Optional[np.ndarray] = None


@dataclasses.dataclass(frozen=True)
class RatioProfile:
    params: ModelParams
    s_nodes: np.ndarray
    w_values: np.ndarray
    endpoint: float
    endpoint_slope: float
    gap: float
    spacing: float


def _probe_indices(report, stride=None):
    stride = int(conf['profile']['stride'] if stride is None else stride)
    if stride < 1:
        raise DomainError(f"probe stride must be positive, got {stride}")
    size = report.grid.m + 2
    center = (size - 1) // 2
    idx = np.arange(center, size - 1 - EDGE, stride)
    if idx.size < 5:
        raise DomainError(f"grid too coarse for a probe stride of {stride}")
    return idx


def _closed(report, i):
    return numerics.with_boundary(report.pair(i).samples)


def log_derivative_profile(p: ModelParams, report=None,
                           stride=None, **solve_kw) -> LogDerivativeProfile:
    report = report or solve_model(p, **solve_kw)
    grid = report.grid
    phi = _closed(report, 1)
    if np.any(report.pair(1).samples <= 0):
        raise ConvergenceError("first eigenfunction is not positive inside "
                               "the interval", params=str(p))
    idx = _probe_indices(report, stride)
    dphi = numerics.derivative(phi, grid.h, order=4)

    # f on every fine node but the boundary and its EDGE neighbours
    first = EDGE + 1
    inner = slice(first, phi.size - first)
    f_fine = dphi[inner] / phi[inner]
    df = numerics.derivative(f_fine, grid.h, order=4)[idx - first]
    ddf = numerics.second_derivative(f_fine, grid.h, order=4)[idx - first]

    f = dphi[idx] / phi[idx]
    s = grid.closed_nodes[idx]
    return LogDerivativeProfile(p, s, f, report.lambda1,
                                grid.h * (idx[1] - idx[0]), df, ddf)


def ratio_profile(p: ModelParams, report=None, stride=None,
                  **solve_kw) -> RatioProfile:
    report = report or solve_model(p, **solve_kw)
    grid = report.grid
    phi1, phi2 = _closed(report, 1), _closed(report, 2)
    idx = _probe_indices(report, stride)
    w = phi2[idx] / phi1[idx]

    d1 = numerics.derivative(phi1, grid.h, order=4)[-1]
    d2 = numerics.derivative(phi2, grid.h, order=4)[-1]
    dd1 = numerics.second_derivative(phi1, grid.h, order=4)[-1]
    dd2 = numerics.second_derivative(phi2, grid.h, order=4)[-1]
    # l'Hôpital at the zero shared by φ̄₁ and φ̄₂
    endpoint = d2 / d1
    slope = (dd2 * d1 - dd1 * d2) / (2 * d1 * d1)
    return RatioProfile(p, grid.closed_nodes[idx], w, float(endpoint),
                        float(slope), report.gap,
                        grid.h * (idx[1] - idx[0]))


def endpoint_ratio(p: ModelParams, report=None):
    """w̄(D/2) as φ̄₂′(D/2)/φ̄₁′(D/2)."""
    value = ratio_profile(p, report).endpoint
    if not (math.isfinite(value) and value > 0):
        raise ConvergenceError("endpoint ratio is not finite and positive",
                               params=str(p), value=value)
    return value


def _core(profile):
    """Indices of the probe nodes that have both neighbours and lie in the
    core window."""
    limit = conf['profile']['core'] * profile.params.half
    s = profile.s_nodes
    j = np.arange(1, s.size - 1)
    return j[s[j] <= limit + 1e-12]


def _centered(values, H, j):
    d1 = (values[j + 1] - values[j - 1]) / (2 * H)
    d2 = (values[j + 1] - 2 * values[j] + values[j - 1]) / (H * H)
    return d1, d2


def _derivatives(profile, j, order):
    if order == 4:
        if profile.df_values is None:
            raise DomainError("profile carries no fine-grid derivatives")
        return profile.df_values[j], profile.ddf_values[j]
    if order == 2:
        return _centered(profile.f_values, profile.spacing, j)
    raise DomainError(f"residual derivatives are of order 2 or 4, "
                      f"got {order!r}")


def _riccati(profile, order):
    p = profile.params
    j = _core(profile)
    f = profile.f_values[j]
    df, _ = _derivatives(profile, j, order)
    t = kernels.tn(p.K, profile.s_nodes[j])
    return profile.s_nodes[j], df - (p.n - 1) * t * f + profile.lambda1 + f * f


def riccati_residual(profile: LogDerivativeProfile, order=4):
    """max |f′ − (n−1)tn_K·f + λ̄₁ + f²| over the core probe nodes."""
    _, r = _riccati(profile, order)
    return float(np.max(np.abs(r)))


def _second_order_lhs(p, s, f, df, ddf, lam):
    t = kernels.tn(p.K, s)
    return (ddf + 2 * f * df
            - t * ((p.n + 1) * df + 2 * lam + 2 * f * f)
            - (p.n - 1) * (p.K - t * t) * f)


def _second_order(profile, order):
    j = _core(profile)
    df, ddf = _derivatives(profile, j, order)
    s = profile.s_nodes[j]
    return s, _second_order_lhs(profile.params, s, profile.f_values[j], df,
                                ddf, profile.lambda1)


def second_order_residual(profile: LogDerivativeProfile, order=4):
    _, r = _second_order(profile, order)
    return float(np.max(np.abs(r)))


def _ratio(ratio, profile):
    if ratio.s_nodes.size != profile.s_nodes.size:
        raise DomainError("ratio and log-derivative profiles live on "
                          "different probe grids")
    p = ratio.params
    j = _core(profile)
    w = ratio.w_values
    dw, ddw = _centered(w, ratio.spacing, j)
    s = ratio.s_nodes[j]
    t = kernels.tn(p.K, s)
    return s, (ddw - (p.n - 1) * t * dw + 2 * profile.f_values[j] * dw
               + ratio.gap * w[j])


def ratio_residual(ratio: RatioProfile, profile: LogDerivativeProfile):
    """Residual of w̄″ − (n−1)tn_K·w̄′ + 2f·w̄′ + (λ̄₂−λ̄₁)·w̄ = 0 by
    centered differences on the probe grid."""
    _, r = _ratio(ratio, profile)
    return float(np.max(np.abs(r)))


def _residual(p, which, grid_m):
    report = solve_model(p, grid_m=grid_m)
    profile = log_derivative_profile(p, report)
    if which == 'riccati':
        return _riccati(profile, order=2)
    if which == 'second-order':
        return _second_order(profile, order=2)
    return _ratio(ratio_profile(p, report), profile)


def residual_order(p: ModelParams, which='riccati', grid_m=None):
    """Second-order residuals on a grid and on the grid with half the
    spacing, and the ratio of their maxima (about 4).

    Both maxima are taken over the probe nodes of the coarser grid, which
    the finer one shares. The study runs at ``profile.order-m``, coarse
    enough for the truncation error to dominate roundoff in the
    eigenvectors.
    """
    if which not in RESIDUALS:
        raise DomainError(f"unknown residual {which!r}, expected one of "
                          f"{', '.join(RESIDUALS)}")
    if grid_m is None:
        grid_m = conf['profile']['order-m']
    grid_m = int(grid_m)
    s_coarse, coarse = _residual(p, which, grid_m)
    s_fine, fine = _residual(p, which, 2 * grid_m + 1)
    shared = np.isclose(s_fine[:, None], s_coarse[None, :],
                        rtol=0.0, atol=1e-9 * p.D).any(axis=1)
    if np.count_nonzero(shared) != s_coarse.size:
        raise ConvergenceError("grids do not share their probe nodes",
                               params=str(p), grid_m=grid_m)
    coarse = float(np.max(np.abs(coarse)))
    fine = float(np.max(np.abs(fine[shared])))
    logger.debug("%s residual of %s: %g -> %g", which, p, coarse, fine)
    return coarse, fine, coarse / fine


@dataclasses.dataclass(frozen=True)
class PsiVerdict:
    params: ModelParams
    dprime: float
    elliptic_margin: float
    slope_margin: float
    tolerance: float
    lambda1_margin: Optional[float] = None

    @property
    def elliptic_condition(self):
        return self.elliptic_margin <= self.tolerance

    @property
    def slope_condition(self):
        return self.slope_margin <= self.tolerance

    @property
    def passed(self):
        return self.elliptic_condition and self.slope_condition


def default_dprime(p: ModelParams):
    if p.K > 0:
        room = math.pi / (2 * math.sqrt(p.K)) - p.D
        return p.D + min(0.05 * p.D, room / 2)
    return 1.05 * p.D


def _odd_extension(s, values):
    return (np.concatenate((-s[:0:-1], s)),
            np.concatenate((-values[:0:-1], values)))


def psi_inequalities(p: ModelParams, dprime=None, explore=False,
                     tol=None) -> PsiVerdict:
    """Evaluate both conditions a modulus of concavity must satisfy, with
    ψ the log-derivative of the model on a slightly larger interval."""
    if p.K < 0 and not explore:
        raise PreconditionError("log-concavity of the model is not "
                                "established for K < 0; use explore mode")
    if p.K > 0 and p.D > math.pi / (2 * math.sqrt(p.K)):
        raise PreconditionError(
            f"D = {p.D} exceeds pi/(2 sqrt K) = "
            f"{math.pi / (2 * math.sqrt(p.K))}")
    dprime = default_dprime(p) if dprime is None else float(dprime)
    if dprime < p.D:
        raise DomainError(f"D' = {dprime} must not be below D = {p.D}")
    tol = conf['checks']['inequality-tol'] if tol is None else tol

    lam = solve_model(p).lambda1
    psi = log_derivative_profile(dataclasses.replace(p, D=dprime))
    s, values = _odd_extension(psi.s_nodes, psi.f_values)
    dpsi = numerics.derivative(values, psi.spacing, order=4)
    ddpsi = numerics.second_derivative(values, psi.spacing, order=4)
    keep = (s >= 0) & (s <= p.half + 1e-12)
    s, f, df, ddf = s[keep], values[keep], dpsi[keep], ddpsi[keep]

    t = kernels.tn(p.K, s)
    elliptic = _second_order_lhs(p, s, f, df, ddf, lam)
    slope = 2 * df - 4 * t * f - (p.n - 1) * (p.K - t * t)
    scale = 1 + max(float(np.max(np.abs(ddf))),
                    float(np.max(np.abs(2 * f * df))),
                    float(np.max(np.abs(2 * t * lam))))
    lambda1_margin = lam - 3.5 * p.K if p.n == 2 else None
    verdict = PsiVerdict(p, dprime, float(np.max(elliptic)),
                         float(np.max(slope)), tol * scale, lambda1_margin)
    if p.K < 0:
        logger.info("explore mode for %s: elliptic margin %g, slope margin "
                    "%g", p, verdict.elliptic_margin, verdict.slope_margin)
    return verdict


def hessian_limit_check(p: ModelParams, report=None):
    """ψ′(0) from the odd profile, extrapolated from the first two probe
    nodes; the log-concavity limit predicts −λ̄₁."""
    profile = log_derivative_profile(p, report)
    H = profile.spacing
    f = profile.f_values
    return numerics.richardson_limit(2, (f[2] / (2 * H), f[1] / H), order=2)


def comparison_check(p: ModelParams, dprime, tol=None):
    """min over [0, D/2) of ψ_{D′} − ψ_D; non-negative up to tolerance for
    D′ > D."""
    if not dprime > p.D:
        raise DomainError(f"D' = {dprime} must exceed D = {p.D}")
    tol = conf['checks']['inequality-tol'] if tol is None else tol
    small = log_derivative_profile(p)
    large = log_derivative_profile(dataclasses.replace(p, D=dprime))
    spline = CubicSpline(*_odd_extension(large.s_nodes, large.f_values))
    diff = spline(small.s_nodes) - small.f_values
    margin = float(np.min(diff))
    scale = 1 + float(np.max(np.abs(small.f_values)))
    return margin, margin >= -tol * scale


@dataclasses.dataclass(frozen=True)
class LowerBounds:
    params: ModelParams
    lambda1: float
    bound: float
    applies: bool
    tolerance: float
    ball_lambda1_floor: float
    ball_lambda2_floor: float

    @property
    def margin(self):
        return self.lambda1 - self.bound

    @property
    def passed(self):
        return not self.applies or self.margin >= -self.tolerance


def lower_bound_suite(p: ModelParams, tol=None) -> LowerBounds:
    """λ̄₁ ≥ max(π²/D² − (n−1)K/2, 0) and the floors n·λ̄₁ and
    n·λ̄₁ + 3π²/D² offered to ball spectra.

    The bound follows from K/cs² ≥ K, which only controls the potential when
    n ≥ 3 or n = 1; for n = 2 the margin is reported but not asserted.
    """
    tol = conf['checks']['inequality-tol'] if tol is None else tol
    lam = solve_model(p).lambda1
    base = math.pi ** 2 / p.D ** 2
    bound = max(base - (p.n - 1) * p.K / 2, 0.0)
    applies = p.n != 2
    result = LowerBounds(p, lam, bound, applies, tol * (1 + bound),
                         p.n * lam, p.n * lam + 3 * base)
    if not applies:
        logger.info("lower bound of %s not asserted for n = 2: margin %g",
                    p, result.margin)
    return result


@dataclasses.dataclass(frozen=True)
class EigenfunctionVerdict:
    params: ModelParams
    phi1_step: float
    ratio_step: float
    ratio_at_zero: float
    endpoint: float
    endpoint_slope: float
    tolerance: float
    slope_tolerance: float

    @property
    def phi1_decreasing(self):
        return self.phi1_step < 0

    @property
    def ratio_nondecreasing(self):
        return self.ratio_step >= -self.tolerance

    @property
    def passed(self):
        return (self.phi1_decreasing and self.ratio_nondecreasing
                and abs(self.ratio_at_zero) <= self.tolerance
                and math.isfinite(self.endpoint) and self.endpoint > 0
                and abs(self.endpoint_slope) <= self.slope_tolerance)


def eigenfunction_suite(p: ModelParams, report=None, tol=None):
    """φ̄₁ strictly decreasing and w̄ non-decreasing on [0, D/2]."""
    report = report or solve_model(p)
    tol = conf['checks']['inequality-tol'] if tol is None else tol
    phi1 = _closed(report, 1)
    center = (phi1.size - 1) // 2
    half1 = phi1[center:]
    # tolerance on the strict decrease of φ̄₁
    strict = 1e-12 * float(np.max(np.abs(half1)))
    phi1_step = float(np.max(np.diff(half1))) - strict

    ratio = ratio_profile(p, report, stride=1)
    w = np.append(ratio.w_values, ratio.endpoint)
    scale = 1 + float(np.max(np.abs(w)))
    return EigenfunctionVerdict(
        params=p,
        phi1_step=phi1_step,
        ratio_step=float(np.min(np.diff(w))),
        ratio_at_zero=float(w[0]),
        endpoint=ratio.endpoint,
        endpoint_slope=ratio.endpoint_slope,
        tolerance=tol * scale,
        slope_tolerance=conf['checks']['endpoint-slope-tol'] * scale,
    )
