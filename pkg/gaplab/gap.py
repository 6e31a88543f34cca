import asyncio
import dataclasses
import functools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Tuple

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from gaplab import kernels, numerics
from gaplab.conf import conf
from gaplab.errors import DomainError, PreconditionError, PropertyViolation
from gaplab.kernels import ModelParams
from gaplab.solver import solve_model

logger = logging.getLogger(__name__)

AXES = ('D', 'n', 'K')
VERDICTS = ('increasing', 'decreasing', 'flat', 'non-monotone')


@dataclasses.dataclass(frozen=True)
class GapReport:
    params: ModelParams
    lambda1: float
    lambda2: float
    gap: float
    normalized_gap: float
    residual: float
    method: str
    grid_m: int
    extrapolated: bool
    singular: bool

    def as_dict(self):
        return {
            'n': self.params.n,
            'K': self.params.K,
            'D': self.params.D,
            'lambda1': self.lambda1,
            'lambda2': self.lambda2,
            'gap': self.gap,
            'normalized_gap': self.normalized_gap,
            'method': self.method,
            'grid_m': self.grid_m,
            'residual': self.residual,
        }


@dataclasses.dataclass(frozen=True)
class SweepResult:
    axis: str
    base: ModelParams
    points: Tuple[Tuple[float, GapReport], ...]
    verdict: str

    @property
    def values(self):
        return [value for value, _ in self.points]

    @property
    def normalized_gaps(self):
        return [report.normalized_gap for _, report in self.points]


def gap_report(p: ModelParams, method=None, tol=None,
               grid_m=None) -> GapReport:
    report = solve_model(p, method=method, tol=tol, grid_m=grid_m)
    gap = report.lambda2 - report.lambda1
    if not gap > 0:
        raise PropertyViolation('gap', f"non-positive gap {gap!r} for {p}")
    return GapReport(
        params=p,
        lambda1=report.lambda1,
        lambda2=report.lambda2,
        gap=gap,
        normalized_gap=p.D ** 2 * gap / math.pi ** 2,
        residual=report.residual,
        method=report.method,
        grid_m=report.grid_m,
        extrapolated=report.extrapolated,
        singular=report.singular,
    )


def monotonicity_verdict(values, tol=None):
    tol = conf['checks']['monotone-tol'] if tol is None else tol
    diffs = np.diff(np.asarray(values, dtype=float))
    if diffs.size == 0 or np.all(np.abs(diffs) <= tol):
        return 'flat'
    if np.all(diffs > tol):
        return 'increasing'
    if np.all(diffs < -tol):
        return 'decreasing'
    return 'non-monotone'


def sweep_params(axis, values, base: ModelParams):
    if axis not in AXES:
        raise DomainError(f"unknown sweep axis {axis!r}")
    values = list(values)
    if not values:
        raise DomainError("empty sweep")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise DomainError(f"sweep values must be strictly increasing: "
                          f"{values}")
    if axis == 'n':
        return [dataclasses.replace(base, n=v) for v in values]
    if axis == 'K':
        return [dataclasses.replace(base, K=v) for v in values]
    return [dataclasses.replace(base, D=v) for v in values]


async def sweep_async(params, workers=None, **solve_kw):
    """Solve every parameter set on a thread pool; results keep the input
    order."""
    workers = conf['sweep']['workers'] if workers is None else workers
    if workers < 1:
        raise DomainError(f"need at least one worker, got {workers!r}")
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            loop.run_in_executor(pool, functools.partial(gap_report, p,
                                                         **solve_kw))
            for p in params]
        return await asyncio.gather(*futures)


def sweep(axis, values, base: ModelParams, workers=None, tol=None,
          **solve_kw) -> SweepResult:
    params = sweep_params(axis, values, base)
    # load the configuration before worker threads read it
    conf['solver']
    reports = asyncio.run(sweep_async(params, workers, tol=tol, **solve_kw))
    keys = [getattr(p, axis) for p in params]
    verdict = monotonicity_verdict([r.normalized_gap for r in reports])
    if base.K < 0 and axis == 'D' and max(keys) > kernels.a_of_K(base.K):
        logger.info("sweep extends beyond a(K) = %g; no monotonicity is "
                    "asserted there", kernels.a_of_K(base.K))
    logger.debug("%s-sweep from %s: %s", axis, base, verdict)
    return SweepResult(axis, base, tuple(zip(keys, reports)), verdict)


def _closed(report, i):
    return numerics.with_boundary(report.pair(i).samples)


def perturbation_derivative(p: ModelParams, i, report=None):
    """d/dc of c²·λ̄_i(n, cD, K) at c = 1, as the integral of
    2(n−1)·l_K·φ̄_i·φ̄_i′·cs^(n−1) over [0, D/2]."""
    report = report or solve_model(p)
    grid = report.grid
    s = grid.closed_nodes
    phi = _closed(report, i)
    dphi = numerics.derivative(phi, grid.h, order=4)
    integrand = (kernels.l_fn(p.K, s) * phi * dphi
                 * kernels.weight(p.n, p.K, s))
    return 2 * (p.n - 1) * numerics.half_integral(integrand, grid.h)


def rescaled_derivative(p: ModelParams, i, step=1e-4, **solve_kw):
    """Central difference of c ↦ c²·λ̄_i(n, cD, K) at c = 1."""
    def value(c):
        report = solve_model(p.scaled(c), **solve_kw)
        return c * c * report.pair(i).eigenvalue
    return (value(1 + step) - value(1 - step)) / (2 * step)


def gap_derivative_integral(p: ModelParams, report=None):
    report = report or solve_model(p)
    grid = report.grid
    s = grid.closed_nodes
    diff = _closed(report, 2) ** 2 - _closed(report, 1) ** 2
    integrand = kernels.m_fn(p.K, s) * diff * kernels.weight(p.n, p.K, s)
    return ((p.n - 1) * (p.n - 3)
            * numerics.half_integral(integrand, grid.h))


def crossing_point(p: ModelParams, report=None, tol=None):
    """The unique b in (0, D/2) where the equally normalized φ̄₁ and φ̄₂
    cross."""
    report = report or solve_model(p)
    tol = conf['checks']['inequality-tol'] if tol is None else tol
    grid = report.grid
    s = grid.closed_nodes
    center = (s.size - 1) // 2
    half_s = s[center:]
    diff = (_closed(report, 1) - _closed(report, 2))[center:]

    flips = numerics.sign_changes(diff[:-1])
    if len(flips) != 1:
        raise PropertyViolation(
            'crossing', f"{len(flips)} sign changes of φ1 − φ2 on "
                        f"(0, D/2) for {p}")
    k = flips[0]
    spline = CubicSpline(half_s, diff)
    b = brentq(spline, half_s[k], half_s[k + 1], xtol=1e-14)

    squares = _closed(report, 2)[center:] ** 2 - _closed(report, 1)[center:] ** 2
    scale = tol * (1 + float(np.max(np.abs(squares))))
    inner, outer = squares[half_s <= b], squares[half_s > b]
    if np.any(inner > scale) or np.any(outer < -scale):
        raise PropertyViolation(
            'crossing', f"φ2² − φ1² has the wrong sign around b = {b} "
                        f"for {p}")
    return float(b)


@dataclasses.dataclass(frozen=True)
class RatioVerdict:
    params: ModelParams
    dD: float
    before: float
    after: float
    nondecreasing: bool
    # the ratio decreases with D for K < 0; such cases are only reported
    applies: bool = True

    @property
    def margin(self):
        return self.after - self.before

    @property
    def passed(self):
        return not self.applies or self.nondecreasing


def _check_ratio_range(p, D_end):
    if p.n < 3:
        raise PreconditionError(f"the ratio is monotone for n >= 3, got "
                                f"n = {p.n}")
    if p.K > 0 and D_end >= math.pi / math.sqrt(p.K):
        raise PreconditionError(f"D + dD = {D_end} reaches pi/sqrt(K)")
    if p.K < 0:
        a = kernels.a_of_K(p.K)
        if D_end > a:
            raise PreconditionError(f"D + dD = {D_end} exceeds a(K) = {a}")


def ratio_monotonicity_check(p: ModelParams, dD, tol=None,
                             **solve_kw) -> RatioVerdict:
    tol = conf['checks']['inequality-tol'] if tol is None else tol
    if not dD > 0:
        raise DomainError(f"dD must be positive, got {dD!r}")
    _check_ratio_range(p, p.D + dD)
    before = solve_model(p, **solve_kw)
    after = solve_model(dataclasses.replace(p, D=p.D + dD), **solve_kw)
    r0 = before.lambda2 / before.lambda1
    r1 = after.lambda2 / after.lambda1
    verdict = RatioVerdict(p, dD, r0, r1, r1 >= r0 - tol * (1 + abs(r0)),
                           applies=p.K >= 0)
    if not verdict.applies:
        logger.info("ratio monotonicity of %s not asserted for K < 0: "
                    "margin %g", p, verdict.margin)
    return verdict


def ratio_sweep(values, base: ModelParams, **solve_kw):
    """λ̄₂/λ̄₁ along a D-sweep with its monotonicity verdict."""
    params = sweep_params('D', values, base)
    _check_ratio_range(base, max(values))
    ratios = []
    for p in params:
        report = solve_model(p, **solve_kw)
        ratios.append(report.lambda2 / report.lambda1)
    return ratios, monotonicity_verdict(ratios)


def conjecture_probe(p: ModelParams, report: Optional[GapReport] = None):
    """Normalized gap above 2 for n = 2, K = 1; reported, never enforced."""
    report = report or gap_report(p)
    holds = report.normalized_gap > 2
    if not holds:
        logger.warning("normalized gap %.10g <= 2 for %s",
                       report.normalized_gap, p)
    return report.normalized_gap, holds
