import numpy as np

from gaplab import gap, kernels
from gaplab.kernels import ModelParams
from gaplab.models import CaseResult, Check


def expected_verdict(n):
    if n == 2:
        return 'decreasing'
    if n == 3:
        return 'flat'
    return 'increasing'


class GapMonotonicity(Check, name='gap-monotonicity', group='monotonicity'):
    """D²·gap along a D-grid: decreasing for n = 2, constant for n = 3 and
    increasing for n ≥ 4, for K = 1 and for K = −1 up to a(K)."""

    def cases(self):
        return [(K, n) for K in (1.0, -1.0) for n in self.settings['n']]

    def grid(self, K):
        upper = self.settings['D-max']
        if K < 0:
            upper = min(upper, kernels.a_of_K(K))
        return np.linspace(self.settings['D-min'], upper,
                           self.settings['points']).tolist()

    def evaluate(self, case):
        K, n = case
        values = self.grid(K)
        result = gap.sweep('D', values, ModelParams(n, K, values[0]))
        diffs = np.diff(result.normalized_gaps)
        label = f"n={n} K={K:g}"
        expected = expected_verdict(n)
        if expected == 'flat':
            return self.at_most(label, float(np.max(np.abs(diffs))),
                                self.settings['flat-tol'])
        margin = float(np.min(diffs if expected == 'increasing' else -diffs))
        return CaseResult(label, result.verdict == expected, margin,
                          f"{result.verdict}, expected {expected}")


class CrossingPoint(Check, name='crossing-point', group='monotonicity'):
    """φ̄₁ and φ̄₂ cross exactly once on (0, D/2); at D/6 for the flat
    one-dimensional model."""

    def cases(self):
        return [ModelParams(**c) for c in self.settings['crossing']]

    def evaluate(self, p):
        b = gap.crossing_point(p)
        if p.K == 0:
            return self.within(str(p), b, p.D / 6, atol=1e-6 * p.D)
        return self.combine(str(p), [
            self.at_least('inside', b, 0.0),
            self.at_most('before-end', b, p.half),
        ])


class RatioMonotonicity(Check, name='ratio-monotonicity',
                        group='monotonicity'):
    """λ̄₂/λ̄₁ does not decrease with D for n ≥ 3 and K ≥ 0; K < 0 cases
    are reported."""

    def cases(self):
        return [(ModelParams(c['n'], c['K'], c['D']), c['dD'])
                for c in self.settings['ratio']]

    def evaluate(self, case):
        p, dD = case
        verdict = gap.ratio_monotonicity_check(p, dD)
        if not verdict.applies:
            return CaseResult(f"{p} dD={dD:g}", True, None,
                              f"not asserted, margin {verdict.margin!r}")
        return CaseResult(f"{p} dD={dD:g}", verdict.passed, verdict.margin,
                          f"ratio {verdict.before!r} -> {verdict.after!r}")
