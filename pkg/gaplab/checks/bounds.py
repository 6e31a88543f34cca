import itertools

from gaplab import gap
from gaplab.kernels import ModelParams
from gaplab.models import CaseResult, Check


class GapBound(Check, register=False, group='gap-bound'):
    def grid(self, n_values):
        return [ModelParams(n, 1.0, D) for n, D in itertools.product(
            n_values, self.settings['D'])]


class GapLowerBound(GapBound, name='gap-lower-bound'):
    """Normalized gap at least 3 for n ≥ 3 and K = 1."""

    def cases(self):
        return self.grid(self.settings['n'])

    def evaluate(self, p):
        return self.at_least(str(p), gap.gap_report(p).normalized_gap, 3.0,
                             tol=1e-9)


class N2BelowThree(GapBound, name='n2-below-three'):
    """For n = 2 and K = 1 the normalized gap stays below 3."""

    def cases(self):
        return self.grid([2])

    def evaluate(self, p):
        return self.at_most(str(p), gap.gap_report(p).normalized_gap, 3.0)


class SmallDiameterLimit(GapBound, name='small-diameter-limit'):
    """Normalized gap tends to 3 as D → 0, whatever n and K."""

    def cases(self):
        D = self.settings['small-D']
        return [ModelParams(n, K, D) for n, K in itertools.product(
            self.settings['small-D-n'], self.settings['small-D-K'])]

    def evaluate(self, p):
        return self.within(str(p), gap.gap_report(p).normalized_gap, 3.0,
                           atol=1e-6)


class ConjectureProbe(GapBound, name='conjecture-probe'):
    """Normalized gap above 2 for n = 2, K = 1, including close to the
    conjugate diameter."""
    blocking = False

    def cases(self):
        return [ModelParams(2, 1.0, D) for D in self.settings['conjecture-D']]

    def evaluate(self, p):
        value, holds = gap.conjecture_probe(p)
        return CaseResult(str(p), holds, value - 2, f"normalized gap {value!r}")
