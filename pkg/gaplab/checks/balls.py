import math

from scipy.special import jn_zeros

from gaplab import ball
from gaplab.ball import BallSpec
from gaplab.models import Check


class BallCheck(Check, register=False, group='balls'):
    def comparison_specs(self):
        return [BallSpec(**c) for c in self.settings['comparison']]


class HemisphereSpectrum(BallCheck, name='hemisphere-spectrum'):
    """λ₁ = n and λ₂ = 2(n + 1) on the unit hemisphere."""

    def cases(self):
        return [BallSpec(n, 1.0, math.pi / 2)
                for n in self.settings['hemisphere-n']]

    def evaluate(self, spec):
        spectrum = ball.ball_spectrum(spec)
        atol = self.settings['hemisphere-atol']
        return self.combine(str(spec), [
            self.within('lambda1', spectrum.lambda1, spec.n, atol=atol),
            self.within('lambda2', spectrum.lambda2, 2 * (spec.n + 1),
                        atol=atol),
        ])


class DiskBessel(BallCheck, name='disk-bessel'):
    """Unit disk: squared zeros of J₀ and J₁."""

    def cases(self):
        return [BallSpec(2, 0.0, 1.0)]

    def evaluate(self, spec):
        spectrum = ball.ball_spectrum(spec)
        atol = self.settings['bessel-atol']
        return self.combine(str(spec), [
            self.within('lambda1', spectrum.lambda1, jn_zeros(0, 1)[0] ** 2,
                        atol=atol),
            self.within('lambda2', spectrum.lambda2, jn_zeros(1, 1)[0] ** 2,
                        atol=atol),
        ])


class EuclideanScaling(BallCheck, name='euclidean-scaling'):
    """R²·λ_i does not depend on R for flat balls."""

    def cases(self):
        return [BallSpec(3, 0.0, R) for R in self.settings['scaling']]

    def evaluate(self, spec):
        unit = ball.ball_spectrum(BallSpec(spec.n, 0.0, 1.0))
        spectrum = ball.ball_spectrum(spec)
        R2 = spec.R ** 2
        return self.combine(str(spec), [
            self.within('lambda1', R2 * spectrum.lambda1, unit.lambda1,
                        rtol=1e-9),
            self.within('lambda2', R2 * spectrum.lambda2, unit.lambda2,
                        rtol=1e-9),
        ])


class GapComparison(BallCheck, name='gap-comparison'):
    """Ball spectrum above the model of the same diameter: gap, first
    eigenvalue and the n·λ̄₁ floors."""

    def cases(self):
        return self.comparison_specs()

    def evaluate(self, spec):
        verdict = ball.gap_comparison_check(spec)
        return self.combine(str(spec), [
            self.at_least(name, margin, 0.0, tol=verdict.tolerance)
            for name, margin in verdict.margins.items()])


class BallHessian(BallCheck, name='ball-hessian'):
    """∇²log u₁ ≤ −λ̄₁ in every direction."""

    def cases(self):
        return self.comparison_specs()

    def evaluate(self, spec):
        v = ball.ball_hessian_check(spec)
        return self.combine(str(spec), [
            self.at_most(name, value, v.bound, tol=v.tolerance)
            for name, value in (('radial', v.radial_max),
                                ('tangential', v.tangential_max),
                                ('origin', v.origin))])


class ModeOrdering(BallCheck, name='mode-ordering'):
    """The first ℓ = 1 mode lies below the second radial mode."""

    def cases(self):
        return self.comparison_specs()

    def evaluate(self, spec):
        spectrum = ball.ball_spectrum(spec)
        return self.at_least(str(spec), spectrum.modes[0, 2],
                             spectrum.modes[1, 1])


class FrobeniusOffset(BallCheck, name='frobenius-offset'):
    """Halving the Frobenius offset leaves λ₁ unchanged."""

    def cases(self):
        return self.comparison_specs()

    def evaluate(self, spec):
        first, _, diff = ball.offset_study(spec)
        return self.at_most(str(spec), diff, 0.0,
                            tol=self.settings['hemisphere-atol'] * (1 + first))
