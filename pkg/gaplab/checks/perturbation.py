import math

from gaplab import gap
from gaplab.kernels import ModelParams
from gaplab.models import Check
from gaplab.solver import solve_model


class Perturbation(Check, register=False, group='perturbation'):
    def instances(self):
        for c in self.settings['instances']:
            yield ModelParams(c['n'], c['K'], c['D']), c['i']

    def distinct_params(self):
        return list(dict.fromkeys(p for p, _ in self.instances()))


class PerturbationFormula(Perturbation, name='perturbation-formula'):
    """The integral expression of d/dc c²·λ̄_i(n, cD, K) against central
    differences of rescaled solves."""

    def cases(self):
        return list(self.instances())

    def evaluate(self, case):
        p, i = case
        value = gap.perturbation_derivative(p, i)
        oracle = gap.rescaled_derivative(p, i, step=self.settings['step'])
        return self.within(f"{p} i={i}", value, oracle,
                           rtol=self.settings['rtol'])


class IntegralForms(Perturbation, name='integral-forms'):
    """Difference of the two eigenvalue derivatives against the direct
    gap-derivative integral."""

    def cases(self):
        return self.distinct_params()

    def evaluate(self, p):
        report = solve_model(p)
        first = gap.perturbation_derivative(p, 1, report)
        second = gap.perturbation_derivative(p, 2, report)
        direct = gap.gap_derivative_integral(p, report)
        # both vanish for n = 3
        atol = self.settings['rtol'] * (abs(first) + abs(second))
        return self.within(str(p), second - first, direct, atol=atol)


class PerturbationSign(Perturbation, name='perturbation-sign'):
    """c²·λ̄₁(cD) decreases in c for K > 0 and increases for K < 0."""

    def cases(self):
        return [p for p in self.distinct_params() if p.n >= 2 and p.K != 0]

    def evaluate(self, p):
        value = gap.perturbation_derivative(p, 1)
        return self.at_least(str(p), -math.copysign(1.0, p.K) * value, 0.0)


class GapDerivativeSign(Perturbation, name='gap-derivative-sign'):
    """The gap-derivative integral has the sign of (n − 1)(n − 3)."""

    def cases(self):
        return self.distinct_params()

    def evaluate(self, p):
        report = solve_model(p)
        value = gap.gap_derivative_integral(p, report)
        if p.n in (1, 3):
            scale = abs(report.lambda2) + abs(report.lambda1)
            return self.within(str(p), value, 0.0,
                               atol=self.settings['rtol'] * scale)
        return self.at_least(str(p), math.copysign(1.0, p.n - 3) * value, 0.0)
