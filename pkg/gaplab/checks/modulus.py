import itertools

from gaplab import modulus
from gaplab.kernels import ModelParams
from gaplab.models import CaseResult, Check
from gaplab.solver import solve_model


class ModulusCheck(Check, register=False, group='modulus'):
    def cases(self):
        return [ModelParams(n, 1.0, D) for n, D in itertools.product(
            self.settings['psi-n'], self.settings['psi-D'])]


class PsiInequalities(ModulusCheck, name='psi-inequalities'):
    """The log-derivative of the model on a slightly larger interval
    satisfies both modulus-of-concavity inequalities on [0, D/2]."""

    def evaluate(self, p):
        v = modulus.psi_inequalities(p)
        return self.combine(f"{p} D'={v.dprime:.6g}", [
            self.at_most('elliptic', v.elliptic_margin, 0.0, tol=v.tolerance),
            self.at_most('slope', v.slope_margin, 0.0, tol=v.tolerance),
        ])


class HessianLimit(ModulusCheck, name='hessian-limit'):
    """ψ′(0) = −λ̄₁."""

    def evaluate(self, p):
        return self.within(str(p), modulus.hessian_limit_check(p),
                           -solve_model(p).lambda1,
                           rtol=self.settings['hessian-rtol'])


class LowerBound(ModulusCheck, name='lower-bound'):
    """λ̄₁ ≥ π²/D² − (n−1)K/2 where the potential bound applies."""

    def evaluate(self, p):
        bounds = modulus.lower_bound_suite(p)
        if not bounds.applies:
            return CaseResult(str(p), True, None,
                              f"not asserted, margin {bounds.margin!r}")
        return self.at_least(str(p), bounds.lambda1, bounds.bound,
                             tol=bounds.tolerance)


class ProfileComparison(ModulusCheck, name='profile-comparison'):
    """ψ_{D′} ≥ ψ_D on [0, D/2) for D′ > D."""

    def evaluate(self, p):
        dprime = modulus.default_dprime(p)
        margin, ok = modulus.comparison_check(p, dprime)
        return CaseResult(f"{p} D'={dprime:.6g}", ok, margin,
                          f"min difference {margin!r}")
