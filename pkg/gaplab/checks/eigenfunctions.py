from gaplab import modulus
from gaplab.kernels import ModelParams
from gaplab.models import Check


class EigenfunctionCheck(Check, register=False, group='eigenfunctions'):
    def cases(self):
        return [ModelParams(**c) for c in self.settings['instances']]


class EigenfunctionMonotonicity(EigenfunctionCheck,
                               name='eigenfunction-monotonicity'):
    """φ̄₁ strictly decreasing and w̄ = φ̄₂/φ̄₁ non-decreasing on [0, D/2],
    with w̄(0) = 0 and a flat finite positive endpoint value."""

    def evaluate(self, p):
        v = modulus.eigenfunction_suite(p)
        return self.combine(str(p), [
            self.at_most('phi1-decreasing', v.phi1_step, 0.0),
            self.at_least('ratio-nondecreasing', v.ratio_step, 0.0,
                          tol=v.tolerance),
            self.within('ratio-at-zero', v.ratio_at_zero, 0.0,
                        atol=v.tolerance),
            self.at_least('endpoint-positive', v.endpoint, 0.0),
            self.within('endpoint-slope', v.endpoint_slope, 0.0,
                        atol=v.slope_tolerance),
        ])


class ResidualOrder(EigenfunctionCheck, register=False):
    """Halving the grid spacing divides the residual by about 4."""
    residual = None

    def evaluate(self, p):
        low, high = self.settings['order-band']
        coarse, fine, ratio = modulus.residual_order(p, self.residual)
        label = f"{p} ({coarse:.3g} -> {fine:.3g})"
        return self.combine(label, [
            self.at_least('order', ratio, low),
            self.at_most('order', ratio, high),
        ])


class RiccatiOrder(ResidualOrder, name='riccati-order'):
    residual = 'riccati'


class SecondOrderOrder(ResidualOrder, name='second-order-order'):
    residual = 'second-order'


class RatioOrder(ResidualOrder, name='ratio-order'):
    residual = 'ratio'


class ResidualBound(EigenfunctionCheck, register=False):
    """Fourth-order residual at the default grid below
    ``residual-bound``."""
    residual = None

    def cases(self):
        return [ModelParams(**c) for c in self.settings['bound-instances']]

    def evaluate(self, p):
        value = self.residual(modulus.log_derivative_profile(p))
        return self.at_most(str(p), value, self.settings['residual-bound'])


class RiccatiBound(ResidualBound, name='riccati-bound'):
    """Riccati residual of the log-derivative below ``residual-bound``."""
    residual = staticmethod(modulus.riccati_residual)


class SecondOrderBound(ResidualBound, name='second-order-bound'):
    """Second-order residual, reported against ``residual-bound``."""
    # f″ is a third difference of the eigenvector, so roundoff sets its size
    blocking = False
    residual = staticmethod(modulus.second_order_residual)
