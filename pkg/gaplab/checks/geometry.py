from gaplab import geometry
from gaplab.geometry import VariationProbe
from gaplab.models import Check


class GeometryCheck(Check, register=False, group='geometry'):
    def cases(self):
        return [VariationProbe(self.settings['n'], c['K'], c['d0'])
                for c in self.settings['probes']]


class ExpDistance(GeometryCheck, name='exp-distance'):
    """distance(x, exp_x(r·v)) = r."""

    def evaluate(self, probe):
        atol = self.settings['round-trip-atol']
        return self.combine(str(probe), [
            self.at_most(f'r={r:g}', geometry.round_trip(probe, r), 0.0,
                         tol=atol)
            for r in (probe.d0 / 4, probe.d0 / 2, probe.d0)])


class DrExpansion(GeometryCheck, name='dr-expansion'):
    """d_r = d0 − tn_K(d0/2)·r² + O(r⁴), without a first-order term."""

    def evaluate(self, probe):
        e = geometry.dr_expansion_check(probe)
        return self.combine(str(probe), [
            self.within('r2-coefficient', e.coefficient, e.target,
                        rtol=self.settings['dr-rtol']),
            self.within('first-variation', e.first_variation, 0.0,
                        atol=1e-8),
        ])


class SecondDerivativeInR(GeometryCheck, name='second-derivative-in-r'):
    """∇_r∇_r ∂_sη at both ends is tangent to the segment with the
    predicted coefficient."""

    def evaluate(self, probe):
        atol = self.settings['second-derivative-atol']
        d = geometry.second_derivative_in_r_check(probe)
        return self.combine(str(probe), [
            self.within(end, value, d.target, atol=atol)
            for end, value in d.coefficients.items()
        ] + [self.at_most('normal', d.normal_max, 0.0, tol=atol)])


class JacobiOrthogonality(GeometryCheck, name='jacobi-orthogonality'):
    """The variation field has no component along the segment velocity."""

    def evaluate(self, probe):
        return self.at_most(str(probe),
                            geometry.jacobi_orthogonality_check(probe), 0.0,
                            tol=self.settings['second-derivative-atol'])


class FrameOrthonormality(GeometryCheck, name='frame-orthonormality'):
    def evaluate(self, probe):
        return self.at_most(str(probe), geometry.frame_check(probe), 0.0,
                            tol=1e-12)


class LaplacianComparison(GeometryCheck, name='laplacian-comparison'):
    """Second variations summed over the normal directions equal
    −2(n−1)·tn_K(d0/2)."""

    def evaluate(self, probe):
        total, target = geometry.laplacian_comparison_sum(probe)
        return self.within(str(probe), total, target,
                           rtol=self.settings['dr-rtol'])


class VariationEndpoints(GeometryCheck, name='variation-endpoints'):
    """η(r, ∓d0/2) are the slid endpoints p(r) and q(r)."""

    def evaluate(self, probe):
        atol = self.settings['round-trip-atol']
        results = []
        for r in (-0.1, 0.1):
            for end, s, target in (('start', -probe.d0 / 2, probe.p(r)),
                                   ('end', probe.d0 / 2, probe.q(r))):
                point = geometry.variation_eta(probe, r, s)
                other = geometry.ModelPoint(target, probe.K)
                results.append(self.at_most(
                    f'{end} r={r:g}', geometry.distance(point, other), 0.0,
                    tol=atol))
        return self.combine(str(probe), results)
