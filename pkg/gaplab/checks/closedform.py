import itertools
import math

from gaplab.kernels import ModelParams
from gaplab.models import Check
from gaplab.solver import solve_model


class ClosedForm(Check, register=False, group='closed-form'):
    """First two eigenvalues against i²π²/D² − shift."""

    def shift(self, p):
        raise NotImplementedError()

    def evaluate(self, p):
        report = solve_model(p)
        rtol = self.settings['rtol']
        return self.combine(str(p), [
            self.within(f'lambda{i}', report.pair(i).eigenvalue,
                        i * i * math.pi ** 2 / p.D ** 2 - self.shift(p),
                        rtol=rtol)
            for i in (1, 2)])


class FlatEigenvalues(ClosedForm, name='flat-eigenvalues'):
    def cases(self):
        return [ModelParams(n, 0.0, D) for n, D in itertools.product(
            self.settings['flat-n'], self.settings['flat-D'])]

    def shift(self, p):
        return 0.0


class N3Eigenvalues(ClosedForm, name='n3-eigenvalues'):
    def cases(self):
        return [ModelParams(3, K, D) for K, D in itertools.product(
            self.settings['n3-K'], self.settings['n3-D'])]

    def shift(self, p):
        return p.K
