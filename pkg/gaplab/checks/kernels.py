import math

import numpy as np

from gaplab import kernels
from gaplab.models import Check

# derivatives below are checked against five-point differences
DIFF_STEP = 1e-4
DIFF_RTOL = 1e-6


def _diff(f, s, h=DIFF_STEP):
    return (-f(s + 2 * h) + 8 * f(s + h) - 8 * f(s - h) + f(s - 2 * h)) / (12 * h)


class KernelIdentities(Check, name='kernel-identities', group='kernels'):
    """cs² + K·sn² = 1, tn′ = K/cs² = K + tn² and l′ = 2m at random points."""

    def cases(self):
        rng = np.random.default_rng(self.settings['seed'])
        for _ in range(self.settings['points']):
            K = float(rng.uniform(-2, 2))
            # stay clear of the zero of cs for K > 0
            reach = 1.4 / math.sqrt(K) if K > 0 else 3 / math.sqrt(max(-K, 1e-2))
            yield K, float(rng.uniform(-reach, reach))

    def evaluate(self, case):
        K, s = case
        label = f"K={K:.6g} s={s:.6g}"
        c, t = kernels.cs(K, s), kernels.tn(K, s)
        scale = 1 + abs(K) / c ** 2
        return self.combine(label, [
            self.within('pythagoras', c ** 2 + K * kernels.sn(K, s) ** 2, 1.0,
                        atol=1e-12 * scale),
            self.within('tn-riccati', K / c ** 2, K + t * t,
                        atol=1e-12 * scale),
            self.within('tn-derivative', _diff(lambda x: kernels.tn(K, x), s),
                        K / c ** 2, atol=DIFF_RTOL * scale),
            self.within('l-derivative', _diff(lambda x: kernels.l_fn(K, x), s),
                        2 * kernels.m_fn(K, s),
                        atol=DIFF_RTOL * scale * (1 + abs(s))),
        ])


class AOfK(Check, name='a-of-k', group='kernels'):
    """m′ vanishes at a(K), which scales like 1/√|K|."""

    def cases(self):
        return [-0.25, -1.0, -4.0]

    def evaluate(self, K):
        a = kernels.a_of_K(K)
        return self.combine(f"K={K:g}", [
            self.within('root', kernels.m_prime(K, a), 0.0, atol=1e-10),
            self.within('scaling', a * math.sqrt(-K), kernels.a_of_K(-1.0),
                        rtol=1e-10),
        ])
