"""
Space forms of curvature K embedded as quadrics, and the variation of a
geodesic segment obtained by sliding both endpoints along a parallel normal
direction.

For K > 0 the model is the sphere ⟨x, x⟩ = 1/K in Euclidean ℝⁿ⁺¹; for K < 0
it is the upper sheet of ⟨x, x⟩ = 1/K for the Lorentz product with the last
coordinate timelike. K = 0 uses the affine chart ℝⁿ.

Every probe uses the same coordinates: the segment runs through the pole
P = e_{n+1}/√|K| in the direction of the first axis, and the normal frame
e_1..e_{n−1} is made of the axes 2..n, which stay parallel along it.
"""

import dataclasses
import logging
import math

import numpy as np

from gaplab import kernels
from gaplab.errors import DomainError, PreconditionError

logger = logging.getLogger(__name__)

MEMBERSHIP_TOL = 1e-12
UNIT_TOL = 1e-12
DR_STEP = 1e-3
SECOND_DERIVATIVE_STEPS = (1e-2, 5e-3, 2.5e-3)


def inner(K, a, b):
    """Euclidean product for K >= 0, Lorentz product (last coordinate
    negative) for K < 0."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if K < 0:
        return float(a[:-1] @ b[:-1] - a[-1] * b[-1])
    return float(a @ b)


def project(K, x, v):
    """Tangential part v − K⟨v, x⟩x of an ambient vector at x."""
    v = np.asarray(v, dtype=float)
    if K == 0:
        return v
    return v - K * inner(K, v, x) * np.asarray(x, dtype=float)


def _frozen(values):
    values = np.array(values, dtype=float)
    values.setflags(write=False)
    return values


@dataclasses.dataclass(frozen=True)
class ModelPoint:
    coords: np.ndarray
    K: float

    def __post_init__(self):
        object.__setattr__(self, 'coords', _frozen(self.coords))
        object.__setattr__(self, 'K', float(self.K))
        if self.K != 0:
            residual = self.residual
            scale = 1 + abs(self.K) * float(self.coords @ self.coords)
            if residual > MEMBERSHIP_TOL * scale:
                raise DomainError(f"point drifted off the model set: "
                                  f"|K<x,x> - 1| = {residual:g}")
            if self.K < 0 and not self.coords[-1] > 0:
                raise DomainError("hyperboloid points need a positive last "
                                  "coordinate")

    @property
    def residual(self):
        if self.K == 0:
            return 0.0
        return abs(self.K * inner(self.K, self.coords, self.coords) - 1)


@dataclasses.dataclass(frozen=True)
class TangentVec:
    base: ModelPoint
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'coords', _frozen(self.coords))
        K = self.base.K
        if K != 0:
            normal = abs(inner(K, self.coords, self.base.coords))
            scale = 1 + float(np.linalg.norm(self.coords))
            if normal > 1e-10 * scale / math.sqrt(abs(K)):
                raise DomainError(f"vector is not tangent: <v, x> = {normal:g}")

    @property
    def norm2(self):
        return inner(self.base.K, self.coords, self.coords)


def exp_map(x: ModelPoint, v: TangentVec, r) -> ModelPoint:
    """cs_K(r)·x + sn_K(r)·v for a unit tangent vector v at x."""
    if abs(v.norm2 - 1) > UNIT_TOL:
        raise PreconditionError(f"exp_map needs a unit vector, got "
                                f"<v, v> = {v.norm2!r}")
    K = x.K
    if K == 0:
        return ModelPoint(x.coords + r * v.coords, K)
    return ModelPoint(kernels.cs(K, r) * x.coords + kernels.sn(K, r) * v.coords,
                      K)


def distance(x: ModelPoint, y: ModelPoint):
    if x.K != y.K:
        raise DomainError(f"points of different models: K = {x.K}, {y.K}")
    K = x.K
    if K == 0:
        return float(np.linalg.norm(y.coords - x.coords))
    c = K * inner(K, x.coords, y.coords)
    w = y.coords - c * x.coords
    r = math.sqrt(abs(K))
    if K > 0:
        if abs(c) > 1 + 1e-10:
            raise DomainError(f"numerical drift: K<x,y> = {c!r}")
        return math.atan2(r * float(np.linalg.norm(w)), c) / r
    if c < 1 - 1e-10:
        raise DomainError(f"numerical drift: K<x,y> = {c!r}")
    return math.asinh(r * math.sqrt(max(inner(K, w, w), 0.0))) / r


@dataclasses.dataclass(frozen=True)
class VariationProbe:
    n: int
    K: float
    d0: float
    i: int = 1

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, 'n', int(self.n))
        object.__setattr__(self, 'K', float(self.K))
        object.__setattr__(self, 'd0', float(self.d0))
        kernels.curvature_branch(self.K)
        if not self.d0 > 0:
            raise DomainError(f"d0 must be positive, got {self.d0!r}")
        if self.K > 0 and self.d0 >= math.pi / math.sqrt(self.K):
            raise DomainError(f"d0 = {self.d0} reaches the antipodal "
                              f"distance pi/sqrt(K)")
        if not 1 <= self.i <= self.n - 1:
            raise DomainError(f"normal index must lie in 1..{self.n - 1}, "
                              f"got {self.i!r}")

    @property
    def dim(self):
        return self.n if self.K == 0 else self.n + 1

    def axis(self, k):
        e = np.zeros(self.dim)
        e[k] = 1.0
        return e

    @property
    def pole(self):
        if self.K == 0:
            return np.zeros(self.dim)
        return self.axis(self.n) / math.sqrt(abs(self.K))

    def gamma(self, s):
        """The unit speed segment through the pole."""
        if self.K == 0:
            return s * self.axis(0)
        return (kernels.cs(self.K, s) * self.pole
                + kernels.sn(self.K, s) * self.axis(0))

    def gamma_prime(self, s):
        if self.K == 0:
            return self.axis(0)
        return (-self.K * kernels.sn(self.K, s) * self.pole
                + kernels.cs(self.K, s) * self.axis(0))

    @property
    def x0(self):
        return ModelPoint(self.gamma(-self.d0 / 2), self.K)

    @property
    def y0(self):
        return ModelPoint(self.gamma(self.d0 / 2), self.K)

    def _slide(self, start, r, i=None):
        e = self.axis(self.i if i is None else i)
        if self.K == 0:
            return start + r * e
        return kernels.cs(self.K, r) * start + kernels.sn(self.K, r) * e

    def p(self, r, i=None):
        return self._slide(self.gamma(-self.d0 / 2), r, i)

    def q(self, r, i=None):
        return self._slide(self.gamma(self.d0 / 2), r, i)

    def d_r(self, r, i=None):
        return distance(ModelPoint(self.p(r, i), self.K),
                        ModelPoint(self.q(r, i), self.K))

    def U(self, r, i=None):
        """Unit tangent at p(r) pointing to q(r)."""
        p, q = self.p(r, i), self.q(r, i)
        if self.K == 0:
            return (q - p) / np.linalg.norm(q - p)
        pq = inner(self.K, p, q)
        radicand = 1 / self.K - self.K * pq * pq
        if not radicand > 0:
            raise DomainError(f"normalization of U is not positive: "
                              f"{radicand!r}")
        return (q - self.K * pq * p) / math.sqrt(radicand)

    def __str__(self):
        return f"n={self.n} K={self.K:g} d0={self.d0:g} i={self.i}"


def _check_s(probe, s):
    if abs(s) > probe.d0 / 2 * (1 + 1e-12):
        raise DomainError(f"s = {s} lies outside [-d0/2, d0/2]")


def _eta(probe, r, s, i=None):
    d = probe.d_r(r, i)
    theta = d / probe.d0 * s + d / 2
    p = probe.p(r, i)
    if probe.K == 0:
        return p + theta * probe.U(r, i)
    return (kernels.cs(probe.K, theta) * p
            + kernels.sn(probe.K, theta) * probe.U(r, i))


def _eta_s(probe, r, s, i=None):
    """∂η/∂s in ambient coordinates."""
    d = probe.d_r(r, i)
    theta = d / probe.d0 * s + d / 2
    U = probe.U(r, i)
    if probe.K == 0:
        return d / probe.d0 * U
    return d / probe.d0 * (-probe.K * kernels.sn(probe.K, theta) * probe.p(r, i)
                           + kernels.cs(probe.K, theta) * U)


def variation_eta(probe: VariationProbe, r, s) -> ModelPoint:
    _check_s(probe, s)
    return ModelPoint(_eta(probe, r, s), probe.K)


def geodesic_frame(probe: VariationProbe, s):
    """γ(s), e_n = γ′(s) and the parallel normals e_1..e_{n−1}."""
    normals = [probe.axis(k) for k in range(1, probe.n)]
    return probe.gamma(s), probe.gamma_prime(s), normals


def frame_check(probe: VariationProbe, samples=11):
    """Largest deviation from orthonormality (and tangency) of the frame
    over samples of the segment."""
    worst = 0.0
    K = probe.K
    for s in np.linspace(-probe.d0 / 2, probe.d0 / 2, samples):
        point, tangent, normals = geodesic_frame(probe, s)
        frame = [tangent] + normals
        for a, u in enumerate(frame):
            if K != 0:
                worst = max(worst, abs(inner(K, u, point)))
            for b, v in enumerate(frame):
                expected = 1.0 if a == b else 0.0
                worst = max(worst, abs(inner(K, u, v) - expected))
    return worst


@dataclasses.dataclass(frozen=True)
class DrExpansion:
    probe: VariationProbe
    coefficient: float
    target: float
    first_variation: float

    @property
    def rel_error(self):
        if self.target == 0:
            return abs(self.coefficient)
        return abs(self.coefficient - self.target) / abs(self.target)


def _r2_coefficient(probe, h, i=None):
    def c2(step):
        return ((probe.d_r(step, i) + probe.d_r(-step, i) - 2 * probe.d0)
                / (2 * step * step))
    return (4 * c2(h) - c2(2 * h)) / 3


def dr_expansion_check(probe: VariationProbe, h=DR_STEP) -> DrExpansion:
    """r² coefficient of d_r = d0 − tn_K(d0/2)·r² + O(r⁴)."""
    coefficient = _r2_coefficient(probe, h)
    first = (probe.d_r(h) - probe.d_r(-h)) / (2 * h)
    target = kernels.tn(probe.K, probe.d0 / 2)
    return DrExpansion(probe, coefficient, -target, first)


def laplacian_comparison_sum(probe: VariationProbe, h=DR_STEP):
    """Second variation of length summed over the normal directions, and
    its constant-curvature value −2(n−1)·tn_K(d0/2)."""
    total = sum(2 * _r2_coefficient(probe, h, i) for i in range(1, probe.n))
    return total, -2 * (probe.n - 1) * kernels.tn(probe.K, probe.d0 / 2)


@dataclasses.dataclass(frozen=True)
class SecondDerivative:
    probe: VariationProbe
    vectors: dict
    coefficients: dict
    normal_max: float
    target: float
    ladder_spread: float

    @property
    def error(self):
        return max(abs(c - self.target) for c in self.coefficients.values())


def _second_difference(f, h):
    return (-f(2 * h) + 16 * f(h) - 30 * f(0.0) + 16 * f(-h)
            - f(-2 * h)) / (12 * h * h)


def second_derivative_in_r_check(probe: VariationProbe,
                                 steps=SECOND_DERIVATIVE_STEPS):
    """∇_r∇_r ∂_sη at r = 0 on both ends of the segment; it points along
    e_n with coefficient −(2/d0)·tn_K(d0/2) − tn_K(d0/2)²."""
    K = probe.K
    t = kernels.tn(K, probe.d0 / 2)
    target = -(2 / probe.d0) * t - t * t
    vectors, coefficients = {}, {}
    spread = 0.0
    normal_max = 0.0
    for end, s in (('start', -probe.d0 / 2), ('end', probe.d0 / 2)):
        def W(r):
            return _eta_s(probe, r, s)
        ladder = [_second_difference(W, h) for h in steps]
        # fourth-order differences: the leading error shrinks 16-fold
        limit = (16 * ladder[-1] - ladder[-2]) / 15
        previous = (16 * ladder[-2] - ladder[-3]) / 15
        spread = max(spread, float(np.max(np.abs(limit - previous))))
        point = probe.gamma(s)
        # W(0) is orthogonal to the curve velocity e_i at r = 0
        vector = project(K, point, limit)
        _, tangent, normals = geodesic_frame(probe, s)
        vectors[end] = vector
        coefficients[end] = inner(K, vector, tangent)
        normal_max = max([normal_max] + [abs(inner(K, vector, e))
                                         for e in normals])
    return SecondDerivative(probe, vectors, coefficients, normal_max, target,
                            spread)


def jacobi_orthogonality_check(probe: VariationProbe, samples=11, h=1e-4):
    """max over s of |⟨γ′(s), ∂_s∂_rη(0, s)⟩|."""
    worst = 0.0
    K = probe.K
    for s in np.linspace(-probe.d0 / 2, probe.d0 / 2, samples):
        def W(r):
            return _eta_s(probe, r, s)
        dW = (-W(2 * h) + 8 * W(h) - 8 * W(-h) + W(-2 * h)) / (12 * h)
        worst = max(worst, abs(inner(K, probe.gamma_prime(s), dW)))
    return worst


def round_trip(probe: VariationProbe, r):
    """distance(x, exp_map(x, v, r)) − r along the segment direction."""
    x = probe.x0
    v = TangentVec(x, probe.gamma_prime(-probe.d0 / 2))
    return abs(distance(x, exp_map(x, v, r)) - r)
