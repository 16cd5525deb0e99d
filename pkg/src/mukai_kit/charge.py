"""Central charges, exact phase comparison and the large volume regime test."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import DomainError, HypothesisError, RegimeError
from .lattice import CohVector, NSVector, SurfaceData, ns_scale, ns_vector
from .scalars import GaussRational, QuadExtScalar, to_rational

LESS, EQUAL, GREATER = -1, 0, 1


@dataclass(frozen=True)
class StabilityParams:
    beta: NSVector
    omega: NSVector

    def __post_init__(self):
        object.__setattr__(self, "beta", ns_vector(self.beta))
        object.__setattr__(self, "omega", ns_vector(self.omega))

    def admissible(self, X: SurfaceData) -> bool:
        return X.sq(self.omega) > X.chi


def charge(X: SurfaceData, params: StabilityParams, v: CohVector) -> GaussRational:
    """``<e^{beta + i omega}, v>`` with no regime check."""
    return X.pair_complex(X.exp_complex(params.beta, params.omega), v)


def z_hat(X: SurfaceData, params: StabilityParams, v: CohVector) -> GaussRational:
    """Charge of a Mukai vector; requires ``(omega^2) > chi``."""
    w2 = X.sq(params.omega)
    if w2 <= X.chi:
        raise RegimeError(f"(omega^2) = {w2} must exceed chi = {X.chi}")
    return charge(X, params, v)


def z_geo(X: SurfaceData, params: StabilityParams, ch: CohVector) -> GaussRational:
    """Charge evaluated against a Chern character."""
    return charge(X, params, ch)


def _half(z: GaussRational) -> int:
    # orders the arguments in (-pi, pi]: lower half, positive axis, upper half, negative axis
    if z.im < 0:
        return 0
    if z.im == 0:
        return 1 if z.re > 0 else 3
    return 2


def phase_cmp(z1, z2) -> int:
    """Compare the phases in (-1, 1] of two nonzero Gaussian rationals.

    Returns ``LESS``, ``EQUAL`` or ``GREATER``.
    """
    z1, z2 = GaussRational.coerce(z1), GaussRational.coerce(z2)
    if not z1 or not z2:
        raise DomainError("phase of 0 is undefined")
    h1, h2 = _half(z1), _half(z2)
    if h1 != h2:
        return LESS if h1 < h2 else GREATER
    if h1 in (1, 3):
        return EQUAL
    cross = z1.re * z2.im - z1.im * z2.re
    if cross == 0:
        return EQUAL
    return LESS if cross > 0 else GREATER


def act_scale_rot(quarter_turns: int, scale, z) -> GaussRational:
    """``exp(-pi i lambda) * z`` for ``lambda = quarter_turns/2 + i log(scale)/pi``."""
    scale = to_rational(scale)
    if scale <= 0:
        raise DomainError("scale must be a positive rational")
    rot = [GaussRational(1, 0), GaussRational(0, -1), GaussRational(-1, 0), GaussRational(0, 1)]
    return GaussRational.coerce(z) * rot[quarter_turns % 4] * scale


class QuadCharge(NamedTuple):
    re: QuadExtScalar
    im: QuadExtScalar


def z_geo_sqrt(X: SurfaceData, beta, A, d, ch: CohVector) -> QuadCharge:
    """``Z_{(beta, sA)}(ch)`` with ``s = sqrt(d)``, computed in Q(sqrt(d)).

    ``e^{beta + i s A} = (1, beta, ((beta^2) - d (A^2))/2) + i s (0, A, (beta.A))``.
    """
    beta, A, d = ns_vector(beta), ns_vector(A), to_rational(d)
    real_part = CohVector(1, beta, (X.sq(beta) - d * X.sq(A)) / 2)
    imag_unit = CohVector(0, A, X.dot(beta, A))
    x = X.pair(real_part, ch)
    y = X.pair(imag_unit, ch)
    return QuadCharge(QuadExtScalar(x, 0, d), QuadExtScalar(0, y, d))


def hat_geo_check(X: SurfaceData, beta, A, t, ch: CohVector) -> bool:
    """Check ``Zhat_{(beta, tA)}(v(ch)) = T^{-1} Z_{(beta, sA)}(ch)`` exactly.

    ``s^2 = t^2 - chi/(A^2)`` and ``T^{-1}`` rescales the imaginary part by ``t/s``.
    """
    A, t = ns_vector(A), to_rational(t)
    A2 = X.sq(A)
    if A2 <= 0:
        raise RegimeError(f"(A^2) = {A2} must be positive")
    d = t * t - Fraction(X.chi) / A2
    if d <= 0 or t <= 0:
        raise RegimeError(f"need t > 0 and t^2 - chi/(A^2) > 0, got t = {t}, s^2 = {d}")
    geo = z_geo_sqrt(X, beta, A, d, ch)
    # t/s = t*sqrt(d)/d
    t_over_s = QuadExtScalar(0, t / d, d)
    transformed = QuadCharge(geo.re, geo.im * t_over_s)
    hat = z_hat(X, StabilityParams(beta, ns_scale(t, A)), X.mukai_vector(ch))
    return transformed.re == hat.re and transformed.im == hat.im


class LvlTerms(NamedTuple):
    case: int
    lhs: Fraction
    rhs: Fraction
    d: Fraction
    delta: Fraction
    r: Fraction
    a: Fraction


def lvl_terms(X: SurfaceData, v: CohVector, beta, L, t) -> LvlTerms:
    """Both sides of the large volume inequality for ``v = e^beta(r + xi + a rho)``."""
    L, t = ns_vector(L), to_rational(t)
    L2 = X.sq(L)
    if L2 <= 0:
        raise DomainError(f"(L^2) = {L2} must be positive")
    w = X.twist(v, ns_scale(-1, ns_vector(beta)))
    r, xi, a = w.r, w.ns, w.s
    if r < 0:
        raise HypothesisError("large volume test is only stated for r >= 0")
    d = X.dot(xi, L) / L2
    delta = X.delta_min(L)
    chi = Fraction(X.chi)
    lhs = (t * t * L2 - chi) / 2
    if r > 0:
        rhs = d / delta * (d * d * L2 / 2 - r * a + r * r * chi / 2)
        case = 1
    else:
        rhs = d / delta * (abs(a) + d * d * L2)
        case = 2
    return LvlTerms(case, lhs, rhs, d, delta, r, a)


def lvl_check(X: SurfaceData, v: CohVector, beta, L, t) -> bool:
    """True when ``t`` lies strictly inside the large volume regime for ``v``."""
    terms = lvl_terms(X, v, beta, L, t)
    return terms.lhs > terms.rhs
