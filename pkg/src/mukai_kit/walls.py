"""Walls for ``v = 1 - l*rho`` on an elliptic K3 surface near the fiber class.

A wall is a hyperplane ``u^perp`` inside ``v^perp = Z*nu + NS``,
``nu = 1 + l*rho``.  It is identified by the primitive integral vector
spanning the projection of ``u`` to ``v^perp``, written in coordinates
``(nu-coefficient, NS coordinates)`` and normalized so that its first
nonzero entry is positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, gcd, lcm
from typing import NamedTuple, Optional

from .errors import DomainError, HypothesisError, RegimeError
from .lattice import CohVector, SurfaceData, ns_add, ns_combination, ns_scale, ns_vector, ns_zero
from .scalars import to_rational

TAGS = ("case1", "case2", "bm_minus2", "bm_isotropic", "bm_positive")


class _AllT:
    """Sentinel: the wall equation holds for every ``t``."""

    def __repr__(self):
        return "ALL_T"


ALL_T = _AllT()


@dataclass(frozen=True)
class WallProblem:
    surface: SurfaceData
    ell: int

    def __post_init__(self):
        X = self.surface
        if X.chi != 2 or any(X.K):
            raise HypothesisError("wall computations need a K3 surface (chi = 2, K = 0)")
        if int(self.ell) != self.ell or self.ell <= 0:
            raise DomainError("ell must be a positive integer")
        object.__setattr__(self, "ell", int(self.ell))

    @property
    def v(self) -> CohVector:
        return CohVector(1, ns_zero(self.surface.ns_rank), -self.ell)

    @property
    def nu(self) -> CohVector:
        return CohVector(1, ns_zero(self.surface.ns_rank), self.ell)


@dataclass(frozen=True)
class Wall:
    u: CohVector
    key: tuple
    tag: str


def primitive(coords) -> Optional[tuple]:
    """Primitive integral vector on the ray through ``coords``, first nonzero entry positive."""
    coords = [to_rational(c) for c in coords]
    if not any(coords):
        return None
    den = lcm(*(c.denominator for c in coords))
    ints = [int(c * den) for c in coords]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def wall_key(prob: WallProblem, u: CohVector) -> Optional[tuple]:
    """Key of the wall ``u^perp``; None when ``u`` is a multiple of ``v``.

    ``u - (<u,v>/2l) v = x*nu + xi`` with ``x = (r*l + a)/(2l)``.
    """
    x = (u.r * prob.ell + u.s) / (2 * prob.ell)
    return primitive((x, *u.ns))


def bm_class(prob: WallProblem, u: CohVector) -> Optional[str]:
    """Which of the three candidate conditions for a wall class ``u`` holds, if any."""
    if not u.is_integral():
        raise DomainError("bm_class needs an integral Mukai vector")
    X, ell = prob.surface, prob.ell
    u2 = X.pair(u, u)
    vu = X.pair(prob.v, u)
    if u2 == -2 and 0 <= vu <= ell:
        return "bm_minus2"
    if u2 == 0 and 0 < vu <= ell:
        return "bm_isotropic"
    if u2 > 0 and 2 * u2 + 1 <= vu <= ell:
        return "bm_positive"
    return None


def _candidates(prob: WallProblem, k_bound: int):
    """Defining vectors ``xi + a rho`` of walls through ``f``, in deterministic order.

    Case 1: ``xi = k f`` with ``-l-1 <= a <= -1``.  For ``a = 0`` the class
    ``k f`` only spans the hyperplane tangent to the positive cone at ``f``,
    so it is not listed.
    Case 2: ``xi = +-D + k f`` for every declared fiber (-2)-class ``D``,
    ``-l <= a <= 0``.
    """
    X, ell = prob.surface, prob.ell
    for k in range(-k_bound, k_bound + 1):
        for a in range(-ell - 1, 0):
            yield "case1", CohVector(0, ns_scale(k, X.f), a)
    for D in X.minus2_fiber_classes:
        for sign in (1, -1):
            for k in range(-k_bound, k_bound + 1):
                xi = ns_add(ns_scale(sign, D), ns_scale(k, X.f))
                for a in range(-ell, 1):
                    yield "case2", CohVector(0, xi, a)


def classify_f_walls(prob: WallProblem, k_bound: int) -> list:
    """All walls through ``f`` with fiber multiplicity ``|k| <= k_bound``, sorted by key."""
    walls = {}
    for tag, u in _candidates(prob, k_bound):
        key = wall_key(prob, u)
        if key is not None and key not in walls:
            walls[key] = Wall(u, key, tag)
    return [walls[k] for k in sorted(walls)]


def brute_oracle(prob: WallProblem, coeff_bound: int) -> dict:
    """Keys of every bounded integral ``u`` passing a candidate test with ``(xi.f) = 0``.

    Returns ``{key: Wall}`` where the Wall records the first ``u`` found.
    """
    X = prob.surface
    rng = range(-coeff_bound, coeff_bound + 1)
    found = {}
    for coords in product(rng, repeat=X.ns_rank + 2):
        u = CohVector.from_flat(coords)
        if X.dot(u.ns, X.f) != 0:
            continue
        tag = bm_class(prob, u)
        if tag is None:
            continue
        key = wall_key(prob, u)
        if key is not None and key not in found:
            found[key] = Wall(u, key, tag)
    return found


def xi_class(prob: WallProblem, beta, omega) -> CohVector:
    """``(b.w) nu + (b.w) beta + (l + (w^2)/2 - (b^2)/2) omega``."""
    X, ell = prob.surface, prob.ell
    beta, omega = ns_vector(beta), ns_vector(omega)
    bw = X.dot(beta, omega)
    c = ell + X.sq(omega) / 2 - X.sq(beta) / 2
    return CohVector(bw, ns_combination((bw, beta), (c, omega)), bw * ell)


def xi_direct(prob: WallProblem, beta, omega, v: CohVector = None) -> CohVector:
    """``Im(conj(<e^{beta+i omega}, v>) e^{beta+i omega})`` evaluated literally."""
    if v is not None and v != prob.v:
        raise DomainError("xi_direct is defined for v = 1 - l rho only")
    X = prob.surface
    e = X.exp_complex(beta, omega)
    z = X.pair_complex(e, prob.v).conjugate()
    return e.scale(z).im


def _scan_coefficients(X: SurfaceData, beta_p, H_p, f_p, r0, m, n):
    beta_p, H_p, f_p = ns_vector(beta_p), ns_vector(H_p), ns_vector(f_p)
    m, n = to_rational(m), to_rational(n)
    N = r0 * r0 * m * m * n
    omega = ns_combination((1 / (r0 * r0 * m), H_p), (m * n, f_p))
    B_prime = X.dot(beta_p, H_p) / N + X.dot(beta_p, f_p)
    return beta_p, H_p, f_p, m, n, N, omega, B_prime


def wall_hit_t2(prob: WallProblem, u, beta_p, H_p, f_p, r0: int, m, n):
    """``t^2`` at which ``xi(beta', t omega')`` crosses ``u^perp``.

    ``omega' = H'/(r0^2 m) + m n f'``.  Returns a Fraction ``t^2 > 0``, None, or
    ``ALL_T`` when the equation holds identically.
    """
    if isinstance(u, Wall):
        u = u.u
    X, ell = prob.surface, prob.ell
    beta_p, H_p, f_p, m, n, N, omega, _ = _scan_coefficients(X, beta_p, H_p, f_p, r0, m, n)
    if X.dot(beta_p, f_p) >= 0:
        raise RegimeError("need (beta'.f') < 0")
    if u.r != 0:
        raise DomainError("wall_hit_t2 expects u = xi + a rho")
    xi, a = u.ns, u.s
    B = X.dot(beta_p, omega)
    w_xi = X.dot(omega, xi)
    b_xi = X.dot(beta_p, xi)
    base = ell - X.sq(beta_p) / 2
    # <xi(beta', t omega'), u> / t = c0 + c1 t^2
    c0 = B * (b_xi - a) + base * w_xi
    c1 = X.sq(omega) / 2 * w_xi
    if c1 == 0:
        return ALL_T if c0 == 0 else None
    if a - b_xi == 0:
        return None
    t2 = -c0 / c1
    if t2 <= 0 or base + t2 * X.sq(omega) / 2 == 0:
        return None
    return t2


def f_u_terms(prob: WallProblem, u: CohVector, beta_p, H_p, f_p, r0, m, n):
    """``(lhs, rhs)`` of the two-sided condition ``lhs < rhs < 0`` on a wall class."""
    X, ell = prob.surface, prob.ell
    beta_p, H_p, f_p, m, n, N, _, B_prime = _scan_coefficients(X, beta_p, H_p, f_p, r0, m, n)
    lhs = B_prime / (ell + n / (r0 * r0) - X.sq(beta_p) / 2)
    denom = N * (u.s - X.dot(beta_p, u.ns))
    rhs = None if denom == 0 else X.dot(H_p, u.ns) / denom
    return lhs, rhs


def f_u_holds(prob, u, beta_p, H_p, f_p, r0, m, n) -> bool:
    lhs, rhs = f_u_terms(prob, u, beta_p, H_p, f_p, r0, m, n)
    return rhs is not None and lhs < rhs < 0


def scan_preconditions(prob: WallProblem, beta_p, H_p, f_p, r0, m, n) -> list:
    X = prob.surface
    beta_p, H_p, f_p, m, n, N, _, B_prime = _scan_coefficients(X, beta_p, H_p, f_p, r0, m, n)
    failed = []
    if X.dot(beta_p, f_p) >= 0:
        failed.append(f"(beta'.f') < 0 fails: (beta'.f') = {X.dot(beta_p, f_p)}")
    if B_prime >= 0:
        failed.append(f"(beta'.H')/(r0^2 m^2 n) + (beta'.f') < 0 fails: value = {B_prime}")
    level = prob.ell + n / (r0 * r0) - X.sq(beta_p) / 2
    if level <= 0:
        failed.append(f"l + n/r0^2 - (beta'^2)/2 > 0 fails: value = {level}")
    return failed


def scan_k_bound(prob: WallProblem, beta_p, H_p, f_p) -> int:
    """Largest ``|k|`` for which the sign part of the wall condition can hold.

    For ``xi = D0 + k f`` with ``(beta'.f') = c < 0``, ``(H'.xi)`` and
    ``a - (beta'.xi)`` have opposite signs only for ``k`` strictly between
    ``-(H'.D0)`` and ``(a - (beta'.D0))/c``.
    """
    X, ell = prob.surface, prob.ell
    beta_p, H_p, f_p = ns_vector(beta_p), ns_vector(H_p), ns_vector(f_p)
    c = X.dot(beta_p, f_p)
    if c >= 0:
        raise RegimeError("need (beta'.f') < 0")
    fiber_parts = [ns_zero(X.ns_rank)]
    for D in X.minus2_fiber_classes:
        fiber_parts += [D, ns_scale(-1, D)]
    bound = 0
    for D0 in fiber_parts:
        h = X.dot(H_p, D0) / X.dot(H_p, f_p)
        for a in range(-ell - 1, 1):
            for end in (-h, (a - X.dot(beta_p, D0)) / c):
                bound = max(bound, ceil(abs(end)))
    return bound + 1


class ScanHit(NamedTuple):
    t2: Fraction
    wall: Wall


def scan(prob: WallProblem, beta_p, r0: int, m, n, t_max, H_p=None, f_p=None, k_bound=None) -> list:
    """Walls crossed by ``sigma(beta', t omega')`` for ``1 <= t <= t_max``, sorted by ``t^2``."""
    X = prob.surface
    H_p = X.H if H_p is None else ns_vector(H_p)
    f_p = X.f if f_p is None else ns_vector(f_p)
    failed = scan_preconditions(prob, beta_p, H_p, f_p, r0, m, n)
    if failed:
        raise RegimeError("; ".join(failed))
    t_max = to_rational(t_max)
    if k_bound is None:
        k_bound = scan_k_bound(prob, beta_p, H_p, f_p)
    hits = []
    for wall in classify_f_walls(prob, k_bound):
        t2 = wall_hit_t2(prob, wall.u, beta_p, H_p, f_p, r0, m, n)
        if t2 is None or t2 is ALL_T:
            continue
        if not (1 <= t2 <= t_max * t_max):
            continue
        if not f_u_holds(prob, wall.u, beta_p, H_p, f_p, r0, m, n):
            continue
        hits.append(ScanHit(t2, wall))
    hits.sort(key=lambda h: (h.t2, h.wall.key))
    return hits


class ChamberSignature(NamedTuple):
    vector: CohVector
    nu_beta_coeff: Fraction
    H_coeff: Fraction
    f_coeff: Fraction


def chamber_signature(prob: WallProblem, beta_p, r0: int, m, n, H_p=None, f_p=None) -> ChamberSignature:
    """Representative ``c (nu + beta') + H'/N + f'`` of ``xi(beta', omega')``, ``N = r0^2 m^2 n``."""
    X = prob.surface
    H_p = X.H if H_p is None else ns_vector(H_p)
    f_p = X.f if f_p is None else ns_vector(f_p)
    beta_p, H_p, f_p, m, n, N, _, B_prime = _scan_coefficients(X, beta_p, H_p, f_p, r0, m, n)
    c = B_prime / (prob.ell + n / (r0 * r0) - X.sq(beta_p) / 2)
    nu_beta = prob.nu + CohVector.divisor(beta_p)
    vec = nu_beta * c + CohVector.divisor(ns_combination((1 / N, H_p), (1, f_p)))
    return ChamberSignature(vec, c, 1 / N, Fraction(1))
