"""Cohomological action of the relative Fourier-Mukai transform attached to ``v0 = e^beta (r0 f)``.

The transform is pinned down on all of ``H*(X, Q)_alg`` by its values on
``e^beta, H e^beta, f e^beta, rho`` together with an isometry between the
parts orthogonal to H and f.  ``d_map`` is that isometry, written as a matrix
from source NS coordinates to target NS coordinates; only its restriction to
``f^perp cap H^perp`` is ever used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import NamedTuple

import sympy

from .charge import StabilityParams, charge
from .errors import DimensionError, HypothesisError
from .lattice import (
    CohVector,
    GaussCohVector,
    NSVector,
    SurfaceData,
    ns_add,
    ns_combination,
    ns_scale,
    ns_vector,
)
from .scalars import GaussRational, to_rational


def identity_matrix(n: int) -> tuple:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_vec(M, x: NSVector) -> NSVector:
    return tuple(sum((M[i][j] * x[j] for j in range(len(x))), Fraction(0)) for i in range(len(M)))


def orthogonal_complement_basis(X: SurfaceData) -> list:
    """Rational basis of ``f^perp cap H^perp`` in NS coordinates."""
    rows = [
        [X.dot(X.f, e) for e in _basis(X.ns_rank)],
        [X.dot(X.H, e) for e in _basis(X.ns_rank)],
    ]
    kernel = sympy.Matrix(rows).nullspace()
    return [tuple(Fraction(int(c.p), int(c.q)) for c in vec) for vec in kernel]


def _basis(n: int):
    return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]


@dataclass(frozen=True)
class FMData:
    """Data ``(r0, b, beta)`` of ``v0 = r0 f + b rho`` plus the target surface and ``beta'``."""

    source: SurfaceData
    target: SurfaceData
    r0: int
    b: Fraction
    beta: NSVector
    beta_prime: NSVector
    d_map: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "b", to_rational(self.b))
        object.__setattr__(self, "beta", ns_vector(self.beta))
        object.__setattr__(self, "beta_prime", ns_vector(self.beta_prime))
        if isinstance(self.r0, bool) or int(self.r0) != self.r0:
            raise HypothesisError("r0 must be an integer")
        object.__setattr__(self, "r0", int(self.r0))
        if len(self.beta) != self.source.ns_rank:
            raise DimensionError("beta must live on the source NS lattice")
        if len(self.beta_prime) != self.target.ns_rank:
            raise DimensionError("beta_prime must live on the target NS lattice")
        if self.d_map is None:
            if self.source.ns_rank != self.target.ns_rank:
                raise DimensionError("d_map is required when the NS ranks differ")
            object.__setattr__(self, "d_map", identity_matrix(self.source.ns_rank))
        else:
            M = tuple(tuple(to_rational(x) for x in row) for row in self.d_map)
            if len(M) != self.target.ns_rank or any(len(row) != self.source.ns_rank for row in M):
                raise DimensionError("d_map must be a (target rank) x (source rank) matrix")
            object.__setattr__(self, "d_map", M)

    @property
    def v0(self) -> CohVector:
        return CohVector(0, ns_scale(self.r0, self.source.f), self.b)

    @property
    def v0_prime(self) -> CohVector:
        T = self.target
        return T.twist(CohVector(0, ns_scale(self.r0, T.f), 0), self.beta_prime)

    def source_basis(self) -> list:
        """``e^beta, H e^beta, f e^beta, rho`` on the source."""
        X = self.source
        e = X.exp(self.beta)
        return [
            e,
            X.mul(CohVector.divisor(X.H), e),
            X.mul(CohVector.divisor(X.f), e),
            X.rho(),
        ]

    def target_basis(self) -> list:
        T = self.target
        e = T.exp(self.beta_prime)
        return [
            e,
            T.mul(CohVector.divisor(T.H), e),
            T.mul(CohVector.divisor(T.f), e),
            T.rho(),
        ]


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str = ""


def apply(fm: FMData, v: CohVector) -> CohVector:
    """Image of ``v`` under the cohomological transform.

    With ``v = e^beta (r + pH + qf + D + a rho)`` the image is
    ``e^beta' ((r/r0) H' - p r0 + (q/r0) rho + D' - a r0 f')``.
    """
    X, T, r0 = fm.source, fm.target, Fraction(fm.r0)
    e = X.beta_expand(v, fm.beta)
    ns = ns_combination((e.r / r0, T.H), (1, mat_vec(fm.d_map, e.D)), (-e.a * r0, T.f))
    return T.twist(CohVector(-e.p * r0, ns, e.q / r0), fm.beta_prime)


def apply_gauss(fm: FMData, v: GaussCohVector) -> GaussCohVector:
    return GaussCohVector(apply(fm, v.re), apply(fm, v.im))


def _complex_exp(X: SurfaceData, base: NSVector, terms) -> GaussCohVector:
    """``e^{base + sum z_k * c_k}`` for Gaussian-rational ``z_k`` and real classes ``c_k``."""
    re, im = base, tuple(Fraction(0) for _ in base)
    for z, cls in terms:
        z = GaussRational.coerce(z)
        re = ns_add(re, ns_scale(z.re, cls))
        im = ns_add(im, ns_scale(z.im, cls))
    return X.exp_complex(re, im)


class ComplexImage(NamedTuple):
    scale: GaussRational
    image: GaussCohVector


def apply_complex(fm: FMData, z, w) -> ComplexImage:
    """Transform of ``e^{beta + zH + wf}`` as ``scale * e^{beta' - H'/(r0^2 z) + w f'}``.

    Raises ``AssertionError`` if the closed form disagrees with the
    coefficientwise image, which would mean the transform data is inconsistent.
    """
    z, w = GaussRational.coerce(z), GaussRational.coerce(w)
    if not z:
        raise ZeroDivisionError("z = 0 is a singular parameter")
    X, T, r0 = fm.source, fm.target, fm.r0
    source_exp = _complex_exp(X, fm.beta, [(z, X.H), (w, X.f)])
    linear = apply_gauss(fm, source_exp)
    scale = -r0 * z
    h_coeff = GaussRational(-1) / (z * (r0 * r0))
    image = _complex_exp(T, fm.beta_prime, [(h_coeff, T.H), (w, T.f)])
    assert linear == image.scale(scale), "closed form of the transformed exponential failed"
    return ComplexImage(scale, image)


def omega_prime(fm: FMData, m, n) -> NSVector:
    """``(1/(r0^2 m)) (H' + r0^2 m^2 n f')``."""
    m, n = to_rational(m), to_rational(n)
    r2 = fm.r0 * fm.r0
    T = fm.target
    return ns_combination((1 / (r2 * m), T.H), (m * n, T.f))


def omega_source(fm: FMData, m, n) -> NSVector:
    """``m (H + n f)``."""
    m, n = to_rational(m), to_rational(n)
    X = fm.source
    return ns_combination((m, X.H), (m * n, X.f))


@dataclass(frozen=True)
class StabilityImage:
    quarter_turns: int
    scale: Fraction
    beta_prime: NSVector
    omega_prime: NSVector
    preconditions: tuple  # of Check
    charge_identity: bool


def default_samples(fm: FMData) -> list:
    X = fm.source
    out = [X.one(), X.rho()]
    for i in range(X.ns_rank):
        out.append(CohVector.divisor(tuple(Fraction(int(i == j)) for j in range(X.ns_rank))))
    out.extend(fm.source_basis())
    return out


def stability_image(fm: FMData, m, n, samples=None) -> StabilityImage:
    """Transport ``(beta, m(H + nf))`` to the target and check the charge identity.

    The charge identity is ``Zhat'(apply(v)) * (-i r0 m) = Zhat(v)``, evaluated
    on ``samples`` (basis-type vectors by default).  The charges are computed
    even when the hypotheses fail; the hypotheses are reported, not enforced.
    """
    m, n = to_rational(m), to_rational(n)
    if m <= 0 or n <= 0:
        raise HypothesisError("m and n must be positive")
    X, T, r0 = fm.source, fm.target, fm.r0
    chi = Fraction(X.chi)
    l, l_prime = X.integrality_scale_l, T.integrality_scale_l
    w_src = omega_source(fm, m, n)
    w_tgt = omega_prime(fm, m, n)
    pre = (
        Check("n > r0^2 chi / 2", n > Fraction(r0 * r0) * chi / 2, f"n = {n}"),
        Check(
            "n > l r0^3 / (2n) + chi / 2",
            n > Fraction(l * r0**3) / (2 * n) + chi / 2,
            f"rhs = {Fraction(l * r0 ** 3) / (2 * n) + chi / 2}",
        ),
        Check(
            "2n / r0^2 > r0 l' / (2 m^2 n) + chi / 2",
            2 * n / (r0 * r0) > Fraction(r0 * l_prime) / (2 * m * m * n) + chi / 2,
            "reverse-transform regime",
        ),
        Check("(omega^2) > chi on source", X.sq(w_src) > chi, f"(omega^2) = {X.sq(w_src)}"),
        Check("(omega'^2) > chi on target", T.sq(w_tgt) > T.chi, f"(omega'^2) = {T.sq(w_tgt)}"),
    )
    factor = GaussRational(0, -r0 * m)
    src, tgt = StabilityParams(fm.beta, w_src), StabilityParams(fm.beta_prime, w_tgt)
    samples = default_samples(fm) if samples is None else samples
    identity = all(charge(T, tgt, apply(fm, v)) * factor == charge(X, src, v) for v in samples)
    return StabilityImage(1, r0 * m, fm.beta_prime, w_tgt, pre, identity)


@dataclass(frozen=True)
class FMMatrix:
    M: tuple
    M_inv: tuple
    det: Fraction
    d_block: tuple


def _to_fraction_rows(mat: sympy.Matrix) -> tuple:
    return tuple(
        tuple(Fraction(int(sympy.Rational(x).p), int(sympy.Rational(x).q)) for x in mat.row(i))
        for i in range(mat.rows)
    )


def matrix(fm: FMData) -> FMMatrix:
    """Matrix of the transform from ``(e^beta, He^beta, fe^beta, rho)`` to the primed basis."""
    r0 = sympy.Integer(fm.r0)
    M = sympy.Matrix(
        [
            [0, -r0, 0, 0],
            [1 / r0, 0, 0, 0],
            [0, 0, 0, -r0],
            [0, 0, 1 / r0, 0],
        ]
    )
    return FMMatrix(_to_fraction_rows(M), _to_fraction_rows(M.inv()), Fraction(int(M.det())), fm.d_map)


def _gram(X: SurfaceData, vs) -> list:
    return [[X.pair(a, b) for b in vs] for a in vs]


def validate(fm: FMData) -> list:
    """Evaluate every consistency condition of the transform data; nothing is raised."""
    X, T, r0 = fm.source, fm.target, fm.r0
    checks = []
    sv, tv = X.violations(), T.violations()
    checks.append(Check("source surface invariants", not sv, "; ".join(m for _, m in sv)))
    checks.append(Check("target surface invariants", not tv, "; ".join(m for _, m in tv)))
    checks.append(Check("r0 > 0", r0 > 0, f"r0 = {r0}"))
    v0 = fm.v0
    value = X.pair(X.exp(fm.beta), v0)
    checks.append(Check("<e^beta, v0> = 0", value == 0, f"value = {value}"))
    checks.append(Check("<v0, v0> = 0", X.pair(v0, v0) == 0, f"value = {X.pair(v0, v0)}"))
    coords = v0.flat()
    integral = all(c.denominator == 1 for c in coords)
    g = 0
    for c in coords:
        g = gcd(g, int(c)) if integral else g
    checks.append(Check("v0 primitive", integral and g == 1, f"coords = {[str(c) for c in coords]}"))
    twisted = X.twist(CohVector(0, ns_scale(r0, X.f), 0), fm.beta)
    checks.append(Check("v0 = e^beta (r0 f)", twisted == v0, ""))

    # D-part isometry
    D_basis = orthogonal_complement_basis(X)
    images = [mat_vec(fm.d_map, D) for D in D_basis]
    in_target = all(T.dot(img, T.f) == 0 and T.dot(img, T.H) == 0 for img in images)
    checks.append(Check("d_map lands in f'^perp cap H'^perp", in_target, f"rank {len(D_basis)}"))
    g_src = [[X.dot(a, b) for b in D_basis] for a in D_basis]
    g_tgt = [[T.dot(a, b) for b in images] for a in images]
    checks.append(Check("d_map is an isometry", g_src == g_tgt, ""))

    # the four displayed images and pairing preservation on their span
    sb, tb = fm.source_basis(), fm.target_basis()
    applied = [apply(fm, u) for u in sb]
    expected = [
        tb[1] * Fraction(1, r0),  # r0 e^beta -> H' e^beta', so e^beta -> H' e^beta' / r0
        tb[0] * (-r0),
        tb[3] * Fraction(1, r0),  # v0 = r0 f e^beta -> rho'
        tb[2] * (-r0),  # rho -> -v0'
    ]
    if T.violations():
        checks.append(Check("four basis images", False, "target invariants fail"))
    else:
        checks.append(Check("four basis images", applied == expected, ""))
    checks.append(Check("pairing preserved on rank-4 span", _gram(X, sb) == _gram(T, applied), ""))
    value_prime = T.pair(T.exp(fm.beta_prime), fm.v0_prime)
    checks.append(Check("<e^beta', v0'> = 0", value_prime == 0, f"value = {value_prime}"))
    return checks


class Dim1Image(NamedTuple):
    image: CohVector
    regime_ok: bool
    d: Fraction
    delta: Fraction
    lhs: Fraction
    rhs: Fraction


def dim1_image(fm: FMData, v: CohVector, m, n) -> Dim1Image:
    """Shifted transform of ``v = e^beta (xi + a rho)``, ``a > 0``, and its regime flag.

    The regime inequality is
    ``((omega'^2) - chi)/2 > (d/delta) (d^2 (H'_N^2) - 2pq)/2`` with
    ``N = r0^2 m^2 n``, ``d = a r0 / (2N)`` and ``delta`` taken for ``H'_N``.
    """
    m, n = to_rational(m), to_rational(n)
    X, T, r0 = fm.source, fm.target, fm.r0
    e = X.beta_expand(v, fm.beta)
    if e.r != 0:
        raise HypothesisError(f"need rank 0 after twisting by e^-beta, got r = {e.r}")
    if e.a <= 0:
        raise HypothesisError(f"need a > 0, got a = {e.a}")
    image = -apply(fm, v)
    N = r0 * r0 * m * m * n
    H_N = ns_combination((1, T.H), (N, T.f))
    d = e.a * r0 / (2 * N)
    delta = T.delta_min(H_N)
    w2 = T.sq(omega_prime(fm, m, n))
    lhs = (w2 - X.chi) / 2
    rhs = d / delta * (d * d * T.sq(H_N) - 2 * e.p * e.q) / 2
    return Dim1Image(image, lhs > rhs, d, delta, lhs, rhs)
