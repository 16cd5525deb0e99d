"""Exact arithmetic in the algebraic cohomology ``Q + NS(X)_Q + Q*rho`` of a surface.

A class ``r + xi + s*rho`` is stored as a :class:`CohVector` whose NS part is a
coordinate tuple against the basis declared by a :class:`SurfaceData`.  All
pairings go through the surface's Gram matrix, so every operation that needs
intersection numbers is a method of :class:`SurfaceData`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionError, DomainError
from .scalars import GaussRational, fmt_rational, to_rational

NSVector = tuple  # tuple[Fraction, ...]


def ns_vector(coords: Iterable) -> NSVector:
    return tuple(to_rational(c) for c in coords)


def ns_add(a: NSVector, b: NSVector) -> NSVector:
    if len(a) != len(b):
        raise DimensionError(f"NS rank mismatch: {len(a)} vs {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def ns_scale(c, a: NSVector) -> NSVector:
    c = to_rational(c)
    return tuple(c * x for x in a)


def ns_sub(a: NSVector, b: NSVector) -> NSVector:
    return ns_add(a, ns_scale(-1, b))


def ns_zero(rank: int) -> NSVector:
    return (Fraction(0),) * rank


def ns_combination(*terms) -> NSVector:
    """``ns_combination((c1, v1), (c2, v2), ...)`` returns ``sum ci*vi``."""
    out = None
    for c, v in terms:
        part = ns_scale(c, v)
        out = part if out is None else ns_add(out, part)
    return out


@dataclass(frozen=True)
class CohVector:
    """``r + ns + s*rho`` with rational coefficients."""

    r: Fraction
    ns: NSVector
    s: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", to_rational(self.r))
        object.__setattr__(self, "ns", ns_vector(self.ns))
        object.__setattr__(self, "s", to_rational(self.s))

    @classmethod
    def zero(cls, rank: int) -> CohVector:
        return cls(0, ns_zero(rank), 0)

    @classmethod
    def unit(cls, rank: int) -> CohVector:
        return cls(1, ns_zero(rank), 0)

    @classmethod
    def point(cls, rank: int) -> CohVector:
        """The class rho with integral 1."""
        return cls(0, ns_zero(rank), 1)

    @classmethod
    def divisor(cls, ns) -> CohVector:
        ns = ns_vector(ns)
        return cls(0, ns, 0)

    @classmethod
    def from_flat(cls, coords: Sequence) -> CohVector:
        """Build from ``(r, ns_1, ..., ns_k, s)``."""
        if len(coords) < 2:
            raise DimensionError("need at least rank and rho coordinates")
        return cls(coords[0], coords[1:-1], coords[-1])

    def flat(self) -> tuple:
        return (self.r, *self.ns, self.s)

    def __str__(self):
        ns = ", ".join(fmt_rational(x) for x in self.ns)
        return f"({fmt_rational(self.r)}; {ns}; {fmt_rational(self.s)})"

    @property
    def rank(self) -> int:
        return len(self.ns)

    def dual(self) -> CohVector:
        return CohVector(self.r, ns_scale(-1, self.ns), self.s)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.flat())

    def __add__(self, other):
        if not isinstance(other, CohVector):
            return NotImplemented
        return CohVector(self.r + other.r, ns_add(self.ns, other.ns), self.s + other.s)

    def __neg__(self):
        return CohVector(-self.r, ns_scale(-1, self.ns), -self.s)

    def __sub__(self, other):
        if not isinstance(other, CohVector):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        try:
            c = to_rational(c)
        except TypeError:
            return NotImplemented
        return CohVector(c * self.r, ns_scale(c, self.ns), c * self.s)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / to_rational(c))


@dataclass(frozen=True)
class GaussCohVector:
    """A class with Gaussian-rational coefficients, stored as ``re + i*im``."""

    re: CohVector
    im: CohVector

    @classmethod
    def real(cls, v: CohVector) -> GaussCohVector:
        return cls(v, CohVector.zero(v.rank))

    def __add__(self, other):
        if not isinstance(other, GaussCohVector):
            return NotImplemented
        return GaussCohVector(self.re + other.re, self.im + other.im)

    def __neg__(self):
        return GaussCohVector(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, z) -> GaussCohVector:
        """Multiply by a Gaussian-rational scalar."""
        z = GaussRational.coerce(z)
        return GaussCohVector(self.re * z.re - self.im * z.im, self.re * z.im + self.im * z.re)

    def conjugate(self) -> GaussCohVector:
        return GaussCohVector(self.re, -self.im)


@dataclass(frozen=True)
class BetaExpansion:
    """``v = e^beta (r + p*H + q*f + D + a*rho)`` with ``D`` orthogonal to H and f."""

    beta: NSVector
    r: Fraction
    p: Fraction
    q: Fraction
    D: NSVector
    a: Fraction
    basis: str = "mukai"


def _fraction_matrix(rows) -> tuple:
    return tuple(tuple(to_rational(x) for x in row) for row in rows)


@dataclass(frozen=True)
class SurfaceData:
    """Neron-Severi lattice of an elliptic surface plus its distinguished classes.

    The basis of NS is assumed to be a Z-basis; ``gram`` is the intersection
    matrix in that basis.  ``f`` is the fiber class, ``H`` a class normalized to
    ``(H.f) = 1`` and ``(H^2) = 0``, ``K`` the canonical class.
    """

    name: str
    chi: int
    gram: tuple
    f: NSVector
    H: NSVector
    K: NSVector
    minus2_fiber_classes: tuple = ()
    integrality_scale_l: int = 1
    basis_names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        gram = _fraction_matrix(self.gram)
        n = len(gram)
        if n == 0 or any(len(row) != n for row in gram):
            raise DimensionError("gram must be a non-empty square matrix")
        object.__setattr__(self, "gram", gram)
        for name in ("f", "H", "K"):
            vec = ns_vector(getattr(self, name))
            if len(vec) != n:
                raise DimensionError(f"{name} has {len(vec)} coordinates, NS rank is {n}")
            object.__setattr__(self, name, vec)
        classes = tuple(ns_vector(d) for d in self.minus2_fiber_classes)
        for d in classes:
            if len(d) != n:
                raise DimensionError("(-2)-class with wrong number of coordinates")
        object.__setattr__(self, "minus2_fiber_classes", classes)
        object.__setattr__(self, "chi", int(self.chi))
        object.__setattr__(self, "integrality_scale_l", int(self.integrality_scale_l))
        if not self.basis_names:
            object.__setattr__(self, "basis_names", tuple(f"e{i}" for i in range(n)))

    # -- lattice -------------------------------------------------------------

    @property
    def ns_rank(self) -> int:
        return len(self.gram)

    def dot(self, x: NSVector, y: NSVector) -> Fraction:
        """Intersection number ``(x . y)``."""
        n = self.ns_rank
        if len(x) != n or len(y) != n:
            raise DimensionError(f"NS rank is {n}, got vectors of length {len(x)} and {len(y)}")
        return sum(
            (x[i] * self.gram[i][j] * y[j] for i in range(n) for j in range(n) if x[i] and y[j]),
            Fraction(0),
        )

    def sq(self, x: NSVector) -> Fraction:
        return self.dot(x, x)

    def violations(self) -> list:
        """Names of violated invariants; empty when the data is consistent."""
        out = []
        n = self.ns_rank
        if any(self.gram[i][j] != self.gram[j][i] for i in range(n) for j in range(n)):
            out.append(("gram", "gram must be symmetric"))
        if self.sq(self.f) != 0:
            out.append(("f", "f self-intersection must be 0"))
        if self.dot(self.H, self.f) != 1:
            out.append(("H", "(H.f) must be 1"))
        if self.sq(self.H) != 0:
            out.append(("H", "H self-intersection must be 0"))
        if self.dot(self.K, self.f) != 0:
            out.append(("K", "(K.f) must be 0"))
        for k, d in enumerate(self.minus2_fiber_classes):
            if self.sq(d) != -2:
                out.append((f"minus2_fiber_classes[{k}]", "class must have self-intersection -2"))
            if self.dot(d, self.f) != 0:
                out.append((f"minus2_fiber_classes[{k}]", "class must be orthogonal to f"))
        if self.integrality_scale_l <= 0:
            out.append(("integrality_scale_l", "must be a positive integer"))
        elif any((self.integrality_scale_l * c).denominator != 1 for c in self.H):
            out.append(("integrality_scale_l", "l*H must be integral"))
        return out

    def zero(self) -> CohVector:
        return CohVector.zero(self.ns_rank)

    def one(self) -> CohVector:
        return CohVector.unit(self.ns_rank)

    def rho(self) -> CohVector:
        return CohVector.point(self.ns_rank)

    def vector(self, r, ns, s) -> CohVector:
        v = CohVector(r, ns, s)
        self._check(v)
        return v

    def _check(self, *vs: CohVector):
        for v in vs:
            if v.rank != self.ns_rank:
                raise DimensionError(f"vector has NS rank {v.rank}, surface {self.name!r} has {self.ns_rank}")

    # -- Mukai lattice -------------------------------------------------------

    def pair(self, u: CohVector, w: CohVector) -> Fraction:
        """Mukai pairing ``(x1.y1) - x0*y2 - x2*y0``."""
        self._check(u, w)
        return self.dot(u.ns, w.ns) - u.r * w.s - u.s * w.r

    def pair_complex(self, u, w) -> GaussRational:
        """Bilinear (not sesquilinear) extension of the pairing to Gaussian vectors."""
        if isinstance(u, CohVector):
            u = GaussCohVector.real(u)
        if isinstance(w, CohVector):
            w = GaussCohVector.real(w)
        re = self.pair(u.re, w.re) - self.pair(u.im, w.im)
        im = self.pair(u.re, w.im) + self.pair(u.im, w.re)
        return GaussRational(re, im)

    def integrate(self, u: CohVector) -> Fraction:
        return u.s

    def mul(self, u: CohVector, w: CohVector) -> CohVector:
        """Cup product truncated in degree > 4."""
        self._check(u, w)
        return CohVector(
            u.r * w.r,
            ns_add(ns_scale(u.r, w.ns), ns_scale(w.r, u.ns)),
            u.r * w.s + w.r * u.s + self.dot(u.ns, w.ns),
        )

    def mul_complex(self, u: GaussCohVector, w: GaussCohVector) -> GaussCohVector:
        return GaussCohVector(
            self.mul(u.re, w.re) - self.mul(u.im, w.im),
            self.mul(u.re, w.im) + self.mul(u.im, w.re),
        )

    def exp(self, beta) -> CohVector:
        """``e^beta = 1 + beta + (beta^2)/2 rho``."""
        beta = ns_vector(beta)
        return CohVector(1, beta, self.sq(beta) / 2)

    def exp_complex(self, beta, omega) -> GaussCohVector:
        """``e^{beta + i*omega}``."""
        beta, omega = ns_vector(beta), ns_vector(omega)
        re = CohVector(1, beta, (self.sq(beta) - self.sq(omega)) / 2)
        im = CohVector(0, omega, self.dot(beta, omega))
        return GaussCohVector(re, im)

    def twist(self, v: CohVector, beta) -> CohVector:
        """``e^beta * v``."""
        return self.mul(self.exp(beta), v)

    def mukai_vector(self, ch: CohVector) -> CohVector:
        """``v = ch * (1 + chi/2 rho)``."""
        self._check(ch)
        return CohVector(ch.r, ch.ns, ch.s + ch.r * Fraction(self.chi, 2))

    def chern_of(self, v: CohVector) -> CohVector:
        self._check(v)
        return CohVector(v.r, v.ns, v.s - v.r * Fraction(self.chi, 2))

    # -- expansions ----------------------------------------------------------

    def beta_expand(self, v: CohVector, beta, basis: str = "mukai") -> BetaExpansion:
        """Write ``v = e^beta (r + p*H + q*f + D + a*rho)`` with ``D`` in f^perp and H^perp."""
        beta = ns_vector(beta)
        w = self.twist(v, ns_scale(-1, beta))
        p = self.dot(w.ns, self.f)
        q = self.dot(w.ns, self.H)
        D = ns_sub(w.ns, ns_add(ns_scale(p, self.H), ns_scale(q, self.f)))
        return BetaExpansion(beta, w.r, p, q, D, w.s, basis)

    def expansion_xi(self, e: BetaExpansion) -> NSVector:
        return ns_add(ns_add(ns_scale(e.p, self.H), ns_scale(e.q, self.f)), e.D)

    def reassemble(self, e: BetaExpansion) -> CohVector:
        return self.twist(CohVector(e.r, self.expansion_xi(e), e.a), e.beta)

    def delta_min(self, L) -> Fraction:
        """``min{(D.L) > 0 : D in NS} / (L^2)``.

        The values of ``D -> (D.L)`` on the lattice form the subgroup of Q
        generated by the values on a basis, so the minimum is their gcd.
        """
        L = ns_vector(L)
        L2 = self.sq(L)
        if L2 <= 0:
            raise DomainError(f"delta_min needs (L^2) > 0, got {L2}")
        values = [sum((self.gram[i][j] * L[j] for j in range(self.ns_rank)), Fraction(0)) for i in range(self.ns_rank)]
        return rational_gcd(values) / L2

    def beta_solve(self, eta, b, beta0) -> NSVector:
        """Shift ``beta0`` along H so that ``<e^beta, eta + b*rho> = 0``.

        ``<e^{beta0 + yH}, v0> = <e^{beta0}, v0> + y (H.eta)``, so
        ``y = -<e^{beta0}, v0> / (H.eta)``.
        """
        eta, beta0 = ns_vector(eta), ns_vector(beta0)
        h_eta = self.dot(self.H, eta)
        if h_eta == 0:
            raise DomainError("(H.eta) = 0: cannot solve along H")
        v0 = CohVector(0, eta, to_rational(b))
        y = -self.pair(self.exp(beta0), v0) / h_eta
        return ns_add(beta0, ns_scale(y, self.H))


def rational_gcd(values: Iterable) -> Fraction:
    """Positive generator of the subgroup of Q spanned by ``values`` (0 if all vanish)."""
    values = [to_rational(v) for v in values]
    den = lcm(*(v.denominator for v in values)) if values else 1
    g = 0
    for v in values:
        g = gcd(g, int(v * den))
    return Fraction(g, den)
