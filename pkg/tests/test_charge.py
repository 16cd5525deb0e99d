import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from mukai_kit.charge import (
    EQUAL,
    GREATER,
    LESS,
    StabilityParams,
    act_scale_rot,
    hat_geo_check,
    lvl_check,
    lvl_terms,
    phase_cmp,
    z_geo,
    z_hat,
)
from mukai_kit.errors import DomainError, HypothesisError, RegimeError
from mukai_kit.lattice import CohVector
from mukai_kit.scalars import GaussRational

from conftest import coh_vectors, rand_coh, rand_ns, rand_q, rationals

P = StabilityParams((0, 0), (1, 3))


def test_point_charge(X):
    assert z_hat(X, P, X.rho()) == -1
    assert z_geo(X, P, X.rho()) == -1
    assert z_hat(X, StabilityParams((Fraction(1, 3), -7), (2, 5)), X.rho()) == -1


def test_z_geo_structure_sheaf(X):
    assert z_geo(X, P, X.one()) == GaussRational(2, 0)
    assert z_hat(X, P, X.mukai_vector(X.one())) == GaussRational(1, 0)


def test_z_hat_regime(X):
    with pytest.raises(RegimeError):
        z_hat(X, StabilityParams((0, 0), (1, 2)), X.rho())  # (omega^2) = 2


def test_hat_minus_geo_correction(X):
    rng = random.Random(3)
    for _ in range(30):
        ch = rand_coh(rng, 2)
        diff = z_hat(X, P, X.mukai_vector(ch)) - z_geo(X, P, ch)
        assert diff == GaussRational(-ch.r * X.chi / 2)


@given(coh_vectors(2), coh_vectors(2), rationals)
def test_z_hat_bilinear(u, w, c):
    from mukai_kit.fixtures import k3_with_section

    X = k3_with_section()
    assert z_hat(X, P, u + w) == z_hat(X, P, u) + z_hat(X, P, w)
    assert z_hat(X, P, u * c) == z_hat(X, P, u) * c


@pytest.mark.parametrize(
    "z1, z2, expected",
    [
        (GaussRational(-1, 0), GaussRational(0, 1), GREATER),
        (GaussRational(1, 1), GaussRational(2, 2), EQUAL),
        (GaussRational(-1, 1), GaussRational(0, 1), GREATER),
        (GaussRational(1, -1), GaussRational(1, 0), LESS),
        (GaussRational(-1, -1), GaussRational(-1, 0), LESS),
    ],
)
def test_phase_cmp_examples(z1, z2, expected):
    assert phase_cmp(z1, z2) == expected
    assert phase_cmp(z2, z1) == -expected


def test_phase_cmp_zero():
    with pytest.raises(DomainError):
        phase_cmp(0, 1)


def test_phase_cmp_against_atan2():
    import math

    rng = random.Random(11)
    for _ in range(500):
        z1 = GaussRational(rand_q(rng), rand_q(rng))
        z2 = GaussRational(rand_q(rng), rand_q(rng))
        if not z1 or not z2:
            continue
        a1 = math.atan2(z1.im, z1.re)
        a2 = math.atan2(z2.im, z2.re)
        a1, a2 = (math.pi if a == -math.pi else a for a in (a1, a2))
        expected = EQUAL if phase_cmp(z1, z2) == EQUAL and abs(a1 - a2) < 1e-12 else (LESS if a1 < a2 else GREATER)
        if abs(a1 - a2) > 1e-9:
            assert phase_cmp(z1, z2) == expected
        # positive scaling never changes the comparison
        c = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        assert phase_cmp(z1 * c, z2) == phase_cmp(z1, z2)


def test_act_scale_rot():
    z = GaussRational(3, -2)
    assert act_scale_rot(0, 1, z) == z
    assert act_scale_rot(1, 5, 1) == GaussRational(0, -5)
    assert act_scale_rot(4, 1, z) == z
    with pytest.raises(DomainError):
        act_scale_rot(1, 0, z)


def test_hat_geo_examples(X):
    assert hat_geo_check(X, (0, 0), (1, 3), 2, X.rho())
    assert hat_geo_check(X, (0, 0), (1, 3), 2, CohVector(1, (1, 0), 0))
    # rank 0 with (xi.A) = 0: xi = sigma - f has (xi.(sigma+3f)) = -2 + 3 - 1 = 0
    assert hat_geo_check(X, (0, 0), (1, 3), 2, CohVector(0, (1, -1), 5))
    with pytest.raises(RegimeError):
        hat_geo_check(X, (0, 0), (1, 3), Fraction(1, 2), X.rho())


def _sympy_hat_geo(X, beta, A, t, ch):
    """Independent evaluation of both sides with a symbolic square root."""

    def Q(x):
        x = Fraction(x)
        return sympy.Rational(x.numerator, x.denominator)

    n = len(A)
    G = [[Q(X.gram[i][j]) for j in range(n)] for i in range(n)]

    def dot(x, y):
        return sum(G[i][j] * x[i] * y[j] for i in range(n) for j in range(n))

    def pair(u, w):
        return dot(u[1], w[1]) - u[0] * w[2] - u[2] * w[0]

    def exp(b, w):
        ns = [Q(b[i]) + sympy.I * w[i] for i in range(n)]
        return (1, ns, dot(ns, ns) / 2)

    tt = Q(t)
    s = sympy.sqrt(tt**2 - Q(X.chi) / Q(X.sq(A)))
    c = (Q(ch.r), [Q(x) for x in ch.ns], Q(ch.s))
    v = (c[0], c[1], c[2] + c[0] * Q(X.chi) / 2)
    geo = sympy.expand(pair(exp(beta, [s * Q(a) for a in A]), c))
    hat = sympy.expand(pair(exp(beta, [tt * Q(a) for a in A]), v))
    transformed = sympy.re(geo) + sympy.I * sympy.im(geo) * tt / s
    return sympy.simplify(transformed - hat) == 0


def test_hat_geo_matches_symbolic(X):
    rng = random.Random(5)
    A = (1, 3)
    for _ in range(10):
        beta = rand_ns(rng, 2)
        t = Fraction(rng.randint(3, 20), rng.randint(1, 3))
        ch = rand_coh(rng, 2)
        assert hat_geo_check(X, beta, A, t, ch)
        assert _sympy_hat_geo(X, beta, A, t, ch)


def test_lvl_examples(X):
    # xi = 0: holds iff t^2 (L^2) > chi
    L = (1, 3)
    assert lvl_check(X, X.rho(), (0, 0), L, 1)
    assert not lvl_check(X, X.rho() * 0 + CohVector(1, (0, 0), 0), (0, 0), L, Fraction(1, 2))
    terms = lvl_terms(X, CohVector(0, (0, 1), 0), (0, 0), (1, 5), 3)
    # v = f, L = sigma + 5f: (L^2) = 8, d = 1/8, delta = 1/8
    assert terms.d == Fraction(1, 8) and terms.delta == Fraction(1, 8)
    assert terms.lhs == 35 and terms.rhs == Fraction(1, 8)
    assert lvl_check(X, CohVector(0, (0, 1), 0), (0, 0), (1, 5), 3)


def test_lvl_m1_n2(X):
    # Same data with m = 1: L = H + 2f = sigma + 3f, (L^2) = 4
    v, L = CohVector(0, (0, 1), 0), (1, 3)
    t = lvl_terms(X, v, (0, 0), L, 1)
    d = Fraction(X.dot((0, 1), L), X.sq(L))
    assert t.lhs == Fraction(4 - 2, 2)
    assert t.rhs == d / X.delta_min(L) * (0 + d * d * X.sq(L))
    assert lvl_check(X, v, (0, 0), L, 1) == (t.lhs > t.rhs)


def test_lvl_negative_rank(X):
    with pytest.raises(HypothesisError):
        lvl_check(X, CohVector(-1, (0, 0), 0), (0, 0), (1, 3), 5)


def test_lvl_monotone(X):
    rng = random.Random(9)
    for _ in range(60):
        v = rand_coh(rng, 2)
        v = CohVector(abs(v.r), v.ns, v.s)
        ts = sorted({Fraction(rng.randint(1, 40), rng.randint(1, 4)) for _ in range(6)})
        flags = [lvl_check(X, v, (0, 0), (1, 3), t) for t in ts]
        first = flags.index(True) if True in flags else len(flags)
        assert all(flags[first:])
