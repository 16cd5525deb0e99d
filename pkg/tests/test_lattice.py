import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given

from mukai_kit.errors import DimensionError, DomainError
from mukai_kit.lattice import CohVector, SurfaceData, ns_scale

from conftest import coh_vectors, ns_vectors, rand_coh, rand_ns

SIGMA, F = (1, 0), (0, 1)


def test_dual(X):
    assert X.one().dual() == X.one()
    assert CohVector(0, (1, 1), 0).dual() == CohVector(0, (-1, -1), 0)
    u = CohVector(2, (3, -1), -5)
    assert u.dual().dual() == u


def test_pair_examples(X):
    assert X.pair(X.one(), X.rho()) == -1
    assert X.pair(CohVector(0, (1, 1), 0), CohVector(0, F, 0)) == 1
    for beta in [(0, 0), (1, 0), (Fraction(2, 3), -5)]:
        e = X.exp(beta)
        assert X.pair(e, e) == 0


def test_pair_dimension_error(X, Y):
    with pytest.raises(DimensionError):
        X.pair(X.one(), Y.one())


def test_mul_examples(X):
    u = CohVector(2, (3, -1), -5)
    assert X.mul(X.one(), u) == u
    assert X.mul(X.rho(), X.rho()) == X.zero()
    assert X.mul(CohVector(0, SIGMA, 0), CohVector(0, F, 0)) == CohVector(0, (0, 0), 1)


def test_exp_examples(X):
    assert X.exp((0, 0)) == X.one()
    assert X.exp(SIGMA) == CohVector(1, SIGMA, -1)
    beta = (3, Fraction(-1, 2))
    assert X.mul(X.exp(beta), X.exp(ns_scale(-1, beta))) == X.one()


def test_exp_complex_examples(X):
    e = X.exp_complex((0, 0), (0, 0))
    assert e.re == X.one() and e.im == X.zero()
    # omega = sigma + 3f, (omega^2) = -2 + 6 = 4
    e = X.exp_complex((0, 0), (1, 3))
    assert e.re == CohVector(1, (0, 0), -2)
    assert e.im == CohVector(0, (1, 3), 0)
    assert X.exp_complex(F, (1, 3)).im.s == 1


def test_mukai_vector_examples(X):
    assert X.mukai_vector(X.one()) == CohVector(1, (0, 0), 1)
    assert X.mukai_vector(X.rho()) == X.rho()
    u = CohVector(2, SIGMA, -3)
    assert X.chern_of(X.mukai_vector(u)) == u


def test_beta_expand_examples(X):
    e = X.beta_expand(X.rho(), (0, 0))
    assert (e.r, e.p, e.q, e.D, e.a) == (0, 0, 0, (0, 0), 1)
    e = X.beta_expand(CohVector(0, (1, 1), 0), (0, 0))
    assert (e.p, e.q, e.D) == (1, 0, (0, 0))
    v = CohVector(1, (2, -1), 3)
    assert X.reassemble(X.beta_expand(v, F)) == v


def test_beta_expand_D_orthogonal(Y):
    e = Y.beta_expand(CohVector(1, (2, 5, 3), 1), (1, 0, 1))
    assert Y.dot(e.D, Y.f) == 0 and Y.dot(e.D, Y.H) == 0
    assert e.D == (0, 0, 2)


def brute_delta(X, L, box=20):
    L2 = X.sq(L)
    best = None
    for D in itertools.product(range(-box, box + 1), repeat=X.ns_rank):
        val = X.dot(D, L)
        if val > 0 and (best is None or val < best):
            best = val
    return best / L2


@pytest.mark.parametrize("L", [(1, 3), (2, 6), (1, 5), (Fraction(1, 2), Fraction(5, 2))])
def test_delta_min_matches_enumeration(X, L):
    assert X.delta_min(L) == brute_delta(X, L)


def test_delta_min_values(X):
    assert X.delta_min((1, 3)) == Fraction(1, 4)
    assert X.delta_min((2, 6)) == Fraction(1, 8)


def test_delta_min_rank3(Y):
    L = (1, 4, 1)  # (L^2) = -2 + 8 - 2 = 4
    assert Y.delta_min(L) == brute_delta(Y, L, box=6)


def test_delta_integrality_bound(X):
    # l L integral => every (D.L) is a multiple of 1/l
    for L, l in [((1, 3), 1), ((Fraction(1, 2), Fraction(3, 2)), 2), ((Fraction(1, 3), 2), 3)]:
        assert X.delta_min(L) * l * X.sq(L) >= 1


def test_delta_min_domain(X):
    with pytest.raises(DomainError):
        X.delta_min((1, 0))


def test_beta_solve(X):
    assert X.beta_solve(F, 0, (0, 0)) == (0, 0)
    beta = X.beta_solve(F, 1, (0, 0))
    assert beta == X.H
    assert X.pair(X.exp(beta), CohVector(0, F, 1)) == 0
    beta = X.beta_solve((0, 2), 0, SIGMA)
    assert X.pair(X.exp(beta), CohVector(0, (0, 2), 0)) == 0
    with pytest.raises(DomainError):
        X.beta_solve((0, 0), 1, (0, 0))


def test_surface_violations():
    bad = SurfaceData("bad", 2, [[-2, 1], [1, 0]], (0, 1), (1, 0), (0, 0))
    assert ("H", "H self-intersection must be 0") in bad.violations()


@given(coh_vectors(2), coh_vectors(2))
def test_pair_symmetric(u, w):
    from mukai_kit.fixtures import k3_with_section

    X = k3_with_section()
    assert X.pair(u, w) == X.pair(w, u)
    assert X.pair(u, w) == -X.integrate(X.mul(u.dual(), w))


@given(ns_vectors(2), coh_vectors(2), coh_vectors(2))
def test_twist_isometry(beta, u, w):
    from mukai_kit.fixtures import k3_with_section

    X = k3_with_section()
    e = X.exp(beta)
    assert X.pair(X.mul(e, u), X.mul(e, w)) == X.pair(u, w)


def test_beta_expand_roundtrip_random(Y):
    rng = random.Random(7)
    for _ in range(200):
        v = rand_coh(rng, 3)
        beta = rand_ns(rng, 3)
        assert Y.reassemble(Y.beta_expand(v, beta)) == v
