"""Acceptance criteria, all at exact equality.

Each test prints one ``PASS``/``FAIL`` line; the lines are repeated in the
pytest terminal summary.  ``python tests/test_acceptance.py`` runs the same
checks without pytest.
"""

import json
import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import sympy

sys.path.insert(0, str(Path(__file__).parent))

from conftest import rand_coh, rand_ns, rand_q  # noqa: E402

from mukai_kit.charge import hat_geo_check  # noqa: E402
from mukai_kit.cli import main  # noqa: E402
from mukai_kit.config import dump_config, load_config  # noqa: E402
from mukai_kit.fixtures import k3_with_a1_fiber, k3_with_section, relative_fm  # noqa: E402
from mukai_kit.fm import apply, apply_complex, apply_gauss, dim1_image  # noqa: E402
from mukai_kit.lattice import CohVector  # noqa: E402
from mukai_kit.scalars import GaussRational  # noqa: E402
from mukai_kit.walls import (  # noqa: E402
    WallProblem,
    brute_oracle,
    chamber_signature,
    classify_f_walls,
    f_u_terms,
    scan,
    xi_class,
    xi_direct,
)

DATA = Path(__file__).parent / "data"
RESULTS = []


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number:2d}: {title}" + (f" ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def _ns_scale(c, xs):
    return tuple(c * x for x in xs)


def test_criterion_01_isometry():
    X = k3_with_section()
    rng = random.Random(101)
    bad = 0
    for r0 in (1, 2):
        fm = relative_fm(X, r0)
        for _ in range(200):
            u, w = rand_coh(rng, 2), rand_coh(rng, 2)
            bad += fm.target.pair(apply(fm, u), apply(fm, w)) != X.pair(u, w)
    record(1, "transform preserves the Mukai pairing", bad == 0, f"2 x 200 pairs, {bad} mismatches")


def test_criterion_02_fiber_twist():
    rng = random.Random(102)
    bad = 0
    for X in (k3_with_section(), k3_with_a1_fiber()):
        fm = relative_fm(X, 2)
        T = fm.target
        for _ in range(50):
            u, lam = rand_coh(rng, X.ns_rank), rand_q(rng)
            lhs = apply(fm, X.mul(u, X.exp(_ns_scale(lam, X.f))))
            rhs = T.mul(apply(fm, u), T.exp(_ns_scale(lam, T.f)))
            bad += lhs != rhs
    record(2, "transform commutes with fiber twists", bad == 0, f"2 x 50 draws, {bad} mismatches")


def test_criterion_03_basis_images():
    X = k3_with_section()
    bad = []
    for r0 in (1, 2, 3):
        fm = relative_fm(X, r0)
        T = fm.target
        e, ep = X.exp(fm.beta), T.exp(fm.beta_prime)
        H_e = X.mul(CohVector.divisor(X.H), e)
        Hp_ep = T.mul(CohVector.divisor(T.H), ep)
        v0p = T.mul(CohVector.divisor(_ns_scale(r0, T.f)), ep)
        checks = [
            apply(fm, e * r0) == Hp_ep,
            apply(fm, H_e) == ep * (-r0),
            apply(fm, X.mul(CohVector.divisor(_ns_scale(r0, X.f)), e)) == T.rho(),
            apply(fm, fm.v0) == T.rho(),
            apply(fm, X.rho()) == -v0p,
        ]
        if not all(checks):
            bad.append(r0)
    record(3, "general formula reproduces the four basis images", not bad, "r0 in {1,2,3}")


def test_criterion_04_hat_geo():
    X = k3_with_section()
    rng = random.Random(104)
    bad = 0
    for _ in range(100):
        while True:
            A = (rng.randint(1, 3), rng.randint(2, 6))
            if X.sq(A) > 0:
                break
        tmin = Fraction(X.chi, X.sq(A))
        t = Fraction(rng.randint(1, 30), rng.randint(1, 4))
        while t * t <= tmin:
            t += 1
        bad += not hat_geo_check(X, rand_ns(rng, 2), A, t, rand_coh(rng, 2))
    record(4, "charge identity for the hat charge in Q(sqrt d)", bad == 0, f"100 draws, {bad} failures")


def test_criterion_05_elliptic_exponential():
    bad = []
    for X in (k3_with_section(), k3_with_a1_fiber()):
        for r0 in (1, 2):
            fm = relative_fm(X, r0)
            T = fm.target
            for m in (2, 5):
                for n in (3, 7):
                    z, w = GaussRational(0, m), GaussRational(0, m * n)
                    res = apply_complex(fm, z, w)
                    source = X.exp_complex(fm.beta, _ns_scale(m, tuple(h + n * f for h, f in zip(X.H, X.f))))
                    termwise = apply_gauss(fm, source)
                    omega_p = tuple(Fraction(1, r0 * r0 * m) * (h + r0 * r0 * m * m * n * f) for h, f in zip(T.H, T.f))
                    target = T.exp_complex(fm.beta_prime, omega_p)
                    factor = GaussRational(0, -r0 * m)
                    ok = res.scale == factor and termwise == res.image.scale(res.scale) and termwise == target.scale(factor)
                    if not ok:
                        bad.append((X.name, r0, m, n))
    record(5, "transformed complex exponential has the closed form", not bad, "16 parameter sets")


def test_criterion_06_xi_identity():
    rng = random.Random(106)
    bad = 0
    for X in (k3_with_section(), k3_with_a1_fiber()):
        for ell in (1, 2, 3):
            P = WallProblem(X, ell)
            for _ in range(100):
                b, w = rand_ns(rng, X.ns_rank), rand_ns(rng, X.ns_rank)
                xc = xi_class(P, b, w)
                bad += xc != xi_direct(P, b, w) or X.pair(xc, P.v) != 0
    record(6, "closed form of xi equals its definition and lies in v-perp", bad == 0, f"600 draws, {bad} failures")


def test_criterion_07_wall_oracle():
    start = time.perf_counter()
    bad = []
    sizes = []
    for X in (k3_with_section(), k3_with_a1_fiber()):
        for ell in (1, 2, 3):
            P = WallProblem(X, ell)
            oracle = set(brute_oracle(P, 3))
            classified = {w.key for w in classify_f_walls(P, 3)}
            sizes.append(len(classified))
            if oracle != classified:
                bad.append((X.name, ell))
    elapsed = time.perf_counter() - start
    record(7, "wall classification equals brute-force oracle", not bad and elapsed < 10, f"walls {sizes}, {elapsed:.2f}s")


def _pair_at(P, X, u, t2, beta_p, H_p, f_p, r0, m, n):
    t = sympy.Symbol("t", positive=True)
    Q = lambda x: sympy.Rational(Fraction(x).numerator, Fraction(x).denominator)  # noqa: E731
    omega = [Fraction(1, r0 * r0) / m * h + m * n * f for h, f in zip(H_p, f_p)]
    bw, w2, b2 = X.dot(beta_p, omega), X.sq(omega), X.sq(beta_p)
    nu_b = P.nu + CohVector.divisor(beta_p)
    c_om = Q(P.ell) - Q(b2) / 2 + t**2 * Q(w2) / 2
    poly = t * (Q(bw) * Q(X.pair(nu_b, u)) + c_om * Q(X.pair(CohVector.divisor(tuple(omega)), u)))
    return sympy.simplify(poly.subs(t, sympy.sqrt(Q(t2))))


def test_criterion_08_scan_soundness():
    bad = []
    total = 0
    for X in (k3_with_section(), k3_with_a1_fiber()):
        beta_p = (-1,) + (0,) * (X.ns_rank - 1)
        for ell in (1, 2, 3):
            P = WallProblem(X, ell)
            for m, n in ((10, 5), (Fraction(25, 2), 3)):
                m, n = Fraction(m), Fraction(n)
                hits = scan(P, beta_p, 1, m, n, 100)
                t2s = [h.t2 for h in hits]
                if any(a > b for a, b in zip(t2s, t2s[1:])) or len({(h.t2, h.wall.key) for h in hits}) != len(hits):
                    bad.append(("order", X.name, ell))
                for h in hits:
                    total += 1
                    lhs, rhs = f_u_terms(P, h.wall.u, beta_p, X.H, X.f, 1, m, n)
                    if not (lhs < rhs < 0):
                        bad.append(("f-u", X.name, ell, h.t2))
                    if _pair_at(P, X, h.wall.u, h.t2, beta_p, X.H, X.f, 1, m, n) != 0:
                        bad.append(("hit", X.name, ell, h.t2))
    record(8, "every scanned wall solves the hit equation and both inequalities", not bad and total > 0, f"{total} hits")


def test_criterion_09_chamber_limit():
    P = WallProblem(k3_with_section(), 1)
    coeffs = [chamber_signature(P, (-1, 0), 1, m, n).nu_beta_coeff for n, m in ((10, 10**2), (10**2, 10**4), (10**3, 10**6))]
    mags = [abs(c) for c in coeffs]
    ok = mags[0] > mags[1] > mags[2]
    record(9, "chamber signature approaches the fiber class", ok, ", ".join(str(c) for c in coeffs))


def _independent_dim1(X, r0, beta, xi, a, m, n):
    """Regime flag and d evaluated from scratch for v = e^beta (xi + a rho)."""
    N = r0 * r0 * m * m * n
    H_N = tuple(h + N * f for h, f in zip(X.H, X.f))
    p, q = X.dot(xi, X.f), X.dot(xi, X.H)
    H_N2 = X.sq(H_N)
    vals = [sum(X.gram[i][j] * H_N[j] for j in range(X.ns_rank)) for i in range(X.ns_rank)]
    den = math.lcm(*(Fraction(v).denominator for v in vals))
    g = math.gcd(*(int(Fraction(v) * den) for v in vals))
    delta = Fraction(g, den) / H_N2
    d = Fraction(a * r0, 2 * N)
    lhs = (Fraction(2 * n, r0 * r0) - X.chi) / 2
    rhs = d / delta * (d * d * H_N2 - 2 * p * q) / 2
    return lhs > rhs, d


def test_criterion_10_dim1_shadow():
    rng = random.Random(110)
    X = k3_with_section()
    bad = 0
    flags = []
    for _ in range(20):
        r0 = rng.choice((1, 2))
        fm = relative_fm(X, r0)
        xi = (rng.randint(-3, 3), rng.randint(-3, 3))
        a = Fraction(rng.randint(1, 6))
        m = Fraction(rng.randint(1, 60), rng.randint(1, 3))
        n = Fraction(rng.randint(1, 20))
        v = X.twist(CohVector(0, xi, a), fm.beta)
        res = dim1_image(fm, v, m, n)
        ok_flag, d = _independent_dim1(X, r0, fm.beta, xi, a, m, n)
        flags.append(ok_flag)
        bad += res.image != -apply(fm, v) or res.d != d or res.regime_ok != ok_flag
    detail = f"20 draws, {sum(flags)} in regime, {bad} mismatches"
    record(10, "shifted transform of torsion classes and its regime flag", bad == 0 and 0 < sum(flags) < 20, detail)


def test_criterion_11_cli_golden(tmp_path=None):
    import contextlib
    import io
    import tempfile

    config = DATA / "k3_section.json"
    commands = {
        "walls_classify.json": ["walls-classify", "--ell", "1", "--k-bound", "2"],
        "fm_stability.json": ["fm-stability", "--m", "5", "--n", "3"],
        "pair.json": ["pair", "--u", "1,0,0,0", "--v", "0,0,0,1"],
    }
    bad = []
    for name, args in commands.items():
        outs = []
        for _ in range(2):
            buf = io.StringIO()
            with contextlib.redirect_stdout(buf):
                code = main([args[0], "--config", str(config), *args[1:]])
            outs.append((code, buf.getvalue()))
        golden = (DATA / "golden" / name).read_text(encoding="utf-8")
        if outs[0] != outs[1] or outs[0][0] != 0 or outs[0][1] != golden:
            bad.append(name)
    cfg = load_config(config)
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "round.json"
        path.write_text(dump_config(cfg))
        again = load_config(path)
    if again != cfg or json.loads(dump_config(again)) != json.loads(dump_config(cfg)):
        bad.append("round-trip")
    record(11, "CLI reports are byte-identical to goldens; config round-trips", not bad, ", ".join(bad))


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
