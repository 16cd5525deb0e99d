"""``mukai-kit`` command line tool.

Every command reads a JSON config (see :mod:`mukai_kit.config`), runs one
library operation and prints a report.  Exact values are ``"p/q"`` strings;
anything under ``"display"`` is a float rendering for humans only.

Exit codes: 0 success, 1 input error, 2 regime or hypothesis failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from . import charge as cc
from . import fm as fmt
from . import walls as wk
from .config import ConfigFile, load_config
from .errors import ConfigError, HypothesisError, MukaiError, RegimeError
from .lattice import CohVector, SurfaceData
from .scalars import fmt_rational, to_rational
from .svg import emit_plot

COMMANDS = (
    "pair",
    "charge",
    "fm-apply",
    "fm-stability",
    "lvl-check",
    "walls-classify",
    "walls-scan",
    "chamber",
    "validate",
)

EXIT_OK, EXIT_INPUT, EXIT_REGIME = 0, 1, 2


class InputError(MukaiError):
    pass


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    display: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    rows: list = field(default_factory=list)  # CSV only
    exit_code: int = EXIT_OK

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "display": {"display_only": True, **self.display},
            "checks": self.checks,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        rows = self.rows
        if rows:
            header = list(rows[0])
            writer.writerow(header)
            for row in rows:
                writer.writerow([_csv_cell(row[h]) for h in header])
        else:
            writer.writerow(["name", "value"])
            for name, value in _flatten(self.results):
                writer.writerow([name, value])
            for c in self.checks:
                writer.writerow([f"check:{c['name']}", "pass" if c["passed"] else "fail"])
        return buf.getvalue()


def _csv_cell(x):
    if isinstance(x, (list, tuple)):
        return " ".join(str(y) for y in x)
    return x


def _flatten(d, prefix=""):
    for k in sorted(d):
        v = d[k]
        name = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flatten(v, name + ".")
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            for i, item in enumerate(v):
                yield from _flatten(item, f"{name}[{i}].")
        else:
            yield name, _csv_cell(v)


def vec_str(xs):
    return [fmt_rational(x) for x in xs]


def coh_str(v: CohVector) -> dict:
    return {"r": fmt_rational(v.r), "ns": vec_str(v.ns), "s": fmt_rational(v.s)}


def gauss_str(z) -> dict:
    return {"re": fmt_rational(z.re), "im": fmt_rational(z.im)}


def _check_dict(c) -> dict:
    return {"name": c.name, "passed": bool(c.passed), "detail": c.detail}


def parse_vector(text, n=None, what="vector"):
    if text is None:
        raise InputError(f"missing --{what}")
    try:
        xs = tuple(to_rational(t) for t in text.split(","))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"--{what}: exact rationals required ({exc})") from exc
    if n is not None and len(xs) != n:
        raise InputError(f"--{what} needs {n} comma-separated entries, got {len(xs)}")
    return xs


def parse_coh(text, X: SurfaceData, what):
    return CohVector.from_flat(parse_vector(text, X.ns_rank + 2, what))


def parse_scalar(text, what):
    if text is None:
        raise InputError(f"missing --{what}")
    try:
        return to_rational(text)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"--{what}: exact rational required") from exc


def _need_fm(cfg: ConfigFile):
    if cfg.fm is None:
        raise InputError("this command needs an fm block in the config")
    return cfg.fm


def _wall_setup(cfg: ConfigFile, flags, need_scan: bool):
    if need_scan and cfg.wall is None:
        raise InputError("this command needs a wall block in the config")
    w = cfg.wall
    X = cfg.surface
    if w is not None and w.use_target:
        X = _need_fm(cfg).target
    ell = flags.ell if flags.ell is not None else (w.ell if w else None)
    if ell is None:
        raise InputError("missing --ell (or wall.ell)")
    params = {"ell": int(ell)}
    if need_scan:
        beta = parse_vector(flags.beta_prime, X.ns_rank, "beta-prime") if flags.beta_prime else w.beta_prime
        r0 = flags.r0 if flags.r0 is not None else (w.r0 or (cfg.fm.r0 if cfg.fm else 1))
        m = parse_scalar(flags.m, "m") if flags.m else w.m
        n = parse_scalar(flags.n, "n") if flags.n else w.n
        t_max = parse_scalar(flags.t_max, "t-max") if flags.t_max else w.t_max
        if beta is None or m is None or n is None:
            raise InputError("wall block needs beta_prime, m and n")
        params.update(beta_prime=beta, r0=int(r0), m=m, n=n, t_max=t_max)
    k_bound = flags.k_bound if flags.k_bound is not None else (w.k_bound if w else None)
    params["k_bound"] = k_bound
    return wk.WallProblem(X, params["ell"]), params


def _wall_row(w: wk.Wall) -> dict:
    return {"key": list(w.key), "tag": w.tag, "u": coh_str(w.u)}


def cmd_pair(cfg, flags, rep: Report):
    X = cfg.surface
    u, v = parse_coh(flags.u, X, "u"), parse_coh(flags.v, X, "v")
    rep.inputs.update(u=vec_str(u.flat()), v=vec_str(v.flat()))
    value = X.pair(u, v)
    rep.results["pair"] = fmt_rational(value)
    rep.display["pair"] = float(value)


def cmd_charge(cfg, flags, rep: Report):
    X = cfg.surface
    beta = parse_vector(flags.beta, X.ns_rank, "beta")
    omega = parse_vector(flags.omega, X.ns_rank, "omega")
    v = parse_coh(flags.v, X, "v")
    params = cc.StabilityParams(beta, omega)
    rep.inputs.update(beta=vec_str(beta), omega=vec_str(omega), v=vec_str(v.flat()), chern=bool(flags.chern))
    z = cc.z_geo(X, params, v) if flags.chern else cc.z_hat(X, params, v)
    rep.results["charge"] = gauss_str(z)
    rep.display["charge"] = [float(z.re), float(z.im)]


def cmd_fm_apply(cfg, flags, rep: Report):
    fm = _need_fm(cfg)
    v = parse_coh(flags.v, fm.source, "v")
    rep.inputs["v"] = vec_str(v.flat())
    rep.results["image"] = coh_str(fmt.apply(fm, v))


def cmd_fm_stability(cfg, flags, rep: Report):
    fm = _need_fm(cfg)
    m, n = parse_scalar(flags.m, "m"), parse_scalar(flags.n, "n")
    rep.inputs.update(m=fmt_rational(m), n=fmt_rational(n))
    img = fmt.stability_image(fm, m, n)
    r2 = fm.r0 * fm.r0
    rep.results.update(
        alpha={"quarter_turns": img.quarter_turns, "scale": fmt_rational(img.scale)},
        beta_prime=vec_str(img.beta_prime),
        omega_prime=vec_str(img.omega_prime),
        omega_prime_expr=f"{fmt_rational(1 / (r2 * m))}·H' + {fmt_rational(m * n)}·f'",
        hypotheses=[c.passed for c in img.preconditions[:2]],
        charge_identity=img.charge_identity,
    )
    rep.checks = [_check_dict(c) for c in img.preconditions]
    rep.checks.append({"name": "charge identity", "passed": img.charge_identity, "detail": ""})
    if not all(rep.results["hypotheses"]) or not img.charge_identity:
        rep.exit_code = EXIT_REGIME


def cmd_lvl_check(cfg, flags, rep: Report):
    X = cfg.surface
    v = parse_coh(flags.v, X, "v")
    beta = parse_vector(flags.beta, X.ns_rank, "beta")
    L = parse_vector(flags.L, X.ns_rank, "L")
    t = parse_scalar(flags.t, "t")
    rep.inputs.update(v=vec_str(v.flat()), beta=vec_str(beta), L=vec_str(L), t=fmt_rational(t))
    terms = cc.lvl_terms(X, v, beta, L, t)
    ok = terms.lhs > terms.rhs
    rep.results.update(
        case=terms.case,
        lhs=fmt_rational(terms.lhs),
        rhs=fmt_rational(terms.rhs),
        d=fmt_rational(terms.d),
        delta=fmt_rational(terms.delta),
        holds=ok,
    )
    rep.checks.append({"name": "large volume inequality", "passed": ok, "detail": ""})
    if not ok:
        rep.exit_code = EXIT_REGIME


def cmd_walls_classify(cfg, flags, rep: Report):
    prob, params = _wall_setup(cfg, flags, need_scan=False)
    if params["k_bound"] is None:
        raise InputError("missing --k-bound (or wall.k_bound)")
    rep.inputs.update(ell=params["ell"], k_bound=params["k_bound"], surface=prob.surface.name)
    walls = wk.classify_f_walls(prob, params["k_bound"])
    rep.results["walls"] = [_wall_row(w) for w in walls]
    rep.results["count"] = len(walls)
    rep.rows = [
        {"key": list(w.key), "tag": w.tag, "u": vec_str(w.u.flat())} for w in walls
    ]


def cmd_walls_scan(cfg, flags, rep: Report):
    prob, p = _wall_setup(cfg, flags, need_scan=True)
    if p["t_max"] is None:
        raise InputError("missing --t-max (or wall.t_max)")
    rep.inputs.update(
        ell=p["ell"],
        beta_prime=vec_str(p["beta_prime"]),
        r0=p["r0"],
        m=fmt_rational(p["m"]),
        n=fmt_rational(p["n"]),
        t_max=fmt_rational(p["t_max"]),
        surface=prob.surface.name,
    )
    k_bound = p["k_bound"]
    if k_bound is None:
        k_bound = wk.scan_k_bound(prob, p["beta_prime"], prob.surface.H, prob.surface.f)
    rep.inputs["k_bound"] = k_bound
    hits = wk.scan(prob, p["beta_prime"], p["r0"], p["m"], p["n"], p["t_max"], k_bound=k_bound)
    rep.results["hits"] = [{"t2": fmt_rational(h.t2), **_wall_row(h.wall)} for h in hits]
    rep.rows = [
        {"t2": fmt_rational(h.t2), "key": list(h.wall.key), "tag": h.wall.tag, "u": vec_str(h.wall.u.flat())}
        for h in hits
    ]
    rep.display["t2"] = [float(h.t2) for h in hits]


def cmd_chamber(cfg, flags, rep: Report):
    prob, p = _wall_setup(cfg, flags, need_scan=True)
    rep.inputs.update(
        ell=p["ell"], beta_prime=vec_str(p["beta_prime"]), r0=p["r0"], m=fmt_rational(p["m"]), n=fmt_rational(p["n"])
    )
    sig = wk.chamber_signature(prob, p["beta_prime"], p["r0"], p["m"], p["n"])
    rep.results.update(
        signature=coh_str(sig.vector),
        nu_beta_coeff=fmt_rational(sig.nu_beta_coeff),
        H_coeff=fmt_rational(sig.H_coeff),
        f_coeff=fmt_rational(sig.f_coeff),
    )
    rep.display["nu_beta_coeff"] = float(sig.nu_beta_coeff)


def cmd_validate(cfg, flags, rep: Report):
    checks = [("surface: " + msg, False) for _, msg in cfg.surface.violations()]
    rep.checks = [{"name": n, "passed": p, "detail": ""} for n, p in checks]
    if not checks:
        rep.checks.append({"name": "surface invariants", "passed": True, "detail": ""})
    if cfg.fm is not None:
        rep.checks.extend(_check_dict(c) for c in fmt.validate(cfg.fm))
    rep.results["all_passed"] = all(c["passed"] for c in rep.checks)
    if not rep.results["all_passed"]:
        rep.exit_code = EXIT_REGIME


HANDLERS = {
    "pair": cmd_pair,
    "charge": cmd_charge,
    "fm-apply": cmd_fm_apply,
    "fm-stability": cmd_fm_stability,
    "lvl-check": cmd_lvl_check,
    "walls-classify": cmd_walls_classify,
    "walls-scan": cmd_walls_scan,
    "chamber": cmd_chamber,
    "validate": cmd_validate,
}


def run(command: str, config: ConfigFile, flags) -> Report:
    """Dispatch ``command``; library errors propagate to the caller."""
    if command not in HANDLERS:
        raise InputError(f"unknown command {command!r}")
    rep = Report(command)
    HANDLERS[command](config, flags, rep)
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mukai-kit", description="Exact Mukai lattice computations.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--plot", help="write an SVG diagram (walls-scan only)")
    p.add_argument("--u")
    p.add_argument("--v")
    p.add_argument("--beta")
    p.add_argument("--omega")
    p.add_argument("--chern", action="store_true", help="charge: treat --v as a Chern character")
    p.add_argument("--L")
    p.add_argument("--t")
    p.add_argument("--m")
    p.add_argument("--n")
    p.add_argument("--ell", type=int)
    p.add_argument("--k-bound", type=int)
    p.add_argument("--beta-prime")
    p.add_argument("--r0", type=int)
    p.add_argument("--t-max")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        flags = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = load_config(flags.config, strict=flags.command != "validate")
        rep = run(flags.command, cfg, flags)
    except (ConfigError, InputError, OSError) as exc:
        print(f"mukai-kit: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (RegimeError, HypothesisError) as exc:
        print(f"mukai-kit: regime failure: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except (MukaiError, ValueError, ZeroDivisionError) as exc:
        print(f"mukai-kit: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(rep.to_json() if flags.format == "json" else rep.to_csv())
    if flags.plot:
        if flags.command != "walls-scan":
            print("mukai-kit: --plot is only available for walls-scan", file=sys.stderr)
            return EXIT_INPUT
        try:
            emit_plot(rep.to_dict(), flags.plot)
        except OSError as exc:
            print(f"mukai-kit: cannot write {flags.plot}: {exc}", file=sys.stderr)
            return EXIT_INPUT
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
