"""JSON configuration documents with exact ``"p/q"`` rationals.

Schema (unknown keys are rejected)::

    {
      "surface": {"name", "chi", "gram", "f", "H", "K",
                  "minus2_fiber_classes"?, "integrality_scale_l"?, "basis_names"?},
      "fm":      {"r0", "b", "beta", "target": <surface block>, "beta_prime", "d_map"?},
      "wall":    {"ell", "beta_prime"?, "r0"?, "m"?, "n"?, "t_max"?, "k_bound"?, "use_target"?}
    }

Rationals are JSON integers or strings such as ``"-3/4"``.  JSON floats are
a parse error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .errors import ConfigError
from .fm import FMData, validate
from .lattice import SurfaceData
from .scalars import fmt_rational, to_rational

SURFACE_KEYS = {"name", "chi", "gram", "f", "H", "K", "minus2_fiber_classes", "integrality_scale_l", "basis_names"}
SURFACE_REQUIRED = {"name", "chi", "gram", "f", "H", "K"}
FM_KEYS = {"r0", "b", "beta", "target", "beta_prime", "d_map"}
FM_REQUIRED = {"r0", "b", "beta", "target", "beta_prime"}
WALL_KEYS = {"ell", "beta_prime", "r0", "m", "n", "t_max", "k_bound", "use_target"}
TOP_KEYS = {"surface", "fm", "wall"}


@dataclass(frozen=True)
class WallConfig:
    ell: int
    beta_prime: Optional[tuple] = None
    r0: Optional[int] = None
    m: Optional[Fraction] = None
    n: Optional[Fraction] = None
    t_max: Optional[Fraction] = None
    k_bound: Optional[int] = None
    use_target: bool = False


@dataclass(frozen=True)
class ConfigFile:
    surface: SurfaceData
    fm: Optional[FMData] = None
    wall: Optional[WallConfig] = None


def _reject_float(text):
    raise ConfigError([("$", f"exact rationals required, found float literal {text}")])


class _Reader:
    """Collects violations with JSON paths instead of stopping at the first one."""

    def __init__(self):
        self.violations = []

    def fail(self, path, msg):
        self.violations.append((path, msg))

    def keys(self, block, path, allowed, required):
        if not isinstance(block, dict):
            self.fail(path, "must be an object")
            return False
        for k in sorted(set(block) - allowed):
            self.fail(f"{path}.{k}", "unknown field")
        for k in sorted(required - set(block)):
            self.fail(f"{path}.{k}", "missing required field")
        return not (required - set(block))

    def rational(self, x, path):
        if isinstance(x, bool) or not isinstance(x, (int, str)):
            self.fail(path, "exact rationals required (integer or \"p/q\" string)")
            return None
        try:
            return to_rational(x)
        except (TypeError, ValueError, ZeroDivisionError):
            self.fail(path, f"exact rationals required, cannot parse {x!r}")
            return None

    def integer(self, x, path):
        q = self.rational(x, path)
        if q is not None and q.denominator != 1:
            self.fail(path, "must be an integer")
            return None
        return None if q is None else int(q)

    def vector(self, xs, path):
        if not isinstance(xs, list):
            self.fail(path, "must be a list")
            return None
        out = [self.rational(x, f"{path}[{i}]") for i, x in enumerate(xs)]
        return None if any(x is None for x in out) else tuple(out)

    def matrix(self, rows, path):
        if not isinstance(rows, list):
            self.fail(path, "must be a list of rows")
            return None
        out = [self.vector(r, f"{path}[{i}]") for i, r in enumerate(rows)]
        return None if any(r is None for r in out) else tuple(out)

    def surface(self, block, path):
        if not self.keys(block, path, SURFACE_KEYS, SURFACE_REQUIRED):
            return None
        start = len(self.violations)
        gram = self.matrix(block["gram"], f"{path}.gram")
        f = self.vector(block["f"], f"{path}.f")
        H = self.vector(block["H"], f"{path}.H")
        K = self.vector(block["K"], f"{path}.K")
        chi = self.integer(block["chi"], f"{path}.chi")
        classes = []
        for i, d in enumerate(block.get("minus2_fiber_classes", [])):
            classes.append(self.vector(d, f"{path}.minus2_fiber_classes[{i}]"))
        l = self.integer(block.get("integrality_scale_l", 1), f"{path}.integrality_scale_l")
        names = block.get("basis_names", [])
        if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
            self.fail(f"{path}.basis_names", "must be a list of strings")
            names = []
        if not isinstance(block["name"], str):
            self.fail(f"{path}.name", "must be a string")
        if len(self.violations) > start:
            return None
        n = len(gram)
        for field_name, vec in (("f", f), ("H", H), ("K", K)):
            if len(vec) != n:
                self.fail(f"{path}.{field_name}", f"expected {n} coordinates, got {len(vec)}")
        if any(len(row) != n for row in gram):
            self.fail(f"{path}.gram", "must be square")
        for i, d in enumerate(classes):
            if len(d) != n:
                self.fail(f"{path}.minus2_fiber_classes[{i}]", f"expected {n} coordinates")
        if names and len(names) != n:
            self.fail(f"{path}.basis_names", f"expected {n} names")
        if len(self.violations) > start:
            return None
        X = SurfaceData(block["name"], chi, gram, f, H, K, tuple(classes), l, tuple(names))
        for field_name, msg in X.violations():
            self.fail(f"{path}.{field_name}", msg)
        return X


def parse_config(doc, strict: bool = True) -> ConfigFile:
    """Build a :class:`ConfigFile` from a decoded JSON document.

    With ``strict`` the transform data must also pass every consistency check.
    """
    rd = _Reader()
    if not rd.keys(doc, "$", TOP_KEYS, {"surface"}):
        raise ConfigError(rd.violations)
    X = rd.surface(doc["surface"], "$.surface")
    fm = None
    if "fm" in doc and rd.keys(doc["fm"], "$.fm", FM_KEYS, FM_REQUIRED):
        block = doc["fm"]
        T = rd.surface(block["target"], "$.fm.target")
        r0 = rd.integer(block["r0"], "$.fm.r0")
        b = rd.rational(block["b"], "$.fm.b")
        beta = rd.vector(block["beta"], "$.fm.beta")
        beta_p = rd.vector(block["beta_prime"], "$.fm.beta_prime")
        d_map = rd.matrix(block["d_map"], "$.fm.d_map") if "d_map" in block else None
        if X is not None and T is not None and not rd.violations:
            try:
                fm = FMData(X, T, r0, b, beta, beta_p, d_map)
            except (ValueError, TypeError, ArithmeticError) as exc:
                rd.fail("$.fm", str(exc))
            if fm is not None and strict:
                for check in validate(fm):
                    if not check.passed:
                        rd.fail("$.fm", f"{check.name} violated {check.detail}".strip())
    wall = None
    if "wall" in doc and rd.keys(doc["wall"], "$.wall", WALL_KEYS, {"ell"}):
        block = doc["wall"]
        ell = rd.integer(block["ell"], "$.wall.ell")
        kw = {}
        if "beta_prime" in block:
            kw["beta_prime"] = rd.vector(block["beta_prime"], "$.wall.beta_prime")
        for name in ("m", "n", "t_max"):
            if name in block:
                kw[name] = rd.rational(block[name], f"$.wall.{name}")
        for name in ("r0", "k_bound"):
            if name in block:
                kw[name] = rd.integer(block[name], f"$.wall.{name}")
        if "use_target" in block:
            if not isinstance(block["use_target"], bool):
                rd.fail("$.wall.use_target", "must be a boolean")
            kw["use_target"] = bool(block["use_target"])
        if ell is not None:
            wall = WallConfig(ell, **kw)
    if rd.violations:
        raise ConfigError(rd.violations)
    return ConfigFile(X, fm, wall)


def load_config(path, strict: bool = True) -> ConfigFile:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ConfigError([("$", f"JSON parse error: {exc}")]) from exc
    return parse_config(doc, strict=strict)


def _vec(xs):
    return [fmt_rational(x) for x in xs]


def surface_to_dict(X: SurfaceData) -> dict:
    return {
        "name": X.name,
        "chi": X.chi,
        "gram": [_vec(row) for row in X.gram],
        "f": _vec(X.f),
        "H": _vec(X.H),
        "K": _vec(X.K),
        "minus2_fiber_classes": [_vec(d) for d in X.minus2_fiber_classes],
        "integrality_scale_l": X.integrality_scale_l,
        "basis_names": list(X.basis_names),
    }


def config_to_dict(cfg: ConfigFile) -> dict:
    out = {"surface": surface_to_dict(cfg.surface)}
    if cfg.fm is not None:
        fm = cfg.fm
        out["fm"] = {
            "r0": fm.r0,
            "b": fmt_rational(fm.b),
            "beta": _vec(fm.beta),
            "target": surface_to_dict(fm.target),
            "beta_prime": _vec(fm.beta_prime),
            "d_map": [_vec(row) for row in fm.d_map],
        }
    if cfg.wall is not None:
        w = cfg.wall
        block = {"ell": w.ell, "use_target": w.use_target}
        if w.beta_prime is not None:
            block["beta_prime"] = _vec(w.beta_prime)
        for name in ("m", "n", "t_max"):
            if getattr(w, name) is not None:
                block[name] = fmt_rational(getattr(w, name))
        for name in ("r0", "k_bound"):
            if getattr(w, name) is not None:
                block[name] = getattr(w, name)
        out["wall"] = block
    return out


def dump_config(cfg: ConfigFile) -> str:
    return json.dumps(config_to_dict(cfg), indent=2, sort_keys=True) + "\n"
