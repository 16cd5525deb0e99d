"""Exact computations in the Mukai lattice of an elliptic surface."""

from .charge import (
    StabilityParams,
    act_scale_rot,
    hat_geo_check,
    lvl_check,
    lvl_terms,
    phase_cmp,
    z_geo,
    z_hat,
)
from .errors import ConfigError, DimensionError, DomainError, HypothesisError, MukaiError, RegimeError
from .fixtures import k3_with_a1_fiber, k3_with_section, relative_fm
from .fm import FMData, apply, apply_complex, dim1_image, matrix, stability_image, validate
from .lattice import BetaExpansion, CohVector, GaussCohVector, SurfaceData
from .scalars import GaussRational, QuadExtScalar, fmt_rational, to_rational
from .walls import (
    ALL_T,
    Wall,
    WallProblem,
    bm_class,
    brute_oracle,
    chamber_signature,
    classify_f_walls,
    scan,
    wall_hit_t2,
    xi_class,
    xi_direct,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_T",
    "BetaExpansion",
    "CohVector",
    "ConfigError",
    "DimensionError",
    "DomainError",
    "FMData",
    "GaussCohVector",
    "GaussRational",
    "HypothesisError",
    "MukaiError",
    "QuadExtScalar",
    "RegimeError",
    "StabilityParams",
    "SurfaceData",
    "Wall",
    "WallProblem",
    "act_scale_rot",
    "apply",
    "apply_complex",
    "bm_class",
    "brute_oracle",
    "chamber_signature",
    "classify_f_walls",
    "dim1_image",
    "fmt_rational",
    "hat_geo_check",
    "k3_with_a1_fiber",
    "k3_with_section",
    "lvl_check",
    "lvl_terms",
    "matrix",
    "phase_cmp",
    "relative_fm",
    "scan",
    "stability_image",
    "to_rational",
    "validate",
    "wall_hit_t2",
    "xi_class",
    "xi_direct",
    "z_geo",
    "z_hat",
]
