"""bakerbench: numerical workbench for the transcendental skew-product
F(z, w) = (e^{-(z+w)} + z + w, e^{-2w} + 2w + 1).

Subpackages cover map evaluation and orbits (core), the invariant wedge
and its verification (domain), essential-singularity witnesses (witness),
plurisubharmonic diagnostics (psh), basin rendering (render), randomized
verification suites (suites), and a CLI (cli).
"""

__version__ = "0.1.0"

from .core import EXP_MAX, OrbitRecord, OverflowSignal, PlanePoint, apply_f, orbit, safe_exp
from .domain import (
    GrowthReport,
    InvarianceReport,
    RatioProfile,
    check_growth,
    check_invariance,
    in_L,
    in_L_alpha,
    ratio_profile,
    sup_alpha,
    telescoping_residual,
)
from .psh import InsufficientSamples, ProbeSpec, SubmeanReport, submean_check, u_n, u_profile
from .render import (
    PaletteSpec,
    PixelClass,
    RasterResult,
    SliceSpec,
    classify_point,
    render_slice,
    write_grid_csv,
    write_ppm,
)
from .witness import (
    ProjectiveDirection,
    SolverFailure,
    WitnessSequence,
    find_witnesses,
    first_coord_identity_residual,
    h_eval,
    image_direction,
)

__all__ = [
    "EXP_MAX",
    "GrowthReport",
    "InsufficientSamples",
    "InvarianceReport",
    "OrbitRecord",
    "OverflowSignal",
    "PaletteSpec",
    "PixelClass",
    "PlanePoint",
    "ProbeSpec",
    "ProjectiveDirection",
    "RasterResult",
    "RatioProfile",
    "SliceSpec",
    "SolverFailure",
    "SubmeanReport",
    "WitnessSequence",
    "apply_f",
    "check_growth",
    "check_invariance",
    "classify_point",
    "find_witnesses",
    "first_coord_identity_residual",
    "h_eval",
    "image_direction",
    "in_L",
    "in_L_alpha",
    "orbit",
    "ratio_profile",
    "render_slice",
    "safe_exp",
    "submean_check",
    "sup_alpha",
    "telescoping_residual",
    "u_n",
    "u_profile",
    "write_grid_csv",
    "write_ppm",
]
