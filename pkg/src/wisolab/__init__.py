"""Numerical laboratory for weighted isoperimetric inequalities on the
upper half-space, with volume density |x|^l x_N^alpha and surface density
|x|^k x_N^alpha: closed-form constants, star-profile functionals,
weighted rearrangement, inequality verification sweeps, and a degenerate
elliptic finite element solver with symmetrized comparison solutions.
"""

from .geometry import (
    StarProfile,
    load_profile,
    measure,
    perimeter,
    random_profile,
    save_profile,
    scale,
    symmetrized_radius,
)
from .inequality import (
    VerificationReport,
    poincare_constant,
    quotient_Q,
    quotient_R,
    verify_gauss_identity,
    verify_hardy_littlewood,
    verify_isoperimetric,
    verify_polya_szego,
)
from .meshing import TriMesh, half_disk_mesh, load_mesh, save_mesh
from .pde import (
    EllipticProblem,
    RadialSolution,
    assemble_and_solve,
    load_problem,
    symmetrized_solution,
    verify_comparison,
)
from .quadrature import QuadratureSpec, composite_gl
from .rearrange import (
    DecreasingProfile,
    MeshFunction,
    RadialFunction,
    decreasing_rearrangement,
    distribution,
    lp_norm,
    schwarz_symmetrization,
)
from .weights import (
    RegimeFlags,
    WeightParams,
    beta_fn,
    c_rad,
    gamma_fn,
    kappa,
    l1_threshold,
    mu_half_ball,
)

__version__ = "0.1.0"

__all__ = [
    "StarProfile",
    "load_profile",
    "measure",
    "perimeter",
    "random_profile",
    "save_profile",
    "scale",
    "symmetrized_radius",
    "VerificationReport",
    "poincare_constant",
    "quotient_Q",
    "quotient_R",
    "verify_gauss_identity",
    "verify_hardy_littlewood",
    "verify_isoperimetric",
    "verify_polya_szego",
    "TriMesh",
    "half_disk_mesh",
    "load_mesh",
    "save_mesh",
    "EllipticProblem",
    "RadialSolution",
    "assemble_and_solve",
    "load_problem",
    "symmetrized_solution",
    "verify_comparison",
    "QuadratureSpec",
    "composite_gl",
    "DecreasingProfile",
    "MeshFunction",
    "RadialFunction",
    "decreasing_rearrangement",
    "distribution",
    "lp_norm",
    "schwarz_symmetrization",
    "RegimeFlags",
    "WeightParams",
    "beta_fn",
    "c_rad",
    "gamma_fn",
    "kappa",
    "l1_threshold",
    "mu_half_ball",
]
