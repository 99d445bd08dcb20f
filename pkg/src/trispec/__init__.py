"""Maximal eigenpairs of tridiagonal systems and eigenvalue bounds for
one-dimensional operators.

The central objects are :class:`TridiagonalSystem` (an irreducible
birth-death style generator with killing), the efficient initial pair
produced by :func:`efficient_initials`, and the shifted-inverse Rayleigh
quotient iteration :func:`rqi` / :func:`max_eigenpair` that it seeds.
Bisection-based reference spectra live in :mod:`trispec.oracle`, the
input-output collapse model in :mod:`trispec.hua`, and continuous
operators with their isoperimetric constants in :mod:`trispec.contop`.
"""

from .contop import (
    KINDS,
    KappaResult,
    MeasureGrid,
    Operator1D,
    build_measures,
    delta1_continuous,
    discretize,
    discretized_lambda,
    duality_check,
    hardy_constant,
    kappa,
    kappa_grid_convergence,
    killing_transform,
    lebesgue_operator,
    parse_operator,
)
from .errors import (
    ConvergenceError,
    FormatError,
    InvalidSystemError,
    SingularShiftError,
    TailMassWarning,
    TrispecError,
    ZeroSpectralGapError,
)
from .hua import (
    CollapseReport,
    Economy,
    collapse_time,
    dense_max_eigenpair,
    parse_economy,
)
from .initials import (
    InitialGuess,
    InitialsBundle,
    efficient_initials,
    h_sequence,
    phi_sequence,
    rayleigh_quotient,
    speed_measure,
)
from .iterate import (
    POWER_ITERATION_CAP,
    IterationTrace,
    RqiConfig,
    max_eigenpair,
    power_iteration,
    residual_bounds,
    rqi,
    solve_shifted,
    solve_tridiagonal,
)
from .oracle import (
    DEFAULT_ORACLE_CAP,
    SpectrumResult,
    SymmetricTridiagonal,
    max_eigenpair_reference,
    spectrum,
    sturm_spectrum,
    symmetrize,
)
from .tridiag import (
    DenseMatrix,
    TridiagonalSystem,
    apply,
    build_system,
    parse_system,
    shift_to_canonical,
    square_model,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "TrispecError",
    "InvalidSystemError",
    "FormatError",
    "ZeroSpectralGapError",
    "SingularShiftError",
    "ConvergenceError",
    "TailMassWarning",
    # systems
    "TridiagonalSystem",
    "DenseMatrix",
    "build_system",
    "square_model",
    "apply",
    "shift_to_canonical",
    "parse_system",
    # initials
    "InitialsBundle",
    "InitialGuess",
    "speed_measure",
    "h_sequence",
    "phi_sequence",
    "rayleigh_quotient",
    "efficient_initials",
    # iteration
    "IterationTrace",
    "RqiConfig",
    "POWER_ITERATION_CAP",
    "power_iteration",
    "solve_tridiagonal",
    "solve_shifted",
    "rqi",
    "residual_bounds",
    "max_eigenpair",
    # oracle
    "SymmetricTridiagonal",
    "SpectrumResult",
    "DEFAULT_ORACLE_CAP",
    "symmetrize",
    "sturm_spectrum",
    "spectrum",
    "max_eigenpair_reference",
    # economy
    "Economy",
    "CollapseReport",
    "collapse_time",
    "dense_max_eigenpair",
    "parse_economy",
    # continuous operators
    "Operator1D",
    "MeasureGrid",
    "KappaResult",
    "KINDS",
    "lebesgue_operator",
    "parse_operator",
    "build_measures",
    "kappa",
    "duality_check",
    "killing_transform",
    "hardy_constant",
    "discretize",
    "discretized_lambda",
    "delta1_continuous",
    "kappa_grid_convergence",
]
