"""Bound states of the radial Dirac equation for solvable potential models.

The package pairs closed-form spectra, obtained by factorizing the upper
radial component into a prefactor times a classical orthogonal polynomial,
with an independent finite-difference eigenvalue oracle, and ships a CLI
(``diracsolve``) for spectra, wavefunction sampling, verification reports
and machine-readable model-catalog export.
"""

from .errors import (
    ConvergenceError,
    DiracSolveError,
    DivisionSingularityError,
    DomainError,
    GridMismatchError,
    NegativeDiscriminantError,
    NoBoundStateError,
    SingularPotentialError,
    UnsupportedFamilyError,
    ValidationError,
)
from .factorization import (
    Decomposition,
    FamilyData,
    QuantumNumbers,
    assemble_wavefunction,
    prefactor,
)
from .grids import GridSpec
from .models import (
    BoundState,
    Coulomb,
    DEFAULT_SPECS,
    Eckart,
    MODEL_KINDS,
    ModelSpec,
    Morse,
    Oscillator,
    RosenMorse,
    bound_state,
    closed_form_epsilon,
    decompose,
    default_grid,
    effective_potential,
    family_data,
    nonrelativistic_energy,
    parameter_map,
    pin_physical,
    residual_grid,
    spectral_residual,
    validate,
)
from .oracle import (
    OracleResult,
    fd_eigenvalues,
    fd_state_by_nodes,
    gram_matrix,
    recover_lower_component,
    schrodinger_residual,
    self_consistent_epsilon,
)
from .polynomials import (
    Jacobi,
    Laguerre,
    jacobi_eval,
    jacobi_eval_general,
    jacobi_series,
    laguerre_eval,
    laguerre_series,
)

__version__ = "0.1.0"
