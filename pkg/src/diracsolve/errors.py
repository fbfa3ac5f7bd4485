"""Exception types shared across the package.

The CLI maps these onto process exit codes: validation problems exit 2,
a missing bound state exits 3, solver non-convergence exits 4.
"""


class DiracSolveError(Exception):
    """Base class for all package errors."""


class DomainError(DiracSolveError, ValueError):
    """A mathematical argument lies outside the supported domain."""


class ValidationError(DiracSolveError, ValueError):
    """A model specification or run configuration violates an invariant."""


class UnsupportedFamilyError(DiracSolveError, ValueError):
    """The polynomial family has no implemented closed-form prefactor."""


class NoBoundStateError(DiracSolveError):
    """The spectral relation has no admissible root for the requested state."""


class ConvergenceError(DiracSolveError):
    """An iterative solver failed to reach the requested tolerance."""


class NegativeDiscriminantError(ConvergenceError):
    """The self-consistency update hit m^2 + E < 0 and could not recover."""


class SingularPotentialError(DiracSolveError, ValueError):
    """The potential is non-finite on an interior grid point."""


class DivisionSingularityError(DiracSolveError, ArithmeticError):
    """A spinor-component denominator vanishes on the grid (Klein region)."""


class GridMismatchError(DiracSolveError, ValueError):
    """Operands were sampled on different radial grids."""
