"""Uniform radial grids for wavefunction sampling and the eigenvalue oracle.

Half-line models (oscillator, Coulomb, Eckart) use grids with r_min > 0 so
Dirichlet boundaries sidestep the 1/r-type singularities.  The exponential
well and the tanh-shaped well bind on the full line, so their grids are
allowed to extend to negative coordinate values; positivity of r_min is a
per-model requirement, enforced where the model catalog builds grids.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import ValidationError

__all__ = ["GridSpec"]


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid with ``points`` nodes from r_min to r_max inclusive."""

    r_min: float
    r_max: float
    points: int

    def __post_init__(self) -> None:
        if not self.r_min < self.r_max:
            raise ValidationError(
                f"grid requires r_min < r_max, got [{self.r_min}, {self.r_max}]"
            )
        if self.points < 100:
            raise ValidationError(f"grid requires at least 100 points, got {self.points}")

    @property
    def spacing(self) -> float:
        return (self.r_max - self.r_min) / (self.points - 1)

    def radial(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.points)

    def refined(self, factor: int = 2) -> "GridSpec":
        """Grid with the spacing divided by ``factor`` (same endpoints)."""
        return replace(self, points=(self.points - 1) * factor + 1)
