"""Wavefunction factorization machinery for the radial Dirac reduction.

The upper radial component G obeys a Schroedinger-like equation
``G'' = (V - E) G`` with the energy-dependent effective potential

    V(r) = k(k+1)/r^2 + (V_S^2 - V_V^2) + 2 m V_S + 2 eps V_V,

and E = eps^2 - m^2.  Its bound states factor as G(r) = f(r) * F(s(r)),
where F solves a hypergeometric-type equation

    F'' + (tau/sigma) F' + (sigma_tilde/sigma^2) F = 0

in the mapped coordinate s(r).  This module implements the generic pieces of
that construction: the closed-form prefactor

    f(r) = |s'(r)|^(-1/2) * exp[ (1/2) * Int^s(r) tau/sigma ds ],

assembly of G from prefactor, weight factor and polynomial, and the
two-sided potential/energy decomposition

    f''/f = V_f - E_f,      -(sigma_tilde/sigma^2) s'^2 = V_F - E_F,
    E_f + E_F = eps^2 - m^2.

Everything here is model-agnostic; the per-model coefficient functions and
coordinate maps live in the model catalog.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, UnsupportedFamilyError, ValidationError
from .polynomials import PolyFamilyKind, poly_eval

__all__ = [
    "QuantumNumbers",
    "FamilyData",
    "Decomposition",
    "prefactor",
    "assemble_wavefunction",
]


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial index n, orbital l and spin-orbit quantum number k.

    k = -(l+1) selects the j = l+1/2 branch, k = +l the j = l-1/2 branch;
    both give the same centrifugal strength k(k+1) = l(l+1).
    """

    n: int
    l: int
    k: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.l < 0:
            raise ValidationError(f"quantum numbers require n, l >= 0, got {self}")
        if self.k not in (-(self.l + 1), self.l):
            raise ValidationError(
                f"k must be -(l+1) or +l, got k={self.k} for l={self.l}"
            )
        if self.k * (self.k + 1) != self.l * (self.l + 1):
            raise ValidationError(f"k(k+1) != l(l+1) for {self}")

    @classmethod
    def spin_up(cls, n: int, l: int) -> "QuantumNumbers":
        """j = l + 1/2 branch, k = -(l+1).  All model formulas use this branch."""
        return cls(n=n, l=l, k=-(l + 1))

    @classmethod
    def spin_down(cls, n: int, l: int) -> "QuantumNumbers":
        """j = l - 1/2 branch, k = +l.  Permitted by the types only."""
        if l == 0:
            raise ValidationError("the j = l - 1/2 branch requires l >= 1")
        return cls(n=n, l=l, k=l)

    @property
    def branch(self) -> str:
        return "up" if self.k == -(self.l + 1) else "down"

    @property
    def centrifugal(self) -> int:
        return self.k * (self.k + 1)


@dataclass(frozen=True)
class FamilyData:
    """One orthogonal-polynomial family instance tied to a coordinate map.

    ``sigma`` and ``tau`` are polynomial coefficient tuples in ascending
    powers of s (degree <= 2 and <= 1 respectively).  ``sigma_tilde`` is the
    remaining rational coefficient, which may depend on the polynomial index
    n.  ``s_map`` must be strictly monotone on ``domain`` with nonvanishing
    derivative ``s_prime`` in the interior.
    """

    name: str
    sigma: tuple[float, ...]
    tau: tuple[float, ...]
    sigma_tilde: Callable[[np.ndarray, int], np.ndarray]
    s_map: Callable[[np.ndarray], np.ndarray]
    s_prime: Callable[[np.ndarray], np.ndarray]
    domain: tuple[float, float]
    sigma_label: str = ""
    tau_label: str = ""
    sigma_tilde_label: str = ""
    s_label: str = ""

    def check_domain(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        lo, hi = self.domain
        if np.any(r < lo) or np.any(r > hi):
            raise DomainError(
                f"coordinate outside the {self.name} family domain [{lo}, {hi}]"
            )
        return r


@dataclass(frozen=True)
class Decomposition:
    """Split of the effective potential and energy between prefactor and polynomial.

    ``V_f``/``E_f`` belong to the prefactor equation f''/f = V_f - E_f, while
    ``V_F``/``E_F`` belong to the polynomial equation.  For a bound state the
    energies satisfy E_f + E_F = eps^2 - m^2 exactly.
    """

    V_f: Callable[[np.ndarray], np.ndarray]
    V_F: Callable[[np.ndarray], np.ndarray]
    E_f: float
    E_F: float

    def effective(self, r: np.ndarray) -> np.ndarray:
        return self.V_f(r) + self.V_F(r)

    @property
    def total_energy(self) -> float:
        return self.E_f + self.E_F


def _poly_value(coeffs: tuple[float, ...], s: np.ndarray) -> np.ndarray:
    out = np.zeros_like(np.asarray(s, dtype=float))
    for power, c in enumerate(coeffs):
        if c != 0.0:
            out = out + c * np.asarray(s, dtype=float) ** power
    return out


def _is_zero(coeffs: tuple[float, ...]) -> bool:
    return all(c == 0.0 for c in coeffs)


def prefactor(family: FamilyData) -> Callable[[np.ndarray], np.ndarray]:
    """Closed-form prefactor f(r), defined up to a positive constant.

    Supported coefficient patterns and their antiderivatives of tau/sigma:

    * sigma = s,      tau = t0 + t1*s  ->  t0*ln(s) + t1*s
    * sigma = const,  tau = t0 + t1*s  ->  (t0*s + t1*s^2/2) / const

    Anything else raises ``UnsupportedFamilyError``.  Only ratios
    f(r2)/f(r1) are contractual; no normalization is implied.
    """
    sigma, tau = family.sigma, family.tau

    if len(sigma) >= 2 and sigma[1] != 0.0 and sigma[0] == 0.0 and (
        len(sigma) < 3 or sigma[2] == 0.0
    ):
        # sigma = c1 * s
        c1 = sigma[1]
        t0 = tau[0] if len(tau) > 0 else 0.0
        t1 = tau[1] if len(tau) > 1 else 0.0

        def log_integral(s):
            return (t0 / c1) * np.log(s) + (t1 / c1) * s

    elif len(sigma) >= 1 and sigma[0] != 0.0 and _is_zero(sigma[1:]):
        # sigma = const
        c0 = sigma[0]
        t0 = tau[0] if len(tau) > 0 else 0.0
        t1 = tau[1] if len(tau) > 1 else 0.0

        def log_integral(s):
            return (t0 * s + 0.5 * t1 * s * s) / c0

    else:
        raise UnsupportedFamilyError(
            f"no implemented antiderivative of tau/sigma for family {family.name!r}"
        )

    def f(r):
        r = family.check_domain(r)
        # Extreme tail points may overflow intermediates; downstream norm
        # checks reject any non-finite outcome, so the noise is suppressed.
        with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
            s = family.s_map(r)
            sp = np.abs(family.s_prime(r))
            value = sp ** (-0.5) * np.exp(0.5 * log_integral(s))
        return value[()] if np.ndim(value) == 0 else value

    return f


def assemble_wavefunction(
    f: Callable[[np.ndarray], np.ndarray],
    poly: PolyFamilyKind,
    n: int,
    family: FamilyData,
    F_weight: Callable[[np.ndarray], np.ndarray] | None = None,
) -> Callable[[np.ndarray], np.ndarray]:
    """Unnormalized G(r) = f(r) * w(s(r)) * P_n(s(r)).

    ``F_weight`` is the model-specific weight factor of F; pass ``None``
    where the weight is already carried by the prefactor (Laguerre-type
    families with sigma = s).  Polynomial parameters are not restricted to
    the classical region here, since mapped parameters can leave it.
    """

    def G(r):
        r = family.check_domain(r)
        with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
            s = family.s_map(r)
            value = f(r) * poly_eval(poly, n, s, strict=False)
            if F_weight is not None:
                value = value * F_weight(s)
        return value[()] if np.ndim(value) == 0 else value

    return G
