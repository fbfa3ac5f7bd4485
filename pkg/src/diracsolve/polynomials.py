"""Generalized Laguerre and Jacobi polynomial evaluation.

These are the two orthogonal-polynomial families appearing in the bound-state
wavefunctions of the solvable models.  Evaluation uses the upward three-term
recurrence, which is stable in the parameter range this package needs
(degrees up to a few tens).  Independent brute-force series evaluators are
provided as test oracles; they share no code with the recurrences.

Notes
-----
* Jacobi evaluation is deliberately permitted for arguments outside the
  classical interval [-1, 1]; one model evaluates P_n at coth(ar) > 1.
* ``jacobi_eval`` enforces alpha > -1 and beta > -1 (weight integrability).
  Model code that maps onto Jacobi parameters outside that region goes
  through ``jacobi_eval_general``, which only guards against vanishing
  recurrence denominators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "Laguerre",
    "Jacobi",
    "PolyFamilyKind",
    "laguerre_eval",
    "jacobi_eval",
    "jacobi_eval_general",
    "laguerre_series",
    "jacobi_series",
    "poly_eval",
]


@dataclass(frozen=True)
class Laguerre:
    """Generalized Laguerre family L_n^alpha, weight s^alpha e^-s on [0, inf)."""

    alpha: float


@dataclass(frozen=True)
class Jacobi:
    """Jacobi family P_n^(alpha, beta), weight (1-s)^alpha (1+s)^beta on [-1, 1]."""

    alpha: float
    beta: float


PolyFamilyKind = Laguerre | Jacobi


def _check_degree(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"polynomial degree must be a nonnegative integer, got {n!r}")


def _signal_overflow(values, what: str):
    if not np.all(np.isfinite(values)):
        raise OverflowError(f"{what} evaluation overflowed (degree/argument too large)")
    return values


def laguerre_eval(n: int, alpha: float, s):
    """Evaluate L_n^alpha(s) by upward three-term recurrence.

    ``s`` may be a scalar or ndarray.  Requires alpha > -1.  Overflow is
    raised, never silently saturated.
    """
    _check_degree(n)
    if not alpha > -1.0:
        raise DomainError(f"Laguerre alpha must exceed -1, got {alpha}")
    return _laguerre_recurrence(n, alpha, s)


def _laguerre_recurrence(n: int, alpha: float, s):
    s = np.asarray(s, dtype=float)
    prev = np.ones_like(s)
    if n == 0:
        return prev[()] if prev.ndim == 0 else prev
    cur = 1.0 + alpha - s
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, n):
            prev, cur = cur, ((2 * k + 1 + alpha - s) * cur - (k + alpha) * prev) / (k + 1)
    _signal_overflow(cur, "Laguerre")
    return cur[()] if cur.ndim == 0 else cur


def jacobi_eval(n: int, alpha: float, beta: float, s):
    """Evaluate P_n^(alpha, beta)(s) by three-term recurrence.

    Requires alpha > -1 and beta > -1.  Any real argument is accepted; the
    classical interval matters only for orthogonality, not evaluation.
    """
    if not (alpha > -1.0 and beta > -1.0):
        raise DomainError(
            f"Jacobi parameters must exceed -1, got alpha={alpha}, beta={beta}"
        )
    _check_degree(n)
    return _jacobi_recurrence(n, alpha, beta, s)


def jacobi_eval_general(n: int, alpha: float, beta: float, s):
    """Evaluate P_n^(alpha, beta)(s) for arbitrary real parameters.

    The Jacobi polynomial is a polynomial in (alpha, beta) as well as in s,
    so the recurrence remains valid by analytic continuation provided its
    denominators stay away from zero.  That is checked here; the classical
    constraint alpha, beta > -1 is not.
    """
    _check_degree(n)
    for k in range(2, n + 1):
        den = 2 * k * (k + alpha + beta) * (2 * k + alpha + beta - 2)
        if abs(den) < 1e-12 * max(1.0, k * k):
            raise DomainError(
                f"Jacobi recurrence degenerate at degree {k} for "
                f"alpha+beta={alpha + beta}"
            )
    return _jacobi_recurrence(n, alpha, beta, s)


def _jacobi_recurrence(n: int, alpha: float, beta: float, s):
    s = np.asarray(s, dtype=float)
    prev = np.ones_like(s)
    if n == 0:
        return prev[()] if prev.ndim == 0 else prev
    cur = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * s
    ab = alpha + beta
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(2, n + 1):
            c1 = 2.0 * k * (k + ab) * (2 * k + ab - 2)
            c2 = (2 * k + ab - 1) * (alpha * alpha - beta * beta)
            c3 = (2 * k + ab - 2) * (2 * k + ab - 1) * (2 * k + ab)
            c4 = 2.0 * (k + alpha - 1) * (k + beta - 1) * (2 * k + ab)
            prev, cur = cur, ((c2 + c3 * s) * cur - c4 * prev) / c1
    _signal_overflow(cur, "Jacobi")
    return cur[()] if cur.ndim == 0 else cur


def laguerre_series(n: int, alpha: float, s):
    """Brute-force series oracle: L_n^alpha(s) = sum_k (-1)^k C(n+alpha, n-k) s^k / k!.

    Independent of the recurrence path; used only for testing.
    """
    _check_degree(n)
    s = np.asarray(s, dtype=float)
    total = np.zeros_like(s)
    for k in range(n + 1):
        coeff = 1.0
        for i in range(1, n - k + 1):  # C(n+alpha, n-k) as a product
            coeff *= (alpha + k + i) / i
        term = (-1.0) ** k * coeff / float(math.factorial(k)) * s**k
        total = total + term
    return total[()] if total.ndim == 0 else total


def jacobi_series(n: int, alpha: float, beta: float, s):
    """Brute-force series oracle for P_n^(alpha, beta)(s).

    Uses the terminating hypergeometric sum
    sum_k C(n+alpha, n-k) C(n+beta, k) ((s-1)/2)^k ((s+1)/2)^(n-k),
    valid for arbitrary real parameters.
    """
    _check_degree(n)
    s = np.asarray(s, dtype=float)
    total = np.zeros_like(s)
    for k in range(n + 1):
        ca = 1.0
        for i in range(1, n - k + 1):  # C(n+alpha, n-k)
            ca *= (alpha + k + i) / i
        cb = 1.0
        for i in range(1, k + 1):  # C(n+beta, k)
            cb *= (beta + n - k + i) / i
        total = total + ca * cb * ((s - 1.0) / 2.0) ** k * ((s + 1.0) / 2.0) ** (n - k)
    return total[()] if total.ndim == 0 else total


def poly_eval(kind: PolyFamilyKind, n: int, s, strict: bool = True):
    """Evaluate the degree-n polynomial of the given family at s.

    With ``strict`` the classical parameter constraints are enforced; model
    code disables it where mapped parameters leave the classical region.
    """
    if isinstance(kind, Laguerre):
        return laguerre_eval(n, kind.alpha, s)
    if isinstance(kind, Jacobi):
        if strict:
            return jacobi_eval(n, kind.alpha, kind.beta, s)
        return jacobi_eval_general(n, kind.alpha, kind.beta, s)
    raise DomainError(f"unknown polynomial family {kind!r}")
