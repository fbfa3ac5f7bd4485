"""Independent finite-difference verification of the analytic bound states.

The upper component satisfies -G'' + V(r; eps) G = E G with
E = eps^2 - m^2 and an effective potential that itself contains eps, so the
oracle iterates: solve the discretized eigenproblem at fixed eps, update
eps = sqrt(m^2 + E_n), repeat.  Eigenvalues come from the symmetric
tridiagonal three-point discretization with Dirichlet boundaries, solved by
LAPACK's Sturm-sequence bisection with inverse-iteration eigenvectors
(scipy.linalg.eigh_tridiagonal), and the eigenvalue is selected by interior
node count rather than by index so level reshuffling during the eps updates
cannot silently swap states.

Nothing here consults the closed-form spectra; agreement between the two
routes is the package's acceptance gate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import models
from .errors import (
    ConvergenceError,
    DivisionSingularityError,
    GridMismatchError,
    NegativeDiscriminantError,
    SingularPotentialError,
    ValidationError,
)
from .factorization import QuantumNumbers
from .grids import GridSpec
from .models import BoundState, ModelSpec

__all__ = [
    "OracleResult",
    "fd_eigenvalues",
    "fd_state_by_nodes",
    "self_consistent_epsilon",
    "schrodinger_residual",
    "recover_lower_component",
    "gram_matrix",
    "count_nodes",
]


@dataclass(frozen=True)
class OracleResult:
    """Converged self-consistent eigenvalue with diagnostics.

    ``boundary_leak`` extrapolates the eigenvector to the grid ends and
    scales by its peak: a proxy for how much amplitude the Dirichlet walls
    are clamping.
    """

    eps: float
    iterations: int
    residual: float
    grid: GridSpec
    r: np.ndarray
    eigenvector: np.ndarray
    boundary_leak: float = 0.0


def _boundary_leak(r: np.ndarray, vec: np.ndarray) -> tuple[float, float]:
    """(inner, outer) wall-clamping proxies for half-line radial states.

    Inner: the parabola through the first three interior points,
    extrapolated to r = 0.  A regular state (G ~ r^(l+1)) passes through
    the true origin, so a nonzero intercept measures the amplitude the wall
    at r_min clamped; the quadratic fit keeps the state's own curvature out
    of the estimate.  Outer: the last interior value over the peak; a
    decayed tail makes it negligible, a clamped one leaves an O(h) kink.
    """
    peak = np.max(np.abs(vec))
    if peak == 0.0 or len(vec) < 3:
        return 0.0, 0.0
    h = r[1] - r[0]
    r0, r1, r2 = r[0], r[1], r[2]
    intercept = (
        r1 * r2 * vec[0] - 2.0 * r0 * r2 * vec[1] + r0 * r1 * vec[2]
    ) / (2.0 * h * h)
    return float(abs(intercept) / peak), float(abs(vec[-1]) / peak)


def _tridiagonal(V, grid: GridSpec):
    r = grid.radial()[1:-1]
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        v = np.asarray(V(r), dtype=float)
    if not np.all(np.isfinite(v)):
        raise SingularPotentialError("potential is non-finite on an interior grid point")
    h = grid.spacing
    diag = 2.0 / h**2 + v
    off = np.full(len(r) - 1, -1.0 / h**2)
    return r, diag, off


def fd_eigenvalues(V, grid: GridSpec, count: int) -> np.ndarray:
    """Lowest ``count`` eigenvalues of -G'' + V G = E G with Dirichlet ends.

    Second-order central differences; the error decreases as O(h^2).
    """
    if count < 1:
        raise ValidationError("count must be positive")
    _, diag, off = _tridiagonal(V, grid)
    return _eigh(diag, off, 0, count - 1, eigvals_only=True)


def _eigh(diag, off, lo, hi, eigvals_only=False):
    try:
        return eigh_tridiagonal(
            diag, off, eigvals_only=eigvals_only, select="i", select_range=(lo, hi)
        )
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"tridiagonal eigen-iteration failed: {exc}") from exc


def count_nodes(vec: np.ndarray, floor: float = 1e-7) -> int:
    """Interior sign changes, ignoring entries below ``floor`` of the peak."""
    vec = np.asarray(vec, dtype=float)
    kept = vec[np.abs(vec) > floor * np.max(np.abs(vec))]
    if kept.size < 2:
        return 0
    return int(np.sum(kept[:-1] * kept[1:] < 0.0))


def fd_state_by_nodes(V, grid: GridSpec, nodes: int):
    """(E, r_interior, eigenvector) of the state with the given node count.

    For a Jacobi matrix the k-th eigenvector has k sign changes, so the
    search starts at index ``nodes`` and widens only if discretization noise
    miscounts.
    """
    _, diag, off = _tridiagonal(V, grid)
    n_int = len(diag)
    tried = set()
    for lo, hi in ((nodes, nodes), (max(0, nodes - 2), min(n_int - 1, nodes + 3))):
        want = [k for k in range(lo, hi + 1) if k not in tried]
        if not want:
            continue
        tried.update(want)
        w, v = _eigh(diag, off, want[0], want[-1])
        for j, k in enumerate(range(want[0], want[-1] + 1)):
            if count_nodes(v[:, j]) == nodes:
                return float(w[j]), grid.radial()[1:-1], v[:, j]
    raise ConvergenceError(
        f"no finite-difference eigenstate with {nodes} interior nodes found"
    )


def self_consistent_epsilon(
    spec: ModelSpec,
    qn: QuantumNumbers,
    grid: GridSpec | None = None,
    tol: float = 1e-9,
    max_iter: int = 120,
) -> OracleResult:
    """Solve the eps-dependent eigenproblem to self-consistency.

    Runs the damped fixed-point iteration eps <- sqrt(m^2 + E_n(eps)) with
    the eigenvalue selected by node count.  The damping factor halves on
    oscillation; if the map is too steep to contract, the accumulated
    samples bracket g(eps) = eps^2 - m^2 - E_n(eps) and the solver falls
    back to bisection on that bracket.  Invalid updates (m^2 + E < 0) are
    backtracked before being declared fatal.
    """
    models.validate(spec)
    if tol <= 0:
        raise ValidationError("tol must be positive")
    m = spec.m
    if isinstance(spec, models.Oscillator):
        strength = spec.a if spec.a is not None else spec.omega
        if strength == 0.0:
            g = grid or GridSpec(1e-4, 20.0, 4000)
            r = g.radial()[1:-1]
            return OracleResult(m, 0, 0.0, g, r, np.zeros_like(r))
    pinned = models.pin_physical(spec, qn)
    if grid is None:
        grid = models.default_grid(spec, qn)
    if not models.is_full_line(spec) and grid.r_min <= 0.0:
        raise ValidationError(f"{spec.kind} oracle requires a grid with r_min > 0")

    def eigen(eps: float) -> float:
        V = models.effective_potential(pinned, qn, eps)
        E, _, _ = fd_state_by_nodes(V, grid, qn.n)
        return E

    eps = float(m)
    damp = 1.0
    prev_delta = 0.0
    below = None  # g < 0, i.e. target above eps
    above = None
    iterations = 0
    for iterations in range(1, max_iter + 1):
        E = eigen(eps)
        disc = m * m + E
        if disc < 0.0:
            # Walk toward the last valid iterate (or downward) until valid.
            ok = False
            step = -0.5 * abs(prev_delta) if prev_delta else -0.25 * (m + abs(eps))
            trial = eps
            for _ in range(60):
                trial = trial + step if below is None else 0.5 * (trial + below)
                if trial <= -m:
                    break
                E_t = eigen(trial)
                if m * m + E_t >= 0.0:
                    eps, E, disc, ok = trial, E_t, m * m + E_t, True
                    break
            if not ok:
                raise NegativeDiscriminantError(
                    f"{spec.kind}: m^2 + E stayed negative while seeking a valid iterate"
                )
        target = math.sqrt(disc)
        delta = target - eps
        if abs(delta) <= tol:
            eps = eps + delta
            break
        if delta > 0 and (below is None or eps > below):
            below = eps
        if delta < 0 and (above is None or eps < above):
            above = eps
        if prev_delta * delta < 0.0:
            damp *= 0.5
        else:
            damp = min(1.0, damp * 1.25)
        prev_delta = delta
        if damp < 0.05 and below is not None and above is not None:
            eps = _bisect_fixed_point(eigen, m, below, above, tol)
            break
        eps = eps + damp * delta
    else:
        if below is not None and above is not None:
            eps = _bisect_fixed_point(eigen, m, below, above, tol)
        else:
            raise ConvergenceError(
                f"{spec.kind}: self-consistency not reached in {max_iter} iterations"
            )

    V = models.effective_potential(pinned, qn, eps)
    E, r, vec = fd_state_by_nodes(V, grid, qn.n)
    disc = m * m + E
    delta = math.sqrt(disc) - eps if disc >= 0.0 else math.inf
    if abs(delta) > tol:
        raise ConvergenceError(
            f"{spec.kind}: self-consistency gap {abs(delta):.2e} exceeds tol={tol:g}"
        )
    inner, outer = _boundary_leak(r, vec)
    if isinstance(spec, (models.Oscillator, models.Coulomb)):
        if inner > 1e-6 or outer > 1e-4:
            walls = []
            if inner > 1e-6:
                walls.append(f"r_min (amplitude {inner:.1e} of peak, limit 1e-6)")
            if outer > 1e-4:
                walls.append(f"r_max (edge amplitude {outer:.1e} of peak, limit 1e-4)")
            raise ValidationError(
                f"{spec.kind}: grid walls clamp the state at "
                + " and ".join(walls)
                + "; widen the grid"
            )
    return OracleResult(
        eps=float(eps),
        iterations=iterations,
        residual=abs(delta),
        grid=grid,
        r=r,
        eigenvector=vec,
        boundary_leak=max(inner, outer),
    )


def _bisect_fixed_point(eigen, m, lo, hi, tol, max_iter: int = 200) -> float:
    """Bisection on g(eps) = eps^2 - m^2 - E_n(eps) over a sign-change bracket.

    Terminates on the actual fixed-point gap |sqrt(m^2 + E) - eps|, not the
    interval width, so a steep map cannot leave a hidden residual.
    """

    def probe(e):
        E = eigen(e)
        disc = m * m + E
        gap = math.sqrt(disc) - e if disc >= 0.0 else -math.inf
        return e * e - m * m - E, abs(gap) if math.isfinite(gap) else math.inf

    glo, _ = probe(lo)
    ghi, _ = probe(hi)
    if glo * ghi > 0.0:
        raise ConvergenceError("fixed-point bracket lost its sign change")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        gm, gap = probe(mid)
        if gap <= tol:
            return mid
        if glo * gm <= 0.0:
            hi, ghi = mid, gm
        else:
            lo, glo = mid, gm
        if hi - lo <= 1e-16 * max(1.0, abs(hi)):
            return 0.5 * (lo + hi)
    raise ConvergenceError("fixed-point bisection did not converge")


def _match_grid(state: BoundState, grid: GridSpec | None) -> np.ndarray:
    r = state.r
    if grid is not None:
        rg = grid.radial()
        if len(rg) != len(r) or not np.allclose(rg, r, rtol=0.0, atol=1e-12):
            raise GridMismatchError("state was not sampled on the supplied grid")
    return r


def schrodinger_residual(
    state: BoundState, spec: ModelSpec, grid: GridSpec | None = None
) -> tuple[float, float]:
    """(max interior residual of G'' = (V - E) G scaled by max|G|, spacing).

    G'' is formed by second-order central differences, so the residual on an
    exact state shrinks as h^2; report the spacing so refinement studies can
    interpret the number.
    """
    r = _match_grid(state, grid)
    h = r[1] - r[0]
    G = state.G
    V = models.effective_potential(spec, state.qn, state.eps)
    interior = slice(1, -1)
    g2 = (G[2:] - 2.0 * G[1:-1] + G[:-2]) / h**2
    rhs = (V(r[interior]) - state.E) * G[interior]
    return float(np.max(np.abs(g2 - rhs)) / np.max(np.abs(G))), float(h)


def recover_lower_component(
    state: BoundState,
    spec: ModelSpec,
    grid: GridSpec | None = None,
    on_singularity: str = "raise",
):
    """Recover F from G and quantify closure of the first-order pair.

    F = (G' + (k/r) G) / (eps + m + V_S - V_V) on interior points, with G'
    by central differences; the returned residual is the maximum defect of
    the partner equation -F' + (k/r) F = (eps - m - V_S - V_V) G scaled by
    max|G|.  For equal potentials the pair closes exactly, so the residual
    measures only discretization error.  Full-line wells carry no angular
    reduction, so their k/r terms are dropped (k(k+1) = 0 either way).

    Vanishing denominators flag a Klein region: ``on_singularity`` chooses
    between raising and masking those points with NaN.
    """
    if on_singularity not in ("raise", "mask"):
        raise ValidationError("on_singularity must be 'raise' or 'mask'")
    r_full = _match_grid(state, grid)
    h = r_full[1] - r_full[0]
    G = state.G
    eps, m = state.eps, spec.m
    v_s, v_v = models.scalar_vector_potentials(spec, eps)

    r = r_full[1:-1]
    den = eps + m + v_s(r) - v_v(r)
    bad = np.abs(den) < 1e-10 * (abs(eps) + m)
    if np.any(bad):
        if on_singularity == "raise":
            raise DivisionSingularityError(
                f"{spec.kind}: eps + m + V_S - V_V vanishes on the grid "
                "(spurious/Klein region); recovery is not defined there"
            )
        den = np.where(bad, np.nan, den)

    k_over_r = 0.0 if models.is_full_line(spec) else state.qn.k / r
    Gp = (G[2:] - G[:-2]) / (2.0 * h)
    F = (Gp + k_over_r * G[1:-1]) / den

    # Partner-equation residual on the interior of the interior.
    rr = r[1:-1]
    Fp = (F[2:] - F[:-2]) / (2.0 * h)
    k_term = 0.0 if models.is_full_line(spec) else state.qn.k / rr
    rhs = (eps - m - v_s(rr) - v_v(rr)) * G[2:-2]
    resid_arr = -Fp + k_term * F[1:-1] - rhs
    finite = np.isfinite(resid_arr)
    residual = float(np.max(np.abs(resid_arr[finite])) / np.max(np.abs(G)))
    return r, F, residual


def gram_matrix(states: list[BoundState]) -> np.ndarray:
    """Pairwise trapezoidal overlaps of states sharing one grid, model and l.

    Post-normalized states make the diagonal 1; for a fixed mapped-strength
    family the off-diagonals vanish up to quadrature error.
    """
    if not states:
        raise ValidationError("gram_matrix requires at least one state")
    first = states[0]
    for st in states[1:]:
        if st.spec.kind != first.spec.kind:
            raise GridMismatchError("gram_matrix requires states of one model")
        if st.qn.l != first.qn.l:
            raise GridMismatchError(
                "states of different l are not overlap-orthogonal in r; "
                "gram_matrix requires a single l"
            )
        if len(st.r) != len(first.r) or not np.allclose(
            st.r, first.r, rtol=0.0, atol=1e-12
        ):
            raise GridMismatchError("states share no common grid")
    n = len(states)
    out = np.empty((n, n), dtype=float)
    for i in range(n):
        for j in range(i, n):
            out[i, j] = out[j, i] = float(
                np.trapezoid(states[i].G * states[j].G, first.r)
            )
    return out
