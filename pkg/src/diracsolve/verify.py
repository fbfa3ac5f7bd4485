"""Cross-validation reports pairing the closed forms with the oracle.

For every state in range the report records: the defect of the spectral
relation at the returned eps, the relative gap between the closed form and
the self-consistent finite-difference eigenvalue, the pointwise residual of
the second-order equation on the analytic wavefunction, closure of the
first-order spinor pair (equal-potential models), and mutual orthogonality
at fixed mapped strength (oscillator and Coulomb).  The three root-found
models additionally get a mapping-validation verdict, since their parameter
maps are frozen only by oracle agreement.
"""

from __future__ import annotations

from dataclasses import asdict

import numpy as np

from . import models, oracle
from .errors import DiracSolveError
from .factorization import QuantumNumbers
from .grids import GridSpec
from .models import ModelSpec

__all__ = ["DEFAULT_TOLERANCES", "verification_report"]

DEFAULT_TOLERANCES = {
    "spectral_relation": 1e-10,
    "oracle_agreement": None,  # per model: 1e-5 closed-form, 1e-4 root-found
    "wavefunction_residual": 1e-5,
    "spinor_closure": 1e-4,
    "orthogonality": 1e-8,
}

_ROOT_FOUND = ("morse", "rosen-morse", "eckart")


def _entry(name, state, measured, threshold, **extra):
    status = "pass" if measured <= threshold else "fail"
    out = {
        "name": name,
        "state": state,
        "measured": measured,
        "threshold": threshold,
        "status": status,
    }
    out.update(extra)
    return out


def _error_entry(name, state, exc):
    return {
        "name": name,
        "state": state,
        "status": "error",
        "error": f"{type(exc).__name__}: {exc}",
    }


def _skip_entry(name, state, reason):
    return {"name": name, "state": state, "status": "skipped", "reason": reason}


def _mapped_fixed(spec: ModelSpec, l: int) -> ModelSpec:
    """Equivalent mapped-strength spec pinned at the (n=0, l) state.

    States of a physical-strength oscillator or Coulomb spec solve different
    effective Hamiltonians (the mapped strength moves with eps), so mutual
    orthogonality is a property of the fixed-map family; this picks that
    family deterministically.
    """
    qn0 = QuantumNumbers.spin_up(0, l)
    if isinstance(spec, models.Oscillator) and spec.omega is None:
        eps = models.closed_form_epsilon(spec, qn0)
        return models.Oscillator(m=spec.m, omega=models.parameter_map(spec, eps, qn0)["omega"])
    if isinstance(spec, models.Coulomb) and spec.e2 is None:
        eps = models.closed_form_epsilon(spec, qn0)
        return models.Coulomb(m=spec.m, e2=models.parameter_map(spec, eps, qn0)["e2"])
    return spec


def verification_report(
    spec: ModelSpec,
    n_max: int = 1,
    l_max: int = 0,
    tolerances: dict | None = None,
    residual_points: int = 4000,
    grid: GridSpec | None = None,
    oracle_tol: float = 1e-9,
    oracle_max_iter: int = 120,
) -> dict:
    """Run all verification checks over the (n, l) range and build the report.

    Individual check failures and errors are recorded, never fatal; the
    top-level ``passed`` flag is the conjunction over all non-skipped checks.
    """
    models.validate(spec)
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        tol.update(tolerances)
    agree_tol = tol["oracle_agreement"]
    if agree_tol is None:
        agree_tol = models.oracle_tolerance(spec)

    checks: list[dict] = []
    states = [(n, l) for l in range(l_max + 1) for n in range(n_max + 1)]
    for n, l in states:
        qn = QuantumNumbers.spin_up(n, l)
        st = {"n": n, "l": l}

        try:
            eps = models.closed_form_epsilon(spec, qn)
        except DiracSolveError as exc:
            checks.append(_error_entry("spectral_relation", st, exc))
            continue
        checks.append(
            _entry(
                "spectral_relation",
                st,
                models.spectral_residual(spec, qn, eps),
                tol["spectral_relation"],
                epsilon=eps,
            )
        )

        try:
            res = oracle.self_consistent_epsilon(
                spec, qn, grid=grid, tol=oracle_tol, max_iter=oracle_max_iter
            )
            rel = abs(res.eps - eps) / abs(eps)
            checks.append(
                _entry(
                    "oracle_agreement",
                    st,
                    rel,
                    agree_tol,
                    analytic_epsilon=eps,
                    oracle_epsilon=res.eps,
                    iterations=res.iterations,
                )
            )
        except DiracSolveError as exc:
            checks.append(_error_entry("oracle_agreement", st, exc))

        try:
            rgrid = models.residual_grid(spec, qn, points=residual_points)
            state = models.bound_state(spec, qn, rgrid)
            resid, spacing = oracle.schrodinger_residual(state, spec)
            checks.append(
                _entry(
                    "wavefunction_residual",
                    st,
                    resid,
                    tol["wavefunction_residual"],
                    spacing=spacing,
                )
            )
        except DiracSolveError as exc:
            checks.append(_error_entry("wavefunction_residual", st, exc))
            state = None

        if not models.equal_potentials(spec):
            checks.append(
                _skip_entry(
                    "spinor_closure",
                    st,
                    "unequal scalar/vector potentials: the first-order pair "
                    "does not close under the second-order reduction",
                )
            )
        elif state is not None:
            try:
                _, _, closure = oracle.recover_lower_component(state, spec)
                checks.append(
                    _entry("spinor_closure", st, closure, tol["spinor_closure"])
                )
            except DiracSolveError as exc:
                checks.append(_error_entry("spinor_closure", st, exc))

    # Orthogonality per l over the n range, at fixed mapped strength.
    for l in range(l_max + 1):
        st = {"l": l, "n_range": [0, n_max]}
        if spec.kind in _ROOT_FOUND:
            checks.append(
                _skip_entry(
                    "orthogonality",
                    st,
                    "states of different n solve different eps-dependent "
                    "potentials for this model; no orthogonality is claimed",
                )
            )
            continue
        if n_max < 1:
            checks.append(_skip_entry("orthogonality", st, "needs at least two states"))
            continue
        try:
            fixed = _mapped_fixed(spec, l)
            hi = models.default_grid(fixed, QuantumNumbers.spin_up(n_max, l))
            common = GridSpec(hi.r_min, hi.r_max, max(hi.points, 20001))
            sts = [
                models.bound_state(fixed, QuantumNumbers.spin_up(n, l), common)
                for n in range(n_max + 1)
            ]
            gram = oracle.gram_matrix(sts)
            off = float(np.max(np.abs(gram - np.diag(np.diag(gram)))))
            checks.append(
                _entry(
                    "orthogonality",
                    st,
                    off,
                    tol["orthogonality"],
                    fixed_strength=asdict(fixed),
                )
            )
        except DiracSolveError as exc:
            checks.append(_error_entry("orthogonality", st, exc))

    passed = all(c["status"] in ("pass", "skipped") for c in checks)
    report = {
        "meta": {
            "command": "verify",
            "model": spec.kind,
            "parameters": asdict(spec),
            "n_max": n_max,
            "l_max": l_max,
            "tolerances": {
                "spectral_relation": tol["spectral_relation"],
                "oracle_agreement": agree_tol,
                "wavefunction_residual": tol["wavefunction_residual"],
                "spinor_closure": tol["spinor_closure"],
                "orthogonality": tol["orthogonality"],
            },
            "residual_points": residual_points,
        },
        "checks": checks,
        "passed": passed,
    }
    if spec.kind in _ROOT_FOUND:
        agree = [c for c in checks if c["name"] == "oracle_agreement"]
        ok = bool(agree) and all(c["status"] == "pass" for c in agree)
        report["mapping_validation"] = {
            "applies": True,
            "passed": ok,
            "note": (
                "spectral-relation parameters for this model come from a "
                "derived mapping onto the standard solvable form; the mapping "
                "is only trusted where the closed form matches the "
                "finite-difference oracle within tolerance"
            ),
        }
    else:
        report["mapping_validation"] = {"applies": False, "passed": True}
    return report
