"""Command-line interface.

Subcommands
-----------
spectrum       bound-state energies and decomposition pieces over an (n, l) range
wavefunction   sampled upper component G and recovered lower component F
verify         cross-validation report (closed form vs oracle), JSON
export-table   machine-readable model catalog: coefficient functions,
               coordinate maps, spectral relations and energies

Exit codes: 0 success, 1 verification failure, 2 usage or validation error,
3 no bound state in the requested range, 4 solver non-convergence.

Flags override values from an optional JSON config file (``--config``),
which in turn overrides built-in defaults.  Outputs are deterministic:
fixed key order, shortest round-trip floats, no timestamps.  ``--plot``
renders a matplotlib figure next to the data file (requires ``--output``).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import models, oracle, plots
from .errors import (
    ConvergenceError,
    DomainError,
    GridMismatchError,
    NoBoundStateError,
    SingularPotentialError,
    UnsupportedFamilyError,
    ValidationError,
)
from .factorization import QuantumNumbers
from .grids import GridSpec
from .models import ModelSpec
from .output import render_csv, render_json, write_text
from .verify import verification_report

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracsolve",
        description="Radial Dirac bound states for solvable potential models "
        "(natural units, hbar = c = 1).",
        epilog="exit codes: 0 success, 1 verification failure, 2 usage/validation, "
        "3 no bound state, 4 non-convergence",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, model_required: bool = True) -> None:
        p.add_argument(
            "--model",
            choices=sorted(models.MODEL_KINDS),
            required=False,
            help="potential model" + ("" if model_required else " (default: all)"),
        )
        p.add_argument("--m", type=float, default=None, help="rest mass (default 1.0)")
        p.add_argument("--a", type=float, default=None,
                       help="oscillator strength, or inverse length of the "
                       "exponential/tanh/coth wells")
        p.add_argument("--omega", type=float, default=None, help="oscillator frequency (mapped strength)")
        p.add_argument("--b", type=float, default=None, help="coulomb strength")
        p.add_argument("--e2", type=float, default=None, help="coulomb mapped strength e^2")
        p.add_argument("--A", type=float, default=None, help="well strength A")
        p.add_argument("--B", type=float, default=None, help="well strength/offset B")
        p.add_argument("--C", type=float, default=None, help="vector well strength C (morse)")
        p.add_argument("--grid-rmin", type=float, default=None)
        p.add_argument("--grid-rmax", type=float, default=None)
        p.add_argument("--grid-points", type=int, default=None)
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--output", default=None, help="output path (default: stdout)")
        p.add_argument("--config", default=None, help="JSON config file; flags take precedence")
        p.add_argument("--plot", action="store_true", default=None,
                       help="also render a figure next to --output")
        p.add_argument("--spectral-max-iter", type=int, default=None,
                       help="iteration cap for the spectral root finder")

    ps = sub.add_parser("spectrum", help="bound-state energies over an (n, l) range")
    common(ps)
    ps.add_argument("--n-max", type=int, default=None, help="top radial index (default 0)")
    ps.add_argument("--l-max", type=int, default=None, help="top orbital index (default 0)")

    pw = sub.add_parser("wavefunction", help="sample G(r) and the recovered F(r)")
    common(pw)
    pw.add_argument("--n", type=int, default=None, help="radial index (default 0)")
    pw.add_argument("--l", type=int, default=None, help="orbital index (default 0)")

    pv = sub.add_parser("verify", help="closed form vs oracle verification report (JSON)")
    common(pv)
    pv.add_argument("--n-max", type=int, default=None, help="top radial index (default 1)")
    pv.add_argument("--l-max", type=int, default=None, help="top orbital index (default 0)")
    pv.add_argument("--tol-spectral", type=float, default=None)
    pv.add_argument("--tol-oracle", type=float, default=None)
    pv.add_argument("--tol-residual", type=float, default=None)
    pv.add_argument("--tol-closure", type=float, default=None)
    pv.add_argument("--tol-orthogonality", type=float, default=None)
    pv.add_argument("--residual-points", type=int, default=None)
    pv.add_argument("--oracle-tol", type=float, default=None)
    pv.add_argument("--oracle-max-iter", type=int, default=None)

    pt = sub.add_parser("export-table", help="machine-readable model catalog")
    common(pt, model_required=False)
    return parser


# --------------------------------------------------------------------------
# Option handling


def _load_options(args: argparse.Namespace) -> dict:
    """CLI values override config-file values; None means unset."""
    opts = {k: v for k, v in vars(args).items() if k != "config"}
    if args.config:
        try:
            cfg = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read config file {args.config}: {exc}")
        if not isinstance(cfg, dict):
            raise ValidationError("config file must hold a JSON object")
        for key, value in cfg.items():
            dest = key.replace("-", "_")
            if dest not in opts:
                raise ValidationError(f"unknown config key {key!r}")
            if opts[dest] is None:
                opts[dest] = value
    return opts


def _opt(opts: dict, key: str, default):
    value = opts.get(key)
    return default if value is None else value


def _build_spec(opts: dict) -> ModelSpec:
    kind = opts.get("model")
    if not kind:
        raise ValidationError("--model is required")
    m = float(_opt(opts, "m", 1.0))
    if kind == "oscillator":
        spec = models.Oscillator(m=m, a=opts.get("a"), omega=opts.get("omega"))
    elif kind == "coulomb":
        spec = models.Coulomb(m=m, b=opts.get("b"), e2=opts.get("e2"))
    elif kind == "morse":
        missing = [f for f in ("A", "C", "B", "a") if opts.get(f) is None]
        if missing:
            raise ValidationError(f"morse requires --{' --'.join(missing)}")
        spec = models.Morse(m=m, A=opts["A"], C=opts["C"], B=opts["B"], a=opts["a"])
    elif kind in ("rosen-morse", "eckart"):
        missing = [f for f in ("A", "B", "a") if opts.get(f) is None]
        if missing:
            raise ValidationError(f"{kind} requires --{' --'.join(missing)}")
        cls = models.MODEL_KINDS[kind]
        spec = cls(m=m, A=opts["A"], B=opts["B"], a=opts["a"])
    else:
        raise ValidationError(f"unknown model {kind!r}")
    return models.validate(spec)


def _build_grid(opts: dict) -> GridSpec | None:
    keys = ("grid_rmin", "grid_rmax", "grid_points")
    given = [opts.get(k) for k in keys]
    if all(v is None for v in given):
        return None
    if any(v is None for v in given):
        raise ValidationError("--grid-rmin, --grid-rmax and --grid-points go together")
    return GridSpec(float(given[0]), float(given[1]), int(given[2]))


def _plot_path(opts: dict) -> str | None:
    if not opts.get("plot"):
        return None
    out = opts.get("output")
    if out is None:
        raise ValidationError("--plot requires --output so the figure has a home")
    return str(Path(out).with_suffix(".png"))


def _range(opts: dict, key: str, default: int) -> int:
    value = int(_opt(opts, key, default))
    if value < 0:
        raise ValidationError(f"--{key.replace('_', '-')} must be >= 0")
    return value


# --------------------------------------------------------------------------
# Subcommands


def _cmd_spectrum(opts: dict) -> int:
    spec = _build_spec(opts)
    n_max = _range(opts, "n_max", 0)
    l_max = _range(opts, "l_max", 0)
    max_iter = int(_opt(opts, "spectral_max_iter", 200))
    rows = []
    for l in range(l_max + 1):
        for n in range(n_max + 1):
            qn = QuantumNumbers.spin_up(n, l)
            eps = models.closed_form_epsilon(spec, qn, max_iter=max_iter)
            dec = models.decompose(spec, qn, eps)
            rows.append(
                {
                    "n": n,
                    "l": l,
                    "eps": eps,
                    "E": eps * eps - spec.m**2,
                    "E_f": dec.E_f,
                    "E_F": dec.E_F,
                }
            )
    meta = {
        "command": "spectrum",
        "model": spec.kind,
        "parameters": asdict(spec),
        "n_max": n_max,
        "l_max": l_max,
        "branch": "k = -(l+1)",
    }
    if _opt(opts, "format", "csv") == "json":
        text = render_json({"meta": meta, "rows": rows})
    else:
        header = ["n", "l", "eps", "E", "E_f", "E_F"]
        text = render_csv(meta, header, [[r[h] for h in header] for r in rows])
    write_text(text, opts.get("output"))
    fig = _plot_path(opts)
    if fig:
        plots.save_spectrum_figure(rows, meta, fig)
    return 0


def _cmd_wavefunction(opts: dict) -> int:
    spec = _build_spec(opts)
    n = _range(opts, "n", 0)
    l = _range(opts, "l", 0)
    qn = QuantumNumbers.spin_up(n, l)
    grid = _build_grid(opts) or models.default_grid(spec, qn)
    state = models.bound_state(spec, qn, grid)
    _, F_interior, closure = oracle.recover_lower_component(
        state, spec, on_singularity="mask"
    )
    F_full = np.full_like(state.G, np.nan)
    F_full[1:-1] = F_interior
    meta = {
        "command": "wavefunction",
        "model": spec.kind,
        "parameters": asdict(spec),
        "quantum_numbers": {"n": n, "l": l, "k": qn.k},
        "epsilon": state.eps,
        "E": state.E,
        "alpha": state.alpha,
        "beta": state.beta,
        "grid": {"r_min": grid.r_min, "r_max": grid.r_max, "points": grid.points},
        "normalization": "unit trapezoidal norm of G",
        "closure_residual": closure,
        "F_note": "F from the first-order pair; NaN/null at endpoints and "
        "where eps + m + V_S - V_V vanishes",
    }
    fmt_kind = _opt(opts, "format", "csv")
    if fmt_kind == "json":
        rows = [
            {
                "r": float(rv),
                "G": float(gv),
                "F": (None if math.isnan(fv) else float(fv)),
            }
            for rv, gv, fv in zip(state.r, state.G, F_full)
        ]
        text = render_json({"meta": meta, "rows": rows})
    else:
        body = [[float(rv), float(gv), float(fv)] for rv, gv, fv in zip(state.r, state.G, F_full)]
        text = render_csv(meta, ["r", "G", "F"], body)
    write_text(text, opts.get("output"))
    fig = _plot_path(opts)
    if fig:
        mask = np.isfinite(F_full)
        plots.save_wavefunction_figure(
            state.r, state.G, state.r[mask], F_full[mask], meta, fig
        )
    return 0


def _cmd_verify(opts: dict) -> int:
    if opts.get("format") == "csv":
        raise ValidationError("verify emits a JSON report only")
    spec = _build_spec(opts)
    tolerances = {}
    for flag, name in (
        ("tol_spectral", "spectral_relation"),
        ("tol_oracle", "oracle_agreement"),
        ("tol_residual", "wavefunction_residual"),
        ("tol_closure", "spinor_closure"),
        ("tol_orthogonality", "orthogonality"),
    ):
        if opts.get(flag) is not None:
            tolerances[name] = float(opts[flag])
    report = verification_report(
        spec,
        n_max=_range(opts, "n_max", 1),
        l_max=_range(opts, "l_max", 0),
        tolerances=tolerances,
        residual_points=int(_opt(opts, "residual_points", 4000)),
        grid=_build_grid(opts),
        oracle_tol=float(_opt(opts, "oracle_tol", 1e-9)),
        oracle_max_iter=int(_opt(opts, "oracle_max_iter", 120)),
    )
    write_text(render_json(report), opts.get("output"))
    fig = _plot_path(opts)
    if fig:
        plots.save_verification_figure(report, fig)
    return 0 if report["passed"] else 1


def _cmd_export_table(opts: dict) -> int:
    if opts.get("model"):
        kinds = [opts["model"]]
        explicit = any(opts.get(k) is not None for k in ("a", "omega", "b", "e2", "A", "B", "C"))
        specs = {opts["model"]: _build_spec(opts) if explicit else models.DEFAULT_SPECS[opts["model"]]}
    else:
        kinds = sorted(models.DEFAULT_SPECS)
        specs = dict(models.DEFAULT_SPECS)
    max_iter = int(_opt(opts, "spectral_max_iter", 200))
    rows = []
    for kind in kinds:
        spec = models.validate(specs[kind])
        if isinstance(spec, (models.Oscillator, models.Coulomb)):
            qns = [(n, l) for l in (0, 1) for n in (0, 1, 2)]
        else:
            qns = [(n, 0) for n in (0, 1)]
        states = []
        for n, l in qns:
            qn = QuantumNumbers.spin_up(n, l)
            eps = models.closed_form_epsilon(spec, qn, max_iter=max_iter)
            pm = models.parameter_map(spec, eps, qn)
            entry = {"n": n, "l": l, "eps": eps, "alpha": float(pm["alpha"])}
            if "beta" in pm:
                entry["beta"] = float(pm["beta"])
            states.append(entry)
        qn0 = QuantumNumbers.spin_up(0, 0)
        eps0 = models.closed_form_epsilon(spec, qn0, max_iter=max_iter)
        fam, poly, _ = models.family_data(spec, eps0, qn0)
        rows.append(
            {
                "model": kind,
                "parameters": asdict(spec),
                "polynomial": type(poly).__name__.lower(),
                "sigma": fam.sigma_label,
                "tau": fam.tau_label,
                "sigma_tilde": fam.sigma_tilde_label,
                "s_map": fam.s_label,
                "wavefunction": models.wavefunction_label(spec),
                "spectral_relation": models.spectral_relation_label(spec),
                "states": states,
            }
        )
    meta = {"command": "export-table", "models": kinds}
    if _opt(opts, "format", "json") == "csv":
        header = ["model", "n", "l", "eps", "alpha", "beta", "sigma", "tau", "s_map", "polynomial"]
        body = []
        for row in rows:
            for st in row["states"]:
                body.append(
                    [
                        row["model"],
                        st["n"],
                        st["l"],
                        st["eps"],
                        st["alpha"],
                        st.get("beta", ""),
                        row["sigma"],
                        row["tau"],
                        row["s_map"],
                        row["polynomial"],
                    ]
                )
        text = render_csv(meta, header, body)
    else:
        text = render_json({"meta": meta, "rows": rows})
    write_text(text, opts.get("output"))
    return 0


_DISPATCH = {
    "spectrum": _cmd_spectrum,
    "wavefunction": _cmd_wavefunction,
    "verify": _cmd_verify,
    "export-table": _cmd_export_table,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        opts = _load_options(args)
        return _DISPATCH[args.command](opts)
    except (
        ValidationError,
        DomainError,
        UnsupportedFamilyError,
        GridMismatchError,
        SingularPotentialError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NoBoundStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
