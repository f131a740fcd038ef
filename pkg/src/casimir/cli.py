"""Command-line front end: single points, sweeps, and the entropy audit.

Three subcommands share the material/tolerance plumbing:

* ``compute``: one (a, T) point; prints F, E, E0, S with convergence
  diagnostics, or a JSON object with ``--json``.
* ``sweep``: a separation or temperature sweep written as CSV (or JSON),
  one column per (prescription, quantity), rows in axis order; points
  run concurrently under ``--workers`` and failures leave empty cells
  plus a diagnostics sidecar.
* ``audit``: the Nernst-theorem verdict table over separations and
  prescriptions.

Exit codes: 0 success, 1 usage or configuration error, 2 convergence
failure, 3 audit failure (an expected-pass prescription failed).
Warnings go to stderr, never into data files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

import numpy as np

from .constants import CODATA, to_dimensionless
from .lifshitz import (
    Prescription,
    energy_at_T_drude,
    energy_at_T_plasma,
    energy_frozen_gamma,
    energy_T0,
    evaluate_point,
    free_energy,
)
from .materials import Material, Model, aluminum, load_material
from .quadrature import ConvergenceError, ConvergenceSpec
from .thermo import entropy_exact, nernst_audit

_FMT = "%.12e"

_PRESC_ORDER = ("a", "b", "c", "d")
_QUANTITY_ORDER = ("F", "E", "S", "E0", "E_frozen", "ratios")
_PER_PRESCRIPTION = ("F", "E", "S")
_RATIO_BASES = ("F", "E", "E_frozen")


class UsageError(Exception):
    """Bad flags or configuration; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems with exit code 1, not 2."""

    def error(self, message):
        raise UsageError(message)


def _fmt(value) -> str:
    return "" if value is None else _FMT % value


def _load_material(path: str | None) -> Material:
    if path is None:
        return aluminum()
    try:
        return load_material(path)
    except (OSError, ValueError) as exc:
        raise UsageError(f"--material: {exc}") from exc


def _spec(rel_tol: float | None) -> ConvergenceSpec:
    if rel_tol is None:
        return ConvergenceSpec()
    try:
        return ConvergenceSpec(rel_tol=rel_tol)
    except ValueError as exc:
        raise UsageError(f"--rel-tol: {exc}") from exc


def _split_list(raw: str, name: str, allowed: tuple[str, ...]) -> list[str]:
    items = [part.strip() for part in raw.split(",") if part.strip()]
    for item in items:
        if item not in allowed:
            raise UsageError(f"{name}: unknown entry {item!r} (allowed: {', '.join(allowed)})")
    seen: list[str] = []
    for item in items:
        if item not in seen:
            seen.append(item)
    return seen


def _prescriptions_for(model: Model, raw: str | None) -> list[str]:
    """Validated prescription letters for the model, in canonical order."""
    if model is Model.IDEAL:
        if raw:
            raise UsageError("the ideal-metal model takes no zero-frequency prescription")
        return []
    if raw is None:
        raw = "d" if model is Model.PLASMA else "a,b,c"
    wanted = _split_list(raw, "--prescriptions", _PRESC_ORDER)
    for p in wanted:
        if model is Model.PLASMA and p != "d":
            raise UsageError("the plasma model pairs only with prescription d")
        if model is Model.DRUDE and p == "d":
            raise UsageError("prescription d pairs only with the plasma model")
    return [p for p in _PRESC_ORDER if p in wanted]


def _state_for(a: float, T: float, material: Material, model: Model, law=None):
    if model is Model.IDEAL:
        return to_dimensionless(a, T, None, None)
    st = to_dimensionless(a, T, material, law)
    if model is Model.PLASMA:
        st = replace(st, gamma_tilde=0.0)
    return st


def _write_text(out_path: str | None, text: str) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w") as fh:
            fh.write(text)


# ---------------------------------------------------------------- compute


def cmd_compute(args) -> int:
    material = _load_material(args.material)
    spec = _spec(args.rel_tol)
    model = Model(args.model)
    prescs = _prescriptions_for(model, args.prescription)
    if model is not Model.IDEAL and len(prescs) != 1:
        raise UsageError("compute takes exactly one --prescription")
    presc = Prescription(prescs[0]) if prescs else None
    if args.a_um <= 0:
        raise UsageError("--a-um must be positive")
    if args.t_k < 0:
        raise UsageError("--t-k must be nonnegative")

    a = args.a_um * 1e-6
    state = _state_for(a, args.t_k, material, model)
    mat_arg = None if model is Model.IDEAL else material
    E0 = energy_T0(state, model, spec)
    record: dict[str, object] = {
        "a_um": args.a_um,
        "T_K": args.t_k,
        "model": model.value,
        "prescription": presc.value if presc else None,
        "material": material.name if model is not Model.IDEAL else None,
    }
    diagnostics: dict[str, object] = {}
    if args.t_k == 0.0:
        # At T = 0 the free energy and energy coincide with E(a, 0).
        record.update(F=E0, E=E0, E0=E0, S=None)
    else:
        point = evaluate_point(state, model, presc, mat_arg, None, spec)
        ent = entropy_exact(state, model, presc, mat_arg, None, spec)
        record.update(
            F=point.free_energy.total,
            E=point.energy.total,
            E0=E0,
            S=ent.S,
            S_legendre=ent.S_legendre,
        )
        diagnostics = {
            "F_matsubara_terms": point.free_energy.report.terms_used,
            "F_integrand_evals": point.free_energy.report.integrand_evals,
            "F_estimated_tail": point.free_energy.report.estimated_tail,
            "E_matsubara_terms": point.energy.report.terms_used,
            "E_integrand_evals": point.energy.report.integrand_evals,
            "S_method": ent.method.value,
        }

    if args.json:
        payload = dict(record)
        payload["diagnostics"] = diagnostics
        _write_text(args.out, json.dumps(payload, indent=2) + "\n")
        return 0

    lines = [
        "# model=%s prescription=%s material=%s a_um=%s T_K=%s"
        % (
            record["model"],
            record["prescription"] or "-",
            record["material"] or "-",
            _FMT % record["a_um"],
            _FMT % record["T_K"],
        )
    ]
    lines.append("F  = %s J/m^2" % _fmt(record["F"]))
    lines.append("E  = %s J/m^2" % _fmt(record["E"]))
    lines.append("E0 = %s J/m^2" % _fmt(record["E0"]))
    if record["S"] is None:
        lines.append("S  = (not defined at T = 0; see the audit for the limit)")
    else:
        lines.append("S  = %s J/(K m^2)" % _fmt(record["S"]))
    for key, value in diagnostics.items():
        lines.append("# %s = %s" % (key, _fmt(value) if isinstance(value, float) else value))
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


# ------------------------------------------------------------------ sweep


def _sweep_columns(prescs: list[str], quantities: list[str], model: Model) -> list[str]:
    prefixes = prescs if prescs else ["ideal"]
    cols = []
    for p in prefixes:
        cols.extend(f"{p}_{q}" for q in _PER_PRESCRIPTION if q in quantities)
    if "E0" in quantities:
        cols.append("E0")
    if "E_frozen" in quantities:
        cols.append("E_frozen")
    if "ratios" in quantities:
        cols.append("E0_abs")
        for p in prefixes:
            cols.extend(f"{p}_{q}_ratio" for q in ("F", "E") if q in quantities)
        if "E_frozen" in quantities:
            cols.append("E_frozen_ratio")
    return cols


def _sweep_point(task) -> tuple[int, dict | None, str | None]:
    """One sweep row; top level so process pools can pickle it."""
    (idx, a, T, model_name, prescs, quantities, material, rel_tol) = task
    model = Model(model_name)
    spec = _spec(rel_tol)
    try:
        state = _state_for(a, T, material, model)
        mat_arg = None if model is Model.IDEAL else material
        row: dict[str, float] = {}
        need_e0 = "E0" in quantities or "ratios" in quantities
        e0 = energy_T0(state, model, spec) if need_e0 else None
        if "E0" in quantities:
            row["E0"] = e0
        for p in prescs if prescs else [None]:
            prefix = p or "ideal"
            presc = Prescription(p) if p else None
            if "F" in quantities:
                row[f"{prefix}_F"] = free_energy(state, model, presc, mat_arg, None, spec).total
            if "E" in quantities:
                if model is Model.IDEAL:
                    row[f"{prefix}_E"] = evaluate_point(state, model, None, None, None, spec).energy.total
                elif model is Model.PLASMA:
                    row[f"{prefix}_E"] = energy_at_T_plasma(state, spec).total
                else:
                    row[f"{prefix}_E"] = energy_at_T_drude(state, material, None, presc, spec).total
            if "S" in quantities:
                row[f"{prefix}_S"] = entropy_exact(state, model, presc, mat_arg, None, spec).S
        if "E_frozen" in quantities:
            row["E_frozen"] = energy_frozen_gamma(state, spec).total
        if "ratios" in quantities:
            norm = abs(e0)
            row["E0_abs"] = norm
            for p in prescs if prescs else [None]:
                prefix = p or "ideal"
                for q in ("F", "E"):
                    if q in quantities:
                        row[f"{prefix}_{q}_ratio"] = row[f"{prefix}_{q}"] / norm
            if "E_frozen" in quantities:
                row["E_frozen_ratio"] = row["E_frozen"] / norm
        return idx, row, None
    except ConvergenceError as exc:
        return idx, None, str(exc)


def cmd_sweep(args) -> int:
    material = _load_material(args.material)
    _spec(args.rel_tol)  # fail fast on a bad tolerance before any worker sees it
    model = Model(args.model)
    prescs = _prescriptions_for(model, args.prescriptions)
    quantities = _split_list(args.quantities, "--quantities", _QUANTITY_ORDER)
    quantities = [q for q in _QUANTITY_ORDER if q in quantities]
    if "ratios" in quantities and not any(q in quantities for q in _RATIO_BASES):
        raise UsageError("--quantities: ratios need at least one of F, E, E_frozen")
    if args.count < 2:
        raise UsageError("--count must be at least 2")
    if not args.min < args.max:
        raise UsageError("--min must be below --max")
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")

    space = np.geomspace if args.spacing == "log" else np.linspace
    if args.spacing == "log" and args.min <= 0:
        raise UsageError("log spacing needs --min > 0")
    values = [float(v) for v in space(args.min, args.max, args.count)]

    if args.axis == "separation":
        if args.t_k is None:
            raise UsageError("a separation sweep needs --t-k for the fixed temperature")
        if args.t_k < 0:
            raise UsageError("--t-k must be nonnegative")
        if args.min <= 0:
            raise UsageError("separations must be positive")
        axis_col, fixed = "a_um", args.t_k
        points = [(v * 1e-6, fixed) for v in values]
    else:
        if args.a_um is None:
            raise UsageError("a temperature sweep needs --a-um for the fixed separation")
        if args.a_um <= 0:
            raise UsageError("--a-um must be positive")
        if args.min < 0:
            raise UsageError("temperatures must be nonnegative")
        axis_col, fixed = "T_K", args.a_um
        points = [(fixed * 1e-6, v) for v in values]

    thermal_quantities = [q for q in quantities if q != "E0"]
    if thermal_quantities and any(T == 0.0 for _, T in points):
        raise UsageError(
            "T = 0 rows support only --quantities E0; "
            f"requested {', '.join(thermal_quantities)}"
        )

    tasks = [
        (i, a, T, model.value, tuple(prescs), tuple(quantities), material, args.rel_tol)
        for i, (a, T) in enumerate(points)
    ]
    if args.workers == 1:
        results = [_sweep_point(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_sweep_point, tasks))
    results.sort(key=lambda item: item[0])

    columns = [axis_col] + _sweep_columns(prescs, quantities, model)
    failures = [(idx, err) for idx, row, err in results if row is None]
    rows = []
    for idx, row, _err in results:
        cells = {axis_col: values[idx]}
        if row is not None:
            cells.update(row)
        rows.append(cells)

    if args.json:
        payload = [{col: cells.get(col) for col in columns} for cells in rows]
        _write_text(args.out, json.dumps(payload, indent=2) + "\n")
    else:
        lines = [",".join(columns)]
        for cells in rows:
            lines.append(",".join(_fmt(cells.get(col)) for col in columns))
        _write_text(args.out, "\n".join(lines) + "\n")

    if failures:
        diag_lines = [
            f"row {idx} ({axis_col} = {values[idx]!r}): {err}" for idx, err in failures
        ]
        if args.out is not None:
            with open(args.out + ".diag", "w") as fh:
                fh.write("\n".join(diag_lines) + "\n")
        print(
            f"{len(failures)} of {len(rows)} sweep points failed to converge:",
            file=sys.stderr,
        )
        for line in diag_lines:
            print("  " + line, file=sys.stderr)
        return 2
    return 0


# ------------------------------------------------------------------ audit


def cmd_audit(args) -> int:
    material = _load_material(args.material)
    spec = _spec(args.rel_tol)
    prescs = _split_list(args.prescriptions, "--prescriptions", _PRESC_ORDER)
    prescs = [p for p in _PRESC_ORDER if p in prescs]
    expect_pass = _split_list(args.expect_pass, "--expect-pass", _PRESC_ORDER)
    try:
        a_values = [float(part) for part in args.a_um.split(",") if part.strip()]
    except ValueError as exc:
        raise UsageError(f"--a-um: {exc}") from exc
    if not a_values or any(a <= 0 for a in a_values):
        raise UsageError("--a-um needs a comma list of positive separations in um")

    records = []
    unexpected = []
    for a_um in a_values:
        for p in prescs:
            try:
                verdict = nernst_audit(
                    a_um * 1e-6, material, p, method=args.method, spec=spec
                )
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
            records.append(
                {
                    "a_um": a_um,
                    "prescription": p,
                    "verdict": verdict.verdict.value,
                    "S_at_zero": verdict.S_at_zero,
                    "S_at_zero_over_scale": verdict.S_at_zero / verdict.S_scale,
                    "negative_range_K": list(verdict.negative_range)
                    if verdict.negative_range
                    else None,
                }
            )
            if p in expect_pass and verdict.verdict.value != "Pass":
                unexpected.append((a_um, p, verdict.verdict.value))

    if args.json:
        _write_text(args.out, json.dumps(records, indent=2) + "\n")
    else:
        lines = ["a_um,prescription,verdict,S_at_zero,S_at_zero_over_scale,negative_range_K"]
        for rec in records:
            rng = rec["negative_range_K"]
            lines.append(
                "%s,%s,%s,%s,%s,%s"
                % (
                    _FMT % rec["a_um"],
                    rec["prescription"],
                    rec["verdict"],
                    _FMT % rec["S_at_zero"],
                    _FMT % rec["S_at_zero_over_scale"],
                    "" if rng is None else "%.3f..%.3f" % tuple(rng),
                )
            )
        _write_text(args.out, "\n".join(lines) + "\n")

    if unexpected:
        for a_um, p, verdict in unexpected:
            print(
                f"audit: prescription {p} expected to pass, got {verdict} at a = {a_um} um",
                file=sys.stderr,
            )
        return 3
    return 0


# ------------------------------------------------------------------- main


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="casimir",
        description="Free energy, energy, and entropy between parallel metal plates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: _Parser) -> None:
        p.add_argument("--material", help="material config file (default: built-in Al)")
        p.add_argument("--rel-tol", type=float, help="relative tolerance (default 1e-10)")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--json", action="store_true", help="emit JSON instead of text/CSV")

    p = sub.add_parser("compute", help="one (a, T) point")
    common(p)
    p.add_argument("--model", required=True, choices=[m.value for m in Model])
    p.add_argument("--prescription", help="zero-frequency prescription a|b|c|d")
    p.add_argument("--a-um", type=float, required=True, help="separation in um")
    p.add_argument("--t-k", type=float, required=True, help="temperature in K")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="separation or temperature sweep to CSV/JSON")
    common(p)
    p.add_argument("--model", required=True, choices=[m.value for m in Model])
    p.add_argument("--prescriptions", help="comma list among a,b,c,d (default: all valid)")
    p.add_argument("--axis", required=True, choices=["separation", "temperature"])
    p.add_argument("--min", type=float, required=True, help="axis start (um or K)")
    p.add_argument("--max", type=float, required=True, help="axis end (um or K)")
    p.add_argument("--count", type=int, required=True, help="number of points")
    p.add_argument("--spacing", choices=["linear", "log"], default="linear")
    p.add_argument("--a-um", type=float, help="fixed separation for temperature sweeps")
    p.add_argument("--t-k", type=float, help="fixed temperature for separation sweeps")
    p.add_argument(
        "--quantities",
        default="F,E",
        help="comma list among F,E,S,E0,E_frozen,ratios (default F,E)",
    )
    p.add_argument("--workers", type=int, default=1, help="concurrent point budget")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("audit", help="Nernst-theorem verdicts per (a, prescription)")
    common(p)
    p.add_argument("--a-um", required=True, help="comma list of separations in um")
    p.add_argument("--prescriptions", default="a,b,c,d", help="comma list among a,b,c,d")
    p.add_argument(
        "--expect-pass",
        default="b,d",
        help="prescriptions whose failure sets exit code 3 (default b,d)",
    )
    p.add_argument(
        "--method",
        choices=["perturbative", "exact"],
        default="perturbative",
        help="entropy route for the audit grid",
    )
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
