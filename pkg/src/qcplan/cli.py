"""Command-line front end.

Subcommands: estimate | simulate | fit | plan | table.  Every JSON
artifact embeds the resolved configuration, the seed, the tool version,
and provenance tags for each constant (published anchor, Monte Carlo
fit, or user input), so any number in any output can be recomputed from
the artifact alone.  A --config JSON file supplies defaults that
explicit flags override.  Environment variables are never consulted.

Exit codes: 0 success, 1 domain error (e.g. physical rate above
threshold), 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import os
import sys

from . import __version__
from . import cost as cost_mod
from . import fitting, hardware, scaling, sim
from .backend import BACKEND
from .errors import ConfigError, QcplanError
from .presets import PRESET_PROVENANCE, SCALING_PRESETS, get_preset
from .schema import load_schema, validate

SWEEP_COLUMNS = [
    "d",
    "p",
    "trials",
    "failures",
    "p_l_hat",
    "std_err",
    "x_failures",
    "z_failures",
    "ceiling_exceeded",
]

_FLOAT_FMT = "%.10g"


def _envelope(command: str, seed, config: dict, provenance: dict, result: dict) -> dict:
    doc = {
        "tool": "qcplan",
        "version": __version__,
        "command": command,
        "seed": seed,
        "config": config,
        "provenance": provenance,
        "result": result,
    }
    validate(doc, load_schema("envelope"))
    return doc


def _write_json(doc: dict, path: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _parse_list(text: str, conv):
    try:
        return [conv(tok) for tok in str(text).split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"cannot parse list {text!r}: {exc}") from None


def _merge_config(args: argparse.Namespace, parser_defaults: dict) -> dict:
    """Resolved options: defaults, then --config file values, then flags."""
    merged = dict(parser_defaults)
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                file_cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {args.config}: {exc}") from None
        if not isinstance(file_cfg, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = set(file_cfg) - set(parser_defaults)
        if unknown:
            raise ConfigError(f"unknown config key(s): {sorted(unknown)}")
        merged.update(file_cfg)
    for key in parser_defaults:
        val = getattr(args, key, None)
        if val is not None:
            merged[key] = val
    return merged


def _load_hardware_overrides(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read hardware overrides {path}: {exc}") from None
    validate(data, load_schema("hardware_overrides"))
    return data


def _resolve_scaling(cfg: dict) -> tuple[scaling.ScalingParams, str]:
    """Scaling constants plus a provenance tag, from --c1/--c2, a preset
    file written by `fit`, or a named preset."""
    if (cfg.get("c1") is None) != (cfg.get("c2") is None):
        raise ConfigError("--c1 and --c2 must be given together")
    if cfg.get("c1") is not None:
        return scaling.ScalingParams(cfg["c1"], cfg["c2"]), "user: explicit c1/c2"
    if cfg.get("preset_file"):
        try:
            with open(cfg["preset_file"]) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read preset file: {exc}") from None
        validate(data, load_schema("scaling_preset"))
        return (
            scaling.ScalingParams(data["c1"], data["c2"]),
            f"preset file {cfg['preset_file']}: {data['provenance']}",
        )
    name = cfg.get("preset") or "fitted"
    try:
        params = get_preset(name)
    except KeyError as exc:
        raise ConfigError(str(exc)) from None
    return params, f"preset {name}: {PRESET_PROVENANCE[name]}"


# ---------------------------------------------------------------------------
# estimate
# ---------------------------------------------------------------------------

_ESTIMATE_DEFAULTS = {
    "preset": None,
    "preset_file": None,
    "c1": None,
    "c2": None,
    "p": None,
    "target_pl": None,
    "logical": 1,
    "platform": None,
    "qubits_per_cell": None,
    "efficiency": None,
    "confidence": 0.5,
    "ppq": "1000,1.00,0.01",
    "params": None,
    "json": None,
}


def cmd_estimate(args: argparse.Namespace) -> int:
    cfg = _merge_config(args, _ESTIMATE_DEFAULTS)
    if cfg["p"] is None or cfg["target_pl"] is None or cfg["platform"] is None:
        raise ConfigError("estimate requires --p, --target-pl and --platform")
    params, scaling_prov = _resolve_scaling(cfg)
    overrides = _load_hardware_overrides(cfg["params"])
    n_logical = int(cfg["logical"])
    if n_logical < 1:
        raise ConfigError("--logical must be >= 1")

    d = scaling.required_distance(cfg["p"], cfg["target_pl"], params)
    per_logical = scaling.qubits_for_distance(d)
    p_l_at_d = scaling.logical_error_rate(cfg["p"], d, params)
    platform = cfg["platform"]

    if platform == "superconducting":
        hw, over = hardware.load_overrides("superconducting", overrides.get("superconducting"))
        plan = hardware.plan_superconducting_bilinear(d, n_logical, hw)
        total_physical = plan.physical_qubits_bilinear_total
        plan_dict = plan.as_dict()
    elif platform == "iontrap":
        hw, over = hardware.load_overrides("iontrap", overrides.get("iontrap"))
        total_physical = per_logical * n_logical
        plan = hardware.plan_ion_trap(total_physical, hw)
        plan_dict = plan.as_dict()
    elif platform == "nv":
        hw, over = hardware.load_overrides("nv", overrides.get("nv"))
        if cfg["qubits_per_cell"] is None:
            raise ConfigError(
                "platform nv requires --qubits-per-cell (the unit-cell qubit "
                "count has no published value)"
            )
        qpc = int(cfg["qubits_per_cell"])
        patch_total = per_logical * n_logical
        cells_needed = -(-patch_total // qpc)
        cells_x = math.isqrt(cells_needed)
        if cells_x * cells_x < cells_needed:
            cells_x += 1
        cells_y = -(-cells_needed // cells_x)
        plan = hardware.plan_raussendorf_cells(
            cells_x, cells_y, qpc, hw, efficiency=cfg["efficiency"],
            confidence=cfg["confidence"],
        )
        total_physical = plan.qubits_estimate
        plan_dict = plan.as_dict()
    else:
        raise ConfigError(f"unknown platform {platform!r}")

    provenance = {
        "scaling_params": scaling_prov,
        "hardware_params": "published anchors"
        + (f" with user overrides: {over}" if over else ""),
        "ppq_points": "user" if cfg["ppq"] != _ESTIMATE_DEFAULTS["ppq"]
        else "published table columns",
    }
    if platform == "nv":
        provenance["nv_cell_layout"] = (
            "near-square cell grid covering the patch qubit budget; "
            "qubits_per_cell is user input"
        )

    ppq_points = [cost_mod.PricePoint.from_dollars(tok) for tok in str(cfg["ppq"]).split(",")]
    cost_lines = []
    for pp in ppq_points:
        mc = cost_mod.machine_cost(total_physical, pp)
        cost_lines.append(
            {
                "ppq_cents": pp.cents,
                "ppq": cost_mod.format_usd(pp.cents),
                "total_cents": mc.total_cents,
                "total": mc.formatted,
            }
        )

    # echo resolved constants, not just the overrides file path, so every
    # number stays recomputable from the artifact alone
    cfg = dict(cfg)
    cfg["resolved_scaling_params"] = {"c1": params.c1, "c2": params.c2}
    cfg["resolved_hardware_params"] = dataclasses.asdict(hw)

    result = {
        "required_distance": d,
        "physical_qubits_per_logical": per_logical,
        "logical_qubits": n_logical,
        "total_physical_qubits": total_physical,
        "logical_error_rate_at_distance": p_l_at_d,
        "threshold": scaling.threshold(params),
        "platform": platform,
        "platform_plan": plan_dict,
        "cost_lines": cost_lines,
        "saturated": scaling.is_saturated(p_l_at_d),
    }
    validate(result, load_schema("estimate_result"))
    doc = _envelope("estimate", None, _public_config(cfg), provenance, result)

    print(f"required distance:        d = {d}")
    print(f"physical per logical:     {per_logical}")
    print(f"logical qubits:           {n_logical}")
    print(f"total physical qubits:    {total_physical}  ({platform})")
    print(f"achieved logical rate:    {p_l_at_d:.3e} (target {cfg['target_pl']:g})")
    print(f"threshold (1/c2):         {scaling.threshold(params):.4g}")
    for line in cost_lines:
        print(f"cost @ {line['ppq']}/qubit: {line['total']}")
    if cfg["json"]:
        _write_json(doc, cfg["json"])
    return 0


def _public_config(cfg: dict) -> dict:
    return {k: v for k, v in cfg.items() if k != "json"}


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

_SIMULATE_DEFAULTS = {
    "distances": "3,5,7",
    "p_values": None,
    "trials": 100000,
    "seed": 0,
    "noise": "code-capacity",
    "rounds": None,
    "measurement_error": None,
    "pauli": "balanced",
    "workers": None,
    "ceiling": sim.DEFAULT_DEFECT_CEILING,
    "csv": None,
    "json": None,
}


def _noise_from_config(cfg: dict, p: float) -> sim.NoiseModel:
    kind = sim.NoiseKind(cfg["noise"])
    return sim.NoiseModel(
        kind=kind,
        p=p,
        balanced=cfg["pauli"] == "balanced",
        rounds=cfg["rounds"] if kind is sim.NoiseKind.PHENOMENOLOGICAL else None,
        measurement_error=(
            cfg["measurement_error"] if kind is sim.NoiseKind.PHENOMENOLOGICAL else None
        ),
    )


def run_sweep(cfg: dict) -> list[dict]:
    distances = _parse_list(cfg["distances"], int)
    p_values = _parse_list(cfg["p_values"], float)
    workers = cfg["workers"] or os.cpu_count() or 1
    rows = []
    total = len(distances) * len(p_values)
    done = 0
    for d in distances:
        for p in p_values:
            noise = _noise_from_config(cfg, p)
            est = sim.run_monte_carlo(
                d,
                noise,
                int(cfg["trials"]),
                base_seed=int(cfg["seed"]),
                workers=workers,
                defect_ceiling=int(cfg["ceiling"]),
            )
            rows.append(
                {
                    "d": d,
                    "p": p,
                    "trials": est.trials,
                    "failures": est.failures,
                    "p_l_hat": est.p_l_hat,
                    "std_err": est.std_err,
                    "x_failures": est.x_failures,
                    "z_failures": est.z_failures,
                    "ceiling_exceeded": est.ceiling_exceeded,
                }
            )
            done += 1
            print(f"[{done}/{total}] d={d} p={p:g} p_l={est.p_l_hat:.6g}", file=sys.stderr)
    return rows


def _rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        out = []
        for col in SWEEP_COLUMNS:
            val = row[col]
            out.append(_FLOAT_FMT % val if isinstance(val, float) else str(val))
        writer.writerow(out)
    return buf.getvalue()


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _merge_config(args, _SIMULATE_DEFAULTS)
    if cfg["p_values"] is None:
        raise ConfigError("simulate requires --p-values")
    if int(cfg["trials"]) < 1:
        raise ConfigError("--trials must be >= 1")
    for d in _parse_list(cfg["distances"], int):
        if d % 2 == 0 or d < 3:
            raise ConfigError(f"distances must be odd and >= 3, got {d}")
    rows = run_sweep(cfg)
    text = _rows_to_csv(rows)
    if cfg["csv"]:
        with open(cfg["csv"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    result = {"csv_columns": SWEEP_COLUMNS, "rows": rows}
    validate(result, load_schema("sweep_result"))
    doc = _envelope(
        "simulate",
        int(cfg["seed"]),
        _public_config(cfg),
        {"rng": "per-trial counter streams, trial i uses seed base+i",
         "backend": BACKEND},
        result,
    )
    if cfg["json"]:
        _write_json(doc, cfg["json"])
    elif cfg["csv"]:
        _write_json(doc, cfg["csv"] + ".meta.json")
    return 0


# ---------------------------------------------------------------------------
# fit
# ---------------------------------------------------------------------------

_FIT_DEFAULTS = {
    "csv": None,
    "json": None,
    "preset_out": None,
    "min_failures": fitting.DEFAULT_MIN_FAILURES,
}


def _read_sweep_csv(path: str) -> list[dict]:
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header != SWEEP_COLUMNS:
                raise ConfigError(
                    f"unexpected CSV columns {header}; expected {SWEEP_COLUMNS}"
                )
            rows = []
            for lineno, rec in enumerate(reader, start=2):
                if len(rec) != len(SWEEP_COLUMNS):
                    raise ConfigError(f"{path}:{lineno}: wrong field count")
                try:
                    rows.append(
                        {
                            "d": int(rec[0]),
                            "p": float(rec[1]),
                            "trials": int(rec[2]),
                            "failures": int(rec[3]),
                            "p_l_hat": float(rec[4]),
                            "std_err": float(rec[5]),
                            "x_failures": int(rec[6]),
                            "z_failures": int(rec[7]),
                            "ceiling_exceeded": int(rec[8]),
                        }
                    )
                except ValueError as exc:
                    raise ConfigError(f"{path}:{lineno}: {exc}") from None
    except OSError as exc:
        raise ConfigError(f"cannot read sweep CSV: {exc}") from None
    if not rows:
        raise ConfigError(f"{path}: no data rows")
    return rows


def cmd_fit(args: argparse.Namespace) -> int:
    cfg = _merge_config(args, _FIT_DEFAULTS)
    if not cfg["csv"]:
        raise ConfigError("fit requires --csv (a sweep produced by `qcplan simulate`)")
    rows = _read_sweep_csv(cfg["csv"])

    curves: dict[int, list[tuple[float, float]]] = {}
    for row in rows:
        curves.setdefault(row["d"], []).append((row["p"], row["p_l_hat"]))
    crossing_estimates = []
    distances = sorted(curves)
    for d_small, d_big in zip(distances, distances[1:]):
        try:
            crossing = fitting.estimate_threshold(
                {d_small: curves[d_small], d_big: curves[d_big]}
            )
        except QcplanError:
            crossing = None
        crossing_estimates.append(
            {"d_small": d_small, "d_big": d_big, "crossing_p": crossing}
        )
    crossings = [c["crossing_p"] for c in crossing_estimates if c["crossing_p"]]
    p_cap = min(crossings) if crossings else None

    points = [
        fitting.FitPoint(
            p=row["p"], d=row["d"], p_l_hat=row["p_l_hat"],
            std_err=row["std_err"], failures=row["failures"],
        )
        for row in rows
        if p_cap is None or row["p"] < p_cap
    ]
    fit = fitting.fit_scaling(points, min_failures=int(cfg["min_failures"]))
    result = {
        "c1_hat": fit.c1_hat,
        "c2_hat": fit.c2_hat,
        "r2": fit.residual_r2,
        "threshold_from_fit": fit.threshold_hat,
        "crossing_estimates": crossing_estimates,
        "points_used": [
            {"p": pt.p, "d": pt.d, "p_l_hat": pt.p_l_hat,
             "std_err": pt.std_err, "failures": pt.failures}
            for pt in fit.points_used
        ],
        "points_dropped": len(rows) - len(fit.points_used),
    }
    validate(result, load_schema("fit_result"))
    provenance = {
        "input": f"sweep CSV {cfg['csv']}",
        "fit": "weighted least squares on log p_l; points below the smallest "
               "pairwise crossing, at least 10 observed failures",
    }
    doc = _envelope("fit", None, _public_config(cfg), provenance, result)
    print(f"c1_hat = {fit.c1_hat:.6g}")
    print(f"c2_hat = {fit.c2_hat:.6g}  (threshold 1/c2 = {fit.threshold_hat:.4g})")
    print(f"r^2 = {fit.residual_r2:.6f} on {len(fit.points_used)} points")
    for ce in crossing_estimates:
        label = "none" if ce["crossing_p"] is None else f"{ce['crossing_p']:.4f}"
        print(f"crossing d={ce['d_small']} vs d={ce['d_big']}: {label}")
    if cfg["json"]:
        _write_json(doc, cfg["json"])
    if cfg["preset_out"]:
        preset = {
            "c1": fit.c1_hat,
            "c2": fit.c2_hat,
            "provenance": f"fitted from {cfg['csv']} by qcplan {__version__}",
        }
        validate(preset, load_schema("scaling_preset"))
        with open(cfg["preset_out"], "w") as fh:
            json.dump(preset, fh, indent=2)
            fh.write("\n")
    return 0


# ---------------------------------------------------------------------------
# plan
# ---------------------------------------------------------------------------

_PLAN_DEFAULTS = {
    "qubits": None,
    "distance": None,
    "logical": 1,
    "cells_x": None,
    "cells_y": None,
    "qubits_per_cell": None,
    "efficiency": None,
    "confidence": 0.5,
    "rows": None,
    "cols": None,
    "dead": 0,
    "params": None,
    "json": None,
}


def cmd_plan(args: argparse.Namespace) -> int:
    cfg = _merge_config(args, _PLAN_DEFAULTS)
    platform = args.platform
    overrides = _load_hardware_overrides(cfg["params"])
    over: list[str] = []
    hw = None
    if platform == "iontrap":
        if cfg["qubits"] is None:
            raise ConfigError("plan iontrap requires --qubits")
        hw, over = hardware.load_overrides("iontrap", overrides.get("iontrap"))
        plan = hardware.plan_ion_trap(int(float(cfg["qubits"])), hw)
    elif platform == "superconducting":
        if cfg["distance"] is None:
            raise ConfigError("plan superconducting requires --distance")
        hw, over = hardware.load_overrides(
            "superconducting", overrides.get("superconducting")
        )
        plan = hardware.plan_superconducting_bilinear(
            int(cfg["distance"]), int(cfg["logical"]), hw
        )
    elif platform == "nv":
        if cfg["cells_x"] is None or cfg["cells_y"] is None:
            raise ConfigError("plan nv requires --cells-x and --cells-y")
        hw, over = hardware.load_overrides("nv", overrides.get("nv"))
        plan = hardware.plan_raussendorf_cells(
            int(float(cfg["cells_x"])),
            int(float(cfg["cells_y"])),
            None if cfg["qubits_per_cell"] is None else int(cfg["qubits_per_cell"]),
            hw,
            efficiency=cfg["efficiency"],
            confidence=float(cfg["confidence"]),
        )
    elif platform == "grid":
        if cfg["rows"] is None or cfg["cols"] is None:
            raise ConfigError("plan grid requires --rows and --cols")
        plan = hardware.grid_summary(int(cfg["rows"]), int(cfg["cols"]), int(cfg["dead"]))
    else:  # pragma: no cover - argparse restricts choices
        raise ConfigError(f"unknown platform {platform!r}")

    plan_dict = plan.as_dict()
    result = {"platform": platform, "plan": plan_dict, "overridden_params": over}
    validate(result, load_schema("plan_result"))
    provenance = {
        "hardware_params": "published anchors"
        + (f" with user overrides: {over}" if over else "")
    }
    echo = {**_public_config(cfg), "platform": platform}
    if hw is not None:
        echo["resolved_hardware_params"] = dataclasses.asdict(hw)
    doc = _envelope("plan", None, echo, provenance, result)
    width = max(len(k) for k in plan_dict)
    for key, val in plan_dict.items():
        print(f"{key.ljust(width)}  {val}")
    if cfg["json"]:
        _write_json(doc, cfg["json"])
    return 0


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

_TABLE_DEFAULTS = {
    "counts": "2e7,2e8",
    "ppqs": "1000,1.00,0.01",
    "csv": None,
    "json": None,
}


def cmd_table(args: argparse.Namespace) -> int:
    cfg = _merge_config(args, _TABLE_DEFAULTS)
    counts = [int(float(tok)) for tok in str(cfg["counts"]).split(",") if tok.strip()]
    ppq_tokens = [tok.strip() for tok in str(cfg["ppqs"]).split(",") if tok.strip()]
    if not counts or not ppq_tokens:
        raise ConfigError("table requires non-empty --counts and --ppqs")
    ppqs = [cost_mod.PricePoint.from_dollars(tok) for tok in ppq_tokens]
    table = cost_mod.cost_table(counts, ppqs)
    text = table.as_text()
    cells = [
        {
            "qubits": c.qubits,
            "ppq_cents": c.ppq.cents,
            "total_cents": c.total_cents,
            "formatted": c.formatted,
            "anchor_cents": c.anchor_cents,
            "anchor_discrepancy": c.anchor_discrepancy,
        }
        for c in table.cells
    ]
    result = {"cells": cells, "text": text}
    validate(result, load_schema("table_result"))
    doc = _envelope(
        "table", None, _public_config(cfg),
        {"anchors": "published cost table; the $0.01 nitrogenase cell "
                    "disagrees with its own rows and stays flagged"},
        result,
    )
    print(text)
    if cfg["csv"]:
        with open(cfg["csv"], "w") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["qubits", "ppq_cents", "total_cents", "formatted",
                             "anchor_cents", "anchor_discrepancy"])
            for c in cells:
                writer.writerow([c["qubits"], c["ppq_cents"], c["total_cents"],
                                 c["formatted"], c["anchor_cents"], c["anchor_discrepancy"]])
    if cfg["json"]:
        _write_json(doc, cfg["json"])
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcplan",
        description="Surface-code scaling, Monte Carlo validation, and "
                    "hardware blueprint planning",
    )
    parser.add_argument("--version", action="version", version=f"qcplan {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="size a machine for a target logical error rate")
    est.add_argument("--config", help="JSON config file merged under explicit flags")
    est.add_argument("--preset", choices=sorted(SCALING_PRESETS),
                     help="named scaling-constant preset (default: fitted)")
    est.add_argument("--preset-file", dest="preset_file",
                     help="scaling preset JSON written by `qcplan fit`")
    est.add_argument("--c1", type=float, help="explicit scaling prefactor")
    est.add_argument("--c2", type=float, help="explicit inverse-threshold constant")
    est.add_argument("--p", type=float, help="physical error rate")
    est.add_argument("--target-pl", dest="target_pl", type=float,
                     help="target logical error rate per round")
    est.add_argument("--logical", type=int, help="logical qubit count (default 1)")
    est.add_argument("--platform", choices=["superconducting", "iontrap", "nv"])
    est.add_argument("--qubits-per-cell", dest="qubits_per_cell", type=int,
                     help="NV unit-cell qubit count (mandatory for nv)")
    est.add_argument("--efficiency", type=float, help="NV connection efficiency")
    est.add_argument("--confidence", type=float, help="NV bond confidence (default 0.5)")
    est.add_argument("--ppq", help="comma-separated price-per-qubit points in USD")
    est.add_argument("--params", help="hardware parameter overrides JSON")
    est.add_argument("--json", help="write the full report JSON here")
    est.set_defaults(func=cmd_estimate)

    simp = sub.add_parser("simulate", help="Monte Carlo sweep over distances and error rates")
    simp.add_argument("--config", help="JSON config file merged under explicit flags")
    simp.add_argument("--distances", help="comma-separated odd distances (default 3,5,7)")
    simp.add_argument("--p-values", dest="p_values", help="comma-separated physical error rates")
    simp.add_argument("--trials", type=int, help="trials per (d, p) point (default 1e5)")
    simp.add_argument("--seed", type=int, help="base seed; trial i uses seed+i (default 0)")
    simp.add_argument("--noise", choices=["code-capacity", "phenomenological"])
    simp.add_argument("--rounds", type=int,
                      help="measurement rounds (phenomenological; default: distance)")
    simp.add_argument("--measurement-error", dest="measurement_error", type=float,
                      help="measurement flip probability (phenomenological; default: p)")
    simp.add_argument("--pauli", choices=["balanced", "x-only"],
                      help="balanced X+Z noise or bit-flips only")
    simp.add_argument("--workers", type=int,
                      help="parallel worker processes (default: logical CPU count); "
                           "results are identical for any value")
    simp.add_argument("--ceiling", type=int,
                      help="per-shot defect ceiling; rows exceeding it are flagged")
    simp.add_argument("--csv", help="sweep CSV path (default: stdout); a .meta.json "
                                    "sidecar embeds the resolved config")
    simp.add_argument("--json", help="write the summary JSON here instead of a sidecar")
    simp.set_defaults(func=cmd_simulate)

    fitp = sub.add_parser("fit", help="fit scaling constants to a sweep CSV")
    fitp.add_argument("--config", help="JSON config file merged under explicit flags")
    fitp.add_argument("--csv", help="sweep CSV from `qcplan simulate`")
    fitp.add_argument("--json", help="write the fit JSON here")
    fitp.add_argument("--preset-out", dest="preset_out",
                      help="write a scaling preset JSON usable by `qcplan estimate`")
    fitp.add_argument("--min-failures", dest="min_failures", type=int,
                      help="drop points with fewer observed failures (default 10)")
    fitp.set_defaults(func=cmd_fit)

    planp = sub.add_parser("plan", help="hardware bill-of-materials calculators")
    planp.add_argument("platform", choices=["iontrap", "superconducting", "nv", "grid"])
    planp.add_argument("--config", help="JSON config file merged under explicit flags")
    planp.add_argument("--qubits", help="physical qubit count (iontrap)")
    planp.add_argument("--distance", type=int, help="code distance (superconducting)")
    planp.add_argument("--logical", type=int, help="logical qubit count (superconducting)")
    planp.add_argument("--cells-x", dest="cells_x", help="cell columns (nv)")
    planp.add_argument("--cells-y", dest="cells_y", help="cell rows (nv)")
    planp.add_argument("--qubits-per-cell", dest="qubits_per_cell", type=int,
                       help="NV unit-cell qubit count (mandatory, no default)")
    planp.add_argument("--efficiency", type=float, help="NV connection efficiency")
    planp.add_argument("--confidence", type=float, help="NV bond confidence (default 0.5)")
    planp.add_argument("--rows", type=int, help="grid rows (grid)")
    planp.add_argument("--cols", type=int, help="grid columns (grid)")
    planp.add_argument("--dead", type=int, help="dead qubit count (grid)")
    planp.add_argument("--params", help="hardware parameter overrides JSON")
    planp.add_argument("--json", help="write the plan JSON here")
    planp.set_defaults(func=cmd_plan)

    tab = sub.add_parser("table", help="machine cost table across PPQ points")
    tab.add_argument("--config", help="JSON config file merged under explicit flags")
    tab.add_argument("--counts", help="comma-separated qubit counts (default 2e7,2e8)")
    tab.add_argument("--ppqs", help="comma-separated PPQ dollar values")
    tab.add_argument("--csv", help="write table cells as CSV here")
    tab.add_argument("--json", help="write the table JSON here")
    tab.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QcplanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
