"""Command line front end.

    hydrosleigh <command> --config <path> [--out <dir>]

``simulate`` and ``closed-form`` write CSV time series; ``compare``,
``report`` and ``measure-check`` write JSON (and echo it to stdout).
Exit status is 0 on success, 2 for configuration errors, 3 when a
quantity is requested outside its regime, and 1 for anything else.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys

import numpy as np

from . import __version__
from .config import ScenarioConfig, load_config
from .eps_core import (
    EpsSystem,
    kirchhoff_free,
    measure_exists_2d,
    measure_residual_2d,
    measure_residual_3d,
    sleigh_3d,
    suslov,
)
from .errors import ConfigError, HydroSleighError, RegimeError
from .inertia import coefficients
from .integrate import Trajectory, reconstruct_2d, simulate_eps, simulate_sleigh
from .report import AsymptoticsReport, build_report
from .sleigh2d import (
    Pose2,
    Regime,
    closed_form_eval,
    energy,
    fit_closed_form,
    reduced_rhs,
    regime,
    separatrix,
)

log = logging.getLogger(__name__)

COMMANDS = ("simulate", "closed-form", "compare", "report", "measure-check")
SPATIAL_COLUMNS = (
    "t", "k1", "k2", "k3", "p1", "p2", "p3",
    "omega1", "omega2", "omega3", "v1", "v2", "v3",
    "energy", "constraint_residual",
)


def write_csv(path, header, rows: np.ndarray) -> None:
    """Comma separated, 17 significant digits, LF line endings."""
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def write_json(path, payload: dict) -> str:
    text = json.dumps(payload, indent=2, allow_nan=False) + "\n"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return text


def _planar_initial(cfg: ScenarioConfig):
    return (cfg.omega[0], cfg.v[0]), Pose2(*cfg.pose0)


def _spatial_system(cfg: ScenarioConfig) -> EpsSystem:
    tensor = cfg.spatial_tensor()
    if cfg.mode == "eps3d-suslov":
        return suslov(tensor, cfg.constraint_a)
    if cfg.mode == "eps3d-sleigh":
        return sleigh_3d(tensor, cfg.constraint_F)
    return kirchhoff_free(tensor)


def _require_planar(cfg: ScenarioConfig, command: str) -> None:
    if cfg.spatial:
        raise RegimeError(f"{command} is only available for mode 'sleigh2d', not {cfg.mode!r}")


def closed_form_trajectory(cfg: ScenarioConfig) -> Trajectory:
    """Closed-form reduced state and heading on the simulation grid.

    Positions have no closed form; they are reconstructed from the exact
    closed-form velocities with the same RK4 quadrature as the simulator.
    """
    c = coefficients(cfg.planar_tensor())
    state, pose0 = _planar_initial(cfg)
    n = int(np.ceil((cfg.t1 - cfg.t0) / cfg.dt - 1e-9))
    t = cfg.t0 + cfg.dt * np.arange(n + 1, dtype=float)
    t[-1] = cfg.t1
    if regime(c) is Regime.STEADY or separatrix(c, state) == 0:
        omega = np.full_like(t, state[0])
        v1 = np.full_like(t, state[1])
        phi = pose0.phi + state[0] * (t - cfg.t0)
    else:
        cf = fit_closed_form(c, state, t=cfg.t0, phi=pose0.phi)
        (omega, v1), phi = closed_form_eval(cf, t)
    domega, dv1 = reduced_rhs(c, (omega, v1))
    _, x, y = reconstruct_2d(t, omega, v1, pose0, domega, dv1)
    return Trajectory(t, omega, v1, phi, x, y, energy(c, (omega, v1)), np.zeros_like(t))


def _simulate_planar(cfg: ScenarioConfig, with_report: bool = False):
    state, pose0 = _planar_initial(cfg)
    return simulate_sleigh(
        cfg.planar_tensor(), state, pose0, (cfg.t0, cfg.t1), cfg.dt, report=with_report
    )


def cmd_simulate(cfg: ScenarioConfig, out: str) -> dict:
    path = os.path.join(out, "simulate.csv")
    if cfg.spatial:
        system = _spatial_system(cfg)
        mu0 = system.momentum(np.concatenate([cfg.omega, cfg.v]))
        tr = simulate_eps(system, mu0, cfg.t0, cfg.t1, cfg.dt)
        xi = tr.velocities(system)
        res = np.max(np.abs(tr.residual), axis=1) if tr.residual.shape[1] else np.zeros_like(tr.t)
        rows = np.column_stack([tr.t, tr.mu, xi, tr.energy, res])
        write_csv(path, SPATIAL_COLUMNS, rows)
    else:
        traj, _ = _simulate_planar(cfg)
        write_csv(path, Trajectory.COLUMNS, traj.as_array())
    return {"written": path}


def cmd_closed_form(cfg: ScenarioConfig, out: str) -> dict:
    _require_planar(cfg, "closed-form")
    path = os.path.join(out, "closed-form.csv")
    write_csv(path, Trajectory.COLUMNS, closed_form_trajectory(cfg).as_array())
    return {"written": path}


def compare_payload(cfg: ScenarioConfig) -> dict:
    _require_planar(cfg, "compare")
    num, _ = _simulate_planar(cfg)
    ref = closed_form_trajectory(cfg)
    dev = {
        col: float(np.max(np.abs(getattr(num, col) - getattr(ref, col))))
        for col in ("omega", "v1", "phi", "x", "y", "energy")
    }
    return {
        "max_abs_deviation": max(dev["omega"], dev["v1"], dev["phi"]),
        "columns": dev,
        "samples": len(num),
    }


def cmd_compare(cfg: ScenarioConfig, out: str) -> dict:
    return _emit_json(os.path.join(out, "compare.json"), compare_payload(cfg))


def report_payload(cfg: ScenarioConfig, require=()) -> dict:
    _require_planar(cfg, "report")
    state, _ = _planar_initial(cfg)
    rep = build_report(coefficients(cfg.planar_tensor()), state)
    rep.require(*require)
    return rep.to_dict()


def cmd_report(cfg: ScenarioConfig, out: str, require=()) -> dict:
    return _emit_json(os.path.join(out, "report.json"), report_payload(cfg, require))


def measure_payload(cfg: ScenarioConfig) -> dict:
    if not cfg.spatial:
        c = coefficients(cfg.planar_tensor())
        r = measure_residual_2d(c)
        return {"residuals": [float(r[0]), float(r[1])], "measure_exists": measure_exists_2d(c)}
    if cfg.mode == "kirchhoff3d-free":
        raise RegimeError("measure-check needs a constrained mode (eps3d-suslov or eps3d-sleigh)")
    a = cfg.constraint_a or (0.0, 0.0, 0.0)
    F = cfg.constraint_F or (0.0, 0.0, 0.0)
    chk = measure_residual_3d(cfg.spatial_tensor(), a, F)
    return {
        "residuals": [float(v) for v in chk.residual],
        "c": chk.c,
        "measure_exists": chk.exists,
    }


def cmd_measure_check(cfg: ScenarioConfig, out: str) -> dict:
    return _emit_json(os.path.join(out, "measure-check.json"), measure_payload(cfg))


def _emit_json(path: str, payload: dict) -> dict:
    sys.stdout.write(write_json(path, payload))
    return payload


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hydrosleigh",
        description="Chaplygin sleigh in a potential fluid: simulation and asymptotics.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", required=True, help="scenario file (INI sections)")
    p.add_argument("--out", default=None, help="output directory (default: [output] dir or .)")
    p.add_argument(
        "--require",
        default="",
        help="report only: comma separated fields that must be defined, e.g. r,d_formula",
    )
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def run(cfg: ScenarioConfig, command: str, out: str, require=()) -> dict:
    os.makedirs(out, exist_ok=True)
    if command == "simulate":
        return cmd_simulate(cfg, out)
    if command == "closed-form":
        return cmd_closed_form(cfg, out)
    if command == "compare":
        return cmd_compare(cfg, out)
    if command == "report":
        return cmd_report(cfg, out, require)
    if command == "measure-check":
        return cmd_measure_check(cfg, out)
    raise ValueError(f"unknown command {command!r}")


_ALIASES = {"d": "d_formula", "delta-phi": "delta_phi", "center": "center_point"}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    require = [_ALIASES.get(r.strip(), r.strip()) for r in args.require.split(",") if r.strip()]
    known = {f.name for f in dataclasses.fields(AsymptoticsReport)}
    for name in require:
        if name not in known:
            print(f"hydrosleigh: unknown report field {name!r}", file=sys.stderr)
            return 2
    try:
        cfg = load_config(args.config)
        out = args.out or cfg.output_dir or "."
        run(cfg, args.command, out, require)
    except ConfigError as exc:
        print(f"hydrosleigh: config error: {exc}", file=sys.stderr)
        return 2
    except RegimeError as exc:
        print(f"hydrosleigh: regime error: {exc}", file=sys.stderr)
        return 3
    except (HydroSleighError, OSError) as exc:
        print(f"hydrosleigh: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
