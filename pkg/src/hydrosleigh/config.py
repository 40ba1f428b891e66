"""Scenario files: INI-style sections parsed into a :class:`ScenarioConfig`.

Example::

    [tensor]
    J = 2
    M = 1
    N = 3
    L1 = 0
    L2 = 0
    Z = 1

    [initial]
    omega = 0
    v1 = 1

    [sim]
    t0 = -10
    t1 = 10
    dt = 0.001

Planar scenarios take the total tensor either from ``[tensor]`` (entries
``J M N L1 L2 Z``) or from ``[body]`` (``m a b I``) plus an optional
``[fluid]`` (ellipse ``rho A B theta`` or a raw ``added`` 3x3 matrix).
Spatial modes take ``[tensor] matrix = <36 numbers, row major>`` and a
``[constraint]`` section with ``a`` and/or ``F``.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConfigError, HydroSleighError
from .inertia import (
    BodySpec2,
    EllipseSpec,
    body_inertia_2d,
    check_positive_definite,
    ellipse_added_inertia,
    SleighCoefficients,
    tensor_from_coefficients,
    total_inertia,
)

__all__ = ["MODES", "ScenarioConfig", "emit_config", "load_config", "parse_config"]

MODES = ("sleigh2d", "kirchhoff3d-free", "eps3d-suslov", "eps3d-sleigh")
PLANAR_TENSOR_KEYS = ("J", "M", "N", "L1", "L2", "Z")
SECTIONS = ("body", "fluid", "tensor", "initial", "sim", "constraint", "output")


@dataclass(frozen=True)
class ScenarioConfig:
    mode: str = "sleigh2d"
    body: Optional[BodySpec2] = None
    fluid: Optional[EllipseSpec] = None
    added: Optional[tuple[float, ...]] = None          # raw 3x3 added tensor
    tensor: Optional[tuple[float, ...]] = None         # J M N L1 L2 Z, or 36 entries
    constraint_a: Optional[tuple[float, float, float]] = None
    constraint_F: Optional[tuple[float, float, float]] = None
    omega: tuple[float, ...] = (0.0,)
    v: tuple[float, ...] = (1.0,)
    pose0: tuple[float, float, float] = (0.0, 0.0, 0.0)
    t0: float = -10.0
    t1: float = 10.0
    dt: float = 1e-3
    output_dir: Optional[str] = None

    @property
    def spatial(self) -> bool:
        return self.mode != "sleigh2d"

    def planar_tensor(self) -> np.ndarray:
        if self.spatial:
            raise ConfigError(f"mode {self.mode!r} has no planar tensor")
        if self.tensor is not None:
            return check_positive_definite(
                tensor_from_coefficients(SleighCoefficients(*self.tensor)), "total inertia tensor"
            )
        body = body_inertia_2d(self.body)
        if self.fluid is not None:
            added = ellipse_added_inertia(self.fluid)
        elif self.added is not None:
            added = np.array(self.added).reshape(3, 3)
        else:
            added = np.zeros((3, 3))
        return total_inertia(body, added)

    def spatial_tensor(self) -> np.ndarray:
        return np.array(self.tensor, dtype=float).reshape(6, 6)


def _num(cp, section: str, key: str, default=None) -> float:
    if not cp.has_option(section, key):
        if default is None:
            raise ConfigError(f"[{section}] {key}: required key is missing")
        return default
    raw = cp.get(section, key)
    try:
        val = float(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key}: {raw!r} is not a number") from None
    if not math.isfinite(val):
        raise ConfigError(f"[{section}] {key}: value {raw!r} is not finite")
    return val


def _vec(cp, section: str, key: str, n: Optional[int] = None, default=None):
    if not cp.has_option(section, key):
        if default is None:
            raise ConfigError(f"[{section}] {key}: required key is missing")
        return default
    raw = cp.get(section, key)
    parts = [p for p in raw.replace(",", " ").split() if p]
    try:
        vals = tuple(float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"[{section}] {key}: {raw!r} is not a list of numbers") from None
    if not all(math.isfinite(v) for v in vals):
        raise ConfigError(f"[{section}] {key}: contains non-finite values")
    if n is not None and len(vals) != n:
        raise ConfigError(f"[{section}] {key}: expected {n} numbers, got {len(vals)}")
    return vals


def parse_config(text: str) -> ScenarioConfig:
    cp = configparser.ConfigParser()
    cp.optionxform = str  # keys are case sensitive (L1 vs l1)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}".splitlines()[0]) from None
    unknown = [s for s in cp.sections() if s not in SECTIONS]
    if unknown:
        raise ConfigError(f"[{unknown[0]}]: unknown section")

    mode = cp.get("sim", "mode", fallback="sleigh2d").strip()
    if mode not in MODES:
        raise ConfigError(f"[sim] mode: {mode!r} is not one of {', '.join(MODES)}")
    kw: dict = {"mode": mode}

    has_tensor, has_body = cp.has_section("tensor"), cp.has_section("body")
    if has_tensor and (has_body or cp.has_section("fluid")):
        other = "body" if has_body else "fluid"
        raise ConfigError(
            f"[tensor] and [{other}]: conflicting tensor sources, give exactly one"
        )
    try:
        if mode == "sleigh2d":
            if has_tensor:
                kw["tensor"] = tuple(_num(cp, "tensor", k) for k in PLANAR_TENSOR_KEYS)
            elif has_body:
                kw["body"] = BodySpec2(
                    _num(cp, "body", "m"),
                    _num(cp, "body", "a", 0.0),
                    _num(cp, "body", "b", 0.0),
                    _num(cp, "body", "I"),
                )
                if cp.has_section("fluid"):
                    if cp.has_option("fluid", "added"):
                        kw["added"] = _vec(cp, "fluid", "added", 9)
                    else:
                        kw["fluid"] = EllipseSpec(
                            _num(cp, "fluid", "rho"),
                            _num(cp, "fluid", "A"),
                            _num(cp, "fluid", "B"),
                            _num(cp, "fluid", "theta", 0.0),
                        )
            else:
                raise ConfigError("[tensor] or [body]: one tensor source is required")
            if cp.has_section("initial"):
                kw["omega"] = (_num(cp, "initial", "omega", 0.0),)
                kw["v"] = (_num(cp, "initial", "v1", 1.0),)
                kw["pose0"] = tuple(_num(cp, "initial", k, 0.0) for k in ("phi", "x", "y"))
        else:
            if not has_tensor:
                raise ConfigError(f"[tensor]: mode {mode!r} requires a 6x6 matrix")
            kw["tensor"] = _vec(cp, "tensor", "matrix", 36)
            kw["omega"] = (0.0, 0.0, 0.0)
            kw["v"] = (1.0, 0.0, 0.0)
            if cp.has_section("initial"):
                kw["omega"] = _vec(cp, "initial", "omega", 3, kw["omega"])
                kw["v"] = _vec(cp, "initial", "v", 3, kw["v"])
            if mode != "kirchhoff3d-free":
                if not cp.has_section("constraint"):
                    raise ConfigError(f"[constraint]: mode {mode!r} requires a constraint")
                if mode == "eps3d-suslov":
                    kw["constraint_a"] = _vec(cp, "constraint", "a", 3)
                else:
                    kw["constraint_F"] = _vec(cp, "constraint", "F", 3)
    except ConfigError:
        raise
    except HydroSleighError as exc:
        raise ConfigError(str(exc)) from None

    if cp.has_section("sim"):
        kw["t0"] = _num(cp, "sim", "t0", -10.0)
        kw["t1"] = _num(cp, "sim", "t1", 10.0)
        kw["dt"] = _num(cp, "sim", "dt", 1e-3)
        if not kw["dt"] > 0:
            raise ConfigError(f"[sim] dt: must be positive, got {kw['dt']}")
        if not kw["t1"] > kw["t0"]:
            raise ConfigError("[sim] t1: must be greater than t0")
    if cp.has_option("output", "dir"):
        kw["output_dir"] = cp.get("output", "dir").strip()
    cfg = ScenarioConfig(**kw)
    where = "[tensor]" if has_tensor else "[body]/[fluid]"
    try:
        if cfg.spatial:
            check_positive_definite(cfg.spatial_tensor(), "spatial inertia tensor")
        else:
            cfg.planar_tensor()
    except HydroSleighError as exc:
        raise ConfigError(f"{where}: {exc}") from None
    return cfg


def load_config(path) -> ScenarioConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text)


def _fmt(x: float) -> str:
    return repr(float(x))


def _fmt_vec(xs) -> str:
    return ", ".join(_fmt(x) for x in xs)


def emit_config(cfg: ScenarioConfig) -> str:
    """Serialise ``cfg`` so that ``parse_config(emit_config(cfg)) == cfg``."""
    lines: list[str] = []

    def section(name, items):
        lines.append(f"[{name}]")
        lines.extend(f"{k} = {v}" for k, v in items)
        lines.append("")

    if cfg.mode == "sleigh2d":
        if cfg.tensor is not None:
            section("tensor", zip(PLANAR_TENSOR_KEYS, map(_fmt, cfg.tensor)))
        if cfg.body is not None:
            b = cfg.body
            section("body", [("m", _fmt(b.m)), ("a", _fmt(b.a)), ("b", _fmt(b.b)), ("I", _fmt(b.moment))])
        if cfg.fluid is not None:
            f = cfg.fluid
            section("fluid", [("rho", _fmt(f.rho)), ("A", _fmt(f.semi_major)),
                              ("B", _fmt(f.semi_minor)), ("theta", _fmt(f.theta))])
        elif cfg.added is not None:
            section("fluid", [("added", _fmt_vec(cfg.added))])
        phi, x, y = cfg.pose0
        section("initial", [("omega", _fmt(cfg.omega[0])), ("v1", _fmt(cfg.v[0])),
                            ("phi", _fmt(phi)), ("x", _fmt(x)), ("y", _fmt(y))])
    else:
        section("tensor", [("matrix", _fmt_vec(cfg.tensor))])
        section("initial", [("omega", _fmt_vec(cfg.omega)), ("v", _fmt_vec(cfg.v))])
        if cfg.constraint_a is not None:
            section("constraint", [("a", _fmt_vec(cfg.constraint_a))])
        if cfg.constraint_F is not None:
            section("constraint", [("F", _fmt_vec(cfg.constraint_F))])
    section("sim", [("mode", cfg.mode), ("t0", _fmt(cfg.t0)), ("t1", _fmt(cfg.t1)), ("dt", _fmt(cfg.dt))])
    if cfg.output_dir is not None:
        section("output", [("dir", cfg.output_dir)])
    return "\n".join(lines)
