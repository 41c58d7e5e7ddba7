"""Command-line interface.

Subcommands: simulate (time evolution with snapshots), reconstruct
(spin field file -> surface mesh + path mismatch), check (stationary
residual report), catalog (model registry), zc (zero-curvature residuals
from curve data). Options can also be supplied in a config file of
`key = value` lines (# comments allowed); command-line flags override
file values, and unknown keys are rejected.
"""

import argparse
import os
import sys

import numpy as np

from . import fileio, synth
from .errors import (Blowup, ConfigError, FormatError, NonConvergence,
                     NonFiniteValue, NonZeroMeanSource, SpinsurfError,
                     UnimplementedModel, UnknownModel)
from .fields import CLAMPED, PERIODIC, Grid, ScalarField, SpinField
from .geometry import CoefficientSet, classical_coeffs, reconstruct_surface, unit_normal
from .magnetoelastic import _REGISTRY, catalog_lookup
from .models import STATIONARY_KINDS, stationary_residual
from .evolve import EvolveOptions, evolution_model, evolve
from .zerocurv import build_C, hasimoto, nlse_residual, solve_D, zc_residual

SECTION_MODELS = ("hf", "lle", "mxiii", "mxiiia", "mxiiib", "ishimori")

# key -> (type, help); the single source of truth for config validation
_GRID_KEYS = {
    "nx": (int, "grid extent in x"),
    "ny": (int, "grid extent in y (1 for 1-D)"),
    "dx": (float, "grid spacing in x"),
    "dy": (float, "grid spacing in y"),
    "boundary": (str, "boundary mode: periodic or clamped"),
}
_EVOLVE_KEYS = {
    "dt": (float, "time step"),
    "steps": (int, "number of time steps"),
    "snapshot_every": (int, "snapshot stride (default 1)"),
    "dt_safety": (float, "stability safety factor (default 0.2)"),
    "allow_unstable_dt": (bool, "override the dt stability bound"),
    "renormalize": (bool, "project the spin field each step (default true)"),
}
_COMMAND_KEYS = {
    "simulate": {**_GRID_KEYS, **_EVOLVE_KEYS,
                 "model": (str, "model name (section models or catalog)"),
                 "initial": (str, "input spin field CSV (else synthesized)"),
                 "external_u": (str, "displacement field CSV for 0-type models"),
                 "seed": (int, "seed for the synthesized initial field"),
                 "output": (str, "output directory")},
    "reconstruct": {"input": (str, "spin field CSV"),
                    "coeffs": (str, "coefficient kind: hf, lle_stationary, "
                                    "rodrigues, lelieuvre, schief"),
                    "output": (str, "mesh OBJ path"),
                    "report": (str, "JSON report path"),
                    "normals": (bool, "write vertex normals")},
    "check": {"input": (str, "spin field CSV"),
              "model": (str, "stationary kind: " + ", ".join(STATIONARY_KINDS)),
              "phi": (str, "potential field CSV"),
              "output": (str, "JSON report path")},
    "catalog": {"action": (str, "list or show"),
                "name": (str, "model name for show")},
    "zc": {"input": (str, "curve data CSV (k, tau slices)"),
           "output": (str, "JSON report path")},
}
_PARAM_HELP = "named real parameter, repeatable (e.g. --param a1=1 --param lam=0.5)"


class RunConfig:
    def __init__(self, command, values, params):
        self.command = command
        self.values = values
        self.params = params

    def get(self, key, default=None):
        v = self.values.get(key)
        return default if v is None else v

    def require(self, key):
        v = self.values.get(key)
        if v is None:
            raise ConfigError(f"missing required key {key!r}")
        return v


def _coerce(key, typ, raw):
    if isinstance(raw, typ) and not (typ is bool and isinstance(raw, str)):
        return raw
    raw = str(raw)
    try:
        if typ is bool:
            lowered = raw.lower()
            if lowered in ("true", "1", "yes"):
                return True
            if lowered in ("false", "0", "no"):
                return False
            raise ValueError(raw)
        return typ(raw)
    except ValueError:
        raise ConfigError(f"key {key!r} expects {typ.__name__}, got {raw!r}") from None


def _read_config_file(path, keys):
    out = {}
    params = {}
    try:
        lines = open(path).read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    for ln, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{ln}: expected 'key = value'")
        key, _, raw = (s.strip() for s in line.partition("="))
        if key.startswith("param."):
            params[key[6:]] = _coerce(key, float, raw)
        elif key in keys:
            out[key] = _coerce(key, keys[key][0], raw)
        else:
            raise ConfigError(f"{path}:{ln}: unknown key {key!r}")
    return out, params


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spinsurf",
        description="Spin-field evolution, surface reconstruction, and "
                    "compatibility residual checks.")
    sub = parser.add_subparsers(dest="command", required=True)
    for command, keys in _COMMAND_KEYS.items():
        p = sub.add_parser(command)
        for key, (typ, help_text) in keys.items():
            if command == "catalog":
                p.add_argument(key, nargs="?", default=None, help=help_text)
                continue
            flag = "--" + key.replace("_", "-")
            if typ is bool:
                p.add_argument(flag, default=None, help=help_text,
                               type=lambda s: s, metavar="BOOL")
            else:
                p.add_argument(flag, default=None, type=str, help=help_text)
        p.add_argument("--param", action="append", default=None,
                       metavar="NAME=VALUE", help=_PARAM_HELP)
        p.add_argument("--config", default=None, help="config file of key = value lines")
    return parser


def parse_config(argv):
    """argv (without the program name) -> validated RunConfig."""
    ns = build_parser().parse_args(argv)
    keys = _COMMAND_KEYS[ns.command]
    values, params = {}, {}
    if ns.config:
        values, params = _read_config_file(ns.config, keys)
    for key, (typ, _) in keys.items():
        raw = getattr(ns, key)
        if raw is not None:
            values[key] = _coerce(key, typ, raw)
    for item in ns.param or ():
        if "=" not in item:
            raise ConfigError(f"--param expects NAME=VALUE, got {item!r}")
        name, _, raw = item.partition("=")
        params[name.strip()] = _coerce(name, float, raw)
    return RunConfig(ns.command, values, params)


# ---------------------------------------------------------------------------
# subcommands

def _grid_from(cfg, boundary_required=False):
    boundary = cfg.get("boundary")
    if boundary is None:
        if boundary_required:
            raise ConfigError("evolution runs must state boundary explicitly "
                              "(periodic or clamped)")
        boundary = PERIODIC
    if boundary not in (PERIODIC, CLAMPED):
        raise ConfigError(f"boundary must be periodic or clamped, got {boundary!r}")
    return Grid(cfg.require("nx"), cfg.get("ny", 1),
                cfg.require("dx"), cfg.get("dy", 1.0), boundary)


def _require_spin(field, path):
    if not isinstance(field, SpinField):
        raise ConfigError(f"{path} does not hold a unit spin field")
    return field


def cmd_simulate(cfg):
    name = cfg.require("model").lower()
    if cfg.get("initial"):
        S0 = _require_spin(fileio.read_field(cfg.require("initial")), cfg.get("initial"))
        grid = S0.grid
        if cfg.get("nx") is not None and grid.nx != cfg.get("nx"):
            raise ConfigError("grid keys conflict with the initial field file")
    else:
        grid = _grid_from(cfg, boundary_required=True)
        S0 = synth.smooth_spin(grid, seed=cfg.get("seed", 0))
    params = dict(cfg.params)

    coeffs = None
    if name == "mxiii":
        a3 = params.pop("a3", 0.0)
        coeffs = CoefficientSet(
            a1=params.pop("a1", 0.0), a2=params.pop("a2", 1.0),
            b1=params.pop("b1", 0.0), b2=params.pop("b2", 0.0),
            a3=a3, b4=a3,
            a5=params.pop("a5", 0.0), b5=params.pop("b5", 0.0))
    external_u = None
    if cfg.get("external_u"):
        external_u = fileio.read_field(cfg.get("external_u"))
    if name not in SECTION_MODELS:
        catalog_lookup(name)    # raise UnknownModel early
    model = evolution_model(name, grid, coeffs=coeffs, params=params,
                            external_u=external_u)

    opts = EvolveOptions(dt=cfg.require("dt"), steps=cfg.require("steps"),
                         renormalize=cfg.get("renormalize", True),
                         snapshot_every=cfg.get("snapshot_every", 1),
                         dt_safety=cfg.get("dt_safety", 0.2),
                         allow_unstable_dt=cfg.get("allow_unstable_dt", False))

    initial = {"S": S0.values}
    if "u" in model.fields:
        initial["u"] = np.zeros((grid.ny, grid.nx))
    if "w" in model.fields:
        initial["w"] = np.zeros((grid.ny, grid.nx))

    traj = evolve(model, initial, opts)

    outdir = cfg.get("output", ".")
    os.makedirs(outdir, exist_ok=True)
    for idx, snap in enumerate(traj.snapshots):
        for fname, fobj in snap.items():
            fileio.write_field(os.path.join(outdir, f"snap_{idx:06d}_{fname}.csv"),
                               fobj)
    diag = [{"time": t, **d} for t, d in zip(traj.times, traj.diagnostics)]
    fileio.report(os.path.join(outdir, "report.json"), model.name, grid, diag,
                  notes=[f"steps={opts.steps}", f"dt={opts.dt:.17g}"])
    print(f"wrote {len(traj.snapshots)} snapshots to {outdir}")
    return 0


def cmd_reconstruct(cfg):
    S = _require_spin(fileio.read_field(cfg.require("input")), cfg.get("input"))
    kind = cfg.get("coeffs", "hf")
    coeffs = classical_coeffs(kind, **cfg.params)
    mesh, mismatch = reconstruct_surface(S, coeffs)
    normals = unit_normal(mesh) if cfg.get("normals", False) else None
    fileio.export_mesh(cfg.require("output"), mesh, normals)
    if cfg.get("report"):
        fileio.report(cfg.get("report"), f"reconstruct:{kind}", S.grid,
                      [{"path_mismatch": mismatch}])
    print(f"path mismatch {mismatch:.6e}")
    return 0


def cmd_check(cfg):
    kind = cfg.require("model").lower()
    if kind not in STATIONARY_KINDS:
        raise UnknownModel(f"unknown stationary kind {kind!r}")
    S = _require_spin(fileio.read_field(cfg.require("input")), cfg.get("input"))
    phi = fileio.read_field(cfg.get("phi")) if cfg.get("phi") else None
    if phi is not None and not isinstance(phi, ScalarField):
        raise ConfigError("phi file must hold a scalar field")
    params = dict(cfg.params)
    alpha = params.pop("alpha", None)
    coeffs = None
    notes = []
    if kind in ("mxiii", "mxiiia", "mxiiib"):
        coeffs = CoefficientSet(**{k: params.pop(k) for k in list(params)
                                   if k in ("a1", "a2", "a3", "a4", "a5",
                                            "b1", "b2", "b3", "b4", "b5")})
        notes.append("triple-orientation:S.(Sx^Sy)")
    if kind == "ishimori":
        notes.append("triple-orientation:S.(Sx^Sy)")
        notes.append("drift-pairing:phi_x*S_y+phi_y*S_x")
    rr = stationary_residual(kind, S, phi=phi, coeffs=coeffs, alpha=alpha)
    out = cfg.get("output", "report.json")
    fileio.report(out, kind, S.grid, rr, notes=notes)
    print(f"vector residual max {rr.vector_max:.6e}  "
          f"scalar residual max {rr.scalar_max:.6e}")
    return 0


def cmd_catalog(cfg):
    action = cfg.get("action", "list")
    if action == "list":
        for spec in _REGISTRY.values():
            print("\t".join([spec.name, spec.spin, spec.phonon, spec.source,
                             "true" if spec.implemented else "false"]))
        for name in SECTION_MODELS:
            print("\t".join([name, "-", "-", "-", "true"]))
        return 0
    if action == "show":
        spec = catalog_lookup(cfg.require("name"))
        print(f"name: {spec.name}")
        print(f"spin family: {spec.spin}")
        print(f"phonon family: {spec.phonon}")
        print(f"coupling source: {spec.source}")
        print(f"implemented: {spec.implemented}")
        if spec.reason:
            print(f"reason: {spec.reason}")
        return 0
    raise ConfigError(f"catalog action must be list or show, got {action!r}")


def cmd_zc(cfg):
    k, tau, dx, dt = fileio.read_curve(cfg.require("input"))
    nt, nx = k.shape
    C = build_C(k, tau)
    D = solve_D(C, np.zeros((nt, 3, 3)), dx, dt)
    _, zc_max = zc_residual(C, D, dx, dt)
    diag = {"zc_residual_max": zc_max}
    if nt >= 3:
        psi = hasimoto(k, tau, dx)
        diag["nlse_residual_max"] = float(nlse_residual(psi, dx, dt).max())
    grid = Grid(nx, max(nt, 1), dx, dt, CLAMPED)
    fileio.report(cfg.get("output", "report.json"), "zc", grid, [diag],
                  notes=["time-axis-identified-with-second-coordinate"])
    print(f"zero-curvature residual max {zc_max:.6e}")
    return 0


_DISPATCH = {"simulate": cmd_simulate, "reconstruct": cmd_reconstruct,
             "check": cmd_check, "catalog": cmd_catalog, "zc": cmd_zc}


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        return _DISPATCH[cfg.command](cfg)
    except (ConfigError, UnknownModel, UnimplementedModel, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (Blowup, NonConvergence, NonZeroMeanSource) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except (FormatError, NonFiniteValue, OSError) as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
