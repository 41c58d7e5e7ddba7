"""Method-of-lines time integration with per-step sphere projection.

States are dicts of plain arrays ("S" always, "u"/"w" for magnetoelastic
models); `rk4_step` is the classical 4-stage Runge-Kutta update applied
componentwise. After every full step the spin part is renormalized (the
pre-projection norm drift is recorded as the integrator's error monitor)
unless renormalization is switched off.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import Blowup, NonFiniteValue, SpinsurfError
from .fields import (ScalarField, SpinField, VecField, diff, dot, norm,
                     project_sphere)
from .magnetoelastic import catalog_lookup, me_phonon_rhs, me_spin_rhs, MEState
from .models import hf_rhs, lle_rhs, mxiii_rhs, mxiiia_system, mxiiib_system


@dataclass(frozen=True)
class EvolveOptions:
    dt: float
    steps: int
    renormalize: bool = True
    snapshot_every: int = 1
    dt_safety: float = 0.2
    allow_unstable_dt: bool = False

    def __post_init__(self):
        if not (self.dt > 0 and self.steps > 0 and self.snapshot_every > 0):
            raise ValueError("dt, steps, snapshot_every must be positive")


@dataclass
class Trajectory:
    times: list = field(default_factory=list)
    snapshots: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    def spins(self):
        return [snap["S"] for snap in self.snapshots]


@dataclass(frozen=True)
class EvolutionModel:
    """A named flow: state layout, right-hand side, and stability order."""

    name: str
    rhs: object                    # dict of arrays -> dict of arrays
    grid: object
    fields: tuple = ("S",)
    spatial_order: int = 2
    constraint: object = None      # dict of arrays -> float, monitored only
    phi_solver: object = None      # dict of arrays -> ScalarField, diagnostic


def rk4_step(state, rhs_fn, dt, step=0):
    """One classical Runge-Kutta step on a dict-of-arrays state."""
    if dt <= 0:
        raise ValueError("dt must be positive")

    def shifted(base, k, h):
        return {name: base[name] + h * k[name] for name in base}

    try:
        k1 = rhs_fn(state)
        k2 = rhs_fn(shifted(state, k1, dt / 2.0))
        k3 = rhs_fn(shifted(state, k2, dt / 2.0))
        k4 = rhs_fn(shifted(state, k3, dt))
    except NonFiniteValue:
        raise Blowup(step) from None
    out = {}
    for name in state:
        out[name] = state[name] + (dt / 6.0) * (
            k1[name] + 2.0 * k2[name] + 2.0 * k3[name] + k4[name])
        if not np.all(np.isfinite(out[name])):
            raise Blowup(step)
    return out


def energy_proxy(S):
    """Sum |S_x|^2 dx (+ |S_y|^2 term in 2-D). A monitoring aid only, not
    a conserved quantity of any of the flows."""
    g = S.grid
    e = float(np.sum(dot(diff(S, "dx").values, diff(S, "dx").values)))
    if g.is_1d:
        return e * g.dx
    sy = diff(S, "dy").values
    return (e + float(np.sum(dot(sy, sy)))) * g.dx * g.dy


def diagnostics(S, drift=0.0, constraint=None):
    rec = {"max_norm_drift": float(drift), "energy_proxy": energy_proxy(S)}
    if constraint is not None:
        rec["constraint_residual"] = float(constraint)
    return rec


# ---------------------------------------------------------------------------
# model construction

def _vec(grid, arr):
    return VecField(grid, arr)


def evolution_model(name, grid, coeffs=None, params=None, external_u=None):
    """Build an EvolutionModel for a named flow on a given grid.

    name: "hf", "lle", "mxiii" (needs coeffs), "mxiiia"/"mxiiib" (optional
    params a1, a2, b1, b2, default 1), or any implemented magnetoelastic
    catalog name. 0-type catalog models need external_u (a ScalarField,
    held fixed over the run). params for catalog models are forwarded to
    the coupling constants.
    """
    key = name.lower()
    params = dict(params or {})

    if key == "hf":
        return EvolutionModel("hf", lambda st: {"S": hf_rhs(_vec(grid, st["S"])).values},
                              grid)
    if key == "lle":
        return EvolutionModel("lle", lambda st: {"S": lle_rhs(_vec(grid, st["S"])).values},
                              grid)
    if key == "mxiii":
        if coeffs is None:
            raise ValueError("mxiii evolution needs a coefficient set")

        def rhs(st):
            return {"S": mxiii_rhs(_vec(grid, st["S"]), coeffs)[0].values}

        def constraint(st):
            return float(np.abs(mxiii_rhs(_vec(grid, st["S"]), coeffs)[1].values).max())

        return EvolutionModel("mxiii", rhs, grid, constraint=constraint)

    if key in ("mxiiia", "mxiiib"):
        ab = [params.pop(k, 1.0) for k in ("a1", "a2", "b1", "b2")]
        if params:
            raise ValueError(f"unknown parameters {sorted(params)}")
        system = mxiiia_system if key == "mxiiia" else mxiiib_system

        def rhs(st):
            return {"S": system(_vec(grid, st["S"]), *ab)[0].values}

        def phi_solver(st):
            return system(_vec(grid, st["S"]), *ab)[1]

        return EvolutionModel(key, rhs, grid, phi_solver=phi_solver)

    # magnetoelastic catalog
    spec = catalog_lookup(name)
    if params:
        spec = spec.with_params(**params)
    order = 4 if spec.spin == "D" or spec.phonon == "boussinesq" else 2

    if spec.phonon == "none":
        if external_u is None:
            raise ValueError(f"{spec.name} needs an external displacement field u")

        def rhs(st):
            state = MEState(_vec(grid, st["S"]), external_u)
            return {"S": me_spin_rhs(spec, state).values}

        return EvolutionModel(spec.name, rhs, grid, spatial_order=order)

    second_order_u = spec.phonon in ("wave", "boussinesq")
    names = ("S", "u", "w") if second_order_u else ("S", "u")

    def rhs(st):
        w = ScalarField(grid, st["w"]) if second_order_u else None
        state = MEState(_vec(grid, st["S"]), ScalarField(grid, st["u"]), w)
        out = {"S": me_spin_rhs(spec, state).values}
        du, dw = me_phonon_rhs(spec, state)
        out["u"] = du.values
        if second_order_u:
            out["w"] = dw.values
        return out

    return EvolutionModel(spec.name, rhs, grid, fields=names, spatial_order=order)


def pack_state(model, initial):
    """Normalize an initial state (SpinField, MEState, or dict) to arrays."""
    if isinstance(initial, SpinField):
        state = {"S": initial.values}
    elif isinstance(initial, MEState):
        state = {"S": initial.S.values, "u": initial.u.values}
        if initial.w is not None:
            state["w"] = initial.w.values
    else:
        state = {k: (v.values if hasattr(v, "values") else np.asarray(v, dtype=float))
                 for k, v in initial.items()}
    missing = set(model.fields) - set(state)
    if missing:
        raise ValueError(f"initial state is missing fields {sorted(missing)}")
    return {k: np.array(state[k], dtype=float) for k in model.fields}


def _snapshot(model, state):
    g = model.grid
    snap = {"S": SpinField(g, state["S"]) if _is_unit(state["S"])
            else VecField(g, state["S"])}
    for name in model.fields:
        if name != "S":
            snap[name] = ScalarField(g, state[name])
    if model.phi_solver is not None:
        snap["phi"] = model.phi_solver(state)
    return snap


def _is_unit(arr):
    return np.abs(np.linalg.norm(arr, axis=-1) - 1.0).max() <= 1e-12


def check_stability(model, opts):
    g = model.grid
    h = g.dx if g.is_1d else min(g.dx, g.dy)
    bound = opts.dt_safety * h ** model.spatial_order
    if opts.dt > bound and not opts.allow_unstable_dt:
        raise SpinsurfError(
            f"dt = {opts.dt:g} exceeds the stability bound "
            f"{opts.dt_safety:g} * h^{model.spatial_order} = {bound:g}; "
            f"pass allow_unstable_dt to override")


def evolve(model, initial, opts):
    """Integrate a flow, renormalizing the spin part after every step.

    Snapshots (including the initial state) are taken every
    opts.snapshot_every steps; each carries diagnostics with the maximum
    pre-projection norm drift seen since the previous snapshot.
    """
    check_stability(model, opts)
    state = pack_state(model, initial)

    traj = Trajectory()

    def record(t, drift):
        snap = _snapshot(model, state)
        constraint = model.constraint(state) if model.constraint else None
        traj.times.append(t)
        traj.snapshots.append(snap)
        traj.diagnostics.append(diagnostics(snap["S"], drift, constraint))

    record(0.0, 0.0)
    drift_window = 0.0
    for step in range(1, opts.steps + 1):
        state = rk4_step(state, model.rhs, opts.dt, step)
        drift = float(np.abs(norm(state["S"]) - 1.0).max())
        drift_window = max(drift_window, drift)
        if opts.renormalize:
            state["S"] = project_sphere(VecField(model.grid, state["S"])).values
        if step % opts.snapshot_every == 0:
            record(step * opts.dt, drift_window)
            drift_window = 0.0
    return traj
