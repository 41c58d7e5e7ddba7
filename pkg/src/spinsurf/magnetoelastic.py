"""Catalog of 1+1-D spin-phonon (magnetoelastic) systems.

Each catalog entry composes a spin right-hand side family, a phonon
equation family, and a coupling source built from the spin field:

  spin families
    A: S^S_xx + u (S^e3)
    B: S^S_xx + u S3 (S^e3)
    C: d/dx[(mu |S_x|^2 - u + m) (S^S_x)]
    D: n (S^S_xxxx) + 2 d/dx[(mu |S_x|^2 - u + m) (S^S_x)]
    E: S^S_xx + u S_x

  phonon families
    none (u is a prescribed external field), wave, boussinesq,
    advection, kdv

  coupling sources
    s3 (q = S3), s3sq (q = S3^2), sxsq (q = |S_x|^2),
    trform (q = |S_x|^2 / 2)

The published source systems are written with 2x2 traceless matrices
S = S.sigma and commutators; the vector forms above divide out the 2i
from [A.sigma, B.sigma] = 2i (AxB).sigma. `pauli_oracle_rhs` redoes the
computation literally in matrix form and guards the translation.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import PhononAbsent, UnimplementedModel, UnknownModel
from .fields import (ScalarField, SpinField, VecField, cross, diff, diff4x,
                     dot, same_grid, _d1, _d2)

SPIN_FAMILIES = ("A", "B", "C", "D", "E")
PHONON_FAMILIES = ("none", "wave", "boussinesq", "advection", "kdv")
SOURCES = ("s3", "s3sq", "sxsq", "trform")

# every coupling constant defaults to 1 so runs are reproducible without
# any further input
DEFAULT_PARAMS = {"mu": 1.0, "m": 1.0, "n": 1.0, "rho": 1.0, "nu0": 1.0,
                  "alpha": 1.0, "beta": 1.0, "lam": 1.0}

E3 = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class ModelSpec:
    name: str
    spin: str
    phonon: str
    source: str
    implemented: bool = True
    reason: str = ""
    params: dict = field(default_factory=dict)

    def param(self, key):
        return float(self.params.get(key, DEFAULT_PARAMS[key]))

    def with_params(self, **params):
        unknown = set(params) - set(DEFAULT_PARAMS)
        if unknown:
            raise ValueError(f"unknown parameters {sorted(unknown)}")
        merged = dict(self.params)
        merged.update(params)
        return ModelSpec(self.name, self.spin, self.phonon, self.source,
                         self.implemented, self.reason, merged)


@dataclass(frozen=True)
class MEState:
    """Spin field plus lattice displacement u (and u_t for wave-type models)."""

    S: SpinField
    u: ScalarField
    w: ScalarField = None

    def __post_init__(self):
        fields = [self.S, self.u] + ([self.w] if self.w is not None else [])
        g = same_grid(*fields)
        if not g.is_1d:
            raise ValueError("magnetoelastic states live on 1-D grids")


def _entry(name, spin, phonon, source):
    return ModelSpec(name, spin, phonon, source)


_REGISTRY = {}
for spec in [
    # 0-type: Landau-Lifshitz equations with external potentials
    _entry("M-LVII", "A", "none", "s3"),
    _entry("M-LVI", "B", "none", "s3sq"),
    _entry("M-LV", "C", "none", "sxsq"),
    _entry("M-LIV", "D", "none", "sxsq"),
    _entry("M-LIII", "E", "none", "trform"),
    # 1-type: family A coupled through S3
    _entry("M-LII", "A", "wave", "s3"),
    _entry("M-LI", "A", "boussinesq", "s3"),
    _entry("M-L", "A", "advection", "s3"),
    _entry("M-XLIX", "A", "kdv", "s3"),
    # 2-type: family B coupled through S3^2
    _entry("M-XLVIII", "B", "wave", "s3sq"),
    _entry("M-XLVII", "B", "boussinesq", "s3sq"),
    _entry("M-XLVI", "B", "advection", "s3sq"),
    _entry("M-XLV", "B", "kdv", "s3sq"),
    # 3-type: family C coupled through |S_x|^2
    _entry("M-XLIV", "C", "wave", "sxsq"),
    _entry("M-XLIII", "C", "boussinesq", "sxsq"),
    _entry("M-XLII", "C", "advection", "sxsq"),
    _entry("M-XLI", "C", "kdv", "sxsq"),
    # 4-type: family D coupled through |S_x|^2
    _entry("M-XL", "D", "wave", "sxsq"),
    _entry("M-XXXIX", "D", "boussinesq", "sxsq"),
    _entry("M-XXXVIII", "D", "advection", "sxsq"),
    _entry("M-XXXVII", "D", "kdv", "sxsq"),
    # 5-type: family E coupled through tr-form source
    _entry("M-XXXVI", "E", "wave", "trform"),
    _entry("M-XXXV", "E", "boussinesq", "trform"),
    _entry("M-XXXIV", "E", "advection", "trform"),
    _entry("M-XXXIII", "E", "kdv", "trform"),
    # deliberately unimplemented entries
    ModelSpec("M-LXIX", "-", "-", "-", implemented=False,
              reason="u_x couples to sqrt(S_t^2 - u^2): implicit in the "
                     "time derivative (and the printed square roots "
                     "disagree between the two equations)"),
    ModelSpec("M-V", "-", "-", "-", implemented=False,
              reason="spin takes values in the osp(2|1) superalgebra with "
                     "S^3 = S; not representable as a unit 3-vector"),
]:
    _REGISTRY[spec.name.upper()] = spec


def catalog_names():
    return list(_REGISTRY)


def catalog_lookup(name):
    """Resolve a model name (case-insensitive) to its catalog entry."""
    key = name.upper()
    if not key.startswith("M-"):
        key = "M-" + key
    try:
        return _REGISTRY[key]
    except KeyError:
        raise UnknownModel(f"no magnetoelastic model named {name!r}") from None


def _check(spec, state):
    if not spec.implemented:
        raise UnimplementedModel(f"{spec.name}: {spec.reason}")
    same_grid(state.S, state.u)


def _coupling(spec, state):
    s = state.S.values
    if spec.source == "s3":
        q = s[..., 2]
    elif spec.source == "s3sq":
        q = s[..., 2] ** 2
    else:
        sx = diff(state.S, "dx").values
        q = dot(sx, sx)
        if spec.source == "trform":
            q = 0.5 * q
    return ScalarField(state.S.grid, q)


def me_spin_rhs(spec, state):
    """Vector-form spin right-hand side of a catalog model."""
    _check(spec, state)
    g = state.S.grid
    s = state.S.values
    u = state.u.values

    if spec.spin in ("A", "B"):
        out = cross(s, diff(state.S, "dxx").values)
        drive = u if spec.spin == "A" else u * s[..., 2]
        out += drive[..., None] * cross(s, E3)
    elif spec.spin in ("C", "D"):
        sx = diff(state.S, "dx").values
        coeff = spec.param("mu") * dot(sx, sx) - u + spec.param("m")
        flux = VecField(g, coeff[..., None] * cross(s, sx))
        out = diff(flux, "dx").values
        if spec.spin == "D":
            out = spec.param("n") * cross(s, diff4x(state.S).values) + 2.0 * out
    elif spec.spin == "E":
        out = cross(s, diff(state.S, "dxx").values) + u[..., None] * diff(state.S, "dx").values
    else:
        raise UnimplementedModel(f"{spec.name} has no spin family")
    return VecField(g, out)


def me_phonon_rhs(spec, state):
    """First-order-form phonon right-hand side (du_dt, dw_dt or None)."""
    _check(spec, state)
    if spec.phonon == "none":
        raise PhononAbsent(f"{spec.name} prescribes u externally")
    g = state.u.grid
    q = _coupling(spec, state)
    lam = spec.param("lam")
    u = state.u

    if spec.phonon in ("wave", "boussinesq"):
        if state.w is None:
            raise ValueError(f"{spec.name} needs the velocity field w = u_t")
        acc = (spec.param("nu0") ** 2 * diff(u, "dxx").values
               + lam * diff(q, "dxx").values)
        if spec.phonon == "boussinesq":
            u2 = ScalarField(g, u.values ** 2)
            acc += (spec.param("alpha") * diff(u2, "dxx").values
                    + spec.param("beta") * diff4x(u).values)
        return state.w, ScalarField(g, acc / spec.param("rho"))

    du = -diff(u, "dx").values - lam * diff(q, "dx").values
    if spec.phonon == "kdv":
        u2 = ScalarField(g, u.values ** 2)
        uxxx = diff(diff(u, "dxx"), "dx").values
        du -= spec.param("alpha") * diff(u2, "dx").values + spec.param("beta") * uxxx
    return ScalarField(g, du), None


# ---------------------------------------------------------------------------
# Pauli-matrix oracle

_SIGMA = np.array([[[0, 1], [1, 0]],
                   [[0, -1j], [1j, 0]],
                   [[1, 0], [0, -1]]], dtype=complex)


def _to_matrix(vec):
    """(..., 3) real vectors -> (..., 2, 2) matrices V.sigma."""
    return np.einsum("...k,kab->...ab", vec, _SIGMA)


def _to_vector(mat):
    """Inverse of _to_matrix for traceless Hermitian-combination matrices."""
    return np.real(np.einsum("...ab,kba->...k", mat, _SIGMA)) / 2.0


def _comm(a, b):
    return a @ b - b @ a


def pauli_oracle_rhs(spec, state):
    """me_spin_rhs recomputed literally in 2x2 matrix form.

    Builds S = S.sigma per node, evaluates the published commutator
    expressions with the same x-stencils, divides by 2i, and extracts the
    vector components. Agreement with me_spin_rhs certifies the
    matrix-to-vector translation.
    """
    _check(spec, state)
    g = state.S.grid
    sm = _to_matrix(state.S.values)          # (ny, nx, 2, 2)
    u = state.u.values[..., None, None]
    periodic = g.periodic

    def dx(a):
        return _d1(a, g.dx, 1, periodic)

    def dxx(a):
        return _d2(a, g.dx, 1, periodic)

    if spec.spin == "A":
        m = _comm(sm, dxx(sm)) + u * _comm(sm, _SIGMA[2])
    elif spec.spin == "B":
        s3 = np.real(np.trace(sm @ _SIGMA[2], axis1=-2, axis2=-1))[..., None, None] / 2.0
        m = _comm(sm, dxx(sm)) + u * s3 * _comm(sm, _SIGMA[2])
    elif spec.spin in ("C", "D"):
        smx = dx(sm)
        sx2 = np.real(np.trace(smx @ smx, axis1=-2, axis2=-1))[..., None, None] / 2.0
        coeff = spec.param("mu") * sx2 - u + spec.param("m")
        m = dx(coeff * _comm(sm, smx))
        if spec.spin == "D":
            m = spec.param("n") * _comm(sm, dxx(dxx(sm))) + 2.0 * m
    elif spec.spin == "E":
        m = _comm(sm, dxx(sm)) + 2j * u * dx(sm)
    else:
        raise UnimplementedModel(f"{spec.name} has no spin family")
    return VecField(g, _to_vector(m / 2j))
