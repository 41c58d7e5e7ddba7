"""Grids, scalar/vector fields, and second-order finite-difference calculus.

Fields live on uniform 2-D grids (ny = 1 degenerates to 1-D). Node (i, j)
maps to flat index i + nx*j, i.e. arrays are stored with shape (ny, nx)
[, 3] in C order. All field objects are immutable after construction.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import GridMismatch, GridTooSmall, NearZeroNorm, NonFiniteValue

PERIODIC = "periodic"
CLAMPED = "clamped"

SPIN_NORM_TOL = 1e-12     # admission tolerance for unit spin fields
NORM_FLOOR = 1e-8         # below this, normalization is refused


@dataclass(frozen=True)
class Grid:
    """Uniform grid with nx*ny nodes at (i*dx, j*dy)."""

    nx: int
    ny: int
    dx: float
    dy: float
    boundary: str = PERIODIC

    def __post_init__(self):
        if self.nx < 2 or self.ny < 1:
            raise GridTooSmall(f"need nx >= 2 and ny >= 1, got {self.nx}x{self.ny}")
        if not (self.dx > 0 and self.dy > 0):
            raise ValueError("grid spacings must be positive")
        if self.boundary not in (PERIODIC, CLAMPED):
            raise ValueError(f"unknown boundary mode {self.boundary!r}")

    @property
    def is_1d(self):
        return self.ny == 1

    @property
    def periodic(self):
        return self.boundary == PERIODIC

    def x(self):
        return np.arange(self.nx) * self.dx

    def y(self):
        return np.arange(self.ny) * self.dy

    def meshgrid(self):
        """(X, Y) arrays of shape (ny, nx)."""
        return np.meshgrid(self.x(), self.y())


def _frozen_array(values, shape):
    a = np.ascontiguousarray(values, dtype=float)
    if a.shape != shape:
        raise ValueError(f"expected shape {shape}, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NonFiniteValue("field contains non-finite values")
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class ScalarField:
    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values",
                           _frozen_array(self.values, (self.grid.ny, self.grid.nx)))


@dataclass(frozen=True, eq=False)
class VecField:
    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values",
                           _frozen_array(self.values, (self.grid.ny, self.grid.nx, 3)))


class SpinField(VecField):
    """VecField whose vectors are unit length at every node."""

    def __post_init__(self):
        super().__post_init__()
        drift = np.abs(np.linalg.norm(self.values, axis=-1) - 1.0).max()
        if drift > SPIN_NORM_TOL:
            raise ValueError(f"spin field norm drift {drift:.3e} exceeds {SPIN_NORM_TOL}")


def constant_field(grid, value):
    """ScalarField (scalar value) or VecField (3-vector value) of constants."""
    value = np.asarray(value, dtype=float)
    if value.ndim == 0:
        return ScalarField(grid, np.full((grid.ny, grid.nx), float(value)))
    return VecField(grid, np.broadcast_to(value, (grid.ny, grid.nx, 3)).copy())


def same_grid(*fields):
    g = fields[0].grid
    for f in fields[1:]:
        if f.grid != g:
            raise GridMismatch(f"{f.grid} != {g}")
    return g


# ---------------------------------------------------------------------------
# vector algebra (on trailing-axis-3 arrays)

def cross(a, b):
    """Right-handed cross product on (..., 3) arrays."""
    a, b = np.asarray(a), np.asarray(b)
    out = np.empty(np.broadcast_shapes(a.shape, b.shape))
    out[..., 0] = a[..., 1] * b[..., 2] - a[..., 2] * b[..., 1]
    out[..., 1] = a[..., 2] * b[..., 0] - a[..., 0] * b[..., 2]
    out[..., 2] = a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]
    return out


def dot(a, b):
    return np.sum(np.asarray(a) * np.asarray(b), axis=-1)


def triple(a, b, c):
    """Scalar triple product a . (b x c)."""
    return dot(a, cross(b, c))


def norm(a):
    return np.linalg.norm(np.asarray(a), axis=-1)


# ---------------------------------------------------------------------------
# finite differences
#
# All stencils are written in difference-of-neighbours form so that constant
# fields differentiate to exactly zero in floating point.

def _d1(a, h, axis, periodic):
    if a.shape[axis] < 3:
        raise GridTooSmall("first derivative needs at least 3 nodes")
    if periodic:
        return (np.roll(a, -1, axis) - np.roll(a, 1, axis)) / (2.0 * h)
    a = np.moveaxis(a, axis, 0)
    out = np.empty_like(a)
    out[1:-1] = a[2:] - a[:-2]
    # second-order one-sided: -3f0 + 4f1 - f2 = 4(f1-f0) - (f2-f0)
    out[0] = 4.0 * (a[1] - a[0]) - (a[2] - a[0])
    out[-1] = 4.0 * (a[-1] - a[-2]) - (a[-1] - a[-3])
    return np.moveaxis(out, 0, axis) / (2.0 * h)


def _d2(a, h, axis, periodic):
    if a.shape[axis] < 3:
        raise GridTooSmall("second derivative needs at least 3 nodes")
    if periodic:
        up = np.roll(a, -1, axis)
        dn = np.roll(a, 1, axis)
        return ((up - a) - (a - dn)) / (h * h)
    if a.shape[axis] < 4:
        raise GridTooSmall("clamped second derivative needs at least 4 nodes")
    a = np.moveaxis(a, axis, 0)
    out = np.empty_like(a)
    out[1:-1] = (a[2:] - a[1:-1]) - (a[1:-1] - a[:-2])
    # second-order one-sided: 2f0 - 5f1 + 4f2 - f3, in difference form
    d = np.diff(a[:4], axis=0)
    out[0] = -2.0 * d[0] + 3.0 * d[1] - d[2]
    d = np.diff(a[-4:], axis=0)
    out[-1] = -2.0 * d[2] + 3.0 * d[1] - d[0]
    return np.moveaxis(out, 0, axis) / (h * h)


def _require_y(grid):
    if grid.is_1d:
        raise GridTooSmall("y-derivative requested on a 1-D grid")
    if grid.ny < 3:
        raise GridTooSmall("y-derivatives need ny >= 3")


def _wrap_like(f, values):
    cls = ScalarField if isinstance(f, ScalarField) else VecField
    return cls(f.grid, values)


def diff(f, which):
    """Second-order finite difference of a field.

    which: one of "dx", "dy", "dxx", "dyy", "dxy". Periodic grids wrap;
    clamped grids use one-sided second-order stencils at the edges. "dxy"
    is the composition dy(dx(f)).
    """
    g = f.grid
    which = which.lower()
    if which == "dx":
        out = _d1(f.values, g.dx, -2 if isinstance(f, VecField) else -1, g.periodic)
    elif which == "dxx":
        out = _d2(f.values, g.dx, -2 if isinstance(f, VecField) else -1, g.periodic)
    elif which == "dy":
        _require_y(g)
        out = _d1(f.values, g.dy, 0, g.periodic)
    elif which == "dyy":
        _require_y(g)
        out = _d2(f.values, g.dy, 0, g.periodic)
    elif which == "dxy":
        return diff(diff(f, "dx"), "dy")
    else:
        raise ValueError(f"unknown derivative {which!r}")
    return _wrap_like(f, out)


def diff4x(f):
    """Fourth x-derivative as the composition dxx(dxx(f)).

    On periodic grids this is exactly the centered 5-point stencil
    (1, -4, 6, -4, 1)/dx^4; clamped grids inherit the one-sided variants.
    """
    if f.grid.nx < 5:
        raise GridTooSmall("fourth derivative needs nx >= 5")
    return diff(diff(f, "dxx"), "dxx")


def project_sphere(v):
    """Normalize a VecField onto the unit sphere, returning a SpinField."""
    n = norm(v.values)
    if n.min() < NORM_FLOOR:
        j, i = np.unravel_index(np.argmin(n), n.shape)
        raise NearZeroNorm(int(i), int(j), float(n[j, i]))
    return SpinField(v.grid, v.values / n[..., None])
