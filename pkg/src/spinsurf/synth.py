"""Deterministic smooth random fields for tests, demos, and initial data."""

import numpy as np

from .fields import Grid, ScalarField, VecField, project_sphere


def smooth_scalar(grid, seed=0, modes=3, amplitude=1.0):
    """Band-limited random scalar field, periodic in both directions."""
    rng = np.random.default_rng(seed)
    x, y = grid.meshgrid()
    lx = grid.nx * grid.dx
    ly = grid.ny * grid.dy
    out = np.zeros((grid.ny, grid.nx))
    for _ in range(modes):
        kx = rng.integers(-2, 3)
        ky = rng.integers(-2, 3) if grid.ny > 1 else 0
        phase = rng.uniform(0, 2 * np.pi)
        amp = amplitude * rng.uniform(0.2, 1.0)
        arg = 2 * np.pi * kx * x / lx + phase
        if grid.ny > 1:
            arg = arg + 2 * np.pi * ky * y / ly
        out += amp * np.sin(arg)
    return ScalarField(grid, out)


def smooth_vec(grid, seed=0, modes=3, amplitude=1.0):
    comps = [smooth_scalar(grid, seed=seed * 3 + k + 1, modes=modes,
                           amplitude=amplitude).values for k in range(3)]
    return VecField(grid, np.stack(comps, axis=-1))


def smooth_spin(grid, seed=0, modes=3, tilt=0.5):
    """Unit spin field: a perturbed north pole, projected onto the sphere.

    The bias toward (0, 0, 1) keeps norms safely away from zero so the
    projection is well conditioned for every seed.
    """
    v = smooth_vec(grid, seed=seed, modes=modes, amplitude=tilt).values.copy()
    v[..., 2] += 2.0
    return project_sphere(VecField(grid, v))


def equator_spin(grid, a=1.0, b=0.0):
    """S = (cos(a x + b y), sin(a x + b y), 0), an in-plane winding field."""
    x, y = grid.meshgrid()
    theta = a * x + b * y
    s = np.stack([np.cos(theta), np.sin(theta), np.zeros_like(theta)], axis=-1)
    return project_sphere(VecField(grid, s))
