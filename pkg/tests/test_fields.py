import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinsurf import (CLAMPED, PERIODIC, Grid, GridMismatch, NearZeroNorm,
                      ScalarField, SpinField, VecField, constant_field, cross,
                      diff, diff4x, dot, norm, project_sphere, same_grid,
                      triple)
from spinsurf.errors import GridTooSmall

E1, E2, E3 = np.eye(3)

vec3 = st.lists(st.floats(-10, 10, allow_nan=False), min_size=3, max_size=3).map(np.array)


class TestGrid:
    def test_axes(self):
        g = Grid(4, 3, 0.5, 0.25, PERIODIC)
        assert np.allclose(g.x(), [0, 0.5, 1.0, 1.5])
        assert np.allclose(g.y(), [0, 0.25, 0.5])
        assert not g.is_1d and g.periodic

    def test_too_small(self):
        with pytest.raises(GridTooSmall):
            Grid(1, 1, 0.1, 1.0, PERIODIC)

    def test_bad_boundary(self):
        with pytest.raises(ValueError):
            Grid(8, 1, 0.1, 1.0, "open")

    def test_1d(self):
        g = Grid(8, 1, 0.1, 1.0, PERIODIC)
        assert g.is_1d


class TestFields:
    def test_scalar_shape_check(self, grid1d):
        with pytest.raises(ValueError):
            ScalarField(grid1d, np.zeros((2, grid1d.nx)))

    def test_vec_shape_check(self, grid1d):
        with pytest.raises(ValueError):
            VecField(grid1d, np.zeros((1, grid1d.nx)))

    def test_spin_requires_unit_norm(self, grid1d):
        v = np.zeros((1, grid1d.nx, 3))
        v[..., 2] = 1.5
        with pytest.raises(ValueError):
            SpinField(grid1d, v)

    def test_values_read_only(self, grid1d):
        f = constant_field(grid1d, (0.0, 0.0, 1.0))
        with pytest.raises(ValueError):
            f.values[0, 0, 0] = 2.0

    def test_same_grid_mismatch(self, grid1d, grid2d):
        a = constant_field(grid1d, 1.0)
        b = constant_field(grid2d, 1.0)
        with pytest.raises(GridMismatch):
            same_grid(a, b)


class TestCross:
    def test_basis_identity(self):
        assert np.array_equal(cross(E1, E2), E3)

    def test_basis_identity_cyclic(self):
        assert np.array_equal(cross(E3, E1), E2)

    @given(vec3)
    def test_self_cross_zero(self, a):
        assert np.array_equal(cross(a, a), np.zeros(3))

    @given(vec3, vec3)
    def test_antisymmetry(self, a, b):
        assert np.array_equal(cross(a, b), -cross(b, a))

    @given(vec3, vec3)
    def test_orthogonality(self, a, b):
        c = cross(a, b)
        assert abs(dot(a, c)) <= 1e-9 * (1 + norm(a) ** 2 * norm(b) ** 2)


class TestTriple:
    def test_unit_determinant(self):
        assert triple(E1, E2, E3) == 1.0

    @given(vec3, vec3)
    def test_repeated_last_arguments(self, a, b):
        assert triple(a, b, b) == 0.0

    @given(vec3, vec3)
    def test_repeated_first_argument(self, a, b):
        scale = 1 + norm(a) ** 2 * norm(b)
        assert abs(triple(a, a, b)) <= 1e-13 * scale

    def test_constant_spin_derivatives(self, grid2d):
        S = constant_field(grid2d, (0.0, 0.0, 1.0))
        sx = diff(S, "dx").values
        sy = diff(S, "dy").values
        assert np.all(triple(S.values, sx, sy) == 0.0)


class TestDiff:
    @pytest.mark.parametrize("boundary", [PERIODIC, CLAMPED])
    @pytest.mark.parametrize("which", ["dx", "dy", "dxx", "dyy", "dxy"])
    def test_constant_exactly_zero(self, boundary, which):
        g = Grid(16, 12, 0.3, 0.2, boundary)
        f = constant_field(g, 0.1)
        assert np.all(diff(f, which).values == 0.0)

    def test_dx_second_order_periodic(self):
        errs = []
        for n in (64, 128):
            g = Grid(n, 1, 1.0 / n, 1.0, PERIODIC)
            x = g.x()
            f = ScalarField(g, np.sin(2 * np.pi * x)[None, :])
            exact = 2 * np.pi * np.cos(2 * np.pi * x)
            errs.append(np.abs(diff(f, "dx").values[0] - exact).max())
        assert 3.3 < errs[0] / errs[1] < 4.7

    def test_dxy_exact_on_bilinear(self):
        g = Grid(10, 8, 0.37, 0.21, CLAMPED)
        x, y = g.meshgrid()
        f = ScalarField(g, x * y)
        assert np.allclose(diff(f, "dxy").values, 1.0, rtol=0, atol=1e-12)

    def test_dy_needs_2d(self, grid1d):
        f = constant_field(grid1d, 1.0)
        with pytest.raises(GridTooSmall):
            diff(f, "dy")

    def test_unknown_which(self, grid1d):
        with pytest.raises(ValueError):
            diff(constant_field(grid1d, 1.0), "dz")


class TestDiff4x:
    def test_constant_zero(self, grid1d):
        assert np.all(diff4x(constant_field(grid1d, 2.5)).values == 0.0)

    def test_cubic_interior_zero(self):
        g = Grid(16, 1, 0.25, 1.0, CLAMPED)
        x = g.x()
        f = ScalarField(g, (x ** 3 - 2 * x)[None, :])
        interior = diff4x(f).values[0, 4:-4]
        assert np.abs(interior).max() < 1e-10

    def test_sine_fourth_derivative(self):
        errs = []
        for n in (64, 128):
            g = Grid(n, 1, 1.0 / n, 1.0, PERIODIC)
            x = g.x()
            f = ScalarField(g, np.sin(2 * np.pi * x)[None, :])
            exact = (2 * np.pi) ** 4 * np.sin(2 * np.pi * x)
            errs.append(np.abs(diff4x(f).values[0] - exact).max())
        assert 3.3 < errs[0] / errs[1] < 4.7


class TestProjectSphere:
    def test_scaled_pole(self, grid1d):
        v = constant_field(grid1d, (0.0, 0.0, 2.0))
        out = project_sphere(v)
        assert isinstance(out, SpinField)
        assert np.all(out.values[..., 2] == 1.0)

    def test_idempotence(self, grid1d):
        from spinsurf import synth
        S = synth.smooth_spin(grid1d, seed=5)
        again = project_sphere(S)
        assert np.abs(again.values - S.values).max() < 1e-15

    def test_zero_node_rejected(self, grid1d):
        v = np.ones((1, grid1d.nx, 3))
        v[0, 3] = 0.0
        with pytest.raises(NearZeroNorm) as exc:
            project_sphere(VecField(grid1d, v))
        assert exc.value.i == 3
