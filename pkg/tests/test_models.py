import numpy as np
import pytest

from spinsurf import (CLAMPED, PERIODIC, CoefficientSet, Grid, ScalarField,
                      SpinField, constant_field, cross, diff, dot, hf_rhs,
                      lle_rhs, mxiii_rhs, mxiiia_system, mxiiib_system,
                      stationary_residual, synth, triple)
from spinsurf.errors import GridTooSmall

STATIONARY_KINDS = ("hf", "lle", "mxiii", "mxiiia", "mxiiib", "ishimori")


def pole(grid):
    return SpinField(grid, np.broadcast_to([0.0, 0.0, 1.0],
                                           (grid.ny, grid.nx, 3)).copy())


class TestHfRhs:
    def test_constant_zero(self, grid1d):
        assert np.all(hf_rhs(pole(grid1d)).values == 0.0)

    def test_equator_parallel(self):
        g = Grid(128, 1, 2 * np.pi / 128, 1.0, PERIODIC)
        S = synth.equator_spin(g, a=1.0)
        # S_xx = -S analytically, so S ^ S_xx vanishes up to O(dx^2)
        assert np.abs(hf_rhs(S).values).max() < 5e-3

    def test_orthogonal_to_spin(self, grid1d):
        S = synth.smooth_spin(grid1d, seed=11)
        out = hf_rhs(S).values
        assert np.abs(dot(S.values, out)).max() < 1e-13


class TestLleRhs:
    def test_constant_zero(self, grid2d):
        assert np.all(lle_rhs(pole(grid2d)).values == 0.0)

    def test_harmonic_equator_map(self):
        n = 96
        g = Grid(n, n, 2 * np.pi / n, 2 * np.pi / n, PERIODIC)
        S = synth.equator_spin(g, a=1.0, b=1.0)
        assert np.abs(lle_rhs(S).values).max() < 1e-2

    def test_needs_2d(self, grid1d):
        with pytest.raises(GridTooSmall):
            lle_rhs(pole(grid1d))

    def test_matches_brute_force(self, grid2d):
        S = synth.smooth_spin(grid2d, seed=12)
        expect = cross(S.values, diff(S, "dxx").values + diff(S, "dyy").values)
        assert np.array_equal(lle_rhs(S).values, expect)


class TestMxiiiRhs:
    def test_constant_everything_zero(self, grid2d):
        rhs, constraint = mxiii_rhs(pole(grid2d),
                                    CoefficientSet(a1=1.0, b2=0.5, a2=1.0))
        assert np.all(rhs.values == 0.0)
        assert np.all(constraint.values == 0.0)

    def test_a2_selects_syy(self, grid2d):
        S = synth.smooth_spin(grid2d, seed=13)
        rhs, _ = mxiii_rhs(S, CoefficientSet(a2=1.0))
        expect = cross(S.values, diff(S, "dyy").values)
        assert np.array_equal(rhs.values, expect)

    @pytest.mark.parametrize("bad", [{"b3": 1.0}, {"a4": 1.0}, {"b4": 2.0}])
    def test_coefficient_constraints_enforced(self, grid2d, bad):
        with pytest.raises(ValueError):
            mxiii_rhs(synth.smooth_spin(grid2d, seed=1),
                      CoefficientSet(a2=1.0, **bad))


class TestMxiiiaSystem:
    def test_constant_spin(self, grid2d_clamped):
        rhs, phi = mxiiia_system(pole(grid2d_clamped), 1.0, 1.0, 0.0, 0.5)
        assert np.all(phi.values == 0.0)
        assert np.all(rhs.values == 0.0)

    def test_equator_map_coplanar(self, grid2d_clamped):
        S = synth.equator_spin(grid2d_clamped, a=0.7, b=0.3)
        rhs, phi = mxiiia_system(S, 1.0, 1.0, -0.5, 0.5)
        assert np.all(phi.values == 0.0)

    def test_back_substitution_order_two(self):
        errs = []
        for n in (48, 96):
            g = Grid(n, n, 4.0 / n, 4.0 / n, CLAMPED)
            S = synth.smooth_spin(g, seed=14)
            a1, b2 = 0.8, 0.4
            _, phi = mxiiia_system(S, a1, 1.0, 0.0, b2)
            sx = diff(S, "dx").values
            sy = diff(S, "dy").values
            src = 0.5 * (a1 + b2) * triple(S.values, sx, sy)
            resid = diff(phi, "dxy").values - src
            errs.append(np.abs(resid[2:-2, 2:-2]).max())
        assert errs[1] < errs[0] / 2.5


class TestMxiiibSystem:
    def test_constant_spin(self, grid2d):
        rhs, phi = mxiiib_system(pole(grid2d), 1.0, 1.0, 0.0, 0.5)
        assert np.all(phi.values == 0.0)
        assert np.all(rhs.values == 0.0)

    def test_cancelling_coefficients_kill_potential(self, grid2d):
        S = synth.smooth_spin(grid2d, seed=15)
        rhs, phi = mxiiib_system(S, 1.0, 1.0, 0.0, -1.0)
        assert np.all(phi.values == 0.0)

    def test_potential_back_substitution(self, grid2d):
        S = synth.smooth_spin(grid2d, seed=16)
        a1, b2 = 0.6, 0.2
        _, phi = mxiiib_system(S, a1, 1.0, 0.0, b2)
        sx = diff(S, "dx").values
        sy = diff(S, "dy").values
        src = (a1 + b2) * triple(S.values, sx, sy)
        src = src - src.mean()
        lap = diff(phi, "dxx").values + diff(phi, "dyy").values
        assert np.abs(lap - src).max() < 1e-10 * max(1.0, np.abs(src).max())


class TestStationaryResidual:
    @pytest.mark.parametrize("kind", STATIONARY_KINDS)
    def test_constant_spin_all_kinds_zero(self, grid2d, kind):
        S = pole(grid2d)
        phi = constant_field(grid2d, 0.0)
        coeffs = CoefficientSet(a1=1.0, a2=1.0, b2=0.5)
        rep = stationary_residual(kind, S, phi=phi, coeffs=coeffs, alpha=1.0)
        assert rep.vector_max == 0.0 and rep.scalar_max == 0.0

    def test_lle_equator_converges(self):
        # Every even-derivative truncation error of the symmetric stencils
        # is parallel to S on this map and is annihilated by the cross
        # product, so the surviving edge error is O(h^3): the residual
        # superconverges (ratio ~8 per halving, at least second order).
        errs = []
        for n in (48, 96):
            g = Grid(n, n, 2 * np.pi / n, 2 * np.pi / n, CLAMPED)
            S = synth.equator_spin(g, a=1.0, b=1.0)
            errs.append(stationary_residual("lle", S).vector_max)
        assert errs[0] / errs[1] > 3.3
        assert errs[1] < 1e-3

    def test_ishimori_matches_brute_force(self, grid2d):
        S = synth.smooth_spin(grid2d, seed=17)
        phi = synth.smooth_scalar(grid2d, seed=18)
        alpha = 1.5
        rep = stationary_residual("ishimori", S, phi=phi, alpha=alpha)
        sx, sy = diff(S, "dx").values, diff(S, "dy").values
        vec = (cross(S.values, diff(S, "dxx").values
                     + alpha ** 2 * diff(S, "dyy").values)
               + diff(phi, "dx").values[..., None] * sy
               + diff(phi, "dy").values[..., None] * sx)
        scal = (alpha ** 2 * diff(phi, "dyy").values - diff(phi, "dxx").values
                - alpha ** 2 * triple(S.values, sx, sy))
        assert np.abs(rep.vector_residual.values - vec).max() < 1e-13
        assert np.abs(rep.scalar_residual.values - scal).max() < 1e-13

    def test_ishimori_needs_nonzero_alpha(self, grid2d):
        with pytest.raises(ValueError):
            stationary_residual("ishimori", pole(grid2d),
                                phi=constant_field(grid2d, 0.0), alpha=0.0)

    def test_unknown_kind(self, grid2d):
        with pytest.raises(ValueError):
            stationary_residual("heat", pole(grid2d))
