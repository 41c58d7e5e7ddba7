"""Right-hand sides and stationary residuals for the named spin systems.

Covers the isotropic Heisenberg ferromagnet (HF), the 2+1-D
Landau-Lifshitz equation (LLE), the M-XIII family (plain, A, and B
variants, the latter two carrying an auxiliary potential phi), and the
stationary Ishimori equation. All right-hand sides are tangent to the
sphere up to the discrete S.S_x = O(h^2) identity.
"""

import numpy as np

from .errors import GridTooSmall
from .fields import ScalarField, SpinField, VecField, cross, diff, triple
from .geometry import CoefficientSet, ResidualReport
from .solvers import mixed_integrate, poisson_solve

STATIONARY_KINDS = ("hf", "lle", "mxiii", "mxiiia", "mxiiib", "ishimori")


def _cmul(coeff, arr):
    """Multiply a coefficient (float or (ny, nx) array) into a field array."""
    if np.isscalar(coeff):
        return coeff * arr
    if arr.ndim == coeff.ndim + 1:
        return coeff[..., None] * arr
    return coeff * arr


def hf_rhs(S):
    """S ^ S_xx: the HF flow of a 1-D-in-x spin field."""
    return VecField(S.grid, cross(S.values, diff(S, "dxx").values))


def lle_rhs(S):
    """S ^ (S_xx + S_yy): the 2+1-D Landau-Lifshitz flow."""
    if S.grid.is_1d:
        raise GridTooSmall("the 2+1-D Landau-Lifshitz flow needs a 2-D grid")
    lap = diff(S, "dxx").values + diff(S, "dyy").values
    return VecField(S.grid, cross(S.values, lap))


def _wedge_core(S, a1, a2, b1, b2):
    """S ^ [a2 S_yy + (a1 - b2) S_xy - b1 S_xx]."""
    inner = (_cmul(a2, diff(S, "dyy").values)
             + _cmul(a1, diff(S, "dxy").values) - _cmul(b2, diff(S, "dxy").values)
             - _cmul(b1, diff(S, "dxx").values))
    return cross(S.values, inner)


def mxiii_rhs(S, c):
    """M-XIII flow and its coefficient-constraint residual.

    The coefficient set must satisfy b3 = a4 = 0 and b4 = a3. Returns the
    evolution right-hand side and the scalar field

        (a5_y - b5_x) - (a1 + b2) S.(S_x ^ S_y)

    which the flow is supposed to keep small; it is monitored, never
    enforced.
    """
    g = S.grid
    c.check_grid(g)
    for name, want in (("b3", 0.0), ("a4", 0.0)):
        if not (c.is_constant(name) and c.value(name) == want):
            raise ValueError(f"M-XIII needs {name} = {want}")
    v3, v4 = c.value("b4"), c.value("a3")
    if not np.all(np.asarray(v3) == np.asarray(v4)):
        raise ValueError("M-XIII needs b4 = a3")

    sx = diff(S, "dx").values
    sy = diff(S, "dy").values
    rhs = (_wedge_core(S, c.value("a1"), c.value("a2"), c.value("b1"), c.value("b2"))
           + _cmul(c.deriv("a3", "dy") - c.value("b5"), sx)
           + _cmul(c.value("a5") - c.deriv("a3", "dx"), sy))
    constraint = (c.deriv("a5", "dy") - c.deriv("b5", "dx")
                  - (c.value("a1") + c.value("b2")) * triple(S.values, sx, sy))
    return VecField(g, rhs), ScalarField(g, constraint * np.ones((g.ny, g.nx)))


def mxiiia_system(S, a1, a2, b1, b2, phi_row=None, phi_col=None):
    """M-XIIIA right-hand side with its potential.

    phi solves phi_xy = ((a1+b2)/2) S.(S_x ^ S_y) by mixed-derivative
    quadrature on a clamped grid, gauged to the prescribed (default zero)
    values on the seed row and column. The flow is

        S ^ [a2 S_yy + (a1-b2) S_xy - b1 S_xx] + phi_y S_x + phi_x S_y.
    """
    g = S.grid
    sx = diff(S, "dx").values
    sy = diff(S, "dy").values
    src = ScalarField(g, 0.5 * (a1 + b2) * triple(S.values, sx, sy))
    phi = mixed_integrate(src, phi_row, phi_col)
    rhs = (_wedge_core(S, a1, a2, b1, b2)
           + diff(phi, "dy").values[..., None] * sx
           + diff(phi, "dx").values[..., None] * sy)
    return VecField(g, rhs), phi


def mxiiib_system(S, a1, a2, b1, b2):
    """M-XIIIB right-hand side with its potential.

    phi solves phi_xx + phi_yy = (a1+b2) S.(S_x ^ S_y) on a periodic grid
    in the zero-mean gauge. The discrete source mean (a quadrature leftover
    of the degree integral, O(h^2) for degree-zero fields) is projected out
    so the periodic solvability condition holds to machine precision. The
    flow is

        S ^ [a2 S_yy + (a1-b2) S_xy - b1 S_xx] + phi_x S_x + phi_y S_y.
    """
    g = S.grid
    sx = diff(S, "dx").values
    sy = diff(S, "dy").values
    raw = (a1 + b2) * triple(S.values, sx, sy)
    src = ScalarField(g, raw - raw.mean())
    phi = poisson_solve(src)
    rhs = (_wedge_core(S, a1, a2, b1, b2)
           + diff(phi, "dx").values[..., None] * sx
           + diff(phi, "dy").values[..., None] * sy)
    return VecField(g, rhs), phi


def stationary_residual(kind, S, phi=None, coeffs=None, alpha=None):
    """Residual of the stationary form of a named spin system.

    kind: "hf", "lle", "mxiii" (needs coeffs), "mxiiia"/"mxiiib" (need
    coeffs for a1, a2, b1, b2 and the potential phi), or "ishimori"
    (needs phi and alpha != 0). The vector part is the stationary
    equation's left-hand side; the scalar part is the potential/
    coefficient constraint written as LHS - RHS.
    """
    kind = kind.lower()
    if kind not in STATIONARY_KINDS:
        raise ValueError(f"unknown stationary kind {kind!r}")
    g = S.grid
    zeros = ScalarField(g, np.zeros((g.ny, g.nx)))

    if kind == "hf":
        return ResidualReport(hf_rhs(S), zeros)
    if kind == "lle":
        return ResidualReport(lle_rhs(S), zeros)
    if kind == "mxiii":
        if coeffs is None:
            raise ValueError("mxiii stationary residual needs a coefficient set")
        vec, constraint = mxiii_rhs(S, coeffs)
        return ResidualReport(vec, constraint)

    sx = diff(S, "dx").values
    sy = diff(S, "dy").values
    trip = triple(S.values, sx, sy)

    if kind == "ishimori":
        if phi is None or alpha is None:
            raise ValueError("ishimori stationary residual needs phi and alpha")
        if alpha == 0:
            raise ValueError("ishimori anisotropy alpha must be nonzero")
        inner = diff(S, "dxx").values + alpha ** 2 * diff(S, "dyy").values
        vec = (cross(S.values, inner)
               + diff(phi, "dx").values[..., None] * sy
               + diff(phi, "dy").values[..., None] * sx)
        scal = (alpha ** 2 * diff(phi, "dyy").values - diff(phi, "dxx").values
                - alpha ** 2 * trip)
        return ResidualReport(VecField(g, vec), ScalarField(g, scal))

    if coeffs is None or phi is None:
        raise ValueError(f"{kind} stationary residual needs coeffs and phi")
    a1, a2 = coeffs.value("a1"), coeffs.value("a2")
    b1, b2 = coeffs.value("b1"), coeffs.value("b2")
    core = _wedge_core(S, a1, a2, b1, b2)
    phix = diff(phi, "dx").values
    phiy = diff(phi, "dy").values
    if kind == "mxiiia":
        vec = core + phiy[..., None] * sx + phix[..., None] * sy
        scal = diff(phi, "dxy").values - 0.5 * (a1 + b2) * trip
    else:
        vec = core + phix[..., None] * sx + phiy[..., None] * sy
        scal = (diff(phi, "dxx").values + diff(phi, "dyy").values
                - (a1 + b2) * trip)
    return ResidualReport(VecField(g, vec), ScalarField(g, scal))
