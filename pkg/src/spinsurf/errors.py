"""Exception types shared across the package."""


class SpinsurfError(Exception):
    """Base class for all package errors."""


class GridMismatch(SpinsurfError):
    """Two fields that must share a grid do not."""


class GridTooSmall(SpinsurfError):
    """The requested stencil does not fit on the grid."""


class NearZeroNorm(SpinsurfError):
    """Normalization requested at a node with vanishing vector norm."""

    def __init__(self, i, j, norm):
        self.i, self.j, self.norm = i, j, norm
        super().__init__(f"near-zero norm {norm:.3e} at node ({i}, {j})")


class DegenerateTangent(SpinsurfError):
    """|r_x x r_y| below tolerance; the surface normal is undefined there."""

    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"degenerate tangent plane at node ({i}, {j})")


class NonZeroMeanSource(SpinsurfError):
    """Periodic Poisson source violates the zero-mean solvability condition."""


class NonConvergence(SpinsurfError):
    """Iterative solve failed to reach tolerance."""

    def __init__(self, iterations, residual):
        self.iterations, self.residual = iterations, residual
        super().__init__(f"no convergence after {iterations} iterations "
                         f"(residual {residual:.3e})")


class Blowup(SpinsurfError):
    """Time integration produced a non-finite value."""

    def __init__(self, step):
        self.step = step
        super().__init__(f"non-finite value at step {step}")


class UnknownModel(SpinsurfError):
    """Name not present in the model registry."""


class UnimplementedModel(SpinsurfError):
    """Catalog entry exists but is deliberately not implemented."""


class PhononAbsent(SpinsurfError):
    """Phonon right-hand side requested for a model without a phonon equation."""


class FormatError(SpinsurfError):
    """Malformed input file."""

    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class NonFiniteValue(SpinsurfError):
    """NaN or infinity where a finite value is required."""


class ConfigError(SpinsurfError):
    """Bad run configuration (unknown key, wrong type, missing value)."""
