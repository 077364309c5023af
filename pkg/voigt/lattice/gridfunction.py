import numpy
from scipy.integrate import trapezoid

from .grid import grid


class gridfunction:
    """
    Samples of a scalar field on every node of a ``grid``, endpoints included.
    The values are read-only once constructed.
    """

    def __init__(self, lattice: grid, values: numpy.ndarray) -> None:
        values = numpy.array(values, dtype=float)

        if values.shape != (lattice.n_interior + 2,):
            raise ValueError(
                f"Expected {lattice.n_interior + 2} values, got {values.shape}"
            )

        values.flags.writeable = False
        self.grid = lattice
        self.values = values

    @classmethod
    def sample(cls, lattice: grid, function) -> "gridfunction":
        """
        Samples a vectorised callable at the grid nodes.
        """
        return cls(lattice, function(lattice.nodes))

    @classmethod
    def zero(cls, lattice: grid) -> "gridfunction":
        return cls(lattice, numpy.zeros(lattice.n_interior + 2))

    def derivative(self, order: int) -> "gridfunction":
        """
        Second-order finite differences: central stencils at interior nodes,
        one-sided stencils at both endpoints (three points for the first
        derivative, four points for the second derivative).

        :param order: 1 or 2.
        :returns: The derivative as ``gridfunction``.
        """
        g = self.values
        h = self.grid.h
        out = numpy.empty_like(g)

        if order == 1:
            out[1:-1] = (g[2:] - g[:-2]) / (2 * h)
            out[0] = (-3 * g[0] + 4 * g[1] - g[2]) / (2 * h)
            out[-1] = (3 * g[-1] - 4 * g[-2] + g[-3]) / (2 * h)
        elif order == 2:
            out[1:-1] = (g[2:] - 2 * g[1:-1] + g[:-2]) / h**2
            out[0] = (2 * g[0] - 5 * g[1] + 4 * g[2] - g[3]) / h**2
            out[-1] = (2 * g[-1] - 5 * g[-2] + 4 * g[-3] - g[-4]) / h**2
        else:
            raise ValueError(f"Invalid derivative order {order}")

        return gridfunction(self.grid, out)

    def integrate(self) -> float:
        """
        Composite trapezoid value of the integral over [0, 1].
        """
        return float(trapezoid(self.values, dx=self.grid.h))

    def __mul__(self, other) -> "gridfunction":
        if isinstance(other, gridfunction):
            other = other.values

        return gridfunction(self.grid, self.values * other)

    __rmul__ = __mul__

    def __add__(self, other: "gridfunction") -> "gridfunction":
        return gridfunction(self.grid, self.values + other.values)

    def __sub__(self, other: "gridfunction") -> "gridfunction":
        return gridfunction(self.grid, self.values - other.values)

    def __pow__(self, exponent: float) -> "gridfunction":
        return gridfunction(self.grid, self.values**exponent)

    def __repr__(self) -> str:
        return f"gridfunction({self.grid!r}, max={abs(self.values).max():g})"
