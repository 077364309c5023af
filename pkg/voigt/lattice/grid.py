import numpy

from ..utility.exceptions import griderror


class grid:
    """
    Uniform grid over [0, 1] with ``n_interior`` interior nodes and both
    endpoints, ``x_i = i * h`` for ``i = 0 .. n_interior + 1``.
    """

    def __init__(self, n_interior: int) -> None:
        if int(n_interior) != n_interior or n_interior < 3:
            raise griderror(f"Invalid grid size {n_interior}, need at least 3")

        self.n_interior = int(n_interior)
        self.h = 1.0 / (self.n_interior + 1)
        self.nodes = numpy.linspace(0.0, 1.0, self.n_interior + 2)
        self.nodes.flags.writeable = False

    @classmethod
    def make(cls, n_interior: int) -> "grid":
        """
        Builds the uniform grid.

        :param n_interior: Number of interior nodes, at least 3.
        :returns: The ``grid``.
        :raises griderror: On fewer than 3 interior nodes.
        """
        return cls(n_interior)

    @property
    def interior(self) -> numpy.ndarray:
        return self.nodes[1:-1]

    def refine(self, factor: int = 2) -> "grid":
        """
        Returns a grid whose spacing is ``h / factor``.
        """
        return grid(factor * (self.n_interior + 1) - 1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, grid) and other.n_interior == self.n_interior

    def __hash__(self) -> int:
        return hash(self.n_interior)

    def __repr__(self) -> str:
        return f"grid(n_interior={self.n_interior})"
