from typing import Optional, Sequence

import numpy

from .grid import grid
from .gridfunction import gridfunction


class state:
    """
    Phase point ``(u, v = u_t)`` at time ``t``. Both fields share one grid and
    vanish at the endpoints.
    """

    def __init__(
        self,
        u: gridfunction,
        v: gridfunction,
        t: float = 0.0,
        modes: Optional[tuple] = None,
    ) -> None:
        if u.grid != v.grid:
            raise ValueError("Displacement and velocity on different grids")

        self.u = u
        self.v = v
        self.t = float(t)
        self.modes = modes

    @property
    def grid(self) -> grid:
        return self.u.grid

    @classmethod
    def sine_series(
        cls,
        coeffs_u: Sequence[float],
        coeffs_v: Sequence[float],
        lattice: grid,
        t: float = 0.0,
    ) -> "state":
        """
        Builds ``u = sum a_k sin(k pi x)``, ``v = sum b_k sin(k pi x)``. The
        endpoint values are set to zero exactly.

        :param coeffs_u: Coefficients a_1, a_2, ...
        :param coeffs_v: Coefficients b_1, b_2, ...
        :param lattice: The grid to sample on.
        :param t: Time stamp of the state.
        :returns: The ``state``.
        """

        def series(coeffs):
            values = numpy.zeros_like(lattice.nodes)
            for k, coeff in enumerate(coeffs, start=1):
                values = values + coeff * numpy.sin(
                    k * numpy.pi * lattice.nodes
                )
            values[0] = values[-1] = 0.0
            return gridfunction(lattice, values)

        return cls(
            series(coeffs_u),
            series(coeffs_v),
            t,
            (tuple(map(float, coeffs_u)), tuple(map(float, coeffs_v))),
        )

    @classmethod
    def from_values(
        cls,
        lattice: grid,
        u: Sequence[float],
        v: Sequence[float],
        t: float = 0.0,
    ) -> "state":
        """
        Wraps sampled arrays without touching their endpoint values, so that
        boundary checks can still see them.
        """
        return cls(gridfunction(lattice, u), gridfunction(lattice, v), t)

    @classmethod
    def zero(cls, lattice: grid, t: float = 0.0) -> "state":
        return cls.sine_series([], [], lattice, t)

    @classmethod
    def random(
        cls,
        lattice: grid,
        rng: numpy.random.Generator,
        max_modes: int = 10,
        scale: float = 1.0,
    ) -> "state":
        """
        Random sine-series state with up to ``max_modes`` modes per field and
        coefficients uniform in ``[-scale, scale]``.
        """
        n_u, n_v = rng.integers(1, max_modes + 1, size=2)
        return cls.sine_series(
            rng.uniform(-scale, scale, n_u),
            rng.uniform(-scale, scale, n_v),
            lattice,
        )

    def boundary_violations(self, tol: float = 0.0) -> list:
        """
        Lists the violated boundary conditions by name.
        """
        return [
            name
            for name, value in [
                ("u0(0)=0", self.u.values[0]),
                ("u0(1)=0", self.u.values[-1]),
                ("u1(0)=0", self.v.values[0]),
                ("u1(1)=0", self.v.values[-1]),
            ]
            if abs(value) > tol
        ]

    def resample(self, lattice: grid) -> "state":
        """
        Regenerates a sine-series state on another grid.
        """
        if self.modes is None:
            raise ValueError("Only sine-series states can be resampled")

        return state.sine_series(*self.modes, lattice, self.t)

    def __repr__(self) -> str:
        return f"state(t={self.t:g}, {self.grid!r})"
