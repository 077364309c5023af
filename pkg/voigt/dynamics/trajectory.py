from typing import List, Optional

import numpy

from ..lattice.state import state
from ..utility.dotdictionary import dotdictionary
from .forcing import forcingspec
from .params import pdeparams


class observer:
    """
    What a simulation records and how often: every ``stride`` steps (and at
    the final step) the state is kept together with d^2, V (at ``gamma``),
    the forcing energy ``f2 = int f^2 dx`` and optionally d_1^2, V_1 and W
    (at ``gamma_w``).
    """

    def __init__(
        self,
        stride: int = 100,
        gamma: float = 1.0,
        gamma_w: Optional[float] = None,
        distance1: bool = False,
        lyapunov1: bool = False,
    ) -> None:
        if int(stride) != stride or stride < 1:
            raise ValueError(f"Invalid observation stride {stride}")

        self.stride = int(stride)
        self.gamma = float(gamma)
        self.gamma_w = gamma_w
        self.distance1 = distance1
        self.lyapunov1 = lyapunov1


class trajectory:
    """
    Result of one simulation run. Only the observed states are kept: a run of
    ``steps`` time steps does not hold ``steps + 1`` states but one state every
    ``stride`` steps plus the final one, so ``states[i].t = t0 + i * stride *
    dt`` except for a final partial stride. ``stride = 1`` recovers every time
    step. ``observations`` holds one row per observed state. ``error`` is set
    when the integrator stopped early, in which case the trajectory is partial.
    """

    def __init__(
        self,
        states: List[state],
        observations: List[dotdictionary],
        dt: float,
        params: pdeparams,
        spec: forcingspec,
        watch: observer,
        steps: int,
        error: Optional[str] = None,
    ) -> None:
        self.states = tuple(states)
        self.observations = tuple(observations)
        self.dt = dt
        self.params = params
        self.forcing = spec
        self.observer = watch
        self.steps = steps
        self.error = error

    @property
    def t0(self) -> float:
        return self.states[0].t

    @property
    def complete(self) -> bool:
        return self.error is None

    def column(self, name: str) -> numpy.ndarray:
        """
        One observed quantity over time, ``nan`` where it was not recorded.
        """
        return numpy.array(
            [
                numpy.nan if row.get(name) is None else row[name]
                for row in self.observations
            ],
            dtype=float,
        )

    def __len__(self) -> int:
        return len(self.states)

    def __repr__(self) -> str:
        return (
            f"trajectory({len(self)} observed of {self.steps} steps, "
            f"error={self.error!r})"
        )
