from math import sqrt

from ..utility.exceptions import parametererror


class pdeparams:
    """
    Coefficients of the operator ``-eps u_xxt + u_tt - c^2 u_xx``: the viscous
    coefficient ``epsilon`` (``1/(rho mu)`` for a Voigt rod) and the squared
    wave speed ``c2`` (``E/rho``).
    """

    def __init__(self, epsilon: float, c2: float) -> None:
        if not epsilon > 0 or not c2 > 0:
            raise parametererror(
                "epsilon and c must be positive constants, "
                f"got epsilon={epsilon}, c2={c2}"
            )

        self.epsilon = float(epsilon)
        self.c2 = float(c2)

    @property
    def c(self) -> float:
        return sqrt(self.c2)

    def plain(self) -> dict:
        return {"epsilon": self.epsilon, "c2": self.c2}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, pdeparams) and self.plain() == other.plain()

    def __repr__(self) -> str:
        return f"pdeparams(epsilon={self.epsilon:g}, c2={self.c2:g})"
