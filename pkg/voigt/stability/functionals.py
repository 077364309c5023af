from typing import Optional

import numpy
from scipy.integrate import trapezoid

from ..dynamics.forcing import forcing, forcingspec
from ..dynamics.params import pdeparams
from ..lattice.state import state
from ..utility.dotdictionary import dotdictionary
from ..utility.exceptions import functionalerror, parametererror
from ..utility.verdict import verdict


class functionalvalues(dotdictionary):
    """
    Metrics and Liapunov functionals of one state: ``d2``, ``d1_2``, ``V``,
    ``V1``, ``W`` (the optional ones ``None`` when not requested) and the
    ``gamma`` used for V and W.
    """


class functionals:
    """
    Discrete evaluation of the distances d^2, d_1^2 and the functionals V,
    V_1 and W on states, by trapezoid quadrature of finite differences.
    """

    @classmethod
    def distance_sq(cls, current: state) -> float:
        """
        ``int (u^2 + u_x^2 + u_xx^2 + v^2) dx``.
        """
        u, u_x, u_xx, v = cls.__parts(current)
        return cls.__integral(current, u**2 + u_x**2 + u_xx**2 + v**2)

    @classmethod
    def distance1_sq(cls, current: state) -> float:
        """
        ``d^2 + int v_x^2 dx``, the metric for solutions with continuous
        ``u_xtt``.
        """
        v_x = current.v.derivative(1).values
        return cls.distance_sq(current) + cls.__integral(current, v_x**2)

    @classmethod
    def lyapunov_V(
        cls,
        current: state,
        gamma: float,
        params: pdeparams,
    ) -> float:
        """
        ``1/2 int {(eps u_xx - v)^2 + gamma v^2 + c^2 (1 + gamma) u_x^2} dx``.

        :raises parametererror: If gamma <= 1/2.
        """
        cls.__check_gamma(gamma)
        u, u_x, u_xx, v = cls.__parts(current)
        eps, c2 = params.epsilon, params.c2

        return 0.5 * cls.__integral(
            current,
            (eps * u_xx - v) ** 2 + gamma * v**2 + c2 * (1 + gamma) * u_x**2,
        )

    @classmethod
    def lyapunov_V1(
        cls,
        current: state,
        params: pdeparams,
        gamma: float = 1.0,
    ) -> float:
        """
        ``V + eps/2 int {eps v_x^2 - 2 c^2 v u_xx} dx``.
        """
        _, _, u_xx, v = cls.__parts(current)
        v_x = current.v.derivative(1).values
        eps, c2 = params.epsilon, params.c2

        return cls.lyapunov_V(current, gamma, params) + 0.5 * eps * (
            cls.__integral(current, eps * v_x**2 - 2 * c2 * v * u_xx)
        )

    @classmethod
    def lyapunov_W(
        cls,
        current: state,
        gamma: float,
        params: pdeparams,
        spec: forcingspec,
    ) -> float:
        """
        ``V - (1 + gamma) int (int_0^u F(z) dz) dx``, using the closed-form
        potential of the forcing.

        :raises functionalerror: If the forcing declares no potential.
        """
        if not spec.has_potential:
            raise functionalerror(
                f"Forcing {spec.kind} has no potential, W is unavailable"
            )

        potential = forcing.potential(spec, current.u.values)
        return cls.lyapunov_V(current, gamma, params) - (
            1 + gamma
        ) * cls.__integral(current, potential)

    @classmethod
    def evaluate(
        cls,
        current: state,
        params: pdeparams,
        gamma: float = 1.0,
        spec: Optional[forcingspec] = None,
        gamma_w: Optional[float] = None,
        distance1: bool = False,
        lyapunov1: bool = False,
    ) -> functionalvalues:
        """
        Evaluates d^2 and V always, the others on request. W is evaluated
        with ``gamma_w`` whenever it is given and the forcing has a potential.
        """
        values = functionalvalues(
            d2=cls.distance_sq(current),
            d1_2=None,
            V=cls.lyapunov_V(current, gamma, params),
            V1=None,
            W=None,
            gamma=gamma,
        )

        if distance1:
            values.d1_2 = cls.distance1_sq(current)
        if lyapunov1:
            values.V1 = cls.lyapunov_V1(current, params, gamma)
        if gamma_w is not None and spec is not None and spec.has_potential:
            values.W = cls.lyapunov_W(current, gamma_w, params, spec)

        return values

    @classmethod
    def vdot_check(cls, traj, constants, tol_rel: float = 1e-3) -> verdict:
        """
        Finite-difference check of ``dV/dt <= -c3^2 d^2 + A int f^2`` between
        consecutive observations (gamma = 1), against the larger right-hand
        side of the two endpoints. Tolerance ``tol_rel (1 + V)``.
        """
        t, V, d2, f2 = (traj.column(i) for i in ("t", "V", "d2", "f2"))

        if len(t) < 2:
            return verdict("vdot_bound", True, numpy.inf, pairs=0)

        slope = numpy.diff(V) / numpy.diff(t)
        bound = -constants.c3_sq * d2 + constants.A * f2
        bound = numpy.maximum(bound[:-1], bound[1:])
        margins = bound - slope + tol_rel * (1 + V[:-1])
        worst = int(numpy.argmin(margins))

        return verdict(
            "vdot_bound",
            margins[worst] >= 0,
            margins[worst],
            pairs=len(slope),
            worst_t=float(t[worst]),
        )

    @classmethod
    def wdot_check(cls, traj, constants, tol_rel: float = 1e-3) -> verdict:
        """
        Finite-difference check of ``dW/dt <= -k3 d^2`` between consecutive
        observations, against the smaller d^2 of the two endpoints.
        """
        t, W, d2 = (traj.column(i) for i in ("t", "W", "d2"))

        if len(t) < 2:
            return verdict("wdot_bound", True, numpy.inf, pairs=0)

        slope = numpy.diff(W) / numpy.diff(t)
        bound = -constants.k3 * numpy.minimum(d2[:-1], d2[1:])
        margins = bound - slope + tol_rel * (1 + W[:-1])
        worst = int(numpy.argmin(margins))

        return verdict(
            "wdot_bound",
            margins[worst] >= 0,
            margins[worst],
            pairs=len(slope),
            worst_t=float(t[worst]),
        )

    @staticmethod
    def __check_gamma(gamma: float) -> None:
        if not gamma > 0.5:
            raise parametererror(f"gamma must exceed 1/2, got {gamma}")

    @staticmethod
    def __parts(current: state) -> tuple:
        u = current.u
        return (
            u.values,
            u.derivative(1).values,
            u.derivative(2).values,
            current.v.values,
        )

    @staticmethod
    def __integral(current: state, values: numpy.ndarray) -> float:
        return float(trapezoid(values, dx=current.grid.h))
