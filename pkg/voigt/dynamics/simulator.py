from functools import lru_cache

import numpy
from scipy.linalg import LinAlgError, solve_banded
from scipy.integrate import trapezoid

from ..lattice.gridfunction import gridfunction
from ..lattice.state import state
from ..stability.functionals import functionals
from ..utility.dotdictionary import dotdictionary
from ..utility.exceptions import (
    forcingerror,
    integratorerror,
    parametererror,
)
from ..utility.logger import logger
from .forcing import forcing, forcingspec
from .params import pdeparams
from .trajectory import observer, trajectory


class simulator:
    """
    Time integration of ``u_t = v``, ``v_t = eps v_xx + c^2 u_xx + f`` with
    homogeneous Dirichlet conditions.

    The linear part is advanced by the trapezoidal rule. Eliminating
    ``u^{n+1} = u^n + dt/2 (v^n + v^{n+1})`` leaves the tridiagonal system

        (I - alpha D) v^{n+1} = v^n + alpha D v^n + dt c^2 D u^n + dt f

    with ``alpha = dt eps / 2 + dt^2 c^2 / 4`` and D the discrete Dirichlet
    Laplacian. The forcing enters explicitly through a Heun predictor and
    corrector.
    """

    @classmethod
    def step(
        cls,
        current: state,
        dt: float,
        params: pdeparams,
        spec: forcingspec,
    ) -> state:
        """
        Advances one IMEX step.

        :raises integratorerror: If the linear solve fails.
        :raises forcingerror: If the forcing turns non-finite.
        """
        if not dt > 0:
            raise parametererror(f"Step size must be positive, got {dt}")

        start = forcing.at_state(spec, current)
        predicted = cls.__advance(current, dt, params, start)
        finish = forcing.at_state(spec, predicted)

        return cls.__advance(current, dt, params, (start + finish) / 2)

    @classmethod
    def simulate(
        cls,
        initial: state,
        t0: float,
        t_end: float,
        dt: float,
        params: pdeparams,
        spec: forcingspec,
        watch: observer = None,
    ) -> trajectory:
        """
        Integrates from ``t0`` to ``t_end`` with fixed steps and records the
        observations of ``watch``.

        :raises parametererror: On invalid initial data or time stepping.
        """
        watch = watch or observer()
        violations = initial.boundary_violations()

        if violations:
            raise parametererror(
                "Initial data must vanish at both ends, violated: "
                + ", ".join(violations)
            )
        if not t_end > t0 or not dt > 0:
            raise parametererror(f"Invalid time span [{t0}, {t_end}] / {dt}")

        steps = int(round((t_end - t0) / dt))

        if abs(steps * dt - (t_end - t0)) > 1e-9 * max(1.0, abs(t_end - t0)):
            raise parametererror(f"Step {dt} does not divide [{t0}, {t_end}]")

        current = state(initial.u, initial.v, t0)
        states = [current]
        rows = [cls.__observe(current, params, spec, watch)]
        error = None

        logger().debug(
            "Simulating %i steps of %g on %r with %r",
            steps,
            dt,
            initial.grid,
            spec,
        )

        for i in range(1, steps + 1):
            try:
                current = cls.step(current, dt, params, spec)
                current = state(current.u, current.v, t0 + i * dt)
            except (integratorerror, forcingerror) as exception:
                error = f"step {i}: {exception}"
                logger().warning("Stopped simulation at %s", error)
                break

            if i % watch.stride == 0 or i == steps:
                states += [current]
                rows += [cls.__observe(current, params, spec, watch)]

        logger().debug("Recorded %i observations", len(rows))
        return trajectory(states, rows, dt, params, spec, watch, steps, error)

    @classmethod
    def __advance(
        cls,
        current: state,
        dt: float,
        params: pdeparams,
        force: numpy.ndarray,
    ) -> state:
        lattice = current.grid
        alpha = dt * params.epsilon / 2 + dt**2 * params.c2 / 4
        u = current.u.values
        v = current.v.values

        rhs = (
            v[1:-1]
            + alpha * cls.__laplacian(v, lattice.h)
            + dt * params.c2 * cls.__laplacian(u, lattice.h)
            + dt * force
        )

        try:
            interior = solve_banded(
                (1, 1), cls.__banded(lattice.n_interior, lattice.h, alpha), rhs
            )
        except (LinAlgError, ValueError) as exception:
            raise integratorerror(f"Linear solve failed: {exception}")

        if not numpy.all(numpy.isfinite(interior)):
            raise integratorerror(f"Non-finite velocity at t={current.t}")

        v_new = numpy.zeros_like(v)
        v_new[1:-1] = interior
        u_new = u + dt / 2 * (v + v_new)
        u_new[0] = u_new[-1] = 0.0

        return state(
            gridfunction(lattice, u_new),
            gridfunction(lattice, v_new),
            current.t + dt,
        )

    @staticmethod
    def __laplacian(values: numpy.ndarray, h: float) -> numpy.ndarray:
        return (values[2:] - 2 * values[1:-1] + values[:-2]) / h**2

    @staticmethod
    @lru_cache(maxsize=32)
    def __banded(n: int, h: float, alpha: float) -> numpy.ndarray:
        ab = numpy.empty((3, n))
        ab[0] = -alpha / h**2
        ab[1] = 1 + 2 * alpha / h**2
        ab[2] = -alpha / h**2
        ab[0, 0] = ab[2, -1] = 0.0
        ab.flags.writeable = False
        return ab

    @staticmethod
    def __observe(
        current: state,
        params: pdeparams,
        spec: forcingspec,
        watch: observer,
    ) -> dotdictionary:
        values = functionals.evaluate(
            current,
            params,
            watch.gamma,
            spec,
            watch.gamma_w,
            watch.distance1,
            watch.lyapunov1,
        )
        force = numpy.zeros_like(current.u.values)
        force[1:-1] = forcing.at_state(spec, current)
        values.f2 = float(trapezoid(force**2, dx=current.grid.h))
        values.t = current.t
        return values
