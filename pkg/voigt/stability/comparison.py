from math import exp, inf, isfinite, log
from typing import Callable, Optional, Tuple

import numpy
from scipy.integrate import cumulative_trapezoid, trapezoid
from scipy.optimize import bisect, minimize_scalar

from ..utility.dotdictionary import dotdictionary
from ..utility.exceptions import (
    certificateerror,
    integratorerror,
    parametererror,
    stabilityerror,
)
from ..utility.logger import logger


class envelope(dotdictionary):
    """
    Parameters of a decay envelope for d^2.

    ``exponential``: ``anchor * prefactor * exp(-rate (t - t0))`` where the
    anchor is d^2(t0); ``rate = (p - q(r)) / 2`` and
    ``prefactor = (c2^2 / c1^2) exp(M(t0, r))`` for the forcing-bound route.

    ``algebraic``: ``(1/k1) [W(t0)^(-b) + E (t - t0)]^(-1/b)`` with
    ``b = (1 - tau) / (1 + tau)`` where the anchor is W(t0).

    ``until`` optionally closes the validity window, so that envelopes can be
    chained over consecutive time spans.
    """

    def evaluate(self, t):
        if self.kind == "exponential":
            return comparison.exponential_envelope(self.anchor, self, t)

        return comparison.algebraic_envelope_thm2(self.anchor, self, t)

    def covers(self, t: float) -> bool:
        return t >= self.t0 and (self.until is None or t < self.until)


class comparison:
    """
    Scalar comparison machinery: the comparison ODE, the averaged growth q,
    the level r_bar, the transient budget M(t0, r), the attraction radius and
    both decay envelopes.
    """

    @classmethod
    def solve_comparison_ode(
        cls,
        p: float,
        g: Callable,
        y0: float,
        t0: float,
        t_end: float,
        dt: float,
    ) -> Tuple[numpy.ndarray, numpy.ndarray]:
        """
        Classical fourth-order Runge-Kutta integration of
        ``y' = (-p + g(t, y)) y``, ``y(t0) = y0``. The solution is clamped at
        zero from below.

        :returns: Times and values, both of length ``steps + 1``.
        :raises integratorerror: If g turns non-finite, with the time stamp.
        """
        if y0 < 0:
            raise parametererror(f"Initial value must be nonnegative, got {y0}")

        steps = int(round((t_end - t0) / dt))
        times = t0 + dt * numpy.arange(steps + 1)
        values = numpy.empty(steps + 1)
        values[0] = y = float(y0)

        def rhs(t, y):
            rate = float(g(t, y))
            if not isfinite(rate):
                raise integratorerror(f"Non-finite comparison rate at t={t}")
            return (rate - p) * y

        for i in range(steps):
            t = times[i]
            k1 = rhs(t, y)
            k2 = rhs(t + dt / 2, y + dt / 2 * k1)
            k3 = rhs(t + dt / 2, y + dt / 2 * k2)
            k4 = rhs(t + dt, y + dt * k3)
            y = max(y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4), 0.0)
            values[i + 1] = y

        return times, values

    @classmethod
    def estimate_q(
        cls,
        g_hat: Callable,
        eta: float,
        c1_sq: float,
        horizon: float,
        step: float = 1e-3,
        factor: float = 0.05,
    ) -> dotdictionary:
        """
        Surrogate of the long-time average ``q(eta)`` of ``g_hat(t, eta/c1^2)``:
        the averages over ``[0, T]`` and ``[0, T/2]`` with ``T = horizon``.

        :returns: ``value``, ``half``, the relative difference ``indicator``
            and ``converged`` (indicator within ``factor``).
        """
        if not horizon > 0:
            raise parametererror(f"Horizon must be positive, got {horizon}")

        n = 2 * int(numpy.ceil(horizon / (2 * step)))
        times = numpy.linspace(0.0, horizon, n + 1)
        values = cls.vectorized(g_hat, times, eta / c1_sq)

        value = trapezoid(values, times) / horizon
        half = trapezoid(values[: n // 2 + 1], times[: n // 2 + 1]) / (
            horizon / 2
        )
        scale = max(abs(value), abs(half))
        indicator = abs(value - half) / scale if scale > 0 else 0.0

        if indicator > factor:
            logger().warning(
                "Average of g diverges at eta=%g: %g vs %g", eta, value, half
            )

        return dotdictionary(
            value=float(value),
            half=float(half),
            indicator=float(indicator),
            converged=bool(indicator <= factor),
        )

    @classmethod
    def find_r_bar(
        cls,
        q: Callable,
        p: float,
        search_max: float,
        xtol: float = 1e-10,
    ) -> dotdictionary:
        """
        Boundary of ``{rho >= 0 | q(rho) < p}`` by bisection on
        ``[0, search_max]``, for nondecreasing q.

        :returns: ``r_bar`` and ``at_boundary`` (the set reaches search_max).
        :raises stabilityerror: If ``q(0) >= p``.
        """
        q0 = q(0.0)

        if not q0 < p:
            raise stabilityerror(
                f"No stability certificate: q(0)={q0} >= p={p}"
            )
        if q(search_max) < p:
            logger().debug("Level set reaches the search bound %g", search_max)
            return dotdictionary(r_bar=float(search_max), at_boundary=True)

        r_bar = bisect(lambda eta: q(eta) - p, 0.0, search_max, xtol=xtol)
        return dotdictionary(r_bar=float(r_bar), at_boundary=False)

    @classmethod
    def find_t_prime(
        cls,
        t0: float,
        r: float,
        g: Callable,
        p: float,
        q_r: float,
        scan_dt: float = 1e-3,
        window: float = 10.0,
        cap: float = 1000.0,
    ) -> float:
        """
        Time of the last breach of ``(p + q_r) / 2`` by the running average of
        ``g(., r)`` from ``t0`` within ``[t0, t0 + cap]``, or ``t0`` without a
        breach. The average must then stay below the level for at least
        ``window`` time units before the end of the scan.

        :raises certificateerror: If the last breach leaves less than
            ``window`` of the scan.
        """
        times, cumulative = cls.__scan(t0, r, g, scan_dt, cap)
        average = cumulative[1:] / (times[1:] - t0)
        breaches = times[1:][average >= (p + q_r) / 2]
        t_prime = float(breaches[-1]) if len(breaches) else t0

        if times[-1] - t_prime < window:
            raise certificateerror(
                f"Running average of g not confirmed below {(p + q_r) / 2:g} "
                f"for {window:g} time units within t0 + {cap:g}"
            )

        return t_prime

    @classmethod
    def compute_M(
        cls,
        t0: float,
        r: float,
        g: Callable,
        p: float,
        q_r: float,
        scan_dt: float = 1e-3,
        t_prime: Optional[float] = None,
        window: float = 10.0,
        cap: float = 1000.0,
    ) -> float:
        """
        Transient budget
        ``max{0, max_[t0, t'] (-(p - q_r)/2 (t - t0) + int_t0^t g(s, r) ds)}``
        by a dense scan with step ``scan_dt``. ``t'`` is searched with
        ``find_t_prime`` unless given.
        """
        if not q_r < p:
            raise parametererror(f"Need q(r) < p, got {q_r} >= {p}")
        if t_prime is None:
            t_prime = cls.find_t_prime(
                t0, r, g, p, q_r, scan_dt, window, cap
            )
        if t_prime <= t0:
            return 0.0

        times, cumulative = cls.__scan(t0, r, g, scan_dt, t_prime - t0)
        bracket = -(p - q_r) / 2 * (times - t0) + cumulative

        return max(0.0, float(bracket.max()))

    @classmethod
    def attraction_radius(
        cls,
        t0: float,
        constants,
        q: Callable,
        g: Callable,
        r_bar: float,
        scan_dt: float = 1e-3,
        window: float = 10.0,
        cap: float = 1000.0,
        points: int = 25,
    ) -> dotdictionary:
        """
        Maximises ``phi(r) = r / c2^2 exp(-M(t0, r))`` over ``]0, r_bar[`` on
        a log-spaced grid, refined by a bounded scalar search around the best
        grid point; ties go to the smaller r.

        :returns: ``radius = sqrt(sup phi)`` in d units, the maximising ``r``,
            its ``M`` and ``t_prime`` and the objective ``value``.
        """
        if not r_bar > 0:
            raise parametererror(f"Need r_bar > 0, got {r_bar}")

        def budget(r):
            q_r = q(r)
            t_prime = cls.find_t_prime(
                t0, r, g, constants.p, q_r, scan_dt, window, cap
            )
            M = cls.compute_M(
                t0, r, g, constants.p, q_r, scan_dt, t_prime, window, cap
            )
            return M, t_prime

        def phi(r):
            return r / constants.c2_sq * exp(-budget(r)[0])

        grid = numpy.geomspace(r_bar * 1e-6, r_bar * (1 - 1e-9), points)
        values = numpy.array([phi(r) for r in grid])
        best = int(numpy.argmax(values))
        r_best, value = float(grid[best]), float(values[best])

        bounds = (grid[max(best - 1, 0)], grid[min(best + 1, points - 1)])
        refined = minimize_scalar(lambda r: -phi(r), bounds=bounds,
                                  method="bounded")

        if refined.success and -refined.fun > value:
            r_best, value = float(refined.x), float(-refined.fun)

        M, t_prime = budget(r_best)
        logger().debug("Attraction radius at t0=%g from r=%g", t0, r_best)

        return dotdictionary(
            radius=value**0.5,
            r=r_best,
            M=M,
            t_prime=t_prime,
            value=value,
        )

    @classmethod
    def exponential_envelope(cls, d2_t0: float, env: envelope, t):
        """
        ``d2_t0 * prefactor * exp(-rate (t - t0))``.

        :raises parametererror: For times before ``env.t0``.
        """
        t = numpy.asarray(t, dtype=float)

        if numpy.any(t < env.t0):
            raise parametererror(f"Envelope starts at t0={env.t0}")

        value = d2_t0 * env.prefactor * numpy.exp(-env.rate * (t - env.t0))
        return value if value.ndim else float(value)

    @classmethod
    def algebraic_envelope_thm2(cls, W_t0: float, env: envelope, t):
        """
        Exact solution of ``y' = -k3 (y / 2D)^(2/(tau+1))``, ``y(t0) = W_t0``,
        divided by k1:

            (1/k1) [W_t0^(-b) + E (t - t0)]^(-1/b),  b = (1-tau)/(1+tau).

        For ``tau = 1`` (or ``D = 0``) the bound ``W <= (c2^2 + D) d^2`` only
        gives exponential decay at rate ``k3 / (c2^2 + D)``, which is returned
        instead.
        """
        t = numpy.asarray(t, dtype=float)

        if numpy.any(t < env.t0):
            raise parametererror(f"Envelope starts at t0={env.t0}")
        if not W_t0 > 0:
            raise parametererror(f"Need W(t0) > 0, got {W_t0}")

        if env.tau >= 1 or not env.E > 0:
            logger().debug("Exponential regime, tau=%g, D=%g", env.tau, env.D)
            rate = env.k3 / (env.c2_sq + env.D)
            value = W_t0 / env.k1 * numpy.exp(-rate * (t - env.t0))
        else:
            b = (1 - env.tau) / (1 + env.tau)
            value = (W_t0 ** (-b) + env.E * (t - env.t0)) ** (-1 / b) / env.k1

        return value if value.ndim else float(value)

    @classmethod
    def crossover_level(cls, c2_sq: float, D: float, tau: float) -> float:
        """
        The level W* below which ``W / (2 c2^2) >= (W / 2D)^(2/(tau+1))``.
        """
        if D == 0:
            return 0.0
        if tau >= 1:
            return inf if D >= c2_sq else 0.0

        s = 2 / (tau + 1)
        return exp(
            (s * log(2 * D) - log(2 * c2_sq)) / (s - 1)
        )

    @classmethod
    def find_crossover(
        cls,
        times: numpy.ndarray,
        W: numpy.ndarray,
        c2_sq: float,
        D: float,
        tau: float,
    ) -> Optional[float]:
        """
        First observed time at which W has entered the algebraic region.
        """
        inside = numpy.asarray(W) <= cls.crossover_level(c2_sq, D, tau)
        return float(numpy.asarray(times)[numpy.argmax(inside)]) if (
            inside.any()
        ) else None

    @classmethod
    def uniform_stability_bound(
        cls,
        c2_sq: float,
        D: float,
        tau: float,
        d2_t0: float,
    ) -> float:
        """
        ``2 max{c2^2 d^2(t0), D d^(tau+1)(t0)}``, a bound on W(t0) and hence
        on ``k1 d^2(t)`` for all later t.
        """
        return 2 * max(c2_sq * d2_t0, D * d2_t0 ** ((tau + 1) / 2))

    @classmethod
    def absorbs(cls, values, r: float) -> bool:
        """
        Whether a comparison solution stays strictly below the level r.
        """
        return bool(numpy.all(numpy.asarray(values) < r))

    @staticmethod
    def vectorized(g: Callable, times: numpy.ndarray, eta: float):
        try:
            values = numpy.asarray(g(times, eta), dtype=float)
            return numpy.broadcast_to(values, times.shape)
        except (TypeError, ValueError):
            return numpy.vectorize(g, otypes=[float])(times, eta)

    @classmethod
    def __scan(
        cls,
        t0: float,
        r: float,
        g: Callable,
        scan_dt: float,
        span: float,
    ) -> Tuple[numpy.ndarray, numpy.ndarray]:
        n = max(int(numpy.ceil(span / scan_dt)), 1)
        times = numpy.linspace(t0, t0 + span, n + 1)
        values = cls.vectorized(g, times, r)
        return times, cumulative_trapezoid(values, times, initial=0.0)
