from typing import Callable, Optional, Union

import numpy

from ..lattice.state import state
from ..utility.exceptions import forcingerror, parametererror
from ..utility.logger import logger
from ..utility.verdict import verdict
from .params import pdeparams

Array = Union[float, numpy.ndarray]


class forcingspec:
    """
    Tagged description of the forcing ``f(x, t, u, u_x, u_xx, u_t)``.

    - ``zero``: f = 0.
    - ``example1``: f = b(t) sin(u), with the spike train b^2 of amplitude b0.
    - ``example2``: f = F(u) - a u_t, F(u) = -k sign(u) |u|^tau.
    - ``custom``: either a full callback ``custom_f`` or the split form
      ``custom_F(u) - custom_a(...) u_t`` with an optional potential.

    Callbacks take numpy arrays and must be free of side effects. ``paths``
    keeps the import paths the callbacks were loaded from, if any.
    """

    kinds = ("zero", "example1", "example2", "custom")

    def __init__(
        self,
        kind: str = "zero",
        b0: float = 0.0,
        k: float = 1.0,
        tau: float = 1.0,
        a_inf: Optional[float] = None,
        a_sup: Optional[float] = None,
        custom_f: Optional[Callable] = None,
        custom_a: Optional[Callable] = None,
        custom_F: Optional[Callable] = None,
        custom_potential: Optional[Callable] = None,
        g_hat: Optional[Callable] = None,
        paths: Optional[dict] = None,
    ) -> None:
        if kind not in self.kinds:
            raise parametererror(f"Unknown forcing kind {kind}")

        self.kind = kind
        self.b0 = float(b0)
        self.k = float(k)
        self.tau = float(tau)
        self.a_inf = float(a_inf if a_inf is not None else 0.0)
        self.a_sup = float(a_sup if a_sup is not None else 0.0)
        self.custom_f = custom_f
        self.custom_a = custom_a
        self.custom_F = custom_F
        self.custom_potential = custom_potential
        self.g_hat = g_hat
        self.paths = dict(paths or {})

        if kind == "example1" and not self.b0 >= 0:
            raise parametererror(f"example1 needs b0 >= 0, got {b0}")
        if kind == "example2" and not self.k > 0:
            raise parametererror(f"example2 needs k > 0, got {k}")
        if kind == "example2" and not 0 < self.tau <= 1:
            raise parametererror(f"example2 needs 0 < tau <= 1, got {tau}")
        if kind == "custom" and custom_f is None and custom_F is None:
            raise parametererror("custom forcing needs custom_f or custom_F")
        if not self.a_inf <= self.a_sup:
            raise parametererror(
                f"Damping bounds need a_inf <= a_sup, got {a_inf} > {a_sup}"
            )
        if not numpy.isfinite(self.a_sup):
            raise parametererror("Damping bound a_sup must be finite")

    @property
    def split(self) -> bool:
        """
        Whether the forcing has the form F(u) - a u_t.
        """
        return self.kind in ("zero", "example2") or (
            self.kind == "custom" and self.custom_F is not None
        )

    @property
    def has_potential(self) -> bool:
        return self.kind in ("zero", "example2") or (
            self.kind == "custom" and self.custom_potential is not None
        )

    def validate(self, params: pdeparams) -> None:
        """
        Checks the damping bound that depends on the PDE coefficients.

        :raises parametererror: If inf a <= -epsilon.
        """
        if self.split and not self.a_inf > -params.epsilon:
            raise parametererror(
                "Damping bound violated: inf a must exceed -epsilon, "
                f"got a_inf={self.a_inf}, epsilon={params.epsilon}"
            )

    def plain(self) -> dict:
        return {
            "kind": self.kind,
            "b0": self.b0,
            "k": self.k,
            "tau": self.tau,
            "a_inf": self.a_inf,
            "a_sup": self.a_sup,
            **self.paths,
        }

    def __repr__(self) -> str:
        return f"forcingspec(kind={self.kind})"


class forcing:
    """
    Evaluation of the forcing terms. All functions accept scalars or numpy
    arrays and broadcast.
    """

    @classmethod
    def eval_forcing(
        cls,
        spec: forcingspec,
        x: Array,
        t: float,
        u: Array,
        u_x: Array,
        u_xx: Array,
        u_t: Array,
    ) -> Array:
        """
        Evaluates f(x, t, u, u_x, u_xx, u_t).

        :raises forcingerror: On a non-finite value, naming x and t.
        """
        if spec.kind == "zero":
            value = numpy.zeros(numpy.broadcast(x, u).shape)
        elif spec.kind == "example1":
            b = numpy.sqrt(cls.example1_b_squared(t, spec.b0))
            value = b * numpy.sin(u)
        elif spec.kind == "custom" and spec.custom_f is not None:
            value = cls.__call(spec.custom_f, x, t, u, u_x, u_xx, u_t)
        else:
            a = cls.damping(spec, x, t, u, u_x, u_xx, u_t)
            value = cls.nonlinear(spec, u) - a * u_t

        value = numpy.asarray(value, dtype=float)
        bad = ~numpy.isfinite(value)

        if bad.any():
            where = numpy.broadcast_to(x, value.shape)[bad]
            raise forcingerror(
                float(numpy.ravel(where)[0]), t, float(value[bad].flat[0])
            )

        return value if value.ndim else float(value)

    @classmethod
    def at_state(cls, spec: forcingspec, current: state) -> numpy.ndarray:
        """
        Forcing values at the interior nodes of a state.
        """
        u = current.u
        return cls.eval_forcing(
            spec,
            current.grid.interior,
            current.t,
            u.values[1:-1],
            u.derivative(1).values[1:-1],
            u.derivative(2).values[1:-1],
            current.v.values[1:-1],
        )

    @classmethod
    def example1_b_squared(cls, t: Array, b0: float) -> Array:
        """
        Spike train of triangular pulses centred at n = 2, 3, ..., each of
        height ``b0 n``, half-width ``1/n`` and area ``b0``:

        - ``b0 n^2 (t - n + 1/n)`` on ``[n - 1/n, n]``,
        - ``b0 (n - n^2 (t - n))`` on ``]n, n + 1/n]``,
        - 0 otherwise.
        """
        t = numpy.asarray(t, dtype=float)
        n = numpy.maximum(numpy.rint(t), 2.0)
        rising = (t >= n - 1 / n) & (t <= n)
        falling = (t > n) & (t <= n + 1 / n)

        value = numpy.where(rising, n**2 * (t - n + 1 / n), 0.0)
        value = numpy.where(falling, n - n**2 * (t - n), value)
        value = b0 * numpy.maximum(value, 0.0)

        return value if value.ndim else float(value)

    @classmethod
    def example2_F(cls, u: Array, k: float, tau: float) -> Array:
        """
        ``F(u) = -k sign(u) |u|^tau`` with ``F(0) = 0``.
        """
        value = -k * numpy.sign(u) * numpy.abs(u) ** tau
        return value if numpy.ndim(value) else float(value)

    @classmethod
    def F_potential(cls, u: Array, k: float, tau: float) -> Array:
        """
        Antiderivative ``int_0^u F(z) dz = -k |u|^(tau+1) / (tau+1)``.
        """
        value = -k * numpy.abs(u) ** (tau + 1) / (tau + 1)
        return value if numpy.ndim(value) else float(value)

    @classmethod
    def nonlinear(cls, spec: forcingspec, u: Array) -> Array:
        """
        The F(u) part of a split forcing.
        """
        if spec.kind == "zero":
            return numpy.zeros_like(numpy.asarray(u, dtype=float))
        if spec.kind == "example2":
            return cls.example2_F(u, spec.k, spec.tau)
        if spec.kind == "custom" and spec.custom_F is not None:
            return cls.__call(spec.custom_F, u)

        raise parametererror(f"Forcing {spec.kind} has no F(u) part")

    @classmethod
    def potential(cls, spec: forcingspec, u: Array) -> Array:
        """
        The antiderivative of F, where the forcing declares one.
        """
        if spec.kind == "zero":
            return numpy.zeros_like(numpy.asarray(u, dtype=float))
        if spec.kind == "example2":
            return cls.F_potential(u, spec.k, spec.tau)
        if spec.custom_potential is not None:
            return cls.__call(spec.custom_potential, u)

        raise parametererror(f"Forcing {spec.kind} declares no potential")

    @classmethod
    def damping(
        cls,
        spec: forcingspec,
        x: Array,
        t: float,
        u: Array,
        u_x: Array,
        u_xx: Array,
        u_t: Array,
    ) -> Array:
        """
        The damping coefficient a; a = 0 unless ``custom_a`` is given.
        """
        if spec.custom_a is None:
            return numpy.zeros(numpy.broadcast(x, u).shape)

        return cls.__call(spec.custom_a, x, t, u, u_x, u_xx, u_t)

    @classmethod
    def g_hat(cls, spec: forcingspec) -> Optional[Callable]:
        """
        The growth function of the forcing bound ``A int f^2 <= g c1^2 d^2``,
        where one is known: b^2(t) for example1, zero for the zero forcing.
        """
        if spec.kind == "zero":
            return lambda t, eta: numpy.zeros_like(numpy.asarray(t, float))
        if spec.kind == "example1":
            return lambda t, eta: cls.example1_b_squared(t, spec.b0)

        return spec.g_hat

    @classmethod
    def check_null_compatible(
        cls,
        spec: forcingspec,
        rng: numpy.random.Generator,
        samples: int = 64,
        horizon: float = 100.0,
    ) -> None:
        """
        Rejects forcings that do not vanish on the null state,
        ``f(x, t, 0, 0, 0, 0) = 0``.

        :raises parametererror: If the null solution is not a solution.
        """
        x = rng.uniform(0.0, 1.0, samples)
        zero = numpy.zeros(samples)

        for t in rng.uniform(0.0, horizon, 8):
            value = cls.eval_forcing(spec, x, t, zero, zero, zero, zero)

            if numpy.any(value != 0):
                raise parametererror(
                    f"Forcing {spec.kind} does not vanish on the null state "
                    f"(t={t:g}, max |f|={numpy.abs(value).max():g})"
                )

    @classmethod
    def check_damping_bounds(
        cls,
        spec: forcingspec,
        rng: numpy.random.Generator,
        samples: int = 1000,
        box: float = 10.0,
        horizon: float = 100.0,
    ) -> verdict:
        """
        Spot-checks the declared bounds ``a_inf <= a <= a_sup`` on random
        arguments drawn from ``[-box, box]``. A pass supports, never proves,
        the declaration.
        """
        if spec.custom_a is None:
            return verdict(
                "damping_bounds",
                spec.a_inf <= 0 <= spec.a_sup,
                min(-spec.a_inf, spec.a_sup),
                sampled=False,
            )

        x = rng.uniform(0.0, 1.0, samples)
        t = rng.uniform(0.0, horizon)
        args = rng.uniform(-box, box, (4, samples))
        a = numpy.asarray(cls.damping(spec, x, t, *args), dtype=float)
        margin = min(a.min() - spec.a_inf, spec.a_sup - a.max())

        logger().debug("Sampled damping in [%g, %g]", a.min(), a.max())
        return verdict(
            "damping_bounds",
            margin >= 0,
            margin,
            sampled=True,
            observed_inf=float(a.min()),
            observed_sup=float(a.max()),
        )

    @classmethod
    def lipschitz_estimate(
        cls,
        spec: forcingspec,
        rng: numpy.random.Generator,
        samples: int = 1000,
        box: float = 10.0,
        horizon: float = 100.0,
    ) -> float:
        """
        Empirical global Lipschitz ratio ``|f1 - f2| / sum |arg1 - arg2|`` over
        random argument pairs sharing x and t. A lower estimate only.
        """
        x = rng.uniform(0.0, 1.0, samples)
        t = rng.uniform(0.0, horizon)
        first = rng.uniform(-box, box, (4, samples))
        second = rng.uniform(-box, box, (4, samples))

        jump = numpy.abs(
            cls.eval_forcing(spec, x, t, *first)
            - cls.eval_forcing(spec, x, t, *second)
        )
        return float((jump / numpy.abs(first - second).sum(axis=0)).max())

    @staticmethod
    def __call(callback: Callable, *args) -> numpy.ndarray:
        shape = numpy.broadcast(*[numpy.asarray(i) for i in args]).shape

        try:
            value = numpy.asarray(callback(*args), dtype=float)
            return numpy.broadcast_to(value, shape).copy()
        except (TypeError, ValueError):
            value = numpy.vectorize(callback, otypes=[float])(*args)
            return numpy.broadcast_to(value, shape).copy()
