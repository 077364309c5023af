from math import inf
from typing import Callable, List, Optional, Sequence

import numpy

from ..dynamics.forcing import forcing, forcingspec
from ..dynamics.params import pdeparams
from ..lattice.gridfunction import gridfunction
from ..lattice.state import state
from ..utility.dotdictionary import dotdictionary
from ..utility.exceptions import (
    certificateerror,
    functionalerror,
    hypothesiserror,
    parametererror,
    stabilityerror,
)
from ..utility.logger import logger
from ..utility.verdict import verdict
from .comparison import comparison, envelope
from .functionals import functionals

notes = dotdictionary(
    c3_squared=(
        "The decay estimate for V is used with the squared constant c3^2 "
        "throughout, the form in which the estimate is derived; a statement "
        "of it with c3 unsquared is not relied upon."
    ),
    algebraic_closed_form=(
        "The algebraic envelope is the exact solution of "
        "y' = -k3 (y / 2D)^(2/(tau+1)), y(t0) = W(t0): the bracket holds "
        "W(t0)^(-(1-tau)/(1+tau)) where a display with W(t0) itself would "
        "only agree for W(t0) = 1."
    ),
    q_positive=(
        "The exponential envelope only needs q(r) < p; q(r) > 0 is not "
        "required."
    ),
    lipschitz=(
        "Global Lipschitz continuity of f is estimated empirically for the "
        "forcing-bound route and not checked for split forcings, which "
        "generally violate it."
    ),
    exponential_only=(
        "tau = 1 (or D = 0) leaves only the exponential regime: E = 0 and "
        "W decays at rate k3 / (c2^2 + D)."
    ),
)


class constants1(dotdictionary):
    """
    Constants of the forcing-bound route at a given ``gamma``: the sandwich
    ``c1^2 d^2 <= V <= c2^2 d^2``, the drain ``c3^2``, the forcing weight
    ``A`` and the decay ratio ``p = c3^2 / c2^2``.
    """


class constants2(dotdictionary):
    """
    Constants of the potential route: ``gamma``, ``k1`` (``W >= k1 d^2``),
    ``k3`` (``W' <= -k3 d^2``), the certified ``D`` and ``tau``, the algebraic
    rate ``E``, ``c2_sq`` at ``gamma`` and the ``regime``.
    """


class certificatereport(dotdictionary):
    """
    Everything a certification run established: the constants, the named
    verdicts, the attraction radius, the envelope parameters and the notes.
    """

    def __init__(self, route: str, **fields) -> None:
        super().__init__(
            route=route,
            constants1=None,
            constants2=None,
            hypothesis_verdicts=[],
            attraction_radius=None,
            envelope_params=None,
            notes=[],
            **fields,
        )

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.hypothesis_verdicts)

    def add(self, *verdicts: verdict) -> "certificatereport":
        self.hypothesis_verdicts.extend(verdicts)
        return self


class certificates:
    """
    Explicit stability constants and hypothesis checks on sample states and
    trajectories.
    """

    @classmethod
    def constants_thm1(cls, params: pdeparams, gamma: float) -> constants1:
        """
        Evaluates the constants of the forcing-bound route.

        :param params: The PDE coefficients.
        :param gamma: Weight of ``v^2`` in V, above 1/2.
        :returns: The ``constants1``.
        :raises parametererror: If gamma <= 1/2.
        """
        if not gamma > 0.5:
            raise parametererror(f"gamma must exceed 1/2, got {gamma}")

        eps, c2 = params.epsilon, params.c2
        c2_sq = max(c2 * (1 + gamma) / 2, eps * (1 + eps) / 2,
                    (1 + eps + gamma) / 2)
        c1_sq = min(eps**2 / 16, c2 * (1 + gamma) / 2, (gamma - 0.5) / 2)
        c3_sq = min(eps * c2 / 6, eps / 2)

        return constants1(
            c1_sq=c1_sq,
            c2_sq=c2_sq,
            c3_sq=c3_sq,
            A=eps / (2 * c2) + 2 / eps,
            p=c3_sq / c2_sq,
            gamma=float(gamma),
        )

    @classmethod
    def gamma_thm2(
        cls,
        params: pdeparams,
        a_inf: float,
        a_sup: float,
    ) -> float:
        """
        ``gamma = (1 + sup |a (a eps / c^2 - 1)|) / (eps + inf a) + 1/2``, the
        sup taken in closed form over ``[a_inf, a_sup]``.

        :raises hypothesiserror: If ``a_inf <= -eps``.
        """
        eps, c2 = params.epsilon, params.c2

        if not a_inf > -eps:
            raise hypothesiserror(
                "Damping bound violated: inf a must exceed -epsilon, "
                f"got a_inf={a_inf}, epsilon={eps}"
            )
        if not a_inf <= a_sup:
            raise parametererror(f"Need a_inf <= a_sup, got {a_inf} > {a_sup}")

        vertex = c2 / (2 * eps)
        points = [a_inf, a_sup] + ([vertex] if a_inf < vertex < a_sup else [])
        sup = max(abs(a * (a * eps / c2 - 1)) for a in points)

        return (1 + sup) / (eps + a_inf) + 0.5

    @classmethod
    def damping_margin(
        cls,
        params: pdeparams,
        gamma: float,
        a_inf: float,
        a_sup: float,
    ) -> verdict:
        """
        Minimum over ``a in [a_inf, a_sup]`` of
        ``eps gamma + a (1 + gamma - eps a / c^2) - 1``, the excess of the
        ``u_t^2`` coefficient in W' over 1. The quadratic is concave, so the
        minimum sits at an endpoint.
        """
        eps, c2 = params.epsilon, params.c2

        def excess(a):
            return eps * gamma + a * (1 + gamma - eps * a / c2) - 1

        margin = min(excess(a_inf), excess(a_sup))
        return verdict("damping_coefficient", margin >= 0, margin, gamma=gamma)

    @classmethod
    def constants_thm2(
        cls,
        params: pdeparams,
        gamma: float,
        D: float,
        tau: float,
    ) -> constants2:
        """
        Evaluates the constants of the potential route.

        ``D = 0`` (no potential) and ``tau = 1`` are accepted and flagged as
        the exponential regime with ``E = 0``.

        :raises parametererror: On gamma <= 1/2, D < 0 or tau outside [0, 1].
        """
        if not gamma > 0.5:
            raise parametererror(f"gamma must exceed 1/2, got {gamma}")
        if not D >= 0:
            raise parametererror(f"D must be nonnegative, got {D}")
        if not 0 <= tau <= 1:
            raise parametererror(f"tau must lie in [0, 1], got {tau}")

        eps, c2 = params.epsilon, params.c2
        k1 = 0.5 * min(gamma - 0.5, eps**2 / 4, c2 * (1 + gamma) / 2)
        k3 = min(c2 * eps / 4, 1.0)
        algebraic = tau < 1 and D > 0
        E = (
            k3 / (2 * D) ** (2 / (tau + 1)) * (1 - tau) / (1 + tau)
            if algebraic
            else 0.0
        )

        return constants2(
            gamma=float(gamma),
            k1=k1,
            k3=k3,
            D=float(D),
            tau=float(tau),
            E=E,
            c2_sq=cls.constants_thm1(params, gamma).c2_sq,
            regime="algebraic" if algebraic else "exponential",
        )

    @classmethod
    def certify_hyp1_D_tau(
        cls,
        spec: forcingspec,
        sample_states: Sequence[state],
        gamma: float,
    ) -> dotdictionary:
        """
        Certifies ``0 <= -int P(u) <= D / (gamma + 1) d^(tau+1)`` with P the
        potential of F.

        - ``example2``: the analytic pair ``tau``,
          ``D = (1 + gamma) k / ((tau + 1) 3^((tau+1)/2))``.
        - ``zero``: ``D = 0``.
        - ``custom``: the smallest D over the samples at the declared tau,
          flagged ``empirical``.

        :returns: ``D``, ``tau``, ``empirical`` and the sample ``verdict``.
        :raises functionalerror: If the forcing declares no potential.
        :raises hypothesiserror: If ``-int P(u) < 0`` on a sample.
        """
        if not spec.has_potential:
            raise functionalerror(f"Forcing {spec.kind} has no potential")

        tau = spec.tau
        energy = []
        scale = []

        for sample in sample_states:
            values = forcing.potential(spec, sample.u.values)
            energy += [-gridfunction(sample.grid, values).integrate()]
            scale += [functionals.distance_sq(sample) ** ((tau + 1) / 2)]

        energy, scale = numpy.array(energy), numpy.array(scale)

        if len(energy) and energy.min() < -1e-12 * (1 + scale.max()):
            raise hypothesiserror(
                "Potential integral must be nonpositive, found "
                f"-int P(u) = {energy.min():g}"
            )

        empirical = spec.kind == "custom"

        if spec.kind == "zero":
            D = 0.0
        elif spec.kind == "example2":
            D = (1 + gamma) * spec.k / ((tau + 1) * 3 ** ((tau + 1) / 2))
        else:
            positive = scale > 0
            D = (gamma + 1) * float(
                (energy[positive] / scale[positive]).max()
                if positive.any()
                else 0.0
            )

        margins = D / (gamma + 1) * scale - energy
        check = verdict(
            "hypothesis1_potential",
            True,
            float(margins.min()) if len(margins) else inf,
            D=D,
            tau=tau,
            samples=len(energy),
            empirical=empirical,
        )
        check.passed = check.margin >= -1e-12

        if empirical:
            check.warn("D fitted on samples, not a proof")

        return dotdictionary(D=D, tau=tau, empirical=empirical, verdict=check)

    @classmethod
    def check_hyp3(
        cls,
        spec: forcingspec,
        sample_states: Sequence[state],
        tol: float = 1e-8,
    ) -> verdict:
        """
        ``int F(u) u_xx dx >= -tol`` on every sample. For ``example2`` the
        identity value ``tau k int u_x^2 / |u|^(1-tau)`` is recorded next to
        the quadrature, taken over the nodes where u does not vanish.
        """
        integrals = []
        identities = []

        for sample in sample_states:
            u = sample.u
            F = forcing.nonlinear(spec, u.values)
            integrals += [(gridfunction(sample.grid, F) * u.derivative(2))
                          .integrate()]

            if spec.kind == "example2":
                u_x = u.derivative(1).values
                weight = numpy.abs(u.values) ** (1 - spec.tau)
                ratio = numpy.divide(
                    u_x**2,
                    weight,
                    out=numpy.zeros_like(u_x),
                    where=weight > 0,
                )
                identities += [spec.tau * spec.k
                               * gridfunction(sample.grid, ratio).integrate()]

        margin = min(integrals, default=inf) + tol
        return verdict(
            "hypothesis3",
            margin >= 0,
            margin,
            minimum=min(integrals, default=None),
            identity=identities or None,
        )

    @classmethod
    def check_sandwich_and_poincare(
        cls,
        states: Sequence[state],
        gamma: float,
        params: pdeparams,
        tol_abs: float = 1e-8,
        tol_rel: float = 1e-6,
        refine: bool = True,
    ) -> verdict:
        """
        Worst-case margins of ``c1^2 d^2 <= V``, ``V <= c2^2 d^2``,
        ``int u_x^2 >= int u^2`` and ``int u_xx^2 >= int u_x^2``, each widened
        by ``tol_abs + tol_rel (1 + d^2)``.

        A failing batch of sine-series states is re-evaluated on a grid four
        times finer; the verdict then carries a grid-resolution warning.
        """
        constants = cls.constants_thm1(params, gamma)
        families = dotdictionary(lower=inf, upper=inf, poincare1=inf,
                                 poincare2=inf)

        for sample in states:
            d2 = functionals.distance_sq(sample)
            V = functionals.lyapunov_V(sample, gamma, params)
            u = sample.u
            u_x, u_xx = u.derivative(1), u.derivative(2)
            allowance = tol_abs + tol_rel * (1 + d2)

            for name, value in [
                ("lower", V - constants.c1_sq * d2),
                ("upper", constants.c2_sq * d2 - V),
                ("poincare1", (u_x**2).integrate() - (u**2).integrate()),
                ("poincare2", (u_xx**2).integrate() - (u_x**2).integrate()),
            ]:
                families[name] = min(families[name], value + allowance)

        margin = min(families.values())
        check = verdict("sandwich_poincare", margin >= 0, margin, **families)

        if check.passed or not states:
            return check

        if refine and all(i.modes is not None for i in states):
            lattice = states[0].grid.refine(4)
            logger().warning("Retrying sandwich checks on %r", lattice)
            retry = cls.check_sandwich_and_poincare(
                [i.resample(lattice) for i in states],
                gamma,
                params,
                tol_abs,
                tol_rel,
                refine=False,
            )
            retry.details.refined = lattice.n_interior
            return retry.warn(
                f"grid-resolution: failed on {states[0].grid!r}, "
                f"{'passed' if retry.passed else 'failed'} on {lattice!r}"
            )

        return check.warn(f"grid-resolution: {states[0].grid!r} may be coarse")

    @classmethod
    def check_W_bounds(
        cls,
        states: Sequence[state],
        constants: constants2,
        params: pdeparams,
        spec: forcingspec,
        tol: float = 1e-8,
    ) -> verdict:
        """
        ``k1 d^2 <= W <= c2^2 d^2 + D d^(tau+1)`` on the samples.
        """
        lower = upper = inf

        for sample in states:
            d2 = functionals.distance_sq(sample)
            W = functionals.lyapunov_W(sample, constants.gamma, params, spec)
            lower = min(lower, W - constants.k1 * d2 + tol)
            upper = min(
                upper,
                constants.c2_sq * d2
                + constants.D * d2 ** ((constants.tau + 1) / 2)
                - W
                + tol,
            )

        margin = min(lower, upper)
        return verdict("W_bounds", margin >= 0, margin, lower=lower,
                       upper=upper)

    @classmethod
    def check_schwarz_chain(
        cls,
        states: Sequence[state],
        tau: float,
        tol: float = 1e-8,
    ) -> verdict:
        """
        ``int |u|^(tau+1) <= (int u^2)^((tau+1)/2) <= 3^(-(tau+1)/2)
        d^(tau+1)`` on the samples.
        """
        first = second = inf

        for sample in states:
            u = sample.u
            power = gridfunction(sample.grid, numpy.abs(u.values) ** (tau + 1))
            mass = (u**2).integrate() ** ((tau + 1) / 2)
            d = functionals.distance_sq(sample) ** 0.5

            first = min(first, mass - power.integrate() + tol)
            second = min(second, 3 ** (-(tau + 1) / 2) * d ** (tau + 1)
                         - mass + tol)

        margin = min(first, second)
        return verdict("schwarz_chain", margin >= 0, margin, first=first,
                       second=second)

    @classmethod
    def check_hyp1_along_trajectory(
        cls,
        traj,
        g_hat: Callable,
        constants: constants1,
        tol_abs: float = 1e-8,
        tol_rel: float = 1e-6,
    ) -> verdict:
        """
        ``A int f^2 <= g_hat(t, d^2) c1^2 d^2`` at every observation, within
        ``tol_abs + tol_rel d^2``.
        """
        t, d2, f2 = (traj.column(i) for i in ("t", "d2", "f2"))

        if not len(t):
            return verdict("hypothesis1_trajectory", True, inf, observations=0)

        growth = numpy.array([float(g_hat(i, j)) for i, j in zip(t, d2)])
        margins = (
            growth * constants.c1_sq * d2
            - constants.A * f2
            + tol_abs
            + tol_rel * d2
        )
        worst = int(numpy.argmin(margins))

        return verdict(
            "hypothesis1_trajectory",
            margins[worst] >= 0,
            margins[worst],
            observations=len(t),
            worst_t=float(t[worst]),
        )

    @classmethod
    def check_forcing_bound(
        cls,
        spec: forcingspec,
        g_hat: Callable,
        constants: constants1,
        states: Sequence[state],
        times: Sequence[float],
        tol_abs: float = 1e-8,
        tol_rel: float = 1e-6,
    ) -> verdict:
        """
        ``A int f^2 <= g_hat(t, d^2) c1^2 d^2`` on sample states at the given
        times, within ``tol_abs + tol_rel d^2``.
        """
        margin, worst_t = inf, None

        for sample in states:
            d2 = functionals.distance_sq(sample)
            u = sample.u
            x = sample.grid.interior
            args = (
                u.values[1:-1],
                u.derivative(1).values[1:-1],
                u.derivative(2).values[1:-1],
                sample.v.values[1:-1],
            )

            for t in times:
                f = forcing.eval_forcing(spec, x, t, *args)
                f2 = gridfunction(sample.grid, numpy.pad(f**2, 1)).integrate()
                value = (
                    float(g_hat(t, d2)) * constants.c1_sq * d2
                    - constants.A * f2
                    + tol_abs
                    + tol_rel * d2
                )

                if value < margin:
                    margin, worst_t = value, float(t)

        return verdict(
            "hypothesis1_forcing_bound",
            margin >= 0,
            margin,
            states=len(states),
            times=len(times),
            worst_t=worst_t,
        )

    @classmethod
    def forcing_bound_times(
        cls, spec: forcingspec, t0: float, span: float, count: int = 41
    ) -> numpy.ndarray:
        """
        Times probing the forcing bound: the first four spike apexes for
        example1, an even grid over ``[t0, t0 + span]`` otherwise.
        """
        if spec.kind == "example1":
            return max(2.0, numpy.ceil(t0)) + numpy.arange(4.0)

        return numpy.linspace(t0, t0 + span, count)

    @classmethod
    def sample_states(
        cls,
        lattice,
        rng: numpy.random.Generator,
        count: int,
        max_modes: int = 10,
        scale: float = 1.0,
    ) -> List[state]:
        return [
            state.random(lattice, rng, max_modes, scale) for _ in range(count)
        ]

    @classmethod
    def theorem1(
        cls,
        params: pdeparams,
        spec: forcingspec,
        analysis: dotdictionary,
        samples: Sequence[state],
        t0: float = 0.0,
        gamma: float = 1.0,
    ) -> certificatereport:
        """
        Certifies exponential-asymptotic stability through the forcing bound
        ``A int f^2 <= g_hat(t, d^2) c1^2 d^2``.

        ``analysis`` supplies ``search_max``, ``q_horizon``, ``q_factor``,
        ``scan_dt``, ``window``, ``cap``, ``radius_points``, ``tol_abs`` and
        ``tol_rel``.
        """
        report = certificatereport("forcing_bound", t0=t0)
        report.notes += [notes.c3_squared, notes.q_positive, notes.lipschitz]
        constants = report.constants1 = cls.constants_thm1(params, gamma)

        report.add(
            cls.check_sandwich_and_poincare(
                samples, gamma, params, analysis.tol_abs, analysis.tol_rel
            )
        )
        rng = numpy.random.default_rng(analysis.seed)
        report.lipschitz = forcing.lipschitz_estimate(spec, rng)
        g_hat = forcing.g_hat(spec)

        if g_hat is None:
            report.add(verdict("hypothesis1", False, -inf).warn(
                f"No growth function known for forcing {spec.kind}"
            ))
            return report

        # the lowest mode is extremal for the Poincare inequalities
        lowest = [
            state.sine_series([a], [], samples[0].grid)
            for a in (1e-2, 1e-1, 1.0)
        ] if samples else []

        report.add(
            cls.check_forcing_bound(
                spec,
                g_hat,
                constants,
                [*samples, *lowest],
                cls.forcing_bound_times(spec, t0, analysis.window),
                analysis.tol_abs,
                analysis.tol_rel,
            )
        )

        def q(eta):
            return comparison.estimate_q(
                g_hat,
                eta,
                constants.c1_sq,
                analysis.q_horizon,
                analysis.scan_dt,
                analysis.q_factor,
            ).value

        def g(t, eta):
            return g_hat(t, eta / constants.c1_sq)

        estimate = comparison.estimate_q(
            g_hat,
            0.0,
            constants.c1_sq,
            analysis.q_horizon,
            analysis.scan_dt,
            analysis.q_factor,
        )
        report.q = estimate

        if not estimate.converged:
            report.add(verdict("q_convergence", False,
                               analysis.q_factor - estimate.indicator))
            return report

        try:
            level = comparison.find_r_bar(q, constants.p, analysis.search_max)
        except stabilityerror as exception:
            report.add(
                verdict("hypothesis1", False, constants.p - estimate.value)
                .warn(str(exception))
            )
            return report

        report.r_bar = level
        report.add(verdict("hypothesis1", True, constants.p - estimate.value,
                           q0=estimate.value, p=constants.p))

        try:
            radius = comparison.attraction_radius(
                t0,
                constants,
                q,
                g,
                level.r_bar,
                analysis.scan_dt,
                analysis.window,
                analysis.cap,
                analysis.radius_points,
            )
        except certificateerror as exception:
            report.add(verdict("transient_budget", False, -inf)
                       .warn(str(exception)))
            return report

        q_r = q(radius.r)
        report.attraction_radius = radius.radius
        report.radius = radius
        report.envelope_params = envelope(
            kind="exponential",
            rate=(constants.p - q_r) / 2,
            prefactor=constants.c2_sq / constants.c1_sq
            * numpy.exp(radius.M),
            r=radius.r,
            q_r=q_r,
            M=radius.M,
            t0=t0,
            anchor=None,
            until=None,
        )

        logger().info(
            "Attraction radius %g at t0=%g, decay rate %g",
            radius.radius,
            t0,
            report.envelope_params.rate,
        )
        return report

    @classmethod
    def theorem2(
        cls,
        params: pdeparams,
        spec: forcingspec,
        analysis: dotdictionary,
        samples: Sequence[state],
        gamma: Optional[float] = None,
    ) -> certificatereport:
        """
        Certifies asymptotic stability of split forcings ``F(u) - a u_t``
        through the functional W.
        """
        report = certificatereport("potential")
        report.notes += [notes.algebraic_closed_form, notes.lipschitz]

        try:
            gamma = gamma or cls.gamma_thm2(params, spec.a_inf, spec.a_sup)
        except hypothesiserror as exception:
            report.add(verdict("damping_bound", False,
                               spec.a_inf + params.epsilon)
                       .warn(str(exception)))
            return report

        rng = numpy.random.default_rng(analysis.seed)
        report.add(
            verdict("damping_bound", True, spec.a_inf + params.epsilon),
            forcing.check_damping_bounds(spec, rng),
            cls.damping_margin(params, gamma, spec.a_inf, spec.a_sup),
            cls.check_hyp3(spec, samples, analysis.tol_abs),
        )

        try:
            potential = cls.certify_hyp1_D_tau(spec, samples, gamma)
        except hypothesiserror as exception:
            report.add(verdict("hypothesis1_potential", False, -inf)
                       .warn(str(exception)))
            return report

        report.add(potential.verdict)
        constants = report.constants2 = cls.constants_thm2(
            params, gamma, potential.D, potential.tau
        )

        if spec.kind == "example2":
            report.add(cls.check_schwarz_chain(samples, spec.tau,
                                               analysis.tol_abs))

        report.add(cls.check_W_bounds(samples, constants, params, spec,
                                      analysis.tol_abs))

        if constants.regime == "exponential":
            report.notes += [notes.exponential_only]

        report.crossover_level = comparison.crossover_level(
            constants.c2_sq, constants.D, constants.tau
        )
        report.envelope_params = envelope(
            kind="algebraic",
            E=constants.E,
            tau=constants.tau,
            k1=constants.k1,
            k3=constants.k3,
            c2_sq=constants.c2_sq,
            D=constants.D,
            exponent=(1 + constants.tau) / (1 - constants.tau)
            if constants.tau < 1
            else None,
            t0=None,
            anchor=None,
            until=None,
        )

        logger().info("Potential route with gamma=%g, regime %s", gamma,
                      constants.regime)
        return report
