from typing import List, Optional, Tuple

import numpy

from ..dynamics.forcing import forcing
from ..dynamics.trajectory import trajectory
from ..serial.timeseries import envelope_column, write_timeseries
from ..stability.certificates import certificatereport, certificates
from ..stability.comparison import comparison, envelope
from ..stability.functionals import functionals
from ..utility.exceptions import integratorerror
from ..utility.logger import logger
from ..utility.verdict import verdict
from ._command import _command


class decay_check(_command):
    """
    Simulate the run and check its decay against the certified envelope

    Writes the time series with the envelope and its margin over d^2 and a
    report holding the certificate together with the trajectory verdicts.
    """

    def run(self) -> int:
        report = self.certify()

        if not report.passed or report.envelope_params is None:
            logger().warning("No certificate, skipping the decay check")
            self.write(report)
            return 2

        if report.route == "potential":
            traj, envelopes, reference = self.__potential(report)
        else:
            traj, envelopes, reference = self.__exponential(report)

        write_timeseries(traj, envelopes, self.output("csv", "csv"),
                         reference)
        report.envelopes = envelopes
        report.trajectory_error = traj.error
        self.write(report)

        if not traj.complete:
            raise integratorerror(traj.error)

        return self.status(report.passed)

    def __exponential(
        self,
        report: certificatereport,
    ) -> Tuple[trajectory, List[envelope], Optional[numpy.ndarray]]:
        spec, analysis = self.spec, self.spec.analysis
        constants = report.constants1
        traj = self.simulate()
        t, d2, V = (traj.column(i) for i in ("t", "d2", "V"))

        bound = envelope(report.envelope_params, anchor=d2[0], t0=t[0])
        report.add(
            verdict(
                "attraction_region",
                d2[0] < report.attraction_radius**2,
                report.attraction_radius**2 - d2[0],
            ),
            self.__dominance("envelope_dominance", bound.evaluate(t), d2),
            certificates.check_hyp1_along_trajectory(
                traj,
                forcing.g_hat(spec.forcing),
                constants,
                analysis.tol_abs,
                analysis.tol_rel,
            ),
        )

        if constants.gamma == 1:
            report.add(functionals.vdot_check(traj, constants))

        g_hat = forcing.g_hat(spec.forcing)
        times, y = comparison.solve_comparison_ode(
            constants.p,
            lambda s, eta: g_hat(s, eta / constants.c1_sq),
            V[0],
            t[0],
            t[-1],
            spec.time.dt,
        )
        reference = numpy.interp(t, times, y)
        r = report.radius.r
        report.add(
            self.__dominance("comparison_dominance", reference, V),
            verdict("absorption", comparison.absorbs(y, r),
                    r - float(numpy.max(y)), r=r),
        )

        return traj, [bound], reference

    def __potential(
        self,
        report: certificatereport,
    ) -> Tuple[trajectory, List[envelope], None]:
        analysis = self.spec.analysis
        constants = report.constants2
        traj = self.simulate(constants.gamma)
        t, d2, W = (traj.column(i) for i in ("t", "d2", "W"))

        def anchor(value):
            return value if value > 0 else None

        crossing = comparison.find_crossover(
            t, W, constants.c2_sq, constants.D, constants.tau
        )
        report.crossover_time = crossing

        if constants.regime == "exponential":
            envelopes = [
                envelope(report.envelope_params, t0=t[0], anchor=anchor(W[0]))
            ]
        else:
            envelopes = [
                envelope(
                    kind="exponential",
                    rate=constants.k3 / (2 * constants.c2_sq),
                    prefactor=1 / constants.k1,
                    t0=t[0],
                    anchor=anchor(W[0]),
                    until=crossing,
                )
            ]

            if crossing is not None:
                envelopes += [
                    envelope(
                        report.envelope_params,
                        t0=crossing,
                        anchor=anchor(W[numpy.searchsorted(t, crossing)]),
                    )
                ]

        allowance = analysis.tol_abs + analysis.tol_rel * (1 + W)
        inside = W <= report.crossover_level
        trapped = inside.argmax() if inside.any() else len(W)

        monotone = numpy.min(allowance[:-1] - numpy.diff(W), initial=numpy.inf)
        lower = numpy.min(W / constants.k1 - d2 + allowance)
        trapping = numpy.min(
            report.crossover_level - W[trapped:] + allowance[trapped:],
            initial=numpy.inf,
        )
        ceiling = comparison.uniform_stability_bound(
            constants.c2_sq, constants.D, constants.tau, d2[0]
        )
        uniform = numpy.min(ceiling - constants.k1 * d2 + allowance)

        report.add(
            verdict("W_nonincreasing", monotone >= 0, monotone),
            verdict("W_lower_bound", lower >= 0, lower),
            verdict("crossover_trapping", trapping >= 0, trapping,
                    crossover_time=crossing),
            verdict("uniform_stability", uniform >= 0, uniform,
                    bound=ceiling),
            self.__dominance(
                "envelope_dominance", envelope_column(t, envelopes), d2
            ),
            functionals.wdot_check(traj, constants),
        )

        return traj, envelopes, None

    def __dominance(
        self,
        name: str,
        bound: numpy.ndarray,
        values: numpy.ndarray,
    ) -> verdict:
        """
        ``values <= bound`` within ``tol_abs + tol_rel (1 + values)`` wherever
        the bound is defined.
        """
        analysis = self.spec.analysis
        margins = (
            numpy.asarray(bound)
            - values
            + analysis.tol_abs
            + analysis.tol_rel * (1 + values)
        )
        margins = margins[~numpy.isnan(margins)]
        margin = margins.min() if len(margins) else numpy.inf

        return verdict(name, margin >= 0, margin, rows=len(margins))
