from csv import writer

from ..dynamics.forcing import forcing
from ..stability.certificates import certificates
from ..stability.comparison import comparison
from ..utility.dotdictionary import dotdictionary
from ..utility.exceptions import certificateerror, stabilityerror
from ..utility.logger import logger
from ._command import _command


class region(_command):
    """
    Tabulate the attraction radius over the initial times of the run

    Needs a forcing with a known growth function; the table holds one row
    ``t0,r,M,t_prime,radius`` per entry of ``analysis.t0_list``.
    """

    def run(self) -> int:
        spec, analysis = self.spec, self.spec.analysis
        constants = certificates.constants_thm1(
            spec.params, analysis.gamma or 1.0
        )
        g_hat = forcing.g_hat(spec.forcing)
        body = dotdictionary(constants1=constants, rows=[], failure=None)

        if g_hat is None:
            body.failure = f"No growth function for forcing {spec.forcing.kind}"
            self.write(body)
            return 2

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

        try:
            level = comparison.find_r_bar(q, constants.p, analysis.search_max)
        except stabilityerror as exception:
            body.failure = str(exception)
            self.write(body)
            return 2

        body.r_bar = level

        for t0 in analysis.t0_list:
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
                logger().warning("No radius at t0=%g: %s", t0, exception)
                radius = dotdictionary(r=None, M=None, t_prime=None,
                                       radius=None)

            body.rows += [dotdictionary(t0=t0, **radius)]

        with open(self.output("csv", "csv"), "w", newline="") as target:
            rows = writer(target)
            rows.writerow(["t0", "r", "M", "t_prime", "radius"])

            for row in body.rows:
                rows.writerow(
                    [
                        "" if row[i] is None else repr(float(row[i]))
                        for i in ("t0", "r", "M", "t_prime", "radius")
                    ]
                )

        self.write(body)
        return self.status(all(i.radius is not None for i in body.rows))
