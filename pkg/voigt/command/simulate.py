from ..serial.timeseries import write_timeseries
from ..stability.certificates import certificates
from ..utility.dotdictionary import dotdictionary
from ..utility.exceptions import integratorerror
from ._command import _command


class simulate(_command):
    """
    Integrate the run and write its functional time series

    The CSV holds d^2, d_1^2, V and, for forcings with a potential, W at
    every observation; the report echoes the run and its final values.
    """

    def run(self) -> int:
        spec = self.spec
        gamma_w = None

        if spec.forcing.kind != "zero" and spec.forcing.has_potential:
            gamma_w = spec.analysis.gamma or certificates.gamma_thm2(
                spec.params, spec.forcing.a_inf, spec.forcing.a_sup
            )

        traj = self.simulate(gamma_w)
        rows = write_timeseries(traj, [], self.output("csv", "csv"))
        self.write(
            dotdictionary(
                steps=traj.steps,
                observations=rows,
                error=traj.error,
                final=traj.observations[-1],
            )
        )

        if not traj.complete:
            raise integratorerror(traj.error)

        return 0
