from ._command import _command


class certify(_command):
    """
    Issue the stability certificate of the run

    Split forcings with a potential take the route through W, all others the
    route through V and the forcing bound.
    """

    def run(self) -> int:
        report = self.certify()
        self.write(report)

        return self.status(report.passed)
