from abc import ABC, abstractmethod
from logging import INFO, WARNING
from os import path
from typing import Any, List, Optional

import numpy

from ..dynamics.forcing import forcing
from ..dynamics.simulator import simulator
from ..dynamics.trajectory import trajectory
from ..lattice.state import state
from ..serial.report import write_report
from ..serial.runspec import runspec
from ..stability.certificates import certificatereport, certificates
from ..utility.dotdictionary import dotdictionary
from ..utility.exceptions import parametererror
from ..utility.instance import instance
from ..utility.logger import logger
from ..utility.verdict import verdict


class _command(ABC):
    """
    Abstract protected command class.

    It provides the base class to extend when implementing subcommands. The
    subcommand name is the module name with ``_`` written as ``-``.
    """

    @abstractmethod
    def run(self) -> int:
        """
        Runs the subcommand.

        :returns: The exit status, 0 on pass and 2 on a failed verdict.
        """
        raise NotImplementedError("Too abstract")

    def __init__(self, spec: runspec) -> None:
        self.config = dotdictionary(instance.settings()["output"])
        self.name = self.__class__.__name__.replace("_", "-")
        self.spec = spec

    @property
    def route(self) -> str:
        """
        ``potential`` for split forcings with a potential, ``forcing_bound``
        otherwise. The zero forcing takes the forcing-bound route.
        """
        spec = self.spec.forcing
        return (
            "potential"
            if spec.kind != "zero" and spec.split and spec.has_potential
            else "forcing_bound"
        )

    def output(self, name: str, suffix: str) -> str:
        file = self.spec.outputs[name] or f"{self.name}.{suffix}"
        return file if path.isabs(file) else path.join(self.config.dir, file)

    def samples(self) -> List[state]:
        analysis = self.spec.analysis
        return certificates.sample_states(
            self.spec.lattice,
            numpy.random.default_rng(analysis.seed),
            analysis.samples,
        )

    def certify(self, t0: Optional[float] = None) -> certificatereport:
        """
        Issues the certificate of the route of the forcing.
        """
        spec, analysis = self.spec, self.spec.analysis
        t0 = spec.time.t0 if t0 is None else t0
        samples = self.samples()

        if self.route == "potential":
            report = certificates.theorem2(
                spec.params, spec.forcing, analysis, samples, analysis.gamma
            )
        else:
            report = certificates.theorem1(
                spec.params,
                spec.forcing,
                analysis,
                samples,
                t0,
                analysis.gamma or 1.0,
            )

        try:
            forcing.check_null_compatible(
                spec.forcing, numpy.random.default_rng(analysis.seed)
            )
            report.add(verdict("null_solution", True, 0.0))
        except parametererror as exception:
            report.add(verdict("null_solution", False, -numpy.inf)
                       .warn(str(exception)))

        for check in report.hypothesis_verdicts:
            logger().log(
                INFO if check.passed else WARNING,
                "Verdict %s: %s (margin %g)",
                check.name,
                "pass" if check.passed else "fail",
                check.margin,
            )

        return report

    def simulate(self, gamma_w: Optional[float] = None) -> trajectory:
        spec = self.spec
        return simulator.simulate(
            spec.initial_state(),
            spec.time.t0,
            spec.time.t_end,
            spec.time.dt,
            spec.params,
            spec.forcing,
            spec.observer(gamma_w),
        )

    def write(self, body: Any, suffix: str = "json") -> str:
        file = self.output("report", suffix)
        write_report(
            dotdictionary(command=self.name, runspec=self.spec.plain(), **body),
            file,
        )
        return file

    @staticmethod
    def status(passed: bool) -> int:
        return 0 if passed else 2
