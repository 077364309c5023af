from configparser import ConfigParser
from multiprocessing import Pool
from typing import Any, Dict, Tuple

from ..serial.runspec import runspec
from ..utility.dotdictionary import dotdictionary
from ..utility.exceptions import hypothesiserror
from ..utility.instance import instance
from ..utility.logger import logger
from ._command import _command
from .decay_check import decay_check


def initialize(settings: Dict[str, Dict[str, str]]) -> None:
    """
    Worker start-up: installs the settings of the parent process.
    """
    instance.reset()
    instance.config = ConfigParser()
    instance.config.read_dict(settings)


def point(job: Tuple[int, Dict[str, Any]]) -> Dict[str, Any]:
    """
    Runs ``decay-check`` on one sweep point and reports its exit status.
    """
    index, document = job

    try:
        status = decay_check(runspec(document)).run()
    except hypothesiserror as exception:
        logger().warning("Sweep point %i: %s", index, exception)
        status = 2
    except Exception as exception:
        logger().error("Sweep point %i failed: %s", index, exception)
        status = 1

    return {"index": index, "status": status, "outputs": document["outputs"]}


class sweep(_command):
    """
    Run decay-check on every point of the parameter sweep

    The ``sweep`` section maps dotted paths of the run configuration to lists
    of values; each point of their Cartesian product writes its own time
    series and report, at most ``parallel`` points at a time.
    """

    def run(self) -> int:
        jobs = []

        for index, variant in enumerate(self.spec.variants()):
            document = variant.plain()

            for name, suffix in (("csv", "csv"), ("report", "json")):
                document["outputs"][name] = (
                    document["outputs"][name] or f"{self.name}.{index}.{suffix}"
                )

            jobs += [(index, document)]

        settings = {
            section: dict(instance.settings().items(section, raw=True))
            for section in instance.settings().sections()
        }
        parallel = min(int(self.config.parallel), len(jobs))
        logger().info("Sweeping %i points, %i at a time", len(jobs), parallel)

        if parallel > 1:
            with Pool(parallel, initialize, (settings,)) as pool:
                results = pool.map(point, jobs)
        else:
            results = [point(job) for job in jobs]

        keys = sorted(self.spec.sweep)
        body = dotdictionary(
            keys=keys,
            points=[
                {
                    **result,
                    "values": {
                        key: variant for key, variant in zip(
                            keys, self.__values(jobs[result["index"]][1], keys)
                        )
                    },
                }
                for result in results
            ],
        )
        self.write(body)

        statuses = {result["status"] for result in results}
        return 1 if 1 in statuses else 2 if 2 in statuses else 0

    @staticmethod
    def __values(document: Dict[str, Any], keys: list) -> list:
        values = []

        for key in keys:
            target = document
            for part in key.split("."):
                target = target[part]
            values += [target]

        return values
