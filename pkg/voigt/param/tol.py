from typing import Any, List

from ..utility.concretemethod import concretemethod
from ..utility.instance import instance
from ..utility.logger import logger
from ._param import _param


class tol(_param):
    """
    The absolute tolerance of verdicts and envelope margins
    """

    @concretemethod
    def _parse(self, params: List[str]) -> None:
        if not float(params[0]) >= 0:
            raise TypeError()

        instance.config.set("verdict", "tol_abs", repr(float(params[0])))
        logger().info("Set verdict tolerance to %s", params[0])

    @concretemethod
    def _value(self) -> Any:
        return instance.config.get("verdict", "tol_abs")
