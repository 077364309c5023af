from typing import Any, List

from ..utility.concretemethod import concretemethod
from ..utility.instance import instance
from ..utility.logger import logger
from ._param import _param


class parallel(_param):
    """
    The number of sweep points voigt runs concurrently
    """

    @concretemethod
    def _parse(self, params: List[str]) -> None:
        if not params[0].isdigit() or int(params[0]) < 1:
            raise TypeError()

        instance.config.set("output", "parallel", params[0])
        logger().info("Set parallelism to %s", params[0])

    @concretemethod
    def _value(self) -> Any:
        return instance.config.get("output", "parallel")
