from os import path
from typing import Any, List

from ..utility.concretemethod import concretemethod
from ..utility.instance import instance
from ..utility.logger import logger
from ._param import _param


class config(_param):
    """
    The JSON run configuration to use (same as the positional path)
    """

    @concretemethod
    def _parse(self, params: List[str]) -> None:
        if not path.isfile(params[0]):
            raise TypeError()

        instance.runconfig = params[0]
        logger().info("Set run configuration to %s", params[0])

    @concretemethod
    def _value(self) -> Any:
        return instance.runconfig
