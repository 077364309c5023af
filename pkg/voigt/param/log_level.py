from logging import getLevelName
from typing import Any, List

from ..utility.concretemethod import concretemethod
from ..utility.instance import instance
from ..utility.logger import logger
from ._param import _param


class log_level(_param):
    """
    Specifies the voigt logger level
    """

    @concretemethod
    def _parse(self, params: List[str]) -> None:
        if not isinstance(getLevelName(params[0].upper()), int):
            raise TypeError()

        instance.config.set("logger", "level", params[0].upper())
        logger().info("Set log level to %s", params[0].upper())

    @concretemethod
    def _value(self) -> Any:
        return instance.config.get("logger", "level")
