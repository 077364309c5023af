from typing import Any, List

from ..utility.concretemethod import concretemethod
from ..utility.instance import instance
from ..utility.logger import logger
from ._param import _param


class config_file(_param):
    """
    An INI file overlaying the default settings, see voigt.ini
    """

    @concretemethod
    def _parse(self, params: List[str]) -> None:
        with open(params[0]) as file:
            names = self._overlay(lambda parser: parser.read_file(file))

        instance.config.set("DEFAULT", "conf", params[0])
        logger().info("Read %d settings from %s", len(names), params[0])

    @concretemethod
    def _value(self) -> Any:
        return instance.config.get("DEFAULT", "conf") or None
