from os import makedirs
from typing import Any, List

from ..utility.concretemethod import concretemethod
from ..utility.instance import instance
from ..utility.logger import logger
from ._param import _param


class out(_param):
    """
    The directory voigt writes its time series and reports to
    """

    @concretemethod
    def _parse(self, params: List[str]) -> None:
        makedirs(params[0], exist_ok=True)
        instance.config.set("output", "dir", params[0])
        logger().info("Set output directory to %s", params[0])

    @concretemethod
    def _value(self) -> Any:
        return instance.config.get("output", "dir")
