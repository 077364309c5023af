from typing import Any, List

from ..utility.concretemethod import concretemethod
from ..utility.logger import logger
from ._param import _param


class config_text(_param):
    """
    Inline INI settings, e.g. "[grid]\\nn_interior = 99"
    """

    @concretemethod
    def _parse(self, params: List[str]) -> None:
        text = " ".join(params).replace("\\n", "\n")
        names = self._overlay(lambda parser: parser.read_string(text))

        for name in names:
            logger().info("Overlaid setting %s", name)

    @concretemethod
    def _value(self) -> Any:
        return None
