from logging import FileHandler, Formatter, getLogger
from typing import Any, List

from ..utility.concretemethod import concretemethod
from ..utility.instance import instance
from ..utility.logger import dateformat, logformat, logger
from ._param import _param


class log_file(_param):
    """
    Appends the log of every run to this file
    """

    @concretemethod
    def _parse(self, params: List[str]) -> None:
        handler = FileHandler(params[0], "a")
        handler.setFormatter(Formatter(logformat, dateformat))

        # a later flag replaces one taken from the environment
        if instance.logfile is not None:
            getLogger().removeHandler(instance.logfile)
            instance.logfile.close()

        getLogger().addHandler(handler)
        instance.logfile = handler
        instance.config.set("logger", "file", params[0])
        logger().info("Appending log to %s", params[0])

    @concretemethod
    def _value(self) -> Any:
        return instance.config.get("logger", "file") or None
