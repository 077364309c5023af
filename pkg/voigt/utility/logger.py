from inspect import getmodule, stack
from logging import Logger, getLevelName, getLogger

from ..utility.dotdictionary import dotdictionary
from ..utility.instance import instance


def logger() -> Logger:
    """
    ``logger`` method, returning a ``Logger`` instance for the caller with the
    current logger level set. The preferred logger functionality throughout this
    application.

    :returns: A ``Logger`` instance for the caller.
    """
    config = dotdictionary(instance.settings()["logger"])
    module = getmodule(stack()[1].frame)
    source = getLogger(module.__name__ if module else "voigt")
    source.setLevel(getLevelName(config.level.upper()))

    return source


logformat = "%(asctime)s [%(levelname)s] <%(name)s> %(message)s"
dateformat = "%Y-%m-%d %H:%M:%S"
