from abc import ABC, abstractmethod
from configparser import ConfigParser
from typing import Any, Callable, List

from ..utility.defaultconfig import defaultconfig
from ..utility.instance import instance
from ..utility.logger import logger


class _param(ABC):
    """
    Abstract protected param class.

    It provides the base class to extend when implementing command line
    parameter parsers. Every ``--name`` flag is handled by the module
    ``voigt.param.name`` defining the class ``name``.
    """

    def __init__(self, params: List[str]) -> None:
        """
        Consumes the flag at the head of ``params`` and all arguments up to the
        next flag, then hands these arguments to ``_parse``.

        :param params: The remaining command line, starting with the flag.
        """
        args = []
        logger().debug("Parsing cli param %s", params.pop(0)[2:])

        while params and not params[0].startswith("--"):
            args += [params.pop(0)]

        logger().debug("Passing cli args %s", str(args))
        self._parse(args)

    @staticmethod
    def _overlay(read: Callable[[ConfigParser], Any]) -> List[str]:
        """
        Reads settings into a scratch parser, checks them against the known
        sections and keys of ``defaultconfig`` and merges them into the
        registered settings only if every value parses like its default.

        :param read: Fills the scratch parser, e.g. ``ConfigParser.read_file``.
        :returns: The dotted names of the overlaid settings.
        :raises KeyError: On an unknown section or key.
        :raises ValueError: On a value not parsing like its default.
        """
        scratch = ConfigParser(default_section="__none__")
        read(scratch)
        names = []

        for section in scratch.sections():
            defaults = defaultconfig.get(section)
            if defaults is None:
                raise KeyError(section)

            for key, value in scratch.items(section):
                if key not in defaults:
                    raise KeyError(f"{section}.{key}")
                if not isinstance(defaults[key], str):
                    type(defaults[key])(value)
                names += [f"{section}.{key}"]

        for section in scratch.sections():
            for key, value in scratch.items(section):
                instance.config.set(section, key, value)

        return names

    @abstractmethod
    def _parse(self, params: List[str]) -> None:
        """
        Applies the arguments of the flag to the settings.

        :raises Exception: On invalid arguments.
        """
        raise NotImplementedError("Too abstract")

    @abstractmethod
    def _value(self) -> Any:
        """
        The current setting shown by ``--help``.
        """
        raise NotImplementedError("Too abstract")
