from configparser import ConfigParser
from typing import Any

from ..utility.dotdictionary import dotdictionary
from .defaultconfig import defaultconfig


class _registry(type):
    """
    Metaclass routing attribute access on the ``instance`` class to the shared
    dotdictionary, so unknown keys read as ``None`` instead of raising.
    """

    def __getattr__(cls, attr: str) -> Any:
        if attr.startswith("__"):
            raise AttributeError(attr)

        return cls._instance__store.get(attr)

    def __setattr__(cls, attr: str, value: Any) -> None:
        cls._instance__store[attr] = value

    def __delattr__(cls, attr: str) -> None:
        del cls._instance__store[attr]


class instance(metaclass=_registry):
    """
    ``instance`` class, containing a dotdictionary singleton.

    This singleton instance, shared throughout voigt, is the runtime-storage
    for the settings (``instance.config``), the loaded subcommand modules
    (``instance.commands``) and the command line state of one invocation.
    """

    __store = dotdictionary()

    @classmethod
    def settings(cls) -> ConfigParser:
        """
        Returns the active settings. Library code used without the command
        line gets a ``ConfigParser`` seeded from the ``defaultconfig``.

        :returns: The ``ConfigParser`` holding all settings.
        """
        if cls.config is None:
            config = ConfigParser()
            config.read_dict(defaultconfig)
            cls.config = config

        return cls.config

    @classmethod
    def reset(cls) -> None:
        """
        Drops all runtime state, used before each command line invocation.
        """
        cls.__store.clear()
