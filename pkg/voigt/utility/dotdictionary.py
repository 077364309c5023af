from typing import Any

import numpy


class dotdictionary(dict):
    """
    ``dotdictionary`` wrapper class around the built-in ``dict`` to allow
    dot-operator access to its values. Used for runtime settings sections,
    verdict records and report documents alike.

    See:
    - https://stackoverflow.com/a/23689767
    - https://stackoverflow.com/a/13520518

    :param dict: The built-in ``dict`` to wrap.
    :returns: The wrapped ``dict`` as ``dotdictionary``
    """

    __setattr__ = dict.__setitem__
    __delattr__ = dict.__delitem__

    def __init__(self, *args, **kwargs):
        for key, value in dict(*args, **kwargs).items():
            if hasattr(value, "keys"):
                value = dotdictionary(value)
            self[key] = value

    def __getattr__(self, attr: str) -> Any:
        if attr.startswith("__"):
            raise AttributeError(attr)

        return self.get(attr)

    def plain(self) -> dict:
        """
        Converts this ``dotdictionary`` (recursively) into JSON-ready builtins:
        numpy scalars become floats, numpy arrays and tuples become lists.

        :returns: A plain ``dict``.
        """

        def convert(value):
            if hasattr(value, "plain"):
                return value.plain()
            if isinstance(value, dict):
                return {key: convert(item) for key, item in value.items()}
            if isinstance(value, (list, tuple, numpy.ndarray)):
                return [convert(item) for item in value]
            if isinstance(value, numpy.bool_):
                return bool(value)
            if isinstance(value, numpy.generic):
                return value.item()

            return value

        return convert(dict(self))
