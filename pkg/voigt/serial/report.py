from json import dumps
from typing import Any

import numpy

from ..utility.logger import logger


def serialize(body: Any) -> Any:
    """
    Fallback for ``json.dumps``: objects with ``plain()``, numpy scalars and
    arrays.
    """
    if hasattr(body, "plain"):
        return body.plain()
    if isinstance(body, numpy.bool_):
        return bool(body)
    if isinstance(body, numpy.generic):
        return body.item()
    if isinstance(body, numpy.ndarray):
        return body.tolist()

    raise TypeError(f"Type {type(body)} not serializable")


def render(body: Any) -> str:
    return dumps(body, default=serialize, ensure_ascii=False, indent=2)


def write_report(body: Any, path: str) -> None:
    """
    Writes a report document as JSON. Non-finite margins are kept as
    ``Infinity``/``NaN`` literals.

    :raises OSError: If the file cannot be written.
    """
    with open(path, "w", encoding="utf-8") as target:
        target.write(render(body) + "\n")

    logger().info("Wrote report to %s", path)
