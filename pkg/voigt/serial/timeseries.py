from csv import DictReader, writer
from typing import Dict, Optional, Sequence

import numpy

from ..dynamics.trajectory import trajectory
from ..stability.comparison import envelope
from ..utility.logger import logger

header = ["t", "d2", "d1_2", "V", "W", "comparison_y", "envelope", "margin"]


def envelope_column(
    times: numpy.ndarray,
    envelopes: Sequence[envelope],
) -> numpy.ndarray:
    """
    Evaluates a chain of envelopes at the given times: each time takes the
    first envelope covering it, ``nan`` where none does.
    """
    values = numpy.full(len(times), numpy.nan)

    for i, t in enumerate(times):
        for current in envelopes:
            if current.anchor is not None and current.covers(t):
                values[i] = current.evaluate(t)
                break

    return values


def write_timeseries(
    traj: trajectory,
    envelopes: Sequence[envelope],
    path: str,
    comparison: Optional[Sequence[float]] = None,
) -> int:
    """
    Writes one CSV row per observation with the columns
    ``t,d2,d1_2,V,W,comparison_y,envelope,margin``. ``comparison`` holds the
    comparison solution at the observation times, if any; ``margin`` is
    ``envelope - d2``. Absent values are left empty, floats are written in
    round-trip precision.

    :returns: The number of rows written.
    :raises OSError: If the file cannot be written.
    """
    times = traj.column("t")
    columns = {
        "t": times,
        "d2": traj.column("d2"),
        "d1_2": traj.column("d1_2"),
        "V": traj.column("V"),
        "W": traj.column("W"),
        "comparison_y": numpy.full(len(times), numpy.nan)
        if comparison is None
        else numpy.asarray(comparison, dtype=float),
        "envelope": envelope_column(times, envelopes),
    }
    columns["margin"] = columns["envelope"] - columns["d2"]

    with open(path, "w", newline="") as target:
        rows = writer(target)
        rows.writerow(header)

        for i in range(len(times)):
            rows.writerow(
                [
                    "" if numpy.isnan(columns[name][i])
                    else repr(float(columns[name][i]))
                    for name in header
                ]
            )

    logger().info("Wrote %i rows to %s", len(times), path)
    return len(times)


def read_timeseries(path: str) -> Dict[str, numpy.ndarray]:
    """
    Reads a time series back into columns, empty fields as ``nan``.
    """
    with open(path, newline="") as source:
        rows = list(DictReader(source))

    return {
        name: numpy.array(
            [float(row[name]) if row[name] else numpy.nan for row in rows]
        )
        for name in header
    }
