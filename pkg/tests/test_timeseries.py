"""
Time series and report files.
"""
from json import loads

import numpy
import pytest

from voigt.dynamics.forcing import forcingspec
from voigt.dynamics.simulator import simulator
from voigt.dynamics.trajectory import observer
from voigt.lattice.grid import grid
from voigt.lattice.state import state
from voigt.serial.report import write_report
from voigt.serial.timeseries import (
    envelope_column,
    header,
    read_timeseries,
    write_timeseries,
)
from voigt.stability.comparison import envelope
from voigt.utility.dotdictionary import dotdictionary
from voigt.utility.verdict import verdict


def run(unit, initial, t_end=1.0, stride=10):
    return simulator.simulate(
        initial,
        0.0,
        t_end,
        0.01,
        unit,
        forcingspec("zero"),
        observer(stride=stride),
    )


def decay(t0=0.0, anchor=1.0, until=None):
    return envelope(kind="exponential", rate=1.0, prefactor=2.0, t0=t0,
                    anchor=anchor, until=until)


def test_write_and_read(tmp_path, unit):
    traj = run(unit, state.sine_series([0.1], [], grid(19)))
    file = tmp_path / "run.csv"

    rows = write_timeseries(traj, [decay(anchor=traj.column("d2")[0])],
                            str(file))
    columns = read_timeseries(str(file))

    assert rows == 11
    assert file.read_text().splitlines()[0] == ",".join(header)
    assert columns["d2"] == pytest.approx(traj.column("d2"), rel=1e-15)
    assert numpy.all(numpy.isnan(columns["W"]))
    assert numpy.all(numpy.isnan(columns["comparison_y"]))
    assert numpy.all(columns["margin"] >= 0)


def test_zero_run(tmp_path, unit):
    traj = run(unit, state.zero(grid(9)))
    file = tmp_path / "zero.csv"
    write_timeseries(traj, [], str(file), numpy.zeros(len(traj)))
    columns = read_timeseries(str(file))

    assert not columns["d2"].any() and not columns["V"].any()
    assert not columns["comparison_y"].any()
    assert numpy.all(numpy.isnan(columns["envelope"]))


def test_stride_beyond_run(tmp_path, unit):
    traj = run(unit, state.zero(grid(9)), t_end=0.05, stride=100)
    columns_written = write_timeseries(traj, [], str(tmp_path / "short.csv"))

    assert columns_written == 2
    assert traj.column("t") == pytest.approx([0.0, 0.05])


def test_envelope_chain():
    times = numpy.array([0.0, 1.0, 2.0, 3.0])
    chain = [decay(until=2.0), decay(t0=2.0, anchor=0.5)]

    values = envelope_column(times, chain)

    assert values[:2] == pytest.approx([2.0, 2 * numpy.exp(-1.0)])
    assert values[2:] == pytest.approx([1.0, numpy.exp(-1.0)])
    assert numpy.isnan(envelope_column(times, [decay(t0=5.0)])).all()


def test_report(tmp_path):
    file = tmp_path / "report.json"
    write_report(
        dotdictionary(
            verdicts=[verdict("vdot_bound", numpy.bool_(True), numpy.inf)],
            values=numpy.arange(3.0),
            count=numpy.int64(3),
        ),
        str(file),
    )
    body = loads(file.read_text())

    assert body["verdicts"][0]["passed"] is True
    assert body["verdicts"][0]["margin"] == float("inf")
    assert body["values"] == [0.0, 1.0, 2.0] and body["count"] == 3
