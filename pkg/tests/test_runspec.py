"""
Run configuration parsing, defaults and validation.
"""
from json import dumps

import pytest

from voigt.serial.runspec import runspec
from voigt.utility.exceptions import configerror

minimal = {"epsilon": 1, "c2": 1, "initial": {"u_modes": [0.1]}}


def parse(**overrides):
    return runspec.parse(dumps({**minimal, **overrides}))


def test_defaults():
    spec = parse()

    assert spec.grid.n_interior == 199
    assert spec.time.dt == 1e-3 and spec.time.observe_stride == 100
    assert spec.time.t0 == 0.0 and spec.time.t_end == 10.0
    assert spec.forcing.kind == "zero"
    assert spec.analysis.gamma is None
    assert spec.analysis.samples == 200 and spec.analysis.seed == 0
    assert spec.analysis.tol_abs == 1e-8
    assert spec.outputs.csv is None and not spec.sweep


def test_defaults_follow_settings(settings):
    settings.set("grid", "n_interior", "49")
    assert parse().grid.n_interior == 49


@pytest.mark.parametrize("document, path", [
    ({"epsilon": -1, "c2": 1}, "epsilon"),
    ({"epsilon": 1, "c2": 0}, "c2"),
    ({"epsilon": 1}, "c2"),
    ({**minimal, "forcing": {"kind": "example3"}}, "forcing.kind"),
    ({**minimal, "forcing": {"kind": "example1", "b0": "x"}}, "forcing.b0"),
    ({**minimal, "forcing": {"kind": "example2", "a_inf": -5}},
     "forcing.a_inf"),
    ({**minimal, "analysis": {"gamma": 0.5}}, "analysis.gamma"),
    ({**minimal, "analysis": {"cap": 0}}, "analysis.cap"),
    ({**minimal, "analysis": {"samples": 2.5}}, "analysis.samples"),
    ({**minimal, "grid": {"n_interior": 2}}, "grid.n_interior"),
    ({**minimal, "time": {"t_end": -1}}, "time.t_end"),
    ({**minimal, "time": {"dt": 0}}, "time.dt"),
    ({**minimal, "initial": {"u_modes": ["a"]}}, "initial.u_modes"),
    ({**minimal, "outputs": {"csv": 3}}, "outputs.csv"),
    ({**minimal, "sweep": {"forcing.b0": []}}, "sweep.forcing.b0"),
])
def test_errors_name_the_field(document, path):
    with pytest.raises(configerror) as error:
        runspec(document)

    assert error.value.path == path


def test_messages():
    with pytest.raises(configerror, match="positive constants"):
        runspec({"epsilon": -1, "c2": 1})
    with pytest.raises(configerror, match="inf a must exceed -epsilon"):
        parse(forcing={"kind": "example2", "a_inf": -5})
    with pytest.raises(configerror, match="1/2"):
        parse(analysis={"gamma": 0.5})


def test_malformed_json():
    with pytest.raises(configerror) as error:
        runspec.parse("{epsilon: 1")

    assert error.value.path == "$"


def test_boundary_violations_named():
    values = [0.0] * 5
    values[-1] = 0.1

    with pytest.raises(configerror, match=r"u0\(1\)=0"):
        parse(grid={"n_interior": 3}, initial={"u_values": values})


def test_initial_values_length():
    with pytest.raises(configerror) as error:
        parse(grid={"n_interior": 3}, initial={"u_values": [0, 1, 0]})

    assert error.value.path == "initial.u_values"


def test_initial_state():
    spec = parse(grid={"n_interior": 9}, time={"t0": 2.0, "t_end": 3.0})
    current = spec.initial_state()

    assert current.t == 2.0
    assert current.u.values[5] == pytest.approx(0.1)
    assert not current.v.values.any()


def test_dump_round_trip():
    spec = parse(
        forcing={"kind": "example2", "k": 2, "tau": 0.5},
        analysis={"gamma": 2.0, "t0_list": [0, 1.5]},
        outputs={"csv": "a.csv"},
    )

    assert runspec.parse(spec.dump()) == spec
    assert runspec.parse(spec.dump()).analysis.t0_list == [0.0, 1.5]


def test_callbacks_by_import_path():
    spec = parse(forcing={
        "kind": "custom",
        "F": "tests.callbacks:restoring",
        "potential": "tests.callbacks:restoring_potential",
        "a": "tests.callbacks:unit_damping",
        "a_inf": 1,
        "a_sup": 1,
    })

    assert spec.forcing.split and spec.forcing.has_potential
    assert spec.forcing.custom_F(2.0) == -2.0
    assert spec.plain()["forcing"]["F"] == "tests.callbacks:restoring"
    assert runspec.parse(spec.dump()) == spec


@pytest.mark.parametrize("target", [
    "tests.callbacks:missing",
    "tests.nowhere:restoring",
    "tests.callbacks:not_callable",
])
def test_callbacks_unloadable(target):
    with pytest.raises(configerror) as error:
        parse(forcing={"kind": "custom", "f": target})

    assert error.value.path == "forcing.f"


def test_variants():
    spec = parse(
        forcing={"kind": "example1"},
        outputs={"csv": "run.csv"},
        sweep={"forcing.b0": [0.01, 0.02], "epsilon": [1, 2, 3]},
    )
    variants = list(spec.variants())

    assert len(variants) == 6
    assert [i.params.epsilon for i in variants[:3]] == [1.0, 1.0, 2.0]
    assert [i.forcing.b0 for i in variants[:2]] == [0.01, 0.02]
    assert variants[4].outputs.csv == "run.4.csv"
    assert variants[4].outputs.report is None
    assert not variants[0].sweep


def test_variants_validate():
    spec = parse(sweep={"analysis.gamma": [1.0, 0.4]})
    variants = spec.variants()

    assert next(variants).analysis.gamma == 1.0

    with pytest.raises(configerror):
        next(variants)
