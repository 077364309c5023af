from copy import deepcopy
from importlib import import_module
from itertools import product
from json import JSONDecodeError, dumps, loads
from typing import Any, Callable, Dict, Iterator, Optional

import numpy

from ..dynamics.forcing import forcingspec
from ..dynamics.params import pdeparams
from ..dynamics.trajectory import observer
from ..lattice.grid import grid
from ..lattice.state import state
from ..utility.dotdictionary import dotdictionary
from ..utility.exceptions import configerror, voigtexception
from ..utility.instance import instance
from ..utility.logger import logger


class runspec:
    """
    A validated run configuration. The JSON document reads

        {
          "epsilon": 1.0, "c2": 1.0,
          "forcing": {"kind": "example1", "b0": 0.05},
          "initial": {"u_modes": [0.1], "v_modes": []},
          "grid": {"n_interior": 199},
          "time": {"t0": 0, "t_end": 10, "dt": 0.001, "observe_stride": 100},
          "analysis": {"gamma": null, "search_max": 1000, ...},
          "outputs": {"csv": "run.csv", "report": "run.json"},
          "sweep": {"forcing.b0": [0.01, 0.05]}
        }

    where every omitted field defaults from the settings. Custom callbacks
    (``f``, ``a``, ``F``, ``potential``, ``g_hat`` in ``forcing``) are given
    as import paths ``"package.module:attribute"``.
    """

    callbacks = {
        "f": "custom_f",
        "a": "custom_a",
        "F": "custom_F",
        "potential": "custom_potential",
        "g_hat": "g_hat",
    }

    def __init__(self, document: Dict[str, Any]) -> None:
        if not isinstance(document, dict):
            raise configerror("$", "Run configuration must be an object")

        self.document = deepcopy(document)
        settings = instance.settings()

        self.params = self.__params(document)
        self.forcing = self.__forcing(document.get("forcing", {}))

        try:
            self.forcing.validate(self.params)
        except voigtexception as exception:
            raise configerror("forcing.a_inf", str(exception))

        section = self.__section(document, "grid")
        self.grid = dotdictionary(
            n_interior=self.__integer(
                section, "grid.n_interior",
                settings.getint("grid", "n_interior"), 3,
            )
        )

        section = self.__section(document, "time")
        self.time = dotdictionary(
            t0=self.__real(section, "time.t0", 0.0),
            t_end=self.__real(section, "time.t_end", 10.0),
            dt=self.__real(section, "time.dt",
                           settings.getfloat("time", "dt")),
            observe_stride=self.__integer(
                section, "time.observe_stride",
                settings.getint("time", "observe_stride"), 1,
            ),
        )

        if not self.time.t_end > self.time.t0:
            raise configerror("time.t_end", "Must exceed time.t0")
        if not self.time.dt > 0:
            raise configerror("time.dt", "Must be positive")

        self.analysis = self.__analysis(self.__section(document, "analysis"))
        self.outputs = self.__outputs(self.__section(document, "outputs"))
        self.sweep = self.__sweep(self.__section(document, "sweep"))
        self.initial = self.__initial(self.__section(document, "initial"))
        violations = self.initial_state().boundary_violations()

        if violations:
            raise configerror(
                "initial",
                "Initial data must vanish at both ends, violated: "
                + ", ".join(violations),
            )

    @classmethod
    def parse(cls, text: str) -> "runspec":
        """
        Parses and validates a JSON run configuration.

        :param text: The JSON document.
        :returns: The ``runspec``.
        :raises configerror: On malformed or invalid documents, with the path
            of the offending field.
        """
        try:
            document = loads(text)
        except JSONDecodeError as exception:
            raise configerror("$", f"Malformed JSON: {exception}")

        return cls(document)

    @classmethod
    def read(cls, file: str) -> "runspec":
        with open(file) as source:
            logger().info("Reading run configuration %s", file)
            return cls.parse(source.read())

    def dump(self) -> str:
        """
        Serialises the fully defaulted configuration, which parses back into
        an equivalent ``runspec``.
        """
        return dumps(self.plain(), indent=2)

    def plain(self) -> Dict[str, Any]:
        spec = self.forcing
        return {
            "epsilon": self.params.epsilon,
            "c2": self.params.c2,
            "forcing": {
                "kind": spec.kind,
                "b0": spec.b0,
                "k": spec.k,
                "tau": spec.tau,
                "a_inf": spec.a_inf,
                "a_sup": spec.a_sup,
                **spec.paths,
            },
            "initial": dict(self.initial),
            "grid": dict(self.grid),
            "time": dict(self.time),
            "analysis": dict(self.analysis),
            "outputs": dict(self.outputs),
            "sweep": dict(self.sweep),
        }

    @property
    def lattice(self) -> grid:
        return grid(self.grid.n_interior)

    def initial_state(self, lattice: Optional[grid] = None) -> state:
        """
        The initial data on the run grid (or on ``lattice``), at time t0.
        """
        lattice = lattice or self.lattice
        init = self.initial

        if init.u_values is not None or init.v_values is not None:
            size = lattice.n_interior + 2
            u = init.u_values or [0.0] * size
            v = init.v_values or [0.0] * size

            for path, values in (("initial.u_values", u),
                                 ("initial.v_values", v)):
                if len(values) != size:
                    raise configerror(path, f"Need {size} values")

            return state.from_values(lattice, u, v, self.time.t0)

        return state.sine_series(
            init.u_modes or [], init.v_modes or [], lattice, self.time.t0
        )

    def observer(self, gamma_w: Optional[float] = None) -> observer:
        return observer(
            self.time.observe_stride,
            self.analysis.gamma or 1.0,
            gamma_w,
            distance1=True,
        )

    def variants(self) -> Iterator["runspec"]:
        """
        One ``runspec`` per point of the Cartesian product spanned by the
        ``sweep`` section. Sweep keys are dotted paths into the document;
        output paths get a ``.<index>`` suffix before their extension.
        """
        keys = sorted(self.sweep)

        for index, values in enumerate(product(*[self.sweep[i] for i in keys])):
            document = self.plain()
            document["sweep"] = {}

            for key, value in zip(keys, values):
                self.__assign(document, key, value)

            for name, file in document["outputs"].items():
                if file:
                    stem, dot, suffix = file.rpartition(".")
                    document["outputs"][name] = (
                        f"{stem}.{index}.{suffix}" if dot
                        else f"{file}.{index}"
                    )

            yield runspec(document)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, runspec) and self.plain() == other.plain()

    def __repr__(self) -> str:
        return f"runspec({self.params!r}, {self.forcing!r})"

    @classmethod
    def __params(cls, document: Dict[str, Any]) -> pdeparams:
        epsilon = cls.__real(document, "epsilon", None)
        c2 = cls.__real(document, "c2", None)

        if not epsilon > 0 or not c2 > 0:
            raise configerror(
                "epsilon" if not epsilon > 0 else "c2",
                "epsilon and c must be positive constants",
            )

        return pdeparams(epsilon, c2)

    @classmethod
    def __forcing(cls, section: Any) -> forcingspec:
        if not isinstance(section, dict):
            raise configerror("forcing", "Must be an object")

        kind = section.get("kind", "zero")

        if kind not in forcingspec.kinds:
            raise configerror(
                "forcing.kind",
                f"Unknown kind {kind}, one of {', '.join(forcingspec.kinds)}",
            )

        paths = {
            key: section[key] for key in cls.callbacks if section.get(key)
        }
        loaded = {
            cls.callbacks[key]: cls.load_callback(f"forcing.{key}", path)
            for key, path in paths.items()
        }

        values = {
            key: cls.__real(section, f"forcing.{key}", default)
            for key, default in (("b0", 0.0), ("k", 1.0), ("tau", 1.0),
                                 ("a_inf", 0.0), ("a_sup", 0.0))
        }

        try:
            return forcingspec(kind, paths=paths, **values, **loaded)
        except voigtexception as exception:
            raise configerror("forcing", str(exception))

    @classmethod
    def load_callback(cls, path: str, target: str) -> Callable:
        """
        Resolves ``"package.module:attribute"`` to the named callable.

        :raises configerror: If the module or attribute cannot be loaded.
        """
        module, _, attribute = str(target).partition(":")

        try:
            callback = getattr(import_module(module), attribute)
        except Exception as exception:
            raise configerror(path, f"Cannot load {target}: {exception}")

        if not callable(callback):
            raise configerror(path, f"{target} is not callable")

        logger().debug("Loaded callback %s for %s", target, path)
        return callback

    @classmethod
    def __analysis(cls, section: Dict[str, Any]) -> dotdictionary:
        settings = instance.settings()
        gamma = section.get("gamma")

        if gamma is not None and not cls.__real(
            section, "analysis.gamma", None
        ) > 0.5:
            raise configerror("analysis.gamma", "gamma must exceed 1/2")

        analysis = dotdictionary(gamma=None if gamma is None else float(gamma))

        for key in ("search_max", "q_horizon", "q_factor", "scan_dt",
                    "window", "cap"):
            analysis[key] = cls.__real(
                section,
                f"analysis.{key}",
                settings.getfloat("analysis", key),
            )
            if not analysis[key] > 0:
                raise configerror(f"analysis.{key}", "Must be positive")

        for key in ("samples", "seed", "radius_points"):
            analysis[key] = cls.__integer(
                section,
                f"analysis.{key}",
                settings.getint("analysis", key),
                0 if key == "seed" else 1,
            )

        for key in ("tol_abs", "tol_rel"):
            analysis[key] = cls.__real(
                section, f"analysis.{key}", settings.getfloat("verdict", key)
            )
            if analysis[key] < 0:
                raise configerror(f"analysis.{key}", "Must be nonnegative")

        t0_list = section.get("t0_list", [0.0])

        if not isinstance(t0_list, list) or not t0_list:
            raise configerror("analysis.t0_list", "Must be a nonempty list")

        analysis.t0_list = [
            cls.__real({"t0": i}, f"analysis.t0_list[{n}]", None, key="t0")
            for n, i in enumerate(t0_list)
        ]
        return analysis

    @classmethod
    def __outputs(cls, section: Dict[str, Any]) -> dotdictionary:
        outputs = dotdictionary(csv=None, report=None)

        for key in outputs:
            value = section.get(key)
            if value is not None and not isinstance(value, str):
                raise configerror(f"outputs.{key}", "Must be a path string")
            outputs[key] = value

        return outputs

    @classmethod
    def __sweep(cls, section: Dict[str, Any]) -> dotdictionary:
        for key, values in section.items():
            if not isinstance(values, list) or not values:
                raise configerror(f"sweep.{key}", "Must be a nonempty list")

        return dotdictionary(section)

    @staticmethod
    def __initial(section: Dict[str, Any]) -> dotdictionary:
        initial = dotdictionary()

        for key in ("u_modes", "v_modes", "u_values", "v_values"):
            values = section.get(key)

            if values is None:
                continue
            if not isinstance(values, list) or not all(
                isinstance(i, (int, float)) and not isinstance(i, bool)
                for i in values
            ):
                raise configerror(f"initial.{key}", "Must be a list of numbers")

            initial[key] = [float(i) for i in values]

        if ("u_values" in initial or "v_values" in initial) and (
            "u_modes" in initial or "v_modes" in initial
        ):
            raise configerror("initial", "Give either modes or values")

        return initial

    @staticmethod
    def __section(document: Dict[str, Any], name: str) -> Dict[str, Any]:
        section = document.get(name) or {}

        if not isinstance(section, dict):
            raise configerror(name, "Must be an object")

        return section

    @staticmethod
    def __real(
        section: Dict[str, Any],
        path: str,
        default: Optional[float],
        key: Optional[str] = None,
    ) -> float:
        value = section.get(key or path.split(".")[-1], default)

        if value is None:
            raise configerror(path, "Required number is missing")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise configerror(path, f"Expected a number, got {value!r}")
        if not numpy.isfinite(value):
            raise configerror(path, "Must be finite")

        return float(value)

    @staticmethod
    def __integer(
        section: Dict[str, Any],
        path: str,
        default: int,
        minimum: int,
    ) -> int:
        value = section.get(path.split(".")[-1], default)

        if isinstance(value, bool) or not isinstance(value, (int, float)) or (
            int(value) != value
        ):
            raise configerror(path, f"Expected an integer, got {value!r}")
        if value < minimum:
            raise configerror(path, f"Must be at least {minimum}")

        return int(value)

    @staticmethod
    def __assign(document: Dict[str, Any], key: str, value: Any) -> None:
        *parents, leaf = key.split(".")
        target = document

        for parent in parents:
            target = target.setdefault(parent, {})
            if not isinstance(target, dict):
                raise configerror(f"sweep.{key}", "Path does not name a field")

        target[leaf] = value

