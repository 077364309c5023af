"""
Distances and Liapunov functionals on known states.
"""
import numpy
import pytest

from voigt.dynamics.forcing import forcingspec
from voigt.dynamics.params import pdeparams
from voigt.dynamics.simulator import simulator
from voigt.dynamics.trajectory import observer
from voigt.lattice.grid import grid
from voigt.lattice.state import state
from voigt.stability.certificates import certificates
from voigt.stability.functionals import functionals
from voigt.utility.exceptions import functionalerror, parametererror

pi = numpy.pi


def test_distance_of_sine(lattice):
    current = state.sine_series([1.0], [], lattice)

    assert functionals.distance_sq(current) == pytest.approx(
        0.5 + pi**2 / 2 + pi**4 / 2, rel=1e-3
    )
    assert functionals.distance_sq(current) == pytest.approx(54.14, abs=0.01)


def test_distance1_adds_velocity_gradient(lattice):
    current = state.sine_series([], [1.0], lattice)

    assert functionals.distance1_sq(current) - functionals.distance_sq(
        current
    ) == pytest.approx(pi**2 / 2, rel=1e-3)


def test_zero_state(lattice, unit):
    current = state.zero(lattice)

    assert functionals.distance_sq(current) == 0.0
    assert functionals.lyapunov_V(current, 1.0, unit) == 0.0


def test_V_of_sine(lattice, unit):
    current = state.sine_series([1.0], [], lattice)

    assert functionals.lyapunov_V(current, 1.0, unit) == pytest.approx(
        pi**4 / 4 + pi**2 / 2, rel=1e-3
    )


def test_V1_velocity_terms(lattice, unit):
    current = state.sine_series([1.0], [1.0], lattice)
    V = functionals.lyapunov_V(current, 1.0, unit)

    assert functionals.lyapunov_V1(current, unit) - V == pytest.approx(
        3 * pi**2 / 4, rel=1e-3
    )


def test_W_adds_potential(lattice, unit):
    current = state.sine_series([1.0], [], lattice)
    spec = forcingspec("example2", k=1.0, tau=1.0)
    V = functionals.lyapunov_V(current, 1.5, unit)

    assert functionals.lyapunov_W(current, 1.5, unit, spec) - V == (
        pytest.approx(0.625, rel=1e-6)
    )


def test_W_needs_potential(lattice, unit):
    with pytest.raises(functionalerror):
        functionals.lyapunov_W(
            state.zero(lattice), 1.0, unit, forcingspec("example1", b0=1.0)
        )


def test_gamma_must_exceed_half(lattice, unit):
    with pytest.raises(parametererror, match="1/2"):
        functionals.lyapunov_V(state.zero(lattice), 0.5, unit)


def test_pointwise_control(rng):
    """
    Every component of the state is bounded pointwise by d.
    """
    lattice = grid(99)

    for _ in range(20):
        current = state.random(lattice, rng, max_modes=5)
        d = numpy.sqrt(functionals.distance_sq(current))

        for values in (current.u.values, current.u.derivative(1).values,
                       current.v.values):
            assert numpy.abs(values).max() <= d * (1 + 1e-6)


@pytest.mark.parametrize("gamma", [0.6, 1.0, 2.0, 5.0])
@pytest.mark.parametrize("epsilon", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
def test_sandwich_on_random_states(rng, gamma, epsilon, c):
    """
    c1^2 d^2 <= V <= c2^2 d^2 for 200 random states.
    """
    lattice = grid(199)
    params = pdeparams(epsilon, c**2)
    constants = certificates.constants_thm1(params, gamma)

    for _ in range(200):
        current = state.random(lattice, rng)
        d2 = functionals.distance_sq(current)
        V = functionals.lyapunov_V(current, gamma, params)

        assert constants.c1_sq * d2 <= V * (1 + 1e-6)
        assert V <= constants.c2_sq * d2 * (1 + 1e-6)


def test_evaluate_options(lattice, unit):
    current = state.sine_series([1.0], [0.5], lattice)
    spec = forcingspec("example2")

    plain = functionals.evaluate(current, unit)
    full = functionals.evaluate(current, unit, 1.0, spec, 1.5, True, True)

    assert plain.d1_2 is None and plain.V1 is None and plain.W is None
    assert full.W is not None and full.V1 is not None
    assert full.d1_2 > full.d2 == plain.d2


def test_vdot_along_forced_trajectory(unit):
    traj = simulator.simulate(
        state.sine_series([0.1], [0.05], grid(49)),
        0.0,
        5.0,
        1e-3,
        unit,
        forcingspec("example1", b0=1 / 18),
        observer(stride=20),
    )
    check = functionals.vdot_check(
        traj, certificates.constants_thm1(unit, 1.0)
    )

    assert check.passed and check.details.pairs == 250


@pytest.mark.parametrize("epsilon, c2", [(1.0, 1.0), (0.5, 4.0), (2.0, 0.25)])
def test_V_dissipates_without_forcing(epsilon, c2):
    """
    Without forcing V (gamma = 1) decreases between any two observations.
    """
    traj = simulator.simulate(
        state.sine_series([0.1, 0.05], [0.05], grid(49)),
        0.0,
        5.0,
        1e-3,
        pdeparams(epsilon, c2),
        forcingspec("zero"),
        observer(stride=20),
    )
    V = traj.column("V")

    assert len(V) == 251 and V[-1] < V[0]
    assert numpy.all(numpy.diff(V) < 0)
