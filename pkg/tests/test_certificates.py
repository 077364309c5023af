"""
Stability constants, hypothesis checks and the certificates of both routes.
"""
import numpy
import pytest

from voigt.dynamics.forcing import forcing, forcingspec
from voigt.dynamics.params import pdeparams
from voigt.dynamics.simulator import simulator
from voigt.dynamics.trajectory import observer
from voigt.lattice.grid import grid
from voigt.lattice.state import state
from voigt.serial.runspec import runspec
from voigt.stability.certificates import certificates
from voigt.utility.exceptions import (
    functionalerror,
    hypothesiserror,
    parametererror,
)

from . import callbacks

pi = numpy.pi


def analysis(**overrides):
    return runspec(
        {"epsilon": 1, "c2": 1, "analysis": {
            "q_horizon": 100,
            "cap": 100,
            "search_max": 100,
            "radius_points": 5,
            "samples": 20,
            **overrides,
        }}
    ).analysis


def test_constants_unit(unit):
    constants = certificates.constants_thm1(unit, 1.0)

    assert constants.c2_sq == pytest.approx(3 / 2)
    assert constants.c1_sq == pytest.approx(1 / 16)
    assert constants.c3_sq == pytest.approx(1 / 6)
    assert constants.A == pytest.approx(5 / 2)
    assert constants.p == pytest.approx(1 / 9)


def test_constants_stiff():
    constants = certificates.constants_thm1(pdeparams(2.0, 1.0), 1.0)

    assert constants.c2_sq == pytest.approx(3.0)
    assert constants.c3_sq == pytest.approx(1 / 3)
    assert constants.A == pytest.approx(2.0)
    assert constants.p == pytest.approx(1 / 9)


def test_constants_gamma(unit):
    with pytest.raises(parametererror):
        certificates.constants_thm1(unit, 0.5)


def test_c2_monotone_in_gamma(unit):
    values = [
        certificates.constants_thm1(unit, gamma).c2_sq
        for gamma in numpy.linspace(0.6, 5.0, 23)
    ]
    assert numpy.all(numpy.diff(values) >= 0)


@pytest.mark.parametrize("a_inf, a_sup, gamma", [
    (0.0, 0.0, 1.5),
    (1.0, 1.0, 1.0),
    (0.0, 1.0, 1.0 + 0.25 + 0.5),
])
def test_gamma_thm2(unit, a_inf, a_sup, gamma):
    """
    The sup of |a (a - 1)| over [0, 1] sits at the vertex 1/2.
    """
    assert certificates.gamma_thm2(unit, a_inf, a_sup) == pytest.approx(gamma)


def test_gamma_thm2_damping_bound(unit):
    with pytest.raises(hypothesiserror, match="inf a must exceed -epsilon"):
        certificates.gamma_thm2(unit, -1.0, 0.0)


def test_damping_margin(unit):
    check = certificates.damping_margin(unit, 1.5, 0.0, 0.0)

    assert check.passed and check.margin == pytest.approx(0.5)
    assert not certificates.damping_margin(unit, 0.6, -0.5, 0.0).passed


def test_constants_thm2(unit):
    constants = certificates.constants_thm2(unit, 1.5, 1.0, 0.5)

    assert constants.k1 == pytest.approx(1 / 8)
    assert constants.k3 == pytest.approx(1 / 4)
    assert constants.E == pytest.approx(0.03307, rel=1e-3)
    assert constants.c2_sq == pytest.approx(1.75)
    assert constants.regime == "algebraic"


@pytest.mark.parametrize("D, tau", [(0.0, 0.5), (1.0, 1.0)])
def test_constants_thm2_exponential(unit, D, tau):
    constants = certificates.constants_thm2(unit, 1.5, D, tau)

    assert constants.regime == "exponential" and constants.E == 0.0


@pytest.mark.parametrize("D, tau", [(-1.0, 0.5), (1.0, 1.5)])
def test_constants_thm2_rejects(unit, D, tau):
    with pytest.raises(parametererror):
        certificates.constants_thm2(unit, 1.5, D, tau)


def test_D_example2(rng):
    samples = certificates.sample_states(grid(99), rng, 20)
    spec = forcingspec("example2", k=1.0, tau=1.0)
    result = certificates.certify_hyp1_D_tau(spec, samples, 1.5)

    assert result.D == pytest.approx(5 / 12)
    assert result.tau == 1.0 and not result.empirical
    assert result.verdict.passed


def test_D_example2_sublinear(rng):
    samples = certificates.sample_states(grid(99), rng, 20)
    spec = forcingspec("example2", k=1.0, tau=0.5)

    assert certificates.certify_hyp1_D_tau(spec, samples, 1.5).D == (
        pytest.approx(0.73115, rel=1e-4)
    )


def test_D_zero(rng):
    samples = certificates.sample_states(grid(49), rng, 5)
    result = certificates.certify_hyp1_D_tau(forcingspec("zero"), samples, 1.5)

    assert result.D == 0.0 and result.verdict.passed


def test_D_custom_is_empirical(rng):
    samples = certificates.sample_states(grid(49), rng, 10)
    spec = forcingspec(
        "custom",
        tau=1.0,
        custom_F=callbacks.restoring,
        custom_potential=callbacks.restoring_potential,
    )
    result = certificates.certify_hyp1_D_tau(spec, samples, 1.5)

    assert result.empirical and result.D > 0
    assert result.verdict.passed
    assert result.verdict.warnings


def test_D_rejects_positive_potential(rng):
    samples = certificates.sample_states(grid(49), rng, 5)
    spec = forcingspec(
        "custom",
        custom_F=callbacks.wrong_sign,
        custom_potential=callbacks.wrong_potential,
    )

    with pytest.raises(hypothesiserror):
        certificates.certify_hyp1_D_tau(spec, samples, 1.5)


def test_D_needs_potential(rng):
    with pytest.raises(functionalerror):
        certificates.certify_hyp1_D_tau(
            forcingspec("example1", b0=1.0), [], 1.5
        )


def test_hyp3_identity(lattice):
    sine = [state.sine_series([1.0], [], lattice)]
    check = certificates.check_hyp3(forcingspec("example2"), sine)

    assert check.passed
    assert check.details.minimum == pytest.approx(pi**2 / 2, rel=1e-4)
    assert check.details.identity[0] == pytest.approx(pi**2 / 2, rel=1e-3)


def test_hyp3_violated(lattice):
    sine = [state.sine_series([1.0], [], lattice)]
    spec = forcingspec("custom", custom_F=callbacks.wrong_sign)
    check = certificates.check_hyp3(spec, sine)

    assert not check.passed
    assert check.details.minimum == pytest.approx(-(pi**2) / 2, rel=1e-4)


def test_hyp3_random_sublinear(rng):
    samples = certificates.sample_states(grid(99), rng, 50)
    spec = forcingspec("example2", k=2.0, tau=0.3)

    assert certificates.check_hyp3(spec, samples).passed


@pytest.mark.parametrize("gamma", [0.6, 1.0, 2.0, 5.0])
@pytest.mark.parametrize("epsilon, c", [(0.5, 0.5), (0.5, 2.0), (1.0, 1.0),
                                        (2.0, 0.5), (2.0, 2.0)])
def test_sandwich_and_poincare(rng, gamma, epsilon, c):
    samples = certificates.sample_states(grid(199), rng, 200)
    check = certificates.check_sandwich_and_poincare(
        samples, gamma, pdeparams(epsilon, c**2)
    )

    assert check.passed
    assert set(check.details) == {"lower", "upper", "poincare1", "poincare2"}
    assert not check.warnings


def test_sandwich_zero_state(unit):
    check = certificates.check_sandwich_and_poincare(
        [state.zero(grid(3))], 1.0, unit
    )
    assert check.passed


def test_sandwich_retries_finer_grid(unit):
    samples = [state.sine_series([1.0], [0.5], grid(3))]
    check = certificates.check_sandwich_and_poincare(
        samples, 1.0, unit, tol_abs=-1e6
    )

    assert not check.passed
    assert check.details.refined == 15
    assert check.warnings[0].startswith("grid-resolution")


def test_W_bounds_and_schwarz(rng, unit):
    samples = certificates.sample_states(grid(99), rng, 50)
    spec = forcingspec("example2", k=1.0, tau=0.5)
    D = certificates.certify_hyp1_D_tau(spec, samples, 1.5).D
    constants = certificates.constants_thm2(unit, 1.5, D, 0.5)

    assert certificates.check_W_bounds(samples, constants, unit, spec).passed
    assert certificates.check_schwarz_chain(samples, 0.5).passed


def test_hyp1_along_trajectory(unit):
    spec = forcingspec("example1", b0=1 / 18)
    traj = simulator.simulate(
        state.sine_series([0.1], [], grid(49)),
        0.0,
        4.0,
        1e-3,
        unit,
        spec,
        observer(stride=10),
    )
    constants = certificates.constants_thm1(unit, 1.0)
    check = certificates.check_hyp1_along_trajectory(
        traj, lambda t, eta: 1.0, constants
    )

    assert check.passed and check.details.observations == 401

    check = certificates.check_hyp1_along_trajectory(
        traj, lambda t, eta: 0.0, constants
    )
    assert not check.passed and 1.5 < check.details.worst_t < 2.5


def test_hyp1_along_trajectory_small_state(unit):
    """
    At d^2 below 1e-2 the forcing energy A int f^2 ~ 2e-7 of the spike at
    t = 2 still fails g = 0.
    """
    traj = simulator.simulate(
        state.sine_series([1e-2], [], grid(49)),
        0.0,
        3.0,
        1e-3,
        unit,
        forcingspec("example1", b0=1 / 18),
        observer(stride=10),
    )
    constants = certificates.constants_thm1(unit, 1.0)
    check = certificates.check_hyp1_along_trajectory(
        traj, lambda t, eta: 0.0, constants
    )

    assert traj.column("d2").max() < 1e-2
    assert not check.passed and -1e-6 < check.margin < 0


def test_theorem1_zero_forcing(rng, unit):
    samples = certificates.sample_states(grid(49), rng, 10)
    report = certificates.theorem1(
        unit, forcingspec("zero"), analysis(), samples
    )

    assert report.passed and report.route == "forcing_bound"
    assert report.r_bar.at_boundary and report.r_bar.r_bar == 100
    assert report.attraction_radius == pytest.approx(
        (100 / 1.5) ** 0.5, rel=1e-6
    )
    assert report.envelope_params.rate == pytest.approx(1 / 18)
    assert report.envelope_params.prefactor == pytest.approx(24)


def test_theorem1_example1(rng, unit):
    samples = certificates.sample_states(grid(49), rng, 10)
    report = certificates.theorem1(
        unit, forcingspec("example1", b0=1 / 18), analysis(), samples
    )

    assert report.passed
    assert report.q.value == pytest.approx(1 / 18, rel=0.05)
    assert 0 < report.envelope_params.rate < 1 / 18


def test_theorem1_no_certificate(rng, unit):
    samples = certificates.sample_states(grid(49), rng, 10)
    report = certificates.theorem1(
        unit, forcingspec("example1", b0=0.2), analysis(), samples
    )
    failed = [i.name for i in report.hypothesis_verdicts if not i.passed]

    assert not report.passed and failed == ["hypothesis1"]
    assert report.envelope_params is None


def test_forcing_bound_example1(unit):
    spec = forcingspec("example1", b0=1 / 18)
    constants = certificates.constants_thm1(unit, 1.0)
    check = certificates.check_forcing_bound(
        spec,
        forcing.g_hat(spec),
        constants,
        [state.sine_series([a], [], grid(49)) for a in (0.01, 0.1, 1.0)],
        certificates.forcing_bound_times(spec, 0.0, 10.0),
    )

    assert check.passed and check.details.times == 4


def test_forcing_bound_soft_rod():
    """
    A / (1 + pi^2 + pi^4) > c1^2 at epsilon = 1/2: the spikes of example1
    outgrow b^2 c1^2 d^2 on the lowest mode.
    """
    params = pdeparams(0.5, 1.0)
    constants = certificates.constants_thm1(params, 1.0)
    samples = [state.sine_series([0.1], [], grid(49))]
    report = certificates.theorem1(
        params, forcingspec("example1", b0=0.03), analysis(), samples
    )
    failed = [i for i in report.hypothesis_verdicts if not i.passed]

    assert constants.A / (1 + pi**2 + pi**4) > constants.c1_sq
    assert not report.passed
    assert [i.name for i in failed] == ["hypothesis1_forcing_bound"]
    assert failed[0].details.worst_t in (2.0, 3.0, 4.0, 5.0)


def test_forcing_bound_times():
    spikes = certificates.forcing_bound_times(forcingspec("example1"), 2.5, 10)
    grid_times = certificates.forcing_bound_times(forcingspec("zero"), 1, 10)

    assert list(spikes) == [3.0, 4.0, 5.0, 6.0]
    assert grid_times[0] == 1 and grid_times[-1] == 11 and len(grid_times) == 41


def test_theorem1_without_growth_function(rng, unit):
    spec = forcingspec("custom", custom_f=callbacks.unit_damping)
    report = certificates.theorem1(unit, spec, analysis(), [])

    assert not report.passed
    assert report.hypothesis_verdicts[-1].name == "hypothesis1"


def test_theorem1_diverging_average(rng, unit):
    spec = forcingspec(
        "custom", custom_f=callbacks.offset, g_hat=callbacks.linear_growth
    )
    report = certificates.theorem1(unit, spec, analysis(), [])

    assert report.hypothesis_verdicts[-1].name == "q_convergence"
    assert not report.passed


def test_theorem2_example2(rng, unit):
    samples = certificates.sample_states(grid(99), rng, 20)
    spec = forcingspec("example2", k=1.0, tau=0.5)
    report = certificates.theorem2(unit, spec, analysis(), samples)
    names = [i.name for i in report.hypothesis_verdicts]

    assert report.passed and report.route == "potential"
    assert report.constants2.gamma == pytest.approx(1.5)
    assert report.constants2.regime == "algebraic"
    assert report.crossover_level == pytest.approx(0.1066, rel=1e-3)
    assert report.envelope_params.exponent == pytest.approx(3.0)
    assert {"hypothesis3", "schwarz_chain", "W_bounds"} <= set(names)


def test_theorem2_linear_is_exponential(rng, unit):
    samples = certificates.sample_states(grid(49), rng, 10)
    spec = forcingspec("example2", k=1.0, tau=1.0)
    report = certificates.theorem2(unit, spec, analysis(), samples)

    assert report.passed
    assert report.constants2.regime == "exponential"
    assert report.envelope_params.exponent is None


def test_theorem2_damping_violation(unit):
    spec = forcingspec("example2", a_inf=-2.0, a_sup=0.0)
    report = certificates.theorem2(unit, spec, analysis(), [])

    assert not report.passed
    assert report.hypothesis_verdicts[0].name == "damping_bound"


def test_theorem2_wrong_sign(rng, unit):
    samples = certificates.sample_states(grid(49), rng, 5)
    spec = forcingspec(
        "custom",
        custom_F=callbacks.wrong_sign,
        custom_potential=callbacks.wrong_potential,
    )
    report = certificates.theorem2(unit, spec, analysis(), samples)
    failed = {i.name for i in report.hypothesis_verdicts if not i.passed}

    assert failed == {"hypothesis3", "hypothesis1_potential"}
