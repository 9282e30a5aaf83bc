"""Tests for the dynamics module: forces, first integrals, integrator."""

import math

import numpy as np
import pytest
from conftest import SEED, random_states

from curvedkepler import DomainError
from curvedkepler.dynamics import (
    ConservedSet,
    KeplerParams,
    Momenta,
    PhaseState,
    circular_state,
    energy,
    eom_rhs,
    gauss_law_flux,
    integrate,
    integrate_separable,
    kepler_potential,
    kepler_potential_gradient,
    killing_fields,
    kinetic_energy,
    momenta,
    runge_lenz,
    separable_integrals,
)
from curvedkepler.errors import InfeasibleError, SingularityError
from curvedkepler.geometry import PolarPoint
from curvedkepler.ktrig import cos_k, sin_k

FOUR_PI = 12.566370614359172  # 4*pi
EIGHT_PI = 25.132741228718345

REGIMES = [1.0, 0.0, -1.0]


# ----------------------------------------------------------------------
# potential and flux
# ----------------------------------------------------------------------


def test_potential_flat_value():
    assert kepler_potential(KeplerParams(0.0, 1.0), 2.0) == -0.5


def test_potential_equator_is_exact_zero():
    assert kepler_potential(KeplerParams(1.0, 1.0), math.pi / 2) == 0.0
    # same with a rescaled curvature
    assert kepler_potential(KeplerParams(4.0, 2.0), math.pi / 4) == 0.0


def test_potential_hyperbolic_plateau():
    # -coth(20) differs from -1 by about 4e-18
    u = kepler_potential(KeplerParams(-1.0, 1.0), 20.0)
    assert abs(u - (-1.0)) < 1e-15


def test_potential_center_raises():
    with pytest.raises(SingularityError):
        kepler_potential(KeplerParams(1.0, 1.0), 0.0)
    with pytest.raises(SingularityError):
        kepler_potential(KeplerParams(-1.0, 1.0), -0.3)


def test_potential_outside_chart_raises():
    with pytest.raises(DomainError):
        kepler_potential(KeplerParams(1.0, 1.0), math.pi)


def test_gradient_matches_finite_differences(rng):
    h = 1e-6
    for kappa in REGIMES:
        params = KeplerParams(kappa, 1.7)
        for state in random_states(kappa, 25, rng, r_lo=0.3, r_hi=3.0):
            r = state.r
            fd = (
                kepler_potential(params, r + h) - kepler_potential(params, r - h)
            ) / (2 * h)
            grad = kepler_potential_gradient(params, r)
            assert abs(grad - fd) < 1e-7 * max(1.0, abs(grad))


def test_flux_examples():
    sphere = KeplerParams(1.0, 1.0)
    assert gauss_law_flux(sphere, 0.3) == pytest.approx(FOUR_PI, abs=1e-12)
    assert gauss_law_flux(sphere, 1.2) == pytest.approx(FOUR_PI, abs=1e-12)
    assert gauss_law_flux(KeplerParams(0.0, 2.0), 5.0) == pytest.approx(
        EIGHT_PI, abs=1e-12
    )
    assert gauss_law_flux(KeplerParams(-1.0, 1.0), 3.0) == pytest.approx(
        FOUR_PI, abs=1e-12
    )


def test_flux_is_radius_independent(rng):
    for kappa in REGIMES:
        params = KeplerParams(kappa, 0.37)
        target = FOUR_PI * 0.37
        for state in random_states(kappa, 50, rng):
            assert gauss_law_flux(params, state.r) == pytest.approx(
                target, rel=1e-12
            )


# ----------------------------------------------------------------------
# equations of motion
# ----------------------------------------------------------------------


def test_eom_circular_orbit_has_no_radial_force():
    for kappa, k, j in [(1.0, 1.0, 1.0), (0.0, 1.0, 1.0), (-1.0, 4.0, 1.0)]:
        params = KeplerParams(kappa, k)
        state = circular_state(params, j)
        rhs = eom_rhs(state, params)
        scale = max(1.0, kepler_potential_gradient(params, state.r))
        assert abs(rhs[2]) < 1e-11 * scale
        assert rhs[3] == 0.0


def test_eom_pure_radial_motion():
    params = KeplerParams(-1.0, 2.0)
    state = PhaseState(r=0.7, phi=1.1, v_r=-0.9, v_phi=0.0)
    rhs = eom_rhs(state, params)
    assert rhs[0] == state.v_r
    assert rhs[2] == -kepler_potential_gradient(params, state.r)
    assert rhs[3] == 0.0


def test_eom_flat_reduction():
    params = KeplerParams(0.0, 1.3)
    state = PhaseState(r=1.7, phi=0.4, v_r=0.5, v_phi=-0.8)
    rhs = eom_rhs(state, params)
    assert rhs[0] == state.v_r
    assert rhs[1] == state.v_phi
    assert rhs[2] == pytest.approx(
        state.r * state.v_phi**2 - params.k / state.r**2, rel=1e-15
    )
    assert rhs[3] == pytest.approx(
        -2.0 * state.v_r * state.v_phi / state.r, rel=1e-15
    )


def test_eom_center_raises():
    params = KeplerParams(1.0, 1.0)
    with pytest.raises(SingularityError):
        eom_rhs(PhaseState(0.0, 0.0, 1.0, 0.0), params)


def test_eom_radial_force_is_effective_gradient(rng):
    # f_r must equal -d/dr [ j^2 / (2 sin_k(r)^2) + U(r) ] at frozen j
    h = 1e-6
    for kappa in REGIMES:
        params = KeplerParams(kappa, 1.9)
        for state in random_states(kappa, 30, rng, r_lo=0.3, v_max=2.0, r_hi=3.0):
            j = sin_k(kappa, state.r) ** 2 * state.v_phi

            def w(r):
                s = sin_k(kappa, r)
                return 0.5 * j * j / (s * s) + kepler_potential(params, r)

            fd = -(w(state.r + h) - w(state.r - h)) / (2 * h)
            assert abs(eom_rhs(state, params)[2] - fd) < 1e-7


# ----------------------------------------------------------------------
# momenta, energy, Runge-Lenz
# ----------------------------------------------------------------------


def test_momenta_at_rest():
    assert momenta(1.0, PhaseState(0.5, 2.0, 0.0, 0.0)) == Momenta(0.0, 0.0, 0.0)


def test_momenta_flat_example():
    mom = momenta(0.0, PhaseState(r=1.0, phi=0.0, v_r=1.0, v_phi=0.0))
    assert (mom.p1, mom.p2, mom.j) == (1.0, 0.0, 0.0)


def test_momenta_kinetic_identity(rng):
    # 2T = p1^2 + p2^2 + kappa j^2; tolerance scales with the dominant
    # term because the hyperbolic factors cancel almost exactly
    for kappa in REGIMES:
        for state in random_states(kappa, 10_000, rng):
            mom = momenta(kappa, state)
            lhs = mom.p1**2 + mom.p2**2 + kappa * mom.j**2
            rhs = 2.0 * kinetic_energy(kappa, state)
            scale = max(1.0, mom.p1**2 + mom.p2**2, abs(kappa) * mom.j**2)
            assert abs(lhs - rhs) <= 1e-12 * scale


def test_energy_rest_at_equator_is_zero():
    params = KeplerParams(1.0, 1.0)
    state = PhaseState(r=math.pi / 2, phi=0.0, v_r=0.0, v_phi=0.0)
    assert energy(state, params) == 0.0


def test_energy_flat_circular():
    params = KeplerParams(0.0, 1.0)
    state = circular_state(params, 1.0)
    assert state.r == 1.0
    assert energy(state, params) == -0.5


def test_energy_hyperbolic_circular():
    # E_cir = -(k^2/j^2 - kappa j^2)/2 = -(16 + 1)/2
    params = KeplerParams(-1.0, 4.0)
    state = circular_state(params, 1.0)
    assert energy(state, params) == pytest.approx(-8.5, abs=1e-12)


def test_energy_circular_formula_all_regimes(rng):
    for kappa in REGIMES:
        for _ in range(20):
            k = rng.uniform(0.5, 4.0)
            j_top = (k / math.sqrt(-kappa)) ** 0.5 if kappa < 0 else 2.5
            j = rng.uniform(0.2, 0.95 * j_top)
            params = KeplerParams(kappa, k)
            state = circular_state(params, j)
            expected = -0.5 * (k * k / (j * j) - kappa * j * j)
            assert energy(state, params) == pytest.approx(expected, rel=1e-12)


def test_energy_custom_potential():
    state = PhaseState(r=2.0, phi=0.0, v_r=1.0, v_phi=0.0)
    params = KeplerParams(0.0, 1.0)
    assert energy(state, params, potential=lambda r: 0.0) == 0.5


def test_runge_lenz_radial_state():
    params = KeplerParams(-1.0, 2.5)
    state = PhaseState(r=0.8, phi=0.0, v_r=1.2, v_phi=0.0)
    assert runge_lenz(-1.0, state, params) == (-2.5, 0.0)


def test_runge_lenz_vanishes_on_circular_orbits():
    for kappa, k, j in [(1.0, 1.0, 1.0), (0.0, 1.0, 1.2), (-1.0, 4.0, 1.0)]:
        params = KeplerParams(kappa, k)
        state = circular_state(params, j, phi=0.7)
        i3, i4 = runge_lenz(kappa, state, params)
        assert i3 * i3 + i4 * i4 < 1e-11 * k * k


def test_runge_lenz_norm_identity(rng):
    # i3^2 + i4^2 = 2 e_p j^2 + k^2
    for kappa in REGIMES:
        params = KeplerParams(kappa, 1.4)
        for state in random_states(kappa, 300, rng):
            c = ConservedSet.from_state(state, params)
            lhs = c.i3**2 + c.i4**2
            rhs = 2.0 * c.e_p * c.j**2 + params.k**2
            scale = max(1.0, abs(lhs), abs(2.0 * c.e_p * c.j**2))
            assert abs(lhs - rhs) <= 1e-11 * scale


def test_conserved_set_partial_energy_relation(rng):
    for kappa in REGIMES:
        params = KeplerParams(kappa, 2.0)
        for state in random_states(kappa, 50, rng):
            c = ConservedSet.from_state(state, params)
            assert c.e_p == pytest.approx(
                c.e - 0.5 * kappa * c.j**2, rel=1e-14, abs=1e-14
            )


# ----------------------------------------------------------------------
# Killing fields
# ----------------------------------------------------------------------


def test_killing_rotation_field_is_constant(rng):
    for kappa in REGIMES:
        for state in random_states(kappa, 10, rng):
            _, _, yj = killing_fields(kappa, PolarPoint(state.r, state.phi))
            assert yj == (0.0, 1.0)


def test_killing_flat_translation_on_axis():
    y1, _, _ = killing_fields(0.0, PolarPoint(2.0, 0.0))
    assert y1 == (1.0, 0.0)


def test_killing_center_raises():
    with pytest.raises(SingularityError):
        killing_fields(1.0, PolarPoint(0.0, 0.3))


def _field(kappa, idx):
    def f(r, phi):
        return np.asarray(killing_fields(kappa, PolarPoint(r, phi))[idx])

    return f


def _fd_bracket(fx, fy, r, phi, h=1e-6):
    def jac(f):
        return np.column_stack(
            [
                (f(r + h, phi) - f(r - h, phi)) / (2 * h),
                (f(r, phi + h) - f(r, phi - h)) / (2 * h),
            ]
        )

    x, y = fx(r, phi), fy(r, phi)
    return jac(fy) @ x - jac(fx) @ y


def test_killing_field_brackets(rng):
    # the algebra of isometries: [y1,y2] = -kappa yj, and the rotation
    # turns one translation-like field into the other, [yj,y1] = -y2,
    # [yj,y2] = y1.  (This argument order is the one under which all
    # three relations close with the standard commutator; check the
    # flat case y1=d/dx, y2=d/dy, yj=x d/dy - y d/dx by hand.)
    for kappa in REGIMES:
        y1, y2, yj = (_field(kappa, i) for i in range(3))
        for state in random_states(kappa, 15, rng, r_lo=0.3, r_hi=3.0):
            r, phi = state.r, state.phi
            np.testing.assert_allclose(
                _fd_bracket(y1, y2, r, phi),
                -kappa * yj(r, phi),
                atol=1e-6,
            )
            np.testing.assert_allclose(
                _fd_bracket(yj, y1, r, phi), -y2(r, phi), atol=1e-6
            )
            np.testing.assert_allclose(
                _fd_bracket(yj, y2, r, phi), y1(r, phi), atol=1e-6
            )


# ----------------------------------------------------------------------
# separable integrals
# ----------------------------------------------------------------------


def test_separable_no_angular_part_reduces_to_j_squared(rng):
    for kappa in REGIMES:
        for state in random_states(kappa, 30, rng):
            _, i2 = separable_integrals(
                kappa, state, f=lambda r: 0.0, g=lambda p: 0.0
            )
            assert i2 == momenta(kappa, state).j ** 2


def test_separable_kepler_gives_partial_energy(rng):
    for kappa in REGIMES:
        params = KeplerParams(kappa, 1.8)

        def f(r):
            return -params.k * cos_k(kappa, r) / sin_k(kappa, r)

        for state in random_states(kappa, 100, rng):
            i1, i2 = separable_integrals(kappa, state, f, lambda p: 0.0)
            c = ConservedSet.from_state(state, params)
            scale = max(1.0, abs(i1), abs(kappa) * i2)
            assert abs(i1 - 2.0 * c.e_p) <= 1e-11 * scale
            # energy split 2E = i1 + kappa i2
            assert abs(i1 + kappa * i2 - 2.0 * c.e) <= 1e-11 * scale


def test_separable_center_raises():
    with pytest.raises(SingularityError):
        separable_integrals(
            1.0,
            PhaseState(0.0, 0.0, 1.0, 1.0),
            f=lambda r: 0.0,
            g=lambda p: 0.0,
        )


# ----------------------------------------------------------------------
# integrator
# ----------------------------------------------------------------------


def test_integrate_circular_orbit_radius_fixed():
    for kappa, k, j in [(1.0, 1.0, 1.0), (0.0, 1.0, 1.0), (-1.0, 4.0, 1.0)]:
        params = KeplerParams(kappa, k)
        state = circular_state(params, j)
        period = 2.0 * math.pi / state.v_phi
        traj = integrate(state, params, period, tol=1e-11)
        rs = traj.states[:, 0]
        assert np.abs(rs - state.r).max() < 1e-9 * state.r


def test_integrate_radial_drop_collides():
    params = KeplerParams(-1.0, 4.0)
    state = PhaseState(r=1.0, phi=0.0, v_r=0.0, v_phi=0.0)
    traj = integrate(state, params, 10.0, tol=1e-9)
    assert traj.event == "collision"
    assert traj.event_time is not None and 0.0 < traj.event_time < 10.0
    rs = traj.states[:, 0]
    assert np.all(np.diff(rs) < 0.0)
    assert np.all(np.diff(traj.times) > 0.0)


def test_integrate_flat_radial_drop_collides():
    params = KeplerParams(0.0, 1.0)
    state = PhaseState(r=0.5, phi=1.0, v_r=0.0, v_phi=0.0)
    traj = integrate(state, params, 5.0, tol=1e-9)
    assert traj.event == "collision"
    assert np.all(np.diff(traj.states[:, 0]) < 0.0)


def test_integrate_spherical_orbit_closes():
    # kappa=1, k=1, j=1, bound eccentricity: one angular turn must land
    # back on the initial state
    params = KeplerParams(1.0, 1.0)
    state = PhaseState(r=math.pi / 4, phi=0.0, v_r=0.3, v_phi=2.0)
    traj = integrate(state, params, 10.0, tol=1e-11)
    t_star = traj.first_crossing(lambda t, s: s.phi - (state.phi + 2.0 * math.pi))
    assert t_star is not None
    back = traj.state_at(t_star)
    assert abs(back.r - state.r) < 1e-7
    assert abs(back.v_r - state.v_r) < 1e-7
    assert abs(back.v_phi - state.v_phi) < 1e-7
    assert abs(back.phi - (state.phi + 2.0 * math.pi)) < 1e-7


def _radial_period(state, params):
    traj = integrate(state, params, 50.0, tol=1e-9)
    crossings = []
    t_lo = 1e-3
    while len(crossings) < 3:
        t = traj.first_crossing(lambda tt, s: s.v_r, t_lo=t_lo)
        assert t is not None, "no radial turning point found in 50 time units"
        crossings.append(t)
        t_lo = t + 1e-3
    return crossings[2] - crossings[0]


DRIFT_CASES = [
    (1.0, 1.0, PhaseState(0.9, 0.0, 0.1, 1.2)),
    (0.0, 1.0, PhaseState(1.0, 0.0, 0.2, 1.05)),
    (-1.0, 4.0, PhaseState(0.8, 0.3, 0.4, 1.9)),
]


@pytest.mark.parametrize("kappa,k,state", DRIFT_CASES)
def test_integrate_conserved_drift_ten_radial_periods(kappa, k, state):
    params = KeplerParams(kappa, k)
    t_span = 10.0 * _radial_period(state, params)
    traj = integrate(state, params, t_span, tol=1e-11, dense=False)
    assert traj.event is None
    before = ConservedSet.from_state(state, params)
    after = ConservedSet.from_state(traj.final_state(), params)
    for name in ("e", "j", "i3", "i4"):
        a, b = getattr(before, name), getattr(after, name)
        assert abs(b - a) < 1e-9 * max(1.0, abs(a)), name


def test_integrate_dense_matches_nodes():
    params = KeplerParams(1.0, 1.0)
    state = PhaseState(0.9, 0.0, 0.1, 1.2)
    traj = integrate(state, params, 5.0, tol=1e-9)
    mid = len(traj) // 2
    node = traj.state_at(float(traj.times[mid]))
    np.testing.assert_allclose(
        [node.r, node.phi, node.v_r, node.v_phi],
        traj.states[mid],
        rtol=0.0,
        atol=1e-13,
    )
    samples = traj.sample(np.linspace(0.5, 4.5, 7))
    assert samples.shape == (7, 4)
    assert np.all(np.isfinite(samples))


def test_integrate_dense_interpolant_accuracy():
    # interpolated mid-step states must satisfy energy conservation far
    # below the interpolant's formal order
    params = KeplerParams(-1.0, 4.0)
    state = PhaseState(0.8, 0.3, 0.4, 1.9)
    traj = integrate(state, params, 3.0, tol=1e-11)
    e0 = energy(state, params)
    for t in np.linspace(0.01, 2.99, 40):
        e = energy(traj.state_at(float(t)), params)
        assert abs(e - e0) < 1e-8 * max(1.0, abs(e0))


def test_integrate_validates_tolerance_and_span():
    params = KeplerParams(0.0, 1.0)
    state = PhaseState(1.0, 0.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        integrate(state, params, 1.0, tol=1e-5)
    with pytest.raises(DomainError):
        integrate(state, params, 1.0, tol=1e-14)
    with pytest.raises(DomainError):
        integrate(state, params, 0.0)
    with pytest.raises(DomainError):
        integrate(state, params, -2.0)


def test_integrate_without_dense_blocks_queries():
    params = KeplerParams(0.0, 1.0)
    state = PhaseState(1.0, 0.0, 0.0, 1.0)
    traj = integrate(state, params, 1.0, dense=False)
    with pytest.raises(DomainError):
        traj.state_at(0.5)
    with pytest.raises(DomainError):
        traj.first_crossing(lambda t, s: s.v_r)


SEPARABLE_CASES = [
    (1.0, 1.0, PhaseState(0.9, 0.0, 0.1, 1.2)),
    (0.0, 1.0, PhaseState(1.0, 0.0, 0.2, 1.05)),
    (-1.0, 4.0, PhaseState(0.8, 0.3, 0.4, 1.9)),
]


@pytest.mark.parametrize("kappa,k,state", SEPARABLE_CASES)
def test_integrate_separable_conserves_split_integrals(kappa, k, state):
    g_amp = 0.1

    def f(r):
        return -k * cos_k(kappa, r) / sin_k(kappa, r)

    def df(r):
        return k / sin_k(kappa, r) ** 2

    def g(phi):
        return g_amp * math.cos(phi) ** 2

    def dg(phi):
        return -g_amp * math.sin(2.0 * phi)

    traj = integrate_separable(kappa, state, f, df, g, dg, 20.0, tol=1e-11)
    assert traj.event is None
    i1_0, i2_0 = separable_integrals(kappa, state, f, g)
    i1_1, i2_1 = separable_integrals(kappa, traj.final_state(), f, g)
    assert abs(i1_1 - i1_0) < 1e-9 * max(1.0, abs(i1_0))
    assert abs(i2_1 - i2_0) < 1e-9 * max(1.0, abs(i2_0))


# ----------------------------------------------------------------------
# types and helpers
# ----------------------------------------------------------------------


def test_phase_state_requires_finite_fields():
    with pytest.raises(DomainError):
        PhaseState(math.nan, 0.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        PhaseState(1.0, 0.0, math.inf, 0.0)


def test_params_require_attractive_coupling():
    with pytest.raises(DomainError):
        KeplerParams(0.0, 0.0)
    with pytest.raises(DomainError):
        KeplerParams(0.0, -1.0)
    assert KeplerParams(1, 2).kappa == 1.0


def test_circular_state_needs_angular_momentum():
    with pytest.raises(InfeasibleError):
        circular_state(KeplerParams(0.0, 1.0), 0.0)


def test_circular_state_hyperbolic_escape_threshold():
    # at kappa=-1, k=1 the circular family ends at j^2 = 1
    with pytest.raises(DomainError):
        circular_state(KeplerParams(-1.0, 1.0), 1.0)
    state = circular_state(KeplerParams(-1.0, 1.0), 0.95)
    assert state.r > 0.0
