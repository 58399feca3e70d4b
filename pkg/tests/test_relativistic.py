import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from infophys import quantum_core as qc
from infophys.errors import ValidationError
from infophys.relativistic import gas, kinematics as kin, lorentz4, spin
from infophys.relativistic.kinematics import Boost

unit_vectors = st.tuples(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1)).filter(
    lambda v: np.linalg.norm(v) > 0.1
)
momenta = st.tuples(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5))


def _wigner_angle_perpendicular(eta, xi):
    # Thomas-Wigner angle for a boost perpendicular to a momentum of rapidity eta
    return math.asin(math.sinh(eta) * math.sinh(xi) / (1 + math.cosh(eta) * math.cosh(xi)))


# --- kinematics -----------------------------------------------------------


def test_boost_validation_and_properties():
    b = Boost.from_beta(0.6)
    assert b.beta == pytest.approx(0.6, abs=1e-15)
    assert b.gamma == pytest.approx(1.25, abs=1e-14)
    assert Boost.along(1.0, (0, 3, 4)).axis == pytest.approx((0, 0.6, 0.8))
    with pytest.raises(ValidationError):
        Boost(-1.0)
    with pytest.raises(ValidationError):
        Boost(1.0, (1, 1, 0))
    with pytest.raises(ValidationError):
        Boost.from_beta(1.0)


def test_doppler_and_capacity():
    assert kin.doppler_factor(0.0) == 1.0
    assert kin.doppler_factor(0.6) == pytest.approx(0.5, abs=1e-15)
    assert kin.channel_capacity(1e6, 3.0) == pytest.approx(2e6, abs=1e-6)
    assert kin.channel_capacity(1e6, 3.0, alpha=0.0) == 0.0
    with pytest.raises(ValidationError):
        kin.channel_capacity(0.0, 1.0)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.0, 0.99), st.floats(0, 2 * math.pi))
def test_boosted_temperature(beta, theta):
    t = kin.boosted_temperature(2.0, beta, theta)
    assert kin.boosted_temperature(2.0, 0.0, theta) == pytest.approx(2.0, abs=1e-12)
    # bounded by the head-on blue shift and the tail-on red shift
    lo = 2.0 * math.sqrt((1 - beta) / (1 + beta))
    hi = 2.0 * math.sqrt((1 + beta) / (1 - beta))
    assert lo * (1 - 1e-12) <= t <= hi * (1 + 1e-12)
    assert kin.boosted_temperature(2.0, beta, math.pi / 2) == pytest.approx(2.0 * math.sqrt(1 - beta**2), abs=1e-12)


def test_unruh_temperature():
    assert kin.unruh_temperature(2 * math.pi) == pytest.approx(1.0, abs=1e-15)
    # about 4e-21 K per m/s^2
    assert kin.unruh_temperature(1.0, "SI") == pytest.approx(4.0552e-21, rel=1e-4)
    with pytest.raises(ValidationError):
        kin.unruh_temperature(1.0, "furlongs")


@settings(max_examples=60, deadline=None)
@given(st.floats(0, 3), unit_vectors, st.floats(0, 0.99), unit_vectors)
def test_velocity_addition_matches_four_vectors(xi, axis, speed, udir):
    b = Boost.along(xi, axis)
    u = speed * np.asarray(udir) / np.linalg.norm(udir)
    g = 1 / math.sqrt(1 - u @ u)
    four = lorentz4.boost_matrix(xi, -b.direction) @ np.concatenate([[g], g * u])
    np.testing.assert_allclose(kin.add_velocities(u, b), four[1:] / four[0], atol=1e-10)
    assert np.linalg.norm(kin.add_velocities(u, b)) < 1.0


# --- Wigner rotations ----------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(momenta, st.floats(0, 4), unit_vectors)
def test_spinor_rotation_matches_4x4(p, xi, axis):
    b = Boost.along(xi, axis)
    w = spin.wigner_rotation(p, 1.0, b)
    np.testing.assert_allclose(w @ w.conj().T, np.eye(2), atol=1e-10)
    assert np.linalg.det(w) == pytest.approx(1.0, abs=1e-10)
    r4 = lorentz4.wigner_rotation_4(p, 1.0, b)
    np.testing.assert_allclose(spin.spinor_to_rotation(w), r4, atol=1e-8)
    assert spin.spinor_rotation_angle(w) == pytest.approx(lorentz4.rotation_angle(r4), abs=1e-8)


@pytest.mark.parametrize("eta,xi", [(0.5, 0.5), (1.0, 2.0), (2.0, 0.3), (3.0, 3.0)])
def test_perpendicular_wigner_angle(eta, xi):
    p = (math.sinh(eta), 0.0, 0.0)
    w = spin.wigner_rotation(p, 1.0, Boost(xi, (0, 0, 1)))
    assert spin.spinor_rotation_angle(w) == pytest.approx(_wigner_angle_perpendicular(eta, xi), abs=1e-12)


def test_collinear_boost_has_no_rotation():
    w = spin.wigner_rotation((0, 0, 2.0), 1.0, Boost(1.5, (0, 0, 1)))
    np.testing.assert_allclose(w, np.eye(2), atol=1e-12)
    np.testing.assert_allclose(spin.boost_momenta([[0, 0, 0]], 1.0, Boost(1.0)), [[0, 0, math.sinh(1.0)]], atol=1e-14)


def test_batch_rotations_match_single():
    rng = np.random.default_rng(2)
    p = rng.normal(size=(20, 3))
    b = Boost.along(1.3, (1, 2, -1))
    ws = spin.wigner_rotations(p, 2.0, b)
    for k in range(20):
        np.testing.assert_allclose(ws[k], spin.wigner_rotation(p[k], 2.0, b), atol=1e-14)


# --- boosted states ------------------------------------------------------


def test_momentum_grid():
    g = spin.MomentumGrid(1.0, 0.5, points_per_axis=5)
    assert g.size == 125
    assert g.weights.sum() == pytest.approx(1.0, abs=1e-14)
    assert spin.MomentumGrid(1.0, 0.0).size == 1
    with pytest.raises(ValidationError):
        spin.MomentumGrid(0.0, 1.0)
    with pytest.warns(RuntimeWarning):
        spin.check_grid_resolution(g)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        spin.check_grid_resolution(spin.MomentumGrid(1.0, 0.5))


def test_boost_preserves_norm_and_purity():
    g = spin.MomentumGrid(1.0, 1.0, points_per_axis=5)
    s = spin.SpinMomentumState.product([1, 1j], g)
    out = spin.boost_state(s, Boost(1.5, (1, 0, 0)))
    assert np.linalg.norm(out.amplitudes) == pytest.approx(1.0, abs=1e-12)
    # a pure spin-momentum state: spin and momentum entropies coincide
    mom = qc.partial_trace(out.as_state_vector(), [1])
    assert spin.spin_entropy(out) == pytest.approx(qc.von_neumann_entropy(mom), abs=1e-9)
    assert spin.spin_entropy(s) == pytest.approx(0.0, abs=1e-12)
    assert spin.spin_entropy(out) > 1e-3


def test_plane_wave_stays_pure():
    s = spin.plane_wave_state([1, 0], (0.3, -1.0, 2.0))
    out = spin.boost_state(s, Boost(2.0, (0, 1, 0)))
    assert spin.spin_entropy(out) == pytest.approx(0.0, abs=1e-12)


def test_channel_route_matches_explicit():
    g = spin.MomentumGrid(1.0, 1.0, points_per_axis=5)
    b = Boost(2.0, (0, 0, 1))
    spins = qc.bell_state("psi-").amplitudes.reshape(2, 2)
    a = spin.boosted_pair_spin_density(spins, g, b, method="explicit").entries
    c = spin.boosted_pair_spin_density(spins, g, b, method="channel").entries
    np.testing.assert_allclose(a, c, atol=1e-12)
    with pytest.raises(ValidationError):
        spin.boosted_pair_spin_density(spins, g, b, method="magic")


def test_pair_concurrence_starts_at_one():
    with pytest.warns(RuntimeWarning, match="under-resolves"):
        c = spin.boosted_pair_concurrence(1.0, 0.0, grid_res=5, method="channel")
    assert c == pytest.approx(1.0, abs=1e-9)


def test_fig2_closed_form():
    for p in (0.5, 1.0, 3.0):
        assert spin.fig2_concurrence_analytic(p, 0.0) == 0.0
        assert spin.fig2_concurrence_analytic(p, 20.0) == pytest.approx(p * p / (1 + p * p), abs=1e-6)
        for xi in (0.5, 2.0):
            # equals sin^2 of the perpendicular Wigner angle
            ref = math.sin(_wigner_angle_perpendicular(math.asinh(p), xi)) ** 2
            assert spin.fig2_concurrence_analytic(p, xi) == pytest.approx(ref, abs=1e-12)
            assert spin.fig2_concurrence_numeric(p, xi) == pytest.approx(ref, abs=1e-6)
    with pytest.raises(ValidationError):
        spin.fig2_concurrence_analytic(-1.0, 1.0)


# --- gas mutual information ----------------------------------------------


def test_disk_quadrature_oracle():
    assert gas.disk_mi_quadrature() == pytest.approx(math.log(math.pi / math.e), abs=1e-10)
    assert gas.REST_DISK_MI == pytest.approx(0.144729885849, abs=1e-12)


def test_ksg_on_correlated_gaussians():
    rng = np.random.default_rng(0)
    for rho in (0.0, 0.6, 0.9):
        z = rng.normal(size=(20_000, 2))
        x = z[:, 0]
        y = rho * z[:, 0] + math.sqrt(1 - rho**2) * z[:, 1]
        assert gas.ksg_mutual_information(x, y) == pytest.approx(-0.5 * math.log(1 - rho**2), abs=0.02)


def test_histogram_cross_check_is_reasonable():
    rng = np.random.default_rng(1)
    z = rng.normal(size=(20_000, 2))
    y = 0.8 * z[:, 0] + 0.6 * z[:, 1]
    assert gas.histogram_mutual_information(z[:, 0], y) == pytest.approx(-0.5 * math.log(0.36), abs=0.1)


def test_gas_samples_and_validation():
    v = gas.sample_velocities(gas.GasSpec(samples=10_000))
    assert np.all(np.hypot(v[:, 0], v[:, 1]) < 0.9)
    assert np.all(v[:, 2] == 0)
    vx, vy = gas.boosted_velocities(gas.GasSpec(samples=10_000), Boost.from_beta(0.9, (1, 0, 0)))
    assert np.all(vx**2 + vy**2 < 1)
    with pytest.raises(ValidationError):
        gas.GasSpec(samples=10)
    with pytest.raises(ValidationError):
        gas.GasSpec(kind="plasma")
    with pytest.raises(ValidationError):
        gas.boosted_velocities(gas.GasSpec(samples=10_000), Boost(0.5, (0, 0, 1)))


def test_gas_mi_is_reproducible():
    spec = gas.GasSpec(samples=20_000, seed=4)
    assert gas.gas_mutual_info(spec) == gas.gas_mutual_info(spec)


def test_maxwell_components_independent():
    est = gas.gas_mutual_info(gas.GasSpec(kind="maxwell", samples=20_000, seed=3))
    assert abs(est.value) < 0.02
