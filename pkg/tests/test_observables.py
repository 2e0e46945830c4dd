import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_state
from sshh.errors import NumericError, PhaseMagnitudeWarning
from sshh.model import OBC, PBC, SSHHParams, SpinFilling
from sshh.observables import (angle_distance, berry_phase, charge_center,
                              edge_occupation, exact_report,
                              polarization_profile, position_weight,
                              position_weight_spin, reduced_filling,
                              sampled_report, z_exact, z_exact_spin, z_sampled)
from sshh.oracle import ground_state_sector
from sshh.simulator import ShotBatch, Statevector, basis_state, expectation_diagonal, sample
from sshh.stateprep import direct_slater, ground_state_spec


def test_reduced_filling():
    rf = reduced_filling(12, 6)
    assert (rf.n_tilde, rf.N_tilde) == (2, 1)
    rf = reduced_filling(14, 6)
    assert (rf.n_tilde, rf.N_tilde) == (7, 3)
    rf = reduced_filling(5, 3)
    assert (rf.n_tilde, rf.N_tilde) == (5, 3)
    with pytest.raises(NumericError):
        reduced_filling(0, 6)
    with pytest.raises(ValueError):
        reduced_filling(25, 6)


@given(st.integers(min_value=1, max_value=24), st.integers(min_value=1, max_value=6))
@settings(max_examples=30, deadline=None)
def test_reduced_filling_coprime(n, n_cells):
    if n > 4 * n_cells:
        return
    rf = reduced_filling(n, n_cells)
    assert math.gcd(rf.n_tilde, rf.N_tilde) == 1
    assert rf.n_tilde * n_cells == rf.N_tilde * n


def test_position_weight():
    assert position_weight(0, 6) == 0
    assert position_weight(0b11, 6) == 2
    assert position_weight((1 << 24) - 1, 6) == 84
    assert position_weight("1" * 24, 6) == 84
    assert position_weight_spin((1 << 24) - 1, 6, "up") == 42
    assert position_weight_spin((1 << 24) - 1, 6, "down") == 42
    with pytest.raises(ValueError):
        position_weight("101", 6)


def test_z_on_basis_state():
    n_cells = 3
    rf = reduced_filling(6, n_cells)
    index = 0b000000000111  # three up modes in cells 1, 1, 2
    state = basis_state(12, index)
    k = position_weight(index, n_cells)
    expected = cmath.exp(2j * math.pi * rf.N_tilde * k / n_cells)
    assert z_exact(state, rf, n_cells) == pytest.approx(expected, abs=1e-12)
    assert abs(z_exact(state, rf, n_cells)) == pytest.approx(1.0)


def test_z_exact_matches_expectation_diagonal(rng):
    n_cells = 2
    rf = reduced_filling(4, n_cells)
    state = random_state(rng, 8)
    brute = expectation_diagonal(
        state,
        lambda b: cmath.exp(2j * math.pi * rf.N_tilde
                            * position_weight(b, n_cells) / n_cells))
    assert z_exact(state, rf, n_cells) == pytest.approx(brute, abs=1e-10)
    brute_up = expectation_diagonal(
        state,
        lambda b: cmath.exp(2j * math.pi * rf.N_tilde
                            * position_weight_spin(b, n_cells, "up") / n_cells))
    assert z_exact_spin(state, rf, n_cells, "up") == pytest.approx(brute_up, abs=1e-10)


def test_z_magnitude_bounded(rng):
    rf = reduced_filling(4, 2)
    for _ in range(5):
        state = random_state(rng, 8)
        assert abs(z_exact(state, rf, 2)) <= 1 + 1e-12


def test_berry_phase_branch():
    assert berry_phase(1.0 + 0j) == 0.0
    assert berry_phase(-0.7 + 0j) == pytest.approx(math.pi)
    assert berry_phase(0.5j) == pytest.approx(math.pi / 2)
    with pytest.raises(NumericError):
        berry_phase(1e-7 + 0j)
    with pytest.warns(PhaseMagnitudeWarning):
        berry_phase(1e-4 + 0j)


def test_charge_center():
    assert charge_center(1.0 + 0j, 6, reduced_filling(12, 6)) == 0.0
    assert charge_center(-1.0 + 0j, 6, reduced_filling(12, 6)) == pytest.approx(3.0)
    rf = reduced_filling(14, 6)  # N_tilde = 3
    assert charge_center(cmath.exp(1j * math.pi / 2), 6, rf) == pytest.approx(0.5)


def test_angle_distance():
    assert angle_distance(math.pi, -math.pi) == pytest.approx(0.0)
    assert angle_distance(0.1, -0.1) == pytest.approx(0.2)
    assert angle_distance(3.1, -3.1) == pytest.approx(2 * math.pi - 6.2)


def test_z_sampled_single_bitstring():
    batch = ShotBatch(10, {"1100" + "0" * 4: 10}, seed=0, num_qubits=8)
    rf = reduced_filling(2, 2)
    z_bar, se = z_sampled(batch, rf, 2)
    assert abs(z_bar) == pytest.approx(1.0)
    assert se == (0.0, 0.0)
    single = ShotBatch(1, {"11000000": 1}, seed=0, num_qubits=8)
    z1, se1 = z_sampled(single, rf, 2)
    assert abs(z1) == pytest.approx(1.0)
    assert se1 is None


def test_z_sampled_converges_to_exact(rng):
    # |z_bar - z| <= 5 SE for most seeds on a fixed random state
    state = random_state(rng, 12)
    rf = reduced_filling(6, 3)  # third-root phases: both components vary
    exact = z_exact(state, rf, 3)
    hits = 0
    for seed in range(20):
        batch = sample(state, 20_000, seed=seed)
        z_bar, (se_re, se_im) = z_sampled(batch, rf, 3)
        if (abs(z_bar.real - exact.real) <= 5 * se_re + 1e-12
                and abs(z_bar.imag - exact.imag) <= 5 * se_im + 1e-12):
            hits += 1
    assert hits >= 19


def test_gamma_estimator_improves_with_shots(rng):
    state = random_state(rng, 8)
    rf = reduced_filling(4, 2)
    gamma_exact = berry_phase(z_exact(state, rf, 2))
    medians = []
    for shots in (1_000, 10_000, 100_000):
        errs = []
        for seed in range(20):
            z_bar, _ = z_sampled(sample(state, shots, seed=seed), rf, 2)
            errs.append(angle_distance(berry_phase(z_bar), gamma_exact))
        medians.append(np.median(errs))
    assert medians[2] < medians[1] < medians[0]


def test_polarization_identities(rng):
    # sum_j p_j equals total n_A - n_B for any state
    from sshh.observables import qubit_occupations

    state = random_state(rng, 8)
    pol = polarization_profile(state, 2)
    occ = qubit_occupations(state)
    n_a = occ[0] + occ[2] + occ[4] + occ[6]
    n_b = occ[1] + occ[3] + occ[5] + occ[7]
    assert sum(pol) == pytest.approx(n_a - n_b, abs=1e-10)
    assert all(-2 - 1e-9 <= p <= 2 + 1e-9 for p in pol)


def test_polarization_sampled_matches_exact(rng):
    state = random_state(rng, 8)
    exact = polarization_profile(state, 2)
    means, ses = polarization_profile(sample(state, 200_000, seed=3), 2)
    for m, s, e in zip(means, ses, exact):
        assert abs(m - e) <= 5 * max(s, 1e-4)


def test_edge_occupation_limits():
    assert edge_occupation(basis_state(8, 0), 2) == 0.0
    assert edge_occupation(basis_state(8, 0xFF), 2) == pytest.approx(8.0)
    batch = ShotBatch(4, {"11111111": 4}, seed=0, num_qubits=8)
    assert edge_occupation(batch, 2) == pytest.approx(8.0)


def test_half_filled_ground_state_unpolarized():
    p = SSHHParams(N=3, v=1.0, w=1.5, U_A=0.2, U_B=0.2, boundary=PBC)
    gs = ground_state_sector(p, SpinFilling(3, 3), 1.0)
    pol = polarization_profile(gs.state, 3)
    assert max(abs(x) for x in pol) < 1e-8


def test_obc_edge_polarization_sign_via_oracle():
    # n = 2N + 2 with strong intercell dimerization: left cell A-polarized,
    # right cell B-polarized; this pins the sign convention for N = 6 runs.
    p = SSHHParams(N=3, v=0.1, w=1.0, boundary=OBC)
    gs = ground_state_sector(p, SpinFilling(4, 4), 0.0)
    pol = polarization_profile(gs.state, 3)
    assert pol[0] > 0.9
    assert pol[-1] < -0.9
    assert abs(pol[1]) < 0.1


def test_edge_occupation_staircase_via_oracle():
    p = SSHHParams(N=3, v=0.1, w=1.0, boundary=OBC)
    spec_low, _ = ground_state_spec(p, SpinFilling(2, 2))  # n = 2N - 2
    spec_high, _ = ground_state_spec(p, SpinFilling(4, 4))  # n = 2N + 2
    low = edge_occupation(direct_slater(spec_low), 3)
    high = edge_occupation(direct_slater(spec_high), 3)
    assert high - low >= 1.5


def test_exact_report_fields(rng):
    p = SSHHParams(N=2, v=1.0, w=1.5, boundary=PBC)
    spec, _ = ground_state_spec(p, SpinFilling(2, 2))
    state = direct_slater(spec)
    report = exact_report(state, 2, 4)
    assert report.shots == 0
    assert report.std_errors is None
    assert report.z_magnitude == pytest.approx(abs(report.z_bar))
    assert len(report.polarization) == 2
    assert report.z_spin_bar is not None


def test_sampled_report_fields(rng):
    state = random_state(rng, 8)
    batch = sample(state, 5_000, seed=11)
    report = sampled_report(batch, 2, 4)
    assert report.shots == 5_000
    assert set(report.std_errors) == {"z_re", "z_im", "gamma", "polarization"}
