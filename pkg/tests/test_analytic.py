import math

import numpy as np
import pytest

from qstsim import (
    AnalyticInputs,
    analytic_rho,
    nojump_amplitudes,
    physicality_violations,
    transfer_amplitudes,
)


def random_inputs(rng):
    alpha = rng.uniform(0.05, 0.95)
    phase = rng.uniform(0, 2 * math.pi)
    beta = math.sqrt(1 - alpha**2) * np.exp(1j * phase)
    return AnalyticInputs(
        alpha=alpha,
        beta=beta,
        p=rng.uniform(0, 0.95),
        s=rng.uniform(0, 2.0),
        g1=rng.uniform(0.2, 2.0),
        g2=rng.uniform(0.2, 2.0),
    )


def nojump_rho(inputs, t):
    """Independent assembly: outer product of the no-jump branch plus the
    jump deficit parked on the ground population."""
    psi = nojump_amplitudes(inputs, t)
    rho = np.outer(psi, psi.conj())
    rho[0, 0] += 1.0 - np.vdot(psi, psi).real
    return rho


def test_initial_state_matches_post_measurement_form():
    inputs = AnalyticInputs(alpha=0.6, beta=0.8, p=0.5, s=0.7, g1=1.0, g2=1.3)
    rho = analytic_rho(inputs, 0.0)
    np.testing.assert_allclose(rho[0, 0], inputs.a, atol=1e-15)
    np.testing.assert_allclose(rho[1, 1], inputs.b, atol=1e-15)
    np.testing.assert_allclose(rho[0, 1], inputs.c, atol=1e-15)
    # nothing has reached the resonator or qubit 2 yet
    assert np.all(rho[2:, :] == 0) and np.all(rho[:, 2:] == 0)


def test_full_transfer_point():
    # lossless, balanced couplings: at rt = pi the excitation sits on qubit 2
    # with amplitude -1 (c2 = c3 = 0, c4 = -1)
    inv = 1 / math.sqrt(2)
    inputs = AnalyticInputs(alpha=inv, beta=inv, p=0.0, s=0.0, g1=1.0, g2=1.0)
    t = math.pi / math.sqrt(2)
    rho = analytic_rho(inputs, t)
    np.testing.assert_allclose(rho[3, 3], 0.5, atol=1e-12)
    np.testing.assert_allclose(rho[1, 1], 0.0, atol=1e-12)
    np.testing.assert_allclose(rho[2, 2], 0.0, atol=1e-12)
    np.testing.assert_allclose(rho[0, 3], -0.5, atol=1e-12)


def test_transfer_amplitudes_at_pi():
    c2, c3, c4 = transfer_amplitudes(1.0, 1.0, math.pi / math.sqrt(2))
    np.testing.assert_allclose([c2, c3, c4], [0.0, 0.0, -1.0], atol=1e-12)


def test_trace_is_one():
    rng = np.random.default_rng(42)
    for _ in range(30):
        inputs = random_inputs(rng)
        t = rng.uniform(0, 15)
        assert abs(np.trace(analytic_rho(inputs, t)) - 1.0) < 1e-12


def test_printed_entry_forms():
    """The expanded per-entry expressions (half-angle brackets in the excited
    sector) must agree with the amplitude-product assembly entrywise."""
    rng = np.random.default_rng(3)
    for _ in range(25):
        inputs = random_inputs(rng)
        t = rng.uniform(0, 12)
        g1, g2, s = inputs.g1, inputs.g2, inputs.s
        a, b, c = inputs.a, inputs.b, inputs.c
        r = inputs.r
        rt = r * t
        e = math.exp(-s * t)
        eh = math.exp(-s * t / 2)
        expected = np.empty((4, 4), dtype=complex)
        expected[0, 0] = 1 + (a - 1) * e
        expected[0, 1] = c / r**2 * (g1**2 * math.cos(rt) + g2**2) * eh
        expected[0, 2] = 1j * c * g1 / r * math.sin(rt) * eh
        expected[0, 3] = c * g1 * g2 / r**2 * (math.cos(rt) - 1) * eh
        expected[1, 1] = (
            b / (2 * r**4)
            * (g1**4 + 2 * g2**4 + g1**4 * math.cos(2 * rt) + 4 * g1**2 * g2**2 * math.cos(rt))
            * e
        )
        expected[1, 2] = (
            1j * b * g1 / (2 * r**3)
            * (g1**2 * math.sin(2 * rt) + 2 * g2**2 * math.sin(rt))
            * e
        )
        expected[1, 3] = (
            b * g1 * g2 / (2 * r**4)
            * (g1**2 - 2 * g2**2 + 2 * (g2**2 - g1**2) * math.cos(rt) + g1**2 * math.cos(2 * rt))
            * e
        )
        expected[2, 2] = b * g1**2 / (2 * r**2) * (1 - math.cos(2 * rt)) * e
        expected[2, 3] = (
            1j * b * g1**2 * g2 / (2 * r**3) * (2 * math.sin(rt) - math.sin(2 * rt)) * e
        )
        expected[3, 3] = (
            b * g1**2 * g2**2 / (2 * r**4) * (math.cos(2 * rt) - 4 * math.cos(rt) + 3) * e
        )
        for i in range(4):
            for j in range(i):
                expected[i, j] = np.conj(expected[j, i])
        np.testing.assert_allclose(analytic_rho(inputs, t), expected, atol=1e-13)


def test_nojump_initial_amplitudes():
    inputs = AnalyticInputs(alpha=0.6, beta=0.8, p=0.36, s=1.1, g1=0.9, g2=1.4)
    psi = nojump_amplitudes(inputs, 0.0)
    n1 = math.sqrt(inputs.n1_sq)
    np.testing.assert_allclose(psi[0], 0.6 / n1, atol=1e-14)
    np.testing.assert_allclose(psi[1], 0.8 * math.sqrt(1 - 0.36) / n1, atol=1e-14)
    np.testing.assert_allclose(psi[2:], 0, atol=1e-14)


def test_nojump_unit_norm_without_decay():
    rng = np.random.default_rng(11)
    inputs = AnalyticInputs(alpha=0.6, beta=0.8, p=0.2, s=0.0, g1=1.0, g2=0.7)
    for _ in range(10):
        t = rng.uniform(0, 20)
        psi = nojump_amplitudes(inputs, t)
        np.testing.assert_allclose(np.linalg.norm(psi), 1.0, atol=1e-12)


def test_nojump_transfer_point_empties_qubit1_and_photon():
    inputs = AnalyticInputs(alpha=0.6, beta=0.8, p=0.3, s=0.8, g1=1.0, g2=1.0)
    psi = nojump_amplitudes(inputs, math.pi / math.sqrt(2))
    np.testing.assert_allclose(psi[1], 0.0, atol=1e-12)
    np.testing.assert_allclose(psi[2], 0.0, atol=1e-12)


def test_closed_forms_match_nojump_assembly():
    """Oracle equivalence: the entrywise closed forms against the matrix
    exponential of the effective generator, 100 random parameter tuples."""
    rng = np.random.default_rng(2024)
    for _ in range(100):
        inputs = random_inputs(rng)
        t = rng.uniform(0, 10)
        np.testing.assert_allclose(
            analytic_rho(inputs, t), nojump_rho(inputs, t), atol=1e-10
        )


def test_states_stay_physical():
    rng = np.random.default_rng(5)
    for _ in range(40):
        inputs = random_inputs(rng)
        rho = analytic_rho(inputs, rng.uniform(0, 10))
        assert physicality_violations(rho) == []


def test_ground_recovery_is_stroboscopically_monotone():
    inputs = AnalyticInputs(alpha=0.6, beta=0.8, p=0.1, s=0.4, g1=1.0, g2=1.0)
    period = 2 * math.pi / inputs.r
    populations = [analytic_rho(inputs, k * period)[0, 0].real for k in range(8)]
    assert np.all(np.diff(populations) >= 0)


def test_long_time_limit_is_ground():
    inputs = AnalyticInputs(alpha=0.6, beta=0.8, p=0.4, s=1.0, g1=1.0, g2=1.0)
    rho = analytic_rho(inputs, 50.0)  # s*t = 50
    expected = np.zeros((4, 4), dtype=complex)
    expected[0, 0] = 1.0
    np.testing.assert_allclose(rho, expected, atol=1e-9)


def test_input_validation():
    with pytest.raises(ValueError):
        AnalyticInputs(alpha=0.7, beta=0.8, p=0.1, s=0.1, g1=1.0, g2=1.0)
    with pytest.raises(ValueError):
        AnalyticInputs(alpha=0.6, beta=0.8, p=1.0, s=0.1, g1=1.0, g2=1.0)
    with pytest.raises(ValueError):
        AnalyticInputs(alpha=0.6, beta=0.8, p=0.1, s=-0.1, g1=1.0, g2=1.0)
    inputs = AnalyticInputs(alpha=0.6, beta=0.8, p=0.1, s=0.1, g1=1.0, g2=1.0)
    with pytest.raises(ValueError):
        analytic_rho(inputs, -1.0)


def test_degenerate_beta_zero():
    # nothing to transfer: all formulas stay finite and the state is static
    inputs = AnalyticInputs(alpha=1.0, beta=0.0, p=0.5, s=0.7, g1=1.0, g2=1.0)
    rho = analytic_rho(inputs, 3.0)
    expected = np.zeros((4, 4), dtype=complex)
    expected[0, 0] = 1.0
    np.testing.assert_allclose(rho, expected, atol=1e-14)
