"""Master-equation integrator for arbitrary decay and dephasing rates.

The generator is applied operator-by-operator as 4x4 matrix products (no
flattening to a superoperator; the system is tiny and the term-by-term form
maps directly onto the physical channels).  Time stepping uses the embedded
Cash-Karp 5(4) Runge-Kutta pair with a proportional step controller: the
configured step size is both the initial and the maximum step, and the local
error estimate only ever shrinks steps below it.  After every accepted step
the state is re-symmetrized, rho <- (rho + rho^+)/2.
"""

from dataclasses import dataclass

import numpy as np

from .core import DIM, CollapseTerm, SystemParams, collapse_operators, hamiltonian


class StepSizeUnderflow(RuntimeError):
    """Raised when meeting the local tolerance would need a step below
    1e-12 / g_ref, which signals stiff or invalid parameters."""


@dataclass(frozen=True)
class IntegratorConfig:
    """Stepper settings, times in units of 1/g_ref with g_ref = max(g1, g2).

    step_size is the initial and maximum step; tolerance is the entrywise
    local error target per step; max_time bounds the integration window.
    """

    step_size: float = 0.005
    tolerance: float = 1e-10
    max_time: float = 20.0

    def __post_init__(self):
        if self.step_size <= 0:
            raise ValueError("step_size must be positive")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_time <= 0:
            raise ValueError("max_time must be positive")


@dataclass(frozen=True)
class Trajectory:
    """Sampled states of one integration: times[i] goes with states[i]."""

    times: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        if len(self.times) != len(self.states):
            raise ValueError("times and states must have equal length")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")


def _split_terms(terms: list[CollapseTerm]):
    lowering = [t for t in terms if not t.dephasing]
    dephasing = [t for t in terms if t.dephasing]
    if lowering:
        ops = np.stack([t.op for t in lowering])
        ops_dag = ops.conj().transpose(0, 2, 1)
        rates = np.array([t.rate for t in lowering])
        # anticommutator partner (1/2) sum_k rate_k L_k^+ L_k, Hermitian
        half_ldl = 0.5 * np.tensordot(rates, ops_dag @ ops, axes=1)
    else:
        ops = ops_dag = rates = half_ldl = None
    deph = [(0.5 * t.rate, t.op) for t in dephasing]
    return ops, ops_dag, rates, half_ldl, deph


def _make_rhs(params: SystemParams):
    h = hamiltonian(params)
    ops, ops_dag, rates, half_ldl, deph = _split_terms(collapse_operators(params))

    def rhs(rho: np.ndarray) -> np.ndarray:
        drho = -1j * (h @ rho - rho @ h)
        if ops is not None:
            drho += np.tensordot(rates, ops @ rho @ ops_dag, axes=1)
            drho -= half_ldl @ rho + rho @ half_ldl
        for half_rate, z in deph:
            drho += half_rate * (z @ rho @ z - rho)
        return drho

    return rhs


def lindblad_rhs(params: SystemParams, rho: np.ndarray) -> np.ndarray:
    """Right-hand side of the master equation, d rho / d t.

    -i[H, rho] plus the lowering-operator dissipators for photon loss and
    qubit emission, plus (gamma_phi/2)(Z rho Z - rho) for each qubit when
    dephasing is on.  The output is Hermitian and traceless for Hermitian
    input.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (DIM, DIM):
        raise ValueError(f"expected a {DIM}x{DIM} state, got shape {rho.shape}")
    return _make_rhs(params)(rho)


# Cash-Karp 5(4) tableau: fifth-order propagation with an embedded
# fourth-order solution for the local error estimate.
_CK_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (3 / 10, -9 / 10, 6 / 5),
    (-11 / 54, 5 / 2, -70 / 27, 35 / 27),
    (1631 / 55296, 175 / 512, 575 / 13824, 44275 / 110592, 253 / 4096),
)
_CK_B5 = np.array([37 / 378, 0.0, 250 / 621, 125 / 594, 0.0, 512 / 1771])
_CK_ERR = _CK_B5 - np.array(
    [2825 / 27648, 0.0, 18575 / 48384, 13525 / 55296, 277 / 14336, 1 / 4]
)


def _ck_step(rhs, rho, h):
    """One Cash-Karp step of size h; returns (rho_5th, max-entry error)."""
    k = [rhs(rho)]
    for row in _CK_A[1:]:
        stage = rho + h * sum(a * ki for a, ki in zip(row, k))
        k.append(rhs(stage))
    rho_new = rho + h * sum(b * ki for b, ki in zip(_CK_B5, k))
    err = h * sum(e * ki for e, ki in zip(_CK_ERR, k))
    return rho_new, float(np.max(np.abs(err)))


def integrate(
    params: SystemParams,
    rho0: np.ndarray,
    config: IntegratorConfig | None = None,
    sample_times: "list[float] | np.ndarray" = (),
) -> Trajectory:
    """Integrate the master equation and return the state at each sample time.

    sample_times must be sorted, non-negative and within the configured
    window.  Each sample is reached by exact step truncation at the sample
    boundary (never by interpolation), so a given input always reproduces the
    same output bit for bit.
    """
    if config is None:
        config = IntegratorConfig()
    g_ref = params.g_ref
    samples = np.asarray(sample_times, dtype=float)
    if samples.size == 0:
        raise ValueError("sample_times must not be empty")
    if np.any(np.diff(samples) <= 0):
        raise ValueError("sample_times must be strictly increasing")
    if samples[0] < 0:
        raise ValueError("sample_times must be non-negative")
    t_limit = config.max_time / g_ref
    if samples[-1] > t_limit * (1 + 1e-12):
        raise ValueError(
            f"last sample {samples[-1]!r} exceeds max_time/g_ref = {t_limit!r}"
        )

    rho = np.asarray(rho0, dtype=complex).copy()
    if rho.shape != (DIM, DIM):
        raise ValueError(f"expected a {DIM}x{DIM} initial state, got {rho.shape}")

    rhs = _make_rhs(params)
    h_max = config.step_size / g_ref
    h_min = 1e-12 / g_ref
    tol = config.tolerance

    states = []
    t = 0.0
    h = h_max
    for target in samples:
        while target - t > 1e-14 * (1.0 + target):
            step = min(h, target - t)
            truncated = step < h
            rho_new, err = _ck_step(rhs, rho, step)
            if err <= tol:
                t += step
                rho = 0.5 * (rho_new + rho_new.conj().T)
                if not truncated:
                    grow = 5.0 if err == 0.0 else min(5.0, 0.9 * (tol / err) ** 0.2)
                    h = min(h_max, h * max(grow, 0.2))
            else:
                h = step * max(0.2, 0.9 * (tol / err) ** 0.2)
                if h < h_min:
                    raise StepSizeUnderflow(
                        f"step {h:.3e} below {h_min:.3e} at t = {t:.6g}"
                    )
        states.append(rho.copy())
    return Trajectory(times=samples, states=np.array(states))
