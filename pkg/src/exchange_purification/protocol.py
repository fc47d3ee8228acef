"""Single purification rounds on exact four-qubit states and their iteration.

The register is ordered (1, 2, 3, 4): pair one is (1, 2), pair two is (3, 4);
Alice holds qubits 1 and 3, Bob holds 2 and 4. Qubits 3 and 4 are measured in
the z basis and the source pair is kept when both outcomes agree.
"""
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import gates, qcore, states
from .gates import ExchangeKind


class ProtocolKind(Enum):
    EXCHANGE = "exchange"
    XY = "xy"
    BBPSSW = "bbpssw"
    DEJMPS_EXCHANGE = "dejmps"


class RetwirlMode(Enum):
    WERNER_EACH_ROUND = "werner"
    BELL_DIAGONAL_TRACKING = "tracking"


@dataclass(frozen=True)
class ProtocolConfig:
    kind: ProtocolKind = ProtocolKind.EXCHANGE
    alpha: float = np.pi / 2
    beta: float = -np.pi / 2
    mode: RetwirlMode = RetwirlMode.WERNER_EACH_ROUND

    def __post_init__(self):
        object.__setattr__(self, "kind", ProtocolKind(self.kind))
        object.__setattr__(self, "mode", RetwirlMode(self.mode))
        if not (np.isfinite(self.alpha) and np.isfinite(self.beta)):
            raise ValueError("pulse areas must be finite")


@dataclass(frozen=True)
class RoundOutcome:
    state: np.ndarray
    success_prob: float
    fidelity: float


@dataclass
class IterationTrace:
    """Fidelity and success probability after each round.

    ``status`` is ``"converged"`` once the target was exceeded,
    ``"non-purifiable"`` if the fidelity stopped increasing, and
    ``"max-steps"`` if the step budget ran out first.
    """

    fidelities: list = field(default_factory=list)
    success_probs: list = field(default_factory=list)
    status: str = "max-steps"

    @property
    def steps(self):
        return len(self.fidelities)

    @property
    def converged(self):
        return self.status == "converged"


KEEP_PROJECTOR = np.kron(np.eye(4), np.diag([1, 0, 0, 1])).astype(complex)
"""Equal-outcome subspace of qubits 3, 4 (both branches) on the full register."""


def bilateral(u_alice, u_bob):
    """Alice's two-qubit gate on (1, 3) and Bob's on (2, 4)."""
    return qcore.embed(u_alice, (1, 3), 4) @ qcore.embed(u_bob, (2, 4), 4)


def _measure_and_keep(rho):
    kept, p = qcore.postselect(rho, KEEP_PROJECTOR)
    out = qcore.partial_trace(kept, {1, 2})
    out = (out + out.conj().T) / 2
    return RoundOutcome(out, p, states.fidelity(out))


def run_round(pair1, pair2, u):
    """Apply the four-qubit unitary ``u`` to ``pair1 (x) pair2`` and post-select.

    Raises ``qcore.ImpossibleOutcomeError`` if no equal outcome can occur.
    """
    rho = qcore.kron(qcore.check_density(pair1), qcore.check_density(pair2))
    return _measure_and_keep(qcore.evolve(rho, u))


def round_exchange(pair1, pair2, alpha, beta, kind=ExchangeKind.HEISENBERG):
    u = bilateral(gates.propagator(kind, alpha), gates.propagator(kind, beta))
    return run_round(pair1, pair2, u)


def round_bbpssw(pair1, pair2):
    cnot = gates.cnot_direct()
    return run_round(pair1, pair2, bilateral(cnot, cnot))


def dejmps_local_unitary():
    """Rotation on both of Alice's qubits, inverse on both of Bob's."""
    a = states.dejmps_rotation()
    b = states.dejmps_rotation(inverse=True)
    return bilateral(np.kron(a, a), np.kron(b, b))


def round_dejmps_exchange(pair1, pair2, alpha, beta):
    u = bilateral(gates.heisenberg_u(alpha), gates.heisenberg_u(beta))
    return run_round(pair1, pair2, u @ dejmps_local_unitary())


def run_config_round(config, pair1, pair2):
    kind = config.kind
    if kind is ProtocolKind.EXCHANGE:
        return round_exchange(pair1, pair2, config.alpha, config.beta)
    if kind is ProtocolKind.XY:
        return round_exchange(pair1, pair2, config.alpha, config.beta,
                              ExchangeKind.XY)
    if kind is ProtocolKind.BBPSSW:
        return round_bbpssw(pair1, pair2)
    return round_dejmps_exchange(pair1, pair2, config.alpha, config.beta)


def bbpssw_rewerner(rho):
    """Rotate Phi+ onto the singlet, twirl, and rotate back."""
    rho = states.apply_rot_y_pi(rho)
    rho = states.twirl(rho)
    return states.apply_rot_y_pi(rho)


def _next_input(config, outcome):
    if config.kind is ProtocolKind.BBPSSW:
        return bbpssw_rewerner(outcome.state)
    if config.mode is RetwirlMode.WERNER_EACH_ROUND:
        return states.werner(min(max(outcome.fidelity, 0.0), 1.0))
    return outcome.state


def iterate(config, f0, target, max_steps=200):
    """Run rounds on two copies of the current pair until fidelity exceeds ``target``.

    The input before the first round is ``werner(f0)``. Iteration stops early
    once the fidelity no longer increases, which marks an orbit stuck at or
    drifting below a fixed point.
    """
    f0 = states.check_fidelity(f0)
    if f0 == 0.0:
        raise ValueError("initial fidelity must be positive")
    if not 0.0 < target < 1.0:
        raise ValueError(f"target {target} outside (0, 1)")
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")

    trace = IterationTrace()
    if f0 > target:
        trace.status = "converged"
        return trace

    pair = states.werner(f0)
    current = f0
    tracking = (config.mode is RetwirlMode.BELL_DIAGONAL_TRACKING
                and config.kind is not ProtocolKind.BBPSSW)
    for _ in range(max_steps):
        outcome = run_config_round(config, pair, pair)
        trace.fidelities.append(outcome.fidelity)
        trace.success_probs.append(outcome.success_prob)
        if outcome.fidelity > target:
            trace.status = "converged"
            return trace
        stalled = abs(outcome.fidelity - current) <= qcore.ATOL
        if stalled or (outcome.fidelity < current and not tracking):
            trace.status = "non-purifiable"
            return trace
        current = outcome.fidelity
        pair = _next_input(config, outcome)
    trace.status = "max-steps"
    return trace
