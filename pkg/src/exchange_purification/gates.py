"""Two-qubit propagators of pulsed exchange interactions and derived gates.

Units have hbar = 1; a pulse is described only by its area
``alpha = integral of J(t) dt`` in radians.
"""
from enum import Enum

import numpy as np

from .states import bell_vector, BellKind

I2 = np.eye(2, dtype=complex)
PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class ExchangeKind(Enum):
    HEISENBERG = "heisenberg"
    XY = "xy"


def _singlet_projector():
    psi = bell_vector(BellKind.PSI_MINUS)
    return np.outer(psi, psi.conj())


def heisenberg_hamiltonian():
    """(1/4) sigma_1 . sigma_2 for J = 1."""
    return sum(np.kron(s, s) for s in PAULI.values()) / 4


def xy_hamiltonian():
    """(1/4)(sigma_x sigma_x + sigma_y sigma_y) for J = 1."""
    return (np.kron(PAULI["x"], PAULI["x"]) + np.kron(PAULI["y"], PAULI["y"])) / 4


def heisenberg_u(alpha):
    """Propagator exp(-i alpha/4) (1 + (exp(i alpha) - 1) P_singlet)."""
    alpha = float(alpha)
    return np.exp(-1j * alpha / 4) * (
        np.eye(4) + (np.exp(1j * alpha) - 1) * _singlet_projector())


def xy_u(alpha):
    """Propagator of the XY interaction for pulse area ``alpha``.

    Identity on |00>, |11>; rotation by alpha/2 mixing |01> and |10>.
    """
    c, s = np.cos(alpha / 2), np.sin(alpha / 2)
    u = np.eye(4, dtype=complex)
    u[1:3, 1:3] = [[c, -1j * s], [-1j * s, c]]
    return u


def propagator(kind, alpha):
    kind = ExchangeKind(kind)
    return heisenberg_u(alpha) if kind is ExchangeKind.HEISENBERG else xy_u(alpha)


def sqrt_swap():
    return np.exp(1j * np.pi / 8) * heisenberg_u(np.pi / 2)


def sqrt_swap_inv():
    return sqrt_swap().conj().T


def swap_gate():
    root = sqrt_swap()
    return root @ root


def iswap():
    u = np.eye(4, dtype=complex)
    u[1:3, 1:3] = [[0, 1j], [1j, 0]]
    return u


def cnot_direct():
    """CNOT with qubit 1 as source and qubit 2 as target."""
    return np.eye(4, dtype=complex)[[0, 1, 3, 2]]


def pauli_rotation(axis, qubit, angle):
    """exp(i angle sigma^axis) on ``qubit`` (1 or 2) of a pair."""
    if qubit not in (1, 2):
        raise ValueError(f"qubit must be 1 or 2, got {qubit}")
    s = PAULI[axis]
    gen = np.kron(s, I2) if qubit == 1 else np.kron(I2, s)
    return np.cos(angle) * np.eye(4) + 1j * np.sin(angle) * gen


def cnot_sequence_factors(root=None):
    """Factors of the sqrt(SWAP)-based CNOT construction, leftmost first.

    ``root`` overrides the two sqrt(SWAP) factors.
    """
    root = sqrt_swap() if root is None else root
    return [
        np.exp(-1j * np.pi / 2) * np.eye(4, dtype=complex),
        pauli_rotation("y", 2, -np.pi / 4),
        pauli_rotation("z", 1, np.pi / 4),
        pauli_rotation("z", 2, -np.pi / 4),
        root,
        pauli_rotation("z", 1, np.pi / 2),
        root,
        pauli_rotation("y", 2, np.pi / 4),
    ]


def cnot_from_sequence():
    """Operator product of the CNOT construction, rightmost factor acting first."""
    u = np.eye(4, dtype=complex)
    for factor in cnot_sequence_factors():
        u = u @ factor
    return u


def cnot_from_sequence_inverse_root():
    """The same construction with both sqrt(SWAP) factors replaced by the inverse root.

    With the basis and rotation conventions used here this variant, not the
    literal one, equals CNOT up to a global phase.
    """
    u = np.eye(4, dtype=complex)
    for factor in cnot_sequence_factors(root=sqrt_swap_inv()):
        u = u @ factor
    return u
