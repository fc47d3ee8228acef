"""Bell, Werner and Bell-diagonal two-qubit states."""
from enum import Enum
from typing import NamedTuple

import numpy as np

from . import qcore

PREP_ROTATION_SIDE = "alice"
"""Party applying the pi y-rotation that maps the singlet onto Phi+.

Either choice produces the same Bell-weight permutation.
"""


class BellKind(Enum):
    PHI_PLUS = 0
    PHI_MINUS = 1
    PSI_PLUS = 2
    PSI_MINUS = 3


class BellWeights(NamedTuple):
    """Diagonal of a two-qubit state in the Bell basis."""

    phi_plus: float
    phi_minus: float
    psi_plus: float
    psi_minus: float


_S = 1 / np.sqrt(2)

BELL_BASIS = np.array([
    [_S, _S, 0, 0],
    [0, 0, _S, _S],
    [0, 0, _S, -_S],
    [_S, -_S, 0, 0],
], dtype=complex)
"""Columns are |Phi+>, |Phi->, |Psi+>, |Psi-> in the computational basis."""


def bell_vector(kind):
    return BELL_BASIS[:, BellKind(kind).value].copy()


def bell_state(kind):
    return qcore.ket_to_dm(bell_vector(kind))


def check_fidelity(f):
    f = float(f)
    if not 0.0 <= f <= 1.0 or np.isnan(f):
        raise ValueError(f"fidelity {f} outside [0, 1]")
    return f


def bell_diagonal(weights):
    """Build the Bell-diagonal density operator with the given four weights."""
    w = np.asarray(weights, dtype=float)
    if w.shape != (4,):
        raise ValueError("need exactly four Bell weights")
    if np.any(w < -qcore.ATOL) or np.any(w > 1 + qcore.ATOL) \
            or abs(w.sum() - 1) > qcore.ATOL:
        raise ValueError(f"invalid Bell weights {w}")
    return BELL_BASIS @ np.diag(w).astype(complex) @ BELL_BASIS.conj().T


def werner(f):
    """Werner state with Phi+ weight ``f`` and (1-f)/3 on each other Bell state."""
    f = check_fidelity(f)
    r = (1 - f) / 3
    return bell_diagonal([f, r, r, r])


def bell_matrix(rho):
    """``rho`` expressed in the Bell basis (ordered Phi+, Phi-, Psi+, Psi-)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("expected a two-qubit operator")
    return BELL_BASIS.conj().T @ rho @ BELL_BASIS


def bell_components(rho):
    return BellWeights(*np.diag(bell_matrix(rho)).real.tolist())


def fidelity(rho):
    """Overlap <Phi+|rho|Phi+>."""
    return bell_components(rho).phi_plus


def twirl(rho):
    """Project onto Werner form about the singlet.

    Keeps the Psi- weight, replaces each of the other three weights by their
    mean and drops every off-diagonal Bell-basis element.
    """
    w = bell_components(rho)
    rest = (w.phi_plus + w.phi_minus + w.psi_plus) / 3
    return bell_diagonal([rest, rest, rest, w.psi_minus])


def rot_y_pi():
    """exp(-i pi sigma_y / 2), a pi rotation about the Bloch y axis."""
    return np.array([[0, -1], [1, 0]], dtype=complex)


def apply_rot_y_pi(rho, side=PREP_ROTATION_SIDE):
    """Rotate one qubit of a pair by pi about y, exchanging Phi+<->Psi- and Phi-<->Psi+."""
    qubit = {"alice": 1, "bob": 2}[side]
    return qcore.evolve(rho, qcore.embed(rot_y_pi(), (qubit,), 2))


def dejmps_rotation(inverse=False):
    """Single-qubit gate |0> -> (|0> - i|1>)/sqrt2, |1> -> (|1> - i|0>)/sqrt2.

    Alice applies it to both of her qubits and Bob applies the inverse.
    """
    u = np.array([[1, -1j], [-1j, 1]], dtype=complex) / np.sqrt(2)
    return u.conj().T if inverse else u
