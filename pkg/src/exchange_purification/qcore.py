"""Dense linear algebra on registers of one to four qubits.

Operators and states are plain complex ``numpy`` arrays. Qubits are labelled
1..n, with qubit 1 the most significant bit of the computational-basis index.
"""
import numpy as np

ATOL = 1e-10
"""Absolute tolerance used by all validity checks in the package."""

MIN_PROBABILITY = 1e-12
MAX_DIM = 16


class RegisterTooLargeError(ValueError):
    pass


class InvalidStateError(ValueError):
    pass


class ImpossibleOutcomeError(ValueError):
    """Raised when a post-selected outcome has (numerically) zero probability."""

    def __init__(self, probability):
        super().__init__(f"post-selection probability {probability:.3e} is zero")
        self.probability = probability


def _num_qubits(dim):
    n = int(dim).bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def _square(a):
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def is_hermitian(a, atol=None):
    atol = ATOL if atol is None else atol
    a = _square(a)
    return bool(np.max(np.abs(a - a.conj().T)) <= atol)


def is_unitary(u, atol=None):
    atol = ATOL if atol is None else atol
    u = _square(u)
    return bool(np.max(np.abs(u.conj().T @ u - np.eye(len(u)))) <= atol)


def is_density(rho, atol=None):
    """Check Hermiticity, unit trace and positive semidefiniteness."""
    atol = ATOL if atol is None else atol
    rho = _square(rho)
    if not is_hermitian(rho, atol):
        return False
    if abs(np.trace(rho) - 1) > atol:
        return False
    herm = (rho + rho.conj().T) / 2
    return bool(np.linalg.eigvalsh(herm).min() >= -atol)


def check_density(rho, atol=None):
    if not is_density(rho, atol):
        raise InvalidStateError("matrix is not a valid density operator")
    return _square(rho)


def ket_to_dm(psi):
    psi = np.asarray(psi, dtype=complex).ravel()
    return np.outer(psi, psi.conj())


def basis_ket(bits):
    """Computational basis vector for a bit string such as ``"1010"``."""
    n = len(bits)
    psi = np.zeros(2**n, dtype=complex)
    psi[int(bits, 2)] = 1
    return psi


def kron(a, b):
    """Tensor product ``a (x) b`` of two square operators on qubit registers."""
    a, b = _square(a), _square(b)
    _num_qubits(len(a))
    _num_qubits(len(b))
    if len(a) * len(b) > MAX_DIM:
        raise RegisterTooLargeError(
            f"register of dimension {len(a) * len(b)} exceeds {MAX_DIM}")
    return np.kron(a, b)


def embed(u, targets, n):
    """Lift ``u`` acting on ``targets`` (1-based, in order) to an n-qubit register.

    ``u`` may act on any number k of qubits as long as ``len(targets) == k``.
    The result acts as ``u`` on the targets and as the identity elsewhere.
    """
    u = _square(u)
    targets = tuple(int(t) for t in targets)
    k = _num_qubits(len(u))
    if 2**n > MAX_DIM:
        raise RegisterTooLargeError(f"{n} qubits exceed the supported register")
    if len(targets) != k:
        raise ValueError(f"{k}-qubit operator needs {k} targets, got {targets}")
    if len(set(targets)) != k:
        raise ValueError(f"duplicate targets {targets}")
    if any(not 1 <= t <= n for t in targets):
        raise ValueError(f"targets {targets} outside register of {n} qubits")
    if not is_unitary(u):
        raise ValueError("operator to embed is not unitary")

    rest = [q for q in range(1, n + 1) if q not in targets]
    full = np.kron(u, np.eye(2 ** len(rest)))
    # axes of `full` are ordered (targets..., rest...) for both output and input
    order = [t - 1 for t in targets] + [q - 1 for q in rest]
    inv = np.argsort(order)
    full = full.reshape([2] * (2 * n))
    full = full.transpose(list(inv) + [n + i for i in inv])
    return full.reshape(2**n, 2**n)


def evolve(rho, u):
    """Unitary evolution ``u rho u^dagger``."""
    rho, u = _square(rho), _square(u)
    if rho.shape != u.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {u.shape}")
    return u @ rho @ u.conj().T


def partial_trace(rho, keep):
    """Reduce ``rho`` to the qubits in ``keep`` (1-based), kept in ascending order."""
    rho = _square(rho)
    n = _num_qubits(len(rho))
    keep = sorted(set(int(q) for q in keep))
    if not keep:
        raise ValueError("keep set must be nonempty")
    if any(not 1 <= q <= n for q in keep):
        raise ValueError(f"keep set {keep} outside register of {n} qubits")

    ket_idx = list(range(n))
    bra_idx = [n + i if (i + 1) in keep else i for i in range(n)]
    out = [i - 1 for i in keep] + [n + i - 1 for i in keep]
    d = 2 ** len(keep)
    reduced = np.einsum(rho.reshape([2] * (2 * n)), ket_idx + bra_idx, out)
    return reduced.reshape(d, d)


def postselect(rho, projector):
    """Project ``rho`` with ``projector`` and renormalize.

    Returns
    -------
    state : ndarray
        ``P rho P / p``.
    probability : float
        ``p = Tr(P rho P)``.

    Raises
    ------
    ImpossibleOutcomeError
        If ``p <= 1e-12``.
    """
    rho, projector = _square(rho), _square(projector)
    if rho.shape != projector.shape:
        raise ValueError(f"dimension mismatch: {rho.shape} vs {projector.shape}")
    if not is_hermitian(projector) or np.max(
            np.abs(projector @ projector - projector)) > ATOL:
        raise ValueError("projector must be Hermitian and idempotent")
    projected = projector @ rho @ projector
    p = float(np.trace(projected).real)
    if p <= MIN_PROBABILITY:
        raise ImpossibleOutcomeError(p)
    return projected / p, min(p, 1.0)


def dist_up_to_phase(a, b):
    """Frobenius distance ``min_phi ||a - e^{i phi} b||``."""
    a, b = _square(a), _square(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    overlap = np.vdot(b, a)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(a - phase * b))
