"""Independent reference computations used only by the tests.

Nothing here calls into the package's register algebra: states are expanded
into pure Bell-pair mixtures and propagated as state vectors with explicit
index arithmetic.
"""
import itertools
from fractions import Fraction

import numpy as np

S = 1 / np.sqrt(2)
BELL_KETS = [
    np.array([S, 0, 0, S], dtype=complex),
    np.array([S, 0, 0, -S], dtype=complex),
    np.array([0, S, S, 0], dtype=complex),
    np.array([0, S, -S, 0], dtype=complex),
]


def bits_of(index, n):
    return [(index >> (n - 1 - k)) & 1 for k in range(n)]


def index_of(bits):
    out = 0
    for b in bits:
        out = 2 * out + b
    return out


def embed_by_index(u, targets, n):
    """Operator on n qubits acting as ``u`` on ``targets`` (1-based), by enumeration."""
    k = len(targets)
    dim = 2**n
    full = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        bits = bits_of(col, n)
        sub_in = index_of([bits[t - 1] for t in targets])
        for sub_out in range(2**k):
            new = list(bits)
            for t, b in zip(targets, bits_of(sub_out, k)):
                new[t - 1] = b
            full[index_of(new), col] += u[sub_out, sub_in]
    return full


def partial_trace_by_index(rho, keep, n):
    keep = sorted(keep)
    rest = [q for q in range(1, n + 1) if q not in keep]
    d = 2 ** len(keep)
    out = np.zeros((d, d), dtype=complex)
    for i, j in itertools.product(range(d), repeat=2):
        for r in range(2 ** len(rest)):
            bi, bj = [0] * n, [0] * n
            for q, b in zip(keep, bits_of(i, len(keep))):
                bi[q - 1] = b
            for q, b in zip(keep, bits_of(j, len(keep))):
                bj[q - 1] = b
            for q, b in zip(rest, bits_of(r, len(rest))):
                bi[q - 1] = b
                bj[q - 1] = b
            out[i, j] += rho[index_of(bi), index_of(bj)]
    return out


def mixture_round(weights1, weights2, u_alice, u_bob):
    """Purification round on Bell-diagonal inputs via pure-state bookkeeping.

    Returns (Bell weights of kept pair, success probability). Register order
    is (1, 2, 3, 4) with Alice on (1, 3) and Bob on (2, 4).
    """
    out = np.zeros((4, 4), dtype=complex)
    for a, b in itertools.product(range(4), repeat=2):
        w = weights1[a] * weights2[b]
        if w == 0:
            continue
        psi = np.zeros(16, dtype=complex)
        for i, j in itertools.product(range(4), repeat=2):
            psi[4 * i + j] = BELL_KETS[a][i] * BELL_KETS[b][j]
        phi = np.zeros(16, dtype=complex)
        for idx in range(16):
            q1, q2, q3, q4 = bits_of(idx, 4)
            for oa in range(4):
                n1, n3 = bits_of(oa, 2)
                amp_a = u_alice[oa, 2 * q1 + q3]
                if amp_a == 0:
                    continue
                for ob in range(4):
                    n2, n4 = bits_of(ob, 2)
                    amp = amp_a * u_bob[ob, 2 * q2 + q4]
                    phi[index_of([n1, n2, n3, n4])] += amp * psi[idx]
        for m in (0, 1):
            kept = np.array([phi[index_of([x, y, m, m])]
                             for x in (0, 1) for y in (0, 1)])
            out += w * np.outer(kept, kept.conj())
    p = np.trace(out).real
    out /= p
    weights = [float((v.conj() @ out @ v).real) for v in BELL_KETS]
    return weights, p


def exact_optimal_map(f):
    f = Fraction(f)
    return (16 * f * f + f + 1) / (8 * f * f + 2 * f + 8)


def exact_heisenberg_map(f, cc, ss):
    """Heisenberg map with exact cos*cos and sin*sin products."""
    f, cc, ss = Fraction(f), Fraction(cc), Fraction(ss)
    num = (4 * f - 1) * (4 * f + 5) * cc - (4 * f - 1) * (8 * f + 1) * ss \
        + 8 * f * (4 * f + 1) + 5
    den = 6 * (4 * f - 1) * cc - 2 * (4 * f - 1) ** 2 * ss + 6 * (4 * f + 5)
    return num / den


def exact_bbpssw_map(f):
    f = Fraction(f)
    r = (1 - f) / 3
    return (f * f + r * r) / (f * f + 2 * f * r + 5 * r * r)


def mp_orbit(step, f0, target, max_steps=10_000):
    """Iterate a scalar map at 50 significant digits until it exceeds ``target``."""
    import mpmath
    with mpmath.workdps(50):
        f = mpmath.mpf(f0)
        out = []
        while f <= mpmath.mpf(target) and len(out) < max_steps:
            f = step(f)
            out.append(float(f))
        return out


def mp_optimal_step(f):
    return (16 * f * f + f + 1) / (8 * f * f + 2 * f + 8)


def mp_bbpssw_step(f):
    r = (1 - f) / 3
    return (f * f + r * r) / (f * f + 2 * f * r + 5 * r * r)
