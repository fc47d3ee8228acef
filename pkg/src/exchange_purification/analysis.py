"""Closed-form fidelity maps, their fixed points, and derived studies.

The maps take the Phi+ fidelity F of two Werner input pairs to the fidelity
of the kept pair after one round with pulse areas ``alpha`` (Alice) and
``beta`` (Bob).
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.polynomial import Polynomial
from scipy.optimize import brentq

from . import protocol
from .gates import ExchangeKind
from .protocol import ProtocolKind, RetwirlMode

HBAR_UEV_NS = 0.6582119569
"""Reduced Planck constant in micro-eV times nanoseconds."""

F_CONSTANT = 0.25
DENOMINATOR_EPS = 1e-12
RESIDUAL_TOL = 1e-9
INVERSE_BETA = "-alpha"
"""Sweep token standing for beta = -alpha."""


class UndefinedMapError(ZeroDivisionError):
    pass


class DegenerateMapError(ValueError):
    """The map is the identity, so every fidelity is a fixed point."""


class NonPurifiableError(ValueError):
    pass


def _check_f(f):
    f = float(f)
    if not 0.0 <= f <= 1.0:
        raise ValueError(f"fidelity {f} outside [0, 1]")
    return f


def heisenberg_terms(f, alpha, beta):
    """Numerator and denominator of the Heisenberg map.

    ``f`` may be a float or a ``numpy.polynomial.Polynomial`` in F.
    """
    cc = np.cos(alpha) * np.cos(beta)
    ss = np.sin(alpha) * np.sin(beta)
    num = ((4 * f - 1) * (4 * f + 5) * cc - (4 * f - 1) * (8 * f + 1) * ss
           + 8 * f * (4 * f + 1) + 5)
    den = 6 * (4 * f - 1) * cc - 2 * (4 * f - 1) ** 2 * ss + 6 * (4 * f + 5)
    return num, den


def xy_terms(f, alpha, beta):
    cc = np.cos(alpha) * np.cos(beta)
    ss = np.sin(alpha) * np.sin(beta)
    num = ((12 * f - 3) * cc - (4 * f - 1) ** 2 * ss
           + 4 * (8 * f ** 2 + 2 * f - 1) * np.cos((alpha + beta) / 2)
           + 4 * f * (4 * f + 1) + 7)
    den = 6 * (4 * f - 1) * cc - 2 * (4 * f - 1) ** 2 * ss + 6 * (4 * f + 5)
    return num, den


_TERMS = {ExchangeKind.HEISENBERG: heisenberg_terms, ExchangeKind.XY: xy_terms}


def _ratio(num, den):
    if abs(den) <= DENOMINATOR_EPS:
        raise UndefinedMapError(f"map denominator {den:.3e} vanishes")
    return num / den


def fidelity_map(f, alpha, beta, kind=ExchangeKind.HEISENBERG):
    return _ratio(*_TERMS[ExchangeKind(kind)](_check_f(f), alpha, beta))


def fidelity_map_heisenberg(f, alpha, beta):
    return fidelity_map(f, alpha, beta, ExchangeKind.HEISENBERG)


def fidelity_map_xy(f, alpha, beta):
    return fidelity_map(f, alpha, beta, ExchangeKind.XY)


def success_probability(f, alpha, beta):
    """Probability of equal target outcomes; the map denominator over 72.

    Holds for both interaction types.
    """
    return heisenberg_terms(_check_f(f), alpha, beta)[1] / 72


def fidelity_map_inverse_case(f, alpha):
    """Heisenberg map with Bob applying the inverse pulse, beta = -alpha."""
    f = _check_f(f)
    den = (f - 1) * (4 * f - 1) * np.cos(2 * alpha) - f * (4 * f + 7) - 7
    return 0.5 + _ratio(3 - 12 * f ** 2, den)


def fidelity_map_optimal(f):
    """Map for sqrt(SWAP) on Alice's side and its inverse on Bob's."""
    f = _check_f(f)
    return (16 * f ** 2 + f + 1) / (8 * f ** 2 + 2 * f + 8)


def optimal_gain(f):
    """F' - F for the optimal map, in factored form."""
    f = _check_f(f)
    return (1 - f) * (4 * f - 1) * (2 * f - 1) / (8 * f ** 2 + 2 * f + 8)


def bbpssw_map(f):
    """Standard bilateral-CNOT recurrence on Werner inputs."""
    f = _check_f(f)
    r = (1 - f) / 3
    return (f ** 2 + r ** 2) / (f ** 2 + 2 * f * r + 5 * r ** 2)


@dataclass
class FixedPointSet:
    """Fixed points of a bound map.

    ``f_min``/``f_max`` are the two roots besides 1/4 in ascending order, or
    None when they are complex. ``stability`` maps each present point to
    ``"attractive"`` or ``"repulsive"``; ``residuals`` holds |map(p) - p|.
    """

    alpha: float
    beta: float
    kind: ExchangeKind
    f_c: float = F_CONSTANT
    f_min: Optional[float] = None
    f_max: Optional[float] = None
    stability: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)

    def points(self):
        return {name: value for name, value in
                (("f_c", self.f_c), ("f_min", self.f_min), ("f_max", self.f_max))
                if value is not None}


def _unchecked_map(f, alpha, beta, kind):
    return _ratio(*_TERMS[kind](f, alpha, beta))


def fixed_point_polynomial(alpha, beta, kind=ExchangeKind.HEISENBERG):
    """Cubic ``num(F) - F den(F)`` whose roots are the fixed points."""
    x = Polynomial([0.0, 1.0])
    num, den = _TERMS[ExchangeKind(kind)](x, alpha, beta)
    return num - x * den


def fixed_points(alpha, beta, kind=ExchangeKind.HEISENBERG):
    """Solve F' = F: deflate the root 1/4 from the cubic, solve the quadratic.

    Raises
    ------
    DegenerateMapError
        If the cubic vanishes identically (the map is the identity).
    ArithmeticError
        If a fixed point in [0, 1] misses ``map(p) = p`` by more than 1e-9.
    """
    kind = ExchangeKind(kind)
    x = Polynomial([0.0, 1.0])
    num, den = _TERMS[kind](x, alpha, beta)
    cubic = num - x * den
    # rounding in the cubic is set by the size of the terms that cancel
    term_scale = max(np.max(np.abs(num.coef)), np.max(np.abs(den.coef)))
    scale = np.max(np.abs(cubic.coef))
    if scale <= DENOMINATOR_EPS * term_scale:
        raise DegenerateMapError(
            f"map is the identity for alpha={alpha}, beta={beta}")
    if abs(cubic(F_CONSTANT)) > 1e-9 * term_scale:
        raise ArithmeticError("F = 1/4 is not a root of the fixed-point cubic")

    quad, _ = divmod(cubic, Polynomial([-F_CONSTANT, 1.0]))
    c0, c1, c2 = (list(quad.coef) + [0.0, 0.0, 0.0])[:3]
    roots = []
    if abs(c2) > DENOMINATOR_EPS * scale:
        disc = c1 * c1 - 4 * c2 * c0
        if disc < 0 and disc > -1e-14 * max(c1 * c1, abs(4 * c2 * c0)):
            disc = 0.0
        if disc >= 0:
            sq = np.sqrt(disc)
            # cancellation-free pair of quadratic roots
            q = -0.5 * (c1 + np.copysign(sq, c1)) if c1 != 0 else -0.5 * sq
            r1 = q / c2
            r2 = c0 / q if q != 0 else r1
            roots = sorted([r1, r2])
    elif abs(c1) > DENOMINATOR_EPS * scale:
        roots = [-c0 / c1]

    # a root shared by numerator and denominator is a removable 0/0, not a fixed point
    den_scale = np.max(np.abs(den.coef))
    roots = [r for r in roots if abs(den(r)) > 1e-9 * den_scale * max(1.0, abs(r))]

    result = FixedPointSet(alpha=alpha, beta=beta, kind=kind)
    if len(roots) == 2:
        result.f_min, result.f_max = (float(r) for r in roots)
    elif len(roots) == 1:
        result.f_min = float(roots[0])

    for name, p in result.points().items():
        residual = abs(_unchecked_map(p, alpha, beta, kind) - p)
        # outside [0, 1] a root may sit next to a nearly cancelling pole, where
        # the map itself cannot be evaluated to 1e-9; its residual is only recorded
        physical = -RESIDUAL_TOL <= p <= 1 + RESIDUAL_TOL
        if physical and residual > RESIDUAL_TOL:
            raise ArithmeticError(f"fixed point {name}={p} has residual {residual}")
        result.residuals[name] = float(residual)
        # d/dF (num/den) at a point where num = p den
        slope = (num.deriv()(p) - p * den.deriv()(p)) / den(p)
        result.stability[name] = "attractive" if abs(slope) < 1 else "repulsive"
    return result


@dataclass
class SweepRow:
    alpha: float
    beta: float
    f_min: Optional[float]
    f_max: Optional[float]
    residual: Optional[float]


def fmin_fmax_sweep(betas, alpha_points, alpha_range=(0.0, 2 * np.pi),
                    kind=ExchangeKind.HEISENBERG):
    """Purification threshold and reachable fidelity over a grid of alpha.

    A pair (f_min, f_max) is kept only when 1/2 <= f_min <= f_max <= 1;
    degenerate maps and other cases are recorded as gaps (None).
    ``betas`` may contain ``INVERSE_BETA`` for the beta = -alpha curve.
    """
    if alpha_points < 2:
        raise ValueError("alpha grid needs at least two points")
    tol = RESIDUAL_TOL
    rows = []
    for beta_spec in betas:
        for alpha in np.linspace(*alpha_range, alpha_points):
            alpha = float(alpha)
            beta = -alpha if beta_spec == INVERSE_BETA else float(beta_spec)
            try:
                fp = fixed_points(alpha, beta, kind)
            except DegenerateMapError:
                rows.append(SweepRow(alpha, beta, None, None, None))
                continue
            lo, hi = fp.f_min, fp.f_max
            if lo is None or hi is None or not (
                    0.5 - tol <= lo <= hi <= 1 + tol):
                rows.append(SweepRow(alpha, beta, None, None, None))
                continue
            residual = max(fp.residuals["f_min"], fp.residuals["f_max"])
            rows.append(SweepRow(alpha, beta, lo, hi, residual))
    return rows


def closed_form_map(config):
    if config.mode is not RetwirlMode.WERNER_EACH_ROUND:
        return None
    if config.kind is ProtocolKind.EXCHANGE:
        return lambda f: fidelity_map_heisenberg(f, config.alpha, config.beta)
    if config.kind is ProtocolKind.XY:
        return lambda f: fidelity_map_xy(f, config.alpha, config.beta)
    return None


def scalar_orbit(fmap, f0, target, max_steps):
    orbit = []
    f = f0
    while f <= target and len(orbit) < max_steps:
        nxt = fmap(f)
        if nxt <= f:
            break
        orbit.append(nxt)
        f = nxt
    return orbit


def steps_to_target(f0, config, target, max_steps=100_000):
    """Number of rounds until the fidelity exceeds ``target`` (0 if it already does).

    Exchange and XY protocols with re-twirling use the closed-form map; other
    configurations run the simulated rounds.

    Raises
    ------
    NonPurifiableError
        If ``f0`` does not lie above the repulsive fixed point, ``target`` is
        not below the reachable fidelity, or the target is not reached.
    """
    f0 = _check_f(f0)
    if f0 > target:
        return 0
    fmap = closed_form_map(config)
    if fmap is not None:
        kind = (ExchangeKind.XY if config.kind is ProtocolKind.XY
                else ExchangeKind.HEISENBERG)
        try:
            fp = fixed_points(config.alpha, config.beta, kind)
        except DegenerateMapError as err:
            raise NonPurifiableError(str(err)) from err
        if fp.f_min is None or fp.f_max is None:
            raise NonPurifiableError("no real purification threshold")
        if not fp.f_min < f0 or not target < fp.f_max:
            raise NonPurifiableError(
                f"need {fp.f_min:.6g} < f0={f0} and target={target} < {fp.f_max:.6g}")
        orbit = scalar_orbit(fmap, f0, target, max_steps)
        if not orbit or orbit[-1] <= target:
            raise NonPurifiableError("target not reached")
        return len(orbit)

    trace = protocol.iterate(config, f0, target, max_steps)
    if not trace.converged:
        raise NonPurifiableError(f"iteration ended with status {trace.status}")
    return trace.steps


def pulse_deviation_to_angle(j_energy, delta_tau):
    """Pulse-area error J * dtau / hbar for J in micro-eV and dtau in ns."""
    return j_energy * delta_tau / HBAR_UEV_NS


def angle_to_pulse_deviation(delta_alpha, j_energy):
    return delta_alpha * HBAR_UEV_NS / j_energy


@dataclass
class RobustnessResult:
    delta_alpha: float
    f_max_achievable: Optional[float]
    j_energy: float
    delta_tau: float


def max_reachable_fidelity(delta_alpha):
    """Largest fixed point in [1/2, 1] when Alice's pulse is off by ``delta_alpha``.

    Bob's pulse is the ideal -pi/2. Returns None when the map has no real
    fixed point in that interval.
    """
    alpha, beta = np.pi / 2 + delta_alpha, -np.pi / 2
    fp = fixed_points(alpha, beta)
    inside = [p for p in (fp.f_min, fp.f_max)
              if p is not None and 0.5 - RESIDUAL_TOL <= p <= 1 + RESIDUAL_TOL]
    return min(max(inside), 1.0) if inside else None


def robustness(delta_alpha, j_energy=1.0):
    return RobustnessResult(
        delta_alpha=delta_alpha,
        f_max_achievable=max_reachable_fidelity(delta_alpha),
        j_energy=j_energy,
        delta_tau=angle_to_pulse_deviation(delta_alpha, j_energy),
    )


def robustness_threshold(target=0.99, upper=1.0):
    """Smallest positive pulse-area error at which the reachable fidelity drops to ``target``."""
    def excess(delta):
        f = max_reachable_fidelity(delta)
        return (-1.0 if f is None else f) - target
    return brentq(excess, 0.0, upper, xtol=1e-14)
