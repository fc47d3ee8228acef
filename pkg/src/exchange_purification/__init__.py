"""Entanglement purification with pulsed exchange interactions."""
from . import analysis, gates, protocol, qcore, states
from .analysis import (
    DegenerateMapError,
    FixedPointSet,
    NonPurifiableError,
    RobustnessResult,
    UndefinedMapError,
    fidelity_map_heisenberg,
    fidelity_map_inverse_case,
    fidelity_map_optimal,
    fidelity_map_xy,
    fixed_points,
    fmin_fmax_sweep,
    robustness,
    steps_to_target,
)
from .gates import ExchangeKind
from .protocol import (
    IterationTrace,
    ProtocolConfig,
    ProtocolKind,
    RetwirlMode,
    RoundOutcome,
    iterate,
    round_bbpssw,
    round_dejmps_exchange,
    round_exchange,
)
from .qcore import ImpossibleOutcomeError, InvalidStateError, RegisterTooLargeError
from .states import BellKind, BellWeights, bell_components, bell_state, fidelity, twirl, werner

__version__ = "0.1.0"
