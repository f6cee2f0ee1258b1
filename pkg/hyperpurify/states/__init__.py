from hyperpurify.states.hb_state import (
    HBState,
    basis_projector,
    fidelity,
    from_hbasis,
    from_snapshot,
    maximally_mixed,
    mixture,
    normalized,
    pure_target,
    random_state,
    to_hbasis,
    to_snapshot,
    trace_distance,
)
from hyperpurify.states.noise import NoiseKind, NoiseSpec, apply_noise, noisy_target, white_noise_for_fidelity

__all__ = [
    "HBState",
    "NoiseKind",
    "NoiseSpec",
    "apply_noise",
    "basis_projector",
    "fidelity",
    "from_hbasis",
    "from_snapshot",
    "maximally_mixed",
    "mixture",
    "noisy_target",
    "normalized",
    "pure_target",
    "random_state",
    "to_hbasis",
    "to_snapshot",
    "trace_distance",
    "white_noise_for_fidelity",
]
