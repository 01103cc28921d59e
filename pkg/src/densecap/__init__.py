"""Dense coding capacity of Pauli-covariant quantum channels.

Numerical toolkit for the two-sided noisy dense coding protocol: the same
channel carries the entangled resource out and the encoded system back, and
the capacity is the optimized Holevo quantity of the round-trip Choi
ensemble. Includes closed forms for Pauli/depolarizing/dephasing channels,
a teleportation-based replay of the round trip, and seeded verification
suites, all at desk scale (d <= 5).
"""

from .capacity import (
    CapacityResult,
    OptimizerOptions,
    dcc_dephasing_general,
    dcc_dephasing_paper,
    dcc_depolarizing,
    dcc_pauli_closed_form,
    maximize_holevo,
    one_shot_dcc,
    output_ensemble,
)
from .channels import (
    ChoiMatrix,
    PauliChannelSpec,
    QuantumChannel,
    apply,
    apply_on_B,
    choi,
    compose,
    covariance_defect,
    covariance_defects,
    dephasing_spec,
    depolarizing_spec,
    encoding_channel,
    identity_channel,
    identity_spec,
    maximally_entangled_ket,
    maximally_entangled_state,
    parse_channel_spec,
    pauli_channel,
    unitary_channel,
)
from .linalg import EigenResult, dagger, eigh, eigvalsh, kron, partial_trace, trace_distance
from .pauli import PauliIndex, all_indices, all_paulis, clock_z, pauli_op, shift_x
from .qinfo import (
    Ensemble,
    binary_entropy,
    ea_capacity,
    holevo,
    ideal_resource_capacity,
    relative_entropy,
    von_neumann_entropy,
)
from .simulation import (
    TeleportOutcome,
    bell_kets,
    correction_table,
    output_probabilities_defect,
    round_trip_ensemble,
    stretching_gap,
    teleport_through,
    verify_simulation,
)
from .verify import run_verification

__version__ = "0.1.0"
