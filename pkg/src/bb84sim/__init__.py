"""BB84 key-distribution simulator with pluggable eavesdropper strategies."""

from .adversary import (
    EveRecord,
    EveStrategy,
    IndirectCopyOracle,
    IndirectCopyPhysical,
    InterceptResend,
    NoEve,
    ResendRule,
)
from .amplification import (
    HashDescriptor,
    PrivacyParams,
    compress,
    eve_residual_information,
    sample_hash,
)
from .harness import (
    AggregateStats,
    ExperimentConfig,
    ExperimentReport,
    SessionRow,
    build_strategy,
    derive_seed,
    detection_rate_curve,
    eve_sifted_accuracy,
    run_experiment,
)
from .protocol import (
    ParityRound,
    PulseRecord,
    SessionConfig,
    SessionTranscript,
    SiftedKey,
    bit_error_rate,
    parity_verify,
    prepare_pulses,
    run_session,
    sift,
    transmit,
)
from .quantum import (
    BASES,
    BQS,
    DEFAULT_ANCILLA_ANGLE,
    DIAGONAL,
    RECTILINEAR,
    Basis,
    QuantumState,
    ReferenceList,
    ancilla_basis,
    born_probability,
    build_reference_list,
    decode,
    encode,
    measure,
    overlap,
    reduce_angle,
    squared_overlap,
)

__version__ = "0.1.0"
