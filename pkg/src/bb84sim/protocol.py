"""BB84 session engine.

One session runs the full exchange between the two legitimate parties:
pulse preparation, transit through the (possibly hostile) channel with
detector loss, measurement, basis reconciliation and sifting, then the
parity-verification rounds that certify the sifted keys agree.  Basis
reconciliation happens over an implicit authenticated, error-free public
channel; only its outcome is modeled.
"""

import random
from dataclasses import dataclass
from typing import Sequence

from .adversary import EveRecord, EveStrategy
from .errors import InvalidConfigError, KeyTooShortError
from .quantum import BASES, Basis, QuantumState, encode, measure


@dataclass(frozen=True, slots=True)
class SessionConfig:
    """Knobs for one protocol run."""

    n_pulses: int
    efficiency: float = 1.0  # probability a pulse survives to the detector
    parity_rounds: int = 0

    def __post_init__(self):
        if self.n_pulses < 1:
            raise InvalidConfigError("n_pulses must be >= 1")
        if not 0.0 < self.efficiency <= 1.0:
            raise InvalidConfigError("efficiency must be in (0, 1]")
        if self.parity_rounds < 0:
            raise InvalidConfigError("parity_rounds must be >= 0")


@dataclass(slots=True)
class PulseRecord:
    """Everything that happened to one transmitted quantum bit."""

    index: int
    alice_bit: int
    alice_basis: Basis
    sent_state: QuantumState
    channel_state: QuantumState | None  # what the receiver actually got
    bob_basis: Basis
    bob_bit: int | None
    lost: bool


@dataclass(slots=True)
class SiftedKey:
    """Bits surviving sifting plus the pulse indices they came from."""

    bits: list[int]
    source_indices: list[int]

    def __len__(self) -> int:
        return len(self.bits)


@dataclass(frozen=True, slots=True)
class ParityRound:
    """One public parity comparison over a subset of sifted positions.

    Positions index into the sifted key.  The discarded position is the
    lowest-indexed member of the subset, removed from both keys to pay for
    the publicly revealed parity bit.
    """

    subset: frozenset[int]
    alice_parity: int
    bob_parity: int
    discarded_position: int


@dataclass(slots=True)
class SessionTranscript:
    """Complete record of one session.

    ``reconciled_key`` holds the sender's post-parity key and is present
    only when no round detected a mismatch.  ``eve_bits`` holds the
    adversary's bit guesses aligned to the sifted positions, or ``None``
    for a passive channel.
    """

    pulses: list[PulseRecord]
    sifted_alice: SiftedKey
    sifted_bob: SiftedKey
    parity_rounds: list[ParityRound]
    detected: bool
    reconciled_key: list[int] | None
    eve_bits: list[int] | None

    @property
    def qber(self) -> float:
        """Mismatch fraction of the sifted keys (0.0 when nothing sifted)."""
        return bit_error_rate(self.sifted_alice.bits, self.sifted_bob.bits)

    @property
    def eve_reconciled_guess(self) -> list[int] | None:
        """Adversary guesses restricted to the positions that survived the
        parity rounds, aligned with ``reconciled_key``."""
        if self.eve_bits is None:
            return None
        dropped = {r.discarded_position for r in self.parity_rounds}
        return [
            bit for i, bit in enumerate(self.eve_bits) if i not in dropped
        ]


def bit_error_rate(a: Sequence[int], b: Sequence[int]) -> float:
    if len(a) != len(b):
        raise ValueError("bit strings must have equal length")
    if not a:
        return 0.0
    return sum(x != y for x, y in zip(a, b)) / len(a)


def prepare_pulses(
    n: int, rng: random.Random
) -> list[tuple[int, Basis, QuantumState]]:
    """Draw ``n`` independent uniform (bit, basis) pairs and encode each."""
    if n < 1:
        raise ValueError("n must be >= 1")
    pulses = []
    getrandbits = rng.getrandbits
    for _ in range(n):
        bit = getrandbits(1)
        basis = BASES[getrandbits(1)]
        pulses.append((bit, basis, encode(bit, basis)))
    return pulses


def transmit(
    state: QuantumState,
    adversary: EveStrategy,
    efficiency: float,
    rng: random.Random,
) -> tuple[QuantumState | None, EveRecord]:
    """Pass one pulse through the adversary, then through detector loss.

    Returns the state arriving at the receiver (``None`` when the pulse is
    lost) together with the adversary's record for the pulse.  The
    adversary acts before loss, so her record exists even for lost pulses.
    """
    outgoing, record = adversary.intercept(state, rng)
    if efficiency < 1.0 and rng.random() >= efficiency:
        return None, record
    return outgoing, record


def sift(pulses: Sequence[PulseRecord]) -> tuple[SiftedKey, SiftedKey]:
    """Keep positions where the pulse arrived and the bases matched."""
    alice_bits: list[int] = []
    bob_bits: list[int] = []
    indices: list[int] = []
    for pulse in pulses:
        if pulse.lost:
            continue
        if pulse.bob_bit is None:
            raise ValueError(f"pulse {pulse.index} is unmeasured but not lost")
        if pulse.alice_basis == pulse.bob_basis:
            alice_bits.append(pulse.alice_bit)
            bob_bits.append(pulse.bob_bit)
            indices.append(pulse.index)
    return (
        SiftedKey(alice_bits, indices),
        SiftedKey(bob_bits, list(indices)),
    )


def parity_verify(
    alice_bits: Sequence[int],
    bob_bits: Sequence[int],
    rounds: int,
    rng: random.Random,
) -> tuple[bool, list[int], list[int], list[ParityRound]]:
    """Run ``rounds`` public random-subset parity comparisons.

    Each round samples a uniform nonempty subset of the still-live
    positions (fair coin per position, resampled if empty), compares the
    two parities, and discards the lowest-indexed subset member from both
    keys.  A differing key pair trips a round with probability 1/2, so
    ``rounds`` independent rounds certify agreement except with
    probability ~2**-rounds, at the cost of ``rounds`` bits.

    Returns (detected, reconciled_alice, reconciled_bob, round records).
    All rounds run even after a detection; the detected flag is the OR of
    the per-round mismatches.
    """
    if len(alice_bits) != len(bob_bits):
        raise ValueError("keys must have equal length")
    length = len(alice_bits)
    if length <= rounds:
        raise KeyTooShortError(
            f"key of length {length} cannot support {rounds} parity rounds"
        )
    getrandbits = rng.getrandbits
    live = list(range(length))
    detected = False
    records: list[ParityRound] = []
    for _ in range(rounds):
        subset = [pos for pos in live if getrandbits(1)]
        while not subset:
            subset = [pos for pos in live if getrandbits(1)]
        alice_parity = 0
        bob_parity = 0
        for pos in subset:
            alice_parity ^= alice_bits[pos]
            bob_parity ^= bob_bits[pos]
        if alice_parity != bob_parity:
            detected = True
        discarded = subset[0]  # live is ascending, so subset[0] is the min
        live.remove(discarded)
        records.append(
            ParityRound(frozenset(subset), alice_parity, bob_parity, discarded)
        )
    return (
        detected,
        [alice_bits[pos] for pos in live],
        [bob_bits[pos] for pos in live],
        records,
    )


def run_session(
    config: SessionConfig, adversary: EveStrategy, rng: random.Random
) -> SessionTranscript:
    """Execute one full session and return its transcript.

    Randomness is consumed in a fixed order (all source pulses first, then
    per pulse: adversary, loss, receiver basis, receiver measurement, and
    finally the parity rounds), so identical seeds yield bit-identical
    transcripts.  With ``parity_rounds == 0`` verification is skipped and
    the sifted key is taken as reconciled.
    """
    pulses: list[PulseRecord] = []
    eve_records: list[EveRecord] = []
    getrandbits = rng.getrandbits
    efficiency = config.efficiency
    for index, (alice_bit, alice_basis, sent) in enumerate(
        prepare_pulses(config.n_pulses, rng)
    ):
        channel_state, record = transmit(sent, adversary, efficiency, rng)
        bob_basis = BASES[getrandbits(1)]
        if channel_state is None:
            bob_bit = None
            lost = True
        else:
            bob_bit, _ = measure(channel_state, bob_basis, rng)
            lost = False
        pulses.append(
            PulseRecord(
                index, alice_bit, alice_basis, sent,
                channel_state, bob_basis, bob_bit, lost,
            )
        )
        eve_records.append(record)

    sifted_alice, sifted_bob = sift(pulses)

    if config.parity_rounds > 0:
        detected, reconciled_alice, _, rounds = parity_verify(
            sifted_alice.bits, sifted_bob.bits, config.parity_rounds, rng
        )
    else:
        detected = False
        reconciled_alice = list(sifted_alice.bits)
        rounds = []

    if any(record.guessed_bit is not None for record in eve_records):
        eve_bits = [
            eve_records[i].guessed_bit for i in sifted_alice.source_indices
        ]
    else:
        eve_bits = None

    return SessionTranscript(
        pulses=pulses,
        sifted_alice=sifted_alice,
        sifted_bob=sifted_bob,
        parity_rounds=rounds,
        detected=detected,
        reconciled_key=None if detected else reconciled_alice,
        eve_bits=eve_bits,
    )
