"""Eavesdropper strategies plugged into the quantum channel.

Every strategy consumes each transmitted state and must hand a state back
to the channel.  Four behaviors are provided:

* ``NoEve``            passive channel, nothing recorded.
* ``InterceptResend``  measure in a random basis, forward the collapsed
                       eigenstate.  Induces 25% sifted errors when applied
                       to every pulse.
* ``IndirectCopyOracle``    identify each pulse through an exact read of
                       its squared overlap with a fixed ancilla, then
                       forward a fresh copy of the identified state.  The
                       exact read is a simulator capability switch, not a
                       physical measurement: no single-shot measurement
                       yields that continuous value from one carrier.
                       With the switch granted the attack is transparent.
* ``IndirectCopyPhysical``  the same attack restricted to what one lawful
                       projective measurement (along the ancilla pair)
                       can deliver: a single bit per pulse.  The resend
                       rule maps that bit to a forwarded state, and the
                       induced disturbance is unavoidable.
"""

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import ClassVar

from .quantum import (
    BASES,
    Basis,
    QuantumState,
    ReferenceList,
    ancilla_basis,
    decode,
    measure,
    squared_overlap,
)


@dataclass(frozen=True, slots=True)
class EveRecord:
    """What the eavesdropper did to one pulse: the state she forwarded and,
    if she attacked, her guess for the encoded state/bit."""

    resent_state: QuantumState
    guessed_bit: int | None = None
    guessed_state: QuantumState | None = None


class ResendRule(str, Enum):
    """How the single-shot variant turns its binary outcome into a state.

    ``MAX_POSTERIOR`` forwards the signal state most probable given the
    outcome under a uniform prior over the alphabet; ``RESEND_ANCILLA``
    forwards the measurement eigenstate itself.
    """

    MAX_POSTERIOR = "max-posterior"
    RESEND_ANCILLA = "resend-ancilla"


class EveStrategy:
    """Interface for channel adversaries.

    Strategies are immutable configuration; all per-pulse randomness comes
    from the ``rng`` passed to :meth:`intercept`, so a strategy instance
    can serve any number of sessions.
    """

    kind: ClassVar[str]
    attack_fraction: float = 1.0

    def intercept(
        self, incoming: QuantumState, rng: random.Random
    ) -> tuple[QuantumState, EveRecord]:
        """Consume ``incoming`` and return (state to forward, record)."""
        raise NotImplementedError

    def _skips_pulse(self, rng: random.Random) -> bool:
        return self.attack_fraction < 1.0 and rng.random() >= self.attack_fraction

    def _blind_pass(
        self, incoming: QuantumState, rng: random.Random
    ) -> tuple[QuantumState, EveRecord]:
        # Unattacked pulse: forward untouched; the recorded guess is a fair
        # coin so guess strings stay complete at partial attack fractions.
        return incoming, EveRecord(
            resent_state=incoming, guessed_bit=rng.getrandbits(1)
        )


def _check_fraction(fraction: float) -> None:
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"attack_fraction must be in [0, 1], got {fraction}")


@dataclass(frozen=True, slots=True)
class NoEve(EveStrategy):
    """Passive channel: forward every state untouched, record no guesses."""

    kind: ClassVar[str] = "none"

    def intercept(self, incoming, rng):
        return incoming, EveRecord(resent_state=incoming)


@dataclass(frozen=True, slots=True)
class InterceptResend(EveStrategy):
    """Measure each attacked pulse in a uniformly random basis and forward
    the post-measurement eigenstate as the fabricated replacement."""

    attack_fraction: float = 1.0
    kind: ClassVar[str] = "intercept-resend"

    def __post_init__(self):
        _check_fraction(self.attack_fraction)

    def intercept(self, incoming, rng):
        if self._skips_pulse(rng):
            return self._blind_pass(incoming, rng)
        basis = BASES[rng.getrandbits(1)]
        bit, collapsed = measure(incoming, basis, rng)
        return collapsed, EveRecord(
            resent_state=collapsed, guessed_bit=bit, guessed_state=collapsed
        )


@dataclass(frozen=True, slots=True)
class IndirectCopyOracle(EveStrategy):
    """Identify pulses by an exact squared-overlap read against the table's
    ancilla, then forward a fresh copy of the matched state.

    Granting the exact read makes the attack transparent: the forwarded
    state equals the transmitted one, so no disturbance is ever induced
    and the guessed bits equal the sender's bits.  Pulses outside the
    agreed alphabet raise ``NoMatchError``.
    """

    reference_list: ReferenceList
    attack_fraction: float = 1.0
    kind: ClassVar[str] = "indirect-oracle"

    _bit_by_state: dict[QuantumState, int] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        _check_fraction(self.attack_fraction)
        object.__setattr__(
            self,
            "_bit_by_state",
            {e.state: decode(e.state)[0] for e in self.reference_list.entries},
        )

    def intercept(self, incoming, rng):
        if self._skips_pulse(rng):
            return self._blind_pass(incoming, rng)
        value = squared_overlap(self.reference_list.ancilla, incoming)
        matched = self.reference_list.lookup(value)
        return matched, EveRecord(
            resent_state=matched,
            guessed_bit=self._bit_by_state[matched],
            guessed_state=matched,
        )


@dataclass(frozen=True)
class IndirectCopyPhysical(EveStrategy):
    """The indirect-copy attack under lawful single-shot measurement.

    Each attacked pulse is measured once along the ancilla pair, which
    yields one binary outcome, not the continuous overlap value the oracle
    variant reads.  The guess is always the maximum-posterior signal state
    for that outcome (uniform prior, ties broken toward the lower table
    index); ``resend_rule`` decides whether that guess or the measurement
    eigenstate itself is forwarded.
    """

    reference_list: ReferenceList
    resend_rule: ResendRule = ResendRule.MAX_POSTERIOR
    attack_fraction: float = 1.0
    kind: ClassVar[str] = "indirect-physical"

    _probe_basis: Basis = field(init=False, repr=False, compare=False)
    _guess_states: tuple[QuantumState, QuantumState] = field(
        init=False, repr=False, compare=False
    )
    _guess_bits: tuple[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_fraction(self.attack_fraction)
        entries = self.reference_list.entries
        aligned = max(range(len(entries)), key=lambda i: entries[i].match_value)
        orthogonal = max(
            range(len(entries)), key=lambda i: 1.0 - entries[i].match_value
        )
        guesses = (entries[aligned].state, entries[orthogonal].state)
        object.__setattr__(
            self, "_probe_basis", ancilla_basis(self.reference_list.ancilla.angle)
        )
        object.__setattr__(self, "_guess_states", guesses)
        object.__setattr__(
            self, "_guess_bits", tuple(decode(state)[0] for state in guesses)
        )

    def posterior_guess(self, outcome: int) -> QuantumState:
        """Signal state with maximal posterior probability for ``outcome``
        (0 projects onto the ancilla, 1 onto its orthogonal partner)."""
        return self._guess_states[outcome]

    def intercept(self, incoming, rng):
        if self._skips_pulse(rng):
            return self._blind_pass(incoming, rng)
        outcome, eigenstate = measure(incoming, self._probe_basis, rng)
        guessed = self._guess_states[outcome]
        if self.resend_rule is ResendRule.MAX_POSTERIOR:
            resent = guessed
        else:
            resent = eigenstate
        return resent, EveRecord(
            resent_state=resent,
            guessed_bit=self._guess_bits[outcome],
            guessed_state=guessed,
        )
