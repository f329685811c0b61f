"""Privacy amplification by binary Toeplitz hashing.

The reconciled key W (n bits) is compressed to K = G(W) with r = n - t - s
bits, where t is the information the adversary is assumed to hold about W
and s the security margin.  G is drawn publicly at random from the
2-universal family of binary Toeplitz matrices, described by n + r - 1
seed bits; evaluation is a mod-2 convolution.

The module also provides an empirical check of what the adversary still
knows after compression: apply the same public G to her guessed key and
measure the per-bit agreement of the result with the true final key.
"""

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    InvalidParamsError,
    LengthMismatchError,
    MissingEveBitsError,
)
from .protocol import SessionTranscript

TOEPLITZ_BINARY = "toeplitz-binary"


@dataclass(frozen=True, slots=True)
class PrivacyParams:
    """Compression parameters: n input bits, t assumed leaked bits, and a
    margin of s extra bits dropped for security."""

    input_bits: int
    leak_bits: int
    margin_bits: int

    def __post_init__(self):
        if not 0 <= self.leak_bits < self.input_bits:
            raise InvalidParamsError(
                f"leak_bits must satisfy 0 <= t < n, got t={self.leak_bits}, "
                f"n={self.input_bits}"
            )
        if not 0 < self.margin_bits < self.input_bits - self.leak_bits:
            raise InvalidParamsError(
                f"margin_bits must satisfy 0 < s < n - t, got "
                f"s={self.margin_bits}, n - t = {self.input_bits - self.leak_bits}"
            )

    @property
    def output_bits(self) -> int:
        return self.input_bits - self.leak_bits - self.margin_bits


@dataclass(frozen=True)
class HashDescriptor:
    """A fully specified linear map from n-bit to r-bit strings.

    ``seed_bits`` (length n + r - 1) fills the Toeplitz diagonals: row i of
    the matrix is ``seed_bits[i : i + n]`` reversed.
    """

    family: str
    input_bits: int
    output_bits: int
    seed_bits: np.ndarray

    def __post_init__(self):
        expected = self.input_bits + self.output_bits - 1
        if len(self.seed_bits) != expected:
            raise InvalidParamsError(
                f"seed must have n + r - 1 = {expected} bits, "
                f"got {len(self.seed_bits)}"
            )


def sample_hash(params: PrivacyParams, rng: random.Random) -> HashDescriptor:
    """Draw a uniformly random descriptor; safe to publish."""
    if params.output_bits < 1:
        raise InvalidParamsError("output length must be >= 1")
    n_seed = params.input_bits + params.output_bits - 1
    word = rng.getrandbits(n_seed)
    seed = np.array(
        [(word >> i) & 1 for i in range(n_seed)], dtype=np.uint8
    )
    return HashDescriptor(
        family=TOEPLITZ_BINARY,
        input_bits=params.input_bits,
        output_bits=params.output_bits,
        seed_bits=seed,
    )


def compress(key: Sequence[int], descriptor: HashDescriptor) -> np.ndarray:
    """Apply the descriptor's map: K_i = sum_j T[i, j] W_j mod 2.

    With T[i, j] = seed[i + n - 1 - j] every output bit is one coefficient
    of the seed/key convolution, so the whole map is a single
    ``np.convolve`` followed by a parity reduction.  Linear over XOR by
    construction.
    """
    bits = np.asarray(key, dtype=np.uint8)
    n = descriptor.input_bits
    if bits.ndim != 1 or len(bits) != n:
        raise LengthMismatchError(
            f"key must have exactly {n} bits, got {len(bits)}"
        )
    full = np.convolve(
        descriptor.seed_bits.astype(np.int64), bits.astype(np.int64)
    )
    return (full[n - 1 : n - 1 + descriptor.output_bits] % 2).astype(np.uint8)


def eve_residual_information(
    transcripts: Sequence[SessionTranscript],
    params: PrivacyParams,
    rng: random.Random,
) -> float:
    """Empirical per-bit advantage of the adversary's guess of the final key.

    For each transcript the first ``params.input_bits`` bits of the
    reconciled key are compressed with a freshly drawn public hash, the
    adversary's aligned guesses are compressed with the same hash, and the
    per-bit agreement of the two outputs is averaged.  Returned is the mean
    agreement advantage over one half, clamped to [0, 0.5].

    Transcripts without adversary guesses (passive channel) carry no
    information, so an all-passive batch returns 0.0; a mixed batch raises
    ``MissingEveBitsError``.
    """
    if not transcripts:
        raise ValueError("transcripts must be non-empty")
    have_guesses = [t.eve_bits is not None for t in transcripts]
    if not any(have_guesses):
        return 0.0
    if not all(have_guesses):
        raise MissingEveBitsError(
            "cannot mix transcripts with and without adversary guesses"
        )
    n = params.input_bits
    advantages = []
    for transcript in transcripts:
        key = transcript.reconciled_key
        if key is None:
            raise ValueError(
                "transcript has no reconciled key (session was detected)"
            )
        guess = transcript.eve_reconciled_guess
        if len(key) < n:
            raise LengthMismatchError(
                f"reconciled key has {len(key)} bits, need {n}"
            )
        descriptor = sample_hash(params, rng)
        final_key = compress(key[:n], descriptor)
        eve_key = compress(guess[:n], descriptor)
        agreement = float(np.mean(final_key == eve_key))
        advantages.append(agreement - 0.5)
    mean = sum(advantages) / len(advantages)
    return min(0.5, max(0.0, mean))
