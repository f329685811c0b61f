"""Exception types shared across the simulator."""


class DegenerateAncillaError(ValueError):
    """Two signal states map to the same ancilla-overlap value, so the
    overlap table is not one-to-one and cannot identify states."""


class NoMatchError(LookupError):
    """A queried value or state does not belong to the agreed signal set."""


class KeyTooShortError(ValueError):
    """The sifted key has too few bits for the requested parity rounds."""


class InvalidParamsError(ValueError):
    """Privacy-amplification parameters admit no output key."""


class LengthMismatchError(ValueError):
    """A bit string does not have the length the operation requires."""


class MissingEveBitsError(ValueError):
    """A transcript lacks the eavesdropper guesses the estimator needs."""


class InvalidConfigError(ValueError):
    """A session or experiment configuration violates its constraints."""


class SessionError(RuntimeError):
    """A session inside an experiment failed; carries the session index."""

    def __init__(self, session_index: int, message: str):
        super().__init__(f"session {session_index}: {message}")
        self.session_index = session_index
