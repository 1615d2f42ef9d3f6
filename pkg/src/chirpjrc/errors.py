"""Exception hierarchy for the chirpjrc library."""


class ChirpJrcError(Exception):
    """Base class for all library errors."""


class ParameterError(ChirpJrcError, ValueError):
    """An argument or configuration value violates a documented precondition."""


class ConfigError(ParameterError):
    """A run configuration file is invalid (unknown key, violated invariant)."""


class BlindSpotError(ParameterError):
    """Round-trip delay reaches the pulse duration; the echo would return
    after the pulse ends and the monostatic receiver would miss it."""


class EstimationError(ChirpJrcError):
    """A frequency or target estimate could not be formed."""


class AmbiguousRegimeError(EstimationError):
    """Measured beat pair contradicts the Doppler-dominant regime
    (f_down < f_up), so the beat-pair inversion is ambiguous."""

    def __init__(self, f_up: float, f_down: float):
        super().__init__(
            f"beat pair outside Doppler-dominant regime: "
            f"f_up={f_up:.6g} Hz > f_down={f_down:.6g} Hz"
        )
        self.f_up = f_up
        self.f_down = f_down


class ResolutionUndefinedError(ChirpJrcError):
    """A -3 dB width cannot be measured on the given grid (peak off-grid or
    main lobe not resolved)."""
