"""Frontend configuration and error type."""

from __future__ import annotations

from dataclasses import dataclass


class FrontendError(ValueError):
    pass


# The stack is built for one sampling rate end to end; there is no
# resampler, so other rates are rejected at the pipeline entrance.
CANONICAL_SAMPLE_RATE_HZ = 16000


@dataclass(frozen=True)
class FrontendConfig:
    frame_length_ms: float = 25.0
    frame_shift_ms: float = 10.0
    num_mel_filters: int = 23
    num_cepstra: int = 13
    delta_order: int = 3
    delta_window: int = 2
    preemphasis_coeff: float = 0.97
    f0_min_hz: float = 60.0
    f0_max_hz: float = 400.0

    def __post_init__(self):
        if self.frame_length_ms <= 0 or self.frame_shift_ms <= 0:
            raise FrontendError("frame length and shift must be positive")
        if self.frame_shift_ms > self.frame_length_ms:
            raise FrontendError("frame shift must not exceed frame length")
        if self.num_mel_filters < 1 or self.num_cepstra < 1:
            raise FrontendError("need at least one mel filter and one cepstrum")
        if self.delta_order < 0 or self.delta_window < 1:
            raise FrontendError("bad delta configuration")
        if not 0.0 <= self.preemphasis_coeff < 1.0:
            raise FrontendError("pre-emphasis coefficient must lie in [0, 1)")
        if not 0 < self.f0_min_hz < self.f0_max_hz:
            raise FrontendError("need 0 < f0_min < f0_max")

    @property
    def feature_width(self) -> int:
        # MFCC block plus the tone dimension, then one block per delta pass
        return (self.num_cepstra + 1) * (1 + self.delta_order)

    def frame_length(self, sample_rate_hz: int) -> int:
        return int(round(sample_rate_hz * self.frame_length_ms / 1000.0))

    def frame_shift(self, sample_rate_hz: int) -> int:
        return int(round(sample_rate_hz * self.frame_shift_ms / 1000.0))


CANONICAL_CONFIG = FrontendConfig()
