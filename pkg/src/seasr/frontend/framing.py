"""Signal framing and pre-emphasis.

Frame t covers samples [t*shift, t*shift + length); trailing samples
short of a full frame are dropped. Pre-emphasis is the elementwise
first difference y[n] = x[n] - a*x[n-1] with y[0] = x[0], applied
before windowing.

The batch path is deliberately a loop over the same per-frame kernel
the streaming featurizer calls, so batch and streaming outputs are
bit-identical by construction rather than by numerical accident.
"""

from __future__ import annotations

import numpy as np

from ..audio import AudioBuffer
from .config import FrontendConfig, FrontendError


def num_frames(n_samples: int, length: int, shift: int) -> int:
    if n_samples < length:
        return 0
    return 1 + (n_samples - length) // shift


def hamming_window(length: int) -> np.ndarray:
    return np.hamming(length)


def windowed_frame(samples: np.ndarray, start: int, length: int,
                   coeff: float, window: np.ndarray) -> np.ndarray:
    """Pre-emphasized, windowed frame starting at an absolute sample
    index. The signal's first sample has no predecessor and passes
    through unchanged."""
    seg = samples[start:start + length]
    out = np.empty(length, dtype=np.float64)
    if start == 0:
        out[0] = seg[0]
        out[1:] = seg[1:] - coeff * samples[:length - 1]
    else:
        out[:] = seg - coeff * samples[start - 1:start + length - 1]
    return out * window


def _check_length(audio: AudioBuffer, cfg: FrontendConfig):
    length = cfg.frame_length(audio.sample_rate_hz)
    shift = cfg.frame_shift(audio.sample_rate_hz)
    n = num_frames(len(audio), length, shift)
    if n == 0:
        raise FrontendError(
            f"too-short input: {len(audio)} samples, need at least {length}")
    return length, shift, n


def raw_frames(audio: AudioBuffer, cfg: FrontendConfig) -> np.ndarray:
    """Frames of the untouched signal (the tone estimator's input)."""
    length, shift, n = _check_length(audio, cfg)
    frames = np.empty((n, length), dtype=np.float64)
    for t in range(n):
        frames[t] = audio.samples[t * shift:t * shift + length]
    return frames


def frame_signal(audio: AudioBuffer, cfg: FrontendConfig) -> np.ndarray:
    """Pre-emphasized, Hamming-windowed frames (rows), ready for MFCC."""
    length, shift, n = _check_length(audio, cfg)
    window = hamming_window(length)
    frames = np.empty((n, length), dtype=np.float64)
    for t in range(n):
        frames[t] = windowed_frame(audio.samples, t * shift, length,
                                   cfg.preemphasis_coeff, window)
    return frames
