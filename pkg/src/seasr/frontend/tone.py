"""Tone feature: log-F0 with unvoiced interpolation.

Per frame, F0 is found by normalized autocorrelation over the lag
range [rate/f0_max, rate/f0_min] on the raw (unemphasized, unwindowed)
frame after mean removal. A frame is voiced when the peak correlation
reaches the voicing threshold; among lags within a small tolerance of
the peak the smallest wins, which pins the estimate to the true period
rather than one of its multiples.

The per-utterance track is ln(F0) on voiced frames; unvoiced gaps are
filled by linear interpolation between the neighboring voiced values,
leading/trailing runs are held at the nearest voiced value, and a
fully unvoiced utterance sits at ln(f0_min).
"""

from __future__ import annotations

import math

import numpy as np

from .config import CANONICAL_SAMPLE_RATE_HZ, FrontendConfig

VOICING_THRESHOLD = 0.5
PEAK_TOLERANCE = 0.01
ENERGY_FLOOR = 1e-12


def f0_candidate(raw_frame: np.ndarray, cfg: FrontendConfig,
                 sample_rate_hz: int):
    """F0 in Hz for one raw frame, or None when unvoiced.

    The per-frame kernel shared by the batch and streaming paths.
    """
    x = raw_frame - raw_frame.mean()
    n = x.size
    lag_min = max(1, math.ceil(sample_rate_hz / cfg.f0_max_hz))
    lag_max = min(int(sample_rate_hz / cfg.f0_min_hz), n - 1)
    if lag_min > lag_max:
        return None
    if float(np.dot(x, x)) < ENERGY_FLOOR:
        return None

    scores = np.full(lag_max - lag_min + 1, -1.0)
    for i, lag in enumerate(range(lag_min, lag_max + 1)):
        a = x[:n - lag]
        b = x[lag:]
        denom = math.sqrt(float(np.dot(a, a)) * float(np.dot(b, b)))
        if denom < ENERGY_FLOOR:
            continue
        scores[i] = float(np.dot(a, b)) / denom

    best = float(scores.max())
    if best < VOICING_THRESHOLD:
        return None
    # r is ~equal at every multiple of the period, and the smallest
    # multiple is the period itself: take the smallest local maximum
    # that comes within tolerance of the global peak
    last = scores.size - 1
    for i in range(scores.size):
        if scores[i] < best - PEAK_TOLERANCE:
            continue
        if (i == 0 or scores[i] >= scores[i - 1]) and \
                (i == last or scores[i] >= scores[i + 1]):
            return sample_rate_hz / (lag_min + i)
    return sample_rate_hz / (lag_min + int(np.argmax(scores)))


def interp_value(i0: int, v0: float, i1: int, v1: float, t: int) -> float:
    return v0 + (v1 - v0) * (t - i0) / (i1 - i0)


def fill_tone_track(candidates, f0_min_hz: float) -> np.ndarray:
    """ln(F0) per frame from per-frame candidates (None = unvoiced)."""
    n = len(candidates)
    voiced = [(i, math.log(f0)) for i, f0 in enumerate(candidates) if f0 is not None]
    out = np.empty(n, dtype=np.float64)
    if not voiced:
        out.fill(math.log(f0_min_hz))
        return out

    first_i, first_v = voiced[0]
    out[:first_i + 1] = first_v
    for (i0, v0), (i1, v1) in zip(voiced, voiced[1:]):
        for t in range(i0 + 1, i1):
            out[t] = interp_value(i0, v0, i1, v1, t)
        out[i1] = v1
    last_i, last_v = voiced[-1]
    out[last_i:] = last_v
    return out


def estimate_tone(raw_frames, cfg: FrontendConfig,
                  sample_rate_hz: int = CANONICAL_SAMPLE_RATE_HZ) -> np.ndarray:
    """Per-frame 1-dim tone track for a whole utterance."""
    candidates = [f0_candidate(f, cfg, sample_rate_hz) for f in raw_frames]
    return fill_tone_track(candidates, cfg.f0_min_hz)
