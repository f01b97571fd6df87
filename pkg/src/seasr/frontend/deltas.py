"""Regression deltas.

One pass computes d[t] = sum_k k*(x[t+k] - x[t-k]) / (2*sum_k k^2) for
k = 1..window, with out-of-range indices clamped to the ends (replicate
padding). Passes are applied cumulatively: the second pass differences
the first, the third the second. The final matrix stacks the base with
every pass, so a 14-wide base and three passes give 56 columns.
"""

from __future__ import annotations

import numpy as np

from .config import FrontendConfig, FrontendError


def delta_row(rows, t: int, n: int, window: int, denom: float) -> np.ndarray:
    """One regression delta row; the kernel shared by batch and
    streaming. rows must be indexable up to min(t + window, n - 1)."""
    acc = np.zeros_like(rows[t])
    for k in range(1, window + 1):
        acc += k * (rows[min(t + k, n - 1)] - rows[max(t - k, 0)])
    return acc / denom


def delta_denominator(window: int) -> float:
    return 2.0 * sum(k * k for k in range(1, window + 1))


def delta_pass(rows: np.ndarray, window: int) -> np.ndarray:
    n = len(rows)
    denom = delta_denominator(window)
    out = np.empty_like(rows)
    for t in range(n):
        out[t] = delta_row(rows, t, n, window, denom)
    return out


def append_deltas(base: np.ndarray, cfg: FrontendConfig) -> np.ndarray:
    """Stack base with delta_order cumulative delta passes."""
    expected = cfg.num_cepstra + 1
    if base.ndim != 2 or base.shape[1] != expected:
        raise FrontendError(
            f"base width must be {expected}, got "
            f"{base.shape[1] if base.ndim == 2 else base.shape}")
    blocks = [base]
    for _ in range(cfg.delta_order):
        blocks.append(delta_pass(blocks[-1], cfg.delta_window))
    return np.hstack(blocks)
