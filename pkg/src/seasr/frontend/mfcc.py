"""MFCC computation: power spectrum, mel filterbank, log, DCT.

Per frame: periodogram power spectrum over a 512-point FFT, triangular
mel filterbank energies, natural log with a floor, orthonormal DCT-II,
first num_cepstra coefficients kept (C0 included).
"""

from __future__ import annotations

import numpy as np
from scipy.fft import dct

from .config import CANONICAL_SAMPLE_RATE_HZ, FrontendConfig

NFFT = 512
LOG_FLOOR = 1e-10


def hz_to_mel(hz):
    return 2595.0 * np.log10(1.0 + np.asarray(hz, dtype=np.float64) / 700.0)


def mel_to_hz(mel):
    return 700.0 * (10.0 ** (np.asarray(mel, dtype=np.float64) / 2595.0) - 1.0)


def mel_filterbank(num_filters: int, nfft: int, sample_rate_hz: int) -> np.ndarray:
    """Triangular filters (num_filters x nfft//2+1), HTK-style placement."""
    low_mel = hz_to_mel(0.0)
    high_mel = hz_to_mel(sample_rate_hz / 2.0)
    points_mel = np.linspace(low_mel, high_mel, num_filters + 2)
    bins = np.floor((nfft + 1) * mel_to_hz(points_mel) / sample_rate_hz).astype(int)

    bank = np.zeros((num_filters, nfft // 2 + 1), dtype=np.float64)
    for j in range(num_filters):
        left, center, right = bins[j], bins[j + 1], bins[j + 2]
        for i in range(left, center):
            bank[j, i] = (i - left) / (center - left)
        for i in range(center, right):
            bank[j, i] = (right - i) / (right - center)
    return bank


def power_spectrum(frame: np.ndarray, nfft: int = NFFT) -> np.ndarray:
    spectrum = np.fft.rfft(frame, n=nfft)
    return (spectrum.real ** 2 + spectrum.imag ** 2) / nfft


def mfcc_frame(frame: np.ndarray, bank: np.ndarray, num_cepstra: int) -> np.ndarray:
    """13-dim cepstra for one windowed frame. The per-frame kernel
    shared by the batch and streaming paths."""
    energies = bank @ power_spectrum(frame)
    log_energies = np.log(np.maximum(energies, LOG_FLOOR))
    return dct(log_energies, type=2, norm="ortho")[:num_cepstra]


def compute_mfcc(frames: np.ndarray, cfg: FrontendConfig,
                 sample_rate_hz: int = CANONICAL_SAMPLE_RATE_HZ) -> np.ndarray:
    """Cepstra for each windowed frame (rows)."""
    bank = mel_filterbank(cfg.num_mel_filters, NFFT, sample_rate_hz)
    out = np.empty((len(frames), cfg.num_cepstra), dtype=np.float64)
    for t, frame in enumerate(frames):
        out[t] = mfcc_frame(frame, bank, cfg.num_cepstra)
    return out
