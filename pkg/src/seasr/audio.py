"""Audio buffers and PCM/WAV io.

Everything downstream works on float64 samples in [-1, 1]. The only
on-disk formats are mono 16-bit little-endian PCM, either wrapped in a
WAV container or headerless raw.
"""

from __future__ import annotations

import io
import wave
from dataclasses import dataclass

import numpy as np


class AudioError(ValueError):
    pass


@dataclass(frozen=True)
class AudioBuffer:
    samples: np.ndarray  # float64 in [-1, 1]
    sample_rate_hz: int

    def __post_init__(self):
        if self.sample_rate_hz <= 0:
            raise AudioError(f"sample rate must be positive, got {self.sample_rate_hz}")
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise AudioError("samples must be a 1-d sequence")
        if samples.size and (np.max(np.abs(samples)) > 1.0 or not np.all(np.isfinite(samples))):
            raise AudioError("samples must be finite and lie in [-1, 1]")
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return int(self.samples.size)

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate_hz


def pcm16_to_samples(data: bytes) -> np.ndarray:
    """Little-endian signed 16-bit PCM bytes to float64 in [-1, 1]."""
    if len(data) % 2:
        raise AudioError("PCM16 byte count must be even")
    return np.frombuffer(data, dtype="<i2").astype(np.float64) / 32768.0


def samples_to_pcm16(samples) -> bytes:
    scaled = np.clip(np.asarray(samples, dtype=np.float64), -1.0, 1.0) * 32767.0
    return np.round(scaled).astype("<i2").tobytes()


def read_wav(path_or_bytes) -> AudioBuffer:
    """Mono 16-bit PCM WAV from a path or raw file bytes."""
    if isinstance(path_or_bytes, bytes):
        stream = io.BytesIO(path_or_bytes)
    else:
        stream = open(path_or_bytes, "rb")
    try:
        with wave.open(stream, "rb") as w:
            if w.getnchannels() != 1:
                raise AudioError(f"expected mono audio, got {w.getnchannels()} channels")
            if w.getsampwidth() != 2:
                raise AudioError(f"expected 16-bit samples, got {8 * w.getsampwidth()}-bit")
            if w.getcomptype() != "NONE":
                raise AudioError(f"unsupported compression {w.getcomptype()!r}")
            rate = w.getframerate()
            data = w.readframes(w.getnframes())
    except wave.Error as e:
        raise AudioError(f"bad WAV file: {e}") from None
    finally:
        stream.close()
    return AudioBuffer(pcm16_to_samples(data), rate)


def read_raw_pcm(path, sample_rate_hz: int) -> AudioBuffer:
    with open(path, "rb") as f:
        data = f.read()
    return AudioBuffer(pcm16_to_samples(data), sample_rate_hz)


def write_wav(path, audio: AudioBuffer) -> None:
    with wave.open(str(path), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(audio.sample_rate_hz)
        w.writeframes(samples_to_pcm16(audio.samples))
