"""Full feature pipeline: 13 MFCC + 1 tone, three cumulative delta
passes, 56 columns per frame.

extract_features is the batch path. StreamingFeaturizer consumes the
same audio in arbitrary chunks and emits exactly the same rows, bit
for bit: both paths call the identical per-frame kernels
(windowed_frame -> mfcc_frame, f0_candidate, delta_row), batch as a
plain loop, streaming as the rows become computable. A row leaves the
streaming path once every input it depends on is final: the delta
stack needs six future base frames, and an unvoiced frame's tone value
needs the next voiced frame (or end of stream) to interpolate against.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from ..audio import AudioBuffer
from .config import CANONICAL_SAMPLE_RATE_HZ, FrontendConfig, FrontendError
from .deltas import append_deltas, delta_denominator, delta_row
from .framing import frame_signal, hamming_window, num_frames, raw_frames, windowed_frame
from .mfcc import NFFT, compute_mfcc, mel_filterbank, mfcc_frame
from .tone import estimate_tone, f0_candidate, fill_tone_track, interp_value

FEAT_MAGIC = b"FEAT"

# delta_row never clamps to this pseudo-length; streaming uses it while
# the true frame count is still unknown
_NO_END = 1 << 60


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    rows: np.ndarray  # (n_frames, width) float64
    frame_shift_ms: float = 10.0

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.float64)
        if rows.ndim != 2 or rows.shape[1] < 1:
            raise FrontendError("feature matrix must be 2-d with at least one column")
        if not np.all(np.isfinite(rows)):
            raise FrontendError("feature matrix contains non-finite entries")
        object.__setattr__(self, "rows", rows)

    @property
    def width(self) -> int:
        return int(self.rows.shape[1])

    def __len__(self) -> int:
        return int(self.rows.shape[0])


def _check_rate(sample_rate_hz: int):
    if sample_rate_hz != CANONICAL_SAMPLE_RATE_HZ:
        raise FrontendError(
            f"unsupported sample rate {sample_rate_hz}; the pipeline has no "
            f"resampler and expects {CANONICAL_SAMPLE_RATE_HZ}")


def extract_features(audio: AudioBuffer,
                     cfg: FrontendConfig = FrontendConfig()) -> FeatureMatrix:
    """56-dim features for a whole utterance."""
    _check_rate(audio.sample_rate_hz)
    windowed = frame_signal(audio, cfg)
    raw = raw_frames(audio, cfg)
    cepstra = compute_mfcc(windowed, cfg, audio.sample_rate_hz)
    tone = estimate_tone(raw, cfg, audio.sample_rate_hz)
    base = np.column_stack([cepstra, tone])
    return FeatureMatrix(append_deltas(base, cfg), cfg.frame_shift_ms)


class StreamingFeaturizer:
    """Chunk-by-chunk featurizer, bit-identical to extract_features.

    push() returns the rows that became final; finalize() flushes the
    rest. The concatenation of everything returned equals the batch
    matrix over the same samples.
    """

    def __init__(self, cfg: FrontendConfig = FrontendConfig(),
                 sample_rate_hz: int = CANONICAL_SAMPLE_RATE_HZ):
        _check_rate(sample_rate_hz)
        self.cfg = cfg
        self.rate = sample_rate_hz
        self._length = cfg.frame_length(sample_rate_hz)
        self._shift = cfg.frame_shift(sample_rate_hz)
        self._window = hamming_window(self._length)
        self._bank = mel_filterbank(cfg.num_mel_filters, NFFT, sample_rate_hz)
        self._denom = delta_denominator(cfg.delta_window)

        self._samples = np.empty(0, dtype=np.float64)
        self._n_frames = 0
        self._mfcc: list = []
        self._cands: list = []
        self._last_voiced: int | None = None
        self._tone: list = []  # resolved prefix of the tone track
        self._stages: list = [[], [], [], []]  # base, then one per pass
        self._emitted = 0
        self._finalized = False

    def push(self, samples) -> np.ndarray:
        """Feed samples (float array in [-1, 1]); returns finalized rows."""
        if self._finalized:
            raise FrontendError("featurizer already finalized")
        chunk = np.asarray(samples, dtype=np.float64)
        if chunk.size:
            self._samples = np.concatenate([self._samples, chunk])
        self._process_frames()
        self._resolve_tone()
        self._extend_stages(end_known=False)
        return self._take_ready()

    def finalize(self) -> np.ndarray:
        """Flush every remaining row; the stream is closed afterwards."""
        if self._finalized:
            raise FrontendError("featurizer already finalized")
        self._finalized = True
        self._process_frames()
        self._resolve_tone()
        if self._n_frames == 0:
            raise FrontendError(
                f"too-short input: {self._samples.size} samples, "
                f"need at least {self._length}")
        # trailing tone: hold the last voiced value; a fully unvoiced
        # stream pins the whole track to ln(f0_min)
        if self._last_voiced is None:
            self._tone = list(fill_tone_track(self._cands, self.cfg.f0_min_hz))
        else:
            hold = self._tone[self._last_voiced]
            self._tone.extend([hold] * (self._n_frames - len(self._tone)))
        self._extend_stages(end_known=True)
        return self._take_ready()

    # -- internals ------------------------------------------------------

    def _process_frames(self):
        while self._n_frames * self._shift + self._length <= self._samples.size:
            start = self._n_frames * self._shift
            frame = windowed_frame(self._samples, start, self._length,
                                   self.cfg.preemphasis_coeff, self._window)
            self._mfcc.append(mfcc_frame(frame, self._bank, self.cfg.num_cepstra))
            raw = self._samples[start:start + self._length]
            self._cands.append(f0_candidate(raw, self.cfg, self.rate))
            self._n_frames += 1

    def _resolve_tone(self):
        # walk unprocessed candidates; only voiced frames resolve values
        start = (self._last_voiced + 1) if self._last_voiced is not None else 0
        for i in range(start, len(self._cands)):
            f0 = self._cands[i]
            if f0 is None:
                continue
            v = math.log(f0)
            if self._last_voiced is None:
                self._tone = [v] * (i + 1)
            else:
                p, pv = self._last_voiced, self._tone[self._last_voiced]
                for t in range(p + 1, i):
                    self._tone.append(interp_value(p, pv, i, v, t))
                self._tone.append(v)
            self._last_voiced = i

    def _extend_stages(self, end_known: bool):
        base = self._stages[0]
        while len(base) < len(self._tone):
            t = len(base)
            base.append(np.concatenate([self._mfcc[t], [self._tone[t]]]))
        n_final = self._n_frames if end_known else _NO_END
        for s in range(1, len(self._stages)):
            prev, cur = self._stages[s - 1], self._stages[s]
            limit = len(prev) if end_known else max(0, len(prev) - self.cfg.delta_window)
            while len(cur) < limit:
                cur.append(delta_row(prev, len(cur), n_final,
                                     self.cfg.delta_window, self._denom))

    def _take_ready(self) -> np.ndarray:
        ready = len(self._stages[-1])
        width = self.cfg.feature_width
        if ready <= self._emitted:
            return np.empty((0, width), dtype=np.float64)
        rows = [np.concatenate([stage[t] for stage in self._stages])
                for t in range(self._emitted, ready)]
        self._emitted = ready
        return np.vstack(rows)


def write_feat(matrix: FeatureMatrix, path) -> None:
    """FEAT container: magic, u32 rows, u32 cols, row-major f32 LE."""
    rows, cols = matrix.rows.shape
    with open(path, "wb") as f:
        f.write(FEAT_MAGIC)
        f.write(struct.pack("<II", rows, cols))
        f.write(matrix.rows.astype("<f4").tobytes())


def read_feat(path) -> FeatureMatrix:
    with open(path, "rb") as f:
        blob = f.read()
    if blob[:4] != FEAT_MAGIC:
        raise FrontendError("not a FEAT file (bad magic)")
    if len(blob) < 12:
        raise FrontendError("truncated FEAT header")
    rows, cols = struct.unpack("<II", blob[4:12])
    expected = 12 + rows * cols * 4
    if len(blob) != expected:
        raise FrontendError(
            f"FEAT payload size mismatch: expected {expected} bytes, got {len(blob)}")
    data = np.frombuffer(blob[12:], dtype="<f4").astype(np.float64)
    return FeatureMatrix(data.reshape(rows, cols))
