"""Acoustic feature frontend: 13 MFCC + 1 tone + three delta passes."""

from .config import (
    CANONICAL_CONFIG,
    CANONICAL_SAMPLE_RATE_HZ,
    FrontendConfig,
    FrontendError,
)
from .framing import frame_signal, num_frames, raw_frames
from .mfcc import compute_mfcc, mel_filterbank
from .tone import estimate_tone, f0_candidate, fill_tone_track
from .deltas import append_deltas, delta_pass
from .features import (
    FEAT_MAGIC,
    FeatureMatrix,
    StreamingFeaturizer,
    extract_features,
    read_feat,
    write_feat,
)

__all__ = [
    "CANONICAL_CONFIG",
    "CANONICAL_SAMPLE_RATE_HZ",
    "FrontendConfig",
    "FrontendError",
    "frame_signal",
    "num_frames",
    "raw_frames",
    "compute_mfcc",
    "mel_filterbank",
    "estimate_tone",
    "f0_candidate",
    "fill_tone_track",
    "append_deltas",
    "delta_pass",
    "FEAT_MAGIC",
    "FeatureMatrix",
    "StreamingFeaturizer",
    "extract_features",
    "read_feat",
    "write_feat",
]
