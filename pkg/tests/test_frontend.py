import math

import numpy as np
import pytest

from seasr.audio import AudioBuffer, read_wav
from seasr.frontend import (
    CANONICAL_CONFIG,
    FeatureMatrix,
    FrontendConfig,
    FrontendError,
    StreamingFeaturizer,
    append_deltas,
    compute_mfcc,
    delta_pass,
    estimate_tone,
    extract_features,
    f0_candidate,
    fill_tone_track,
    frame_signal,
    mel_filterbank,
    num_frames,
    raw_frames,
    read_feat,
    write_feat,
)
from seasr.frontend.framing import hamming_window, windowed_frame

from oracles import naive_delta, naive_mfcc_frame


def _buffer(samples):
    return AudioBuffer(np.asarray(samples, dtype=np.float64), 16000)


def _sine(freq_hz, n, amplitude=0.5):
    return amplitude * np.sin(2 * np.pi * freq_hz * np.arange(n) / 16000)


# -- framing ---------------------------------------------------------------


def test_frame_count_one_second():
    assert num_frames(16000, 400, 160) == 98


def test_frame_count_minimum():
    assert num_frames(400, 400, 160) == 1
    assert num_frames(559, 400, 160) == 1
    assert num_frames(560, 400, 160) == 2


def test_too_short_input_raises():
    with pytest.raises(FrontendError, match="too-short"):
        frame_signal(_buffer(np.zeros(399)), CANONICAL_CONFIG)


def test_hamming_endpoints():
    w = hamming_window(400)
    assert w[0] == pytest.approx(0.08, abs=1e-15)
    assert w[-1] == pytest.approx(0.08, abs=1e-15)
    assert np.max(w) <= 1.0


def test_preemphasis_first_sample_has_no_predecessor():
    x = np.linspace(-0.5, 0.5, 600)
    w = hamming_window(400)
    first = windowed_frame(x, 0, 400, 0.97, w)
    assert first[0] == pytest.approx(x[0] * 0.08)
    assert first[1] == pytest.approx((x[1] - 0.97 * x[0]) * w[1])


def test_preemphasis_crosses_frame_boundary():
    x = np.linspace(-0.5, 0.5, 600)
    w = hamming_window(400)
    second = windowed_frame(x, 160, 400, 0.97, w)
    # sample 160's predecessor is sample 159 from the previous frame
    assert second[0] == pytest.approx((x[160] - 0.97 * x[159]) * w[0])


def test_raw_frames_untouched():
    x = np.linspace(-0.5, 0.5, 600)
    frames = raw_frames(_buffer(x), CANONICAL_CONFIG)
    assert frames.shape == (2, 400)
    assert np.array_equal(frames[1], x[160:560])


# -- MFCC -------------------------------------------------------------------


def test_mfcc_matches_checked_in_golden(fixtures_dir):
    audio = read_wav(fixtures_dir / "mfcc" / "signal.wav")
    ours = compute_mfcc(frame_signal(audio, CANONICAL_CONFIG), CANONICAL_CONFIG)
    golden = np.loadtxt(fixtures_dir / "mfcc" / "golden.txt")
    assert ours.shape == golden.shape == (8, 13)
    assert np.max(np.abs(ours - golden)) < 1e-8


def test_mfcc_matches_live_naive_dft():
    rng = np.random.default_rng(11)
    x = np.clip(_sine(250, 640) + rng.normal(0, 0.05, 640), -1, 1)
    ours = compute_mfcc(frame_signal(_buffer(x), CANONICAL_CONFIG), CANONICAL_CONFIG)
    naive = naive_mfcc_frame(x.tolist(), 1)
    assert np.max(np.abs(ours[1] - np.array(naive))) < 1e-8


def test_mel_filterbank_shape_and_range():
    bank = mel_filterbank(23, 512, 16000)
    assert bank.shape == (23, 257)
    assert np.all(bank >= 0.0) and np.all(bank <= 1.0)
    assert np.all(bank.sum(axis=1) > 0)


def test_log_floor_bounds_silence():
    rows = compute_mfcc(np.zeros((1, 400)), CANONICAL_CONFIG)
    # all filterbank outputs floored at 1e-10: c0 = sqrt(23) * ln(1e-10)
    assert rows[0, 0] == pytest.approx(math.sqrt(23) * math.log(1e-10))
    assert np.max(np.abs(rows[0, 1:])) < 1e-9


# -- tone --------------------------------------------------------------------


def test_pure_sine_f0_exact_at_integer_lag():
    # 160 Hz at 16 kHz has an exactly integer period of 100 samples
    frames = raw_frames(_buffer(_sine(160, 16000)), CANONICAL_CONFIG)
    track = estimate_tone(frames, CANONICAL_CONFIG)
    assert np.max(np.abs(track - math.log(160))) == 0.0


def test_sine_f0_within_quantization():
    frames = raw_frames(_buffer(_sine(200, 8000)), CANONICAL_CONFIG)
    track = estimate_tone(frames, CANONICAL_CONFIG)
    # 16000/200 = 80 samples, integer: exact again
    assert np.max(np.abs(track - math.log(200))) < 1e-12


def test_octave_guard_prefers_true_period():
    # the score is also ~1 at lag 200 (two periods); the smallest local
    # max within tolerance must win
    f0 = f0_candidate(_sine(160, 400), CANONICAL_CONFIG, 16000)
    assert f0 == pytest.approx(160.0)


def test_silence_is_unvoiced():
    assert f0_candidate(np.zeros(400), CANONICAL_CONFIG, 16000) is None


def test_noise_is_unvoiced():
    rng = np.random.default_rng(3)
    frame = rng.uniform(-0.5, 0.5, 400)
    assert f0_candidate(frame, CANONICAL_CONFIG, 16000) is None


def test_unvoiced_gap_linear_interpolation():
    track = fill_tone_track([160.0, None, None, None, 320.0], 60.0)
    lo, hi = math.log(160), math.log(320)
    expected = [lo, lo + (hi - lo) / 4, lo + (hi - lo) / 2, lo + 3 * (hi - lo) / 4, hi]
    assert np.allclose(track, expected, atol=1e-12)


def test_edges_hold_nearest_voiced_value():
    track = fill_tone_track([None, None, 100.0, None], 60.0)
    assert np.allclose(track, math.log(100))


def test_all_unvoiced_sits_at_floor():
    track = fill_tone_track([None, None, None], 60.0)
    assert np.allclose(track, math.log(60))


def test_voiced_silence_voiced_track():
    audio = np.concatenate([_sine(160, 6400), np.zeros(3200), _sine(160, 6400)])
    frames = raw_frames(_buffer(audio), CANONICAL_CONFIG)
    track = estimate_tone(frames, CANONICAL_CONFIG)
    # frames straddling the gap may land one lag off; interior ones are exact
    assert np.max(np.abs(track - math.log(160))) < math.log(100 / 99) + 1e-12
    assert np.max(np.abs(track[:30] - math.log(160))) == 0.0
    assert np.max(np.abs(track[-30:] - math.log(160))) == 0.0


# -- deltas -------------------------------------------------------------------


def test_delta_of_constant_is_zero():
    rows = np.tile(np.array([3.0, -1.0, 0.25]), (40, 1))
    assert np.max(np.abs(delta_pass(rows, 2))) == 0.0


def test_delta_of_ramp_hand_case():
    ramp = np.arange(5.0).reshape(5, 1)
    # clamped-window regression: [.5, .8, 1, .8, .5]
    assert delta_pass(ramp, 2).ravel().tolist() == [0.5, 0.8, 1.0, 0.8, 0.5]


def test_delta_matches_naive_padding_oracle():
    rng = np.random.default_rng(5)
    rows = rng.normal(size=(12, 4))
    ours = delta_pass(rows, 2)
    naive = np.array(naive_delta(rows.tolist(), 2))
    assert np.max(np.abs(ours - naive)) < 1e-12


def test_append_deltas_width():
    base = np.random.default_rng(9).normal(size=(20, 14))
    full = append_deltas(base, CANONICAL_CONFIG)
    assert full.shape == (20, 56)
    # first block is the base, second is its delta
    assert np.array_equal(full[:, :14], base)
    assert np.allclose(full[:, 14:28], delta_pass(base, 2))


def test_append_deltas_rejects_wrong_width():
    with pytest.raises(FrontendError):
        append_deltas(np.zeros((5, 13)), CANONICAL_CONFIG)


# -- whole-utterance batch -----------------------------------------------------


def test_extract_features_shape_one_second():
    feats = extract_features(_buffer(_sine(160, 16000)))
    assert feats.rows.shape == (98, 56)
    assert feats.width == 56


def test_extract_features_rejects_wrong_rate():
    with pytest.raises(FrontendError, match="16000"):
        extract_features(AudioBuffer(np.zeros(8000), 8000))


def test_tone_column_is_last_base_column():
    feats = extract_features(_buffer(_sine(160, 16000)))
    assert np.allclose(feats.rows[:, 13], math.log(160))


# -- streaming equivalence -------------------------------------------------------


def _random_audio(rng, n):
    voiced = _sine(rng.integers(100, 320), n, 0.4)
    noise = rng.normal(0, 0.1, n)
    gate = np.repeat(rng.integers(0, 2, size=n // 800 + 1), 800)[:n]
    return np.clip(voiced * gate + noise * (1 - gate), -1, 1)


def _random_chunks(rng, total):
    cuts = sorted(rng.choice(np.arange(1, total), size=rng.integers(0, 6), replace=False))
    return np.split(np.arange(total), cuts)


def test_streaming_equals_batch_bit_exact():
    rng = np.random.default_rng(42)
    for _ in range(8):
        n = int(rng.integers(500, 7000))
        audio = _random_audio(rng, n)
        batch = extract_features(_buffer(audio)).rows
        feat = StreamingFeaturizer(CANONICAL_CONFIG)
        emitted = []
        pos = 0
        while pos < n:
            step = int(rng.integers(1, 2000))
            out = feat.push(audio[pos:pos + step])
            if len(out):
                emitted.append(out)
            pos += step
        tail = feat.finalize()
        if len(tail):
            emitted.append(tail)
        streamed = np.vstack(emitted)
        assert streamed.shape == batch.shape
        assert np.array_equal(streamed, batch)


def test_streaming_single_push_equals_batch():
    audio = _sine(220, 4800)
    batch = extract_features(_buffer(audio)).rows
    feat = StreamingFeaturizer(CANONICAL_CONFIG)
    parts = [feat.push(audio), feat.finalize()]
    streamed = np.vstack([p for p in parts if len(p)])
    assert np.array_equal(streamed, batch)


def test_streaming_finalize_twice_rejected():
    feat = StreamingFeaturizer(CANONICAL_CONFIG)
    feat.push(_sine(160, 1000))
    feat.finalize()
    with pytest.raises(FrontendError):
        feat.finalize()


def test_streaming_too_short_raises():
    feat = StreamingFeaturizer(CANONICAL_CONFIG)
    feat.push(np.zeros(100))
    with pytest.raises(FrontendError, match="too-short"):
        feat.finalize()


# -- feature file io ---------------------------------------------------------------


def test_feat_round_trip(tmp_path):
    rows = np.random.default_rng(1).normal(size=(17, 56))
    write_feat(FeatureMatrix(rows), tmp_path / "x.feat")
    back = read_feat(tmp_path / "x.feat")
    assert back.rows.shape == (17, 56)
    assert np.array_equal(back.rows, rows.astype(np.float32).astype(np.float64))


def test_feat_rejects_truncation(tmp_path):
    rows = np.zeros((4, 56))
    write_feat(FeatureMatrix(rows), tmp_path / "x.feat")
    data = (tmp_path / "x.feat").read_bytes()
    (tmp_path / "bad.feat").write_bytes(data[:-8])
    with pytest.raises(FrontendError):
        read_feat(tmp_path / "bad.feat")


def test_feature_matrix_validation():
    with pytest.raises(FrontendError):
        FeatureMatrix(np.array([[np.inf, 0.0]]))
    with pytest.raises(FrontendError):
        FeatureMatrix(np.zeros(5))


def test_config_validation():
    with pytest.raises(FrontendError):
        FrontendConfig(frame_shift_ms=30.0)  # shift > length
    with pytest.raises(FrontendError):
        FrontendConfig(preemphasis_coeff=1.0)
    with pytest.raises(FrontendError):
        FrontendConfig(f0_min_hz=500.0)  # min above max
    assert CANONICAL_CONFIG.feature_width == 56
