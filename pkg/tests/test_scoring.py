import math
import random

import pytest

from seasr.scoring import EvalResult, corpus_wer, relative_reduction, round_display, wer


# -- hand-checked WER cases -----------------------------------------------------


def test_wer_identical_is_zero():
    r = wer("harga beras naik".split(), "harga beras naik".split())
    assert (r.substitutions, r.deletions, r.insertions) == (0, 0, 0)
    assert r.wer == 0.0


def test_wer_half_wrong_is_fifty():
    # 4 ref words, one substitution + one deletion = 2 errors -> 50%
    r = wer("a b c d".split(), "a x c".split())
    assert (r.substitutions, r.deletions, r.insertions) == (1, 1, 0)
    assert r.wer == 50.0


def test_wer_all_wrong_is_hundred():
    r = wer("a b".split(), "x y".split())
    assert (r.substitutions, r.deletions, r.insertions) == (2, 0, 0)
    assert r.wer == 100.0


def test_wer_pure_insertions():
    r = wer("a".split(), "a b c".split())
    assert (r.substitutions, r.deletions, r.insertions) == (0, 0, 2)
    assert r.wer == 200.0  # insertions can push WER past 100


def test_wer_empty_hypothesis():
    r = wer("a b c".split(), [])
    assert (r.substitutions, r.deletions, r.insertions) == (0, 3, 0)
    assert r.wer == 100.0


def test_wer_empty_reference_rejected():
    with pytest.raises(ValueError, match="empty reference"):
        wer([], "a b".split())
    with pytest.raises(ValueError, match="empty reference"):
        wer([], [])


def test_wer_alignment_prefers_fewer_insertions():
    # cost ties are broken (cost, ins, del): substitution wins over ins+del
    r = wer("a".split(), "b".split())
    assert (r.substitutions, r.deletions, r.insertions) == (1, 0, 0)


def test_wer_classic_alignment():
    # ref: the cat sat / hyp: the cat sat down -> 1 insertion over 3 words
    r = wer("the cat sat".split(), "the cat sat down".split())
    assert (r.substitutions, r.deletions, r.insertions) == (0, 0, 1)
    assert r.wer == pytest.approx(100 / 3)


# -- aggregation ------------------------------------------------------------------


def test_corpus_wer_sums_counts_not_rates():
    # line 1: 1 ref word, 1 error (100%); line 2: 3 ref words, 0 errors (0%)
    # summing counts: 1 error / 4 words = 25.0; averaging rates would say 50.0
    pairs = [
        ("x".split(), "y".split()),
        ("a b c".split(), "a b c".split()),
    ]
    agg = corpus_wer(pairs)
    assert agg.wer == 25.0
    mean_of_rates = sum(wer(r, h).wer for r, h in pairs) / 2
    assert mean_of_rates == 50.0
    assert agg.wer != mean_of_rates


def test_eval_result_addition_matches_corpus():
    pairs = [("a b".split(), "a x".split()), ("c d e".split(), "c d".split())]
    total = wer(*pairs[0]) + wer(*pairs[1])
    assert total == corpus_wer(pairs)
    assert total.ref_token_count == 5
    assert total.error_count == 2


def test_corpus_wer_empty_iterable_rejected():
    with pytest.raises(ValueError, match="no scoring pairs"):
        corpus_wer([])


# -- relative reduction and the published numbers -----------------------------------


def test_relative_reduction_paper_triples():
    baselines = [42.8, 38.8, 37.6]
    improved = [32.9, 29.0, 27.3]
    shown = [round_display(relative_reduction(b, i)) for b, i in zip(baselines, improved)]
    assert shown == [23.1, 25.3, 27.4]
    assert f"{min(shown)}%-{max(shown)}%" == "23.1%-27.4%"


def test_relative_reduction_hand_values():
    assert relative_reduction(50.0, 25.0) == 50.0
    assert relative_reduction(40.0, 40.0) == 0.0
    assert relative_reduction(10.0, 20.0) == -100.0


def test_relative_reduction_rejects_zero_baseline():
    with pytest.raises(ValueError):
        relative_reduction(0.0, 1.0)


def test_round_display_half_up():
    # banker's rounding would give 0.2 for 0.25; display rounding must not
    assert round_display(0.25) == 0.3
    assert round_display(0.35) == 0.4
    assert round_display(23.0841121, 1) == 23.1
    assert round_display(2.5, 0) == 3.0
    assert round_display(-0.25) == -0.3


def test_round_display_places():
    assert round_display(1.23456, 3) == 1.235
    assert round_display(1.0, 1) == 1.0


# -- randomized properties -------------------------------------------------------------


def _rand_tokens(rng, n):
    return [rng.choice("abcdef") for _ in range(n)]


def test_wer_is_a_valid_edit_distance():
    rng = random.Random(17)
    for _ in range(200):
        ref = _rand_tokens(rng, rng.randrange(1, 8))
        hyp = _rand_tokens(rng, rng.randrange(1, 8))
        r = wer(ref, hyp)
        d = r.error_count
        # metric bounds for edit distance
        assert d >= abs(len(ref) - len(hyp))
        assert d <= max(len(ref), len(hyp))
        assert (d == 0) == (ref == hyp)
        # symmetry of the distance (ins and del swap roles)
        back = wer(hyp, ref)
        assert back.error_count == d
        assert (back.insertions, back.deletions) == (r.deletions, r.insertions)


def test_wer_triangle_inequality():
    rng = random.Random(23)
    for _ in range(100):
        a = _rand_tokens(rng, rng.randrange(1, 6))
        b = _rand_tokens(rng, rng.randrange(1, 6))
        c = _rand_tokens(rng, rng.randrange(1, 6))
        ab = wer(a, b).error_count
        bc = wer(b, c).error_count
        ac = wer(a, c).error_count
        assert ac <= ab + bc
