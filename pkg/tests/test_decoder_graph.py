import math

import numpy as np
import pytest

from seasr.decoder import (
    ADVANCE_PROB,
    DiagonalGaussianScorer,
    GraphError,
    STATES_PER_PHONEME,
    ScorerError,
    SELF_LOOP_PROB,
    TableScorer,
    build_graph,
    load_graph_recipe,
    load_scorer,
    write_gaussian_scorer,
    write_table_scorer,
)
from seasr.lexicon import load_inventory, load_lexicon
from seasr.lm import train_ngram

INV = load_inventory("a\tvowel\t0\nb\tplosive\t0\nd\tplosive\t0\n", "toy")
LEX = load_lexicon("ba\tb a\nda\td a\n")
LM = train_ngram(["ba da", "da ba", "ba da"], order=2)


def _graph():
    return build_graph(LEX, INV, LM)


# -- structure ------------------------------------------------------------------


def test_state_count_no_sharing():
    # "b a" and "d a" share no prefix: 4 phoneme edges * 3 states
    g = _graph()
    assert len(g) == 12
    assert g.num_pdfs == len(INV) * STATES_PER_PHONEME == 9


def test_prefix_sharing_merges_common_edges():
    lex = load_lexicon("ba\tb a\nbad\tb a d\n")
    g = build_graph(lex, INV, LM)
    # edges: b, a, d -> 9 states, not 15
    assert len(g) == 9


def test_pdf_tying_by_phoneme_and_position():
    g = _graph()
    # inventory order a=0, b=1, d=2; every 'a' chain reuses pdfs 0,1,2
    pdfs = sorted(s.pdf_id for s in g.states)
    # two copies of the 'a' chain share pdfs 0..2; b and d get their own
    assert pdfs == [0, 0, 1, 1, 2, 2, 3, 4, 5, 6, 7, 8]


def test_root_entries_split_evenly():
    g = _graph()
    assert len(g.root_entries) == 2
    for _, ln_p in g.root_entries:
        assert ln_p == pytest.approx(math.log(0.5))


def test_self_loop_and_advance_probs():
    g = _graph()
    for s in g.states:
        assert s.self_loop == pytest.approx(math.log(SELF_LOOP_PROB))
        for _, ln_p in s.arcs:
            assert ln_p <= math.log(ADVANCE_PROB) + 1e-12


def test_transition_mass_is_one_everywhere():
    g = _graph()
    for s in g.states:
        assert g.transition_mass(s.state_id) == pytest.approx(1.0, abs=1e-12)


def test_transition_mass_with_branching():
    # "ba" and "bad": after 'a' the mass splits between the 'd' edge and
    # the word-end branch for "ba"
    lex = load_lexicon("ba\tb a\nbad\tb a d\n")
    g = build_graph(lex, INV, LM)
    for s in g.states:
        assert g.transition_mass(s.state_id) == pytest.approx(1.0, abs=1e-12)
    branch_states = [s for s in g.states if s.word_ends and s.arcs]
    assert len(branch_states) == 1
    (word, ln_branch), = branch_states[0].word_ends
    assert word == "ba"
    assert ln_branch == pytest.approx(math.log(ADVANCE_PROB / 2))


def test_word_end_at_final_state_only():
    g = _graph()
    enders = {w for s in g.states for w, _ in s.word_ends}
    assert enders == {"ba", "da"}
    for s in g.states:
        for _, ln_p in s.word_ends:
            assert ln_p == pytest.approx(math.log(ADVANCE_PROB))


def test_chain_is_left_to_right():
    g = _graph()
    for s in g.states:
        for dest, _ in s.arcs:
            assert dest != s.state_id  # self loops live in self_loop only


# -- validation ---------------------------------------------------------------------


def test_empty_lexicon_rejected():
    from seasr.lexicon import Lexicon

    with pytest.raises(GraphError, match="empty lexicon"):
        build_graph(Lexicon({}), INV, LM)


def test_out_of_inventory_pronunciation_rejected():
    lex = load_lexicon("za\tz a\n")
    with pytest.raises(GraphError, match="unknown-symbol"):
        build_graph(lex, INV, LM)


def test_word_outside_lm_vocab_needs_unk():
    from seasr.lm import UNK

    lex = load_lexicon("ba\tb a\nxx\td a\n")
    mle = train_ngram(["ba ba"], order=1, smoothing="mle")
    assert UNK not in mle.vocab
    with pytest.raises(GraphError, match="no unknown token"):
        build_graph(lex, INV, mle)
    # a Witten-Bell model carries <unk>, so the same lexicon is fine
    build_graph(lex, INV, LM)


# -- recipes -----------------------------------------------------------------------


def test_load_graph_recipe_fixture(fixtures_dir):
    g = load_graph_recipe(fixtures_dir / "toy" / "toy.graph")
    assert len(g) == 12
    assert {w for s in g.states for w, _ in s.word_ends} == {"ba", "da"}


def test_recipe_missing_section(tmp_path):
    p = tmp_path / "bad.graph"
    p.write_text("[other]\nx = 1\n")
    with pytest.raises(GraphError, match="graph"):
        load_graph_recipe(p)


def test_recipe_missing_key(tmp_path):
    p = tmp_path / "bad.graph"
    p.write_text("[graph]\ninventory = x.inv\nlexicon = x.lex\n")
    with pytest.raises(GraphError, match="arpa"):
        load_graph_recipe(p)


# -- scorers -----------------------------------------------------------------------


def test_table_scorer_lookup_and_default():
    t = TableScorer({(0, 0): -1.0, (1, 2): -2.5}, default=-7.0)
    assert t.score(0, 0, None) == -1.0
    assert t.score(1, 2, None) == -2.5
    assert t.score(0, 1, None) == -7.0


def test_table_scorer_rejects_non_finite():
    with pytest.raises(ScorerError):
        TableScorer({(0, 0): math.nan})
    with pytest.raises(ScorerError):
        TableScorer({}, default=math.inf)


def test_table_scorer_round_trip(tmp_path):
    t = TableScorer({(0, 0): -1.25, (4, 17): -0.03125}, default=-8.0)
    write_table_scorer(t, tmp_path / "t.table")
    back = load_scorer(tmp_path / "t.table")
    assert isinstance(back, TableScorer)
    assert back.default == -8.0
    assert back.score(0, 0, None) == -1.25
    assert back.score(4, 17, None) == -0.03125
    assert back.score(9, 9, None) == -8.0


def test_gaussian_hand_log_density():
    # 2-d standard normal at the mean: -0.5 * 2 * ln(2*pi)
    s = DiagonalGaussianScorer(np.zeros((1, 2)), np.ones((1, 2)))
    assert s.score(0, 0, [0.0, 0.0]) == pytest.approx(-math.log(2 * math.pi))
    # one unit away in one dimension subtracts 1/2
    assert s.score(0, 0, [1.0, 0.0]) == pytest.approx(-math.log(2 * math.pi) - 0.5)


def test_gaussian_variance_scales_density():
    s = DiagonalGaussianScorer(np.array([[0.0]]), np.array([[4.0]]))
    # N(0, 4) at x=2: -0.5*(ln(2pi) + ln 4) - 0.5*(4/4)
    want = -0.5 * (math.log(2 * math.pi) + math.log(4.0)) - 0.5
    assert s.score(0, 0, [2.0]) == pytest.approx(want)


def test_gaussian_round_trip(tmp_path):
    rng = np.random.default_rng(2)
    means = rng.normal(size=(5, 3))
    variances = rng.uniform(0.5, 2.0, size=(5, 3))
    s = DiagonalGaussianScorer(means, variances)
    write_gaussian_scorer(s, tmp_path / "g.gauss")
    back = load_scorer(tmp_path / "g.gauss")
    assert isinstance(back, DiagonalGaussianScorer)
    row = rng.normal(size=3)
    for pdf in range(5):
        assert back.score(pdf, 0, row) == s.score(pdf, 0, row)


def test_gaussian_validation():
    with pytest.raises(ScorerError):
        DiagonalGaussianScorer(np.zeros((2, 3)), np.zeros((2, 3)))  # zero variance
    with pytest.raises(ScorerError):
        DiagonalGaussianScorer(np.zeros((2, 3)), np.ones((3, 2)))  # shape mismatch
    s = DiagonalGaussianScorer(np.zeros((2, 3)), np.ones((2, 3)))
    with pytest.raises(ScorerError, match="width"):
        s.score(0, 0, [1.0])
    with pytest.raises(ScorerError, match="range"):
        s.score(7, 0, [0.0, 0.0, 0.0])


def test_load_scorer_unknown_format(tmp_path):
    p = tmp_path / "x.scorer"
    p.write_text("mystery 1 2\n")
    with pytest.raises(ScorerError):
        load_scorer(p)


def test_toy_fixture_scorer_loads(fixtures_dir):
    s = load_scorer(fixtures_dir / "toy" / "toy.table")
    assert isinstance(s, TableScorer)
    assert s.default == -8.0
    assert s.score(3, 0, None) == 0.0  # 'b' pdf base in frame 0 is favored
