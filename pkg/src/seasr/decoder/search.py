"""Viterbi beam search over a decoding graph.

Tokens are keyed by (graph state, LM history); per frame each token
self-loops, advances along tree arcs, or crosses a word-end branch
(which applies the scaled LM score, extends the history, and re-enters
the tree root). Recombination keeps the best score per key; ties keep
the earliest token in (state id, history) order, so identical inputs
always produce identical outputs.

Pruning is a beam margin below the frame's best score followed by a
max-active cutoff. With beam = inf and no cutoff the search is exact.

The incremental decoder is the primary implementation; batch
viterbi_decode pushes all rows and finalizes, which is what makes the
batch/streaming equivalence structural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..lm import BOS, EOS, NGramModel
from .graph import DecodingGraph

LN10 = math.log(10.0)


class SearchFailure(Exception):
    """No complete path survived the search. Distinct from a decode
    that legitimately returns words (or an empty partial)."""


@dataclass(frozen=True)
class BeamConfig:
    beam: float = math.inf  # log-prob margin below the frame best
    max_active: int | None = None  # None = unbounded
    lm_scale: float = 1.0
    insertion_penalty: float = 0.0  # added per emitted word, ln domain

    def __post_init__(self):
        if not self.beam > 0:
            raise ValueError(f"beam must be positive, got {self.beam}")
        if self.max_active is not None and self.max_active < 1:
            raise ValueError(f"max_active must be >= 1, got {self.max_active}")
        if self.lm_scale < 0:
            raise ValueError("lm_scale must be non-negative")


@dataclass(frozen=True)
class Hypothesis:
    words: tuple
    score: float
    boundaries: tuple  # ((start_frame, end_frame), ...) per word

    def __post_init__(self):
        if not math.isfinite(self.score):
            raise ValueError("hypothesis score must be finite")
        if len(self.words) != len(self.boundaries):
            raise ValueError("one boundary pair per word required")
        prev_end = 0
        for start, end in self.boundaries:
            if start != prev_end or end <= start:
                raise ValueError(f"boundaries must tile the frames, got {self.boundaries}")
            prev_end = end

    @property
    def text(self) -> str:
        return " ".join(self.words)


def _history_start(lm: NGramModel):
    if lm.uses_markers and lm.order > 1:
        return (BOS,) * (lm.order - 1)
    return ()


def _history_push(history, word, lm: NGramModel):
    if lm.order == 1:
        return ()
    return (history + (word,))[-(lm.order - 1):]


class IncrementalDecoder:
    """Streaming Viterbi search; push feature rows, then finalize.

    Back-pointers are shared cons cells (prev, word, end_frame), so
    extending a hypothesis is O(1) and partials are cheap to read.
    """

    def __init__(self, graph: DecodingGraph, scorer, cfg: BeamConfig = BeamConfig()):
        self.graph = graph
        self.scorer = scorer
        self.cfg = cfg
        self._lm = graph.lm
        self._frame = 0
        self._width: int | None = None
        self._finalized = False
        # key (state_id, history) -> [score, back]
        self._tokens: dict = {}

    # -- feeding --------------------------------------------------------

    def push(self, rows) -> Hypothesis:
        """Consume rows (n x width) and return the current partial
        hypothesis: completed words along the best live path."""
        if self._finalized:
            raise SearchFailure("decoder already finalized")
        rows = np.atleast_2d(np.asarray(rows, dtype=np.float64))
        if rows.size == 0:
            return self.partial()
        if self._width is None:
            self._width = rows.shape[1]
        elif rows.shape[1] != self._width:
            raise ValueError(
                f"feature width changed from {self._width} to {rows.shape[1]}")
        for row in rows:
            self._step(row)
        return self.partial()

    def _step(self, row):
        emit = {}

        def score_state(sid):
            if sid not in emit:
                emit[sid] = self.scorer.score(
                    self.graph.states[sid].pdf_id, self._frame, row)
            return emit[sid]

        new_tokens: dict = {}

        def offer(key, score, back):
            cur = new_tokens.get(key)
            if cur is None or score > cur[0]:
                new_tokens[key] = [score, back]

        if self._frame == 0 and not self._tokens:
            hist = _history_start(self._lm)
            for sid, ln_p in self.graph.root_entries:
                offer((sid, hist), ln_p + score_state(sid), None)
        else:
            for (sid, hist), (score, back) in sorted(self._tokens.items()):
                state = self.graph.states[sid]
                offer((sid, hist), score + state.self_loop + score_state(sid), back)
                for dest, ln_p in state.arcs:
                    offer((dest, hist), score + ln_p + score_state(dest), back)
                for word, ln_branch in state.word_ends:
                    lm_cost = (self.cfg.lm_scale * LN10
                               * self._lm.cond_logprob(word, hist)
                               + self.cfg.insertion_penalty)
                    hist2 = _history_push(hist, word, self._lm)
                    back2 = (back, word, self._frame)
                    base = score + ln_branch + lm_cost
                    for rid, ln_e in self.graph.root_entries:
                        offer((rid, hist2), base + ln_e + score_state(rid), back2)

        self._tokens = self._prune(new_tokens)
        self._frame += 1

    def _prune(self, tokens: dict) -> dict:
        if not tokens:
            return tokens
        best = max(score for score, _ in tokens.values())
        cutoff = best - self.cfg.beam
        survivors = {k: v for k, v in tokens.items() if v[0] >= cutoff}
        if self.cfg.max_active is not None and len(survivors) > self.cfg.max_active:
            ranked = sorted(survivors.items(), key=lambda kv: (-kv[1][0], kv[0]))
            survivors = dict(ranked[:self.cfg.max_active])
        return survivors

    # -- readout --------------------------------------------------------

    @staticmethod
    def _unwind(back):
        words = []
        ends = []
        while back is not None:
            back, word, end = back
            words.append(word)
            ends.append(end)
        words.reverse()
        ends.reverse()
        starts = [0] + ends[:-1]
        return tuple(words), tuple(zip(starts, ends))

    def partial(self) -> Hypothesis:
        """Best-path completed words so far; empty before any word
        boundary has been crossed."""
        if not self._tokens:
            return Hypothesis((), 0.0, ())
        (sid, hist), (score, back) = min(
            self._tokens.items(), key=lambda kv: (-kv[1][0], kv[0]))
        words, bounds = self._unwind(back)
        return Hypothesis(words, score, bounds)

    def finalize(self) -> Hypothesis:
        """Terminate at a word boundary, applying the sentence-end LM
        score. Raises SearchFailure when no complete path survived."""
        if self._finalized:
            raise SearchFailure("decoder already finalized")
        self._finalized = True
        if self._frame == 0:
            raise SearchFailure("no frames were pushed")

        best = None
        for (sid, hist), (score, back) in sorted(self._tokens.items()):
            state = self.graph.states[sid]
            for word, ln_branch in state.word_ends:
                lm_cost = (self.cfg.lm_scale * LN10
                           * self._lm.cond_logprob(word, hist)
                           + self.cfg.insertion_penalty)
                total = score + ln_branch + lm_cost
                if self._lm.uses_markers:
                    hist2 = _history_push(hist, word, self._lm)
                    total += (self.cfg.lm_scale * LN10
                              * self._lm.cond_logprob(EOS, hist2))
                if math.isfinite(total) and (best is None or total > best[0]):
                    best = (total, back, word)
        if best is None:
            raise SearchFailure(
                "no path reached a word boundary (beam too tight or "
                "utterance too short)")
        total, back, word = best
        words, bounds = self._unwind((back, word, self._frame))
        return Hypothesis(words, total, bounds)


def viterbi_decode(features, graph: DecodingGraph, scorer,
                   cfg: BeamConfig = BeamConfig()) -> Hypothesis:
    """Batch decode: push everything, then finalize."""
    rows = getattr(features, "rows", features)
    rows = np.asarray(rows, dtype=np.float64)
    if rows.size == 0:
        raise ValueError("empty feature matrix")
    dec = IncrementalDecoder(graph, scorer, cfg)
    dec.push(rows)
    return dec.finalize()
