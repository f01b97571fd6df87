"""Backoff n-gram model container and queries.

All probabilities live in log10 (ARPA convention). A conditional
probability is resolved by the standard backoff recursion: use the
stored n-gram if present, otherwise add the context's backoff weight
and retry with the shortened history.

Models are immutable after construction; every query is read-only and
safe to call from multiple threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

BOS = "<s>"
EOS = "</s>"
UNK = "<unk>"

# The start marker is never predicted; it carries a tiny placeholder
# probability so it can ride along in ARPA files.
LOG10_BOS = -99.0

NEG_INF = float("-inf")


class LMError(ValueError):
    pass


@dataclass(frozen=True)
class NGramModel:
    """Immutable backoff model.

    probs maps an n-gram tuple to log10 P(last | rest); backoffs maps a
    context tuple to its log10 backoff weight. counts holds the raw
    training counts per n-gram (empty for models read from ARPA).
    uses_markers selects the sentence-marker/unknown-token conventions;
    marker-free models score tokens verbatim and know no <unk>.
    """

    order: int
    probs: dict = field(repr=False)
    backoffs: dict = field(repr=False)
    vocab: frozenset
    uses_markers: bool = True
    counts: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.order < 1:
            raise LMError(f"order must be >= 1, got {self.order}")

    # -- raw access ---------------------------------------------------

    def raw_count(self, ngram) -> int:
        """Training count for an n-gram tuple (0 if unseen or unknown)."""
        return self.counts.get(tuple(ngram), 0)

    def observed_histories(self) -> set:
        """Every context that has at least one stored continuation."""
        return {ng[:-1] for ng in self.probs if len(ng) > 1}

    # -- conditional probabilities -------------------------------------

    def _map_token(self, token: str) -> str:
        if self.uses_markers and token not in self.vocab:
            return UNK
        return token

    def raw_cond_logprob(self, word: str, history=()) -> float:
        """Backoff lookup without unknown-token mapping.

        A word absent from the model's unigrams yields -inf (probability
        zero). Interpolation relies on this raw view.
        """
        hist = tuple(history)
        if self.order > 1:
            hist = hist[-(self.order - 1):]
        else:
            hist = ()
        return self._backoff_logprob(hist + (word,))

    def _backoff_logprob(self, ngram) -> float:
        p = self.probs.get(ngram)
        if p is not None:
            return p
        if len(ngram) == 1:
            return NEG_INF
        bow = self.backoffs.get(ngram[:-1], 0.0)
        return bow + self._backoff_logprob(ngram[1:])

    def cond_logprob(self, word: str, history=()) -> float:
        """log10 P(word | history), mapping OOV tokens to <unk> when the
        model uses markers."""
        word = self._map_token(word)
        history = tuple(self._map_token(t) for t in history)
        return self.raw_cond_logprob(word, history)

    # -- sentence scoring ----------------------------------------------

    def sentence_logprob(self, tokens) -> float:
        """Sum of conditional log10 probs over the sentence.

        A plain string is split on whitespace, mirroring the trainer;
        anything else is taken as a token sequence. With markers, the
        history is primed with start symbols and the end marker is
        predicted as a final event. Marker-free models score exactly
        the given tokens.
        """
        tokens = tokens.split() if isinstance(tokens, str) else list(tokens)
        if not tokens:
            raise LMError("empty sentence")
        if self.uses_markers:
            stream = [BOS] * (self.order - 1) + tokens + [EOS]
            start = self.order - 1
        else:
            stream = tokens
            start = 0
        total = 0.0
        for i in range(start, len(stream)):
            ctx = tuple(stream[max(0, i - self.order + 1):i])
            total += self.cond_logprob(stream[i], ctx)
        return total

    def perplexity(self, sentences) -> float:
        """10^(-(total log10 prob) / N).

        N counts every predicted event: each token plus, with markers,
        one end marker per sentence. Start markers are context only.
        """
        sentences = [s.split() if isinstance(s, str) else list(s) for s in sentences]
        if not sentences:
            raise LMError("empty corpus")
        total = 0.0
        n_events = 0
        for sent in sentences:
            total += self.sentence_logprob(sent)
            n_events += len(sent) + (1 if self.uses_markers else 0)
        if n_events == 0:
            raise LMError("empty corpus")
        if math.isinf(total):
            return math.inf
        return 10.0 ** (-total / n_events)
