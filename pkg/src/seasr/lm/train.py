"""N-gram model training.

Two smoothing modes:

* ``witten-bell``: the backoff model used by the recognizer. Each
  history reserves T(h)/(c(h)+T(h)) of its mass for unseen
  continuations, where T(h) is the number of distinct observed
  continuations. Stored probabilities interpolate the lower order:

      P(w|h) = (c(h,w) + T(h) * P(w|tail(h))) / (c(h) + T(h))

  The unigram level interpolates a uniform distribution over the
  predictable vocabulary (everything except the start marker), which
  gives the unknown token its leftover mass.

* ``mle``: plain relative frequencies, no backoff, no unknown token.
  With markers disabled this is the textbook maximum-likelihood model,
  kept exactly hand-checkable for tests.
"""

from __future__ import annotations

import math
from collections import Counter

from .model import BOS, EOS, LOG10_BOS, UNK, LMError, NGramModel

SMOOTHING_MODES = ("witten-bell", "mle")

_MARKERS = (BOS, EOS, UNK)


def _normalize_corpus(corpus) -> list:
    sentences = []
    for sent in corpus:
        tokens = sent.split() if isinstance(sent, str) else list(sent)
        for t in tokens:
            if t in _MARKERS:
                raise LMError(f"corpus token collides with reserved marker {t!r}")
        sentences.append(tokens)
    if not sentences:
        raise LMError("empty corpus")
    return sentences


def _padded(sent, order: int, markers: bool):
    if markers:
        return [BOS] * (order - 1) + sent + [EOS]
    return list(sent)


def _count_ngrams(sentences, order: int, markers: bool) -> dict:
    """Counts for every order 1..order, each from its own padded stream."""
    counts: Counter = Counter()
    for o in range(1, order + 1):
        for sent in sentences:
            stream = _padded(sent, o, markers)
            for i in range(len(stream) - o + 1):
                counts[tuple(stream[i:i + o])] += 1
    return dict(counts)


def train_ngram(corpus, order: int, smoothing: str = "witten-bell",
                min_count: int = 1, markers: bool | None = None) -> NGramModel:
    """Train a backoff model from tokenized sentences.

    corpus: iterable of sentences, each a token list or a whitespace
    string. markers defaults to True for witten-bell and False for mle
    (the hand-checkable mode).
    """
    if order < 1:
        raise LMError(f"order must be >= 1, got {order}")
    if smoothing not in SMOOTHING_MODES:
        raise LMError(f"unknown smoothing {smoothing!r}; expected one of {SMOOTHING_MODES}")
    if markers is None:
        markers = smoothing == "witten-bell"
    sentences = _normalize_corpus(corpus)

    if smoothing == "witten-bell":
        if not markers:
            raise LMError("witten-bell training requires sentence markers")
        return _train_witten_bell(sentences, order, min_count)
    return _train_mle(sentences, order, markers)


def _train_mle(sentences, order: int, markers: bool) -> NGramModel:
    counts = _count_ngrams(sentences, order, markers)
    by_order: dict = {}
    for ng, c in counts.items():
        by_order.setdefault(len(ng), {})[ng] = c

    probs: dict = {}
    uni = by_order.get(1, {})
    total = sum(uni.values())
    if total == 0:
        raise LMError("empty corpus")
    for ng, c in uni.items():
        probs[ng] = math.log10(c / total)
    for o in range(2, order + 1):
        hist_totals: Counter = Counter()
        for ng, c in by_order.get(o, {}).items():
            hist_totals[ng[:-1]] += c
        for ng, c in by_order.get(o, {}).items():
            probs[ng] = math.log10(c / hist_totals[ng[:-1]])

    vocab = {ng[0] for ng in uni}
    if markers:
        vocab.update((BOS, EOS))
    return NGramModel(order=order, probs=probs, backoffs={},
                      vocab=frozenset(vocab), uses_markers=markers,
                      counts=counts)


def _train_witten_bell(sentences, order: int, min_count: int) -> NGramModel:
    word_freq: Counter = Counter()
    for sent in sentences:
        word_freq.update(sent)
    mapped = [[w if word_freq[w] >= min_count else UNK for w in sent]
              for sent in sentences]

    counts = _count_ngrams(mapped, order, markers=True)
    by_order: dict = {}
    for ng, c in counts.items():
        by_order.setdefault(len(ng), {})[ng] = c

    vocab = {w for w, c in word_freq.items() if c >= min_count}
    vocab.update(_MARKERS)
    predictable = sorted(vocab - {BOS})

    probs: dict = {}
    backoffs: dict = {}

    # Unigrams: interpolate the uniform distribution so every
    # predictable word, the unknown token included, gets mass.
    uni = by_order.get(1, {})
    c_total = sum(uni.values())
    t_root = len(uni)
    uniform = 1.0 / len(predictable)
    for w in predictable:
        p = (uni.get((w,), 0) + t_root * uniform) / (c_total + t_root)
        probs[(w,)] = math.log10(p)
    probs[(BOS,)] = LOG10_BOS

    def eval_lower(ngram) -> float:
        p = probs.get(ngram)
        if p is not None:
            return p
        if len(ngram) == 1:
            return float("-inf")
        return backoffs.get(ngram[:-1], 0.0) + eval_lower(ngram[1:])

    for o in range(2, order + 1):
        hist_totals: Counter = Counter()
        hist_types: Counter = Counter()
        for ng, c in by_order.get(o, {}).items():
            hist_totals[ng[:-1]] += c
            hist_types[ng[:-1]] += 1
        for ng, c in by_order.get(o, {}).items():
            h = ng[:-1]
            t_h = hist_types[h]
            c_h = hist_totals[h]
            lower = 10.0 ** eval_lower(ng[1:])
            p = (c + t_h * lower) / (c_h + t_h)
            probs[ng] = math.log10(p)
        for h, t_h in hist_types.items():
            backoffs[h] = math.log10(t_h / (hist_totals[h] + t_h))

    return NGramModel(order=order, probs=probs, backoffs=backoffs,
                      vocab=frozenset(vocab), uses_markers=True,
                      counts=counts)
