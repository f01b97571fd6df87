"""Linear interpolation of two backoff models.

Interpolation happens at the conditional-probability level: for every
n-gram in the union of the two models' stored supports,

    P(w|h) = lambda * P_a(w|h) + (1 - lambda) * P_b(w|h)

with each side evaluated through its own backoff recursion (a word
missing from a model entirely contributes zero). Backoff weights are
then recomputed order by order so the result is a properly normalized
backoff model:

    bow(h) = (1 - sum stored P(w|h)) / (1 - sum stored P(w|tail(h)))
"""

from __future__ import annotations

import math

from .model import LMError, NGramModel


def interpolate(a: NGramModel, b: NGramModel, lam: float) -> NGramModel:
    if not 0.0 <= lam <= 1.0:
        raise LMError(f"interpolation weight must lie in [0, 1], got {lam}")
    if a.order != b.order:
        raise LMError(f"order mismatch: {a.order} vs {b.order}")
    if a.uses_markers != b.uses_markers:
        raise LMError("cannot interpolate marker and marker-free models")

    probs: dict = {}
    backoffs: dict = {}

    def eval_new(ngram) -> float:
        p = probs.get(ngram)
        if p is not None:
            return p
        if len(ngram) == 1:
            return float("-inf")
        return backoffs.get(ngram[:-1], 0.0) + eval_new(ngram[1:])

    union: dict = {}
    for ng in list(a.probs) + list(b.probs):
        union.setdefault(len(ng), set()).add(ng)

    for o in range(1, a.order + 1):
        ngrams_o = sorted(union.get(o, ()))
        for ng in ngrams_o:
            pa = 10.0 ** a.raw_cond_logprob(ng[-1], ng[:-1])
            pb = 10.0 ** b.raw_cond_logprob(ng[-1], ng[:-1])
            p = lam * pa + (1.0 - lam) * pb
            if p > 0.0:
                probs[ng] = math.log10(p)
        if o == 1:
            continue
        by_history: dict = {}
        for ng in ngrams_o:
            if ng in probs:
                by_history.setdefault(ng[:-1], []).append(ng)
        for h, stored in by_history.items():
            num = 1.0 - sum(10.0 ** probs[ng] for ng in stored)
            den = 1.0 - sum(10.0 ** eval_new(ng[1:]) for ng in stored)
            backoffs[h] = _bow_log10(num, den)

    return NGramModel(order=a.order, probs=probs, backoffs=backoffs,
                      vocab=a.vocab | b.vocab,
                      uses_markers=a.uses_markers, counts={})


def _bow_log10(num: float, den: float) -> float:
    # Degenerate corners (all mass stored, or lower order saturated)
    # collapse to "no leftover mass" / "no scaling" respectively.
    # -99 stands in for log10(0) so the weight survives ARPA io.
    if num <= 0.0:
        return -99.0
    if den <= 0.0:
        return 0.0
    return math.log10(num / den)
