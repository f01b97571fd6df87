"""Search query generation from a frequency list.

Pair queries sample unordered word pairs without replacement from the
top-k list; single-word queries cover the vocabulary tail that the
top-k list misses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .frequency import FrequencyList


@dataclass(frozen=True)
class QuerySet:
    """Queries are 1- or 2-word tuples; pair queries are unordered
    (stored sorted) and duplicate-free."""

    queries: tuple
    seed: int | None = None

    def __post_init__(self):
        seen = set()
        for q in self.queries:
            if len(q) not in (1, 2):
                raise ValueError(f"query {q!r} is not 1 or 2 words")
            if len(q) == 2 and q[0] == q[1]:
                raise ValueError(f"pair query {q!r} repeats a word")
            key = tuple(sorted(q))
            if key in seen:
                raise ValueError(f"duplicate query {q!r}")
            seen.add(key)

    def as_strings(self) -> list:
        return [" ".join(q) for q in self.queries]

    def __len__(self) -> int:
        return len(self.queries)


def _pair_from_index(words, m: int):
    """Unrank m into the lexicographic-by-rank pair (i, j), i < j."""
    k = len(words)
    lo, hi = 0, k - 1

    def first(i: int) -> int:
        # number of pairs whose first element ranks below i
        return i * (2 * k - i - 1) // 2

    while lo < hi:
        mid = (lo + hi + 1) // 2
        if first(mid) <= m:
            lo = mid
        else:
            hi = mid - 1
    i = lo
    j = i + 1 + (m - first(i))
    return words[i], words[j]


def generate_pair_queries(top: FrequencyList, n: int, seed: int) -> QuerySet:
    """n distinct unordered pairs, seeded, without replacement.

    Asking for more than C(k, 2) pairs returns them all. Pairs are
    sampled by index so the full pair set is never materialized.
    """
    words = top.words()
    if len(words) < 2:
        raise ValueError("need at least 2 words to form pair queries")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    total = len(words) * (len(words) - 1) // 2
    if n >= total:
        picks = range(total)
    else:
        picks = random.Random(seed).sample(range(total), n)
    pairs = [tuple(sorted(_pair_from_index(words, m))) for m in picks]
    return QuerySet(tuple(pairs), seed=seed)


def generate_single_queries(full_vocab, top: FrequencyList) -> QuerySet:
    """One query per word outside the top list, in sorted order."""
    vocab = set(full_vocab)
    top_words = set(top.words())
    if not top_words <= vocab:
        missing = sorted(top_words - vocab)
        raise ValueError(f"top list is not a subset of the vocabulary: {missing}")
    rest = sorted(vocab - top_words)
    return QuerySet(tuple((w,) for w in rest))
