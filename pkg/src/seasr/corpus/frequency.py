"""Word frequency ranking over training transcripts."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass


@dataclass(frozen=True)
class FrequencyList:
    """(word, count) pairs, count descending, ties broken lexicographically."""

    ranked: tuple

    def __post_init__(self):
        for i, (word, count) in enumerate(self.ranked):
            if count <= 0:
                raise ValueError(f"non-positive count for {word!r}")
            if i and (-self.ranked[i - 1][1], self.ranked[i - 1][0]) >= (-count, word):
                raise ValueError("ranking violates the count/tie order")

    def words(self) -> tuple:
        return tuple(w for w, _ in self.ranked)

    def __len__(self) -> int:
        return len(self.ranked)

    def __iter__(self):
        return iter(self.ranked)


def build_frequency_list(transcripts, k: int) -> FrequencyList:
    """Top-k words by count. Accepts token lists or whitespace strings.

    k beyond the vocabulary size returns the whole vocabulary.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    counts: Counter = Counter()
    for sent in transcripts:
        counts.update(sent.split() if isinstance(sent, str) else sent)
    if not counts:
        raise ValueError("empty transcripts")
    ranked = sorted(counts.items(), key=lambda wc: (-wc[1], wc[0]))
    return FrequencyList(tuple(ranked[:k]))
