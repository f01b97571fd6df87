"""Word error rate and relative-improvement arithmetic.

WER counts come from a single optimal Levenshtein alignment with unit
costs; among equal-cost alignments the one with fewer insertions, then
fewer deletions, is chosen so the S/D/I breakdown is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Sequence


@dataclass(frozen=True)
class EvalResult:
    substitutions: int
    deletions: int
    insertions: int
    ref_token_count: int

    @property
    def error_count(self) -> int:
        return self.substitutions + self.deletions + self.insertions

    @property
    def wer(self) -> float:
        """Error percentage against the reference length."""
        return 100.0 * self.error_count / self.ref_token_count

    def __add__(self, other: "EvalResult") -> "EvalResult":
        return EvalResult(
            self.substitutions + other.substitutions,
            self.deletions + other.deletions,
            self.insertions + other.insertions,
            self.ref_token_count + other.ref_token_count,
        )


def wer(ref_tokens: Sequence[str], hyp_tokens: Sequence[str]) -> EvalResult:
    """Align hypothesis against reference and count S/D/I.

    Raises ValueError on an empty reference; an empty hypothesis is fine
    (all deletions).
    """
    ref = list(ref_tokens)
    hyp = list(hyp_tokens)
    if not ref:
        raise ValueError("empty reference")

    # DP over (total cost, insertions, deletions); lexicographic minimum
    # fixes the tie-break policy.
    n, m = len(ref), len(hyp)
    prev = [(j, j, 0) for j in range(m + 1)]  # row i=0: j insertions
    for i in range(1, n + 1):
        cur = [(i, 0, i)] + [None] * m  # column j=0: i deletions
        for j in range(1, m + 1):
            sub_cost = 0 if ref[i - 1] == hyp[j - 1] else 1
            c, ins, dele = prev[j - 1]
            best = (c + sub_cost, ins, dele)
            c, ins, dele = prev[j]  # delete ref[i-1]
            cand = (c + 1, ins, dele + 1)
            if cand < best:
                best = cand
            c, ins, dele = cur[j - 1]  # insert hyp[j-1]
            cand = (c + 1, ins + 1, dele)
            if cand < best:
                best = cand
            cur[j] = best
        prev = cur
    cost, ins, dele = prev[m]
    return EvalResult(cost - ins - dele, dele, ins, n)


def corpus_wer(pairs: Iterable[tuple[Sequence[str], Sequence[str]]]) -> EvalResult:
    """Aggregate WER over (ref, hyp) pairs.

    Counts are summed across utterances before dividing, which is not the
    same number as averaging per-utterance WERs.
    """
    total: EvalResult | None = None
    for ref, hyp in pairs:
        r = wer(ref, hyp)
        total = r if total is None else total + r
    if total is None:
        raise ValueError("no scoring pairs")
    return total


def relative_reduction(baseline_wer: float, improved_wer: float) -> float:
    """Relative improvement in percent: 100*(baseline - improved)/baseline."""
    if baseline_wer <= 0:
        raise ValueError("baseline WER must be positive")
    return 100.0 * (baseline_wer - improved_wer) / baseline_wer


def round_display(value: float, places: int = 1) -> float:
    """Half-up rounding for table display, e.g. 23.1308... -> 23.1."""
    q = Decimal(1).scaleb(-places)
    return float(Decimal(repr(value)).quantize(q, rounding=ROUND_HALF_UP))
