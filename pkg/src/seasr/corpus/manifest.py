"""Corpus manifests and recording-protocol validation.

A manifest is two TSV files: ``speakers.tsv`` (id, gender, age, region,
native) and ``utterances.tsv`` (speaker_id, duration_s, text).
Structural problems (unknown speaker ids, bad durations) are load
errors; the recording-protocol rules are reported as violations by
validate_manifest so a whole corpus can be audited in one pass.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class Speaker:
    speaker_id: str
    gender: str  # "m" or "f"
    age: int
    region: str
    native: bool

    def __post_init__(self):
        if not self.speaker_id:
            raise ManifestError("empty speaker id")
        if self.gender not in ("m", "f"):
            raise ManifestError(f"speaker {self.speaker_id}: gender must be 'm' or 'f'")
        if self.age <= 0:
            raise ManifestError(f"speaker {self.speaker_id}: non-positive age")


@dataclass(frozen=True)
class Utterance:
    speaker_id: str
    duration_s: float
    text: str

    def __post_init__(self):
        if self.duration_s <= 0:
            raise ManifestError(f"utterance by {self.speaker_id}: non-positive duration")


@dataclass(frozen=True)
class CorpusManifest:
    speakers: tuple
    utterances: tuple

    def __post_init__(self):
        ids = [s.speaker_id for s in self.speakers]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ManifestError(f"duplicate speaker ids: {dupes}")
        known = set(ids)
        for utt in self.utterances:
            if utt.speaker_id not in known:
                raise ManifestError(f"utterance references unknown speaker {utt.speaker_id!r}")


@dataclass(frozen=True)
class ManifestRules:
    max_words_per_sentence: int = 20
    max_sentence_repeats: int = 3
    min_age: int = 16
    max_age: int = 60
    gender_tolerance: float = 0.10

    def __post_init__(self):
        if self.max_words_per_sentence <= 0 or self.max_sentence_repeats <= 0:
            raise ManifestError("thresholds must be positive")
        if not 0 < self.min_age <= self.max_age:
            raise ManifestError("bad age range")
        if self.gender_tolerance < 0:
            raise ManifestError("negative gender tolerance")


@dataclass(frozen=True)
class RuleViolation:
    kind: str
    subject: str
    detail: str


def validate_manifest(manifest: CorpusManifest,
                      rules: ManifestRules = ManifestRules()) -> list:
    """Recording-protocol violations, empty when the corpus conforms.

    An empty manifest yields exactly one "no-speakers" advisory.
    """
    if not manifest.speakers:
        return [RuleViolation("no-speakers", "", "manifest contains no speakers")]

    violations = []

    for sp in manifest.speakers:
        if not rules.min_age <= sp.age <= rules.max_age:
            violations.append(RuleViolation(
                "age-out-of-range", sp.speaker_id,
                f"age {sp.age} outside {rules.min_age}-{rules.max_age}"))
        if not sp.native:
            violations.append(RuleViolation(
                "non-native", sp.speaker_id, "speaker is not a native speaker"))

    n_male = sum(1 for sp in manifest.speakers if sp.gender == "m")
    ratio = n_male / len(manifest.speakers)
    if abs(ratio - 0.5) > rules.gender_tolerance:
        violations.append(RuleViolation(
            "gender-imbalance", "",
            f"male fraction {ratio:.3f} deviates from 0.5 "
            f"by more than {rules.gender_tolerance}"))

    text_counts: Counter = Counter()
    for i, utt in enumerate(manifest.utterances):
        n_words = len(utt.text.split())
        if n_words >= rules.max_words_per_sentence:
            violations.append(RuleViolation(
                "sentence-too-long", f"utterance[{i}]",
                f"{n_words} words, limit is fewer than "
                f"{rules.max_words_per_sentence}"))
        text_counts[utt.text] += 1
    for text, n in sorted(text_counts.items()):
        if n > rules.max_sentence_repeats:
            violations.append(RuleViolation(
                "sentence-repeats", text,
                f"appears {n} times, limit {rules.max_sentence_repeats}"))

    return violations


def _parse_bool(s: str, where: str) -> bool:
    if s in ("0", "1"):
        return s == "1"
    raise ManifestError(f"{where}: native flag must be 0 or 1, got {s!r}")


def load_manifest(speakers_path, utterances_path) -> CorpusManifest:
    speakers = []
    with open(speakers_path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != 5:
                raise ManifestError(
                    f"{speakers_path}:{lineno}: expected 5 tab-separated fields")
            sid, gender, age_s, region, native_s = fields
            try:
                age = int(age_s)
            except ValueError:
                raise ManifestError(
                    f"{speakers_path}:{lineno}: bad age {age_s!r}") from None
            speakers.append(Speaker(sid, gender.lower(), age, region,
                                    _parse_bool(native_s, f"{speakers_path}:{lineno}")))

    utterances = []
    with open(utterances_path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t", 2)
            if len(fields) != 3:
                raise ManifestError(
                    f"{utterances_path}:{lineno}: expected speaker_id, duration_s, text")
            sid, dur_s, text = fields
            try:
                dur = float(dur_s)
            except ValueError:
                raise ManifestError(
                    f"{utterances_path}:{lineno}: bad duration {dur_s!r}") from None
            utterances.append(Utterance(sid, dur, text))

    return CorpusManifest(tuple(speakers), tuple(utterances))
