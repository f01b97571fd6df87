"""Pronunciation lexicon: word -> phoneme sequences, plus validation.

Lexicon files are UTF-8 lines ``word<TAB>phoneme phoneme ...``; a word
with several pronunciations appears on several lines.
"""

from __future__ import annotations

from dataclasses import dataclass

from .inventory import PhonemeInventory


class LexiconFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Lexicon:
    entries: dict[str, tuple[tuple[str, ...], ...]]

    def __post_init__(self):
        for word, prons in self.entries.items():
            if not word:
                raise LexiconFormatError("empty word token")
            if not prons or any(len(p) == 0 for p in prons):
                raise LexiconFormatError(f"word {word!r} has an empty pronunciation")

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class LexiconViolation:
    kind: str  # unknown-symbol | empty-pronunciation | duplicate-entry
    word: str
    detail: str


def load_lexicon(text: str) -> Lexicon:
    entries: dict[str, list[tuple[str, ...]]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "\t" not in line:
            raise LexiconFormatError(f"line {lineno}: expected word<TAB>phonemes")
        word, pron_text = line.split("\t", 1)
        word = word.strip()
        pron = tuple(pron_text.split())
        if not word:
            raise LexiconFormatError(f"line {lineno}: empty word")
        entries.setdefault(word, []).append(pron)
    return Lexicon({w: tuple(ps) for w, ps in entries.items()})


def load_lexicon_file(path) -> Lexicon:
    with open(path, encoding="utf-8") as f:
        return load_lexicon(f.read())


def serialize_lexicon(lex: Lexicon) -> str:
    lines = []
    for word in lex.entries:
        for pron in lex.entries[word]:
            lines.append(f"{word}\t{' '.join(pron)}")
    return "\n".join(lines) + "\n"


def validate_lexicon(lex: Lexicon, inv: PhonemeInventory) -> list[LexiconViolation]:
    """Report out-of-inventory symbols, empty pronunciations and duplicates.

    An empty report means the lexicon is usable against this inventory.
    """
    violations: list[LexiconViolation] = []
    for word, prons in lex.entries.items():
        seen: set[tuple[str, ...]] = set()
        for pron in prons:
            if len(pron) == 0:
                violations.append(LexiconViolation("empty-pronunciation", word, "no phonemes"))
                continue
            for sym in pron:
                if sym not in inv:
                    violations.append(
                        LexiconViolation("unknown-symbol", word, f"symbol {sym!r} not in inventory")
                    )
            if pron in seen:
                violations.append(
                    LexiconViolation("duplicate-entry", word, f"pronunciation {' '.join(pron)!r} repeated")
                )
            seen.add(pron)
    return violations
