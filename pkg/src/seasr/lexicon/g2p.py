"""Rule-based grapheme-to-phoneme conversion.

Rules are an ordered list of (grapheme pattern, context constraints,
phoneme output). Conversion scans the word left to right and applies the
leftmost-longest matching rule; among equal-length matches the earliest
rule wins. Every character must be consumed by some rule.

Rule files are TSV: ``graphemes<TAB>phoneme [phoneme ...]`` with optional
``left=``/``right=`` constraint fields, e.g.::

    ng  N
    c   tS  right=ei
    k   ʔ   right=$       # word-final k

``^`` in a left set means word start, ``$`` in a right set word end.
"""

from __future__ import annotations

from dataclasses import dataclass

from .inventory import PhonemeInventory


class G2PError(ValueError):
    pass


@dataclass(frozen=True)
class G2PRule:
    graphemes: str
    phonemes: tuple[str, ...]
    left: str | None = None  # allowed preceding chars; '^' = word start
    right: str | None = None  # allowed following chars; '$' = word end

    def matches(self, word: str, pos: int) -> bool:
        end = pos + len(self.graphemes)
        if word[pos:end] != self.graphemes:
            return False
        if self.left is not None:
            ok = ("^" in self.left and pos == 0) or (pos > 0 and word[pos - 1] in self.left)
            if not ok:
                return False
        if self.right is not None:
            ok = ("$" in self.right and end == len(word)) or (end < len(word) and word[end] in self.right)
            if not ok:
                return False
        return True


@dataclass(frozen=True)
class G2PRuleSet:
    rules: tuple[G2PRule, ...]

    def __post_init__(self):
        if not self.rules:
            raise G2PError("empty rule set")
        for r in self.rules:
            if not r.graphemes:
                raise G2PError("rule with empty grapheme pattern")
            if not r.phonemes:
                raise G2PError(f"rule {r.graphemes!r} has no output phonemes")

    def validate_against(self, inv: PhonemeInventory) -> list[str]:
        """Output symbols missing from the inventory (empty list = valid)."""
        missing = []
        for r in self.rules:
            for p in r.phonemes:
                if p not in inv:
                    missing.append(p)
        return sorted(set(missing))


def apply_g2p(word: str, rules: G2PRuleSet) -> tuple[str, ...]:
    """Convert a word to its phoneme sequence.

    Raises G2PError naming the position and character when no rule
    consumes the grapheme at that position.
    """
    if not word:
        raise G2PError("empty word")
    out: list[str] = []
    pos = 0
    while pos < len(word):
        best: G2PRule | None = None
        for rule in rules.rules:
            if rule.matches(word, pos):
                if best is None or len(rule.graphemes) > len(best.graphemes):
                    best = rule
        if best is None:
            raise G2PError(f"no rule matches {word[pos]!r} at position {pos} in {word!r}")
        out.extend(best.phonemes)
        pos += len(best.graphemes)
    return tuple(out)


def load_rules(text: str) -> G2PRuleSet:
    rules: list[G2PRule] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) < 2:
            raise G2PError(f"line {lineno}: expected graphemes<TAB>phonemes")
        graphemes = fields[0].strip()
        phonemes: list[str] = []
        left = right = None
        for fld in fields[1:]:
            fld = fld.strip()
            if fld.startswith("left="):
                left = fld[5:]
            elif fld.startswith("right="):
                right = fld[6:]
            elif fld:
                phonemes.extend(fld.split())
        if not graphemes:
            raise G2PError(f"line {lineno}: empty grapheme pattern")
        if not phonemes:
            raise G2PError(f"line {lineno}: rule {graphemes!r} has no output phonemes")
        rules.append(G2PRule(graphemes, tuple(phonemes), left, right))
    if not rules:
        raise G2PError("empty rule set")
    return G2PRuleSet(tuple(rules))


def load_rules_file(path) -> G2PRuleSet:
    with open(path, encoding="utf-8") as f:
        return load_rules(f.read())
