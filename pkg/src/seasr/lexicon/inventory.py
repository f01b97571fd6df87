"""Phoneme inventories and tonal expansion.

Inventory files are line-based TSV: ``symbol<TAB>class<TAB>tonal:{0,1}``,
with ``#`` comments. Tonal expansion replaces every tonal-eligible unit
``u`` by one ``u_<tone>`` unit per tone label.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

PhonemeClass = str

PHONETIC_CLASSES = frozenset(
    ["vowel", "semivowel", "diphthong", "plosive", "nasal", "fricative", "consonant-other"]
)

THAI_TONES = ("mid", "low", "falling", "high", "rising")


class InventoryError(ValueError):
    pass


@dataclass(frozen=True)
class PhonemeUnit:
    symbol: str
    phonetic_class: PhonemeClass
    tonal_eligible: bool = False

    def __post_init__(self):
        if not self.symbol or any(c.isspace() for c in self.symbol):
            raise InventoryError(f"bad phoneme symbol {self.symbol!r}")
        if self.phonetic_class not in PHONETIC_CLASSES:
            raise InventoryError(f"unknown phonetic class {self.phonetic_class!r}")


@dataclass(frozen=True)
class ToneSet:
    tones: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.tones)) != len(self.tones):
            raise InventoryError("duplicate tone labels")
        if not self.tones:
            raise InventoryError("empty tone set")

    @classmethod
    def thai(cls) -> "ToneSet":
        return cls(THAI_TONES)

    def __len__(self) -> int:
        return len(self.tones)


@dataclass(frozen=True)
class PhonemeInventory:
    language_code: str
    units: tuple[PhonemeUnit, ...]
    expanded: bool = False
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        seen = set()
        for u in self.units:
            if u.symbol in seen:
                raise InventoryError(f"duplicate phoneme symbol {u.symbol!r}")
            seen.add(u.symbol)
        if self.expanded and any(u.tonal_eligible for u in self.units):
            raise InventoryError("expanded inventory still carries tonal flags")
        object.__setattr__(self, "_index", {u.symbol: i for i, u in enumerate(self.units)})

    def __len__(self) -> int:
        return len(self.units)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._index

    def symbol_index(self, symbol: str) -> int:
        return self._index[symbol]

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(u.symbol for u in self.units)


def load_inventory(config_text: str, language_code: str = "und") -> PhonemeInventory:
    """Parse an inventory config; raises InventoryError on any malformed line."""
    units = []
    for lineno, raw in enumerate(config_text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise InventoryError(f"line {lineno}: expected 3 tab-separated fields, got {len(parts)}")
        symbol, cls, tonal = (p.strip() for p in parts)
        if tonal not in ("0", "1"):
            raise InventoryError(f"line {lineno}: tonal flag must be 0 or 1, got {tonal!r}")
        try:
            units.append(PhonemeUnit(symbol, cls, tonal == "1"))
        except InventoryError as e:
            raise InventoryError(f"line {lineno}: {e}") from None
    if not units:
        raise InventoryError("empty inventory")
    return PhonemeInventory(language_code, tuple(units))


def load_inventory_file(path, language_code: str | None = None) -> PhonemeInventory:
    import os

    code = language_code or os.path.splitext(os.path.basename(str(path)))[0]
    with open(path, encoding="utf-8") as f:
        return load_inventory(f.read(), code)


def serialize_inventory(inv: PhonemeInventory) -> str:
    lines = [f"# {inv.language_code} inventory ({len(inv)} units)"]
    for u in inv.units:
        lines.append(f"{u.symbol}\t{u.phonetic_class}\t{1 if u.tonal_eligible else 0}")
    return "\n".join(lines) + "\n"


def expand_tonal(inv: PhonemeInventory, tones: ToneSet) -> PhonemeInventory:
    """Specialize every tonal-eligible unit per tone class.

    Output size is N_nontonal + len(tones) * N_tonal; the result carries
    expanded=True and a second expansion is rejected.
    """
    if inv.expanded:
        raise InventoryError("inventory is already tone-expanded")
    units: list[PhonemeUnit] = []
    for u in inv.units:
        if u.tonal_eligible:
            for tone in tones.tones:
                units.append(PhonemeUnit(f"{u.symbol}_{tone}", u.phonetic_class, False))
        else:
            units.append(u)
    return PhonemeInventory(inv.language_code, tuple(units), expanded=True)


def builtin_inventory_path(name: str):
    """Filesystem path of a packaged inventory ('indonesian' or 'thai')."""
    ref = resources.files("seasr.data").joinpath(f"{name}.inv")
    if not ref.is_file():
        raise InventoryError(f"no builtin inventory named {name!r}")
    return ref
