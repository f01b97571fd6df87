from .inventory import (
    THAI_TONES,
    InventoryError,
    PhonemeClass,
    PhonemeInventory,
    PhonemeUnit,
    ToneSet,
    builtin_inventory_path,
    expand_tonal,
    load_inventory,
    load_inventory_file,
    serialize_inventory,
)
from .lex import (
    Lexicon,
    LexiconFormatError,
    LexiconViolation,
    load_lexicon,
    load_lexicon_file,
    serialize_lexicon,
    validate_lexicon,
)
from .g2p import G2PError, G2PRule, G2PRuleSet, apply_g2p, load_rules, load_rules_file

__all__ = [
    "THAI_TONES",
    "InventoryError",
    "PhonemeClass",
    "PhonemeInventory",
    "PhonemeUnit",
    "ToneSet",
    "builtin_inventory_path",
    "expand_tonal",
    "load_inventory",
    "load_inventory_file",
    "serialize_inventory",
    "Lexicon",
    "LexiconFormatError",
    "LexiconViolation",
    "serialize_lexicon",
    "load_lexicon",
    "load_lexicon_file",
    "validate_lexicon",
    "G2PError",
    "G2PRule",
    "G2PRuleSet",
    "apply_g2p",
    "load_rules",
    "load_rules_file",
]
