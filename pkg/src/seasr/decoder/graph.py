"""Decoding graph: lexicon prefix tree over 3-state monophone HMMs.

Every pronunciation is threaded through a shared prefix tree; each
phoneme on a tree edge expands to three left-to-right emitting states.
Acoustic state identities (pdf ids) are tied by phoneme and position:
pdf_id = phoneme_index * 3 + position, so every copy of a phoneme in
the tree scores identically.

Transitions: each state keeps 0.6 self-loop mass and spends 0.4 on
leaving. Within a phoneme the exit mass goes to the single next state;
at a phoneme-final state it splits equally over every continuation
branch: child phoneme edges plus one word-end branch per word ending
there. Word-end branches re-enter the tree root, whose k children
split the incoming mass 1/k each. Every state's outgoing mass sums to
1, which keeps the graph a proper probabilistic model.

Language model scores are not baked into the graph: word-end arcs
carry the word, and the search applies the n-gram query (times
lm_scale, in natural log) when it crosses one.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass
from pathlib import Path

from ..lexicon import Lexicon, PhonemeInventory, validate_lexicon
from ..lm import UNK, NGramModel

SELF_LOOP_PROB = 0.6
ADVANCE_PROB = 0.4
STATES_PER_PHONEME = 3


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class GraphState:
    state_id: int
    pdf_id: int
    self_loop: float  # ln prob
    arcs: tuple  # ((dest_state_id, ln_prob), ...)
    word_ends: tuple  # ((word, ln_branch_prob), ...)


@dataclass(frozen=True)
class DecodingGraph:
    states: tuple
    root_entries: tuple  # ((state_id, ln_prob), ...)
    lm: NGramModel
    num_pdfs: int

    def __len__(self) -> int:
        return len(self.states)

    def transition_mass(self, state_id: int) -> float:
        """Linear-domain outgoing probability mass of one state.

        Word-end branches carry their full branch probability here;
        the split over root entries multiplies to the same total.
        """
        s = self.states[state_id]
        mass = math.exp(s.self_loop)
        mass += sum(math.exp(p) for _, p in s.arcs)
        mass += sum(math.exp(p) for _, p in s.word_ends)
        return mass


class _TrieNode:
    __slots__ = ("children", "words")

    def __init__(self):
        self.children = {}
        self.words = []


def build_graph(lex: Lexicon, inv: PhonemeInventory, lm: NGramModel) -> DecodingGraph:
    if not lex.entries:
        raise GraphError("empty lexicon")
    violations = validate_lexicon(lex, inv)
    if violations:
        first = violations[0]
        raise GraphError(
            f"lexicon does not validate against the inventory "
            f"({len(violations)} violations; first: {first.kind} for {first.word!r})")
    has_unk = UNK in lm.vocab
    for word in lex.entries:
        if word not in lm.vocab and not has_unk:
            raise GraphError(
                f"word {word!r} is outside the LM vocabulary and the LM has "
                f"no unknown token")

    root = _TrieNode()
    for word in sorted(lex.entries):
        for pron in lex.entries[word]:
            node = root
            for phoneme in pron:
                node = node.children.setdefault(phoneme, _TrieNode())
            node.words.append(word)

    states: list = []
    ln_self = math.log(SELF_LOOP_PROB)
    ln_adv = math.log(ADVANCE_PROB)

    def new_state(pdf_id: int) -> int:
        sid = len(states)
        # arcs and word_ends patched in after the subtree is built
        states.append({"state_id": sid, "pdf_id": pdf_id,
                       "self_loop": ln_self, "arcs": [], "word_ends": []})
        return sid

    def expand(node: _TrieNode) -> list:
        """Build the subtree below node; returns (first_state_id, ...)
        one per child phoneme edge."""
        entry_ids = []
        for phoneme in sorted(node.children):
            child = node.children[phoneme]
            base_pdf = inv.symbol_index(phoneme) * STATES_PER_PHONEME
            chain = [new_state(base_pdf + pos) for pos in range(STATES_PER_PHONEME)]
            for a, b in zip(chain, chain[1:]):
                states[a]["arcs"].append((b, ln_adv))
            entry_ids.append(chain[0])

            child_entries = expand(child)
            n_branches = len(child_entries) + len(child.words)
            ln_branch = math.log(ADVANCE_PROB / n_branches)
            last = chain[-1]
            for dest in child_entries:
                states[last]["arcs"].append((dest, ln_branch))
            for word in child.words:
                states[last]["word_ends"].append((word, ln_branch))
        return entry_ids

    root_ids = expand(root)
    ln_entry = math.log(1.0 / len(root_ids))
    root_entries = tuple((sid, ln_entry) for sid in root_ids)

    frozen = tuple(
        GraphState(s["state_id"], s["pdf_id"], s["self_loop"],
                   tuple(s["arcs"]), tuple(s["word_ends"]))
        for s in states)
    return DecodingGraph(states=frozen, root_entries=root_entries, lm=lm,
                         num_pdfs=len(inv) * STATES_PER_PHONEME)


def load_graph_recipe(path) -> DecodingGraph:
    """Build a graph from a recipe file.

    INI format, one [graph] section with inventory/lexicon/arpa paths
    (resolved relative to the recipe file) and the inventory language
    code:

        [graph]
        language = toy
        inventory = toy.inv
        lexicon = toy.lex
        arpa = toy.arpa
    """
    from ..lexicon import load_inventory_file, load_lexicon_file
    from ..lm import read_arpa_file

    recipe = Path(path)
    parser = configparser.ConfigParser()
    read = parser.read(recipe)
    if not read or "graph" not in parser:
        raise GraphError(f"{path}: missing [graph] section")
    section = parser["graph"]
    for key in ("inventory", "lexicon", "arpa"):
        if key not in section:
            raise GraphError(f"{path}: missing key {key!r}")
    base = recipe.parent
    language = section.get("language", recipe.stem)
    inv = load_inventory_file(base / section["inventory"], language)
    lex = load_lexicon_file(base / section["lexicon"])
    lm = read_arpa_file(base / section["arpa"])
    return build_graph(lex, inv, lm)
