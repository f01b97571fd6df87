"""ARPA text format io.

Layout:

    \\data\\
    ngram 1=<count>
    ...

    \\1-grams:
    <log10 prob>\\t<w1 ... wN>[\\t<log10 backoff>]
    ...

    \\end\\

Counts declared in the header must match the body exactly. A context
that carries a backoff weight but was never stored as an n-gram itself
(only the run of start markers can do this) is written with its
backoff-evaluated probability so the model queries identically after a
round trip.
"""

from __future__ import annotations

from .model import BOS, EOS, UNK, NGramModel

_PRECISION = "{:.7f}"


class ArpaError(ValueError):
    pass


def write_arpa(m: NGramModel) -> str:
    entries: dict = {}
    for o in range(1, m.order + 1):
        entries[o] = {ng for ng in m.probs if len(ng) == o}
    for ctx in m.backoffs:
        entries[len(ctx)].add(ctx)

    lines = ["\\data\\"]
    for o in range(1, m.order + 1):
        lines.append(f"ngram {o}={len(entries[o])}")
    for o in range(1, m.order + 1):
        lines.append("")
        lines.append(f"\\{o}-grams:")
        for ng in sorted(entries[o]):
            p = m.probs.get(ng)
            if p is None:
                p = m.raw_cond_logprob(ng[-1], ng[:-1])
            row = _PRECISION.format(p) + "\t" + " ".join(ng)
            if ng in m.backoffs:
                row += "\t" + _PRECISION.format(m.backoffs[ng])
            lines.append(row)
    lines.append("")
    lines.append("\\end\\")
    lines.append("")
    return "\n".join(lines)


def read_arpa(text: str) -> NGramModel:
    lines = [ln.rstrip("\n") for ln in text.splitlines()]
    pos = 0

    def skip_blank():
        nonlocal pos
        while pos < len(lines) and not lines[pos].strip():
            pos += 1

    skip_blank()
    if pos >= len(lines) or lines[pos].strip() != "\\data\\":
        raise ArpaError("missing \\data\\ header")
    pos += 1

    declared: dict = {}
    while pos < len(lines) and lines[pos].strip():
        ln = lines[pos].strip()
        if not ln.startswith("ngram "):
            raise ArpaError(f"bad count line {ln!r}")
        try:
            o_str, c_str = ln[len("ngram "):].split("=")
            declared[int(o_str)] = int(c_str)
        except ValueError:
            raise ArpaError(f"bad count line {ln!r}") from None
        pos += 1
    if not declared:
        raise ArpaError("no ngram counts declared")
    order = max(declared)
    if sorted(declared) != list(range(1, order + 1)):
        raise ArpaError("ngram counts must cover orders 1..N")

    probs: dict = {}
    backoffs: dict = {}
    for o in range(1, order + 1):
        skip_blank()
        header = f"\\{o}-grams:"
        if pos >= len(lines) or lines[pos].strip() != header:
            got = lines[pos].strip() if pos < len(lines) else "<eof>"
            raise ArpaError(f"expected {header}, got {got!r}")
        pos += 1
        n_read = 0
        while pos < len(lines) and lines[pos].strip():
            ln = lines[pos].strip()
            if ln.startswith("\\"):
                break
            fields = ln.split()
            if len(fields) == o + 1:
                has_bow = False
            elif len(fields) == o + 2:
                has_bow = True
            else:
                raise ArpaError(f"bad {o}-gram line {ln!r}")
            try:
                p = float(fields[0])
                bow = float(fields[-1]) if has_bow else None
            except ValueError:
                raise ArpaError(f"bad number on line {ln!r}") from None
            ng = tuple(fields[1:o + 1])
            if ng in probs:
                raise ArpaError(f"duplicate {o}-gram {' '.join(ng)!r}")
            probs[ng] = p
            if has_bow:
                backoffs[ng] = bow
            n_read += 1
            pos += 1
        if n_read != declared[o]:
            raise ArpaError(
                f"declared {declared[o]} {o}-grams but found {n_read}")

    skip_blank()
    if pos >= len(lines) or lines[pos].strip() != "\\end\\":
        got = lines[pos].strip() if pos < len(lines) else "<eof>"
        raise ArpaError(f"expected \\end\\, got {got!r}")
    pos += 1
    skip_blank()
    if pos < len(lines):
        raise ArpaError(f"unexpected trailing content {lines[pos].strip()!r}")

    vocab = {ng[0] for ng in probs if len(ng) == 1}
    uses_markers = bool(vocab & {BOS, EOS, UNK})
    return NGramModel(order=order, probs=probs, backoffs=backoffs,
                      vocab=frozenset(vocab), uses_markers=uses_markers,
                      counts={})


def read_arpa_file(path) -> NGramModel:
    with open(path, encoding="utf-8") as f:
        return read_arpa(f.read())


def write_arpa_file(m: NGramModel, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(write_arpa(m))
