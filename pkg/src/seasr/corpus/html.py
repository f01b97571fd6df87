"""Main-text extraction from web pages.

Built on the stdlib tolerant HTML tokenizer, not a DOM: malformed
markup degrades gracefully instead of failing. Script and style
element contents are dropped entirely, block-level tags become line
breaks, entities are decoded, and whitespace is collapsed.
"""

from __future__ import annotations

from html.parser import HTMLParser

_DROP_CONTENT = frozenset(["script", "style"])

_BLOCK_TAGS = frozenset([
    "address", "article", "aside", "blockquote", "br", "div", "dl", "dd",
    "dt", "fieldset", "figure", "footer", "form", "h1", "h2", "h3", "h4",
    "h5", "h6", "header", "hr", "li", "main", "nav", "ol", "p", "pre",
    "section", "table", "td", "th", "tr", "ul", "title",
])


_BREAK = None  # block-boundary marker; distinct from any text chunk


class _TextExtractor(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.chunks = []
        self._drop_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag in _DROP_CONTENT:
            self._drop_depth += 1
        elif tag in _BLOCK_TAGS:
            self.chunks.append(_BREAK)

    def handle_endtag(self, tag):
        if tag in _DROP_CONTENT:
            self._drop_depth = max(0, self._drop_depth - 1)
        elif tag in _BLOCK_TAGS:
            self.chunks.append(_BREAK)

    def handle_startendtag(self, tag, attrs):
        if tag in _BLOCK_TAGS:
            self.chunks.append(_BREAK)

    def handle_data(self, data):
        if not self._drop_depth:
            self.chunks.append(data)


def extract_main_text(html_bytes) -> str:
    """Visible text of a page, one line per block, whitespace collapsed.

    Newlines inside a block are whitespace like any other; only block
    tags break lines. Accepts bytes (UTF-8, lossy fallback) or str.
    Never raises on malformed markup.
    """
    if isinstance(html_bytes, bytes):
        text = html_bytes.decode("utf-8", errors="replace")
    else:
        text = html_bytes
    parser = _TextExtractor()
    parser.feed(text)
    parser.close()
    lines = []
    segment: list[str] = []
    for chunk in parser.chunks + [_BREAK]:
        if chunk is _BREAK:
            line = " ".join("".join(segment).split())
            if line:
                lines.append(line)
            segment = []
        else:
            segment.append(chunk)
    return "\n".join(lines)
