"""URL records, filtering, and the offline search provider."""

from __future__ import annotations

from dataclasses import dataclass
from urllib.parse import urlsplit

DEFAULT_BLOCKED_EXTENSIONS = frozenset(
    ["pdf", "ppt", "pptx", "doc", "docx", "jpg", "jpeg", "png", "gif", "zip"]
)


@dataclass(frozen=True)
class UrlRecord:
    url: str
    source_query: str = ""
    fetch_status: str = "pending"

    def __post_init__(self):
        if _host_of(self.url) is None:
            raise ValueError(f"not an absolute http(s) URL: {self.url!r}")


def _host_of(url: str):
    """Lowercased host for absolute http(s) URLs, else None."""
    try:
        parts = urlsplit(url)
    except ValueError:
        return None
    if parts.scheme not in ("http", "https"):
        return None
    try:
        host = parts.hostname
    except ValueError:
        return None
    return host if host else None


@dataclass(frozen=True)
class FilterResult:
    urls: tuple
    n_input: int
    n_duplicate: int
    n_blocked_extension: int
    n_wrong_domain: int
    n_unparseable: int


def filter_urls(urls, domain_suffix: str | None = None,
                blocked_extensions=DEFAULT_BLOCKED_EXTENSIONS) -> FilterResult:
    """Dedup, drop blocked extensions, and optionally pin the host domain.

    Duplicates are exact-string, first occurrence kept. Extension
    matching is case-insensitive on the URL path. The domain rule is a
    host-suffix match: host equals the suffix or ends with "." + suffix
    (so "solid.com" does not pass for suffix "id"). Unparseable URLs
    are dropped and counted, never fatal.
    """
    blocked = {e.lower().lstrip(".") for e in blocked_extensions}
    suffix = domain_suffix.lower().lstrip(".") if domain_suffix else None

    kept = []
    seen = set()
    n_dup = n_block = n_domain = n_bad = 0
    for url in urls:
        if url in seen:
            n_dup += 1
            continue
        seen.add(url)
        host = _host_of(url)
        if host is None:
            n_bad += 1
            continue
        path = urlsplit(url).path.lower()
        ext = path.rsplit(".", 1)[1] if "." in path.rsplit("/", 1)[-1] else ""
        if ext in blocked:
            n_block += 1
            continue
        if suffix is not None and host != suffix and not host.endswith("." + suffix):
            n_domain += 1
            continue
        kept.append(url)
    return FilterResult(tuple(kept), n_input=len(seen) + n_dup,
                        n_duplicate=n_dup, n_blocked_extension=n_block,
                        n_wrong_domain=n_domain, n_unparseable=n_bad)


class FixtureSearchProvider:
    """Offline search engine: a query string maps to a fixed URL list.

    The mapping file is TSV: ``query<TAB>url`` with one line per hit,
    repeated queries accumulating. Live engines are out of scope.
    """

    def __init__(self, mapping: dict):
        self._mapping = {q: tuple(rs) for q, rs in mapping.items()}

    @classmethod
    def from_file(cls, path) -> "FixtureSearchProvider":
        mapping: dict = {}
        with open(path, encoding="utf-8") as f:
            for lineno, raw in enumerate(f, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                try:
                    query, url = line.split("\t")
                except ValueError:
                    raise ValueError(
                        f"{path}:{lineno}: expected query<TAB>url") from None
                mapping.setdefault(query, []).append(url)
        return cls(mapping)

    def search(self, query: str) -> list:
        return [UrlRecord(url, source_query=query, fetch_status="ok")
                for url in self._mapping.get(query, ())]


def collect_urls(provider, queries) -> list:
    """Run every query through the provider, concatenating the hits."""
    records = []
    for q in queries:
        text = " ".join(q) if not isinstance(q, str) else q
        records.extend(provider.search(text))
    return records
