"""Web-text bootstrapping and corpus manifest validation."""

from .frequency import FrequencyList, build_frequency_list
from .queries import QuerySet, generate_pair_queries, generate_single_queries
from .urls import (
    DEFAULT_BLOCKED_EXTENSIONS,
    FilterResult,
    FixtureSearchProvider,
    UrlRecord,
    collect_urls,
    filter_urls,
)
from .html import extract_main_text
from .manifest import (
    CorpusManifest,
    ManifestError,
    ManifestRules,
    RuleViolation,
    Speaker,
    Utterance,
    load_manifest,
    validate_manifest,
)

__all__ = [
    "FrequencyList",
    "build_frequency_list",
    "QuerySet",
    "generate_pair_queries",
    "generate_single_queries",
    "DEFAULT_BLOCKED_EXTENSIONS",
    "FilterResult",
    "FixtureSearchProvider",
    "UrlRecord",
    "collect_urls",
    "filter_urls",
    "extract_main_text",
    "CorpusManifest",
    "ManifestError",
    "ManifestRules",
    "RuleViolation",
    "Speaker",
    "Utterance",
    "load_manifest",
    "validate_manifest",
]
