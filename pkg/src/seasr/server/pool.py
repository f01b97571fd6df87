"""Per-language decoder resources shared across sessions.

A bundle (graph, scorer, frontend config) is loaded once at startup and
treated as read-only afterwards; sessions hold decode state of their
own, never inside the bundle. The pool's active-session counters are
the only mutable cross-session state, guarded by a lock so dispatch and
release stay atomic under any threading model.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from ..decoder import BeamConfig, DecodingGraph, load_graph_recipe, load_scorer
from ..frontend import FrontendConfig
from ..protocol import ErrorCode
from .config import LanguageConfig, ServerConfig


class PoolError(Exception):
    def __init__(self, code: ErrorCode, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class LanguageBundle:
    language: str
    graph: DecodingGraph
    scorer: object
    frontend: FrontendConfig
    max_sessions: int
    beam: BeamConfig = field(default_factory=BeamConfig)


def load_bundle(lc: LanguageConfig) -> LanguageBundle:
    graph = load_graph_recipe(lc.graph_path)
    scorer = load_scorer(lc.scorer_path)
    return LanguageBundle(lc.language, graph, scorer, lc.frontend, lc.max_sessions)


class DecoderPool:
    """Language code -> shared bundle, with per-bundle session caps."""

    def __init__(self, bundles):
        self._bundles = {b.language: b for b in bundles}
        self._active = {b.language: 0 for b in bundles}
        self._lock = threading.Lock()

    @classmethod
    def from_config(cls, cfg: ServerConfig) -> "DecoderPool":
        return cls([load_bundle(lc) for lc in cfg.languages])

    @property
    def languages(self) -> tuple[str, ...]:
        return tuple(sorted(self._bundles))

    def bundle(self, language: str) -> LanguageBundle | None:
        return self._bundles.get(language)

    def active_count(self, language: str) -> int:
        with self._lock:
            return self._active.get(language, 0)

    def acquire(self, language: str) -> LanguageBundle:
        """Claim a session slot; raises PoolError with a wire error code."""
        with self._lock:
            bundle = self._bundles.get(language)
            if bundle is None:
                raise PoolError(
                    ErrorCode.UNKNOWN_LANGUAGE,
                    f"language {language!r} is not loaded; have {sorted(self._bundles)}")
            if self._active[language] >= bundle.max_sessions:
                raise PoolError(
                    ErrorCode.OVERLOADED,
                    f"language {language!r} is at its cap of {bundle.max_sessions} sessions")
            self._active[language] += 1
            return bundle

    def release(self, language: str) -> None:
        with self._lock:
            if self._active.get(language, 0) > 0:
                self._active[language] -= 1
