"""Streaming recognition server: config, decoder pool, sessions, TCP."""

from .config import (
    DEFAULT_IDLE_TIMEOUT_S,
    DEFAULT_PARTIAL_INTERVAL,
    DEFAULT_PORT,
    ConfigError,
    LanguageConfig,
    ServerConfig,
    load_server_config,
)
from .pool import DecoderPool, LanguageBundle, PoolError, load_bundle
from .session import RecognitionSession, SessionState
from .tcp import AsrServer, run_server

__all__ = [
    "DEFAULT_IDLE_TIMEOUT_S",
    "DEFAULT_PARTIAL_INTERVAL",
    "DEFAULT_PORT",
    "AsrServer",
    "ConfigError",
    "DecoderPool",
    "LanguageBundle",
    "LanguageConfig",
    "PoolError",
    "RecognitionSession",
    "ServerConfig",
    "SessionState",
    "load_bundle",
    "load_server_config",
    "run_server",
]
