"""Server configuration.

INI file with one ``[server]`` section and one ``[language:<code>]``
section per loaded language::

    [server]
    port = 8722
    partial_interval_frames = 50
    idle_timeout_s = 30.0

    [language:toy]
    graph = toy.graph
    scorer = toy.table
    max_sessions = 8
    # optional: frontend = custom-frontend.conf

Relative paths resolve against the config file's directory. The graph
recipe names the inventory, lexicon, and ARPA model, so the LM rides
along with the graph. A frontend override file, when given, is an INI
``[frontend]`` section whose keys match FrontendConfig fields.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

from ..frontend import CANONICAL_CONFIG, FrontendConfig

DEFAULT_PORT = 8722
DEFAULT_PARTIAL_INTERVAL = 50  # frames, 0.5 s at the canonical shift
DEFAULT_IDLE_TIMEOUT_S = 30.0


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class LanguageConfig:
    language: str
    graph_path: Path
    scorer_path: Path
    max_sessions: int
    frontend: FrontendConfig = field(default_factory=lambda: CANONICAL_CONFIG)

    def __post_init__(self):
        if not self.language:
            raise ConfigError("empty language code")
        if self.max_sessions < 1:
            raise ConfigError(f"max_sessions must be >= 1, got {self.max_sessions}")


@dataclass(frozen=True)
class ServerConfig:
    port: int = DEFAULT_PORT
    partial_interval_frames: int = DEFAULT_PARTIAL_INTERVAL
    idle_timeout_s: float = DEFAULT_IDLE_TIMEOUT_S
    languages: tuple[LanguageConfig, ...] = ()

    def __post_init__(self):
        if not 0 < self.port < 65536:
            raise ConfigError(f"port out of range: {self.port}")
        if self.partial_interval_frames < 1:
            raise ConfigError("partial_interval_frames must be >= 1")
        if self.idle_timeout_s <= 0:
            raise ConfigError("idle_timeout_s must be positive")
        codes = [lc.language for lc in self.languages]
        if len(set(codes)) != len(codes):
            raise ConfigError("duplicate language section")

    def language_config(self, code: str) -> LanguageConfig | None:
        for lc in self.languages:
            if lc.language == code:
                return lc
        return None


def _load_frontend_override(path: Path) -> FrontendConfig:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read or not parser.has_section("frontend"):
        raise ConfigError(f"{path}: missing [frontend] section")
    kwargs = {}
    for key, raw in parser.items("frontend"):
        if key in ("num_mel_filters", "num_cepstra", "delta_order", "delta_window"):
            kwargs[key] = int(raw)
        else:
            kwargs[key] = float(raw)
    try:
        return FrontendConfig(**kwargs)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"{path}: {e}") from e


def load_server_config(path) -> ServerConfig:
    path = Path(path)
    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise ConfigError(f"cannot read config file {path}")
    base = path.parent

    port = DEFAULT_PORT
    interval = DEFAULT_PARTIAL_INTERVAL
    timeout = DEFAULT_IDLE_TIMEOUT_S
    if parser.has_section("server"):
        sec = parser["server"]
        port = sec.getint("port", port)
        interval = sec.getint("partial_interval_frames", interval)
        timeout = sec.getfloat("idle_timeout_s", timeout)

    languages = []
    for name in parser.sections():
        if not name.startswith("language:"):
            if name != "server":
                raise ConfigError(f"unknown section [{name}]")
            continue
        code = name[len("language:"):].strip()
        sec = parser[name]
        for required in ("graph", "scorer"):
            if required not in sec:
                raise ConfigError(f"[{name}] is missing the {required!r} key")
        frontend = CANONICAL_CONFIG
        if "frontend" in sec:
            frontend = _load_frontend_override(base / sec["frontend"])
        languages.append(LanguageConfig(
            language=code,
            graph_path=base / sec["graph"],
            scorer_path=base / sec["scorer"],
            max_sessions=sec.getint("max_sessions", 8),
            frontend=frontend,
        ))
    if not languages:
        raise ConfigError(f"{path}: no [language:*] sections")
    return ServerConfig(port, interval, timeout, tuple(languages))
