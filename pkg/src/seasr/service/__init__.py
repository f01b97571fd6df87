"""HTTP control plane (offline recognition, scoring, LM queries)."""

from .app import create_app

__all__ = ["create_app"]
