"""Desk-scale streaming ASR stack.

Subpackages cover the offline tooling (feature frontend, lexicon and
language-model builders, web-corpus pipeline, WER scoring), the decoding
engine, the binary wire protocol, the TCP streaming server and the HTTP
control plane.
"""

__version__ = "0.1.0"
