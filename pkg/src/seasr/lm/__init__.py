"""Backoff n-gram language models: training, interpolation, ARPA io."""

from .model import BOS, EOS, UNK, LOG10_BOS, LMError, NGramModel
from .train import train_ngram
from .interpolate import interpolate
from .arpa import ArpaError, read_arpa, read_arpa_file, write_arpa, write_arpa_file

__all__ = [
    "BOS",
    "EOS",
    "UNK",
    "LOG10_BOS",
    "LMError",
    "NGramModel",
    "train_ngram",
    "interpolate",
    "ArpaError",
    "read_arpa",
    "read_arpa_file",
    "write_arpa",
    "write_arpa_file",
]
