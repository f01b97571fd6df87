"""Acoustic scorers.

A scorer maps (pdf id, frame index, feature row) to a finite
log-likelihood and must be deterministic in those inputs. The real
system would put a neural acoustic model here; this package ships two
pluggable stand-ins:

* TableScorer: likelihoods looked up from an explicit (pdf, frame)
  table with a default for unlisted pairs. Exists so tests and
  fixtures can script exact decoding problems.
* DiagonalGaussianScorer: per-pdf diagonal Gaussians loaded from a
  parameter file; ignores the frame index.
"""

from __future__ import annotations

import math

import numpy as np


class ScorerError(ValueError):
    pass


class TableScorer:
    """Log-likelihoods from a dict keyed by (pdf_id, frame_index)."""

    def __init__(self, table: dict, default: float = -10.0):
        for key, value in table.items():
            if not math.isfinite(value):
                raise ScorerError(f"non-finite likelihood for {key}")
        if not math.isfinite(default):
            raise ScorerError("non-finite default likelihood")
        self._table = {key: float(value) for key, value in table.items()}
        self.default = float(default)

    def score(self, pdf_id: int, frame_index: int, feature_row) -> float:
        return self._table.get((pdf_id, frame_index), self.default)


class DiagonalGaussianScorer:
    """Per-pdf diagonal Gaussian log-densities over feature rows."""

    def __init__(self, means: np.ndarray, variances: np.ndarray):
        means = np.asarray(means, dtype=np.float64)
        variances = np.asarray(variances, dtype=np.float64)
        if means.shape != variances.shape or means.ndim != 2:
            raise ScorerError("means and variances must be equal-shape 2-d arrays")
        if not (np.all(np.isfinite(means)) and np.all(np.isfinite(variances))):
            raise ScorerError("non-finite Gaussian parameters")
        if np.any(variances <= 0):
            raise ScorerError("variances must be positive")
        self.means = means
        self.variances = variances
        # -0.5 * (d*ln(2pi) + sum ln var), folded per state
        dim = means.shape[1]
        self._const = -0.5 * (dim * math.log(2.0 * math.pi)
                              + np.sum(np.log(variances), axis=1))

    @property
    def num_pdfs(self) -> int:
        return self.means.shape[0]

    @property
    def dim(self) -> int:
        return self.means.shape[1]

    def score(self, pdf_id: int, frame_index: int, feature_row) -> float:
        row = np.asarray(feature_row, dtype=np.float64)
        if row.shape != (self.dim,):
            raise ScorerError(
                f"feature row has width {row.shape}, scorer expects {self.dim}")
        if not 0 <= pdf_id < self.num_pdfs:
            raise ScorerError(f"pdf id {pdf_id} out of range")
        diff = row - self.means[pdf_id]
        return float(self._const[pdf_id]
                     - 0.5 * np.sum(diff * diff / self.variances[pdf_id]))


def write_table_scorer(scorer: TableScorer, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write("table\n")
        f.write(f"default {scorer.default!r}\n")
        for (pdf, frame), value in sorted(scorer._table.items()):
            f.write(f"{pdf} {frame} {value!r}\n")


def write_gaussian_scorer(scorer: DiagonalGaussianScorer, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"gauss {scorer.num_pdfs} {scorer.dim}\n")
        for s in range(scorer.num_pdfs):
            f.write(" ".join(repr(float(v)) for v in scorer.means[s]) + "\n")
            f.write(" ".join(repr(float(v)) for v in scorer.variances[s]) + "\n")


def load_scorer(path):
    """Scorer from file; the first token selects the format."""
    with open(path, encoding="utf-8") as f:
        lines = [ln.strip() for ln in f if ln.strip()]
    if not lines:
        raise ScorerError(f"{path}: empty scorer file")
    kind = lines[0].split()[0]
    if kind == "table":
        return _parse_table(lines, path)
    if kind == "gauss":
        return _parse_gauss(lines, path)
    raise ScorerError(f"{path}: unknown scorer format {kind!r}")


def _parse_table(lines, path) -> TableScorer:
    if len(lines) < 2 or not lines[1].startswith("default "):
        raise ScorerError(f"{path}: table scorer needs a 'default <value>' line")
    default = float(lines[1].split()[1])
    table = {}
    for ln in lines[2:]:
        fields = ln.split()
        if len(fields) != 3:
            raise ScorerError(f"{path}: bad table entry {ln!r}")
        table[(int(fields[0]), int(fields[1]))] = float(fields[2])
    return TableScorer(table, default)


def _parse_gauss(lines, path) -> DiagonalGaussianScorer:
    header = lines[0].split()
    if len(header) != 3:
        raise ScorerError(f"{path}: gauss header must be 'gauss <states> <dim>'")
    n, dim = int(header[1]), int(header[2])
    if len(lines) != 1 + 2 * n:
        raise ScorerError(
            f"{path}: expected {2 * n} parameter rows, found {len(lines) - 1}")
    means = np.empty((n, dim))
    variances = np.empty((n, dim))
    for s in range(n):
        mean_row = [float(v) for v in lines[1 + 2 * s].split()]
        var_row = [float(v) for v in lines[2 + 2 * s].split()]
        if len(mean_row) != dim or len(var_row) != dim:
            raise ScorerError(f"{path}: state {s} rows must have {dim} values")
        means[s] = mean_row
        variances[s] = var_row
    return DiagonalGaussianScorer(means, variances)
