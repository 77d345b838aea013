"""Dataset loading, normalization, and run configuration.

CSV layout: UTF-8, comma-separated, rows are timesteps and columns are
channels, with an optional single header row of channel names. Labels files
hold one 0/1 integer per test timestep. Config files are flat ``key=value``
text; list values are comma-separated inside brackets. Blank lines and lines
starting with ``#`` are ignored.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import (
    EmptyData,
    InvariantViolation,
    MissingFile,
    NonFiniteValue,
    RaggedRows,
    ShapeMismatch,
    UnknownKey,
)

ACTIVATIONS = ("identity", "tanh", "relu", "sigmoid")
EXEC_MODES = ("SE", "PE")

_STD_FLOOR = 1e-8


@dataclass(frozen=True)
class RunConfig:
    """All pipeline hyperparameters, with defaults usable out of the box.

    Group/cascade counts default to the low end of the range where detection
    quality peaks; the shrink coefficient and output regularization sit in
    their recommended intervals (0.8-1.0 and 0.1-0.3 respectively).
    """

    patch_sizes: tuple[int, ...] = (8, 16, 32)
    d_ft: int = 32
    g_ft: int = 4
    c_ft: int = 2
    d_enh: int = 32
    g_enh: int = 4
    c_enh: int = 2
    shrink_s: float = 0.9
    ridge_r: float = 0.1
    d_k: int = 64
    sigma: float = 1.0
    feature_activation: str = "tanh"
    enh_activation: str = "tanh"
    sae_enabled: bool = True
    sae_lambda: float = 1e-3
    sae_iters: int = 50
    anomaly_ratio: float = 0.05
    master_seed: int = 0
    exec_mode: str = "SE"
    minmax_before_avg: bool = False

    def validate(self) -> "RunConfig":
        if len(self.patch_sizes) == 0:
            raise InvariantViolation("patch_sizes", "patch_sizes must be non-empty")
        if any(s < 2 for s in self.patch_sizes):
            raise InvariantViolation("patch_sizes", "every patch size must be >= 2")
        for key in ("d_ft", "g_ft", "c_ft", "d_enh", "g_enh", "c_enh", "d_k", "sae_iters"):
            if getattr(self, key) < 1:
                raise InvariantViolation(key, f"{key} must be a positive integer")
        if not (0.0 < self.shrink_s <= 1.0):
            raise InvariantViolation("shrink_s", "shrink_s must lie in (0, 1]")
        if self.ridge_r < 0.0:
            raise InvariantViolation("ridge_r", "ridge_r must be >= 0")
        if self.sigma <= 0.0:
            raise InvariantViolation("sigma", "sigma must be > 0")
        if self.sae_lambda < 0.0:
            raise InvariantViolation("sae_lambda", "sae_lambda must be >= 0")
        if not (0.0 < self.anomaly_ratio < 1.0):
            raise InvariantViolation("anomaly_ratio", "anomaly_ratio must lie in (0, 1)")
        if not (0 <= self.master_seed < 2**64):
            raise InvariantViolation("master_seed", "master_seed must be a 64-bit unsigned int")
        if self.feature_activation not in ACTIVATIONS:
            raise InvariantViolation("feature_activation", f"unknown activation {self.feature_activation!r}")
        if self.enh_activation not in ACTIVATIONS:
            raise InvariantViolation("enh_activation", f"unknown activation {self.enh_activation!r}")
        if self.exec_mode not in EXEC_MODES:
            raise InvariantViolation("exec_mode", f"exec_mode must be one of {EXEC_MODES}")
        return self


@dataclass
class NormStats:
    """Per-channel train statistics used for z-score normalization."""

    mean: np.ndarray
    std: np.ndarray


@dataclass
class TimeSeriesDataset:
    """Raw multivariate series split into train/test plus binary test labels.

    ``test_labels`` may be None when labels are unavailable (pure detection
    runs); all other invariants are enforced on construction.
    """

    train_values: np.ndarray
    test_values: np.ndarray
    test_labels: Optional[np.ndarray] = None
    channel_names: Optional[list[str]] = None

    def __post_init__(self) -> None:
        self.train_values = np.asarray(self.train_values, dtype=np.float64)
        self.test_values = np.asarray(self.test_values, dtype=np.float64)
        if self.train_values.ndim != 2 or self.test_values.ndim != 2:
            raise ShapeMismatch("train and test values must be 2-D matrices")
        if self.train_values.shape[1] != self.test_values.shape[1]:
            raise ShapeMismatch(
                f"train has {self.train_values.shape[1]} channels, "
                f"test has {self.test_values.shape[1]}"
            )
        if self.train_values.shape[0] < 1 or self.test_values.shape[0] < 1:
            raise EmptyData("train and test must each contain at least one timestep")
        if self.train_values.shape[1] < 1:
            raise EmptyData("dataset must contain at least one channel")
        for name, arr in (("train", self.train_values), ("test", self.test_values)):
            bad = np.argwhere(~np.isfinite(arr))
            if bad.size:
                r, c = bad[0]
                raise NonFiniteValue(int(r), int(c), f"non-finite value in {name} data at row {r}, col {c}")
        if self.test_labels is not None:
            self.test_labels = np.asarray(self.test_labels).astype(np.int64)
            if self.test_labels.shape != (self.test_values.shape[0],):
                raise InvariantViolation(
                    "test_labels",
                    f"expected {self.test_values.shape[0]} labels, got shape {self.test_labels.shape}",
                )
            if not np.isin(self.test_labels, (0, 1)).all():
                raise InvariantViolation("test_labels", "labels must be exactly 0 or 1")

    @property
    def n_channels(self) -> int:
        return self.train_values.shape[1]


def load_csv(path: str | Path, has_header: bool = False) -> tuple[np.ndarray, Optional[list[str]]]:
    """Parse a data CSV into an (n, channels) float64 matrix.

    Returns the matrix and, when ``has_header`` is set, the channel names
    from the header row. Row indices in errors count data rows from 0.
    """
    path = Path(path)
    if not path.is_file():
        raise MissingFile(f"file not found: {path}")
    channel_names: Optional[list[str]] = None
    rows: list[list[float]] = []
    width: Optional[int] = None
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        for raw_index, record in enumerate(reader):
            if has_header and raw_index == 0:
                channel_names = [cell.strip() for cell in record]
                continue
            row_index = len(rows)
            if width is None:
                width = len(record)
            elif len(record) != width:
                raise RaggedRows(row_index)
            parsed = []
            for col, cell in enumerate(record):
                try:
                    value = float(cell)
                except ValueError:
                    raise NonFiniteValue(row_index, col, f"cannot parse {cell!r} at row {row_index}, col {col}") from None
                if not math.isfinite(value):
                    raise NonFiniteValue(row_index, col)
                parsed.append(value)
            rows.append(parsed)
    if not rows:
        raise EmptyData(f"no data rows in {path}")
    return np.array(rows, dtype=np.float64), channel_names


def load_labels(path: str | Path) -> np.ndarray:
    """Parse a labels CSV (one 0/1 integer per line) into an int vector."""
    values, _ = load_csv(path, has_header=False)
    if values.shape[1] != 1:
        raise ShapeMismatch(f"labels file must have one column, got {values.shape[1]}")
    flat = values[:, 0]
    if not np.isin(flat, (0.0, 1.0)).all():
        raise InvariantViolation("labels", "labels must be exactly 0 or 1")
    return flat.astype(np.int64)


def load_scores(path: str | Path) -> np.ndarray:
    """Parse a scores CSV (one float per line) into a float vector."""
    values, _ = load_csv(path, has_header=False)
    if values.shape[1] != 1:
        raise ShapeMismatch(f"scores file must have one column, got {values.shape[1]}")
    return values[:, 0]


def zscore_normalize(
    train: np.ndarray, test: np.ndarray
) -> tuple[np.ndarray, np.ndarray, NormStats]:
    """Normalize both splits with per-channel mean/std computed on train only.

    Standard deviations below 1e-8 are clamped so constant channels map to
    zero instead of exploding.
    """
    train = np.asarray(train, dtype=np.float64)
    test = np.asarray(test, dtype=np.float64)
    if train.ndim != 2 or test.ndim != 2 or train.shape[1] != test.shape[1]:
        raise ShapeMismatch(
            f"train shape {train.shape} and test shape {test.shape} must share a column count"
        )
    mean = train.mean(axis=0)
    std = train.std(axis=0)
    denom = np.maximum(std, _STD_FLOOR)
    return (train - mean) / denom, (test - mean) / denom, NormStats(mean=mean, std=std)


def _parse_value(key: str, text: str, target_type: type):
    text = text.strip()
    try:
        if target_type is bool:
            lowered = text.lower()
            if lowered in ("true", "1", "yes"):
                return True
            if lowered in ("false", "0", "no"):
                return False
            raise ValueError(text)
        if target_type is int:
            return int(text)
        if target_type is float:
            return float(text)
        if target_type is str:
            return text
        # remaining case: tuple of ints (patch_sizes)
        inner = text.strip()
        if inner.startswith("[") and inner.endswith("]"):
            inner = inner[1:-1]
        items = [part.strip() for part in inner.split(",") if part.strip()]
        return tuple(int(item) for item in items)
    except ValueError:
        raise InvariantViolation(key, f"cannot parse value {text!r} for key {key!r}") from None


def parse_config(path: str | Path) -> RunConfig:
    """Read a key=value config file; unspecified keys keep their defaults."""
    path = Path(path)
    if not path.is_file():
        raise MissingFile(f"config file not found: {path}")
    return parse_config_text(path.read_text(encoding="utf-8"))


def parse_config_text(text: str) -> RunConfig:
    """Parse config content from a string (same format as :func:`parse_config`)."""
    known = {f.name: f for f in fields(RunConfig)}
    type_map = {
        "patch_sizes": tuple,
        "d_ft": int, "g_ft": int, "c_ft": int,
        "d_enh": int, "g_enh": int, "c_enh": int,
        "shrink_s": float, "ridge_r": float,
        "d_k": int, "sigma": float,
        "feature_activation": str, "enh_activation": str,
        "sae_enabled": bool, "sae_lambda": float, "sae_iters": int,
        "anomaly_ratio": float, "master_seed": int, "exec_mode": str,
        "minmax_before_avg": bool,
    }
    overrides = {}
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise InvariantViolation("config", f"expected key=value, got {stripped!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in known:
            raise UnknownKey(key)
        overrides[key] = _parse_value(key, value, type_map[key])
    return replace(RunConfig(), **overrides).validate()


def serialize_config(config: RunConfig) -> str:
    """Render a config as key=value text that :func:`parse_config` round-trips."""
    lines = []
    for f in fields(RunConfig):
        value = getattr(config, f.name)
        if isinstance(value, tuple):
            rendered = "[" + ",".join(str(v) for v in value) + "]"
        elif isinstance(value, bool):
            rendered = "true" if value else "false"
        elif isinstance(value, float):
            rendered = repr(value)
        else:
            rendered = str(value)
        lines.append(f"{f.name}={rendered}")
    return "\n".join(lines) + "\n"
