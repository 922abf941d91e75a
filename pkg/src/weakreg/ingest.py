"""Tabular data loading and role assignment for real datasets.

load_csv handles generic numeric tables with a configurable schema;
read_dataset_csv reads back the native schema that datagen emits.
"""

import csv
import logging
from dataclasses import dataclass

import numpy as np

from .datagen import corrupt_labels
from .errors import ParseError, SchemaMismatch, TooFewPoints
from .labels import Role, WeakLabel, roles_to_masks

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CsvSchema:
    """Column selection and preprocessing for a numeric CSV file.

    standardize z-scores each feature column; it defaults on because real
    sensor features mix units and both the kernel length scale and k-means
    are scale-sensitive. Synthetic replays should switch it off. With
    has_header=False, column names are 0-based indices given as strings.
    strict=False skips unparseable rows (logged) instead of raising.
    """

    feature_columns: tuple
    target_column: str
    delimiter: str = ","
    has_header: bool = True
    standardize: bool = True
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, "feature_columns", tuple(self.feature_columns))
        if len(self.feature_columns) == 0:
            raise ValueError("at least one feature column is required")
        if self.target_column in self.feature_columns:
            raise ValueError("target column must not appear among the features")


def _column_index(header, name):
    if name not in header:
        raise SchemaMismatch(str(name))
    return header.index(name)


def load_csv(path, schema: CsvSchema):
    """Read (X, y) from a delimited text file per the schema.

    Raises FileNotFoundError, SchemaMismatch for missing columns, and
    ParseError (naming row and column) for bad cells in strict mode; in
    non-strict mode bad rows are dropped and reported in a warning.
    """
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter=schema.delimiter)
        rows = list(reader)
    if schema.has_header:
        if not rows:
            raise SchemaMismatch(schema.target_column, "file is empty")
        header = [h.strip() for h in rows[0]]
        data_rows = rows[1:]
        first_data_line = 2
    else:
        width = len(rows[0]) if rows else 0
        header = [str(j) for j in range(width)]
        data_rows = rows
        first_data_line = 1
    feat_idx = [_column_index(header, c) for c in schema.feature_columns]
    target_idx = _column_index(header, schema.target_column)

    features = []
    targets = []
    rejected = []
    for offset, row in enumerate(data_rows):
        line_no = first_data_line + offset
        if not row or all(not cell.strip() for cell in row):
            continue
        try:
            if max(feat_idx + [target_idx]) >= len(row):
                raise ValueError("short row")
            feats = [float(row[j]) for j in feat_idx]
            target = float(row[target_idx])
        except ValueError:
            column = _first_bad_column(row, header, feat_idx + [target_idx])
            if schema.strict:
                raise ParseError(line_no, column) from None
            rejected.append(line_no)
            continue
        features.append(feats)
        targets.append(target)
    if rejected:
        log.warning("skipped %d unparseable rows: %s", len(rejected), rejected)

    X = np.asarray(features, dtype=np.float64).reshape(len(features), len(feat_idx))
    y = np.asarray(targets, dtype=np.float64)
    if schema.standardize and X.shape[0]:
        mean = X.mean(axis=0)
        std = X.std(axis=0)
        std[std == 0] = 1.0  # constant feature: leave centered at zero
        X = (X - mean) / std
    return X, y


def _first_bad_column(row, header, indices):
    for j in indices:
        if j >= len(row):
            return header[j]
        try:
            float(row[j])
        except ValueError:
            return header[j]
    return header[indices[0]]


def assign_roles(n, labeled_fraction, weak_fraction, delta, y, seed=0):
    """Random role assignment for real data: 2:1 train/test, then labeled
    and weak subsets sized as fractions of the FULL dataset drawn from the
    training part (capped at its size), no stratification.

    Returns (labels, masks); corruption matches the synthetic pipeline.
    """
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if y.shape[0] != n:
        raise ValueError("y must have length n")
    for name, frac in (("labeled_fraction", labeled_fraction), ("weak_fraction", weak_fraction)):
        if not 0.0 <= frac <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1]")
    rng = np.random.default_rng(seed)

    n_train = int(round(n * 2.0 / 3.0))
    if n_train == 0:
        raise TooFewPoints("dataset too small for a 2:1 train/test split")
    train_idx = rng.choice(n, size=n_train, replace=False)
    train_mask = np.zeros(n, dtype=bool)
    train_mask[train_idx] = True

    n_labeled = min(int(round(labeled_fraction * n)), n_train)
    n_weak = min(int(round(weak_fraction * n)), n_train - n_labeled)
    if labeled_fraction > 0 and n_labeled == 0:
        raise TooFewPoints(
            f"labeled fraction {labeled_fraction} yields no points at n={n}"
        )
    if weak_fraction > 0 and n_weak == 0:
        raise TooFewPoints(
            f"weak fraction {weak_fraction} yields no points at n={n}"
        )
    pool = rng.permutation(np.flatnonzero(train_mask))
    labeled_idx = np.sort(pool[:n_labeled])
    weak_idx = np.sort(pool[n_labeled : n_labeled + n_weak])

    return corrupt_labels(y, labeled_idx, weak_idx, ~train_mask, delta, rng)


def read_dataset_csv(path):
    """Read back the native dataset schema (f0.., y_true, a, s, role).

    Returns (X, y_true, labels, masks).
    """
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        rows = list(reader)
    if not rows:
        raise SchemaMismatch("y_true", "file is empty")
    header = [h.strip() for h in rows[0]]
    for required in ("y_true", "a", "s", "role"):
        if required not in header:
            raise SchemaMismatch(required)
    feature_cols = [h for h in header if h.startswith("f") and h[1:].isdigit()]
    feat_idx = [header.index(c) for c in feature_cols]
    y_idx, a_idx, s_idx, role_idx = (header.index(c) for c in ("y_true", "a", "s", "role"))

    X_rows, y_true, labels = [], [], []
    role_values = {r.value: r for r in Role}
    for offset, row in enumerate(rows[1:]):
        if not row or all(not cell.strip() for cell in row):
            continue
        line_no = offset + 2
        try:
            X_rows.append([float(row[j]) for j in feat_idx])
            y_true.append(float(row[y_idx]))
            a = float(row[a_idx])
            s = float(row[s_idx])
        except (ValueError, IndexError):
            raise ParseError(line_no, "f*/y_true/a/s") from None
        role_name = row[role_idx].strip()
        if role_name not in role_values:
            raise ParseError(line_no, "role", f"row {line_no}: unknown role {role_name!r}")
        labels.append(WeakLabel(a, s, role_values[role_name]))
    X = np.asarray(X_rows, dtype=np.float64)
    y = np.asarray(y_true, dtype=np.float64)
    return X, y, labels, roles_to_masks(labels)
