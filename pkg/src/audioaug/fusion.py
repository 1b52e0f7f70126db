"""Classifier score fusion and recognition-rate evaluation.

Scores live in :class:`ScoreMatrix` values: one row per test sample with a
score per class, a fold index, and the true label. Fusion is the sum rule
over sanitized matrices; evaluation reports per-fold accuracies and their
mean (the recognition rate), with pooled accuracy available separately.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "ScoreRow",
    "ScoreMatrix",
    "sanitize",
    "fuse_sum",
    "recognition_rate",
    "pooled_accuracy",
    "read_scores",
    "write_scores",
    "FusionRecipe",
    "load_recipe",
    "fuse_recipe",
]


@dataclass(frozen=True)
class ScoreRow:
    sample_id: str
    fold: int
    scores: np.ndarray
    true_label: str

    def __post_init__(self):
        scores = np.array(self.scores, dtype=np.float64)
        scores.flags.writeable = False
        object.__setattr__(self, "scores", scores)
        if self.fold < 0:
            raise ValueError(f"fold must be >= 0, got {self.fold}")


@dataclass(frozen=True)
class ScoreMatrix:
    """One classifier's scores over a test set.

    NaN score entries are permitted; they are resolved by :func:`sanitize`.
    """

    classifier_id: str
    class_names: tuple[str, ...]
    rows: tuple[ScoreRow, ...]

    def __post_init__(self):
        if len(set(self.class_names)) != len(self.class_names) or not self.class_names:
            raise ValueError("class_names must be non-empty and unique")
        seen = set()
        for row in self.rows:
            if row.sample_id in seen:
                raise ValueError(f"duplicate sample_id {row.sample_id!r}")
            seen.add(row.sample_id)
            if row.scores.shape != (len(self.class_names),):
                raise ValueError(
                    f"row {row.sample_id!r} has {row.scores.shape[0]} scores "
                    f"for {len(self.class_names)} classes"
                )
            if row.true_label not in self.class_names:
                raise ValueError(f"unknown true label {row.true_label!r}")


def _sanitize_vector(scores: np.ndarray) -> np.ndarray:
    """NaN entries become 0; a vector whose entries are then all equal becomes all-zero."""
    out = np.nan_to_num(scores, nan=0.0, posinf=np.inf, neginf=-np.inf)
    if np.all(out == out[0]):
        return np.zeros_like(out)
    return out


def sanitize(matrix: ScoreMatrix) -> ScoreMatrix:
    """Apply the score-cleaning rules row by row.

    Every NaN becomes 0 first; any row left with all-equal scores (a
    degenerate classifier output carrying no ranking information) is
    replaced by zeros.
    """
    rows = tuple(
        ScoreRow(r.sample_id, r.fold, _sanitize_vector(r.scores), r.true_label)
        for r in matrix.rows
    )
    return ScoreMatrix(matrix.classifier_id, matrix.class_names, rows)


def fuse_sum(matrices: list[ScoreMatrix]) -> ScoreMatrix:
    """Sum-rule fusion of one or more sanitized score matrices.

    Inputs must agree on class names, sample-id sets, and true labels.
    Sanitization always runs internally so the cleaning rules cannot be
    skipped. Rows follow the first matrix's order; sums accumulate in input
    order. The fused classifier_id joins the inputs' ids with '+'.
    """
    if not matrices:
        raise ValueError("fuse_sum needs at least one matrix")
    first = sanitize(matrices[0])
    class_names = first.class_names
    order = [row.sample_id for row in first.rows]
    truth = {row.sample_id: row.true_label for row in first.rows}
    folds = {row.sample_id: row.fold for row in first.rows}
    totals = {row.sample_id: row.scores.copy() for row in first.rows}

    for matrix in matrices[1:]:
        if matrix.class_names != class_names:
            raise ValueError(
                f"class mismatch: {matrix.classifier_id!r} has {matrix.class_names}, "
                f"expected {class_names}"
            )
        clean = sanitize(matrix)
        ids = {row.sample_id for row in clean.rows}
        if ids != set(order):
            raise ValueError(
                f"sample-set mismatch between {first.classifier_id!r} "
                f"and {matrix.classifier_id!r}"
            )
        for row in clean.rows:
            if truth[row.sample_id] != row.true_label:
                raise ValueError(
                    f"true-label mismatch for {row.sample_id!r}: "
                    f"{truth[row.sample_id]!r} vs {row.true_label!r}"
                )
            totals[row.sample_id] += row.scores

    fused_rows = tuple(
        ScoreRow(sample_id, folds[sample_id], totals[sample_id], truth[sample_id])
        for sample_id in order
    )
    fused_id = "+".join(m.classifier_id for m in matrices)
    return ScoreMatrix(fused_id, class_names, fused_rows)


def _predictions(matrix: ScoreMatrix) -> list[int]:
    # np.argmax takes the first maximum, i.e. the lowest class index on ties.
    return [int(np.argmax(row.scores)) for row in matrix.rows]


def recognition_rate(matrix: ScoreMatrix) -> tuple[np.ndarray, float]:
    """Per-fold accuracies (ascending fold order) and their mean.

    The prediction for each row is the argmax of its scores with ties
    broken toward the lowest class index. The mean is over folds, which
    differs from pooled accuracy when folds are unbalanced.
    """
    if not matrix.rows:
        raise ValueError("cannot evaluate an empty score matrix")
    predictions = _predictions(matrix)
    per_fold_counts: dict[int, list[int]] = {}
    for row, pred in zip(matrix.rows, predictions):
        correct, total = per_fold_counts.setdefault(row.fold, [0, 0])
        per_fold_counts[row.fold] = [
            correct + (matrix.class_names[pred] == row.true_label),
            total + 1,
        ]
    accuracies = np.array(
        [per_fold_counts[f][0] / per_fold_counts[f][1] for f in sorted(per_fold_counts)]
    )
    return accuracies, float(accuracies.mean())


def pooled_accuracy(matrix: ScoreMatrix) -> float:
    """Fraction of correct predictions over all rows, ignoring folds."""
    if not matrix.rows:
        raise ValueError("cannot evaluate an empty score matrix")
    predictions = _predictions(matrix)
    correct = sum(
        matrix.class_names[pred] == row.true_label
        for row, pred in zip(matrix.rows, predictions)
    )
    return correct / len(matrix.rows)


def read_scores(path, classifier_id: str | None = None) -> ScoreMatrix:
    """Parse a score CSV: header ``sample_id,fold,true_label,<class_1>,...``.

    The literal token ``NaN`` (any case) is allowed in score cells. The
    classifier id defaults to the file's stem.
    """
    import csv

    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or len(header) < 4 or header[:3] != ["sample_id", "fold", "true_label"]:
            raise ValueError(
                f"{path}: expected header starting 'sample_id,fold,true_label', got {header}"
            )
        class_names = tuple(header[3:])
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ValueError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
            try:
                fold = int(row[1])
                scores = np.array([float(cell) for cell in row[3:]], dtype=np.float64)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from exc
            rows.append(ScoreRow(row[0], fold, scores, row[2]))
    try:
        return ScoreMatrix(classifier_id or path.stem, class_names, tuple(rows))
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc


def write_scores(matrix: ScoreMatrix, path) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sample_id", "fold", "true_label", *matrix.class_names])
        for row in matrix.rows:
            cells = ["NaN" if math.isnan(v) else repr(float(v)) for v in row.scores]
            writer.writerow([row.sample_id, row.fold, row.true_label, *cells])


@dataclass(frozen=True)
class FusionRecipe:
    """A named list of score CSVs to fuse, e.g. the ten of a Si+Sp ensemble."""

    name: str
    score_paths: tuple[Path, ...]

    def __post_init__(self):
        if not self.score_paths:
            raise ValueError("a fusion recipe needs at least one score file")


def load_recipe(path) -> FusionRecipe:
    """Read a recipe JSON: {"name": ..., "scores": [paths relative to the recipe]}."""
    path = Path(path)
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or set(doc) != {"name", "scores"}:
        raise ValueError(f"{path}: expected exactly the keys name, scores")
    if not isinstance(doc["scores"], list) or not all(isinstance(s, str) for s in doc["scores"]):
        raise ValueError(f"{path}: scores must be a list of paths")
    base = path.parent
    resolved = tuple(
        Path(s) if Path(s).is_absolute() else base / s for s in doc["scores"]
    )
    return FusionRecipe(str(doc["name"]), resolved)


def fuse_recipe(recipe: FusionRecipe) -> ScoreMatrix:
    """Load every score file named by the recipe and fuse them by sum rule."""
    for score_path in recipe.score_paths:
        if not score_path.exists():
            raise FileNotFoundError(f"recipe {recipe.name!r}: missing score file {score_path}")
    return fuse_sum([read_scores(p) for p in recipe.score_paths])
