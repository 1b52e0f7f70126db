"""Sum-rule fusion of classifier scores and recognition-rate evaluation.

Simulates two imperfect classifiers on the same 60-sample test set, shows
that their fused scores beat either one alone, and demonstrates the score
cleaning rules (NaN cells, constant rows) on a deliberately broken matrix.

    python3 demos/05_fusion.py
"""

import numpy as np

from audioaug import (
    ScoreMatrix,
    ScoreRow,
    fuse_sum,
    pooled_accuracy,
    recognition_rate,
    sanitize,
)

CLASSES = ("bird", "cat", "dog")
rng = np.random.default_rng(0)


def simulated_classifier(name: str, skill: float) -> ScoreMatrix:
    """Noisy scores biased toward the truth by ``skill``; 3 folds of 20."""
    rows = []
    for i in range(60):
        true_idx = i % 3
        scores = rng.normal(size=3)
        scores[true_idx] += skill
        rows.append(ScoreRow(f"s{i:02d}", i // 20, scores, CLASSES[true_idx]))
    return ScoreMatrix(name, CLASSES, tuple(rows))


a = simulated_classifier("net_a", skill=1.0)
b = simulated_classifier("net_b", skill=1.0)
fused = fuse_sum([a, b])

for matrix in (a, b, fused):
    per_fold, mean = recognition_rate(matrix)
    folds = " ".join(f"{acc:.2f}" for acc in per_fold)
    print(f"{matrix.classifier_id:13s} folds [{folds}]  mean {mean:.4f}  "
          f"pooled {pooled_accuracy(matrix):.4f}")

print("\nscore cleaning on a broken matrix:")
broken = ScoreMatrix(
    "broken",
    CLASSES,
    (
        ScoreRow("x", 0, (float("nan"), 0.8, 0.1), "cat"),
        ScoreRow("y", 0, (0.5, 0.5, 0.5), "dog"),
    ),
)
for before, after in zip(broken.rows, sanitize(broken).rows):
    print(f"  {before.sample_id}: {np.asarray(before.scores)} -> {after.scores}")
