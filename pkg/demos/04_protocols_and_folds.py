"""Protocols, stratified folds, and a leakage-free training build.

Creates a tiny 12-clip corpus on disk, assigns stratified folds, plans the
waveform augmentation protocol for one held-out fold, and materializes the
training tree. The printout demonstrates the two core guarantees: derived
counts per clip, and zero test-fold contamination.

    python3 demos/04_protocols_and_folds.py
"""

import shutil
from pathlib import Path

import numpy as np

from audioaug import (
    AudioSignal,
    Manifest,
    ManifestEntry,
    Protocol,
    build_training_set,
    plan_augmentation,
    stratified_folds,
    write_wav,
)

OUT = Path(__file__).parent / "output" / "protocol_demo"
shutil.rmtree(OUT, ignore_errors=True)
(OUT / "clips").mkdir(parents=True)

RATE = 16000
entries = []
for i in range(12):
    label = "low" if i < 6 else "high"
    freq = 300.0 + 80.0 * i
    t = np.arange(RATE // 2) / RATE
    path = OUT / "clips" / f"clip{i:02d}.wav"
    write_wav(AudioSignal(0.4 * np.sin(2 * np.pi * freq * t), RATE), path)
    entries.append(ManifestEntry(f"clip{i:02d}", path, label))
manifest = Manifest(tuple(entries))

folds = stratified_folds(manifest, k=3, seed=42)
for fold in range(folds.k):
    members = sorted(s for s, f in folds.fold_of.items() if f == fold)
    print(f"fold {fold}: {members}")

test_fold = 0
plan = plan_augmentation(manifest, folds, test_fold, Protocol("Signal"), seed=7)
per_origin = len(plan) // len(folds.train_ids(test_fold))
print(f"\nSignal plan for held-out fold {test_fold}: {len(plan)} rows "
      f"({per_origin} per training clip: identity + 11 transforms)")

test_ids = set(folds.test_ids(test_fold))
leaks = [r for r in plan if r.origin_id in test_ids or r.partner_id in test_ids]
print(f"rows touching test-fold clips: {len(leaks)} (leakage-free by construction)")

mix_rows = [r for r in plan if r.partner_id is not None][:3]
for row in mix_rows:
    print(f"  mixing row {row.derived_id}: partner {row.partner_id} (same class)")

index = build_training_set(manifest, folds, test_fold, Protocol("Signal"), 7, OUT / "build")
print(f"\nmaterialized {len(index.rows)} training files under {OUT / 'build' / 'fold_0'}")
print(f"index starts:")
for row in index.rows[:3]:
    print(f"  {row.derived_id} -> {row.path}")
