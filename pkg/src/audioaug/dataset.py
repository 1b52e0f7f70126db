"""Corpus manifest handling, stratified folds, and leakage-safe augmentation.

A corpus is described by a manifest CSV (``sample_id,path,label``). Folds
are assigned per class so every fold mirrors the class proportions.
Augmentation is planned (:func:`plan_augmentation`) and materialized
(:func:`build_training_set`) so that only training-fold samples are
augmented and every same-class mixing partner also comes from the
training portion; test-fold samples pass through untouched.
"""

from __future__ import annotations

import csv
import json
import logging
import shutil
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import AudioSignal, RngStream, derive_seed
from .dgt import DgtParams, Spectrogram, dgt, load_spec, render, save_spec, save_png
from .image_aug import load_png
from .protocols import Protocol, apply_protocol, protocol_transform_names
from .wavio import read_wav, write_wav

__all__ = [
    "ManifestEntry",
    "Manifest",
    "load_manifest",
    "FoldAssignment",
    "stratified_folds",
    "save_folds",
    "load_folds",
    "PlanRow",
    "plan_augmentation",
    "IndexRow",
    "AugmentedIndex",
    "build_training_set",
    "load_index",
]

logger = logging.getLogger(__name__)

# Transforms that mix a second same-class item into the output.
_MIXING_TRANSFORMS = frozenset({"sound_mix", "same_class_sum", "emda"})


@dataclass(frozen=True)
class ManifestEntry:
    sample_id: str
    path: Path
    label: str


@dataclass(frozen=True)
class Manifest:
    """Ordered collection of (sample_id, path, label) rows with unique ids."""

    entries: tuple[ManifestEntry, ...]

    def __post_init__(self):
        seen = set()
        for entry in self.entries:
            if not entry.sample_id or not entry.label:
                raise ValueError(f"manifest entry with empty field: {entry}")
            if entry.sample_id in seen:
                raise ValueError(f"duplicate sample_id {entry.sample_id!r}")
            seen.add(entry.sample_id)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def get(self, sample_id: str) -> ManifestEntry:
        for entry in self.entries:
            if entry.sample_id == sample_id:
                return entry
        raise KeyError(sample_id)

    def labels(self) -> tuple[str, ...]:
        """Distinct class labels in sorted order."""
        return tuple(sorted({e.label for e in self.entries}))

    def by_label(self) -> dict[str, list[ManifestEntry]]:
        groups: dict[str, list[ManifestEntry]] = {}
        for entry in self.entries:
            groups.setdefault(entry.label, []).append(entry)
        return groups


_MANIFEST_HEADER = ["sample_id", "path", "label"]


def load_manifest(path) -> Manifest:
    """Parse and validate a manifest CSV.

    Relative sample paths are resolved against the manifest's directory.
    Raises ``ValueError`` for a wrong header, malformed rows, duplicate ids,
    or referenced files that do not exist.
    """
    path = Path(path)
    base = path.parent
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != _MANIFEST_HEADER:
            raise ValueError(
                f"{path}: expected header {','.join(_MANIFEST_HEADER)!r}, got {header}"
            )
        entries = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3 or not all(row):
                raise ValueError(f"{path}:{lineno}: malformed row {row}")
            sample_id, sample_path, label = row
            resolved = (base / sample_path).resolve() if not Path(sample_path).is_absolute() else Path(sample_path)
            if not resolved.exists():
                raise ValueError(f"{path}:{lineno}: file not found: {sample_path}")
            entries.append(ManifestEntry(sample_id, resolved, label))
    return Manifest(tuple(entries))


@dataclass(frozen=True)
class FoldAssignment:
    """Map from sample_id to fold index in [0, k)."""

    k: int
    seed: int
    fold_of: dict[str, int]
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")
        for sample_id, fold in self.fold_of.items():
            if not 0 <= fold < self.k:
                raise ValueError(f"fold {fold} of {sample_id!r} outside [0, {self.k})")

    def test_ids(self, test_fold: int) -> list[str]:
        return [s for s, f in self.fold_of.items() if f == test_fold]

    def train_ids(self, test_fold: int) -> list[str]:
        return [s for s, f in self.fold_of.items() if f != test_fold]


def stratified_folds(manifest: Manifest, k: int = 10, seed: int = 0) -> FoldAssignment:
    """Assign each sample to one of ``k`` folds, stratified by class.

    Within each class the sample ids are shuffled (by a stream derived from
    ``seed`` and the label) and dealt round-robin, so per-class fold sizes
    differ by at most one. A class smaller than ``k`` is permitted but
    recorded as a warning since some folds will lack it.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if len(manifest.labels()) < 2:
        raise ValueError("fold building requires at least 2 classes")
    master = RngStream(seed)
    fold_of: dict[str, int] = {}
    warnings = []
    for label, group in sorted(manifest.by_label().items()):
        ids = sorted(e.sample_id for e in group)
        if len(ids) < k:
            message = f"class {label!r} has {len(ids)} samples; some folds will lack it for k={k}"
            warnings.append(message)
            logger.warning(message)
        master.spawn(label).shuffle(ids)
        for i, sample_id in enumerate(ids):
            fold_of[sample_id] = i % k
    return FoldAssignment(k=k, seed=seed, fold_of=fold_of, warnings=tuple(warnings))


def save_folds(folds: FoldAssignment, path) -> None:
    """Write a fold assignment as JSON: {"k":…,"seed":…,"folds":{id:fold}}."""
    doc = {"k": folds.k, "seed": folds.seed, "folds": folds.fold_of}
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_folds(path) -> FoldAssignment:
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or set(doc) != {"k", "seed", "folds"}:
        raise ValueError(f"{path}: expected exactly the keys k, seed, folds")
    return FoldAssignment(k=int(doc["k"]), seed=int(doc["seed"]), fold_of={
        str(s): int(f) for s, f in doc["folds"].items()
    })


@dataclass(frozen=True)
class PlanRow:
    """One output of the augmentation plan, before any file is produced."""

    derived_id: str
    origin_id: str
    protocol: str
    transform: str
    output_index: int
    partner_id: str | None = None


def _check_plan_inputs(manifest: Manifest, folds: FoldAssignment, test_fold: int) -> None:
    if not 0 <= test_fold < folds.k:
        raise ValueError(f"test_fold must be in [0, {folds.k}), got {test_fold}")
    missing = [e.sample_id for e in manifest if e.sample_id not in folds.fold_of]
    if missing:
        raise ValueError(f"folds do not cover manifest ids: {missing[:5]}")


def _choose_partner(
    entry: ManifestEntry,
    manifest: Manifest,
    folds: FoldAssignment,
    test_fold: int,
    seed: int,
) -> str:
    """Training-portion classmate for mixing transforms, excluding the sample itself.

    Falls back to the sample itself (with a warning) when it has no
    training classmate, so single-sample classes still augment.
    """
    classmates = [
        e.sample_id
        for e in manifest
        if e.label == entry.label
        and e.sample_id != entry.sample_id
        and folds.fold_of[e.sample_id] != test_fold
    ]
    if not classmates:
        logger.warning(
            "sample %r has no training classmate in class %r; mixing with itself",
            entry.sample_id,
            entry.label,
        )
        return entry.sample_id
    stream = RngStream(derive_seed(seed, entry.sample_id, "partner"))
    return classmates[int(stream.integers(0, len(classmates)))]


def plan_augmentation(
    manifest: Manifest,
    folds: FoldAssignment,
    test_fold: int,
    protocol: Protocol,
    seed: int,
) -> list[PlanRow]:
    """Deterministic list of derived outputs for one training split.

    Only samples outside ``test_fold`` appear as origins; mixing partners
    are chosen from training-portion classmates. This performs no I/O, so
    leakage can be audited without materializing files.
    """
    _check_plan_inputs(manifest, folds, test_fold)
    names = ("identity",) + protocol_transform_names(protocol)
    rows = []
    for entry in manifest:
        if folds.fold_of[entry.sample_id] == test_fold:
            continue
        partner = (
            _choose_partner(entry, manifest, folds, test_fold, seed)
            if protocol.needs_classmate
            else None
        )
        for n, name in enumerate(names):
            rows.append(
                PlanRow(
                    derived_id=f"{entry.sample_id}__{protocol.name}__{name}__{n}",
                    origin_id=entry.sample_id,
                    protocol=protocol.name,
                    transform=name,
                    output_index=n,
                    partner_id=partner if name in _MIXING_TRANSFORMS else None,
                )
            )
    return rows


@dataclass(frozen=True)
class IndexRow:
    derived_id: str
    origin_id: str
    protocol: str
    transform: str
    path: str


@dataclass(frozen=True)
class AugmentedIndex:
    rows: tuple[IndexRow, ...]


_INDEX_HEADER = ["derived_id", "origin_id", "protocol", "transform", "path"]


def _save_index(index: AugmentedIndex, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_INDEX_HEADER)
        for row in index.rows:
            writer.writerow([row.derived_id, row.origin_id, row.protocol, row.transform, row.path])


def load_index(path) -> AugmentedIndex:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != _INDEX_HEADER:
            raise ValueError(f"{path}: expected header {','.join(_INDEX_HEADER)!r}, got {header}")
        rows = tuple(IndexRow(*row) for row in reader if row)
    return AugmentedIndex(rows)


def _fit_columns(spec: Spectrogram, n_cols: int) -> Spectrogram:
    """Tile/crop a spectrogram along time so mixing partners share dimensions."""
    mags = spec.magnitudes
    if mags.shape[1] == n_cols:
        return spec
    reps = -(-n_cols // mags.shape[1])
    return spec.replace_magnitudes(np.tile(mags, (1, reps))[:, :n_cols])


def _load_item(path: Path, domain: str, dgt_params: DgtParams):
    """Load a manifest file as the protocol's item kind, converting as needed."""
    suffix = path.suffix.lower()
    if domain == "signal":
        return read_wav(path)
    if domain == "spectrogram":
        return load_spec(path) if suffix == ".spg" else dgt(read_wav(path), dgt_params)
    if domain == "image":
        if suffix == ".png":
            return load_png(path)
        spec = load_spec(path) if suffix == ".spg" else dgt(read_wav(path), dgt_params)
        return render(spec, dgt_params)
    raise ValueError(f"no loader for domain {domain!r}")


def _write_item(item, path: Path) -> None:
    if isinstance(item, AudioSignal):
        write_wav(item, path)
    elif isinstance(item, Spectrogram):
        save_spec(item, path)
    else:
        save_png(item, path)


_DOMAIN_EXT = {"signal": ".wav", "spectrogram": ".spg", "image": ".png"}


def build_training_set(
    manifest: Manifest,
    folds: FoldAssignment,
    test_fold: int,
    protocol: Protocol,
    seed: int,
    out_dir,
    dgt_params: DgtParams = DgtParams(),
    jobs: int = 1,
) -> AugmentedIndex:
    """Materialize one fold's training tree under ``out_dir/fold_<test_fold>/``.

    Training-fold samples are augmented per :func:`plan_augmentation` and
    written to ``train/``; test-fold samples are byte-copied to ``test/``.
    The index CSV (training rows only, in manifest order) is written last.
    The output is byte-identical for identical (manifest, folds, protocol,
    seed) regardless of ``jobs``.
    """
    plan = plan_augmentation(manifest, folds, test_fold, protocol, seed)
    fold_dir = Path(out_dir) / f"fold_{test_fold}"
    train_dir = fold_dir / "train"
    test_dir = fold_dir / "test"
    train_dir.mkdir(parents=True, exist_ok=True)
    test_dir.mkdir(parents=True, exist_ok=True)

    by_origin: dict[str, list[PlanRow]] = {}
    for row in plan:
        by_origin.setdefault(row.origin_id, []).append(row)

    def materialize(origin_id: str) -> list[IndexRow]:
        entry = manifest.get(origin_id)
        rows = by_origin[origin_id]
        if protocol.name == "NoAUG":
            # Passthrough: keep the original bytes and extension.
            (row,) = rows
            rel = f"fold_{test_fold}/train/{row.derived_id}{entry.path.suffix}"
            shutil.copyfile(entry.path, Path(out_dir) / rel)
            return [IndexRow(row.derived_id, origin_id, row.protocol, row.transform, rel)]

        item = _load_item(entry.path, protocol.domain, dgt_params)
        pool = None
        if protocol.needs_classmate:
            partner_id = next(r.partner_id for r in rows if r.partner_id is not None)
            partner = _load_item(manifest.get(partner_id).path, protocol.domain, dgt_params)
            if isinstance(partner, Spectrogram):
                if partner.rows != item.rows:
                    raise ValueError(
                        f"partner {partner_id!r} has {partner.rows} frequency rows, "
                        f"expected {item.rows}"
                    )
                partner = _fit_columns(partner, item.cols)
            pool = [partner]
        stream = RngStream(derive_seed(seed, origin_id, protocol.name))
        outputs = apply_protocol(item, protocol, pool, stream)
        ext = _DOMAIN_EXT[protocol.domain]
        index_rows = []
        for row, output in zip(rows, outputs, strict=True):
            rel = f"fold_{test_fold}/train/{row.derived_id}{ext}"
            _write_item(output, Path(out_dir) / rel)
            index_rows.append(IndexRow(row.derived_id, origin_id, row.protocol, row.transform, rel))
        return index_rows

    origin_order = [e.sample_id for e in manifest if folds.fold_of[e.sample_id] != test_fold]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool_exec:
            results = list(pool_exec.map(materialize, origin_order))
    else:
        results = [materialize(origin) for origin in origin_order]

    for entry in manifest:
        if folds.fold_of[entry.sample_id] == test_fold:
            shutil.copyfile(entry.path, test_dir / f"{entry.sample_id}{entry.path.suffix}")

    index = AugmentedIndex(tuple(row for rows in results for row in rows))
    _save_index(index, fold_dir / "index.csv")
    return index
