"""Command-line interface.

Subcommands cover the full pipeline: ``spectrogram`` (WAV to .spg/.png),
``augment`` (leakage-safe training-set materialization), ``split``
(stratified folds), ``fuse`` (sum-rule score fusion), and ``eval``
(recognition rate). Exit codes: 0 success, 1 processing failure, 2
usage/configuration error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .dataset import build_training_set, load_folds, load_manifest, save_folds, stratified_folds
from .dgt import DgtParams, dgt, render, save_png, save_spec
from .fusion import load_recipe, fuse_recipe, pooled_accuracy, read_scores, recognition_rate, write_scores
from .protocols import CLI_PROTOCOL_NAMES, Protocol
from .wavio import read_wav

__all__ = ["main", "ConfigError", "PipelineConfig", "load_config"]


class ConfigError(ValueError):
    """Invalid configuration or input schema; maps to exit code 2."""


@dataclasses.dataclass(frozen=True)
class PipelineConfig:
    dgt: DgtParams = DgtParams()
    copies: int = 10


def _kwargs_for(cls, section: dict, where: str) -> dict:
    allowed = {f.name for f in dataclasses.fields(cls)}
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}; allowed: {sorted(allowed)}")
    return section


def load_config(path) -> PipelineConfig:
    """Parse the JSON config: {"dgt": {...}, "protocol": {"copies": N}}.

    Unknown sections or keys are rejected; values are validated by the
    owning parameter types.
    """
    if path is None:
        return PipelineConfig()
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    unknown = set(doc) - {"dgt", "protocol"}
    if unknown:
        raise ConfigError(f"{path}: unknown sections {sorted(unknown)}; allowed: ['dgt', 'protocol']")
    try:
        dgt_params = DgtParams(**_kwargs_for(DgtParams, doc.get("dgt", {}), f"{path}: dgt"))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: dgt: {exc}") from exc
    protocol_section = doc.get("protocol", {})
    unknown = set(protocol_section) - {"copies"}
    if unknown:
        raise ConfigError(f"{path}: protocol: unknown keys {sorted(unknown)}; allowed: ['copies']")
    copies = protocol_section.get("copies", 10)
    if not isinstance(copies, int) or copies < 1:
        raise ConfigError(f"{path}: protocol.copies must be a positive integer, got {copies!r}")
    return PipelineConfig(dgt=dgt_params, copies=copies)


def _cmd_spectrogram(args) -> int:
    try:
        config = load_config(args.config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    in_path = Path(args.in_path)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if in_path.is_dir():
        files = sorted(p for p in in_path.iterdir() if p.suffix.lower() == ".wav")
        if not files:
            print(f"warning: no WAV files found in {in_path}", file=sys.stderr)
            return 0
    else:
        files = [in_path]

    def convert(path: Path):
        signal = read_wav(path)
        spec = dgt(signal, config.dgt)
        save_spec(spec, out_dir / f"{path.stem}.spg")
        save_png(render(spec, config.dgt), out_dir / f"{path.stem}.png")
        return f"{path.name}: wrote {path.stem}.spg and {path.stem}.png ({spec.rows}x{spec.cols})"

    results: list[tuple[Path, str | None, str | None]] = []
    if args.jobs > 1:
        def safe(path: Path):
            try:
                return path, convert(path), None
            except Exception as exc:
                return path, None, str(exc)

        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(safe, files))
    else:
        for path in files:
            try:
                results.append((path, convert(path), None))
            except Exception as exc:
                results.append((path, None, str(exc)))

    failures = 0
    for path, message, error in results:
        if error is None:
            print(message)
        else:
            failures += 1
            print(f"error: {path}: {error}", file=sys.stderr)
    return 1 if failures else 0


def _cmd_augment(args) -> int:
    try:
        config = load_config(args.config)
        manifest = load_manifest(args.manifest)
        folds = load_folds(args.folds_file)
        protocol = Protocol.from_cli_name(args.protocol, copies=config.copies)
        if not 0 <= args.test_fold < folds.k:
            raise ConfigError(f"--test-fold must be in [0, {folds.k}), got {args.test_fold}")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        index = build_training_set(
            manifest,
            folds,
            args.test_fold,
            protocol,
            args.seed,
            args.out,
            dgt_params=config.dgt,
            jobs=args.jobs,
        )
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    n_test = len(folds.test_ids(args.test_fold))
    print(
        f"fold {args.test_fold}: {len(index.rows)} training files "
        f"({protocol.name}), {n_test} test files, index at "
        f"{Path(args.out) / f'fold_{args.test_fold}' / 'index.csv'}"
    )
    return 0


def _cmd_split(args) -> int:
    try:
        manifest = load_manifest(args.manifest)
        folds = stratified_folds(manifest, k=args.k, seed=args.seed)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for warning in folds.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    try:
        save_folds(folds, args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {args.out} (k={folds.k}, {len(folds.fold_of)} samples)")
    return 0


def _cmd_fuse(args) -> int:
    try:
        recipe = load_recipe(args.recipe)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        fused = fuse_recipe(recipe)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        write_scores(fused, args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(
        f"fused {len(recipe.score_paths)} classifiers ({recipe.name}) -> "
        f"{args.out} ({len(fused.rows)} samples)"
    )
    return 0


def _cmd_eval(args) -> int:
    try:
        matrix = read_scores(args.scores)
        per_fold, mean = recognition_rate(matrix)
        pooled = pooled_accuracy(matrix)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    folds = sorted({row.fold for row in matrix.rows})
    for fold, accuracy in zip(folds, per_fold):
        print(f"fold {fold}: {accuracy:.4f}")
    print(f"mean over folds: {mean:.4f}")
    print(f"pooled: {pooled:.4f}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="audioaug",
        description="Deterministic audio augmentation: spectrograms, protocols, folds, fusion.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrogram", help="convert WAV files to .spg spectrograms and PNGs")
    p.add_argument("--in", dest="in_path", required=True, help="WAV file or directory of WAVs")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--config", default=None, help="JSON config file")
    p.add_argument("--jobs", type=int, default=1, help="worker threads (default 1)")
    p.set_defaults(func=_cmd_spectrogram)

    p = sub.add_parser("augment", help="materialize a leakage-safe augmented training fold")
    p.add_argument("--manifest", required=True, help="manifest CSV (sample_id,path,label)")
    p.add_argument(
        "--protocol", required=True, choices=sorted(CLI_PROTOCOL_NAMES), help="augmentation protocol"
    )
    p.add_argument("--folds-file", required=True, help="folds JSON from the split command")
    p.add_argument("--test-fold", type=int, required=True, help="fold index held out as test")
    p.add_argument("--seed", type=int, default=0, help="master random seed (default 0)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--config", default=None, help="JSON config file")
    p.add_argument("--jobs", type=int, default=1, help="worker threads (default 1)")
    p.set_defaults(func=_cmd_augment)

    p = sub.add_parser("split", help="assign stratified cross-validation folds")
    p.add_argument("--manifest", required=True, help="manifest CSV (sample_id,path,label)")
    p.add_argument("--k", type=int, default=10, help="number of folds (default 10)")
    p.add_argument("--seed", type=int, default=0, help="shuffle seed (default 0)")
    p.add_argument("--out", required=True, help="output folds JSON path")
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("fuse", help="sum-rule fusion of classifier score files")
    p.add_argument("--recipe", required=True, help="recipe JSON naming the score CSVs")
    p.add_argument("--out", required=True, help="output fused score CSV")
    p.set_defaults(func=_cmd_fuse)

    p = sub.add_parser("eval", help="per-fold and mean recognition rate of a score CSV")
    p.add_argument("--scores", required=True, help="score CSV to evaluate")
    p.set_defaults(func=_cmd_eval)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
