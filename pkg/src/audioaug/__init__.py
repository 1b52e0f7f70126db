"""Deterministic audio data augmentation toolkit.

Gaussian-window spectrograms, signal/spectrogram/image augmentation
protocols, leakage-safe stratified cross-validation splits, and sum-rule
score fusion. All randomness flows through seeded
:class:`~audioaug.core.RngStream` values, so every pipeline output is
reproducible from its inputs and a master seed.
"""

from .core import (
    AudioSignal,
    RngStream,
    amplitude_to_db,
    db_to_amplitude,
    derive_seed,
    resample,
    rms,
)
from .dataset import (
    AugmentedIndex,
    FoldAssignment,
    IndexRow,
    Manifest,
    ManifestEntry,
    PlanRow,
    build_training_set,
    load_folds,
    load_index,
    load_manifest,
    plan_augmentation,
    save_folds,
    stratified_folds,
)
from .dgt import DgtParams, Spectrogram, dgt, load_spec, render, save_png, save_spec
from .fusion import (
    FusionRecipe,
    ScoreMatrix,
    ScoreRow,
    fuse_recipe,
    fuse_sum,
    load_recipe,
    pooled_accuracy,
    read_scores,
    recognition_rate,
    sanitize,
    write_scores,
)
from .image_aug import AffineAugParams, affine_warp, load_png, random_affine, standard_img_protocol
from .protocols import (
    CLI_PROTOCOL_NAMES,
    PROTOCOL_NAMES,
    Protocol,
    apply_protocol,
    protocol_transform_names,
    std_signal_protocol,
)
from .signal_aug import (
    SIGNAL_PROTOCOL_NAMES,
    DrcCurve,
    NoiseParams,
    WowParams,
    add_noise,
    clip,
    drc,
    gain,
    harmonic_distortion,
    pitch_shift,
    rand_time_shift,
    signal_protocol,
    sound_mix,
    speed_up,
    wow_resample,
)
from .spectro_aug import (
    SPECTRO_PROTOCOL_NAMES,
    EmdaParams,
    Equalizer,
    VtlnParams,
    WarpMaskParams,
    emda,
    rand_time_shift_spec,
    random_image_warp,
    same_class_sum,
    spectro_protocol,
    spectrogram_random_shifts,
    vtln,
    vtln_warp,
)
from .wavio import read_wav, write_wav

__version__ = "0.1.0"

__all__ = [
    "AudioSignal",
    "RngStream",
    "derive_seed",
    "rms",
    "db_to_amplitude",
    "amplitude_to_db",
    "resample",
    "read_wav",
    "write_wav",
    "DgtParams",
    "Spectrogram",
    "dgt",
    "render",
    "save_spec",
    "load_spec",
    "save_png",
    "WowParams",
    "NoiseParams",
    "DrcCurve",
    "wow_resample",
    "add_noise",
    "clip",
    "speed_up",
    "harmonic_distortion",
    "gain",
    "rand_time_shift",
    "sound_mix",
    "drc",
    "pitch_shift",
    "signal_protocol",
    "SIGNAL_PROTOCOL_NAMES",
    "VtlnParams",
    "Equalizer",
    "EmdaParams",
    "WarpMaskParams",
    "spectrogram_random_shifts",
    "same_class_sum",
    "vtln",
    "vtln_warp",
    "emda",
    "rand_time_shift_spec",
    "random_image_warp",
    "spectro_protocol",
    "SPECTRO_PROTOCOL_NAMES",
    "AffineAugParams",
    "affine_warp",
    "random_affine",
    "standard_img_protocol",
    "load_png",
    "Protocol",
    "PROTOCOL_NAMES",
    "CLI_PROTOCOL_NAMES",
    "std_signal_protocol",
    "apply_protocol",
    "protocol_transform_names",
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
