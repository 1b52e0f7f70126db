"""Spectrogram-domain augmentation transforms.

Six pure transforms over :class:`~audioaug.dgt.Spectrogram`, plus
:func:`spectro_protocol` which applies all of them in a fixed order. Every
transform preserves the spectrogram's dimensions and axis metadata.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import RngStream
from .dgt import Spectrogram

__all__ = [
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
]


def _interp_columns(matrix: np.ndarray, positions: np.ndarray) -> np.ndarray:
    """Sample each row of ``matrix`` at fractional column ``positions``."""
    positions = np.clip(positions, 0.0, matrix.shape[1] - 1.0)
    lo = np.floor(positions).astype(np.intp)
    hi = np.minimum(lo + 1, matrix.shape[1] - 1)
    frac = positions - lo
    return matrix[:, lo] * (1.0 - frac) + matrix[:, hi] * frac


def _interp_rows(matrix: np.ndarray, positions: np.ndarray) -> np.ndarray:
    """Sample each column of ``matrix`` at fractional row ``positions``."""
    positions = np.clip(positions, 0.0, matrix.shape[0] - 1.0)
    lo = np.floor(positions).astype(np.intp)
    hi = np.minimum(lo + 1, matrix.shape[0] - 1)
    frac = (positions - lo)[:, None]
    return matrix[lo, :] * (1.0 - frac) + matrix[hi, :] * frac


def spectrogram_random_shifts(
    spec: Spectrogram,
    rng: RngStream | None = None,
    row_shift: int | None = None,
    col_shift: int | None = None,
) -> Spectrogram:
    """Circularly shift rows (pitch) and columns (time) by random amounts.

    Shifts default to uniform draws from [-R, R] and [-C, C] with R = 5% of
    the row count and C = 10% of the column count; pass ``row_shift`` /
    ``col_shift`` to fix them explicitly.
    """
    mags = spec.magnitudes
    if row_shift is None or col_shift is None:
        if rng is None:
            raise ValueError("an RngStream is required when shifts are not given")
        if row_shift is None:
            max_r = int(round(0.05 * mags.shape[0]))
            row_shift = int(rng.integers(-max_r, max_r + 1))
        if col_shift is None:
            max_c = int(round(0.10 * mags.shape[1]))
            col_shift = int(rng.integers(-max_c, max_c + 1))
    out = np.roll(mags, (row_shift, col_shift), axis=(0, 1))
    return spec.replace_magnitudes(out)


def same_class_sum(spec1: Spectrogram, spec2: Spectrogram, raw_sum: bool = False) -> Spectrogram:
    """Combine two same-class spectrograms elementwise.

    Returns the elementwise mean by default so magnitude statistics stay in
    the range of the inputs; ``raw_sum=True`` returns the plain sum.
    """
    if spec1.magnitudes.shape != spec2.magnitudes.shape:
        raise ValueError(
            f"dimension mismatch: {spec1.magnitudes.shape} vs {spec2.magnitudes.shape}"
        )
    total = spec1.magnitudes + spec2.magnitudes
    return spec1.replace_magnitudes(total if raw_sum else total / 2.0)


@dataclass(frozen=True)
class VtlnParams:
    """Vocal-tract-length style frequency warp configuration.

    ``f0`` is the knee frequency of the warp and ``f_max`` the top
    frequency; both default to values derived from the spectrogram being
    warped (``f_max`` = top-row frequency, ``f0`` = 0.8 * f_max). Columns
    are processed in ``slices`` contiguous temporal groups, each with its
    own warp factor drawn from ``alpha_range``. Before warping, up to
    ``crop_max_fraction`` of the columns are dropped from a random side and
    the remainder stretched back to full width; set it to 0 to disable.
    """

    alpha_range: tuple[float, float] = (0.9, 1.1)
    f0: float | None = None
    f_max: float | None = None
    slices: int = 10
    crop_max_fraction: float = 0.05

    def __post_init__(self):
        a, b = self.alpha_range
        if not a <= b:
            raise ValueError(f"alpha_range must be ordered, got {self.alpha_range}")
        if self.slices < 1:
            raise ValueError("slices must be >= 1")
        if not 0.0 <= self.crop_max_fraction < 1.0:
            raise ValueError("crop_max_fraction must be in [0, 1)")
        if self.f0 is not None and not self.f0 > 0:
            raise ValueError("f0 must be > 0")
        if self.f_max is not None and not self.f_max > 0:
            raise ValueError("f_max must be > 0")


def vtln_warp(f, alpha: float, f0: float, f_max: float):
    """Piecewise-linear frequency warp G.

    G(f) = alpha*f below the knee f0; above it the segment is chosen so the
    warp is continuous at f0 and fixes f_max: G(f) = ((f_max - alpha*f0)/
    (f_max - f0))*(f - f0) + alpha*f0.
    """
    f = np.asarray(f, dtype=np.float64)
    upper = (f_max - alpha * f0) / (f_max - f0) * (f - f0) + alpha * f0
    return np.where(f < f0, alpha * f, upper)


def _vtln_warp_inverse(f, alpha: float, f0: float, f_max: float):
    """Inverse of :func:`vtln_warp`; the knee of G sits at alpha*f0."""
    f = np.asarray(f, dtype=np.float64)
    lower = f / alpha
    upper = (f - alpha * f0) * (f_max - f0) / (f_max - alpha * f0) + f0
    return np.where(f < alpha * f0, lower, upper)


def vtln(spec: Spectrogram, params: VtlnParams = VtlnParams(), rng: RngStream | None = None) -> Spectrogram:
    """Random crop plus per-slice frequency warping.

    Up to ``crop_max_fraction`` of the columns are dropped from one side and
    the rest stretched back to the original width. The columns are then cut
    into ``slices`` temporal groups; each group's rows are resampled along
    frequency by the inverse of :func:`vtln_warp` with its own alpha drawn
    from ``alpha_range``. Output dimensions equal input dimensions.
    """
    if rng is None:
        raise ValueError("vtln requires an RngStream")
    mags = spec.magnitudes
    n_rows, n_cols = mags.shape
    if n_cols < params.slices:
        raise ValueError(f"need at least {params.slices} columns, got {n_cols}")
    f_max = params.f_max if params.f_max is not None else spec.max_frequency
    f0 = params.f0 if params.f0 is not None else 0.8 * f_max
    if not 0 < f0 < f_max:
        raise ValueError(f"f0 must lie strictly inside (0, {f_max}), got {f0}")

    max_drop = int(params.crop_max_fraction * n_cols)
    if max_drop > 0:
        n_drop = int(rng.integers(0, max_drop + 1))
        from_left = bool(rng.integers(0, 2))
        if n_drop > 0:
            kept = mags[:, n_drop:] if from_left else mags[:, : n_cols - n_drop]
            positions = np.linspace(0.0, kept.shape[1] - 1.0, n_cols)
            mags = _interp_columns(kept, positions)

    row_freqs = np.arange(n_rows, dtype=np.float64) * spec.freq_resolution
    out = np.empty_like(mags)
    bounds = np.linspace(0, n_cols, params.slices + 1).astype(int)
    for start, stop in zip(bounds[:-1], bounds[1:]):
        alpha = float(rng.uniform(*params.alpha_range))
        source_rows = _vtln_warp_inverse(row_freqs, alpha, f0, f_max) / spec.freq_resolution
        out[:, start:stop] = _interp_rows(mags[:, start:stop], source_rows)
    return spec.replace_magnitudes(out)


@dataclass(frozen=True)
class Equalizer:
    """Bell equalizer: center ``f0`` (Hz), gain ``g`` (dB), sharpness ``Q``."""

    f0: float
    g: float
    q: float

    def __post_init__(self):
        if not 100.0 <= self.f0 <= 6000.0:
            raise ValueError(f"equalizer center must be in [100, 6000] Hz, got {self.f0}")
        if not -8.0 <= self.g <= 8.0:
            raise ValueError(f"equalizer gain must be in [-8, 8] dB, got {self.g}")
        if not 1.0 <= self.q <= 9.0:
            raise ValueError(f"equalizer Q must be in [1, 9], got {self.q}")

    def row_gains(self, frequencies: np.ndarray) -> np.ndarray:
        """Linear gain per frequency: 10^(g*w(f)/20), w(f) = 1/(1+((f-f0)*Q/f0)^2)."""
        bell = 1.0 / (1.0 + ((frequencies - self.f0) * self.q / self.f0) ** 2)
        return 10.0 ** (self.g * bell / 20.0)

    @staticmethod
    def random(rng: RngStream) -> "Equalizer":
        return Equalizer(
            f0=float(rng.uniform(100.0, 6000.0)),
            g=float(rng.uniform(-8.0, 8.0)),
            q=float(rng.uniform(1.0, 9.0)),
        )


@dataclass(frozen=True)
class EmdaParams:
    """Equalized-mixture parameters.

    The output is ``alpha``-weighted: alpha * EQ(spec1, psi1) + (1 - alpha)
    * EQ(spec2 delayed by round(beta * delay_frames) columns, psi2).
    """

    alpha: float
    beta: float
    delay_frames: float
    psi1: Equalizer
    psi2: Equalizer

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must be in [0, 1]")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError("beta must be in [0, 1]")
        if not 0.0 <= self.delay_frames <= 50.0:
            raise ValueError("delay_frames must be in [0, 50]")

    @staticmethod
    def random(rng: RngStream) -> "EmdaParams":
        return EmdaParams(
            alpha=float(rng.random()),
            beta=float(rng.random()),
            delay_frames=float(rng.uniform(0.0, 50.0)),
            psi1=Equalizer.random(rng),
            psi2=Equalizer.random(rng),
        )


def emda(spec1: Spectrogram, spec2: Spectrogram, params: EmdaParams) -> Spectrogram:
    """Weighted mix of two equalized same-class spectrograms.

    Each input is multiplied row-wise by its equalizer's gain curve; the
    second input is first delayed circularly by round(beta * delay_frames)
    columns. Inputs must share dimensions.
    """
    if spec1.magnitudes.shape != spec2.magnitudes.shape:
        raise ValueError(
            f"dimension mismatch: {spec1.magnitudes.shape} vs {spec2.magnitudes.shape}"
        )
    freqs = np.arange(spec1.rows, dtype=np.float64) * spec1.freq_resolution
    delayed = np.roll(spec2.magnitudes, int(round(params.beta * params.delay_frames)), axis=1)
    out = params.alpha * (params.psi1.row_gains(freqs)[:, None] * spec1.magnitudes) + (
        1.0 - params.alpha
    ) * (params.psi2.row_gains(freqs)[:, None] * delayed)
    return spec1.replace_magnitudes(out)


def rand_time_shift_spec(
    spec: Spectrogram, split: int | None = None, rng: RngStream | None = None
) -> Spectrogram:
    """Swap the column blocks before and after ``split``.

    ``split`` is drawn uniformly from [1, width] when not supplied;
    ``split == width`` is the identity. The multiset of columns is
    preserved exactly.
    """
    width = spec.cols
    if split is None:
        if rng is None:
            raise ValueError("rand_time_shift_spec requires an RngStream when split is not given")
        split = int(rng.integers(1, width + 1))
    if not 1 <= split <= width:
        raise ValueError(f"split must be in [1, {width}], got {split}")
    mags = spec.magnitudes
    return spec.replace_magnitudes(np.concatenate([mags[:, split:], mags[:, :split]], axis=1))


@dataclass(frozen=True)
class WarpMaskParams:
    """Horizontal warp and band-mask configuration.

    ``max_disp`` is the largest horizontal displacement of a control column
    (``None`` means 5% of the width). Two row bands of height
    ``row_mask_width`` and one column band of width ``col_mask_width`` are
    zeroed at random positions after the warp.
    """

    control_points: int = 5
    max_disp: float | None = None
    row_mask_width: int = 5
    col_mask_width: int = 15
    row_mask_count: int = 2
    col_mask_count: int = 1

    def __post_init__(self):
        if self.control_points < 2:
            raise ValueError("need at least 2 control points")
        if self.max_disp is not None and self.max_disp < 0:
            raise ValueError("max_disp must be >= 0")
        if min(self.row_mask_width, self.col_mask_width) < 1:
            raise ValueError("mask widths must be >= 1")
        if min(self.row_mask_count, self.col_mask_count) < 0:
            raise ValueError("mask counts must be >= 0")


def random_image_warp(
    spec: Spectrogram, params: WarpMaskParams = WarpMaskParams(), rng: RngStream | None = None
) -> Spectrogram:
    """Horizontal-only smooth warp followed by zeroed masking bands.

    Evenly spaced control columns (first and last pinned in place) are
    displaced by up to ``max_disp`` columns; the column remap is linear
    between control points and every row is resampled through it. Then
    ``row_mask_count`` row bands and ``col_mask_count`` column bands are
    set to zero at positions drawn uniformly among the fully-inside ones.
    """
    if rng is None:
        raise ValueError("random_image_warp requires an RngStream")
    mags = spec.magnitudes
    n_rows, n_cols = mags.shape
    if n_rows < params.row_mask_width or n_cols < params.col_mask_width:
        raise ValueError(
            f"spectrogram {mags.shape} is smaller than the mask bands "
            f"({params.row_mask_width} rows / {params.col_mask_width} cols)"
        )
    max_disp = params.max_disp if params.max_disp is not None else 0.05 * n_cols

    anchors = np.linspace(0.0, n_cols - 1.0, params.control_points)
    targets = anchors.copy()
    if params.control_points > 2:
        targets[1:-1] += rng.uniform(-max_disp, max_disp, size=params.control_points - 2)
        # Keep the remap monotone even when displacements exceed the anchor spacing.
        targets = np.maximum.accumulate(targets)
    source = np.interp(np.arange(n_cols, dtype=np.float64), targets, anchors)
    out = _interp_columns(mags, source)

    for _ in range(params.row_mask_count):
        top = int(rng.integers(0, n_rows - params.row_mask_width + 1))
        out[top : top + params.row_mask_width, :] = 0.0
    for _ in range(params.col_mask_count):
        left = int(rng.integers(0, n_cols - params.col_mask_width + 1))
        out[:, left : left + params.col_mask_width] = 0.0
    return spec.replace_magnitudes(out)


SPECTRO_PROTOCOL_NAMES = (
    "random_shifts",
    "same_class_sum",
    "vtln",
    "emda",
    "time_shift",
    "image_warp",
)


def spectro_protocol(
    spec: Spectrogram, classmate: Spectrogram, rng: RngStream
) -> list[Spectrogram]:
    """Produce the 6 augmented versions of ``spec``, in a fixed order.

    The order matches :data:`SPECTRO_PROTOCOL_NAMES`. ``classmate`` must
    share the class label (caller's responsibility) and the dimensions of
    ``spec``. Randomized steps draw from streams spawned off ``rng``.
    """
    steps = (
        ("random_shifts", lambda: spectrogram_random_shifts(spec, rng.spawn("shifts"))),
        ("same_class_sum", lambda: same_class_sum(spec, classmate)),
        ("vtln", lambda: vtln(spec, rng=rng.spawn("vtln"))),
        ("emda", lambda: emda(spec, classmate, EmdaParams.random(rng.spawn("emda")))),
        ("time_shift", lambda: rand_time_shift_spec(spec, rng=rng.spawn("time_shift"))),
        ("image_warp", lambda: random_image_warp(spec, rng=rng.spawn("warp"))),
    )
    outputs = []
    for name, step in steps:
        try:
            outputs.append(step())
        except ValueError as exc:
            raise ValueError(f"{name}: {exc}") from exc
    return outputs
