"""Spectrogram-domain transforms on a synthetic two-tone matrix.

Shows the frequency-axis warp (with its piecewise-linear map), the
equalized two-spectrogram mixture, circular shifts, and the horizontal
warp-plus-masking transform. Prints where the spectral peaks move.

    python3 demos/03_spectrogram_transforms.py
"""

import numpy as np

from audioaug import (
    EmdaParams,
    RngStream,
    Spectrogram,
    VtlnParams,
    WarpMaskParams,
    emda,
    random_image_warp,
    rand_time_shift_spec,
    same_class_sum,
    spectrogram_random_shifts,
    vtln,
    vtln_warp,
)

ROWS, COLS = 64, 80
FREQ_RES = 62.5  # Hz per row


def two_tone_spec(row_a: int, row_b: int) -> Spectrogram:
    mags = np.full((ROWS, COLS), 0.01)
    mags[row_a, :] = 1.0
    mags[row_b, :] = 0.6
    return Spectrogram(mags, FREQ_RES, 0.008, 16000)


def peak_rows(spec: Spectrogram) -> list[int]:
    column = spec.magnitudes[:, spec.cols // 2]
    return sorted(np.argsort(column)[-2:].tolist())


spec = two_tone_spec(16, 40)
print(f"input: tones at rows {peak_rows(spec)} of {ROWS}\n")

# The warp map itself: alpha > 1 pushes low frequencies up, pinned at f_max.
f_max = (ROWS - 1) * FREQ_RES
f0 = 0.8 * f_max
for f in (500.0, 1500.0, f0, f_max):
    print(f"vtln_warp({f:6.0f} Hz, alpha=1.1) = {vtln_warp(f, 1.1, f0, f_max):7.1f} Hz")

warped = vtln(spec, VtlnParams(alpha_range=(1.1, 1.1), crop_max_fraction=0.0), RngStream(3))
print(f"vtln alpha=1.1: peaks moved {peak_rows(spec)} -> {peak_rows(warped)}\n")

partner = two_tone_spec(20, 48)
averaged = same_class_sum(spec, partner)
print(f"same_class_sum: peaks of the mean are union-ish: {peak_rows(averaged)}")

params = EmdaParams.random(RngStream(4))
mixture = emda(spec, partner, params)
print(f"emda: alpha={params.alpha:.2f}, delay={params.beta * params.delay_frames:.1f} frames, "
      f"peaks {peak_rows(mixture)}\n")

shifted = spectrogram_random_shifts(spec, row_shift=3, col_shift=-5)
print(f"random_shifts (+3 rows): peaks {peak_rows(spec)} -> {peak_rows(shifted)}")

rolled = rand_time_shift_spec(spec, split=30)
print(f"time shift at column 30: column multiset preserved "
      f"({np.allclose(np.sort(rolled.magnitudes.sum(0)), np.sort(spec.magnitudes.sum(0)))})")

masked = random_image_warp(spec, WarpMaskParams(), RngStream(5))
zero_rows = int(np.sum(np.all(masked.magnitudes == 0.0, axis=1)))
zero_cols = int(np.sum(np.all(masked.magnitudes == 0.0, axis=0)))
print(f"random_image_warp: {zero_rows} zeroed rows and {zero_cols} zeroed columns after warp")
