"""Independent reference implementations used to pin expected test values.

Everything here is written against the observable definitions only
(windowed Fourier sums, percentile ranks, per-cell float addition) and
deliberately avoids the package's own code paths, so agreement between the
two is meaningful evidence rather than a tautology.
"""

import cmath
import math

import numpy as np
from scipy import signal as scipy_signal


def fft_peak_hz(samples: np.ndarray, sample_rate: int, zero_pad: int = 8) -> float:
    """Dominant frequency of a quasi-stationary signal.

    Hann-windowed, zero-padded FFT; the padding refines the grid enough to
    resolve well under 1% at the frequencies used in these tests.
    """
    n = len(samples)
    windowed = samples * np.hanning(n)
    spectrum = np.abs(np.fft.rfft(windowed, n=zero_pad * n))
    return float(np.argmax(spectrum)) * sample_rate / (zero_pad * n)


def stft_ridge_hz(samples: np.ndarray, sample_rate: int, nperseg: int = 1024) -> np.ndarray:
    """Per-frame dominant frequency track (Hz) via a plain STFT."""
    freqs, _, spec = scipy_signal.spectrogram(
        samples, fs=sample_rate, nperseg=nperseg, noverlap=nperseg // 2, mode="magnitude"
    )
    return freqs[np.argmax(spec, axis=0)]


def dgt_column_reference(
    samples: np.ndarray,
    sample_rate: int,
    sigma2: float,
    hop: int,
    channels: int,
    column: int,
) -> np.ndarray:
    """Brute-force windowed Fourier sum for one analysis frame.

    Sums over every input sample with the full (untruncated) Gaussian
    window centered mid-frame, one frequency row at a time. O(rows * n);
    use on short inputs only.
    """
    center = (2 * column + 1) * hop // 2
    n = np.arange(len(samples))
    window = np.exp(-math.pi * sigma2 * ((n - center) / sample_rate) ** 2)
    weighted = samples * window
    rows = channels // 2 + 1
    out = np.empty(rows)
    for r in range(rows):
        phase = np.exp(-2j * math.pi * r * (n - center) / channels)
        out[r] = abs(np.sum(weighted * phase)) / (sigma2 * sample_rate)
    return out


def nearest_rank_percentile(values, percent: float) -> float:
    """Pure-python nearest-rank percentile (ceil(p*n)-th smallest)."""
    ordered = sorted(values)
    rank = max(1, math.ceil(percent / 100.0 * len(ordered)))
    return ordered[rank - 1]


def sanitize_rows_reference(rows: dict[str, list[float]]) -> dict[str, list[float]]:
    """Pure-python restatement of the score-cleaning rules."""
    out = {}
    for sample_id, scores in rows.items():
        cleaned = [0.0 if (isinstance(v, float) and math.isnan(v)) else v for v in scores]
        if all(v == cleaned[0] for v in cleaned):
            cleaned = [0.0] * len(cleaned)
        out[sample_id] = cleaned
    return out


def fuse_sum_reference(matrices: list[dict[str, list[float]]]) -> dict[str, list[float]]:
    """Per-cell float sum in input order, after per-matrix sanitization."""
    cleaned = [sanitize_rows_reference(m) for m in matrices]
    totals = {sample_id: list(scores) for sample_id, scores in cleaned[0].items()}
    for matrix in cleaned[1:]:
        for sample_id, scores in matrix.items():
            totals[sample_id] = [a + b for a, b in zip(totals[sample_id], scores)]
    return totals


def accuracy_reference(
    rows: list[tuple[str, int, list[float], str]], class_names: list[str]
) -> tuple[dict[int, float], float]:
    """Hand-rolled per-fold accuracy with explicit first-maximum tie-break."""
    correct: dict[int, int] = {}
    total: dict[int, int] = {}
    for _sample_id, fold, scores, true_label in rows:
        best = 0
        for i, v in enumerate(scores):
            if v > scores[best]:
                best = i
        correct[fold] = correct.get(fold, 0) + (class_names[best] == true_label)
        total[fold] = total.get(fold, 0) + 1
    per_fold = {f: correct[f] / total[f] for f in sorted(total)}
    mean = sum(per_fold.values()) / len(per_fold)
    return per_fold, mean


def iterated_sine_reference(value: float) -> float:
    """Scalar five-fold iterate of v -> sin(2*pi*v)."""
    for _ in range(5):
        value = math.sin(2.0 * math.pi * value)
    return value


def compressor_reference(x: float, threshold_db: float, ratio: float) -> float:
    """Scalar single-knee dB-domain compressor."""
    eps = 1e-10
    level = 20.0 * math.log10(abs(x) + eps)
    if level >= threshold_db:
        level = threshold_db + (level - threshold_db) / ratio
    magnitude = 10.0 ** (level / 20.0)
    return math.copysign(magnitude, x) if x != 0 else 0.0


def vtln_warp_reference(f: float, alpha: float, f0: float, f_max: float) -> float:
    """Scalar two-branch frequency warp."""
    if f < f0:
        return alpha * f
    return (f_max - alpha * f0) / (f_max - f0) * (f - f0) + alpha * f0


def equalizer_gain_reference(f: float, f0: float, g: float, q: float) -> float:
    """Scalar bell-equalizer linear gain."""
    w = 1.0 / (1.0 + ((f - f0) * q / f0) ** 2)
    return 10.0 ** (g * w / 20.0)
