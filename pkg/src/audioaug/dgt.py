"""Gaussian-window time-frequency analysis and spectrogram persistence.

The transform is a short-time Fourier transform whose analysis window is
the Gaussian ``w(t) = exp(-pi * sigma2 * t**2)``: larger ``sigma2`` means a
narrower window. Each output column holds the magnitudes of one analysis
frame; frame ``m`` covers input samples ``[m*hop, (m+1)*hop)`` with the
window centered mid-frame, and the full output has ``ceil(len/hop)``
columns. Only non-negative frequencies are kept, so a transform with ``C``
frequency channels yields ``C//2 + 1`` rows.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np
from PIL import Image

from .core import AudioSignal

__all__ = [
    "DgtParams",
    "Spectrogram",
    "dgt",
    "render",
    "save_spec",
    "load_spec",
    "save_png",
]

_SPG_MAGIC = b"SPG1"
_SPG_HEADER = struct.Struct("<4sIIddI")  # magic, rows, cols, freq_res, time_res, rate

# Relative amplitude below which the Gaussian window is truncated.
_WINDOW_CUTOFF = 1e-8


@dataclass(frozen=True)
class DgtParams:
    """Analysis parameters.

    Parameters
    ----------
    window_sigma2:
        Width parameter of the Gaussian window, in 1/seconds^2. ``None``
        (the default) picks the value whose -60 dB amplitude support spans
        ``channels`` samples at the signal's sample rate.
    hop:
        Samples between consecutive analysis frames.
    channels:
        Number of frequency channels over the full circle; the output keeps
        ``channels//2 + 1`` non-negative-frequency rows.
    dynamic_range_db:
        Dynamic range below the peak used by :func:`render`.
    """

    window_sigma2: float | None = None
    hop: int = 128
    channels: int = 512
    dynamic_range_db: float = 80.0

    def __post_init__(self):
        if self.hop < 1:
            raise ValueError(f"hop must be a positive sample count, got {self.hop}")
        if self.channels < 2:
            raise ValueError(f"channels must be >= 2, got {self.channels}")
        if not self.dynamic_range_db > 0:
            raise ValueError("dynamic_range_db must be > 0")
        if self.window_sigma2 is not None and not self.window_sigma2 > 0:
            raise ValueError("window_sigma2 must be > 0")

    def resolved_sigma2(self, sample_rate: int) -> float:
        """Effective Gaussian width for a given sample rate."""
        if self.window_sigma2 is not None:
            return float(self.window_sigma2)
        half_span = (self.channels / 2) / sample_rate  # seconds to the -60 dB edge
        return math.log(1000.0) / (math.pi * half_span**2)


@dataclass(frozen=True)
class Spectrogram:
    """Time-frequency magnitude matrix with axis metadata.

    ``magnitudes[i, j]`` is the magnitude at frequency ``i * freq_resolution``
    Hz (row 0 is 0 Hz, ascending) and time frame ``j``. All entries are
    non-negative and finite.
    """

    magnitudes: np.ndarray
    freq_resolution: float
    time_resolution: float
    source_sample_rate: int

    def __post_init__(self):
        mags = np.asarray(self.magnitudes, dtype=np.float64)
        if mags.ndim != 2 or mags.size == 0:
            raise ValueError(f"magnitudes must be a non-empty 2-D matrix, got shape {mags.shape}")
        if not np.all(np.isfinite(mags)):
            raise ValueError("magnitudes contain NaN or Inf")
        if np.any(mags < 0):
            raise ValueError("magnitudes must be non-negative")
        if not (self.freq_resolution > 0 and self.time_resolution > 0):
            raise ValueError("axis resolutions must be positive")
        if int(self.source_sample_rate) <= 0:
            raise ValueError("source_sample_rate must be positive")
        mags.flags.writeable = False
        object.__setattr__(self, "magnitudes", mags)
        object.__setattr__(self, "freq_resolution", float(self.freq_resolution))
        object.__setattr__(self, "time_resolution", float(self.time_resolution))
        object.__setattr__(self, "source_sample_rate", int(self.source_sample_rate))

    @property
    def rows(self) -> int:
        return self.magnitudes.shape[0]

    @property
    def cols(self) -> int:
        return self.magnitudes.shape[1]

    @property
    def max_frequency(self) -> float:
        """Frequency of the top row (the Nyquist frequency of the source)."""
        return (self.rows - 1) * self.freq_resolution

    def replace_magnitudes(self, magnitudes: np.ndarray) -> "Spectrogram":
        """New spectrogram with the same axis metadata."""
        return Spectrogram(
            magnitudes, self.freq_resolution, self.time_resolution, self.source_sample_rate
        )


def _gaussian_window(sigma2: float, sample_rate: int) -> tuple[np.ndarray, int]:
    """Truncated Gaussian window and its half-length in samples."""
    t_cut = math.sqrt(math.log(1.0 / _WINDOW_CUTOFF) / (math.pi * sigma2))
    half = max(1, int(math.ceil(t_cut * sample_rate)))
    offsets = np.arange(-half, half + 1, dtype=np.float64) / sample_rate
    return np.exp(-math.pi * sigma2 * offsets**2), half


def dgt(signal: AudioSignal, params: DgtParams = DgtParams()) -> Spectrogram:
    """Magnitude time-frequency transform of ``signal``.

    The signal is treated as zero outside its support; column ``m`` is the
    magnitude of the ``channels``-point spectrum of the windowed segment
    centered at sample ``(m + 1/2) * hop``. Raises ``ValueError`` when the
    signal is shorter than one hop.
    """
    n = len(signal)
    if n < params.hop:
        raise ValueError(f"signal of {n} samples is shorter than one hop ({params.hop})")
    fs = signal.sample_rate
    sigma2 = params.resolved_sigma2(fs)
    c = params.channels

    window, half = _gaussian_window(sigma2, fs)
    span_60db = 2.0 * math.sqrt(math.log(1000.0) / (math.pi * sigma2)) * fs
    if params.hop > span_60db:
        raise ValueError(
            f"hop {params.hop} exceeds the window's -60 dB support ({span_60db:.1f} samples)"
        )

    n_cols = -(-n // params.hop)  # ceil
    centers = (2 * np.arange(n_cols) + 1) * params.hop // 2

    padded = np.zeros(n + 2 * half + params.hop, dtype=np.float64)
    padded[half : half + n] = signal.samples
    idx = centers[:, None] + np.arange(-half, half + 1)[None, :] + half
    frames = padded[idx] * window

    # Fold each frame modulo the channel count so window support longer than
    # one FFT length aliases correctly, then take the spectrum.
    width = frames.shape[1]
    n_chunks = -(-width // c)
    if n_chunks * c != width:
        frames = np.pad(frames, ((0, 0), (0, n_chunks * c - width)))
    folded = frames.reshape(n_cols, n_chunks, c).sum(axis=1)
    folded = np.roll(folded, -half, axis=1)  # realign bucket 0 with the frame center

    spectrum = np.fft.rfft(folded, axis=1)
    magnitudes = np.abs(spectrum).T / (sigma2 * fs)
    return Spectrogram(
        magnitudes,
        freq_resolution=fs / c,
        time_resolution=params.hop / fs,
        source_sample_rate=fs,
    )


def render(spec: Spectrogram, params: DgtParams = DgtParams()) -> np.ndarray:
    """Render a spectrogram to an 8-bit grayscale image (uint8 matrix).

    Magnitudes are mapped to ``20*log10(m + 1e-10)`` dB; the window from
    ``dynamic_range_db`` below the peak up to the peak is mapped linearly to
    [0, 255], clamping below. An all-zero spectrogram renders all-black.
    """
    mags = spec.magnitudes
    peak = mags.max()
    if peak <= 0:
        return np.zeros(mags.shape, dtype=np.uint8)
    level = 20.0 * np.log10(mags + 1e-10)
    top = 20.0 * np.log10(peak + 1e-10)
    scaled = 255.0 * (level - (top - params.dynamic_range_db)) / params.dynamic_range_db
    return np.clip(np.rint(scaled), 0, 255).astype(np.uint8)


def save_png(image: np.ndarray, path) -> None:
    """Write an 8-bit grayscale image as PNG, frequency rows flipped so low ends up at the bottom."""
    if image.dtype != np.uint8 or image.ndim != 2:
        raise ValueError("expected a 2-D uint8 image")
    Image.fromarray(image[::-1], mode="L").save(path, format="PNG")


def save_spec(spec: Spectrogram, path) -> None:
    """Write a spectrogram in the binary ``.spg`` format.

    Layout: 32-byte header (magic ``SPG1``, rows, cols as uint32, frequency
    and time resolutions as float64, source sample rate as uint32, all
    little-endian) followed by the row-major float32 payload.
    """
    header = _SPG_HEADER.pack(
        _SPG_MAGIC,
        spec.rows,
        spec.cols,
        spec.freq_resolution,
        spec.time_resolution,
        spec.source_sample_rate,
    )
    payload = spec.magnitudes.astype("<f4").tobytes(order="C")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload)


def load_spec(path) -> Spectrogram:
    """Read an ``.spg`` file written by :func:`save_spec`.

    Raises ``ValueError`` on a bad magic number or a payload whose size does
    not match the header.
    """
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _SPG_HEADER.size or raw[:4] != _SPG_MAGIC:
        raise ValueError(f"not a spectrogram file (bad magic): {path}")
    magic, rows, cols, freq_res, time_res, rate = _SPG_HEADER.unpack_from(raw)
    expected = rows * cols * 4
    payload = raw[_SPG_HEADER.size :]
    if len(payload) != expected:
        raise ValueError(
            f"truncated spectrogram payload in {path}: header says {expected} bytes, "
            f"found {len(payload)}"
        )
    mags = np.frombuffer(payload, dtype="<f4").reshape(rows, cols).astype(np.float64)
    return Spectrogram(mags, freq_res, time_res, rate)
