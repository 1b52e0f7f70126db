"""Audio sample representation, deterministic random streams, and shared numerics."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "AudioSignal",
    "RngStream",
    "derive_seed",
    "rms",
    "db_to_amplitude",
    "amplitude_to_db",
    "resample",
]


@dataclass(frozen=True)
class AudioSignal:
    """A mono audio buffer: float64 samples (nominal range [-1, 1]) plus a sample rate in Hz.

    Instances are immutable; every transform returns a new signal. Sample
    values must be finite; the nominal range is not enforced because several
    transforms intentionally exceed it.
    """

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        # Copy unconditionally so freezing never back-propagates to the
        # caller's buffer.
        samples = np.array(self.samples, dtype=np.float64)
        if samples.ndim != 1:
            raise ValueError(f"samples must be 1-D, got shape {samples.shape}")
        if not np.all(np.isfinite(samples)):
            raise ValueError("samples contain NaN or Inf")
        if int(self.sample_rate) <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate", int(self.sample_rate))

    def __len__(self) -> int:
        return self.samples.shape[0]

    @property
    def duration(self) -> float:
        """Length in seconds."""
        return len(self) / self.sample_rate

    def replace_samples(self, samples: np.ndarray) -> "AudioSignal":
        """New signal with the same sample rate and different samples."""
        return AudioSignal(samples, self.sample_rate)


def derive_seed(master_seed: int, *parts) -> int:
    """Derive a child seed from a master seed and an arbitrary key.

    Hashes the canonical string encoding of ``(master_seed, *parts)`` with
    BLAKE2b and returns the first 8 bytes as an unsigned 64-bit integer, so
    derived streams are stable across platforms and Python processes
    (unlike the builtin ``hash``).
    """
    text = "\x1f".join(str(p) for p in (master_seed, *parts))
    digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


class RngStream:
    """Deterministic random stream backed by the Philox counter-based generator.

    The same seed yields the same draw sequence on every platform and run,
    which makes every augmentation replayable. Each independent unit of work
    (one file, one protocol application) should own its own stream, derived
    via :func:`derive_seed` or :meth:`spawn`.
    """

    def __init__(self, seed: int):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self._gen = np.random.Generator(np.random.Philox(key=self.seed))

    def spawn(self, *parts) -> "RngStream":
        """Independent child stream keyed by ``parts``."""
        return RngStream(derive_seed(self.seed, *parts))

    # Thin pass-throughs to the underlying numpy Generator.
    def random(self, size=None):
        return self._gen.random(size)

    def uniform(self, low=0.0, high=1.0, size=None):
        return self._gen.uniform(low, high, size)

    def integers(self, low, high=None, size=None):
        return self._gen.integers(low, high, size)

    def normal(self, loc=0.0, scale=1.0, size=None):
        return self._gen.normal(loc, scale, size)

    def shuffle(self, x):
        self._gen.shuffle(x)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed})"


def rms(signal: AudioSignal) -> float:
    """Root mean square of the sample values.

    Raises ``ValueError`` on an empty signal.
    """
    if len(signal) == 0:
        raise ValueError("rms of empty signal is undefined")
    return float(np.sqrt(np.mean(np.square(signal.samples))))


def db_to_amplitude(db: float) -> float:
    """Convert a decibel gain to a linear amplitude factor (10^(db/20))."""
    return float(10.0 ** (db / 20.0))


def amplitude_to_db(amplitude: float, eps: float = 1e-10) -> float:
    """Convert a linear amplitude to decibels, with a floor to avoid log(0)."""
    return float(20.0 * np.log10(abs(amplitude) + eps))


def resample(signal: AudioSignal, factor: float) -> AudioSignal:
    """Change playback speed by ``factor`` via linear interpolation.

    The output has ``round(len / factor)`` samples and the original sample
    rate: a factor above one shortens the signal and scales its frequencies
    up by the same factor. ``factor == 1`` returns the input unchanged.
    """
    if not factor > 0:
        raise ValueError(f"resample factor must be > 0, got {factor}")
    if len(signal) == 0:
        raise ValueError("cannot resample an empty signal")
    if factor == 1.0:
        return signal
    n_in = len(signal)
    n_out = int(round(n_in / factor))
    if n_out < 1:
        n_out = 1
    positions = np.arange(n_out, dtype=np.float64) * factor
    out = np.interp(positions, np.arange(n_in, dtype=np.float64), signal.samples)
    return AudioSignal(out, signal.sample_rate)
