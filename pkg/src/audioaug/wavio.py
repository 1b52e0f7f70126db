"""WAV (RIFF) file reading and writing.

Reads 16-bit PCM and 32-bit IEEE float files, mono or multichannel
(multichannel is averaged to mono at ingest). Writes are always mono
32-bit IEEE float, little-endian, so a write/read roundtrip is lossless
for float32-representable samples.
"""

from __future__ import annotations

import os

import numpy as np
from scipy.io import wavfile

from .core import AudioSignal

__all__ = ["read_wav", "write_wav"]

# Integer full-scale divisors per PCM width.
_PCM_SCALE = {np.dtype(np.int16): 32768.0, np.dtype(np.int32): 2147483648.0}


def read_wav(path) -> AudioSignal:
    """Read a WAV file into a mono float64 :class:`AudioSignal`.

    16-bit PCM samples are scaled by 1/32768 into [-1, 1); 32-bit float
    samples are taken as-is. Multichannel frames are averaged to mono.

    Raises ``FileNotFoundError`` for a missing file and ``ValueError`` for
    unsupported encodings or zero-length audio.
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"no such audio file: {path}")
    try:
        rate, data = wavfile.read(path)
    except FileNotFoundError:
        raise
    except Exception as exc:
        raise ValueError(f"unreadable WAV file {path}: {exc}") from exc

    if data.dtype in _PCM_SCALE:
        samples = data.astype(np.float64) / _PCM_SCALE[data.dtype]
    elif data.dtype in (np.float32, np.float64):
        samples = data.astype(np.float64)
    else:
        raise ValueError(
            f"unsupported WAV sample format {data.dtype} in {path}; "
            "expected 16-bit PCM, 32-bit PCM, or 32-bit float"
        )
    if samples.ndim == 2:
        samples = samples.mean(axis=1)
    if samples.size == 0:
        raise ValueError(f"zero-length audio in {path}")
    return AudioSignal(samples, int(rate))


def write_wav(signal: AudioSignal, path) -> None:
    """Write a signal as mono 32-bit IEEE float WAV.

    Samples outside [-1, 1] are written as-is (float PCM has no clamp).
    Raises ``ValueError`` for an empty signal and ``OSError`` for an
    unwritable path.
    """
    if len(signal) == 0:
        raise ValueError("refusing to write an empty signal")
    wavfile.write(path, signal.sample_rate, signal.samples.astype(np.float32))
