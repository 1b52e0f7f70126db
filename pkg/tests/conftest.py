"""Shared fixtures: tones, noisy clips, and a small on-disk corpus."""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from audioaug import AudioSignal, Manifest, ManifestEntry, write_wav

SR = 16000


def tone(freq_hz: float, seconds: float = 1.0, amplitude: float = 0.5, rate: int = SR) -> AudioSignal:
    t = np.arange(int(round(seconds * rate))) / rate
    return AudioSignal(amplitude * np.sin(2.0 * np.pi * freq_hz * t), rate)


def noisy_clip(seed: int, seconds: float = 0.5, rate: int = SR) -> AudioSignal:
    """Band-limited noise-like clip; every instance is non-silent and non-constant."""
    rng = np.random.default_rng(seed)
    n = int(round(seconds * rate))
    base = rng.normal(size=n)
    kernel = np.hanning(33)
    smooth = np.convolve(base, kernel / kernel.sum(), mode="same")
    return AudioSignal(0.3 * smooth / np.max(np.abs(smooth)), rate)


@pytest.fixture(scope="session")
def tone_440():
    return tone(440.0)


@pytest.fixture(scope="session")
def corpus(tmp_path_factory):
    """20 half-second WAV clips in 2 classes, with a manifest on disk."""
    root = tmp_path_factory.mktemp("corpus")
    rng = np.random.default_rng(12345)
    entries = []
    lines = ["sample_id,path,label"]
    for i in range(20):
        label = "bird" if i < 10 else "cat"
        t = np.arange(SR // 2) / SR
        freq = 350.0 + 37.0 * i
        samples = 0.4 * np.sin(2 * np.pi * freq * t) + 0.02 * rng.normal(size=SR // 2)
        path = root / f"clip{i:02d}.wav"
        write_wav(AudioSignal(samples, SR), path)
        entries.append(ManifestEntry(f"s{i:02d}", path, label))
        lines.append(f"s{i:02d},clip{i:02d}.wav,{label}")
    manifest_path = root / "manifest.csv"
    manifest_path.write_text("\n".join(lines) + "\n")
    return Manifest(tuple(entries)), manifest_path
