"""Raw-audio augmentation transforms.

Ten pure transforms over :class:`~audioaug.core.AudioSignal`, plus
:func:`signal_protocol` which applies all of them in a fixed order.
Randomized transforms take an explicit :class:`~audioaug.core.RngStream`
so every output is reproducible from (input, parameters, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import AudioSignal, RngStream, db_to_amplitude, resample, rms

__all__ = [
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
]


@dataclass(frozen=True)
class WowParams:
    """Sinusoidal time-warp parameters: depth ``a_m`` and rate ``f_m`` (Hz)."""

    a_m: float = 3.0
    f_m: float = 2.0

    def __post_init__(self):
        if self.a_m < 0:
            raise ValueError(f"modulation depth a_m must be >= 0, got {self.a_m}")
        if not self.f_m > 0:
            raise ValueError(f"modulation frequency f_m must be > 0, got {self.f_m}")


@dataclass(frozen=True)
class NoiseParams:
    """Target signal-to-noise ratio in dB for :func:`add_noise`."""

    snr_db: float = 10.0

    def __post_init__(self):
        if not math.isfinite(self.snr_db):
            raise ValueError("snr_db must be finite")


@dataclass(frozen=True)
class DrcCurve:
    """Single-knee compression curve: slope 1 below ``threshold_db``, 1/``ratio`` above."""

    threshold_db: float = -20.0
    ratio: float = 4.0

    def __post_init__(self):
        if self.ratio < 1:
            raise ValueError(f"compression ratio must be >= 1, got {self.ratio}")


def wow_resample(signal: AudioSignal, params: WowParams = WowParams()) -> AudioSignal:
    """Read the signal along the warped time axis F(x) = x + a_m*sin(2*pi*f_m*x)/(2*pi*f_m).

    Output sample n is the input linearly interpolated at F(n/rate), with the
    warped time clamped to the signal's extent, so the length never changes.
    The instantaneous playback rate is F'(x) = 1 + a_m*cos(2*pi*f_m*x); depths
    above 1 make F non-monotonic, which simply plays short stretches backwards.
    """
    if len(signal) == 0:
        raise ValueError("cannot warp an empty signal")
    t = np.arange(len(signal), dtype=np.float64) / signal.sample_rate
    two_pi_fm = 2.0 * math.pi * params.f_m
    warped = t + params.a_m * np.sin(two_pi_fm * t) / two_pi_fm
    warped = np.clip(warped, 0.0, t[-1])
    return signal.replace_samples(np.interp(warped, t, signal.samples))


def add_noise(
    signal: AudioSignal, params: NoiseParams = NoiseParams(), rng: RngStream | None = None
) -> AudioSignal:
    """Add white Gaussian noise at exactly the requested SNR.

    The drawn noise is rescaled so its rms is rms(signal) * 10^(-snr_db/20),
    making the realized ratio exact rather than an expectation. Silent input
    is rejected because the ratio is undefined.
    """
    if rng is None:
        raise ValueError("add_noise requires an RngStream")
    signal_rms = rms(signal)
    if signal_rms == 0:
        raise ValueError("cannot set a signal-to-noise ratio on silent input")
    noise = rng.normal(size=len(signal))
    noise_rms = math.sqrt(float(np.mean(noise**2)))
    noise *= signal_rms * db_to_amplitude(-params.snr_db) / noise_rms
    return signal.replace_samples(signal.samples + noise)


def _nearest_rank_percentile(values: np.ndarray, percent: float) -> float:
    """Nearest-rank percentile: the ceil(p*n)-th smallest value."""
    order = np.sort(values)
    rank = max(1, math.ceil(percent / 100.0 * order.size))
    return float(order[rank - 1])


def clip(signal: AudioSignal) -> AudioSignal:
    """Rescale so 10% of samples land outside [-1, 1], then clamp those to sign(x).

    The scale is the 90th percentile (nearest rank) of the absolute samples.
    Constant signals, and signals whose 90th percentile magnitude is zero,
    leave the scale degenerate and are rejected.
    """
    if len(signal) == 0:
        raise ValueError("cannot clip an empty signal")
    samples = signal.samples
    if np.all(samples == samples[0]):
        raise ValueError("cannot clip a constant signal")
    q = _nearest_rank_percentile(np.abs(samples), 90.0)
    if q == 0:
        raise ValueError("90th percentile magnitude is zero; clipping scale undefined")
    scaled = samples / q
    return signal.replace_samples(np.where(np.abs(scaled) > 1.0, np.sign(scaled), scaled))


def speed_up(signal: AudioSignal, percent: float) -> AudioSignal:
    """Play faster by ``percent`` percent; shortens the signal and raises its pitch."""
    if not percent > -100.0:
        raise ValueError(f"speed change must be > -100%, got {percent}")
    return resample(signal, 1.0 + percent / 100.0)


def harmonic_distortion(signal: AudioSignal) -> AudioSignal:
    """Apply v -> sin(2*pi*v) five times per sample; output stays in [-1, 1]."""
    out = signal.samples
    for _ in range(5):
        out = np.sin(2.0 * math.pi * out)
    return signal.replace_samples(out)


def gain(signal: AudioSignal, db: float) -> AudioSignal:
    """Scale amplitude by 10^(db/20). No clamping is applied."""
    return signal.replace_samples(signal.samples * db_to_amplitude(db))


def rand_time_shift(
    signal: AudioSignal, split: int | None = None, rng: RngStream | None = None
) -> AudioSignal:
    """Break the signal at ``split`` and swap the two parts.

    ``split`` is drawn uniformly from [0, length] when not supplied. The
    output is a circular shift, so the multiset of samples is unchanged.
    """
    n = len(signal)
    if split is None:
        if rng is None:
            raise ValueError("rand_time_shift requires an RngStream when split is not given")
        split = int(rng.integers(0, n + 1))
    if not 0 <= split <= n:
        raise ValueError(f"split must be in [0, {n}], got {split}")
    return signal.replace_samples(np.concatenate([signal.samples[split:], signal.samples[:split]]))


def sound_mix(signal: AudioSignal, other: AudioSignal) -> AudioSignal:
    """Sum two signals, zero-padding the shorter one.

    The sum is divided by its peak only when the peak exceeds 1, so mixing
    with silence is an identity. Both inputs must share a sample rate.
    """
    if signal.sample_rate != other.sample_rate:
        raise ValueError(
            f"cannot mix signals at {signal.sample_rate} Hz and {other.sample_rate} Hz"
        )
    n = max(len(signal), len(other))
    out = np.zeros(n, dtype=np.float64)
    out[: len(signal)] += signal.samples
    out[: len(other)] += other.samples
    peak = np.max(np.abs(out), initial=0.0)
    if peak > 1.0:
        out /= peak
    return signal.replace_samples(out)


def drc(signal: AudioSignal, curve: DrcCurve = DrcCurve()) -> AudioSignal:
    """Static dynamic-range compression applied per sample in the dB domain.

    Levels above the threshold are pulled toward it by the ratio:
    L' = threshold + (L - threshold)/ratio. Levels below pass through, so
    quiet content is boosted relative to loud content after any makeup gain.
    """
    eps = 1e-10
    magnitude = np.abs(signal.samples)
    level = 20.0 * np.log10(magnitude + eps)
    compressed = np.where(
        level < curve.threshold_db,
        level,
        curve.threshold_db + (level - curve.threshold_db) / curve.ratio,
    )
    return signal.replace_samples(np.sign(signal.samples) * 10.0 ** (compressed / 20.0))


def _periodic_hann(length: int) -> np.ndarray:
    return 0.5 - 0.5 * np.cos(2.0 * math.pi * np.arange(length) / length)


def _stretch_to_length(samples: np.ndarray, n_out: int, sample_rate: int) -> np.ndarray:
    """Time-stretch ``samples`` to ``n_out`` samples without changing pitch.

    Waveform-similarity overlap-add: 50 ms grains are taken near each
    nominal read position but snapped (within half a hop) to the lag that
    best continues the previously written grain, then Hann-overlap-added at
    a 25 ms synthesis hop.
    """
    n_in = samples.size
    if n_in == 0 or n_out == 0:
        return np.zeros(n_out, dtype=np.float64)
    win_len = max(4, int(round(0.050 * sample_rate)) & ~1)
    hop = win_len // 2
    tolerance = hop // 2
    window = _periodic_hann(win_len)

    # Read positions are scaled by the compression ratio; pad so every
    # grain and every correlation search stays in bounds.
    pad = win_len + tolerance + hop
    padded = np.concatenate([np.zeros(pad), samples, np.zeros(pad + win_len)])
    rate = n_in / n_out

    out = np.zeros(n_out + win_len, dtype=np.float64)
    norm = np.zeros(n_out + win_len, dtype=np.float64)
    prev_continuation: np.ndarray | None = None
    for write_pos in range(0, n_out, hop):
        nominal = int(round(write_pos * rate)) + pad
        if prev_continuation is None or tolerance == 0:
            start = nominal
        else:
            region = padded[nominal - tolerance : nominal + tolerance + win_len]
            scores = np.correlate(region, prev_continuation, mode="valid")
            start = nominal - tolerance + int(np.argmax(scores))
        grain = padded[start : start + win_len]
        out[write_pos : write_pos + win_len] += grain * window
        norm[write_pos : write_pos + win_len] += window
        prev_continuation = padded[start + hop : start + hop + win_len]
    return out[:n_out] / np.maximum(norm[:n_out], 1e-12)


def pitch_shift(signal: AudioSignal, semitones: float) -> AudioSignal:
    """Shift pitch by ``semitones`` while keeping the duration.

    Resamples by r = 2^(semitones/12), which scales both pitch and duration,
    then time-stretches back to the original sample count.
    """
    if semitones == 0:
        return signal
    ratio = 2.0 ** (semitones / 12.0)
    shifted = resample(signal, ratio)
    stretched = _stretch_to_length(shifted.samples, len(signal), signal.sample_rate)
    return signal.replace_samples(stretched)


SIGNAL_PROTOCOL_NAMES = (
    "wow",
    "noise",
    "clip",
    "speed_up",
    "harmonic_distortion",
    "gain",
    "rand_time_shift",
    "sound_mix",
    "drc",
    "pitch_shift_up",
    "pitch_shift_down",
)


def signal_protocol(
    signal: AudioSignal, classmate: AudioSignal, rng: RngStream
) -> list[AudioSignal]:
    """Produce the 11 augmented versions of ``signal``, in a fixed order.

    The order matches :data:`SIGNAL_PROTOCOL_NAMES`: wow, 10 dB noise, clip,
    15% speed-up, harmonic distortion, 10 dB gain, random time shift, mix
    with ``classmate`` (expected to share the class label), compression, and
    pitch shifts of +2 and -2 semitones. Randomized steps draw from streams
    spawned off ``rng``, so equal seeds give equal outputs. Errors from a
    constituent transform are re-raised with the transform's name attached.
    """
    steps = (
        ("wow", lambda: wow_resample(signal)),
        ("noise", lambda: add_noise(signal, rng=rng.spawn("noise"))),
        ("clip", lambda: clip(signal)),
        ("speed_up", lambda: speed_up(signal, 15.0)),
        ("harmonic_distortion", lambda: harmonic_distortion(signal)),
        ("gain", lambda: gain(signal, 10.0)),
        ("rand_time_shift", lambda: rand_time_shift(signal, rng=rng.spawn("time_shift"))),
        ("sound_mix", lambda: sound_mix(signal, classmate)),
        ("drc", lambda: drc(signal)),
        ("pitch_shift_up", lambda: pitch_shift(signal, 2.0)),
        ("pitch_shift_down", lambda: pitch_shift(signal, -2.0)),
    )
    outputs = []
    for name, step in steps:
        try:
            outputs.append(step())
        except ValueError as exc:
            raise ValueError(f"{name}: {exc}") from exc
    return outputs
