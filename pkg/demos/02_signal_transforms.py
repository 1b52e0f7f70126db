"""Waveform-domain transforms, each verified by a measurable effect.

Every transform is applied to a 440 Hz tone (or a noise bed where that is
more illustrative) and the printout shows the property that changed:
dominant frequency, length, SNR, or saturation fraction.

    python3 demos/02_signal_transforms.py
"""

import numpy as np

from audioaug import (
    AudioSignal,
    DrcCurve,
    NoiseParams,
    RngStream,
    WowParams,
    add_noise,
    clip,
    drc,
    gain,
    harmonic_distortion,
    pitch_shift,
    rand_time_shift,
    sound_mix,
    speed_up,
    wow_resample,
)

RATE = 16000
t = np.arange(RATE) / RATE
tone = AudioSignal(0.5 * np.sin(2 * np.pi * 440.0 * t), RATE)


def peak_hz(signal: AudioSignal) -> float:
    spectrum = np.abs(np.fft.rfft(signal.samples * np.hanning(len(signal)), n=8 * len(signal)))
    return float(np.argmax(spectrum)) * signal.sample_rate / (8 * len(signal))


print(f"input: 440 Hz tone, {len(tone)} samples at {RATE} Hz\n")

for semitones in (2.0, -2.0):
    shifted = pitch_shift(tone, semitones)
    print(f"pitch_shift {semitones:+.0f} st: {peak_hz(shifted):7.1f} Hz, "
          f"length {len(shifted)} (unchanged)")

faster = speed_up(tone, 15.0)
print(f"speed_up 15%:        {peak_hz(faster):7.1f} Hz, length {len(faster)} (shorter)")

wowed = wow_resample(tone, WowParams(a_m=3.0, f_m=2.0))
print(f"wow_resample:        peak wanders around {peak_hz(wowed):.1f} Hz, length {len(wowed)}")

noisy = add_noise(tone, NoiseParams(snr_db=10.0), RngStream(0))
residual = noisy.samples - tone.samples
snr = 10 * np.log10(np.mean(tone.samples**2) / np.mean(residual**2))
print(f"add_noise:           realized SNR {snr:.2f} dB (requested 10)")

clipped = clip(tone)
saturated = float(np.mean(np.abs(clipped.samples) >= 1.0))
print(f"clip:                {saturated:.1%} of samples saturated (target 10%)")

louder = gain(tone, -3.0)
print(f"gain -3 dB:          peak amplitude {np.max(np.abs(louder.samples)):.4f} "
      f"(was {np.max(np.abs(tone.samples)):.4f})")

distorted = harmonic_distortion(tone)
print(f"harmonic_distortion: dominant component now {peak_hz(distorted):.1f} Hz")

rolled = rand_time_shift(tone, rng=RngStream(1))
same_multiset = bool(np.allclose(np.sort(rolled.samples), np.sort(tone.samples)))
print(f"rand_time_shift:     sample multiset preserved: {same_multiset}")

partner = AudioSignal(0.4 * np.sin(2 * np.pi * 660.0 * t), RATE)
mixed = sound_mix(tone, partner)
print(f"sound_mix:           peak {np.max(np.abs(mixed.samples)):.3f} (normalized to <= 1)")

compressed = drc(tone, DrcCurve(threshold_db=-20.0, ratio=4.0))
print(f"drc 4:1 @ -20 dB:    peak {np.max(np.abs(compressed.samples)):.4f} "
      f"(loud part attenuated)")
