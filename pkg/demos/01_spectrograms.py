"""Gaussian-window spectrograms: compute, render, and round-trip to disk.

Builds two synthetic signals (a steady tone and a linear chirp), converts
each to a time-frequency magnitude matrix, renders the dB-scaled image,
and saves both the raw .spg matrix and a PNG. Run from the repository
root:

    python3 demos/01_spectrograms.py
"""

from pathlib import Path

import numpy as np

from audioaug import AudioSignal, DgtParams, dgt, load_spec, render, save_png, save_spec

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

RATE = 16000
t = np.arange(RATE) / RATE

# A 1 kHz tone occupies a single frequency row; the chirp sweeps 200 Hz -> 4 kHz.
tone = AudioSignal(0.5 * np.sin(2 * np.pi * 1000.0 * t), RATE)
chirp = AudioSignal(0.5 * np.sin(2 * np.pi * (200.0 + 1900.0 * t) * t), RATE)

params = DgtParams()  # hop 128, 512 channels, -60 dB Gaussian support
for name, signal in (("tone_1khz", tone), ("chirp", chirp)):
    spec = dgt(signal, params)
    print(f"{name}: {spec.rows} rows x {spec.cols} cols, "
          f"{spec.freq_resolution:.2f} Hz/row, {spec.time_resolution * 1e3:.1f} ms/col")

    peak_row = int(np.argmax(spec.magnitudes[:, spec.cols // 2]))
    print(f"  mid-frame peak at row {peak_row} ~= {peak_row * spec.freq_resolution:.0f} Hz")

    save_spec(spec, OUT / f"{name}.spg")
    save_png(render(spec, params), OUT / f"{name}.png")

    back = load_spec(OUT / f"{name}.spg")
    assert back.rows == spec.rows and back.cols == spec.cols
    print(f"  wrote {name}.spg (+ PNG) and read it back intact")

print(f"\nartifacts in {OUT}")
