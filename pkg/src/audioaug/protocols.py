"""Named augmentation protocols.

Five recipes tie the transform catalogue together: NoAUG (passthrough),
StandardIMG (random affine copies of rendered images), StandardSGN (ten
randomized signal chains), Signal (the eleven fixed signal transforms),
and Spectro (the six spectrogram transforms). :func:`apply_protocol`
dispatches on the protocol and always returns the original item at index 0
followed by the augmented copies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import AudioSignal, RngStream, db_to_amplitude, resample
from .dgt import Spectrogram
from .image_aug import standard_img_protocol
from .signal_aug import SIGNAL_PROTOCOL_NAMES, add_noise, gain, pitch_shift, signal_protocol
from .signal_aug import NoiseParams
from .spectro_aug import SPECTRO_PROTOCOL_NAMES, spectro_protocol

__all__ = [
    "Protocol",
    "PROTOCOL_NAMES",
    "CLI_PROTOCOL_NAMES",
    "std_signal_protocol",
    "apply_protocol",
    "protocol_transform_names",
]

PROTOCOL_NAMES = ("NoAUG", "StandardIMG", "StandardSGN", "Signal", "Spectro")

# Tokens accepted on the command line, mapped to canonical names.
CLI_PROTOCOL_NAMES = {
    "none": "NoAUG",
    "std-img": "StandardIMG",
    "std-sgn": "StandardSGN",
    "signal": "Signal",
    "spectro": "Spectro",
}

_DOMAIN = {
    "NoAUG": "any",
    "StandardIMG": "image",
    "StandardSGN": "signal",
    "Signal": "signal",
    "Spectro": "spectrogram",
}


@dataclass(frozen=True)
class Protocol:
    """A named augmentation recipe.

    ``copies`` applies to StandardIMG only (number of affine draws).
    """

    name: str
    copies: int = 10

    def __post_init__(self):
        if self.name not in PROTOCOL_NAMES:
            raise ValueError(f"unknown protocol {self.name!r}; expected one of {PROTOCOL_NAMES}")
        if self.copies < 1:
            raise ValueError(f"copies must be >= 1, got {self.copies}")

    @property
    def domain(self) -> str:
        """Kind of item the protocol operates on: signal, spectrogram, image, or any."""
        return _DOMAIN[self.name]

    @property
    def needs_classmate(self) -> bool:
        """True when the recipe contains a same-class mixing transform."""
        return self.name in ("Signal", "Spectro")

    @staticmethod
    def from_cli_name(token: str, copies: int = 10) -> "Protocol":
        if token not in CLI_PROTOCOL_NAMES:
            raise ValueError(
                f"unknown protocol {token!r}; expected one of {sorted(CLI_PROTOCOL_NAMES)}"
            )
        return Protocol(CLI_PROTOCOL_NAMES[token], copies=copies)


def std_signal_protocol(signal: AudioSignal, rng: RngStream) -> list[AudioSignal]:
    """Ten randomized variants of ``signal``.

    For each copy, five transforms each fire independently with probability
    0.5 and compose in this order: resample by a speed factor in [0.8, 1.2];
    pitch shift in [-2, 2] semitones; volume change in [-3, 3] dB; white
    noise at an SNR in [0, 10] dB; circular time shift in [-0.005, 0.005] s.
    Gates and parameters are always drawn, fired or not, so a copy's
    parameters do not depend on which earlier transforms fired.
    """
    outputs = []
    for i in range(10):
        stream = rng.spawn(f"copy{i}")
        fire = stream.random(5) < 0.5
        speed = float(stream.uniform(0.8, 1.2))
        semitones = float(stream.uniform(-2.0, 2.0))
        volume_db = float(stream.uniform(-3.0, 3.0))
        snr_db = float(stream.uniform(0.0, 10.0))
        shift_s = float(stream.uniform(-0.005, 0.005))

        out = signal
        if fire[0]:
            out = resample(out, speed)
        if fire[1]:
            out = pitch_shift(out, semitones)
        if fire[2]:
            out = gain(out, volume_db)
        if fire[3]:
            out = add_noise(out, NoiseParams(snr_db), rng=stream.spawn("noise"))
        if fire[4]:
            shift = int(round(shift_s * out.sample_rate))
            out = out.replace_samples(np.roll(out.samples, shift))
        outputs.append(out)
    return outputs


def protocol_transform_names(protocol: Protocol) -> tuple[str, ...]:
    """Names of the augmented outputs, in order, excluding the original."""
    if protocol.name == "NoAUG":
        return ()
    if protocol.name == "Signal":
        return SIGNAL_PROTOCOL_NAMES
    if protocol.name == "Spectro":
        return SPECTRO_PROTOCOL_NAMES
    if protocol.name == "StandardSGN":
        return tuple(f"chain{i}" for i in range(10))
    return tuple(f"affine{i}" for i in range(protocol.copies))


def apply_protocol(item, protocol: Protocol, pool: list | None, rng: RngStream) -> list:
    """Run ``protocol`` on one item; result is [original, *augmented].

    ``pool`` holds same-class partner items for the mixing transforms; the
    Signal and Spectro protocols pick one partner uniformly from it and
    reject an empty or missing pool. The item kind must match the
    protocol's domain (AudioSignal, Spectrogram, or 2-D uint8 image).
    """
    name = protocol.name
    if name == "NoAUG":
        return [item]
    if name in ("StandardSGN", "Signal") and not isinstance(item, AudioSignal):
        raise TypeError(f"{name} operates on AudioSignal, got {type(item).__name__}")
    if name == "Spectro" and not isinstance(item, Spectrogram):
        raise TypeError(f"{name} operates on Spectrogram, got {type(item).__name__}")
    if name == "StandardIMG" and not (isinstance(item, np.ndarray) and item.ndim == 2):
        raise TypeError(f"{name} operates on 2-D images, got {type(item).__name__}")

    if name == "StandardSGN":
        return [item, *std_signal_protocol(item, rng)]
    if name == "StandardIMG":
        return [item, *standard_img_protocol(item, protocol.copies, rng)]

    if not pool:
        raise ValueError(f"{name} requires a non-empty same-class pool for its mixing transforms")
    partner = pool[int(rng.spawn("partner").integers(0, len(pool)))]
    if name == "Signal":
        return [item, *signal_protocol(item, partner, rng)]
    return [item, *spectro_protocol(item, partner, rng)]
