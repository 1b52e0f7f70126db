"""Generic affine augmentation for rendered spectrogram images.

Images are 2-D uint8 grayscale matrices. The one transform here composes
random reflections, scaling, rotation, and translation into a single
affine map (bilinear sampling, zero fill), which is how the StandardIMG
protocol perturbs training images.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from PIL import Image
from scipy import ndimage

from .core import RngStream

__all__ = [
    "AffineAugParams",
    "affine_warp",
    "random_affine",
    "standard_img_protocol",
    "load_png",
]


@dataclass(frozen=True)
class AffineAugParams:
    """Draw ranges for :func:`random_affine`.

    Reflections fire independently with the given probabilities; the scale
    factors (one per axis), rotation angle, and translation offsets (pixels,
    one per axis) are drawn uniformly from their ranges.
    """

    p_reflect_x: float = 0.5
    p_reflect_y: float = 0.5
    scale_range: tuple[float, float] = (1.0, 2.0)
    rotation_range_deg: tuple[float, float] = (-10.0, 10.0)
    translation_range_px: tuple[float, float] = (0.0, 5.0)

    def __post_init__(self):
        for name in ("p_reflect_x", "p_reflect_y"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be a probability, got {p}")
        for name in ("scale_range", "rotation_range_deg", "translation_range_px"):
            lo, hi = getattr(self, name)
            if not lo <= hi:
                raise ValueError(f"{name} must be ordered, got ({lo}, {hi})")
        if self.scale_range[0] <= 0:
            raise ValueError("scale factors must be positive")


def affine_warp(image: np.ndarray, forward: np.ndarray, shift: np.ndarray) -> np.ndarray:
    """Apply the forward map p -> forward @ (p - center) + center + shift.

    ``forward`` is a 2x2 matrix and ``shift`` a 2-vector, both in (row, col)
    coordinates. Bilinear sampling, zero fill, output dimensions preserved.
    """
    if image.ndim != 2 or image.size == 0:
        raise ValueError(f"expected a non-empty 2-D image, got shape {image.shape}")
    center = (np.asarray(image.shape, dtype=np.float64) - 1.0) / 2.0
    # ndimage pulls input coordinates from output ones, so pass the inverse.
    inverse = np.linalg.inv(forward)
    offset = center - inverse @ (center + np.asarray(shift, dtype=np.float64))
    return ndimage.affine_transform(image, inverse, offset=offset, order=1, cval=0)


def random_affine(
    image: np.ndarray, params: AffineAugParams = AffineAugParams(), rng: RngStream | None = None
) -> np.ndarray:
    """Random affine perturbation of a grayscale image.

    Composes, in order: optional left-right and top-bottom reflections,
    per-axis scaling, rotation, then translation. Reflection, scaling and
    rotation are anchored at the image center. Sampling is bilinear with
    out-of-bounds pixels filled with 0; output dimensions equal input.

    The draw order is fixed (reflect-x gate, reflect-y gate, x scale,
    y scale, angle, x offset, y offset) and every value is drawn even when
    its transform is disabled, so streams stay aligned across parameter
    choices.
    """
    if rng is None:
        raise ValueError("random_affine requires an RngStream")

    reflect_x = rng.random() < params.p_reflect_x
    reflect_y = rng.random() < params.p_reflect_y
    scale_x = float(rng.uniform(*params.scale_range))
    scale_y = float(rng.uniform(*params.scale_range))
    angle = math.radians(float(rng.uniform(*params.rotation_range_deg)))
    shift_x = float(rng.uniform(*params.translation_range_px))
    shift_y = float(rng.uniform(*params.translation_range_px))

    flip = np.diag([-1.0 if reflect_y else 1.0, -1.0 if reflect_x else 1.0])
    scale = np.diag([scale_y, scale_x])
    cos_a, sin_a = math.cos(angle), math.sin(angle)
    rot = np.array([[cos_a, -sin_a], [sin_a, cos_a]])
    return affine_warp(image, rot @ scale @ flip, np.array([shift_y, shift_x]))


def standard_img_protocol(
    image: np.ndarray, copies: int = 10, rng: RngStream | None = None
) -> list[np.ndarray]:
    """``copies`` independent :func:`random_affine` draws of ``image``."""
    if copies < 1:
        raise ValueError(f"copies must be >= 1, got {copies}")
    if rng is None:
        raise ValueError("standard_img_protocol requires an RngStream")
    return [random_affine(image, rng=rng.spawn(f"copy{i}")) for i in range(copies)]


def load_png(path) -> np.ndarray:
    """Read an image file as a 2-D uint8 grayscale matrix."""
    with Image.open(path) as img:
        return np.asarray(img.convert("L"), dtype=np.uint8)
