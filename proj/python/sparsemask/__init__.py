"""Lossless compression toolkit for sparse binary masks."""

from ._core import (
    bytes_per_mask_pixel,
    codecs,
    decode,
    encode,
    entropy,
    random_mask,
)

__all__ = [
    "bytes_per_mask_pixel",
    "codecs",
    "decode",
    "encode",
    "entropy",
    "random_mask",
]
