"""Generative-model toolkit for tactile patterns on a simulated 3x6 skin
patch: a column-masked Deep Boltzmann Machine with PCD training, feedforward
decoding, Dice-based evaluation, and homeostatic bias adaptation."""

__version__ = "0.1.0"

from .backends import available_backends, kernels
from .connectivity import build_mask
from .metrics import dice, performance_q
from .model import DbmParams, RbmParams
from .patterns import Dataset, blank, make_triangle_dataset

__all__ = [
    "available_backends",
    "kernels",
    "build_mask",
    "dice",
    "performance_q",
    "DbmParams",
    "RbmParams",
    "Dataset",
    "blank",
    "make_triangle_dataset",
    "__version__",
]
