"""Exact enumeration and classification of independent sets of the 600-cell
skeleton up to its 14,400-element symmetry group."""

from .golden import GoldenInt, Quat, g_mul, inner4, quat_mul
from .model import Model, ModelError, build_vertices, verify_model

__all__ = [
    "GoldenInt",
    "Quat",
    "g_mul",
    "quat_mul",
    "inner4",
    "Model",
    "ModelError",
    "build_vertices",
    "verify_model",
]
