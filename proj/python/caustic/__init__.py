"""Affine equidistants, Wigner caustics and centre symmetry sets of planar curves."""

from ._caustic import *  # noqa: F401,F403

__version__ = "0.1.0"
