"""Covering codes for permutations under the l-infinity metric.

Core objects are the rotation code of degree n (exact covering radius,
deep holes, linear-time covering search), codes composed from block codes
on value ranges, relabeled and dihedral variants, counting bounds, and
brute-force oracles for all of it.
"""
from __future__ import annotations

__version__ = "0.1.0"

from . import bounds, composed, cyclic, oracle, perms, relabel  # noqa: F401
