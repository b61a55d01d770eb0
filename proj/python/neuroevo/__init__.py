"""Deterministic neuroevolution driving simulator.

Thin wrapper re-exporting the compiled core. All simulation, evolution and
track machinery lives in the C++ extension module.
"""

from ._neuroevo import *  # noqa: F401,F403

__all__ = [name for name in dir() if not name.startswith("_")]
