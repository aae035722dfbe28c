"""Exact continued-fraction tails for Ramanujan-type series.

Subpackages:

* ``cfkit.exact``: rationals, sparse polynomials, rational functions, linear algebra
* ``cfkit.cfrac``: continued-fraction specs, evaluation and transforms
* ``cfkit.mc``: correction functions for first-order difference equations
* ``cfkit.catalog``: seven worked series with verification routines

The hot recurrence runs in a compiled extension when available;
set ``CFKIT_PURE_PYTHON=1`` to force the Python fallback.
"""
from .kernel import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
