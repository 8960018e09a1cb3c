"""Entanglement diagnostics for bipartite qudit states.

Conditional entropies, fully entangled fraction, threshold theorems relating
them, k-copy steering and nonlocality thresholds, and work-extraction bounds.
"""

from .bounds import BoundReport
from .entropy import EntropyKind, cond_entropy
from .fef import FefResult, fef_closed, fef_corr_tensor, fef_optimize
from .states import DensityMatrix, StateError, StateSpec, make_state

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "DensityMatrix",
    "EntropyKind",
    "FefResult",
    "StateError",
    "StateSpec",
    "cond_entropy",
    "fef_closed",
    "fef_corr_tensor",
    "fef_optimize",
    "make_state",
]
