"""Finite-stage construction of a transitive, faithful action of the double
``F2 *_<c> F2`` with exact Folner certificates."""

from .amalgam import AlternatingForm, AmalgamWord, act, faithfulness_report, to_alternating
from .autos import FreeAutomorphism, NielsenMove, specialize
from .engine import ConstructionState, Requirement, new_state, replay, run
from .graphs import LabeledGraph, build_ff_graph, cycle_graph, fold, path_graph
from .perm import PartialInjection
from .words import Word, are_conjugate, cyclically_reduce, free_reduce, power_of

__all__ = [
    "AlternatingForm", "AmalgamWord", "ConstructionState", "FreeAutomorphism",
    "LabeledGraph", "NielsenMove", "PartialInjection", "Requirement", "Word",
    "act", "are_conjugate", "build_ff_graph", "cycle_graph", "cyclically_reduce",
    "faithfulness_report", "fold", "free_reduce", "new_state", "path_graph",
    "power_of", "replay", "run", "specialize", "to_alternating",
]
