"""Finite generation of reflection centralizers in Coxeter groups.

Given a Coxeter system and a generator ``x``, decide whether the subgroup
generated by the reflections commuting with ``x`` is finitely generated,
enumerate its canonical generators and their Coxeter matrix, and
cross-check everything against a brute-force root-system oracle.
"""
from .coxeter import INF, CoxeterMatrix, odd_component, odd_graph, outer_sets
from .decider import Verdict, corollary_check, decide, infinite_witness_family
from .errors import (CoxperpError, InconsistencyError, InputError, LimitExceeded, ParseError,
                     PreconditionError)
from .fileformat import parse, render
from .perp import enumerate_generators, minimal_closed_move_sequence, presentation

__all__ = [
    "INF", "CoxeterMatrix", "odd_component", "odd_graph", "outer_sets",
    "Verdict", "corollary_check", "decide", "infinite_witness_family",
    "CoxperpError", "InconsistencyError", "InputError", "LimitExceeded", "ParseError", "PreconditionError",
    "parse", "render", "enumerate_generators", "minimal_closed_move_sequence", "presentation",
]
