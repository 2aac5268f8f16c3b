"""Exact quadratic exponential sums over Z_N, brute-force oracles, and
hardness tests for partition functions."""

from .cyclovalue import SymbolicValue, approx, equals, to_complex
from .gauss import gauss_sum
from .oracle import BudgetExceededError, CountVector, brute_counts, brute_partition, brute_value
from .polyring import Hypergraph, Multigraph, ParseError, QuadraticPoly, SparsePoly, parse_poly
from .solver import crt_split_eval, z_eval, z_mod2

__all__ = [
    "BudgetExceededError",
    "CountVector",
    "Hypergraph",
    "Multigraph",
    "ParseError",
    "QuadraticPoly",
    "SparsePoly",
    "SymbolicValue",
    "approx",
    "brute_counts",
    "brute_partition",
    "brute_value",
    "crt_split_eval",
    "equals",
    "gauss_sum",
    "parse_poly",
    "to_complex",
    "z_eval",
    "z_mod2",
]
