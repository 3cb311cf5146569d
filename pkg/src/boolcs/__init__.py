"""Boolean polynomial systems over F2 solved by the characteristic set method.

>>> from boolcs import PolySystem, BoolPoly, bcs
>>> s = PolySystem(2, [BoolPoly.parse("x1*x2 + 1", 2)])
>>> bcs(s).solution_count
1
"""

__version__ = "0.1.0"

from .poly import BoolPoly, TriangularSet
from .triset import ChooseStrategy, PolySystem, add_reduce, choose, decompose_step, simplify
from .solver import BranchOrder, SolveReport, SolverConfig, bcs, tree_stats
from .analysis import (
    Prediction,
    SolutionSet,
    brute_force_zeros,
    count_solutions,
    enumerate_solutions,
    predict,
    prem,
    verify_decomposition,
)
from .generators import (
    LfsrSpec,
    augment_with_negation,
    companion_matrix,
    gen_lfsr_filter,
    gen_matrix_ab,
    gen_matrix_ba,
    gen_random,
)
from .anf import AnfDocument, AnfError, format_anf, parse_anf

__all__ = [
    "BoolPoly",
    "TriangularSet",
    "PolySystem",
    "ChooseStrategy",
    "simplify",
    "add_reduce",
    "choose",
    "decompose_step",
    "BranchOrder",
    "SolverConfig",
    "SolveReport",
    "bcs",
    "tree_stats",
    "Prediction",
    "SolutionSet",
    "brute_force_zeros",
    "count_solutions",
    "enumerate_solutions",
    "predict",
    "prem",
    "verify_decomposition",
    "LfsrSpec",
    "augment_with_negation",
    "companion_matrix",
    "gen_lfsr_filter",
    "gen_matrix_ab",
    "gen_matrix_ba",
    "gen_random",
    "AnfDocument",
    "AnfError",
    "format_anf",
    "parse_anf",
]
