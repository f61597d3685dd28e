"""Palindromic automorphisms of right-angled Artin groups.

Submodules: `graph` (defining graphs and domination), `words` (canonical
group words), `autos` (automorphisms, generators, predicates), `matrices`
(abelianisation and the level-2 machinery), `factor` (factorization
pipelines), `corpus` (seeded random suites), `cli` (command line).
"""

from .graph import SimplicialGraph, dominates, has_adjacent_domination
from .words import (GroupWord, word, parse_word, format_word, is_palindrome,
                    clique_palindromic_form, basic_form, rank_and_centralizer)
from .autos import (Automorphism, automorphism, identity, iota, compose,
                    apply, invert, predicates, split_diagram_pure,
                    parse_generators, generators_to_automorphism)
from .matrices import phi, phi2, relator_suite, block_decompose, factor_theta
from .factor import (FactorizationResult, SearchBudget, factor_any,
                     factor_pure_palindromic, factor_palindromic,
                     factor_centralizer_iota, factor_with_fixed,
                     factor_stabilizer_Y, factor_torelli_bfs, make_simple)

__all__ = [
    "SimplicialGraph", "dominates", "has_adjacent_domination",
    "GroupWord", "word", "parse_word", "format_word", "is_palindrome",
    "clique_palindromic_form", "basic_form", "rank_and_centralizer",
    "Automorphism", "automorphism", "identity", "iota", "compose", "apply",
    "invert", "predicates", "split_diagram_pure", "parse_generators",
    "generators_to_automorphism",
    "phi", "phi2", "relator_suite", "block_decompose", "factor_theta",
    "FactorizationResult", "SearchBudget", "factor_any",
    "factor_pure_palindromic", "factor_palindromic",
    "factor_centralizer_iota", "factor_with_fixed", "factor_stabilizer_Y",
    "factor_torelli_bfs", "make_simple",
]

__version__ = "0.1.0"
