"""Entropy and structure of subshifts perturbed by forbidding allowed words.

Engines compute exact generating functions and Perron values for single- and
multi-word perturbations of SFTs, sofic shifts, and gap shifts; every closed
form is cross-checked against automaton-based language counts before a
number is returned.
"""

from .automata import (DFA, DirectedGraph, LabeledGraph, avoid_product_presentation,
                       count_words, determinize, edge_shift_graph, enumerate_words,
                       essential, extension_closed, full_shift_graph, is_irreducible,
                       label_preimages, lang_dfa, perron_root, walk_counts,
                       word_endpoints)
from .conjugacy import (SwapCode, SwapConflictError, apply_swap, swap_admissible,
                        verify_conjugacy)
from .escape import (Point, alpha_entry, alpha_matrix, escape_rate,
                     fullshift_resolvent, lambda_sequence, local_rate,
                     point_relation)
from .perturb import (OracleMismatchError, PerturbationResult, UnsupportedWordError,
                      check_structure, cross_correlation_poly, decay_profile,
                      dgap_perturb_entropy, sft_entropy_single, sft_multi_gf,
                      sgap_perturb_gf, sofic_perturb)
from .ratpoly import (Poly, RatFunc, char_poly, cofactor, largest_real_pole,
                      largest_real_root, poly_gcd, polymatrix_solve,
                      series_expand)
from .spaces import GapSet, normalize_word, sgap_entropy_base
from .words import correlate, correlation_poly, is_prime

__version__ = "0.1.0"

__all__ = [
    "DFA", "DirectedGraph", "GapSet", "LabeledGraph", "OracleMismatchError",
    "PerturbationResult", "Point", "Poly", "RatFunc", "SwapCode",
    "SwapConflictError", "UnsupportedWordError", "alpha_entry", "alpha_matrix",
    "apply_swap", "avoid_product_presentation", "char_poly", "check_structure",
    "cofactor", "correlate", "correlation_poly", "count_words",
    "cross_correlation_poly", "decay_profile", "determinize",
    "dgap_perturb_entropy", "edge_shift_graph", "enumerate_words", "escape_rate",
    "essential", "extension_closed", "full_shift_graph", "fullshift_resolvent",
    "is_irreducible", "is_prime", "label_preimages", "lambda_sequence",
    "lang_dfa", "largest_real_pole", "largest_real_root", "local_rate",
    "normalize_word", "perron_root", "point_relation", "poly_gcd",
    "polymatrix_solve", "series_expand", "sft_entropy_single", "sft_multi_gf",
    "sgap_entropy_base", "sgap_perturb_gf", "sofic_perturb", "swap_admissible",
    "verify_conjugacy", "walk_counts", "word_endpoints",
]
