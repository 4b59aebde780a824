"""Exact moduli classes of genus-zero stable maps.

The package computes the virtual Poincare polynomials of the moduli spaces
of genus-zero stable maps to projective spaces (and to user-described
targets with free curve-class semigroup), exactly, in the variable u.  Two
independent routes are implemented and cross-checked coefficient by
coefficient: a closed-form solver built on the unique root of a functional
equation, and a brute-force sum over isomorphism classes of marked trees.
A further battery of exact identities (map-space degree recurrence,
finite-field point counts, the universal differential equation, the
derivative identity, the potential expansion, the Euler-characteristic
limit) ties every layer to an independent computation.
"""

from .qfield import (BigRat, LINE_CLASS, MOEBIUS_CLASS, RatFunc, UPoly,
                     binom_falling, div_exact, is_palindromic, upoly_gcd)
from .series import (Grading, MultiSeries, box_vectors, series_dt,
                     series_log1p, series_pow_binomial)
from .target import (TargetSpace, count_maps_bruteforce, eisenstein_series,
                     load_target, nclass, parse_target, point_target,
                     projective_space, target_from_json, verify_recurrence)
from .trees import (MarkedTree, Tree, WeightedMarking, enum_marked,
                    enum_trees, stratum_class, tree_code, tree_sum_potential,
                    vertex_bound)
from .solver import (ClassTable, SolverResult, extract_classes, potential,
                     solve, solve_phi0, verify_dt, verify_implicit_numeric,
                     verify_ode, verify_potential_expansion)
from .eulerchi import (ChiSeries, chi_potential, chi_table, crosscheck_chi,
                       is_constant_series, solve_phi0_chi, xseries)

__version__ = "0.1.0"

__all__ = [
    "BigRat", "LINE_CLASS", "MOEBIUS_CLASS", "RatFunc", "UPoly",
    "binom_falling", "div_exact", "is_palindromic", "upoly_gcd",
    "Grading", "MultiSeries", "box_vectors", "series_dt", "series_log1p",
    "series_pow_binomial",
    "TargetSpace", "count_maps_bruteforce", "eisenstein_series", "load_target",
    "nclass", "parse_target", "point_target", "projective_space",
    "target_from_json", "verify_recurrence",
    "MarkedTree", "Tree", "WeightedMarking", "enum_marked", "enum_trees",
    "stratum_class", "tree_code", "tree_sum_potential", "vertex_bound",
    "ClassTable", "SolverResult", "extract_classes", "potential", "solve",
    "solve_phi0", "verify_dt", "verify_implicit_numeric", "verify_ode",
    "verify_potential_expansion",
    "ChiSeries", "chi_potential", "chi_table", "crosscheck_chi",
    "is_constant_series", "solve_phi0_chi", "xseries",
]
