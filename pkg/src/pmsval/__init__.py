"""Exact classification of pseudo monotone sequences in valued fields and
the induced valuation on the rational function field: dominating degrees,
sup/inf of the distance values, rank of the value group, and a brute-force
oracle over concrete p-adic and composite rational-function fields."""

from .engine import (DominatingForm, FactoredRationalFunction, TaggedRoot,
                     check_pcs_equivalence_iii, check_pds_equivalence_iii,
                     classify_alpha_position, delta_of_polynomial,
                     dominating_degree, extension_report, induced_configuration,
                     max_distance_check, monomial_value, pair_equality, v_e)
from .exact import ExactReal
from .groups import (AdjoinedSurd, Cyclic, FormalInteger, FullRational,
                     GroupDescriptor, INFINITY, NEG_INF, POS_INF,
                     PPowerDivisible, Value, compare)
from .oracle import (CompositeField, ConcreteRationalFunction, FitOutcome,
                     PadicRationals, QtElement, cross_check, fit_pattern,
                     padic_valuation, sequence_configuration)
from .ranktree import (Branch, LeafKind, RankResult, TreeTrace, auto_probes,
                       enumerate_leaves, rank_of_vE, theorem_rank_check,
                       tree_dot)
from .sequences import (Algebraic, BoundInGroup, BoundNotInGroup, ConstantFrom,
                        Direction, PmsDescriptor, PmsKind, StageChain,
                        Terminal, Transcendental, Tri, UltrametricConfiguration,
                        Unbounded, classify_from_prefix, diverges_to_infinity,
                        inf_of, is_cauchy, is_limit, limit_dichotomy_check,
                        mirror, sup_of)

__version__ = "0.1.0"
