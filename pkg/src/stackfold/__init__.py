"""Maximum stacking-pair RNA folding: exact, greedy and reduction tools."""
from ._backend import NAME as BACKEND
from .core import (MIN_PAIR_SEPARATION, BasePair, Census, RnaSequence, SecondaryStructure,
                   SequenceError, StackRun, StructureError, census, conjugate,
                   count_stacking_pairs, format_pair_list, is_watson_crick, parse_pair_list,
                   parse_sequence, runs_to_structure)
from .greedy import GreedyConfig, GreedyResult, find_run, greedy_fold
from .nested import NestedResult, dp_tables, max_stacking_pairs_nested, traceback
from .oracle import OracleLimitError, OracleMode, OracleResult, exact_optimum
from .planarity import (CrossingGraph, Page, crossing_graph, has_interleaving_block,
                        is_planar_stacked, layer_assignment, page_assignment,
                        stacking_substructure)
from .reduction import (GadgetParams, Matching, ReductionLayout, TripartiteInstance,
                        build_witness, delta, delta_bar, encode_instance, expected_census,
                        fact2_bound, pi, pi_bar, verify_matching)

__version__ = "0.1.0"
