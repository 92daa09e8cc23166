"""Uncertain segment cover: exact instances, hardness reductions, solvers and
approximation tools over rational intervals."""

from .core import Interval, Pick, ScInstance, UncertainSegment, decompose_cells, is_cover, uncovered_gaps
from .cnf import CnfFormula, parse_dimacs, preprocess_for_reduction, validate_djpsy_form, write_dimacs
from .equivalence import check_contiguity, contiguous_sat_to_sc, sc_to_contiguous_sat
from .reduce3sat import reduce_3sat_to_sc
from .allequal import assert_all_equal, bcu_from_allequal, bcu_solve, reduce_djpsy_to_allequal
from .approx import (amplification_factor, amplify, approx_max_sc, contiguous_value, gap_instance_from_e3sat,
                     greedy_maxsat, max_sc_value, repair_and_extract, sc_to_weighted_maxsat)
from .solver import COVERABLE, UNCOVERABLE, LimitExceededError, count_covers, solve_brute, solve_dpll
from .visibility import Scene, fully_blockable, project

__version__ = "0.1.0"
