"""Exact-arithmetic toolkit for comparing information in zero-sum games.

Core objects are finite information structures (common priors over states
and private signals), payoff structures (state-indexed matrix games), and
garblings (row-stochastic signal maps).  Everything numeric is a
fractions.Fraction; all solvers and checks are exact.  All public functions
are pure and every type is immutable by convention, so computations can be
freely parallelized.
"""

from .beliefs import (HierarchyDistribution, TypePartition, belief_partition,
                      hierarchy_distribution, hierarchy_equal)
from .chains import (ChainSpec, NicenessVerdict, UiReport, build_g0,
                     build_g_p, build_u_l, check_ui, default_epsilon,
                     doubly_uniform_chain, event_e_check, hoeffding_experiment,
                     niceness, sample_chain, truthful_payoff_bound,
                     ui_formula_crosscheck, verify_separation, y_statistics)
from .distance import (OrderCertificate, blackwell_compare_1p, compare,
                       one_sided_deviation, transfer_strategy, value_distance,
                       witness_payoff)
from .errors import (BudgetError, ConsistencyError, InfodistError,
                     StructureError)
from .game import (BehaviorStrategy, bayesian_value, best_response_value,
                   decision_value, matrix_game_value)
from .lp import (LinearProgram, Optimal, Infeasible, Unbounded, Rational,
                 dual_objective, lp_solve, verify_farkas)
from .structures import (Garbling, InfoStructure, PayoffStructure,
                         canonicalize, garble_p1, garble_p2, l1_distance,
                         scalar_product, strategy_payoff)
from .weak import PayoffEnumeration, enumerate_payoff, weak_distance

__version__ = "0.1.0"
