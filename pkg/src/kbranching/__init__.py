"""Packing and minimum-cost k-branchings, with discrete-convexity checks."""

from . import kernels
from .dca import (INF, BranchingSolution, DiscreteFunctionTable, ExchangeVerdict,
                  check_exchange_axiom, eval_fA, eval_fB, fb_solve, function_table,
                  mincost_k_arborescence, mincost_k_branching, verify_argmin_base_polyhedron)
from .errors import BudgetExceededError, InfeasibleError, InstanceError, KBranchingError, ParseError
from .feasibility import (DeficiencyReport, PackingInstance, constrained_deficiency_min,
                          g_value, is_packing_feasible, packing_deficiency, root_vector_feasible)
from .graph import (Arc, ArcSubset, Digraph, in_cut_count, in_degrees, is_branching,
                    is_k_arborescence, is_k_branching, root_vector)
from .matroid import (ForestPartition, IndependenceOracle, NashWilliamsWitness,
                      forest_union_matroid, free_matroid, graphic_matroid, head_partition_matroid,
                      partition_into_forests, weighted_matroid_intersection)
from .packing import (PackingCertificate, decompose_k_branching, pack_disjoint_branchings,
                      pack_k_branchings)
from .rootloc import OpeningCost, RootLocation, solve_root_location, solve_separable_k1

__version__ = "0.1.0"
