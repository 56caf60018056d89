"""Exact Kantorovich (1-Wasserstein) norms on finite weighted graphs."""

from .graph import (CapacityError, EnumerationOverflow, GraphError,
                    NotATreeError, RootedTree, WeightedGraph,
                    all_pairs_shortest_paths, articulation_split,
                    enumerate_spanning_trees, extend_forest_to_spanning_tree,
                    geodesic, is_close, root_tree, validate_metric)
from .measures import (Coupling, cumulative, cumulative_via_matrix,
                       push_forward, split_into_probabilities,
                       zero_mass_from_pair)
from .tree import (aligned_dual, barycenter, check_baba, extreme_lipschitz,
                   is_extreme_lipschitz, lipschitz_to_slopes, norm_gradient,
                   optimal_tree_coupling, signed_expansion,
                   slopes_to_lipschitz, tree_norm)
from .cuts import (CutFamily, adapt_realization, cut_distance, cut_norm,
                   cut_norm_via_potentials, cut_potential, cut_semimetric,
                   tree_cut_realization)
from .envelope import (QuotientMap, check_exactly_nonexpansive,
                       check_identification_conditions, cycle_norm,
                       decomposed_norm, envelope_norm, graph_norm,
                       quotient_norm)
from .oracle import (dual_tree_enumeration, kb_norm, primal_lp_distance,
                     verify_coupling)

__version__ = "0.1.0"
