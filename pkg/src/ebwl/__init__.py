"""Edge-based Weisfeiler-Leman refinement, triangle tables, and friends."""

from .ebgnn import EbgnnParams, forward, gnn_distinguish, init_params
from .graph import (Graph, GraphError, circulant, complete, cycle, disjoint_union,
                    figure2_pair, figure3_pair, format_edge_list, parse_edge_list, path,
                    random_graph, random_regular, read_edge_list, star, two_triangles,
                    write_edge_list)
from .homcount import (PatternPEO, brute_force_hom_count, edge_in_k_triangles,
                       find_peo_tw2, hom_count, hom_count_peo)
from .refinement import (RefinementTrace, Verdict, distinguish, fingerprint, refine,
                         run_1wl, run_2wl, run_eb1wl, run_nc1wl)
from .triangles import (DegeneracyInfo, TriangleStore, degeneracy_order,
                        edge_triangle_profile, enumerate_triangles, triangle_stats)

__version__ = "0.1.0"
