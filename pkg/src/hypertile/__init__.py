"""Exact desk-scale combinatorics for k-uniform hypergraphs.

Tiling solvers, fractional relaxations with exact LP duality, Hamilton
l-cycle machinery with an absorbing pipeline, extremal constructions, and
brute-force certificates for the finite lemmas behind them.
"""

from .core import (ArityError, Hypergraph, HgParseError, Pattern,
                   complete_hypergraph, copies_of, degree, empty_hypergraph,
                   format_hg, induced, link, load_hg, min_d_degree, parse_hg,
                   random_hypergraph, save_hg)
from .constructions import (OutOfRangeError, ParameterError, SpaceBarrier,
                            ThresholdQuery, ThresholdResult,
                            clique_construction, covering_construction,
                            dirac_threshold, extremal_bound, space_barrier,
                            y_pattern, y_tiling_edge_threshold)
from .tiling import (GuardError, Placement, TilingReport, audit_triple_bounds,
                     classify_edges, derived_link_graph, max_f_tiling,
                     max_matching, max_ye_tiling, y_copies)
from .fractional import (CoverWeighting, RationalWeighting,
                         auxiliary_copy_hypergraph, cover_transfer,
                         max_fractional_f_tiling, max_fractional_matching,
                         min_fractional_cover, perfect_fractional_tiling_exists,
                         verify_transfer_cover)
from .hamilton import (AbsorberGadget, EllCycle, EllPath, absorb_pipeline,
                       color_partition, count_absorbing_paths,
                       exact_hamilton_ell_cycle, greedy_kpartite_path,
                       search_absorber_gadget, short_connect,
                       validate_ell_cycle, validate_ell_path,
                       verify_gadget_properties)
from .verifier import (sample_audit_fact64, sample_audit_ledger,
                       verify_fact_3partite, verify_fact_partite_matching,
                       verify_fact_two_disjoint_y, verify_master_inequality,
                       verify_tripartite_claims)

__version__ = "0.1.0"
