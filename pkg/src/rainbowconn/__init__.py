"""Rainbow connectivity toolkit for edge-colored graphs.

Verifiers for rainbow and strong rainbow connectivity, 3-Occurrence 3-SAT
gadget reductions, and graph-class recognizers with certificates.
"""

from ._kernels import BACKEND
from .errors import CnfError, GraphError, GuardError, WitnessError
from .graph import (
    EdgeColoredGraph,
    PathWitness,
    ShortestPathDag,
    biconnected_components,
    bfs_distances,
    count_shortest_paths,
    diameter,
    dumps_graph,
    enumerate_shortest_paths,
    load_graph,
    read_graph,
    save_graph,
    shortest_path_dag,
    write_graph,
)
from .reductions import (
    Reduction,
    build,
    build_base,
    build_cubic,
    build_interval_block,
    build_interval_outerplanar,
    build_k_regular,
    literal_chord_color,
)
from .sat import (
    CnfFormula,
    brute_force_sat,
    literal_positions,
    pad_to_min_clauses,
    parse_dimacs,
    validate_occurrence,
)
from .verify import (
    Verdict,
    rainbow_path_between,
    rainbow_reach_fpt,
    rc_verify,
    src_verify_enumerate,
    src_verify_fpt,
    src_verify_geodetic,
    src_verify_kgeodetic,
    strong_rainbow_path_between,
)

__version__ = "0.1.0"
