"""All-pairs shortest-path distances via resolvent matrix inversion.

Build a graph (or generate one), pick a gain inside the feasibility window,
invert once, and read distances off the logarithm of the result; exact
oracles, greedy navigation, an analog-network solver, and experiment
harnesses round out the package.
"""

from .analog import AnalogNetwork, output_to_r_distance
from .graphs import (
    EdgeList,
    Graph,
    GraphKind,
    adjacency_indicator,
    edge_list_from_graph,
    gen_binary_tree,
    gen_grid,
    gen_hanoi,
    gen_power_law,
    gen_random_dense,
    gen_weighted_dense,
    graph_from_edge_list,
    infer_kind,
    read_edge_list,
    write_edge_list,
)
from .linalg import (
    PowerIterationResult,
    SingularMatrixError,
    lu_invert,
    mat_mul,
    power_iteration,
    spectral_radius,
)
from .navigation import (
    AccuracyReport,
    PathResult,
    accuracy_report,
    global_accuracy,
    greedy_descent,
    local_accuracy,
)
from .oracles import (
    PathCountOverflowError,
    bfs_apsp,
    dijkstra_apsp,
    floyd_warshall,
    graph_diameter,
    max_redundancy,
    path_counts,
)
from .resolvent import (
    DELTA_MIN,
    GammaBounds,
    HealthFlags,
    InfeasibleGammaError,
    ResolventResult,
    ResolventSingularError,
    build_x,
    communicability,
    critical_gain,
    gamma_bounds,
    precision_floor,
    r_distance,
    resolvent,
    rounded_r_distance,
    suggest_gamma,
)
from .experiments import (
    BenchRecord,
    CorrelationRecord,
    SweepRecord,
    bench_runtimes,
    build_family,
    default_gamma_grid,
    emit_csv,
    sweep_gamma,
    weighted_correlation,
)

__version__ = "0.1.0"
