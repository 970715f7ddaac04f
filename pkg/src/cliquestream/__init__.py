"""Workbench for online clique clustering.

Online strategies (greedy and the doubling strategy), an exact offline
optimum, adversarial instance generators, the phase-recurrence analysis, and
a CLI harness tying them together.
"""

from .graph import (
    ArrivalEvent,
    Clustering,
    ClusteringError,
    GraphError,
    InstanceFormatError,
    OrderedGraph,
    event,
    format_instance,
    mask_of,
    parse_instance,
    read_instance,
    validate_clustering,
    write_instance,
)
from .solver import (
    ComponentTooLargeError,
    OptimalResult,
    SolveBudget,
    brute_force_partition,
    max_clique_partition,
    min_cost_partition,
)
from .strategies import (
    GAMMA_STAR,
    PRESETS,
    X_STAR,
    GreedyStrategy,
    OCCStrategy,
    OnlineRun,
    PhaseCommit,
    PhaseState,
    StrategyRegistry,
    run_online,
)
from .trace import MAX, MIN, ExactRatio, RatioTrace, TraceStep, step_ratio
from .adversaries import (
    StaticInstance,
    greedy_nemesis,
    mincc_nemesis,
    occ_nemesis,
    run_mincc_game,
)
from .skeleton import (
    AdversaryReport,
    AlwaysCollectStrategy,
    SkeletonGame,
    SkeletonTree,
    cstar_partition,
    cstar_profit,
    run_skeleton_game,
    skeleton_to_graph,
    subtree_report,
    validate_cstar,
)
from . import analysis, kernels

__version__ = "0.1.0"
