"""Online strategies and the replay runner.

A strategy reacts to one arrival at a time through `OnlineRun`: the runner
creates the mandatory singleton cluster for the new vertex, then the strategy
issues zero or more merges via `run.merge`.  Merges are validated against the
graph, so a strategy can never produce a non-clique cluster, and clusters are
never split.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .graph import ArrivalEvent, Clustering, OrderedGraph, validate_clustering
from .solver import DEFAULT_BUDGET, SolveBudget, max_clique_partition
from .trace import MAX, MIN, RatioTrace, TraceStep, step_ratio

# gamma = (3+sqrt(13))/2 and x = (5-sqrt(13))/2, to 12 decimal digits
GAMMA_STAR = 3.302775637732
X_STAR = 0.697224362268

# (gamma, x) pairs: the asymptotically optimal pair and the pair tuned for the
# best absolute ratio
PRESETS = {
    "asymptotic": (GAMMA_STAR, X_STAR),
    "absolute": (4.02323428, 0.823889),
}


@dataclass(frozen=True)
class SingletonOp:
    vertex: int


@dataclass(frozen=True)
class MergeOp:
    c1: int
    c2: int


class OnlineRun:
    """Owns the revealed graph and the strategy's clustering during one run."""

    def __init__(self, strategy, validate: bool = False):
        self.strategy = strategy
        self.graph = OrderedGraph()
        self.clustering = Clustering()
        self.validate = validate
        self.history: list[list] = []
        self._ops: list = []

    def merge(self, c1: int, c2: int) -> int:
        cid = self.clustering.merge(self.graph, c1, c2)
        self._ops.append(MergeOp(c1, c2))
        return cid

    def step(self, ev: ArrivalEvent) -> list:
        self.graph.add_vertex(ev)
        self._ops = [SingletonOp(ev.vertex)]
        self.clustering.singleton(ev.vertex)
        self.strategy.respond(self, ev)
        if self.validate:
            validate_clustering(self.graph, self.clustering, require_cover=True)
        self.history.append(self._ops)
        return self._ops


def oldest_cluster(candidates: list[int]) -> int:
    """Tie-break among equal-size candidates: smallest creation order (= id)."""
    if not candidates:
        raise ValueError("no candidate clusters")
    return min(candidates)


def _compatible_neighbor_clusters(run: OnlineRun, v: int) -> list[int]:
    """Clusters whose union with {v} induces a clique.  Any such cluster
    consists of neighbors of v only, so scanning v's neighbors finds them all."""
    cl = run.clustering
    adj = run.graph.adjacency_mask(v)
    own = cl.cluster_of(v)
    out = []
    seen = {own}
    for u in run.graph.neighbors(v):
        cid = cl.cluster_of(u)
        if cid in seen:
            continue
        seen.add(cid)
        if not cl.members_mask(cid) & ~adj:
            out.append(cid)
    return out


class GreedyStrategy:
    """Merge each arriving vertex into the largest compatible cluster.

    With `nonprocrastinate` set, afterwards keep merging mergeable cluster
    pairs (largest combined size first) until none remain; this is the variant
    used for the min objective.
    """

    def __init__(self, nonprocrastinate: bool = False):
        self.nonprocrastinate = nonprocrastinate

    @property
    def name(self) -> str:
        return "greedy-np" if self.nonprocrastinate else "greedy"

    def respond(self, run: OnlineRun, ev: ArrivalEvent) -> None:
        cl = run.clustering
        v = ev.vertex
        candidates = _compatible_neighbor_clusters(run, v)
        if candidates:
            top = max(cl.size(c) for c in candidates)
            target = oldest_cluster([c for c in candidates if cl.size(c) == top])
            run.merge(cl.cluster_of(v), target)
        if self.nonprocrastinate:
            self._merge_exhaustively(run, cl.cluster_of(v))

    def _merge_exhaustively(self, run: OnlineRun, cur: int) -> None:
        # New mergeable pairs can only involve the arriving vertex's cluster:
        # edges elsewhere did not change and no pair was mergeable before.
        cl = run.clustering
        while True:
            common = -1
            for u in cl.members(cur):
                common &= run.graph.adjacency_mask(u)
            partners = [
                cid
                for cid in cl.cluster_ids()
                if cid != cur and not cl.members_mask(cid) & ~common
            ]
            if not partners:
                return
            top = max(cl.size(c) for c in partners)
            best = oldest_cluster([c for c in partners if cl.size(c) == top])
            cur = run.merge(cur, best)


@dataclass
class PhaseState:
    """Doubling-phase bookkeeping: phase index, singleton pool, trigger threshold."""

    gamma: float
    j: int = 0
    U: set[int] = field(default_factory=set)

    @property
    def threshold(self) -> int:
        # profits are integral, so the real trigger gamma^j is the integer ceil
        return math.ceil(self.gamma**self.j)


@dataclass(frozen=True)
class PhaseCommit:
    j: int
    step: int  # 1-based arrival index at which the phase committed
    delta: int  # profit committed at the end of the phase
    threshold: int


class OCCStrategy:
    """Phase-based strategy: pool arrivals as singletons, and as soon as the
    pool admits a clustering of profit at least gamma^j, commit that optimal
    clustering's non-singleton cliques and start phase j+1.

    The trigger is checked after every arrival by solving the subgraph induced
    by the singleton pool exactly.  Committed cliques from different phases
    are never merged (commits only ever touch current singletons).
    """

    def __init__(self, gamma: float = GAMMA_STAR, budget: SolveBudget = DEFAULT_BUDGET):
        if gamma <= 1:
            raise ValueError("gamma must exceed 1")
        self.state = PhaseState(gamma=gamma)
        self.budget = budget
        self.phase_log: list[PhaseCommit] = []

    @property
    def name(self) -> str:
        return "occ"

    def respond(self, run: OnlineRun, ev: ArrivalEvent) -> None:
        st = self.state
        st.U.add(ev.vertex)
        best = max_clique_partition(run.graph, self.budget, vertices=sorted(st.U))
        if best.value < st.threshold:
            return
        cl = run.clustering
        for clique in best.clusters:
            if len(clique) < 2:
                continue  # singleton clusters stay in the pool
            members = sorted(clique)
            cur = cl.cluster_of(members[0])
            for u in members[1:]:
                cur = run.merge(cur, cl.cluster_of(u))
            st.U.difference_update(clique)
        self.phase_log.append(PhaseCommit(st.j, ev.vertex + 1, best.value, st.threshold))
        st.j += 1


class StrategyRegistry:
    names = ("greedy", "greedy-np", "occ")

    @staticmethod
    def make(name: str, gamma: float = GAMMA_STAR, budget: SolveBudget = DEFAULT_BUDGET):
        if name == "greedy":
            return GreedyStrategy()
        if name == "greedy-np":
            return GreedyStrategy(nonprocrastinate=True)
        if name == "occ":
            return OCCStrategy(gamma=gamma, budget=budget)
        raise ValueError(f"unknown strategy {name!r}")


def run_online(
    strategy,
    events: list[ArrivalEvent],
    objective: str = MAX,
    opt_mode: str = "exact",
    budget: SolveBudget = DEFAULT_BUDGET,
    analytic_opt: list[int] | None = None,
    validate: bool = False,
) -> RatioTrace:
    """Replay a strategy against an instance, recording per-step values.

    In exact mode the offline optimum of every prefix graph is solved; in
    analytic mode the caller supplies one optimum value per step (profit for
    the max objective, cost for the min objective).
    """
    if objective not in (MAX, MIN):
        raise ValueError(f"unknown objective {objective!r}")
    if opt_mode == "analytic":
        if analytic_opt is None or len(analytic_opt) != len(events):
            raise ValueError("analytic mode needs one optimum value per step")
    elif opt_mode != "exact":
        raise ValueError(f"unknown opt mode {opt_mode!r}")
    run = OnlineRun(strategy, validate=validate)
    steps = []
    for t, ev in enumerate(events, start=1):
        run.step(ev)
        profit = run.clustering.profit()
        edges = run.graph.edge_count
        if opt_mode == "exact":
            opt_profit = max_clique_partition(run.graph, budget).value
            opt_value = opt_profit if objective == MAX else edges - opt_profit
        else:
            opt_value = analytic_opt[t - 1]
        strat_value = profit if objective == MAX else edges - profit
        steps.append(TraceStep(t, strat_value, opt_value, step_ratio(strat_value, opt_value, objective)))
    return RatioTrace(objective, steps)
