"""Static lower-bound instances: the greedy nemesis, the doubling-strategy
nemesis (plain matching batches and the triangle variant), and the min-cost
nemesis, which is adaptive in a single decision.

Each generator also carries a reference clustering and per-step values of the
profit (or cost) that clustering achieves on every prefix.  The reference
values are lower bounds on the true optimum, exact at the structural points
the ratio arguments use, and cheap enough to score instances with millions of
edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .graph import ArrivalEvent, Clustering, OrderedGraph
from .trace import MAX, MIN, RatioTrace
from .strategies import OnlineRun, run_online


@dataclass
class StaticInstance:
    name: str
    objective: str
    events: list[ArrivalEvent]
    analytic_opt: list[int] | None = None  # per-step profit (max) or cost (min)
    reference_clusters: tuple[frozenset[int], ...] | None = None
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.events)

    def final_opt(self) -> int | None:
        return self.analytic_opt[-1] if self.analytic_opt else None

    def graph(self) -> OrderedGraph:
        return OrderedGraph.from_events(self.events)

    def check_reference(self) -> None:
        """Validate the reference clustering and its claimed final value."""
        if self.reference_clusters is None:
            return
        g = self.graph()
        cl = Clustering.from_sets(g, self.reference_clusters)
        value = cl.profit() if self.objective == MAX else cl.cost(g)
        if self.analytic_opt is not None and value != self.analytic_opt[-1]:
            raise AssertionError(
                f"{self.name}: reference clustering scores {value}, "
                f"analytic value says {self.analytic_opt[-1]}"
            )


def _reference_profit_steps(clusters, n: int) -> list[int]:
    """Per-prefix profit of a clustering restricted to the first t vertices."""
    of_vertex = {}
    for i, c in enumerate(clusters):
        for v in c:
            of_vertex[v] = i
    grown = [0] * len(clusters)
    out = []
    profit = 0
    for v in range(n):
        i = of_vertex.get(v)
        if i is not None:
            profit += grown[i]
            grown[i] += 1
        out.append(profit)
    return out


def greedy_nemesis(n: int) -> StaticInstance:
    """Two hidden parity cliques plus a perfect-matching decoy.

    Vertices of the same parity form cliques; additionally arrival 2i-1 is
    matched to arrival 2i (1-based) for i up to floor((n-1)/2), which baits the
    greedy strategy into clustering consecutive pairs.
    """
    if n < 4:
        raise ValueError("greedy nemesis needs n >= 4")
    pairs = (n - 1) // 2  # matching edges (0,1), (2,3), ...
    events = []
    parity_mask = [0, 0]
    for v in range(n):
        back = parity_mask[v % 2]
        if v % 2 == 1 and v // 2 < pairs:
            back |= 1 << (v - 1)
        events.append(ArrivalEvent(v, back))
        parity_mask[v % 2] |= 1 << v
    evens = frozenset(range(0, n, 2))
    odds = frozenset(range(1, n, 2))
    inst = StaticInstance(
        name=f"greedy-nemesis(n={n})",
        objective=MAX,
        events=events,
        reference_clusters=(evens, odds),
        meta={"pairs": pairs},
    )
    inst.analytic_opt = _reference_profit_steps(inst.reference_clusters, n)
    return inst


def occ_nemesis(gamma: float, phases: int, variant: str = "plain") -> StaticInstance:
    """Batch construction against the doubling strategy.

    Batch i (i = 0..phases) carries ceil(gamma^i) internal edges on fresh
    vertices: a perfect matching, except that in the triangle variant the last
    batch packs them into floor(m/3) triangles plus leftover matching edges.
    All pairs from different batches are adjacent (cross edges).  Unit
    vertices arrive consecutively, so the strategy's trigger fires exactly at
    each batch end.  The reference clustering joins the p-th unit of every
    batch into one clique.
    """
    if gamma <= 1:
        raise ValueError("gamma must exceed 1")
    if phases < 1:
        raise ValueError("need at least one phase")
    if variant not in ("plain", "triangle"):
        raise ValueError(f"unknown variant {variant!r}")
    m = [math.ceil(gamma**i) for i in range(phases + 1)]
    events: list[ArrivalEvent] = []
    units_per_batch: list[list[list[int]]] = []
    batch_ends = []
    v = 0
    for i, mi in enumerate(m):
        batch_start_mask = (1 << v) - 1  # earlier batches are exactly 0..v-1
        if variant == "triangle" and i == phases:
            sizes = [3] * (mi // 3) + [2] * (mi - 3 * (mi // 3))
        else:
            sizes = [2] * mi
        units = []
        for size in sizes:
            unit = list(range(v, v + size))
            unit_mask = 0
            for u in unit:
                events.append(ArrivalEvent(u, batch_start_mask | unit_mask))
                unit_mask |= 1 << u
            units.append(unit)
            v += size
        units_per_batch.append(units)
        batch_ends.append(v)  # 1-based step index of the batch's last arrival
    width = max(len(us) for us in units_per_batch)
    clusters = []
    for p in range(width):
        members: list[int] = []
        for units in units_per_batch:
            if p < len(units):
                members.extend(units[p])
        clusters.append(frozenset(members))
    inst = StaticInstance(
        name=f"occ-nemesis(gamma={gamma:g}, phases={phases}, {variant})",
        objective=MAX,
        events=events,
        reference_clusters=tuple(clusters),
        meta={"batch_edges": m, "batch_ends": batch_ends, "variant": variant},
    )
    inst.analytic_opt = _reference_profit_steps(inst.reference_clusters, v)
    return inst


def mincc_nemesis(beta: int, n: int, collected_pair: int | None) -> StaticInstance:
    """Matching prefix, then a near-spanning clique grown around one matched vertex.

    The first 2*beta+2 arrivals form beta+1 disjoint edges.  `collected_pair`
    (1-based pair index) is the adversary's one adaptive decision: the pair the
    observed strategy clustered.  The remaining arrivals form a clique of size
    n-2*beta-1 together with that pair's second vertex, so every edge from it
    to the newcomers is lost for the strategy while the optimum pays a single
    non-cluster edge.  With `collected_pair=None` (strategy clustered no pair)
    the instance stops after the matching.
    """
    if beta < 0:
        raise ValueError("beta must be non-negative")
    if n <= 3 * beta + 2:
        raise ValueError("need n > 3*beta + 2")
    prefix = 2 * beta + 2
    events = [ArrivalEvent(v, (1 << (v - 1)) if v % 2 == 1 else 0) for v in range(prefix)]
    pair_sets = [frozenset({2 * i, 2 * i + 1}) for i in range(beta + 1)]
    if collected_pair is None:
        inst = StaticInstance(
            name=f"mincc-nemesis(beta={beta}, n={n}, early stop)",
            objective=MIN,
            events=events,
            analytic_opt=[0] * prefix,
            reference_clusters=tuple(pair_sets),
            meta={"beta": beta, "collected_pair": None},
        )
        return inst
    if not 1 <= collected_pair <= beta + 1:
        raise ValueError("collected pair index out of range")
    anchor = 2 * collected_pair - 1  # second vertex of the chosen pair
    for v in range(prefix, n):
        back = (1 << anchor) | ((1 << v) - (1 << prefix))
        events.append(ArrivalEvent(v, back))
    clique = frozenset({anchor} | set(range(prefix, n)))
    clusters = [clique]
    for i, p in enumerate(pair_sets):
        if i == collected_pair - 1:
            clusters.append(frozenset({anchor - 1}))
        else:
            clusters.append(p)
    # prefix steps are fully clusterable; afterwards exactly one edge (the
    # chosen pair) can never sit inside a cluster
    analytic = [0] * prefix + [1] * (n - prefix)
    return StaticInstance(
        name=f"mincc-nemesis(beta={beta}, n={n}, pair={collected_pair})",
        objective=MIN,
        events=events,
        analytic_opt=analytic,
        reference_clusters=tuple(clusters),
        meta={"beta": beta, "collected_pair": collected_pair},
    )


def run_mincc_game(strategy_factory, beta: int, n: int) -> tuple[StaticInstance, RatioTrace]:
    """Play the adaptive min-cost game against a deterministic strategy.

    Runs the strategy on the matching prefix, picks the lowest-index pair it
    clustered (or stops early if none), then replays the full instance from
    scratch and scores it against the analytic per-step optimum.
    """
    probe = mincc_nemesis(beta, n, 1)
    prefix = 2 * beta + 2
    run = OnlineRun(strategy_factory())
    for ev in probe.events[:prefix]:
        run.step(ev)
    chosen = None
    for i in range(beta + 1):
        if run.clustering.co_clustered(2 * i, 2 * i + 1):
            chosen = i + 1
            break
    inst = mincc_nemesis(beta, n, chosen)
    trace = run_online(
        strategy_factory(),
        inst.events,
        objective=MIN,
        opt_mode="analytic",
        analytic_opt=inst.analytic_opt,
    )
    return inst, trace
