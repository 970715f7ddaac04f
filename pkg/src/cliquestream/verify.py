"""Named verification suites behind the `verify` CLI subcommand.

Each suite re-checks one block of claims at desk scale and reports one line
per check.  Random-graph suites are seeded and fan out over a thread pool
(capped by CLIQUESTREAM_THREADS); work is chunked in fixed-size blocks with
per-block RNGs, so results do not depend on the worker count.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations

import numpy as np

from . import analysis
from .adversaries import run_mincc_game
from .graph import ArrivalEvent, OrderedGraph, mask_of
from .skeleton import AlwaysCollectStrategy, SkeletonGame, validate_cstar
from .solver import SolveBudget, brute_force_partition, max_clique_partition, min_cost_partition
from .strategies import GreedyStrategy, OnlineRun

SUITE_NAMES = ("profvalue", "table", "solver-oracle", "greedy-small", "skeleton-lemmas", "mincc-bound")


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(ok), detail))

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks],
        }


def worker_count() -> int:
    env = os.environ.get("CLIQUESTREAM_THREADS")
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


def _run_blocks(fn, blocks):
    """Run fn over blocks, in parallel when allowed; order-preserving."""
    workers = worker_count()
    if workers == 1 or len(blocks) <= 1:
        return [fn(b) for b in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, blocks))


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------

EDGE_PROBS = (0.2, 0.5, 0.8)


def random_graph_events(rng: random.Random, n: int, p: float) -> list[ArrivalEvent]:
    """Erdos-Renyi graph with a random arrival order."""
    adj = [[False] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < p:
                adj[a][b] = adj[b][a] = True
    order = list(range(n))
    rng.shuffle(order)
    events = []
    for t, label in enumerate(order):
        back = [s for s in range(t) if adj[order[s]][label]]
        events.append(ArrivalEvent(t, mask_of(back)))
    return events


def disjoint_clique_events(rng: random.Random, n: int) -> list[ArrivalEvent]:
    """Disjoint cliques (cost-0 optimum) in a random arrival order."""
    labels = list(range(n))
    rng.shuffle(labels)
    part_of = [0] * n
    i, part = 0, 0
    while i < n:
        size = rng.randint(1, 4)
        for label in labels[i : i + size]:
            part_of[label] = part
        i += size
        part += 1
    order = list(range(n))
    rng.shuffle(order)
    events = []
    for t, label in enumerate(order):
        back = [s for s in range(t) if part_of[order[s]] == part_of[label]]
        events.append(ArrivalEvent(t, mask_of(back)))
    return events


def _greedy_final_profit(events, nonprocrastinate=False) -> int:
    run = OnlineRun(GreedyStrategy(nonprocrastinate=nonprocrastinate))
    for ev in events:
        run.step(ev)
    return run.clustering.profit()


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def suite_profvalue(a_max: int = 60, grid: int = 1000) -> SuiteReport:
    rep = SuiteReport("profvalue")
    a = np.arange(a_max + 1)[:, None, None]
    b = np.arange(a_max + 1)[None, :, None]
    x = np.linspace(1.0 / grid, 1.0, grid)[None, None, :]
    f = (b - a * x) ** 2 + a * x * (2 - x) - b
    rep.add(
        f"gap non-negative on [0,{a_max}]^2 x {grid}-point grid",
        float(f.min()) >= -1e-9,
        f"min={f.min():.3e}",
    )
    # stationary-value identities of the quadratic, for a,b >= 2
    av = np.arange(2, a_max + 1)[:, None].astype(float)
    bv = np.arange(2, a_max + 1)[None, :].astype(float)
    at_one = (bv - av) ** 2 + av - bv  # F(a,b,1)
    rep.add("F(a,b,1) = (b-a)^2 - (b-a)", bool(np.allclose(at_one, (bv - av) ** 2 - (bv - av))))
    x0 = (bv - 1) / (av - 1)  # the quadratic's vertex; identity holds for all a,b >= 2
    fx0 = (bv - av * x0) ** 2 + av * x0 * (2 - x0) - bv
    expected = (av - bv) * (bv - 1) / (av - 1)
    rep.add("F at the quadratic's minimum matches (a-b)(b-1)/(a-1)",
            bool(np.allclose(fx0, expected)))
    return rep


# Published phase table for gamma=(3+sqrt(13))/2: cumulative-profit ranges and
# per-phase absolute-ratio bounds, j = 0..8.
TABLE_S_MIN = (1, 5, 16, 53, 172, 566, 1864, 6152, 20311)
TABLE_S_MAX = (1, 7, 23, 68, 202, 623, 1972, 6352, 20679)
TABLE_RPRIME = (1.000, 10.000, 13.185, 18.636, 21.881, 22.641, 21.516, 19.925, 18.509)


def suite_table(max_phase: int = 30) -> SuiteReport:
    rep = SuiteReport("table")
    rows = analysis.recurrence_table(analysis.GAMMA_STAR, analysis.X_STAR, max_phase)
    rep.add("S_min cells j=0..8", tuple(r.s_min for r in rows[:9]) == TABLE_S_MIN,
            str([r.s_min for r in rows[:9]]))
    rep.add("S_max cells j=0..8", tuple(r.s_max for r in rows[:9]) == TABLE_S_MAX,
            str([r.s_max for r in rows[:9]]))
    worst_cell = max(abs(r.rprime - t) for r, t in zip(rows[:9], TABLE_RPRIME))
    rep.add("ratio cells j=0..8 within 0.001", worst_cell <= 1e-3, f"max dev {worst_cell:.5f}")
    mx = max(rows, key=lambda r: r.rprime)
    rep.add("global maximum 22.641 at j=5", mx.j == 5 and abs(mx.rprime - 22.641) <= 1e-3,
            f"j={mx.j} value={mx.rprime:.4f}")
    alpha, beta, limit = analysis.tail_bound(analysis.GAMMA_STAR, analysis.X_STAR, 8)
    rep.add("tail contraction alpha<3/5, beta<8", alpha < 0.6 and beta < 8,
            f"alpha={alpha:.4f} beta={beta:.4f} fixed point={limit:.3f}")
    rhat = TABLE_RPRIME[8]
    tail_ok = True
    for j in range(9, max_phase + 1):
        rhat = 0.6 * rhat + 8
        tail_ok = tail_ok and rhat <= 20
    rep.add(f"linearized tail <= 20 for 9 <= j <= {max_phase}", tail_ok, f"final {rhat:.4f}")
    rep.add("direct recurrence <= 20 for j >= 9", all(r.rprime <= 20 for r in rows[9:]))
    r_star = analysis.asymptotic_ratio(analysis.GAMMA_STAR, analysis.X_STAR)
    rep.add("asymptotic ratio 15.6455 at tuned parameters", abs(r_star - 15.6455) <= 1e-3,
            f"{r_star:.5f}")
    r_alt = analysis.asymptotic_ratio(*analysis.PRESETS["absolute"])
    rep.add("asymptotic ratio 15.902 at absolute preset", abs(r_alt - 15.902) <= 1e-3,
            f"{r_alt:.5f}")
    return rep


def _all_graphs(n: int):
    """Every labeled graph on n vertices, as event lists."""
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        back = [0] * n
        for i, (a, b) in enumerate(pairs):
            if code >> i & 1:
                back[b] |= 1 << a
        yield [ArrivalEvent(v, back[v]) for v in range(n)]


def suite_solver_oracle(nmax: int = 9, samples: int = 10_000, seed: int = 20240) -> SuiteReport:
    rep = SuiteReport("solver-oracle")
    budget = SolveBudget()
    mismatches = 0
    total = 0
    for n in range(1, 7):
        for events in _all_graphs(n):
            g = OrderedGraph.from_events(events)
            total += 1
            if brute_force_partition(g).value != max_clique_partition(g, budget).value:
                mismatches += 1
    rep.add(f"exhaustive n<=6 ({total} graphs)", mismatches == 0, f"{mismatches} mismatches")

    block = 250
    blocks = [(seed + i, min(block, samples - i * block)) for i in range((samples + block - 1) // block)]

    def run_block(arg):
        bseed, count = arg
        rng = random.Random(bseed)
        bad = 0
        for _ in range(count):
            n = rng.randint(4, nmax)
            p = rng.choice(EDGE_PROBS)
            g = OrderedGraph.from_events(random_graph_events(rng, n, p))
            if brute_force_partition(g).value != max_clique_partition(g, budget).value:
                bad += 1
        return bad

    bad = sum(_run_blocks(run_block, blocks))
    rep.add(f"random n<={nmax} ({samples} graphs)", bad == 0, f"{bad} mismatches")
    return rep


def suite_greedy_small(samples: int = 10_000, seed: int = 20241) -> SuiteReport:
    rep = SuiteReport("greedy-small")
    bad = 0
    total = 0
    for n in range(1, 4):
        for events in _all_graphs(n):
            base = OrderedGraph.from_events(events)
            for order in permutations(range(n)):
                reordered = [
                    ArrivalEvent(t, mask_of(s for s in range(t) if base.has_edge(order[s], order[t])))
                    for t in range(n)
                ]
                total += 1
                g = OrderedGraph.from_events(reordered)
                if _greedy_final_profit(reordered) != brute_force_partition(g).value:
                    bad += 1
    rep.add(f"greedy optimal for n<=3, all graphs x orders ({total})", bad == 0, f"{bad} failures")

    budget = SolveBudget()
    block = 250
    blocks = [(seed + i, min(block, samples - i * block)) for i in range((samples + block - 1) // block)]

    def run_block(arg):
        bseed, count = arg
        rng = random.Random(bseed)
        violations = 0
        zero_gdy_nonzero_opt = 0
        for _ in range(count):
            n = rng.randint(4, 12)
            p = rng.choice(EDGE_PROBS)
            events = random_graph_events(rng, n, p)
            gdy = _greedy_final_profit(events)
            opt = max_clique_partition(OrderedGraph.from_events(events), budget).value
            if gdy > 0:
                if opt > (n // 2) * gdy:
                    violations += 1
            elif opt > 0:
                zero_gdy_nonzero_opt += 1
        return violations, zero_gdy_nonzero_opt

    results = _run_blocks(run_block, blocks)
    violations = sum(r[0] for r in results)
    degenerate = sum(r[1] for r in results)
    rep.add(f"opt <= floor(n/2)*greedy on {samples} random graphs", violations == 0,
            f"{violations} violations")
    rep.add("greedy profit 0 only on edgeless graphs", degenerate == 0, f"{degenerate} cases")
    return rep


def suite_skeleton_lemmas(depths=(2, 3, 4)) -> SuiteReport:
    rep = SuiteReport("skeleton-lemmas")
    for depth in depths:
        rounds = 3 * 2**depth  # tail cap only needs to be comfortably past the core
        for make in (GreedyStrategy, AlwaysCollectStrategy):
            strategy = make()
            label = f"D={depth} vs {strategy.name}"
            game = SkeletonGame(strategy, depth, max_rounds=rounds, check_lemmas=True)
            try:
                report = game.play()
                validate_cstar(game.tree)
            except AssertionError as exc:
                rep.add(label, False, str(exc))
                continue
            floor6 = 6 - (report.epsilon or 0.0)
            ok = report.ratio.as_float() >= floor6 - 1e-9
            tight = [
                s
                for s in report.subtrees
                if not s.shallow and s.core_depth == 0 and s.tentacle_length in (1, 2)
            ]
            tight_ok = bool(tight) and all(
                s.profit + 2 * s.tentacle_length == 6 * s.collected for s in tight
            )
            rep.add(label, ok and tight_ok,
                    f"ratio={report.ratio.decimal()} >= 6-eps={floor6:.3f}; "
                    f"{len(tight)} tight tentacle bases; reference partition valid")
    return rep


def suite_mincc_bound(n_lo: int = 5, n_hi: int = 50, samples: int = 10_000, seed: int = 20242) -> SuiteReport:
    rep = SuiteReport("mincc-bound")
    off = []
    for n in range(n_lo, n_hi + 1):
        _, trace = run_mincc_game(lambda: GreedyStrategy(nonprocrastinate=True), 0, n)
        final = trace.final_ratio()
        if final.is_infinite or final.as_fraction() != n - 2:
            off.append(n)
    rep.add(f"nemesis ratio exactly n-2 for n in [{n_lo},{n_hi}]", not off, f"off at {off}")

    budget = SolveBudget()
    block = 250
    blocks = [(seed + i, min(block, samples - i * block)) for i in range((samples + block - 1) // block)]

    def run_block(arg):
        bseed, count = arg
        rng = random.Random(bseed)
        violations = 0
        nonzero = 0
        for _ in range(count):
            n = rng.randint(4, 9)
            p = rng.choice(EDGE_PROBS)
            events = random_graph_events(rng, n, p)
            g = OrderedGraph.from_events(events)
            opt_cost = min_cost_partition(g, budget).value
            gdy_cost = g.edge_count - _greedy_final_profit(events, nonprocrastinate=True)
            if opt_cost >= 1:
                nonzero += 1
                if gdy_cost > (n - 2) * opt_cost:
                    violations += 1
            elif gdy_cost != 0:
                violations += 1
        return violations, nonzero

    results = _run_blocks(run_block, blocks)
    violations = sum(r[0] for r in results)
    nonzero = sum(r[1] for r in results)
    rep.add(f"cost_GDY <= (n-2)*cost_OPT on {samples} random graphs", violations == 0,
            f"{violations} violations; {nonzero} had positive optimum cost")

    def clique_block(arg):
        bseed, count = arg
        rng = random.Random(bseed)
        bad = 0
        for _ in range(count):
            n = rng.randint(4, 12)
            events = disjoint_clique_events(rng, n)
            g = OrderedGraph.from_events(events)
            if g.edge_count - _greedy_final_profit(events, nonprocrastinate=True) != 0:
                bad += 1
        return bad

    clique_samples = max(2000, samples // 5)
    blocks = [(seed + 10_000 + i, min(block, clique_samples - i * block))
              for i in range((clique_samples + block - 1) // block)]
    bad = sum(_run_blocks(clique_block, blocks))
    rep.add(f"zero cost on {clique_samples} disjoint-clique instances", bad == 0, f"{bad} failures")
    return rep


def run_suite(name: str, **kwargs) -> SuiteReport:
    suites = {
        "profvalue": suite_profvalue,
        "table": suite_table,
        "solver-oracle": suite_solver_oracle,
        "greedy-small": suite_greedy_small,
        "skeleton-lemmas": suite_skeleton_lemmas,
        "mincc-bound": suite_mincc_bound,
    }
    if name not in suites:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
    return suites[name](**kwargs)
