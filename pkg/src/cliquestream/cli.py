"""Command-line harness.

Subcommands: simulate (strategy vs instance, writes ratio traces), nemesis
(emit an instance file), opt (offline optimum of an instance file), skeleton
(adaptive adversary game), table / formula (analysis numbers), verify (named
check suites).

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 solver budget
exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analysis, verify
from .adversaries import greedy_nemesis, occ_nemesis, run_mincc_game
from .graph import OrderedGraph, read_instance, write_instance
from .skeleton import AlwaysCollectStrategy, run_skeleton_game
from .solver import ComponentTooLargeError, SolveBudget, max_clique_partition
from .strategies import GAMMA_STAR, PRESETS, StrategyRegistry, run_online
from .trace import MAX, MIN

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(ValueError):
    pass


def _budget(args) -> SolveBudget:
    return SolveBudget(max_component_size=args.max_component, node_limit=args.node_limit)


def _add_budget_flags(p):
    p.add_argument("--max-component", type=int, default=20,
                   help="largest connected component the exact solver accepts")
    p.add_argument("--node-limit", type=int, default=10**7,
                   help="branch-and-bound node cap")


def _strategy(args):
    return StrategyRegistry.make(args.strategy, gamma=args.gamma, budget=_budget(args))


def _make_instance(args):
    """Resolve the instance source of `simulate` to (name, events, analytic, objective)."""
    if args.instance and args.nemesis:
        raise UsageError("choose either --instance or --nemesis, not both")
    if args.instance:
        events = read_instance(args.instance)
        return args.instance, events, None, args.objective or MAX
    if not args.nemesis:
        raise UsageError("one instance source required: --instance FILE or --nemesis KIND")
    if args.nemesis == "greedy":
        if args.n is None:
            raise UsageError("--nemesis greedy needs --n")
        inst = greedy_nemesis(args.n)
        return inst.name, inst.events, inst.analytic_opt, args.objective or MAX
    if args.nemesis == "occ":
        inst = occ_nemesis(args.gamma, args.phases, args.variant)
        return inst.name, inst.events, inst.analytic_opt, args.objective or MAX
    if args.nemesis == "mincc":
        if args.n is None:
            raise UsageError("--nemesis mincc needs --n")
        # adaptive: resolved against the simulated strategy inside cmd_simulate
        return "mincc", None, None, args.objective or MIN
    raise UsageError(f"unknown nemesis {args.nemesis!r}")


def cmd_simulate(args) -> int:
    name, events, analytic, objective = _make_instance(args)
    if args.nemesis == "mincc":
        if objective != MIN:
            raise UsageError("the mincc nemesis is a min-objective instance")
        inst, trace = run_mincc_game(
            lambda: StrategyRegistry.make(args.strategy, gamma=args.gamma, budget=_budget(args)),
            args.beta, args.n,
        )
        name = inst.name
    else:
        if args.opt == "analytic":
            if analytic is None:
                raise UsageError("analytic optimum values are only available for generated nemeses")
        else:
            analytic = None
        trace = run_online(
            _strategy(args), events,
            objective=objective,
            opt_mode=args.opt,
            budget=_budget(args),
            analytic_opt=analytic,
        )
    meta = {
        "strategy": args.strategy,
        "params": {"gamma": args.gamma} if args.strategy == "occ" else {},
        "instance": name,
        "objective": trace.objective,
        "seed": args.seed,
    }
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(trace.to_json(meta))
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(trace.to_csv())
    worst = trace.worst()
    print(f"worst ratio: {worst.ratio.decimal(3)} (step {worst.t}/{len(trace.steps)})")
    return EXIT_OK


def cmd_nemesis(args) -> int:
    if args.kind == "greedy":
        inst = greedy_nemesis(args.n)
    elif args.kind == "occ":
        inst = occ_nemesis(args.gamma, args.phases, args.variant)
    else:
        strategy_factory = lambda: StrategyRegistry.make(args.strategy, gamma=args.gamma)
        inst, _ = run_mincc_game(strategy_factory, args.beta, args.n)
    write_instance(args.out, inst.events)
    print(f"{inst.name}: wrote {len(inst.events)} arrivals to {args.out}")
    return EXIT_OK


def cmd_opt(args) -> int:
    events = read_instance(args.instance)
    graph = OrderedGraph.from_events(events)
    res = max_clique_partition(graph, _budget(args))
    doc = {
        "n": graph.n,
        "edges": graph.edge_count,
        "profit": res.value,
        "cost": graph.edge_count - res.value,
        "proven_optimal": res.proven_optimal,
        "clusters": [sorted(v + 1 for v in c) for c in res.clusters],
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_skeleton(args) -> int:
    if args.strategy == "always-collect":
        strategy = AlwaysCollectStrategy()
    else:
        strategy = StrategyRegistry.make(args.strategy, gamma=args.gamma)
    report = run_skeleton_game(strategy, args.depth, max_rounds=args.max_rounds,
                               check_lemmas=not args.no_check)
    doc = report.to_dict()
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    eps = "n/a" if report.epsilon is None else f"{report.epsilon:.4f}"
    print(
        f"D={report.core_depth} rounds={report.rounds} ({report.stopped_because}) "
        f"O={report.adversary_profit} S={report.collected} "
        f"ratio={report.ratio.decimal(3)} epsilon={eps}"
    )
    return EXIT_OK


def cmd_table(args) -> int:
    gamma, x = args.gamma, args.x
    if args.preset:
        gamma, x = PRESETS[args.preset]
    rows = analysis.recurrence_table(gamma, x, args.max_phase)
    if args.format == "csv":
        print("j,delta_min,delta_max,s_min,s_max,rprime")
        for r in rows:
            print(f"{r.j},{r.delta_min},{r.delta_max},{r.s_min},{r.s_max},{r.rprime:.3f}")
    else:
        print(f"{'j':>3} {'dmin':>10} {'dmax':>10} {'Smin':>12} {'Smax':>12} {'bound':>9}")
        for r in rows:
            print(f"{r.j:>3} {r.delta_min:>10} {r.delta_max:>10} "
                  f"{r.s_min:>12} {r.s_max:>12} {r.rprime:>9.3f}")
    return EXIT_OK


def cmd_formula(args) -> int:
    if args.which == "ratio":
        gamma, x = args.gamma, args.x
        if args.preset:
            gamma, x = PRESETS[args.preset]
        if x is None:
            raise UsageError("formula ratio needs --x or --preset")
        print(f"{analysis.asymptotic_ratio(gamma, x):.6f}")
    else:
        print(f"{analysis.occ_lb_formula(args.gamma):.6f}")
    return EXIT_OK


def cmd_verify(args) -> int:
    kwargs = {}
    if args.suite == "solver-oracle":
        kwargs = {"nmax": args.nmax, "samples": args.samples, "seed": args.seed}
    elif args.suite in ("greedy-small",):
        kwargs = {"samples": args.samples, "seed": args.seed}
    elif args.suite == "mincc-bound":
        kwargs = {"samples": args.samples, "seed": args.seed}
    report = verify.run_suite(args.suite, **kwargs)
    for c in report.checks:
        mark = "PASS" if c.ok else "FAIL"
        detail = f"  [{c.detail}]" if c.detail else ""
        print(f"{mark}  {c.name}{detail}")
    print(json.dumps(report.to_dict(), sort_keys=True))
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cliquestream", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a strategy against an instance")
    sim.add_argument("--strategy", choices=StrategyRegistry.names, required=True)
    sim.add_argument("--gamma", type=float, default=GAMMA_STAR)
    sim.add_argument("--instance", help="instance file")
    sim.add_argument("--nemesis", choices=("greedy", "occ", "mincc"))
    sim.add_argument("--n", type=int)
    sim.add_argument("--phases", type=int, default=5)
    sim.add_argument("--variant", choices=("plain", "triangle"), default="plain")
    sim.add_argument("--beta", type=int, default=0)
    sim.add_argument("--objective", choices=(MAX, MIN))
    sim.add_argument("--opt", choices=("exact", "analytic"), default="exact")
    sim.add_argument("--json", help="write the trace as JSON")
    sim.add_argument("--csv", help="write the trace as CSV")
    sim.add_argument("--seed", type=int, default=None)
    _add_budget_flags(sim)
    sim.set_defaults(fn=cmd_simulate)

    nem = sub.add_parser("nemesis", help="emit a nemesis instance file")
    nem.add_argument("kind", choices=("greedy", "occ", "mincc"))
    nem.add_argument("--n", type=int, default=8)
    nem.add_argument("--gamma", type=float, default=GAMMA_STAR)
    nem.add_argument("--phases", type=int, default=5)
    nem.add_argument("--variant", choices=("plain", "triangle"), default="plain")
    nem.add_argument("--beta", type=int, default=0)
    nem.add_argument("--strategy", choices=StrategyRegistry.names, default="greedy-np",
                     help="strategy the adaptive mincc nemesis observes")
    nem.add_argument("--out", required=True)
    nem.set_defaults(fn=cmd_nemesis)

    opt = sub.add_parser("opt", help="solve an instance file offline")
    opt.add_argument("--instance", required=True)
    _add_budget_flags(opt)
    opt.set_defaults(fn=cmd_opt)

    sk = sub.add_parser("skeleton", help="play the adaptive adversary game")
    sk.add_argument("--strategy", choices=StrategyRegistry.names + ("always-collect",),
                    required=True)
    sk.add_argument("--gamma", type=float, default=GAMMA_STAR)
    sk.add_argument("--depth", type=int, required=True, help="core depth D")
    sk.add_argument("--max-rounds", type=int, default=None,
                    help="round budget (default 2^(D+1) + 8*2^D)")
    sk.add_argument("--no-check", action="store_true", help="skip per-round lemma checks")
    sk.add_argument("--json", help="write the adversary report as JSON")
    sk.set_defaults(fn=cmd_skeleton)

    tab = sub.add_parser("table", help="print the phase recurrence table")
    tab.add_argument("--gamma", type=float, default=GAMMA_STAR)
    tab.add_argument("--x", type=float, default=analysis.X_STAR)
    tab.add_argument("--preset", choices=sorted(PRESETS))
    tab.add_argument("--max-phase", type=int, default=8)
    tab.add_argument("--format", choices=("text", "csv"), default="text")
    tab.set_defaults(fn=cmd_table)

    form = sub.add_parser("formula", help="evaluate analysis formulas")
    form.add_argument("which", choices=("ratio", "occ-lb"))
    form.add_argument("--gamma", type=float, default=GAMMA_STAR)
    form.add_argument("--x", type=float, default=None)
    form.add_argument("--preset", choices=sorted(PRESETS))
    form.set_defaults(fn=cmd_formula)

    ver = sub.add_parser("verify", help="run a named verification suite")
    ver.add_argument("suite", choices=verify.SUITE_NAMES)
    ver.add_argument("--nmax", type=int, default=9)
    ver.add_argument("--samples", type=int, default=10_000)
    ver.add_argument("--seed", type=int, default=20240)
    ver.set_defaults(fn=cmd_verify)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ComponentTooLargeError as exc:
        print(f"solver budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
