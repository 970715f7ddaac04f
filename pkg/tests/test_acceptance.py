"""Acceptance suite: one test per criterion, at the stated tolerances and
runtime budgets.  Each test prints a single PASS line (visible with -s or in
pytest's captured output)."""

import time
from fractions import Fraction

from cliquestream import verify
from cliquestream.adversaries import greedy_nemesis, occ_nemesis
from cliquestream.analysis import GAMMA_STAR
from cliquestream.strategies import GreedyStrategy, OCCStrategy, run_online


class Budget:
    def __init__(self, name, seconds):
        self.name = name
        self.seconds = seconds
        self.start = time.perf_counter()

    def done(self, detail=""):
        elapsed = time.perf_counter() - self.start
        assert elapsed < self.seconds, f"{self.name}: {elapsed:.2f}s over {self.seconds}s budget"
        suffix = f" [{detail}]" if detail else ""
        print(f"PASS {self.name} ({elapsed:.2f}s < {self.seconds}s){suffix}")


def _assert_suite(report):
    for check in report.checks:
        assert check.ok, f"{report.suite}: {check.name} failed ({check.detail})"


def test_criterion_1_greedy_lower_bound():
    budget = Budget("criterion 1: greedy nemesis ratio = floor(n/2) for n=4..20", 1.0)
    for n in range(4, 21):
        trace = run_online(GreedyStrategy(), greedy_nemesis(n).events, opt_mode="exact")
        ratio = trace.final_ratio()
        assert not ratio.is_infinite
        assert ratio.as_fraction() == Fraction(n // 2), f"n={n}: got {ratio.decimal()}"
    budget.done()


def test_criterion_2_greedy_upper_bound():
    budget = Budget("criterion 2: greedy upper bound on random graphs + exhaustive n<=3", 120.0)
    report = verify.suite_greedy_small(samples=10_000, seed=20241)
    _assert_suite(report)
    budget.done("; ".join(c.name for c in report.checks))


def test_criterion_3_solver_oracle():
    budget = Budget("criterion 3: branch-and-bound matches brute force", 300.0)
    report = verify.suite_solver_oracle(nmax=9, samples=10_000, seed=20240)
    _assert_suite(report)
    budget.done("exhaustive n<=6 and 10^4 random graphs, zero mismatches")


def test_criterion_4_occ_mechanics():
    budget = Budget("criterion 4: doubling-strategy mechanics on its nemesis", 60.0)
    inst = occ_nemesis(GAMMA_STAR, 6, "plain")
    occ = OCCStrategy()
    trace = run_online(occ, inst.events, opt_mode="analytic", analytic_opt=inst.analytic_opt)
    assert [p.delta for p in occ.phase_log] == inst.meta["batch_edges"]
    assert all(p.delta == p.threshold for p in occ.phase_log)
    assert [p.step for p in occ.phase_log] == inst.meta["batch_ends"]
    target = GAMMA_STAR * (GAMMA_STAR + 3) / (GAMMA_STAR - 1)
    worst = trace.worst().ratio.as_float()
    assert abs(worst - target) <= 0.10 * target, f"worst {worst} vs {target}"
    budget.done(f"worst ratio {worst:.4f} within 10% of {target:.4f}")


def test_criterion_5_analysis_table():
    budget = Budget("criterion 5: phase table, tail, and closed-form ratios", 1.0)
    report = verify.suite_table(max_phase=30)
    _assert_suite(report)
    budget.done("9 table rows exact/within 0.001; max 22.641 at j=5; tail <= 20")


def test_criterion_6_profit_gap_lemma():
    budget = Budget("criterion 6: profit-gap inequality on the full grid", 10.0)
    report = verify.suite_profvalue(a_max=60, grid=1000)
    _assert_suite(report)
    budget.done()


def test_criterion_7_skeleton_lemmas():
    budget = Budget("criterion 7: skeleton adversary inequalities, D in {2,3,4}", 60.0)
    report = verify.suite_skeleton_lemmas(depths=(2, 3, 4))
    _assert_suite(report)
    budget.done("; ".join(c.detail for c in report.checks[:1]))


def test_criterion_8_mincc_bounds():
    budget = Budget("criterion 8: min-objective nemesis and greedy bound", 300.0)
    report = verify.suite_mincc_bound(n_lo=5, n_hi=50, samples=10_000, seed=20242)
    _assert_suite(report)
    budget.done("ratio n-2 exact for n=5..50; random + disjoint-clique families clean")
