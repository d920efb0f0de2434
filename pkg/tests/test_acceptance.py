"""Acceptance suite: one test per primary criterion, one PASS/FAIL line each.

Each criterion runs at its stated tolerance.  The third containment link
of the region-ordering criterion (time-sharing hull containing the pure
hull) does not hold mathematically: the time-sharing scheme mixes only
the (FW,BW) and (BW,FW) operating modes, so its region cannot reach the
both-backward corner point, whose coordinate sum exceeds the scheme's
maximum by about 0.7 bits at the named operating point.  That assertion
is implemented as stated and is expected to fail; the true orderings
(artificial noise contains both other regions) are asserted alongside
and hold.
"""

import time
from contextlib import contextmanager

import numpy as np
import pytest

from keyrate import (
    AnParams,
    ChannelParams,
    JointPmf,
    PureStrategy,
    TsParams,
    analytic_ne_conditions,
    apply_pure_substitutions,
    artificial_noise_rates,
    best_split_response,
    expand_joint,
    build_matrix_game,
    hull_contains,
    inner_bound_rates,
    inner_bound_report,
    mutual_information,
    ne_map,
    noise_corner_game,
    pure_ne,
    pure_rates,
    pure_strategy_rates,
    sweep_region,
    time_sharing_rates,
)

from _oracles import cmi_oracle, random_factored_pmf

FW, BW = PureStrategy.FW, PureStrategy.BW
PROFILES = [(FW, FW), (FW, BW), (BW, FW), (BW, BW)]


@contextmanager
def criterion(name):
    started = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"[ACCEPTANCE] {name}: FAIL ({time.monotonic() - started:.1f}s)")
        raise
    print(f"[ACCEPTANCE] {name}: PASS ({time.monotonic() - started:.1f}s)")


def test_trichotomy_on_unit_power_grid():
    """101x101 gain grid at p=1: unique equilibria off the diagonal,
    exactly three on it (origin excluded), zero analytic disagreements,
    under 10 seconds."""
    with criterion("equilibrium trichotomy"):
        t0 = time.monotonic()
        result = ne_map(1.0, grid_n=101)
        elapsed = time.monotonic() - t0
        assert result.disagreements == 0
        three = {(FW, FW), (FW, BW), (BW, FW)}
        for a1, a2, report in result.rows():
            eq = set(report.equilibria)
            if a1 == 0.0 and a2 == 0.0:
                continue  # degenerate all-tie cell
            if a1 > a2:
                assert eq == {(FW, BW)}, (a1, a2, eq)
            elif a1 < a2:
                assert eq == {(BW, FW)}, (a1, a2, eq)
            else:
                assert eq == three, (a1, a2, eq)
        assert elapsed < 10.0, f"grid took {elapsed:.1f}s"


def test_both_backward_exclusion():
    """(BW,BW) never an equilibrium for p > 1/2 (1000 random channels),
    but is one at p = 0.4 with unit gains."""
    with criterion("(BW,BW) exclusion"):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            a1, a2 = rng.uniform(0.0, 1.0, 2)
            if a1 == 0.0 and a2 == 0.0:
                continue
            p = rng.uniform(0.5, 100.0)
            if p == 0.5:
                continue
            game = build_matrix_game(ChannelParams(a1, a2, p, p))
            assert (BW, BW) not in pure_ne(game, tol=1e-9), (a1, a2, p)
        low = build_matrix_game(ChannelParams(1.0, 1.0, 0.4, 0.4))
        assert (BW, BW) in pure_ne(low, tol=1e-9)
        conds = analytic_ne_conditions(ChannelParams(1.0, 1.0, 0.4, 0.4))
        assert conds.joint_backward_snr == pytest.approx(0.64 / 2.6, abs=1e-12)
        assert conds.fw_threshold_1 == pytest.approx(0.4 / 1.4, abs=1e-12)


def test_corner_and_endpoint_reductions():
    """500 random channels: noise-split corners match the four pure
    profiles and time-sharing endpoints match the mixed profiles, both
    to 1e-12."""
    with criterion("corner/endpoint reductions"):
        rng = np.random.default_rng(7)
        corners = {
            (0.0, 0.0): (FW, FW),
            (0.0, 1.0): (FW, BW),
            (1.0, 0.0): (BW, FW),
            (1.0, 1.0): (BW, BW),
        }
        for _ in range(500):
            a1, a2 = rng.uniform(0.0, 1.0, 2)
            p1, p2 = rng.uniform(0.05, 100.0, 2)
            ch = ChannelParams(a1, a2, p1, p2)
            for (l1, l2), prof in corners.items():
                an = artificial_noise_rates(ch, AnParams(1.0, 1.0, l1, l2))
                pw = pure_rates(ch, *prof)
                assert abs(an.r1 - pw.r1) <= 1e-12, (a1, a2, p1, p2, prof)
                assert abs(an.r2 - pw.r2) <= 1e-12
            one = time_sharing_rates(ch, TsParams(1.0, 1.0, 1.0))
            fwbw = pure_rates(ch, FW, BW)
            assert abs(one.r1 - fwbw.r1) <= 1e-12 and abs(one.r2 - fwbw.r2) <= 1e-12
            zero = time_sharing_rates(ch, TsParams(0.0, 1.0, 1.0))
            bwfw = pure_rates(ch, BW, FW)
            assert abs(zero.r1 - bwfw.r1) <= 1e-12 and abs(zero.r2 - bwfw.r2) <= 1e-12


def test_region_containment_ordering():
    """Region ordering at p1 = p2 = 100, gains 0.2, checked on 64 ray
    directions with slack 1e-9, plus domination of the all-forward point.

    The middle link (time-sharing hull containing the pure hull) is
    asserted as stated and fails: the time-sharing region is a mix of
    the (FW,BW)/(BW,FW) modes only, and the both-backward vertex of the
    pure hull lies far outside it (coordinate sum 4.166 vs at most 3.456
    reachable under time sharing).  The artificial-noise hull does
    contain both other regions; those links hold.
    """
    with criterion("region containment ordering"):
        ch = ChannelParams(0.2, 0.2, 100.0, 100.0)
        t0 = time.monotonic()
        smoke = sweep_region(ch, "an", beta_grid=21, lambda_grid=21)
        smoke_elapsed = time.monotonic() - t0
        assert smoke_elapsed < 10.0, f"21^4 sweep took {smoke_elapsed:.1f}s"

        t0 = time.monotonic()
        an = sweep_region(ch, "an")  # 41^4 grid
        full_elapsed = time.monotonic() - t0
        assert full_elapsed < 300.0, f"41^4 sweep took {full_elapsed:.1f}s"
        ts = sweep_region(ch, "ts")
        pure = sweep_region(ch, "pure")

        fwfw = pure_rates(ch, FW, FW)
        bwbw = pure_rates(ch, BW, BW)
        assert fwfw.r1 < bwbw.r1 and fwfw.r2 < bwbw.r2

        an_ts = hull_contains(an.hull, ts.hull, n_directions=64, slack=1e-9)
        ts_pure = hull_contains(ts.hull, pure.hull, n_directions=64, slack=1e-9)
        an_pure = hull_contains(an.hull, pure.hull, n_directions=64, slack=1e-9)
        assert an_ts, "artificial-noise hull must contain the time-sharing hull"
        assert an_pure, "artificial-noise hull must contain the pure hull"
        assert ts_pure, (
            "time-sharing hull does not contain the pure hull: the scheme mixes "
            "only the (FW,BW)/(BW,FW) modes, so the both-backward point "
            f"({bwbw.r1:.4f}, {bwbw.r2:.4f}) lies outside its region "
            "(its coordinate sum exceeds the time-sharing maximum by ~0.7 bits); "
            "this containment link cannot hold at this operating point"
        )


def test_endpoint_best_responses():
    """100 random configurations, five opponent splits, both players:
    the 1001-point grid maximum is attained at an endpoint; the corner
    restriction of the continuous game has the matrix game's equilibria.
    Counterexamples are collected and fail the test."""
    with criterion("endpoint best responses"):
        rng = np.random.default_rng(99)
        counterexamples = []
        for _ in range(100):
            a1, a2 = rng.uniform(0.0, 1.0, 2)
            p = rng.uniform(0.6, 100.0)
            ch = ChannelParams(a1, a2, p, p)
            for lam_other in (0.0, 0.25, 0.5, 0.75, 1.0):
                for player in (1, 2):
                    br = best_split_response(ch, player, lam_other, grid_n=1001, tol=1e-9)
                    if not br.endpoint_attained:
                        counterexamples.append(
                            {"alpha1": a1, "alpha2": a2, "p": p,
                             "player": player, "lambda_other": lam_other,
                             "maximizers": br.maximizers.tolist()}
                        )
            corner_eq = set(pure_ne(noise_corner_game(ch), tol=1e-9))
            matrix_eq = set(pure_ne(build_matrix_game(ch), tol=1e-9))
            if corner_eq != matrix_eq:
                counterexamples.append(
                    {"alpha1": a1, "alpha2": a2, "p": p,
                     "corner": sorted(f"{s}{t}" for s, t in corner_eq),
                     "matrix": sorted(f"{s}{t}" for s, t in matrix_eq)}
                )
        assert not counterexamples, f"counterexamples: {counterexamples}"


def test_discrete_evaluator_consistency():
    """200 random binary factored sources: substitution path equals the
    direct per-profile expressions to 1e-10; trivial-backward reduction
    to 1e-10; information-measure property suites over 1000 random
    tables.  Under 60 seconds."""
    with criterion("discrete evaluator consistency"):
        t0 = time.monotonic()
        rng = np.random.default_rng(11)
        for _ in range(200):
            f = random_factored_pmf(rng)
            for prof in PROFILES:
                direct = pure_strategy_rates(f, *prof)
                substituted = inner_bound_rates(apply_pure_substitutions(f, *prof))
                assert abs(substituted.r1 - direct.r1) <= 1e-10
                assert abs(substituted.r2 - direct.r2) <= 1e-10
        for _ in range(100):
            f = random_factored_pmf(rng, sizes={"v1b": 1, "v2b": 1})
            report = inner_bound_report(f)
            table = expand_joint(f).probabilities
            names = ("v1f", "v2f", "x1", "x2", "y1", "y2", "v1b", "v2b")
            fwd1 = cmi_oracle(table, names, ("v1f",), ("y1",)) - cmi_oracle(
                table, names, ("v1f",), ("y2",), ("v2f",)
            )
            fwd2 = cmi_oracle(table, names, ("v2f",), ("y2",)) - cmi_oracle(
                table, names, ("v2f",), ("y1",), ("v1f",)
            )
            assert abs(report.rates.r1 - max(fwd1, 0.0)) <= 1e-10
            assert abs(report.rates.r2 - max(fwd2, 0.0)) <= 1e-10
        for _ in range(1000):
            shape = tuple(rng.integers(2, 4, size=3))
            table = rng.random(shape) + 1e-3
            table /= table.sum()
            p = JointPmf(("a", "b", "c"), table)
            i_ab_c = mutual_information(p, "a", ("b", "c"))
            chained = mutual_information(p, "a", "b") + mutual_information(
                p, "a", "c", "b"
            )
            assert i_ab_c >= 0.0
            assert abs(i_ab_c - chained) <= 1e-10
            assert abs(
                mutual_information(p, "a", "b", "c")
                - mutual_information(p, "b", "a", "c")
            ) <= 1e-12
        elapsed = time.monotonic() - t0
        assert elapsed < 60.0, f"consistency suite took {elapsed:.1f}s"


def test_forward_forward_balance_condition():
    """(FW,FW) is an equilibrium exactly when the cross-leakage powers
    balance; a relative 1e-3 perturbation removes it at medium/high
    power."""
    with criterion("(FW,FW) balance condition"):
        rng = np.random.default_rng(5)
        checked = 0
        while checked < 200:
            a1, a2 = rng.uniform(0.2, 1.0, 2)
            b1, b2 = rng.uniform(0.3, 1.0, 2)
            p1 = rng.uniform(1.0, 50.0)
            p2 = (a2 * a2 * b1 * p1) / (a1 * a1 * b2)
            if not 0.5 <= p2 <= 100.0:
                continue
            checked += 1
            ch = ChannelParams(a1, a2, p1, p2)
            assert (FW, FW) in pure_ne(build_matrix_game(ch, b1, b2), tol=1e-9)
            bumped = ChannelParams(a1, a2, p1, p2 * (1.0 + 1e-3))
            assert (FW, FW) not in pure_ne(build_matrix_game(bumped, b1, b2), tol=1e-9)
