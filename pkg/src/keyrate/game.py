"""Non-cooperative power-allocation games between the two transmitters.

Two games are analyzed.  The 2x2 matrix game has strategy space
{FW, BW} per transmitter and payoffs equal to the pure-strategy key
rates at powers beta_i * p_i.  The continuous game has strategy space
lambda_i in [0, 1] (the artificial-noise power split, beta = 1) with the
artificial-noise rates as utilities; its best responses land on the
endpoints, so its equilibria coincide with the matrix game's.

Equilibrium comparisons use the signed rate margins (signal capacity
minus leakage capacity, before the zero clamp) rather than the clamped
rates.  The two orderings agree whenever rates are positive, but in the
strong-leakage corner of the parameter square several clamped rates tie
at exactly zero and weak-inequality enumeration on them would admit
profiles that are not best responses in the leakage ordering; the
closed-form equilibrium conditions are leakage comparisons, so the
margins are the right quantity to enumerate with.

Closed-form conditions, with q_i = beta_i * p_i and L the shared
backward-leakage SNR of :func:`backward_leakage_snr` generalized to
(q1, q2):

* (FW,FW) is an equilibrium iff alpha2^2 q1 = alpha1^2 q2;
* (FW,BW) iff alpha2^2 q1 / (1+q2) <= L and alpha2^2 q1 <= alpha1^2 q2;
* (BW,FW) is the mirror image;
* (BW,BW) iff L <= min(alpha2^2 q1/(1+q2), alpha1^2 q2/(1+q1)).

At equal powers these reduce to the threshold form used by the
classification: for p > 1/2 the map over (alpha1, alpha2) splits into
(FW,BW) below the diagonal, (BW,FW) above, and three equilibria on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .discrete import PureStrategy, RatePair
from .errors import DomainError
from .gaussian import (
    PROFILES,
    AnParams,
    ChannelParams,
    artificial_noise_brackets,
    artificial_noise_rates,
    pure_rates,
    pure_strategy_margins,
)

__all__ = [
    "EquilibriumConditions",
    "MatrixGame",
    "NeMap",
    "NeReport",
    "SplitResponse",
    "analytic_ne_conditions",
    "backward_leakage_snr",
    "best_split_response",
    "build_matrix_game",
    "game_report",
    "ne_map",
    "noise_corner_game",
    "noise_split_payoffs",
    "pure_ne",
]

FW = PureStrategy.FW
BW = PureStrategy.BW

Profile = tuple[PureStrategy, PureStrategy]

DEFAULT_TIE_TOL = 1e-9
_COND_TOL = 1e-12

CLASS_DIAG = "diag_three_ne"
CLASS_FWBW = "fwbw_unique"
CLASS_BWFW = "bwfw_unique"
CLASS_LOW_SNR = "low_snr_other"
CLASS_UNCLASSIFIED = "unclassified"
CLASS_ORIGIN = "degenerate_origin"


@dataclass(frozen=True)
class MatrixGame:
    """2x2 strategic-form game between the two transmitters.

    ``payoffs`` holds the clamped achievable rates per profile (player
    1's payoff is r1, player 2's is r2); ``margins`` holds the signed
    rate margins used for equilibrium comparisons.
    """

    channel: ChannelParams
    beta1: float
    beta2: float
    payoffs: Mapping[Profile, RatePair]
    margins: Mapping[Profile, tuple[float, float]]

    def payoff_table(self) -> dict[str, dict[str, float]]:
        """JSON-friendly payoff matrix keyed by 's1,s2'."""
        return {
            f"{s1.value},{s2.value}": {
                "r1": self.payoffs[(s1, s2)].r1,
                "r2": self.payoffs[(s1, s2)].r2,
            }
            for s1, s2 in PROFILES
        }


def build_matrix_game(
    ch: ChannelParams, beta1: float = 1.0, beta2: float = 1.0
) -> MatrixGame:
    """Populate the matrix game from the pure rates at powers beta*p."""
    scaled = ch.scaled(beta1, beta2)
    payoffs: dict[Profile, RatePair] = {}
    margins: dict[Profile, tuple[float, float]] = {}
    for s1, s2 in PROFILES:
        margins[(s1, s2)] = pure_strategy_margins(scaled, s1, s2)
        payoffs[(s1, s2)] = pure_rates(scaled, s1, s2)
    return MatrixGame(
        channel=ch, beta1=float(beta1), beta2=float(beta2),
        payoffs=payoffs, margins=margins,
    )


def pure_ne(game: MatrixGame, tol: float = DEFAULT_TIE_TOL) -> tuple[Profile, ...]:
    """All pure-strategy equilibria under weak-inequality best responses.

    A profile survives when neither player can improve its margin by
    more than ``tol`` through a unilateral deviation; ties therefore
    admit multiple equilibria (the diagonal of a symmetric channel
    yields exact ties by construction).
    """
    if tol < 0.0:
        raise DomainError(f"tol must be >= 0, got {tol!r}")
    equilibria = []
    for s1, s2 in PROFILES:
        u1 = game.margins[(s1, s2)][0]
        u2 = game.margins[(s1, s2)][1]
        alt1 = game.margins[(_other(s1), s2)][0]
        alt2 = game.margins[(s1, _other(s2))][1]
        if u1 >= alt1 - tol and u2 >= alt2 - tol:
            equilibria.append((s1, s2))
    return tuple(equilibria)


def _other(s: PureStrategy) -> PureStrategy:
    return BW if s is FW else FW


def backward_leakage_snr(alpha1: float, alpha2: float, p: float) -> float:
    """Shared leakage SNR when both pairs key off the backward phase.

    Equal-power form: p^2 (alpha1+alpha2)^2 over
    1 + (1+alpha2^2) p + (1+alpha1^2) p + (1-alpha1 alpha2)^2 p^2.
    Symmetric and nondecreasing in both gains on the weak-interference
    square.
    """
    return _joint_backward_snr(alpha1, alpha2, p, p)


def _joint_backward_snr(a1: float, a2: float, q1: float, q2: float) -> float:
    num = (a2 * q1 + a1 * q2) ** 2
    den = (
        1.0
        + (1.0 + a2 * a2) * q1
        + (1.0 + a1 * a1) * q2
        + (1.0 - a1 * a2) ** 2 * q1 * q2
    )
    return num / den


@dataclass(frozen=True)
class EquilibriumConditions:
    """Closed-form equilibrium tests plus their raw ingredient values.

    ``membership`` marks, per profile, whether the closed-form condition
    admits it as an equilibrium.  ``classification`` is the equal-power
    map label; channels outside the equal-power normal form report
    ``unclassified`` (the raw values and membership stay valid).
    """

    q1: float
    q2: float
    forward_balance_lhs: float
    forward_balance_rhs: float
    joint_backward_snr: float
    fw_threshold_1: float
    fw_threshold_2: float
    membership: Mapping[Profile, bool]
    equal_power: bool
    classification: str

    def as_dict(self) -> dict:
        return {
            "q1": self.q1,
            "q2": self.q2,
            "forward_balance_lhs": self.forward_balance_lhs,
            "forward_balance_rhs": self.forward_balance_rhs,
            "joint_backward_snr": self.joint_backward_snr,
            "fw_threshold_1": self.fw_threshold_1,
            "fw_threshold_2": self.fw_threshold_2,
            "membership": {
                f"{s1.value},{s2.value}": bool(v)
                for (s1, s2), v in self.membership.items()
            },
            "equal_power": self.equal_power,
            "classification": self.classification,
        }


def _close(a: float, b: float, rel: float = _COND_TOL) -> bool:
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


def _leq(a: float, b: float, tol: float = _COND_TOL) -> bool:
    return a <= b + tol * max(1.0, abs(a), abs(b))


def analytic_ne_conditions(
    ch: ChannelParams, beta1: float = 1.0, beta2: float = 1.0
) -> EquilibriumConditions:
    """Evaluate the closed-form equilibrium conditions for the matrix game."""
    b1, b2 = float(beta1), float(beta2)
    scaled = ch.scaled(b1, b2)
    a1, a2 = ch.alpha1, ch.alpha2
    q1, q2 = scaled.p1, scaled.p2
    lhs = a2 * a2 * q1
    rhs = a1 * a1 * q2
    joint = _joint_backward_snr(a1, a2, q1, q2)
    thr1 = lhs / (1.0 + q2)
    thr2 = rhs / (1.0 + q1)
    membership: dict[Profile, bool] = {
        (FW, FW): _close(lhs, rhs),
        (FW, BW): _leq(thr1, joint) and _leq(lhs, rhs),
        (BW, FW): _leq(thr2, joint) and _leq(rhs, lhs),
        (BW, BW): _leq(joint, thr1) and _leq(joint, thr2),
    }
    equal_power = _close(q1, q2) and _close(b1, b2)
    if not equal_power:
        classification = CLASS_UNCLASSIFIED
    elif a1 == 0.0 and a2 == 0.0:
        classification = CLASS_ORIGIN
    elif q1 <= 0.5:
        classification = CLASS_LOW_SNR
    elif _close(lhs, rhs):
        classification = CLASS_DIAG
    elif lhs < rhs:
        classification = CLASS_FWBW
    else:
        classification = CLASS_BWFW
    return EquilibriumConditions(
        q1=q1,
        q2=q2,
        forward_balance_lhs=lhs,
        forward_balance_rhs=rhs,
        joint_backward_snr=joint,
        fw_threshold_1=thr1,
        fw_threshold_2=thr2,
        membership=membership,
        equal_power=equal_power,
        classification=classification,
    )


@dataclass(frozen=True)
class NeReport:
    """Enumerated equilibria of one game plus the analytic cross-check."""

    equilibria: tuple[Profile, ...]
    tie_tolerance: float
    conditions: EquilibriumConditions
    agree: bool
    all_tie: bool

    def as_dict(self) -> dict:
        return {
            "equilibria": [f"{s1.value},{s2.value}" for s1, s2 in self.equilibria],
            "tie_tolerance": self.tie_tolerance,
            "conditions": self.conditions.as_dict(),
            "agree": self.agree,
            "all_tie": self.all_tie,
        }


def game_report(
    ch: ChannelParams,
    beta1: float = 1.0,
    beta2: float = 1.0,
    tol: float = DEFAULT_TIE_TOL,
) -> tuple[MatrixGame, NeReport]:
    """Build the matrix game, enumerate equilibria, cross-check analytics."""
    game = build_matrix_game(ch, beta1, beta2)
    equilibria = pure_ne(game, tol)
    conditions = analytic_ne_conditions(ch, beta1, beta2)
    analytic_set = {prof for prof, member in conditions.membership.items() if member}
    u1 = [game.margins[prof][0] for prof in PROFILES]
    u2 = [game.margins[prof][1] for prof in PROFILES]
    all_tie = (max(u1) - min(u1) <= tol) and (max(u2) - min(u2) <= tol)
    report = NeReport(
        equilibria=equilibria,
        tie_tolerance=tol,
        conditions=conditions,
        agree=set(equilibria) == analytic_set,
        all_tie=all_tie,
    )
    return game, report


# ---------------------------------------------------------------------------
# Continuous noise-splitting game
# ---------------------------------------------------------------------------


def noise_split_payoffs(ch: ChannelParams, lambda1: float, lambda2: float) -> RatePair:
    """Utilities of the continuous game: artificial-noise rates at beta=1."""
    return artificial_noise_rates(ch, AnParams(1.0, 1.0, lambda1, lambda2))


@dataclass(frozen=True)
class SplitResponse:
    """Grid best response of one player in the continuous game."""

    player: int
    lambda_other: float
    maximizers: np.ndarray
    max_value: float
    endpoint_attained: bool


def best_split_response(
    ch: ChannelParams,
    player: int,
    lambda_other: float,
    grid_n: int = 1001,
    tol: float = DEFAULT_TIE_TOL,
) -> SplitResponse:
    """Maximize one player's noise-split payoff over a lambda grid.

    Returns every grid maximizer within ``tol`` of the best value and
    whether an endpoint (lambda in {0, 1}) attains the maximum.
    """
    if player not in (1, 2):
        raise DomainError(f"player must be 1 or 2, got {player!r}")
    if grid_n < 11:
        raise DomainError(f"grid_n must be >= 11, got {grid_n}")
    lam_other = float(lambda_other)
    if not 0.0 <= lam_other <= 1.0:
        raise DomainError(f"lambda_other must lie in [0, 1], got {lambda_other!r}")
    grid = np.linspace(0.0, 1.0, grid_n)
    from .gaussian import _an_brackets  # vectorized internals

    if player == 1:
        f, b, _, _ = _an_brackets(ch.alpha1, ch.alpha2, ch.p1, ch.p2, grid, lam_other)
    else:
        _, _, f, b = _an_brackets(ch.alpha1, ch.alpha2, ch.p1, ch.p2, lam_other, grid)
    payoff = np.maximum(f, 0.0) + np.maximum(b, 0.0)
    best = float(payoff.max())
    maximizers = grid[payoff >= best - tol]
    endpoint = max(float(payoff[0]), float(payoff[-1])) >= best - tol
    return SplitResponse(
        player=player,
        lambda_other=lam_other,
        maximizers=maximizers,
        max_value=best,
        endpoint_attained=endpoint,
    )


_CORNER_OF = {FW: 0.0, BW: 1.0}


def noise_corner_game(ch: ChannelParams) -> MatrixGame:
    """Restrict the continuous game to the corners of the lambda square.

    Corner (lambda1, lambda2) = (0/1, 0/1) maps to (FW/BW, FW/BW).
    Payoffs come from the artificial-noise evaluator; the margins are
    the corner's active brackets (forward bracket at lambda_i = 0,
    backward bracket at lambda_i = 1), which are the quantities the
    matrix game compares.  Equality of this game's equilibria with the
    matrix game's is a numerical check of the corner reduction.
    """
    payoffs: dict[Profile, RatePair] = {}
    margins: dict[Profile, tuple[float, float]] = {}
    for s1, s2 in PROFILES:
        an = AnParams(1.0, 1.0, _CORNER_OF[s1], _CORNER_OF[s2])
        f1, b1, f2, b2 = artificial_noise_brackets(ch, an)
        payoffs[(s1, s2)] = artificial_noise_rates(ch, an)
        margins[(s1, s2)] = (
            f1 if s1 is FW else b1,
            f2 if s2 is FW else b2,
        )
    return MatrixGame(channel=ch, beta1=1.0, beta2=1.0, payoffs=payoffs, margins=margins)


# ---------------------------------------------------------------------------
# Equilibrium map over the gain square
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NeMap:
    """Equilibrium classification over a grid of (alpha1, alpha2) gains."""

    p: float
    grid: np.ndarray
    reports: tuple[NeReport, ...]  # row-major over (alpha1, alpha2)

    @property
    def disagreements(self) -> int:
        return sum(1 for r in self.reports if not r.agree)

    def rows(self):
        """Row-major (alpha1, alpha2, report) triples."""
        n = self.grid.size
        for i, report in enumerate(self.reports):
            yield float(self.grid[i // n]), float(self.grid[i % n]), report


def ne_map(p: float, grid_n: int = 101, tol: float = DEFAULT_TIE_TOL) -> NeMap:
    """Enumerate and classify equilibria on a (alpha1, alpha2) grid.

    Uses equal powers p1 = p2 = p and beta = 1.  Every cell records both
    the enumerated equilibria and the closed-form membership, plus their
    agreement flag.
    """
    if grid_n < 3:
        raise DomainError(f"grid_n must be >= 3, got {grid_n}")
    if not math.isfinite(p) or p <= 0.0:
        raise DomainError(f"p must be finite and > 0, got {p!r}")
    grid = np.linspace(0.0, 1.0, grid_n)
    reports = []
    for a1 in grid:
        for a2 in grid:
            ch = ChannelParams(float(a1), float(a2), p, p)
            _, report = game_report(ch, tol=tol)
            reports.append(report)
    return NeMap(p=float(p), grid=grid, reports=tuple(reports))
