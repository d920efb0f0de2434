"""Closed-form Gaussian key rates, parameter sweeps, and region geometry.

Channel model (unit-variance noise, amplitude cross gains):

    y1 = x1 + alpha1 * x2 + n1,      y2 = alpha2 * x1 + x2 + n2,

with transmit powers p1, p2 and weak interference (alpha_i^2 <= 1).
Every rate below is a difference of two Gaussian capacities,
C(signal SNR) - C(leakage SNR), clamped at zero.  Three schemes are
implemented:

* pure strategies: each pair keys entirely off the forward (FW) or
  backward (BW) phase, four profiles total;
* time sharing: two slots with fractions rho1, 1 - rho1; in slot 1 pair
  1 plays the forward role and pair 2 the backward role, mirrored in
  slot 2, with power control beta1, beta2;
* artificial noise: transmitter i splits power beta_i*p_i into a
  key-bearing part (1-lambda_i) and a jamming part lambda_i that doubles
  as backward-phase randomness.

At the corners of the (lambda1, lambda2) square with beta = 1 the
artificial-noise rates reduce exactly to the four pure profiles, and the
time-sharing endpoints rho1 in {0, 1} reduce to (BW,FW)/(FW,BW) with
scaled powers; both reductions are regression-tested to 1e-12.

``sweep_region`` evaluates a scheme on a full parameter grid and
extracts the Pareto frontier and the upper-right convex hull (augmented
with the axis anchors, so the hull is the time-shared achievable
region).  All evaluators are pure and deterministic; sweeps are
vectorized but single-threaded, so output ordering is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Mapping

import numpy as np

from .discrete import PureStrategy, RatePair
from .errors import DomainError, ResourceError

__all__ = [
    "AnParams",
    "ChannelParams",
    "PureStrategy",
    "RegionSample",
    "TsParams",
    "artificial_noise_brackets",
    "artificial_noise_rates",
    "convex_hull",
    "hull_contains",
    "hull_support",
    "pareto_mask",
    "points_in_hull",
    "pure_rates",
    "pure_strategy_margins",
    "region_hull",
    "sweep_region",
    "time_sharing_rates",
]

_LN2 = math.log(2.0)

MAX_SWEEP_EVALS = 10_000_000
DEDUP_TOL = 1e-12

FW = PureStrategy.FW
BW = PureStrategy.BW
PROFILES = ((FW, FW), (FW, BW), (BW, FW), (BW, BW))


def _cap(x):
    """0.5*log2(1+x), elementwise; assumes x >= 0."""
    return 0.5 * np.log1p(x) / _LN2


def _unit_interval(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class ChannelParams:
    """Gaussian interference-channel instance (unit noise variance).

    alpha1: cross-gain amplitude into receiver 1; alpha2: into receiver
    2; weak interference requires alpha_i^2 <= 1.  p1, p2 are the
    transmit power constraints in linear SNR units (p >= 0; zero power
    is allowed so power-controlled games can silence a transmitter).
    """

    alpha1: float
    alpha2: float
    p1: float
    p2: float

    def __post_init__(self) -> None:
        for name in ("alpha1", "alpha2"):
            a = float(getattr(self, name))
            if not math.isfinite(a) or a * a > 1.0:
                raise DomainError(f"{name}^2 must lie in [0, 1], got {a!r}")
            object.__setattr__(self, name, a)
        for name in ("p1", "p2"):
            p = float(getattr(self, name))
            if not math.isfinite(p) or p < 0.0:
                raise DomainError(f"{name} must be finite and >= 0, got {p!r}")
            object.__setattr__(self, name, p)

    def scaled(self, beta1: float, beta2: float) -> "ChannelParams":
        """Same gains with powers scaled to (beta1*p1, beta2*p2)."""
        b1 = _unit_interval("beta1", beta1)
        b2 = _unit_interval("beta2", beta2)
        return replace(self, p1=b1 * self.p1, p2=b2 * self.p2)


@dataclass(frozen=True)
class TsParams:
    """Time-sharing parameters: slot-1 fraction rho1 and power control."""

    rho1: float
    beta1: float = 1.0
    beta2: float = 1.0

    def __post_init__(self) -> None:
        for name in ("rho1", "beta1", "beta2"):
            object.__setattr__(self, name, _unit_interval(name, getattr(self, name)))

    @property
    def rho2(self) -> float:
        return 1.0 - self.rho1


@dataclass(frozen=True)
class AnParams:
    """Artificial-noise parameters: power control and noise splits."""

    beta1: float = 1.0
    beta2: float = 1.0
    lambda1: float = 0.0
    lambda2: float = 0.0

    def __post_init__(self) -> None:
        for name in ("beta1", "beta2", "lambda1", "lambda2"):
            object.__setattr__(self, name, _unit_interval(name, getattr(self, name)))


# ---------------------------------------------------------------------------
# Pure strategies
# ---------------------------------------------------------------------------


def _pure_margin_1(a1, a2, q1, q2, s1: PureStrategy, s2: PureStrategy):
    """Signed rate margin of pair 1 (signal capacity minus leakage capacity).

    a/q arguments broadcast, so this serves both the scalar API and the
    sweeps.  The backward-phase leakage when both pairs play BW is the
    capacity of the receivers' cross-correlation SNR.
    """
    signal = q1 / (1.0 + a1 * a1 * q2)
    if s1 is FW and s2 is FW:
        leak = a2 * a2 * q1
    elif s1 is FW and s2 is BW:
        leak = a2 * a2 * q1 / (1.0 + q2)
    elif s1 is BW and s2 is FW:
        leak = (a1 * a1 * q2 + a2 * a2 * q1 * q1 + a1 * a1 * a2 * a2 * q1 * q2) / (
            1.0 + q1 + a2 * a2 * q1
        )
    else:
        cross = a2 * q1 + a1 * q2
        leak = cross * cross / (
            1.0
            + (1.0 + a2 * a2) * q1
            + (1.0 + a1 * a1) * q2
            + (1.0 - a1 * a2) ** 2 * q1 * q2
        )
    return _cap(signal) - _cap(leak)


def pure_strategy_margins(
    ch: ChannelParams, s1: PureStrategy, s2: PureStrategy
) -> tuple[float, float]:
    """Signed margins (before clamping) whose positive parts are the rates.

    Equilibrium analysis compares these margins: when both of a player's
    candidate rates clamp to zero, the margins still order the
    strategies by leakage, which is what the best-response conditions
    are about.
    """
    s1, s2 = PureStrategy(s1), PureStrategy(s2)
    u1 = _pure_margin_1(ch.alpha1, ch.alpha2, ch.p1, ch.p2, s1, s2)
    u2 = _pure_margin_1(ch.alpha2, ch.alpha1, ch.p2, ch.p1, s2, s1)
    return float(u1), float(u2)


def pure_rates(ch: ChannelParams, s1: PureStrategy, s2: PureStrategy) -> RatePair:
    """Achievable rate pair of a pure-strategy profile."""
    u1, u2 = pure_strategy_margins(ch, s1, s2)
    return RatePair(max(u1, 0.0), max(u2, 0.0))


# ---------------------------------------------------------------------------
# Time sharing
# ---------------------------------------------------------------------------


def _ts_rates(a1, a2, q1, q2, rho1):
    """Vectorized time-sharing rates at effective powers q = beta*p."""
    slot1_r1 = _pure_margin_1(a1, a2, q1, q2, FW, BW)
    slot2_r1 = _pure_margin_1(a1, a2, q1, q2, BW, FW)
    slot1_r2 = _pure_margin_1(a2, a1, q2, q1, BW, FW)
    slot2_r2 = _pure_margin_1(a2, a1, q2, q1, FW, BW)
    rho2 = 1.0 - rho1
    r1 = rho1 * np.maximum(slot1_r1, 0.0) + rho2 * np.maximum(slot2_r1, 0.0)
    r2 = rho1 * np.maximum(slot1_r2, 0.0) + rho2 * np.maximum(slot2_r2, 0.0)
    return r1, r2


def time_sharing_rates(ch: ChannelParams, ts: TsParams) -> RatePair:
    """Achievable rates for two-slot time sharing with power control."""
    q1, q2 = ts.beta1 * ch.p1, ts.beta2 * ch.p2
    r1, r2 = _ts_rates(ch.alpha1, ch.alpha2, q1, q2, ts.rho1)
    return RatePair(float(r1), float(r2))


# ---------------------------------------------------------------------------
# Artificial noise
# ---------------------------------------------------------------------------


def _an_brackets(a1, a2, q1, q2, l1, l2):
    """The four signed brackets of the artificial-noise rates.

    Returns (fwd1, bwd1, fwd2, bwd2): pair i's forward-phase and
    backward-phase margins.  The achievable rate of pair i is
    [fwd_i]+ + [bwd_i]+.
    """
    den1 = 1.0 + a2 * a2 * l1 * q1 + l2 * q2
    fwd1 = _cap((1.0 - l1) * q1 / (1.0 + a1 * a1 * q2 + l1 * q1)) - _cap(
        (1.0 - l1) * a2 * a2 * q1 / den1
    )
    bwd1 = _cap(
        ((1.0 - a1 * a2) ** 2 * l1 * l2 * q1 * q2 + a1 * a1 * l2 * q2 + l1 * q1) / den1
    ) - _cap(a1 * a1 * q2)
    den2 = 1.0 + a1 * a1 * l2 * q2 + l1 * q1
    fwd2 = _cap((1.0 - l2) * q2 / (1.0 + a2 * a2 * q1 + l2 * q2)) - _cap(
        (1.0 - l2) * a1 * a1 * q2 / den2
    )
    bwd2 = _cap(
        ((1.0 - a1 * a2) ** 2 * l1 * l2 * q1 * q2 + a2 * a2 * l1 * q1 + l2 * q2) / den2
    ) - _cap(a2 * a2 * q1)
    return fwd1, bwd1, fwd2, bwd2


def artificial_noise_brackets(
    ch: ChannelParams, an: AnParams
) -> tuple[float, float, float, float]:
    """Signed (fwd1, bwd1, fwd2, bwd2) brackets for one parameter point."""
    q1, q2 = an.beta1 * ch.p1, an.beta2 * ch.p2
    f1, b1, f2, b2 = _an_brackets(ch.alpha1, ch.alpha2, q1, q2, an.lambda1, an.lambda2)
    return float(f1), float(b1), float(f2), float(b2)


def artificial_noise_rates(ch: ChannelParams, an: AnParams) -> RatePair:
    """Achievable rates when both transmitters jam with split power."""
    f1, b1, f2, b2 = artificial_noise_brackets(ch, an)
    return RatePair(max(f1, 0.0) + max(b1, 0.0), max(f2, 0.0) + max(b2, 0.0))


# ---------------------------------------------------------------------------
# Pareto frontier and hull geometry
# ---------------------------------------------------------------------------


def pareto_mask(r1: np.ndarray, r2: np.ndarray, tol: float = DEDUP_TOL) -> np.ndarray:
    """Boolean mask of Pareto-maximal points.

    Points are merged on a ``tol`` grid first, so ties within ``tol``
    share one representative; a point is kept iff no other point is at
    least as good in both coordinates and strictly better (beyond
    ``tol``) in one.
    """
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    if r1.shape != r2.shape or r1.ndim != 1:
        raise DomainError("r1 and r2 must be 1-d arrays of equal length")
    if r1.size == 0:
        return np.zeros(0, dtype=bool)
    decimals = max(0, int(round(-math.log10(tol))))
    key = np.column_stack([np.round(r1, decimals), np.round(r2, decimals)])
    uniq, inverse = np.unique(key, axis=0, return_inverse=True)
    rev = uniq[::-1]  # descending in r1, then descending in r2
    r1u, r2u = rev[:, 0], rev[:, 1]
    group_start = np.concatenate([[True], r1u[1:] != r1u[:-1]])
    top_idx = np.flatnonzero(group_start)
    top_r2 = r2u[top_idx]
    prev_best = np.concatenate([[-np.inf], np.maximum.accumulate(top_r2)[:-1]])
    keep_rev = np.zeros(len(rev), dtype=bool)
    keep_rev[top_idx[top_r2 > prev_best]] = True
    keep = keep_rev[::-1]
    return keep[inverse.reshape(-1)]


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: np.ndarray) -> np.ndarray:
    """Convex hull of 2-d points, counterclockwise (monotone chain)."""
    pts = np.unique(np.asarray(points, dtype=float), axis=0)
    if len(pts) <= 2:
        return pts
    pts_list = [tuple(p) for p in pts]
    lower: list[tuple[float, float]] = []
    for p in pts_list:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0.0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts_list):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0.0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return np.asarray(hull, dtype=float)


def region_hull(r1: np.ndarray, r2: np.ndarray) -> np.ndarray:
    """Hull of the sampled points augmented with the axis anchors.

    Anchors (0,0), (max r1, 0) and (0, max r2) make the hull the full
    time-shared achievable region.  Only Pareto-maximal samples can be
    hull vertices besides the anchors, so the hull is built from the
    frontier subset.
    """
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    if r1.size == 0:
        raise DomainError("cannot build a hull from zero points")
    mask = pareto_mask(r1, r2)
    anchors = np.array(
        [[0.0, 0.0], [float(r1.max()), 0.0], [0.0, float(r2.max())]]
    )
    pts = np.vstack([anchors, np.column_stack([r1[mask], r2[mask]])])
    return convex_hull(pts)


def hull_support(hull: np.ndarray, directions: np.ndarray) -> np.ndarray:
    """Support function max_v <v, d> of the hull for each direction row."""
    hull = np.asarray(hull, dtype=float)
    return (np.asarray(directions, dtype=float) @ hull.T).max(axis=1)


def _ray_directions(n: int) -> np.ndarray:
    theta = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    return np.column_stack([np.cos(theta), np.sin(theta)])


def hull_contains(
    outer: np.ndarray,
    inner: np.ndarray,
    n_directions: int = 64,
    slack: float = 1e-9,
) -> bool:
    """True when the outer hull's support dominates the inner's.

    Checked on ``n_directions`` ray directions; for convex sets this is
    the sampled version of containment.
    """
    dirs = _ray_directions(n_directions)
    return bool(
        np.all(hull_support(outer, dirs) >= hull_support(inner, dirs) - slack)
    )


def points_in_hull(
    hull: np.ndarray, points: np.ndarray, tol: float = 1e-9
) -> np.ndarray:
    """Mask of points inside/on a CCW hull, within distance ``tol``."""
    hull = np.asarray(hull, dtype=float)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if len(hull) == 1:
        return np.linalg.norm(pts - hull[0], axis=1) <= tol
    inside = np.ones(len(pts), dtype=bool)
    edges = zip(hull, np.roll(hull, -1, axis=0)) if len(hull) > 2 else [(hull[0], hull[1])]
    for v0, v1 in edges:
        edge = v1 - v0
        norm = float(np.hypot(*edge))
        if norm == 0.0:
            continue
        cross = edge[0] * (pts[:, 1] - v0[1]) - edge[1] * (pts[:, 0] - v0[0])
        if len(hull) == 2:
            inside &= np.abs(cross) / norm <= tol
        else:
            inside &= cross / norm >= -tol
    return inside


# ---------------------------------------------------------------------------
# Parameter sweeps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegionSample:
    """A swept scheme: evaluated points, Pareto frontier, region hull.

    ``params`` maps column names (rho1, beta1, beta2, lambda1, lambda2,
    s1, s2) to per-point arrays; schemes omit the columns they do not
    use.  ``frontier_mask`` flags points whose rate pair is
    Pareto-maximal; ``hull`` is the CCW vertex list of the augmented
    upper-right hull.
    """

    scheme: str
    params: Mapping[str, np.ndarray]
    r1: np.ndarray
    r2: np.ndarray
    frontier_mask: np.ndarray
    hull: np.ndarray

    @property
    def n_points(self) -> int:
        return int(self.r1.size)

    def iter_points(self):
        """Yield (parameter-record, RatePair) per evaluated point."""
        keys = tuple(self.params)
        for i in range(self.n_points):
            record = {k: self.params[k][i] for k in keys}
            yield record, RatePair(float(self.r1[i]), float(self.r2[i]))

    @property
    def frontier(self) -> np.ndarray:
        """(k, 2) array of the Pareto-maximal rate pairs."""
        return np.column_stack([self.r1[self.frontier_mask], self.r2[self.frontier_mask]])

    @property
    def max_rates(self) -> tuple[float, float]:
        return float(self.r1.max()), float(self.r2.max())


def _axis(n_points: int, fixed: float | None, name: str) -> np.ndarray:
    if fixed is not None:
        return np.array([_unit_interval(name, fixed)])
    if n_points < 2:
        raise DomainError(f"{name} grid needs at least 2 points, got {n_points}")
    return np.linspace(0.0, 1.0, n_points)


def sweep_region(
    ch: ChannelParams,
    scheme: str,
    *,
    rho_grid: int = 41,
    beta_grid: int = 41,
    lambda_grid: int = 41,
    beta1: float | None = None,
    beta2: float | None = None,
    max_evals: int = MAX_SWEEP_EVALS,
) -> RegionSample:
    """Evaluate a scheme on its parameter grid and extract the region.

    ``scheme`` is one of pure / ts / an.  Continuous parameters sweep a
    uniform grid over [0, 1]; passing ``beta1``/``beta2`` pins that
    parameter instead of sweeping it.  The pure scheme sweeps nothing
    (four profiles, betas default to 1).
    """
    if scheme == "pure":
        b1 = 1.0 if beta1 is None else beta1
        b2 = 1.0 if beta2 is None else beta2
        scaled = ch.scaled(b1, b2)
        rates = [pure_rates(scaled, s1, s2) for s1, s2 in PROFILES]
        r1 = np.array([rp.r1 for rp in rates])
        r2 = np.array([rp.r2 for rp in rates])
        params = {
            "beta1": np.full(4, b1),
            "beta2": np.full(4, b2),
            "s1": np.array([s1.value for s1, _ in PROFILES]),
            "s2": np.array([s2.value for _, s2 in PROFILES]),
        }
    elif scheme == "ts":
        rho_axis = _axis(rho_grid, None, "rho1")
        b1_axis = _axis(beta_grid, beta1, "beta1")
        b2_axis = _axis(beta_grid, beta2, "beta2")
        n = rho_axis.size * b1_axis.size * b2_axis.size
        if n > max_evals:
            raise ResourceError(f"ts sweep needs {n} evaluations, cap is {max_evals}")
        rho, b1, b2 = np.meshgrid(rho_axis, b1_axis, b2_axis, indexing="ij")
        rho, b1, b2 = rho.ravel(), b1.ravel(), b2.ravel()
        r1, r2 = _ts_rates(ch.alpha1, ch.alpha2, b1 * ch.p1, b2 * ch.p2, rho)
        params = {"rho1": rho, "beta1": b1, "beta2": b2}
    elif scheme == "an":
        b1_axis = _axis(beta_grid, beta1, "beta1")
        b2_axis = _axis(beta_grid, beta2, "beta2")
        l1_axis = _axis(lambda_grid, None, "lambda1")
        l2_axis = _axis(lambda_grid, None, "lambda2")
        n = b1_axis.size * b2_axis.size * l1_axis.size * l2_axis.size
        if n > max_evals:
            raise ResourceError(f"an sweep needs {n} evaluations, cap is {max_evals}")
        b1, b2, l1, l2 = np.meshgrid(b1_axis, b2_axis, l1_axis, l2_axis, indexing="ij")
        b1, b2, l1, l2 = b1.ravel(), b2.ravel(), l1.ravel(), l2.ravel()
        f1, bk1, f2, bk2 = _an_brackets(
            ch.alpha1, ch.alpha2, b1 * ch.p1, b2 * ch.p2, l1, l2
        )
        r1 = np.maximum(f1, 0.0) + np.maximum(bk1, 0.0)
        r2 = np.maximum(f2, 0.0) + np.maximum(bk2, 0.0)
        params = {"beta1": b1, "beta2": b2, "lambda1": l1, "lambda2": l2}
    else:
        raise DomainError(f"unknown scheme {scheme!r} (expected pure, ts or an)")

    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    mask = pareto_mask(r1, r2)
    hull = region_hull(r1, r2)
    return RegionSample(
        scheme=scheme, params=params, r1=r1, r2=r2, frontier_mask=mask, hull=hull
    )
