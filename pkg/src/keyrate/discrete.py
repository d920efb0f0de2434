"""Achievable key-rate bounds for the discrete memoryless setting.

The source of common randomness is a two-transmitter/two-receiver
channel p(y1,y2|x1,x2); each transmitter i encodes through an auxiliary
variable ``vif`` (forward phase) and each receiver quantizes its
observation through ``vib`` (backward phase over the public feedback
link).  A :class:`FactoredPmf` holds the eight factors

    p(v1f) p(v2f) p(x1|v1f) p(x2|v2f) p(y1,y2|x1,x2) p(v1b|y1) p(v2b|y2)

and the bound evaluator materializes the dense joint and computes, for
each pair, a forward wiretap term plus a backward source-coding term,
each clamped at zero:

    r1 = [I(v1f;y1) - I(v1f;y2|v2f)]+ + [I(v1b;x1|v1f) - I(v1b;y2,v2f|v1f)]+
    r2 = [I(v2f;y2) - I(v2f;y1|v1f)]+ + [I(v2b;x2|v2f) - I(v2b;y1,v1f|v2f)]+

Pure strategies set the auxiliaries to the channel variables themselves:
forward (FW) means vif = xi with a trivial vib; backward (BW) means a
trivial vif with vib = yi.  ``pure_strategy_rates`` evaluates the four
resulting rate pairs directly from the (x1,x2,y1,y2) marginal, which
gives an independent expression to cross-check the substitutions.

All operations are pure functions on immutable inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .errors import DomainError, ResourceError
from .info_math import JointPmf, SUM_TOL, marginalize, mutual_information, pos_part

__all__ = [
    "FactoredPmf",
    "InnerBoundReport",
    "PureStrategy",
    "RatePair",
    "VARIABLES",
    "apply_pure_substitutions",
    "expand_joint",
    "inner_bound_rates",
    "inner_bound_report",
    "load_factored_pmf",
    "pure_strategy_rates",
]

# Variable order of the expanded joint.
VARIABLES = ("v1f", "v2f", "x1", "x2", "y1", "y2", "v1b", "v2b")

MAX_JOINT_ENTRIES = 10_000_000


class PureStrategy(str, Enum):
    """Pure strategy of one pair: key from the forward or backward phase."""

    FW = "FW"
    BW = "BW"


@dataclass(frozen=True)
class RatePair:
    """Achievable key rates of the two pairs, in bits per channel use."""

    r1: float
    r2: float

    def __post_init__(self) -> None:
        for name, value in (("r1", self.r1), ("r2", self.r2)):
            if not np.isfinite(value) or value < 0.0:
                raise DomainError(f"{name} must be finite and >= 0, got {value!r}")

    def as_tuple(self) -> tuple[float, float]:
        return (self.r1, self.r2)


def _check_distribution(name: str, table: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(table)):
        raise DomainError(f"{name}: entries must be finite")
    if np.any(table < 0.0) or np.any(table > 1.0 + SUM_TOL):
        raise DomainError(f"{name}: entries must lie in [0, 1]")
    return table


def _check_rows_sum_to_one(name: str, table: np.ndarray, row_ndim: int) -> None:
    # Rows are indexed by the first row_ndim axes; each row is a distribution.
    sums = table.sum(axis=tuple(range(row_ndim, table.ndim)))
    bad = np.argwhere(np.abs(sums - 1.0) > SUM_TOL)
    if bad.size:
        row = tuple(int(i) for i in bad[0])
        raise DomainError(
            f"{name}: row {row} sums to {float(sums[tuple(bad[0])])!r}, "
            f"expected 1 within {SUM_TOL}"
        )


@dataclass(frozen=True)
class FactoredPmf:
    """Factored joint source for the two-pair key-agreement problem.

    Index orders: ``p_v1f[v1f]``, ``p_x1_given_v1f[v1f][x1]``,
    ``p_y_given_x[x1][x2][y1][y2]``, ``p_v1b_given_y1[y1][v1b]`` and the
    mirrored tables for pair 2.
    """

    p_v1f: np.ndarray
    p_v2f: np.ndarray
    p_x1_given_v1f: np.ndarray
    p_x2_given_v2f: np.ndarray
    p_y_given_x: np.ndarray
    p_v1b_given_y1: np.ndarray
    p_v2b_given_y2: np.ndarray

    def __post_init__(self) -> None:
        layout = {
            "p_v1f": (self.p_v1f, 1, 0),
            "p_v2f": (self.p_v2f, 1, 0),
            "p_x1_given_v1f": (self.p_x1_given_v1f, 2, 1),
            "p_x2_given_v2f": (self.p_x2_given_v2f, 2, 1),
            "p_y_given_x": (self.p_y_given_x, 4, 2),
            "p_v1b_given_y1": (self.p_v1b_given_y1, 2, 1),
            "p_v2b_given_y2": (self.p_v2b_given_y2, 2, 1),
        }
        for name, (raw, ndim, row_ndim) in layout.items():
            table = np.asarray(raw, dtype=float)
            if table.ndim != ndim:
                raise DomainError(f"{name}: expected {ndim} axes, got {table.ndim}")
            _check_distribution(name, table)
            if row_ndim == 0:
                total = float(table.sum())
                if abs(total - 1.0) > SUM_TOL:
                    raise DomainError(
                        f"{name}: sums to {total!r}, expected 1 within {SUM_TOL}"
                    )
            else:
                _check_rows_sum_to_one(name, table, row_ndim)
            table = table.copy()
            table.flags.writeable = False
            object.__setattr__(self, name, table)
        sizes = self.alphabets
        coupled = {
            "p_x1_given_v1f": (sizes["v1f"], sizes["x1"]),
            "p_x2_given_v2f": (sizes["v2f"], sizes["x2"]),
            "p_y_given_x": (sizes["x1"], sizes["x2"], sizes["y1"], sizes["y2"]),
            "p_v1b_given_y1": (sizes["y1"], sizes["v1b"]),
            "p_v2b_given_y2": (sizes["y2"], sizes["v2b"]),
        }
        for name, shape in coupled.items():
            actual = getattr(self, name).shape
            if actual != shape:
                raise DomainError(f"{name}: shape {actual} inconsistent with {shape}")

    @property
    def alphabets(self) -> dict[str, int]:
        return {
            "v1f": self.p_v1f.shape[0],
            "v2f": self.p_v2f.shape[0],
            "x1": self.p_x1_given_v1f.shape[1],
            "x2": self.p_x2_given_v2f.shape[1],
            "y1": self.p_y_given_x.shape[2],
            "y2": self.p_y_given_x.shape[3],
            "v1b": self.p_v1b_given_y1.shape[1],
            "v2b": self.p_v2b_given_y2.shape[1],
        }

    @property
    def forward_only(self) -> bool:
        """True when both backward auxiliaries are trivial (size-1)."""
        return self.p_v1b_given_y1.shape[1] == 1 and self.p_v2b_given_y2.shape[1] == 1

    def input_marginals(self) -> tuple[np.ndarray, np.ndarray]:
        """Induced channel-input distributions p(x1), p(x2)."""
        return self.p_v1f @ self.p_x1_given_v1f, self.p_v2f @ self.p_x2_given_v2f

    def to_dict(self) -> dict:
        sizes = self.alphabets
        return {
            "alphabets": {k: int(v) for k, v in sizes.items()},
            "p_v1f": self.p_v1f.tolist(),
            "p_v2f": self.p_v2f.tolist(),
            "p_x1_given_v1f": self.p_x1_given_v1f.tolist(),
            "p_x2_given_v2f": self.p_x2_given_v2f.tolist(),
            "p_y_given_x": self.p_y_given_x.tolist(),
            "p_v1b_given_y1": self.p_v1b_given_y1.tolist(),
            "p_v2b_given_y2": self.p_v2b_given_y2.tolist(),
        }


_FACTOR_KEYS = (
    "p_v1f",
    "p_v2f",
    "p_x1_given_v1f",
    "p_x2_given_v2f",
    "p_y_given_x",
    "p_v1b_given_y1",
    "p_v2b_given_y2",
)


def load_factored_pmf(source: str | Path | dict) -> FactoredPmf:
    """Build a FactoredPmf from a JSON file path or an already-parsed dict.

    The document must carry one nested array per factor (row-major, index
    orders as documented on :class:`FactoredPmf`) and may carry an
    ``alphabets`` object, which is cross-checked when present.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise DomainError(f"malformed JSON in {source}: {exc}") from exc
    else:
        doc = source
    if not isinstance(doc, dict):
        raise DomainError("factored-pmf document must be a JSON object")
    missing = [k for k in _FACTOR_KEYS if k not in doc]
    if missing:
        raise DomainError(f"factored-pmf document missing factors {missing}")
    tables = {}
    for key in _FACTOR_KEYS:
        try:
            tables[key] = np.asarray(doc[key], dtype=float)
        except (TypeError, ValueError) as exc:
            raise DomainError(f"{key}: not a numeric array ({exc})") from exc
    f = FactoredPmf(**tables)
    declared = doc.get("alphabets")
    if declared is not None:
        actual = f.alphabets
        for var, size in declared.items():
            if var not in actual:
                raise DomainError(f"alphabets: unknown variable {var!r}")
            if int(size) != actual[var]:
                raise DomainError(
                    f"alphabets: {var} declared {size}, tables imply {actual[var]}"
                )
    return f


def expand_joint(f: FactoredPmf, max_entries: int = MAX_JOINT_ENTRIES) -> JointPmf:
    """Materialize the dense joint over (v1f, v2f, x1, x2, y1, y2, v1b, v2b)."""
    sizes = f.alphabets
    n_entries = 1
    for var in VARIABLES:
        n_entries *= sizes[var]
    if n_entries > max_entries:
        raise ResourceError(
            f"joint would need {n_entries} entries, cap is {max_entries}"
        )
    table = np.einsum(
        "a,b,ac,bd,cdef,eg,fh->abcdefgh",
        f.p_v1f,
        f.p_v2f,
        f.p_x1_given_v1f,
        f.p_x2_given_v2f,
        f.p_y_given_x,
        f.p_v1b_given_y1,
        f.p_v2b_given_y2,
        optimize=True,
    )
    total = float(table.sum())
    if abs(total - 1.0) > 1e-10:
        raise RuntimeError(f"expanded joint sums to {total!r}")
    # Renormalization is safe: the factors individually sum to one, so any
    # deviation here is accumulated rounding within the 1e-10 check above.
    return JointPmf(VARIABLES, table / total)


@dataclass(frozen=True)
class InnerBoundReport:
    """Rate pair plus the eight mutual-information terms behind it."""

    rates: RatePair
    i_v1f_y1: float
    i_v1f_y2_given_v2f: float
    i_v1b_x1_given_v1f: float
    i_v1b_y2v2f_given_v1f: float
    i_v2f_y2: float
    i_v2f_y1_given_v1f: float
    i_v2b_x2_given_v2f: float
    i_v2b_y1v1f_given_v2f: float
    forward_rate_1: float
    backward_rate_1: float
    forward_rate_2: float
    backward_rate_2: float
    forward_only: bool

    def terms(self) -> dict[str, float]:
        return {
            "i_v1f_y1": self.i_v1f_y1,
            "i_v1f_y2_given_v2f": self.i_v1f_y2_given_v2f,
            "i_v1b_x1_given_v1f": self.i_v1b_x1_given_v1f,
            "i_v1b_y2v2f_given_v1f": self.i_v1b_y2v2f_given_v1f,
            "i_v2f_y2": self.i_v2f_y2,
            "i_v2f_y1_given_v1f": self.i_v2f_y1_given_v1f,
            "i_v2b_x2_given_v2f": self.i_v2b_x2_given_v2f,
            "i_v2b_y1v1f_given_v2f": self.i_v2b_y1v1f_given_v2f,
        }


def inner_bound_report(f: FactoredPmf, max_entries: int = MAX_JOINT_ENTRIES) -> InnerBoundReport:
    """Evaluate the two-phase achievable rates and expose every MI term."""
    joint = expand_joint(f, max_entries)
    mi = lambda a, b, c=(): mutual_information(joint, a, b, c)
    i_f1 = mi("v1f", "y1")
    l_f1 = mi("v1f", "y2", "v2f")
    i_b1 = mi("v1b", "x1", "v1f")
    l_b1 = mi("v1b", ("y2", "v2f"), "v1f")
    i_f2 = mi("v2f", "y2")
    l_f2 = mi("v2f", "y1", "v1f")
    i_b2 = mi("v2b", "x2", "v2f")
    l_b2 = mi("v2b", ("y1", "v1f"), "v2f")
    fwd1 = pos_part(i_f1 - l_f1)
    bwd1 = pos_part(i_b1 - l_b1)
    fwd2 = pos_part(i_f2 - l_f2)
    bwd2 = pos_part(i_b2 - l_b2)
    return InnerBoundReport(
        rates=RatePair(fwd1 + bwd1, fwd2 + bwd2),
        i_v1f_y1=i_f1,
        i_v1f_y2_given_v2f=l_f1,
        i_v1b_x1_given_v1f=i_b1,
        i_v1b_y2v2f_given_v1f=l_b1,
        i_v2f_y2=i_f2,
        i_v2f_y1_given_v1f=l_f2,
        i_v2b_x2_given_v2f=i_b2,
        i_v2b_y1v1f_given_v2f=l_b2,
        forward_rate_1=fwd1,
        backward_rate_1=bwd1,
        forward_rate_2=fwd2,
        backward_rate_2=bwd2,
        forward_only=f.forward_only,
    )


def inner_bound_rates(f: FactoredPmf, max_entries: int = MAX_JOINT_ENTRIES) -> RatePair:
    """Achievable (r1, r2) for the factored source f."""
    return inner_bound_report(f, max_entries).rates


def pure_strategy_rates(
    f: FactoredPmf, s1: PureStrategy, s2: PureStrategy
) -> RatePair:
    """Rate pair of a pure-strategy profile, from the channel marginal.

    Evaluates the per-profile expressions directly on the induced
    (x1, x2, y1, y2) distribution; with the eavesdropper-side variables
    joined rather than conditioned where the two coincide for
    independent inputs.  Serves as the cross-check for
    :func:`apply_pure_substitutions`.
    """
    s1, s2 = PureStrategy(s1), PureStrategy(s2)
    joint = marginalize(expand_joint(f), ("x1", "x2", "y1", "y2"))
    mi = lambda a, b: mutual_information(joint, a, b)
    eav2 = ("y2", "x2") if s2 is PureStrategy.FW else ("y2",)
    eav1 = ("y1", "x1") if s1 is PureStrategy.FW else ("y1",)
    own1 = "x1" if s1 is PureStrategy.FW else "y1"
    own2 = "x2" if s2 is PureStrategy.FW else "y2"
    u1 = mi("x1", "y1") - mi(own1, eav2)
    u2 = mi("x2", "y2") - mi(own2, eav1)
    return RatePair(pos_part(u1), pos_part(u2))


def _identity_conditional(n: int) -> np.ndarray:
    return np.eye(n)


def _trivial_conditional(n_rows: int) -> np.ndarray:
    return np.ones((n_rows, 1))


def apply_pure_substitutions(
    f: FactoredPmf, s1: PureStrategy, s2: PureStrategy
) -> FactoredPmf:
    """Rewrite f so each pair's auxiliaries encode its pure strategy.

    Keeps the induced input distributions p(x1), p(x2) and the channel,
    and replaces the auxiliaries: FW for pair i sets vif = xi with a
    trivial vib; BW sets a trivial vif (xi drawn from its marginal) with
    vib = yi.
    """
    s1, s2 = PureStrategy(s1), PureStrategy(s2)
    px1, px2 = f.input_marginals()
    n_y1 = f.p_y_given_x.shape[2]
    n_y2 = f.p_y_given_x.shape[3]
    if s1 is PureStrategy.FW:
        p_v1f, p_x1g = px1, _identity_conditional(px1.size)
        p_v1bg = _trivial_conditional(n_y1)
    else:
        p_v1f, p_x1g = np.array([1.0]), px1[None, :]
        p_v1bg = _identity_conditional(n_y1)
    if s2 is PureStrategy.FW:
        p_v2f, p_x2g = px2, _identity_conditional(px2.size)
        p_v2bg = _trivial_conditional(n_y2)
    else:
        p_v2f, p_x2g = np.array([1.0]), px2[None, :]
        p_v2bg = _identity_conditional(n_y2)
    return FactoredPmf(
        p_v1f=p_v1f,
        p_v2f=p_v2f,
        p_x1_given_v1f=p_x1g,
        p_x2_given_v2f=p_x2g,
        p_y_given_x=f.p_y_given_x,
        p_v1b_given_y1=p_v1bg,
        p_v2b_given_y2=p_v2bg,
    )
