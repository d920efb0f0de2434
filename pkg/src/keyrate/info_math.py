"""Exact information measures on small discrete distributions.

Everything operates on dense joint probability tables with named axes.
Entropies and mutual informations are computed by direct summation in
base 2 (bits), with 0*log 0 taken as 0 by skipping zero cells.  There is
no estimation or sampling anywhere in this module; results are exact up
to float rounding.

All functions are pure and operate on immutable inputs, so they are safe
to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "JointPmf",
    "capacity",
    "entropy",
    "marginalize",
    "mutual_information",
    "pos_part",
]

# Absolute tolerance for "probabilities sum to one".
SUM_TOL = 1e-12
# Rounding may push a true-zero mutual information slightly negative;
# anything below this is a real bug, not rounding.
NEG_MI_TOL = 1e-10

_LN2 = math.log(2.0)


def capacity(x: float) -> float:
    """Gaussian capacity C(x) = 0.5*log2(1+x) in bits for SNR x >= 0.

    Uses log1p so small arguments keep full relative accuracy.
    """
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"capacity requires a finite x >= 0, got {x!r}")
    return 0.5 * math.log1p(x) / _LN2


def pos_part(x: float) -> float:
    """max(x, 0), the positive part of a rate expression."""
    return x if x > 0.0 else 0.0


@dataclass(frozen=True)
class JointPmf:
    """Dense joint distribution over named finite-alphabet variables.

    ``probabilities`` has one axis per entry of ``variable_names``; axis
    length is that variable's alphabet size.  Entries must be
    nonnegative and sum to 1 within ``SUM_TOL``.
    """

    variable_names: tuple[str, ...]
    probabilities: np.ndarray

    def __post_init__(self) -> None:
        names = tuple(self.variable_names)
        table = np.asarray(self.probabilities, dtype=float)
        object.__setattr__(self, "variable_names", names)
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate variable names in {names}")
        if table.ndim != len(names):
            raise DomainError(
                f"{len(names)} variable names but table has {table.ndim} axes"
            )
        if not np.all(np.isfinite(table)):
            raise DomainError("probabilities must be finite")
        if np.any(table < 0.0):
            raise DomainError("probabilities must be nonnegative")
        total = float(table.sum())
        if abs(total - 1.0) > SUM_TOL:
            raise DomainError(
                f"probabilities sum to {total!r}, expected 1 within {SUM_TOL}"
            )
        table = table.copy()
        table.flags.writeable = False
        object.__setattr__(self, "probabilities", table)

    @property
    def alphabet_sizes(self) -> tuple[int, ...]:
        return self.probabilities.shape

    def axes_of(self, labels: Sequence[str]) -> tuple[int, ...]:
        """Axis indices for the given variable labels (original order kept)."""
        positions = {name: i for i, name in enumerate(self.variable_names)}
        missing = [lab for lab in labels if lab not in positions]
        if missing:
            raise DomainError(f"unknown variable labels {missing}")
        return tuple(positions[lab] for lab in labels)


def _as_labels(subset: str | Iterable[str]) -> tuple[str, ...]:
    if isinstance(subset, str):
        return (subset,)
    return tuple(subset)


def marginalize(p: JointPmf, keep: str | Iterable[str]) -> JointPmf:
    """Sum out every variable not in ``keep``.

    ``keep`` must be a nonempty subset of p's variables; the result keeps
    the variables in their original order.
    """
    labels = _as_labels(keep)
    if not labels:
        raise DomainError("keep must name at least one variable")
    if len(set(labels)) != len(labels):
        raise DomainError(f"duplicate labels in keep: {labels}")
    keep_axes = set(p.axes_of(labels))
    drop = tuple(i for i in range(p.probabilities.ndim) if i not in keep_axes)
    table = p.probabilities.sum(axis=drop) if drop else p.probabilities
    kept_names = tuple(n for i, n in enumerate(p.variable_names) if i in keep_axes)
    return JointPmf(kept_names, table)


def _entropy_bits(table: np.ndarray) -> float:
    flat = np.asarray(table, dtype=float).ravel()
    nz = flat[flat > 0.0]
    return float(-(nz * np.log2(nz)).sum())


def entropy(p: JointPmf, subset: str | Iterable[str] | None = None) -> float:
    """Shannon entropy H(subset) in bits; whole joint when subset is None."""
    if subset is None:
        return _entropy_bits(p.probabilities)
    labels = _as_labels(subset)
    if not labels:
        return 0.0
    return _entropy_bits(marginalize(p, labels).probabilities)


def mutual_information(
    p: JointPmf,
    a: str | Iterable[str],
    b: str | Iterable[str],
    c: str | Iterable[str] = (),
) -> float:
    """Conditional mutual information I(A;B|C) in bits.

    A and B must be nonempty; A, B, C pairwise disjoint.  Computed as
    H(A,C) + H(B,C) - H(A,B,C) - H(C) and clamped to zero on return;
    values below -NEG_MI_TOL raise, since they indicate a bug rather
    than rounding.
    """
    a_labels, b_labels, c_labels = _as_labels(a), _as_labels(b), _as_labels(c)
    if not a_labels or not b_labels:
        raise DomainError("A and B must be nonempty")
    for labels in (a_labels, b_labels, c_labels):
        p.axes_of(labels)  # validates existence
    seen: set[str] = set()
    for labels in (a_labels, b_labels, c_labels):
        group = set(labels)
        if len(group) != len(labels) or group & seen:
            raise DomainError(
                f"subsets must be pairwise disjoint, got {a_labels}, {b_labels}, {c_labels}"
            )
        seen |= group
    sizes = dict(zip(p.variable_names, p.alphabet_sizes))
    for labels in (a_labels, b_labels):
        if all(sizes[lab] == 1 for lab in labels):
            return 0.0  # a constant carries no information, exactly
    h_ac = entropy(p, a_labels + c_labels)
    h_bc = entropy(p, b_labels + c_labels)
    h_abc = entropy(p, a_labels + b_labels + c_labels)
    h_c = entropy(p, c_labels) if c_labels else 0.0
    mi = h_ac + h_bc - h_abc - h_c
    if mi < -NEG_MI_TOL:
        raise RuntimeError(
            f"mutual information {mi!r} below -{NEG_MI_TOL}; "
            "this indicates a bug, not rounding"
        )
    return mi if mi > 0.0 else 0.0
