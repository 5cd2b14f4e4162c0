"""Hilbert projective metric and T-distance on the nonnegative orthant.

Rays in the orthant are represented by :class:`PositiveVector`; the metric
value lives in :class:`ExtendedDistance`, which keeps "infinite" as an
explicit tag rather than a floating-point ``inf`` so that the non-comparable
branch is always deliberate.

Ratio arithmetic runs in log-space whenever direct division would overflow
or underflow, which keeps the metric usable for weights of magnitude up to
``e**700`` in either direction.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import DimensionError, ValidationError

__all__ = [
    "ExtendedDistance",
    "INFINITE",
    "PositiveVector",
    "SimplexPoint",
    "LogDensityVector",
    "beta",
    "log_beta",
    "hilbert_distance",
    "t_distance",
    "comparable",
    "normalize",
    "theta_seminorm",
    "hilbert_from_log_densities",
]


@dataclass(frozen=True)
class ExtendedDistance:
    """A nonnegative real distance or the distinguished value Infinite."""

    value: float
    infinite: bool = False

    def __post_init__(self) -> None:
        if self.infinite:
            object.__setattr__(self, "value", math.inf)
            return
        v = float(self.value)
        if math.isnan(v) or not math.isfinite(v) or v < 0.0:
            raise ValidationError(f"finite distance must be >= 0 and finite, got {v!r}")
        object.__setattr__(self, "value", v)

    @classmethod
    def finite(cls, value: float) -> "ExtendedDistance":
        return cls(value)

    @property
    def is_finite(self) -> bool:
        return not self.infinite

    def __float__(self) -> float:
        return math.inf if self.infinite else self.value

    def __repr__(self) -> str:
        return "ExtendedDistance.INFINITE" if self.infinite else f"ExtendedDistance({self.value!r})"


INFINITE = ExtendedDistance(0.0, infinite=True)


@dataclass(frozen=True)
class PositiveVector:
    """A ray representative in the nonnegative orthant.

    The support is the exact set ``{i : weights[i] > 0}``; no epsilon is
    applied, so callers who want to treat tiny weights as zero must quantize
    before constructing the vector.
    """

    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        ws = tuple(float(w) for w in self.weights)
        if len(ws) < 2:
            raise ValidationError("vector needs at least 2 components")
        for i, w in enumerate(ws):
            if math.isnan(w) or not math.isfinite(w) or w < 0.0:
                raise ValidationError(f"weight at index {i} must be finite and >= 0, got {w!r}")
        if not any(w > 0.0 for w in ws):
            raise ValidationError("at least one weight must be strictly positive")
        object.__setattr__(self, "weights", ws)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, w in enumerate(self.weights) if w > 0.0)

    @property
    def full_support(self) -> bool:
        return all(w > 0.0 for w in self.weights)

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class SimplexPoint(PositiveVector):
    """A probability vector: nonnegative weights summing to 1 within 1e-12."""

    def __post_init__(self) -> None:
        super().__post_init__()
        total = math.fsum(self.weights)
        if abs(total - 1.0) > 1e-12:
            raise ValidationError(f"weights must sum to 1 within 1e-12, got {total!r}")


@dataclass(frozen=True)
class LogDensityVector:
    """Log of a density w.r.t. the counting reference measure; all entries finite."""

    entries: tuple[float, ...]

    def __post_init__(self) -> None:
        es = tuple(float(e) for e in self.entries)
        if len(es) < 2:
            raise ValidationError("log-density vector needs at least 2 entries")
        for i, e in enumerate(es):
            if not math.isfinite(e):
                raise ValidationError(f"log-density entry at index {i} must be finite, got {e!r}")
        object.__setattr__(self, "entries", es)

    def __len__(self) -> int:
        return len(self.entries)


def _check_lengths(x: PositiveVector, y: PositiveVector) -> None:
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} vs {len(y)}")


def log_beta(x: PositiveVector, y: PositiveVector) -> float | None:
    """log of the smallest r with r*x - y in the cone, or None when no such r exists.

    Finite exactly when support(y) is contained in support(x).
    """
    _check_lengths(x, y)
    if not y.support <= x.support:
        return None
    best: float | None = None
    safe = True
    ratios = []
    for i in sorted(y.support):
        r = y.weights[i] / x.weights[i]
        if r == 0.0 or math.isinf(r):
            safe = False
            break
        ratios.append(r)
    if safe:
        return math.log(max(ratios))
    for i in sorted(y.support):
        d = math.log(y.weights[i]) - math.log(x.weights[i])
        if best is None or d > best:
            best = d
    assert best is not None
    return best


def beta(x: PositiveVector, y: PositiveVector) -> ExtendedDistance:
    """Max ratio y[j]/x[j] over the support of x; Infinite when y escapes it.

    For ratios beyond float range, use :func:`log_beta` directly; this
    function raises OverflowError rather than silently saturating.
    """
    lb = log_beta(x, y)
    if lb is None:
        return INFINITE
    return ExtendedDistance.finite(math.exp(lb))


def _finite_hilbert(xw: Sequence[float], yw: Sequence[float]) -> float:
    """H on a shared strictly-positive support, in ratio space when safe."""
    ratios = []
    for xv, yv in zip(xw, yw):
        r = yv / xv
        if r == 0.0 or math.isinf(r):
            ratios = None
            break
        ratios.append(r)
    if ratios is not None:
        q = max(ratios) / min(ratios)
        if not math.isinf(q):
            return math.log(q)
    logs = [math.log(yv) - math.log(xv) for xv, yv in zip(xw, yw)]
    return max(logs) - min(logs)


def hilbert_distance(x: PositiveVector, y: PositiveVector) -> ExtendedDistance:
    """Hilbert projective distance log(beta(x,y) * beta(y,x)).

    Computed over the common support when the supports agree (vectors that
    vanish on the same indices live on the same face of the cone), Infinite
    otherwise.
    """
    _check_lengths(x, y)
    sup = x.support
    if sup != y.support:
        return INFINITE
    # Canonical operand order makes symmetry exact, not just up to rounding.
    if y.weights < x.weights:
        x, y = y, x
    idx = sorted(sup)
    h = _finite_hilbert([x.weights[i] for i in idx], [y.weights[i] for i in idx])
    return ExtendedDistance.finite(max(h, 0.0))


def t_distance(x: PositiveVector, y: PositiveVector) -> float:
    """tanh(H/4) with tanh(inf) := 1; always in [0, 1]."""
    h = hilbert_distance(x, y)
    if h.infinite:
        return 1.0
    return math.tanh(h.value / 4.0)


def comparable(x: PositiveVector, y: PositiveVector) -> bool:
    """True iff each vector is dominated by a positive multiple of the other."""
    _check_lengths(x, y)
    return x.support == y.support


def normalize(x: PositiveVector) -> SimplexPoint:
    """Scale x to unit total mass."""
    total = math.fsum(x.weights)
    return SimplexPoint(tuple(w / total for w in x.weights))


def theta_seminorm(f: LogDensityVector) -> float:
    """max(entries) - min(entries): the oscillation seminorm on log-densities."""
    return max(f.entries) - min(f.entries)


def hilbert_from_log_densities(f: LogDensityVector, g: LogDensityVector) -> float:
    """H via the oscillation of the log-density difference.

    Agrees with :func:`hilbert_distance` on the exponentiated inputs; additive
    constants (reference-measure changes) cancel.
    """
    if len(f) != len(g):
        raise DimensionError(f"length mismatch: {len(f)} vs {len(g)}")
    diff = [fe - ge for fe, ge in zip(f.entries, g.entries)]
    return max(diff) - min(diff)
