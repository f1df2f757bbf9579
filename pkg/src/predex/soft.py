"""Two-sided soft Boolean algebra.

Soft truth values live in log space as a pair ``(log_a0, log_a1)``: ``log_a1``
grades how close the inputs are to satisfying a predicate and ``log_a0`` how
close they are to satisfying its negation. A side equals ``0.0`` exactly when
the corresponding hard predicate holds, at every temperature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real
from typing import Sequence, Union

GODEL = "godel"
PRODUCT = "product"
TNORMS = (GODEL, PRODUCT)

NEG_INF = -math.inf
_TINY = math.ulp(0.0)


class SoftDomainError(ValueError):
    """Raised for arguments outside an operation's domain."""


@dataclass(frozen=True)
class SoftBool:
    log_a0: float
    log_a1: float

    def __post_init__(self):
        if not (self.log_a0 <= 0.0 and self.log_a1 <= 0.0):
            raise SoftDomainError(f"soft truth values must be <= 0 in log space, got {self}")

    @property
    def a0(self) -> float:
        return math.exp(self.log_a0)

    @property
    def a1(self) -> float:
        return math.exp(self.log_a1)

    @property
    def satisfied(self) -> bool:
        """True iff the underlying hard predicate holds."""
        return self.log_a1 == 0.0

    @classmethod
    def from_probs(cls, a0: float, a1: float) -> "SoftBool":
        return cls(_log(a0), _log(a1))

    # Operators resolve the t-norm from the active execution, if any.
    def __and__(self, other):
        from .trace import current_tnorm

        return soft_and(self, _coerce(other), current_tnorm())

    __rand__ = __and__

    def __or__(self, other):
        from .trace import current_tnorm

        return soft_or(self, _coerce(other), current_tnorm())

    __ror__ = __or__

    def __invert__(self):
        return soft_neg(self)

    def __bool__(self):
        raise TypeError(
            "SoftBool has no hard truth value; use .satisfied or pass it to cond()"
        )


def _log(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise SoftDomainError(f"probability outside [0, 1]: {p}")
    return math.log(p) if p > 0.0 else NEG_INF


def _coerce(c) -> SoftBool:
    if isinstance(c, SoftBool):
        return c
    if isinstance(c, (bool, int)) and c in (0, 1):
        return lift(bool(c))
    raise TypeError(f"cannot interpret {c!r} as a soft Boolean")


TRUE = SoftBool(NEG_INF, 0.0)
FALSE = SoftBool(0.0, NEG_INF)


def lift(b: bool) -> SoftBool:
    """Embed a hard Boolean."""
    return TRUE if b else FALSE


def _check_alpha(alpha: float) -> None:
    if not (alpha > 0.0 and math.isfinite(alpha)):
        raise SoftDomainError(f"temperature must be positive and finite, got {alpha}")


def kernel(r: float, alpha: float) -> float:
    """Log of the squared exponential kernel, ``-r**2 / alpha``."""
    _check_alpha(alpha)
    if not r >= 0.0:
        raise SoftDomainError(f"distance must be nonnegative, got {r}")
    if r == 0.0:
        return 0.0
    # keep log_a1 == 0 reserved for exact satisfaction even if r*r underflows
    return min(-(r * r) / alpha, -_TINY)


@dataclass(frozen=True)
class Interval:
    lo: float = NEG_INF
    hi: float = math.inf

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise SoftDomainError(f"malformed interval [{self.lo}, {self.hi}]")


def dist_point_interval(x: float, iv: Interval) -> float:
    # written as comparisons so infinite bounds never produce inf - inf
    if x < iv.lo:
        return iv.lo - x
    if x > iv.hi:
        return x - iv.hi
    return 0.0


Value = Union[Real, Sequence["Value"]]


def dist(x: Value, y: Value) -> float:
    """Euclidean distance on scalars; mean of componentwise distances on tuples."""
    x_seq = isinstance(x, (tuple, list))
    y_seq = isinstance(y, (tuple, list))
    if x_seq != y_seq:
        raise SoftDomainError(f"shape mismatch between {x!r} and {y!r}")
    if x_seq:
        if len(x) != len(y):
            raise SoftDomainError(f"arity mismatch: {len(x)} vs {len(y)}")
        if not x:
            raise SoftDomainError("product values need at least one component")
        return math.fsum(dist(a, b) for a, b in zip(x, y)) / len(x)
    if x == y:
        return 0.0
    return abs(float(x) - float(y))


def soft_eq(x: Value, y: Value, alpha: float) -> SoftBool:
    d = dist(x, y)
    log_a1 = kernel(d, alpha)
    log_a0 = -1.0 / alpha if d == 0.0 else 0.0
    return SoftBool(log_a0, log_a1)


def soft_gt(x: float, y: float, alpha: float) -> SoftBool:
    # boundary x == y counts as satisfied on both sides
    return SoftBool(
        kernel(dist_point_interval(x, Interval(NEG_INF, y)), alpha),
        kernel(dist_point_interval(x, Interval(y, math.inf)), alpha),
    )


def soft_lt(x: float, y: float, alpha: float) -> SoftBool:
    return soft_gt(y, x, alpha)


def soft_ge(x: float, y: float, alpha: float) -> SoftBool:
    return soft_gt(x, y, alpha)


def soft_le(x: float, y: float, alpha: float) -> SoftBool:
    return soft_gt(y, x, alpha)


def _check_tnorm(tnorm: str) -> None:
    if tnorm not in TNORMS:
        raise SoftDomainError(f"unknown t-norm {tnorm!r}; expected one of {TNORMS}")


def log_tnorm(la: float, lb: float, tnorm: str = GODEL) -> float:
    """Conjunction of two log-space truth degrees."""
    if tnorm == GODEL:
        return min(la, lb)
    _check_tnorm(tnorm)
    return la + lb


def log_tconorm(la: float, lb: float, tnorm: str = GODEL) -> float:
    """Disjunction dual to :func:`log_tnorm`."""
    if tnorm == GODEL:
        return max(la, lb)
    _check_tnorm(tnorm)
    # probabilistic sum a + b - ab; exact 0 must survive rounding
    if la == 0.0 or lb == 0.0:
        return 0.0
    if la == NEG_INF:
        return lb
    if lb == NEG_INF:
        return la
    s = max(la, lb) + math.log1p(math.exp(-abs(la - lb)))
    return min(s + math.log1p(-math.exp(la + lb - s)), -_TINY)


def soft_and(a: SoftBool, b: SoftBool, tnorm: str = GODEL) -> SoftBool:
    return SoftBool(log_tconorm(a.log_a0, b.log_a0, tnorm), log_tnorm(a.log_a1, b.log_a1, tnorm))


def soft_or(a: SoftBool, b: SoftBool, tnorm: str = GODEL) -> SoftBool:
    return SoftBool(log_tnorm(a.log_a0, b.log_a0, tnorm), log_tconorm(a.log_a1, b.log_a1, tnorm))


def soft_neg(a: SoftBool) -> SoftBool:
    return SoftBool(a.log_a1, a.log_a0)
