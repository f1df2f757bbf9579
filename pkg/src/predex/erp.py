"""Elementary random primitives.

Every family exposes ``logpdf``, ``sample`` and a ``continuous`` flag. All
randomness goes through :class:`numpy.random.Generator` seeded from a
:class:`numpy.random.SeedSequence` and backed by the PCG64 bit generator, so a
given seed reproduces the same stream on every platform numpy supports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

NEG_INF = -math.inf
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


class ErpError(ValueError):
    """Invalid distribution parameters."""


def make_rng(seed) -> np.random.Generator:
    """Deterministic generator for ``seed`` (an int or a SeedSequence)."""
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return np.random.Generator(np.random.PCG64(ss))


def spawn_rngs(seed, n: int) -> list[np.random.Generator]:
    """Independent substreams of a master seed, one per chain."""
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return [make_rng(child) for child in ss.spawn(n)]


class Erp:
    continuous: bool = True

    def logpdf(self, x) -> float:
        raise NotImplementedError

    def sample(self, rng: np.random.Generator):
        raise NotImplementedError

    def in_support(self, x) -> bool:
        return self.logpdf(x) > NEG_INF


@dataclass(frozen=True)
class Normal(Erp):
    mu: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        if not (self.sigma > 0.0 and math.isfinite(self.sigma) and math.isfinite(self.mu)):
            raise ErpError(f"normal needs finite mu and sigma > 0, got {self}")

    def logpdf(self, x) -> float:
        z = (x - self.mu) / self.sigma
        return -0.5 * z * z - math.log(self.sigma) - _LOG_SQRT_2PI

    def sample(self, rng):
        return float(rng.normal(self.mu, self.sigma))


@dataclass(frozen=True)
class Uniform(Erp):
    lo: float = 0.0
    hi: float = 1.0

    def __post_init__(self):
        if not (self.hi > self.lo and math.isfinite(self.hi - self.lo)):
            raise ErpError(f"uniform needs finite lo < hi, got {self}")

    def logpdf(self, x) -> float:
        if self.lo <= x <= self.hi:
            return -math.log(self.hi - self.lo)
        return NEG_INF

    def sample(self, rng):
        return float(rng.uniform(self.lo, self.hi))


@dataclass(frozen=True)
class Beta(Erp):
    a: float
    b: float

    def __post_init__(self):
        if not (self.a > 0.0 and self.b > 0.0):
            raise ErpError(f"beta needs a > 0 and b > 0, got {self}")

    def logpdf(self, x) -> float:
        if not 0.0 <= x <= 1.0:
            return NEG_INF
        a, b = self.a, self.b
        # endpoints: density is 0, finite or infinite depending on the shape
        if (x == 0.0 and a != 1.0) or (x == 1.0 and b != 1.0):
            edge_shape = a if x == 0.0 else b
            return NEG_INF if edge_shape > 1.0 else math.inf
        lbeta = math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)
        return _xlogy(a - 1.0, x) + _xlogy(b - 1.0, 1.0 - x) - lbeta

    def sample(self, rng):
        return float(rng.beta(self.a, self.b))


def _xlogy(c: float, x: float) -> float:
    # c * log(x) with 0 * log(0) = 0
    if c == 0.0:
        return 0.0
    return c * math.log(x)


@dataclass(frozen=True)
class Bernoulli(Erp):
    p: float = 0.5
    continuous = False

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ErpError(f"bernoulli needs p in [0, 1], got {self}")

    def logpdf(self, x) -> float:
        if x == 1:
            return math.log(self.p) if self.p > 0.0 else NEG_INF
        if x == 0:
            return math.log1p(-self.p) if self.p < 1.0 else NEG_INF
        return NEG_INF

    def sample(self, rng):
        return int(rng.random() < self.p)


@dataclass(frozen=True)
class DiscreteUniform(Erp):
    """Uniform over the integers ``lo, lo + 1, ..., hi``."""

    lo: int
    hi: int
    continuous = False

    def __post_init__(self):
        if not (int(self.lo) == self.lo and int(self.hi) == self.hi and self.hi > self.lo):
            raise ErpError(f"discrete_uniform needs integers lo < hi, got {self}")

    def logpdf(self, x) -> float:
        if self.lo <= x <= self.hi and x == int(x):
            return -math.log(self.hi - self.lo + 1)
        return NEG_INF

    def sample(self, rng):
        return int(rng.integers(self.lo, self.hi, endpoint=True))


normal = Normal
uniform = Uniform
beta = Beta
bernoulli = Bernoulli
discrete_uniform = DiscreteUniform
