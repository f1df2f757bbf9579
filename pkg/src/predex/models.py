"""Built-in models with independent oracles for their conditioned distributions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import integrate, stats

from .erp import Bernoulli, Beta, DiscreteUniform, Normal
from .mcmc import DRIFT, MhStepConfig
from .replica import APPROXIMATE, EXACT, make_ladder
from .trace import Program, cond, conj, disj, eq, gt, lt, neg, rand


@dataclass(frozen=True)
class ModelSpec:
    """A named program plus the sampler settings it is known to work with.

    ``variables`` fixes the column order of sample files. ``predicate`` is the
    unrelaxed condition as a plain function of a trace, used to audit exact
    samples. ``mh_config`` maps a chain temperature to its proposal config.
    """

    name: str
    program: Program
    variables: tuple
    predicate: Callable[[dict], bool]
    mode: str = EXACT
    alpha_lo: float = 1e-5
    alpha_hi: float = 1e5
    chains: int = 8
    swap_every: int = 10
    mh_config: Callable[[float], MhStepConfig] = lambda alpha: MhStepConfig()
    oracle: str = ""
    description: str = ""

    def ladder(self, alpha_lo=None, alpha_hi=None, chains=None) -> list:
        return make_ladder(
            self.alpha_lo if alpha_lo is None else alpha_lo,
            self.alpha_hi if alpha_hi is None else alpha_hi,
            self.chains if chains is None else chains,
        )

    def configs(self, ladder) -> list:
        return [self.mh_config(a) for a in ladder]


# ---- programs ---------------------------------------------------------------


def truncated_gaussian():
    x = rand(Normal(0.0, 1.0), "x")
    cond(conj(gt(x, 0.0), lt(x, 1.0)))
    return x


def equal_normals():
    x = rand(Normal(0.0, 1.0), "x")
    y = rand(Normal(0.0, 1.0), "y")
    cond(eq(x, y))
    return x, y


def beta_normal():
    mu = rand(Beta(3.0, 4.0), "mu")
    x = rand(Normal(mu, 1.0), "x")
    cond(eq(x, 0.5))
    return mu


def dice_sum():
    d1 = rand(DiscreteUniform(1, 6), "d1")
    d2 = rand(DiscreteUniform(1, 6), "d2")
    cond(eq(d1 + d2, 7))
    return d1, d2


def negation_disjunction():
    x = rand(Normal(0.0, 1.0), "x")
    y = rand(Normal(0.0, 1.0), "y")
    cond(disj(gt(x, y), neg(eq(x * x, 2.0))))
    return x, y


def soft_coin():
    b = rand(Bernoulli(0.3), "b")
    cond(eq(b, 1))
    return b


def two_coins():
    c1 = rand(Bernoulli(0.5), "c1")
    c2 = rand(Bernoulli(0.5), "c2")
    return c1, c2


def _drift_below(threshold: float) -> Callable[[float], MhStepConfig]:
    # random-walk width tracks the kernel width sqrt(alpha / 2); hot chains
    # are close enough to the prior that redrawing from it mixes faster
    def cfg(alpha: float) -> MhStepConfig:
        if alpha >= threshold:
            return MhStepConfig()
        return MhStepConfig(DRIFT, math.sqrt(alpha))

    return cfg


REGISTRY: dict[str, ModelSpec] = {}


def register(spec: ModelSpec) -> ModelSpec:
    REGISTRY[spec.name] = spec
    return spec


register(ModelSpec(
    name="truncated_gaussian",
    program=truncated_gaussian,
    variables=("x",),
    predicate=lambda t: 0.0 < t["x"] < 1.0,
    oracle="closed-form truncated normal on [0, 1]",
    description="standard normal conditioned on 0 < x < 1",
))
register(ModelSpec(
    name="equal_normals",
    program=equal_normals,
    variables=("x", "y"),
    predicate=lambda t: t["x"] == t["y"],
    mode=APPROXIMATE,
    alpha_lo=1e-4,
    alpha_hi=10.0,
    chains=16,
    swap_every=1,
    mh_config=_drift_below(1.0),
    oracle="x ~ N(0, 1/2) in the zero-temperature limit",
    description="independent standard normals conditioned on x = y",
))
register(ModelSpec(
    name="beta_normal",
    program=beta_normal,
    variables=("mu", "x"),
    predicate=lambda t: t["x"] == 0.5,
    mode=APPROXIMATE,
    alpha_lo=1e-3,
    alpha_hi=1.0,
    chains=4,
    swap_every=1,
    mh_config=lambda alpha: MhStepConfig(DRIFT, {"x": min(1.0, math.sqrt(alpha))}),
    oracle="quadrature of Beta(mu; 3, 4) N(0.5; mu, 1) over [0, 1]",
    description="mu ~ Beta(3, 4), x ~ N(mu, 1) conditioned on x = 0.5",
))
register(ModelSpec(
    name="dice_sum",
    program=dice_sum,
    variables=("d1", "d2"),
    predicate=lambda t: t["d1"] + t["d2"] == 7,
    alpha_lo=1e2,
    alpha_hi=1e5,
    chains=4,
    swap_every=1,
    oracle="enumeration of the 36 outcomes",
    description="two fair dice conditioned on their sum being 7",
))
register(ModelSpec(
    name="negation_disjunction",
    program=negation_disjunction,
    variables=("x", "y"),
    predicate=lambda t: t["x"] > t["y"] or not t["x"] ** 2 == 2.0,
    oracle="prior N(0, 1) x N(0, 1); the predicate fails only on a null set",
    description="standard normals conditioned on (x > y) or not (x^2 = 2)",
))
register(ModelSpec(
    name="soft_coin",
    program=soft_coin,
    variables=("b",),
    predicate=lambda t: t["b"] == 1,
    mode=APPROXIMATE,
    alpha_lo=1.0,
    alpha_hi=1.0,
    chains=1,
    swap_every=1,
    oracle="enumeration of exp(log f) over b in {0, 1}",
    description="Bernoulli(0.3) softly conditioned on b = 1",
))
register(ModelSpec(
    name="two_coins",
    program=two_coins,
    variables=("c1", "c2"),
    predicate=lambda t: True,
    alpha_lo=1.0,
    alpha_hi=1.0,
    chains=1,
    swap_every=1,
    oracle="uniform over the four outcomes",
    description="two fair coins, no condition",
))


def get_model(name: str) -> ModelSpec:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown model {name!r}; available: {', '.join(REGISTRY)}") from None


# ---- oracles ----------------------------------------------------------------


def truncnorm_cdf(x, lo: float = 0.0, hi: float = 1.0):
    """CDF of a standard normal truncated to ``[lo, hi]``."""
    x = np.clip(np.asarray(x, dtype=float), lo, hi)
    z = stats.norm.cdf(hi) - stats.norm.cdf(lo)
    return (stats.norm.cdf(x) - stats.norm.cdf(lo)) / z


def truncnorm_mean(lo: float = 0.0, hi: float = 1.0) -> float:
    z = stats.norm.cdf(hi) - stats.norm.cdf(lo)
    return float((stats.norm.pdf(lo) - stats.norm.pdf(hi)) / z)


def equal_normals_x_sd(alpha: float = 0.0) -> float:
    """Marginal sd of x under N(x) N(y) exp(-(x - y)^2 / alpha).

    Integrating y out leaves x ~ N(0, v) with 1/v = 1 + 1/(1 + alpha/2).
    ``alpha = 0`` is the disintegration limit, N(0, 1/2).
    """
    return math.sqrt(1.0 / (1.0 + 1.0 / (1.0 + alpha / 2.0)))


_SQRT_2PI = math.sqrt(2.0 * math.pi)


def beta_normal_posterior(bins: int = 50, alpha: Optional[float] = None) -> np.ndarray:
    """Posterior mass of mu in ``bins`` equal bins on [0, 1], by quadrature.

    ``alpha=None`` gives the disintegrated posterior Beta(mu; 3, 4) N(0.5; mu, 1).
    A finite ``alpha`` integrates x against the relaxed likelihood instead.
    """
    prior = stats.beta(3.0, 4.0)
    if alpha is None:
        def dens(mu):
            return prior.pdf(mu) * stats.norm.pdf(0.5, mu, 1.0)
    else:
        def dens(mu):
            w = 40.0 * math.sqrt(alpha)
            lo, hi = max(mu - 12.0, 0.5 - w), min(mu + 12.0, 0.5 + w)
            lik = integrate.quad(
                lambda x: math.exp(-0.5 * (x - mu) ** 2 - (x - 0.5) ** 2 / alpha) / _SQRT_2PI,
                lo, hi, points=[p for p in (0.5, mu) if lo < p < hi],
            )[0]
            return prior.pdf(mu) * lik
    edges = np.linspace(0.0, 1.0, bins + 1)
    mass = np.array([integrate.quad(dens, a, b)[0] for a, b in zip(edges[:-1], edges[1:])])
    return mass / mass.sum()


def dice_posterior() -> dict:
    """Conditional distribution over (d1, d2) given d1 + d2 = 7, by enumeration."""
    hits = [(a, b) for a in range(1, 7) for b in range(1, 7) if a + b == 7]
    return {pair: 1.0 / len(hits) for pair in hits}
