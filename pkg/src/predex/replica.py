"""Replica exchange over a temperature ladder with exact-sample collection."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .erp import spawn_rngs
from .mcmc import MhStepConfig, mh_step
from .soft import GODEL
from .trace import ExecutionResult, Program, softexecute

log = logging.getLogger(__name__)

EXACT = "exact"
APPROXIMATE = "approximate"
MODES = (EXACT, APPROXIMATE)


class ConfigError(ValueError):
    pass


class WatchdogError(RuntimeError):
    """Exact mode stopped making progress."""

    def __init__(self, message: str, result: "ExchangeResult"):
        super().__init__(message)
        self.result = result


def make_ladder(alpha_lo: float, alpha_hi: float, m: int) -> list[float]:
    """``m`` geometrically spaced temperatures from ``alpha_lo`` to ``alpha_hi``."""
    if not (0.0 < alpha_lo <= alpha_hi and math.isfinite(alpha_hi)):
        raise ConfigError(f"need 0 < alpha_lo <= alpha_hi < inf, got {alpha_lo}, {alpha_hi}")
    if int(m) != m or m < 1:
        raise ConfigError(f"ladder needs at least one chain, got m={m}")
    if m == 1:
        return [float(alpha_lo)]
    if alpha_lo == alpha_hi:
        return [float(alpha_lo)] * int(m)
    alphas = [float(a) for a in np.geomspace(alpha_lo, alpha_hi, int(m))]
    alphas[0], alphas[-1] = float(alpha_lo), float(alpha_hi)
    return alphas


def swap_log_accept(ii: float, ij: float, ji: float, jj: float) -> float:
    """Log acceptance probability for exchanging the states of chains i and j.

    Arguments are ``log f_{alpha_i}(D_i)``, ``log f_{alpha_i}(D_j)``,
    ``log f_{alpha_j}(D_i)`` and ``log f_{alpha_j}(D_j)``.
    """
    proposed = ij + ji
    current = ii + jj
    if math.isnan(proposed) or proposed == -math.inf:
        return -math.inf
    if math.isnan(current) or current == -math.inf:
        return 0.0
    return min(0.0, proposed - current)


@dataclass
class Sample:
    trace: dict
    alpha: float
    chain: int
    sweep: int
    return_value: object = None


@dataclass
class ExchangeResult:
    samples: list
    ladder: list
    sweeps: int = 0
    mh_proposed: list = field(default_factory=list)
    mh_accepted: list = field(default_factory=list)
    swap_attempts: list = field(default_factory=list)
    swap_accepts: list = field(default_factory=list)
    collected: list = field(default_factory=list)

    @property
    def traces(self) -> list:
        return [s.trace for s in self.samples]

    @property
    def mh_rates(self) -> list:
        return [a / p if p else 0.0 for a, p in zip(self.mh_accepted, self.mh_proposed)]

    @property
    def swap_rates(self) -> list:
        return [a / t if t else 0.0 for a, t in zip(self.swap_accepts, self.swap_attempts)]


def predicate_exchange(
    program: Program,
    ladder: Sequence[float],
    n: int,
    q: int = 10,
    cfg: Union[MhStepConfig, Sequence[MhStepConfig]] = MhStepConfig(),
    seed=0,
    mode: str = EXACT,
    burn_in: float = 0.2,
    tnorm: str = GODEL,
    watchdog_sweeps: int = 1000,
    init: Optional[dict] = None,
) -> ExchangeResult:
    """Sample ``program`` conditioned on its ``cond`` statements.

    Each of the ``len(ladder)`` chains runs ``q`` single-site MH steps at its
    own temperature, then adjacent chains are offered state swaps from the
    hottest pair down to the coldest. In ``"exact"`` mode every state whose
    predicate holds exactly is collected, from any chain. In
    ``"approximate"`` mode every state of the coldest chain is collected
    after discarding a ``burn_in`` fraction of its steps.

    ``cfg`` may be one proposal config or one per chain. ``seed`` is an int or
    a :class:`numpy.random.SeedSequence`; each chain gets its own substream.
    Raises :class:`WatchdogError` if exact mode collects nothing for
    ``watchdog_sweeps`` consecutive sweeps.
    """
    ladder = [float(a) for a in ladder]
    m = len(ladder)
    if m < 1 or any(not (a > 0.0 and math.isfinite(a)) for a in ladder):
        raise ConfigError(f"invalid ladder {ladder}")
    if any(b < a for a, b in zip(ladder, ladder[1:])):
        raise ConfigError("ladder must be sorted from coldest to hottest")
    if int(n) != n or n < 1 or int(q) != q or q < 1:
        raise ConfigError(f"need integer n >= 1 and q >= 1, got n={n}, q={q}")
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}; expected one of {MODES}")
    if not 0.0 <= burn_in < 1.0:
        raise ConfigError(f"burn_in must lie in [0, 1), got {burn_in}")
    if watchdog_sweeps < 1:
        raise ConfigError("watchdog_sweeps must be positive")
    cfgs = [cfg] * m if isinstance(cfg, MhStepConfig) else list(cfg)
    if len(cfgs) != m:
        raise ConfigError(f"got {len(cfgs)} proposal configs for {m} chains")

    *chain_rngs, swap_rng = spawn_rngs(seed, m + 1)
    states: list[ExecutionResult] = [
        softexecute(program, a, init, r, tnorm) for a, r in zip(ladder, chain_rngs)
    ]
    res = ExchangeResult(
        samples=[],
        ladder=ladder,
        mh_proposed=[0] * m,
        mh_accepted=[0] * m,
        swap_attempts=[0] * max(m - 1, 0),
        swap_accepts=[0] * max(m - 1, 0),
        collected=[0] * m,
    )
    burn_steps = math.ceil(n * burn_in / (1.0 - burn_in)) if mode == APPROXIMATE else 0
    cold_steps = 0
    idle = 0

    def collect(i: int, state: ExecutionResult) -> None:
        res.samples.append(Sample(state.trace, ladder[i], i, res.sweeps, state.return_value))
        res.collected[i] += 1

    while len(res.samples) < n:
        res.sweeps += 1
        before = len(res.samples)
        for i in range(m):
            for _ in range(q):
                state, accepted = mh_step(program, states[i], chain_rngs[i], cfgs[i])
                states[i] = state
                res.mh_proposed[i] += 1
                res.mh_accepted[i] += accepted
                if len(res.samples) >= n:
                    continue
                if mode == EXACT:
                    if state.satisfied:
                        collect(i, state)
                elif i == 0:
                    cold_steps += 1
                    if cold_steps > burn_steps:
                        collect(i, state)

        for i in range(m - 1, 0, -1):
            j = i - 1
            si, sj = states[i], states[j]
            j_at_i = softexecute(program, ladder[i], sj.trace, swap_rng, tnorm)
            i_at_j = softexecute(program, ladder[j], si.trace, swap_rng, tnorm)
            log_a = swap_log_accept(si.log_f, j_at_i.log_f, i_at_j.log_f, sj.log_f)
            res.swap_attempts[j] += 1
            if log_a >= 0.0 or swap_rng.random() < math.exp(log_a):
                states[i], states[j] = j_at_i, i_at_j
                res.swap_accepts[j] += 1

        if mode == EXACT:
            idle = 0 if len(res.samples) > before else idle + 1
            if idle >= watchdog_sweeps:
                raise WatchdogError(
                    f"exact mode collected no satisfying state in {idle} sweeps; "
                    "the condition may have zero probability (e.g. equality on "
                    "continuous variables) -- use approximate mode with a "
                    "minimum temperature above zero",
                    res,
                )

    for i, (a, c) in enumerate(zip(ladder, res.collected)):
        log.info("chain %d (alpha=%g): collected %d, mh acceptance %.3f",
                 i, a, c, res.mh_rates[i])
    return res
