"""Single-site Metropolis-Hastings over trace dictionaries."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Union

import numpy as np

from .trace import ExecutionResult, Program, softexecute

RESAMPLE = "resample"
DRIFT = "drift"


@dataclass(frozen=True)
class MhStepConfig:
    """Proposal settings for :func:`mh_step`.

    With ``proposal="resample"`` the chosen site is redrawn from its prior.
    With ``proposal="drift"`` continuous sites take a Gaussian random-walk
    step; ``step_size`` is either one value for every continuous site or a
    mapping from name to step, in which case names missing from the mapping
    (and all discrete sites) are resampled from the prior.
    """

    proposal: str = RESAMPLE
    step_size: Union[float, Mapping[str, float]] = 0.1

    def __post_init__(self):
        if self.proposal not in (RESAMPLE, DRIFT):
            raise ValueError(f"unknown proposal {self.proposal!r}")
        steps = self.step_size.values() if isinstance(self.step_size, Mapping) else [self.step_size]
        if any(not s > 0.0 for s in steps):
            raise ValueError("drift step sizes must be positive")

    def drift_step(self, name: str) -> Optional[float]:
        if self.proposal != DRIFT:
            return None
        if isinstance(self.step_size, Mapping):
            return self.step_size.get(name)
        return self.step_size


def mh_step(
    program: Program,
    state: ExecutionResult,
    rng: np.random.Generator,
    cfg: MhStepConfig = MhStepConfig(),
) -> tuple[ExecutionResult, bool]:
    """One single-site MH transition at ``state.alpha``.

    Returns the next state and whether the proposal was accepted. On
    rejection the incoming ``state`` object is returned unchanged.
    """
    names = list(state.trace)
    if not names:
        return state, False
    name = names[int(rng.integers(len(names)))]
    site = state.sites[name]

    step = cfg.drift_step(name) if site.erp.continuous else None
    if step is None:
        new_value = site.erp.sample(rng)
    else:
        new_value = site.value + step * float(rng.standard_normal())

    proposed_trace = dict(state.trace)
    proposed_trace[name] = new_value
    new = softexecute(program, state.alpha, proposed_trace, rng, state.tnorm)

    if new.log_f == -math.inf:
        return state, False
    if state.log_f == -math.inf:
        # any admissible state beats an inadmissible one
        return new, True

    log_q = math.log(len(state.trace)) - math.log(len(new.trace))
    # choices sampled fresh from the prior cancel their own prior terms;
    # choices that vanished count as if the reverse move had sampled them
    log_q -= sum(s.logp for s in new.sites.values() if s.fresh)
    log_q += sum(s.logp for k, s in state.sites.items() if k not in new.sites)
    if step is None:
        reverse = new.sites.get(name)
        log_q += (reverse.erp.logpdf(site.value) if reverse is not None else 0.0)
        log_q -= site.erp.logpdf(new_value)

    log_accept = new.log_f - state.log_f + log_q
    if log_accept >= 0.0 or rng.random() < math.exp(log_accept):
        return new, True
    return state, False
