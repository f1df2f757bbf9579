"""Soft execution of model programs against a trace dictionary.

A model program is a nullary callable. It draws randomness only through
:func:`rand` and conditions only through :func:`cond`; comparisons that should
be relaxed go through :func:`eq`, :func:`gt`, :func:`lt` (and friends), which
read the temperature of the execution they run inside::

    def program():
        x = rand(Normal(0, 1), "x")
        y = rand(Normal(0, 1), "y")
        cond(gt(x, y))
        return x, y

    res = softexecute(program, alpha=1.0, trace={"x": 0.0, "y": 1.0})
    res.log_soft_lik  # -1.0
"""

from __future__ import annotations

import math
from contextvars import ContextVar
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from . import soft
from .erp import Erp
from .soft import GODEL, SoftBool

Program = Callable[[], Any]


class ModelError(RuntimeError):
    """A model program misused the engine (duplicate names, no active execution)."""


@dataclass(frozen=True)
class Site:
    erp: Erp
    value: Any
    logp: float
    fresh: bool  # sampled during this execution rather than read from the trace


@dataclass
class ExecutionResult:
    log_prior: float
    log_soft_lik: float
    trace: dict
    sites: dict
    return_value: Any = None
    alpha: float = 1.0
    tnorm: str = GODEL
    log_f: float = field(init=False)

    def __post_init__(self):
        lf = self.log_prior + self.log_soft_lik
        # -inf likelihood dominates an infinite density spike
        self.log_f = -math.inf if math.isnan(lf) else lf

    @property
    def satisfied(self) -> bool:
        return self.log_soft_lik == 0.0


class Execution:
    """Mutable accumulator for one run of a program."""

    def __init__(self, alpha: float, trace: Optional[dict], rng, tnorm: str = GODEL):
        soft._check_alpha(alpha)
        soft._check_tnorm(tnorm)
        self.alpha = float(alpha)
        self.tnorm = tnorm
        self.rng = rng
        self.given = trace if trace is not None else {}
        self.sites: dict[str, Site] = {}
        self.log_prior = 0.0
        self.log_soft_lik = 0.0

    def rand(self, erp: Erp, name: str):
        if name in self.sites:
            raise ModelError(f"random choice name {name!r} used twice in one execution")
        if name in self.given:
            value, fresh = self.given[name], False
        else:
            if self.rng is None:
                self.rng = np.random.default_rng()
            value, fresh = erp.sample(self.rng), True
        logp = erp.logpdf(value)
        self.sites[name] = Site(erp, value, logp, fresh)
        self.log_prior += logp
        return value

    def cond(self, c) -> None:
        c = soft._coerce(c)
        self.log_soft_lik = soft.log_tnorm(self.log_soft_lik, c.log_a1, self.tnorm)

    def result(self, return_value=None) -> ExecutionResult:
        return ExecutionResult(
            log_prior=self.log_prior,
            log_soft_lik=self.log_soft_lik,
            trace={k: s.value for k, s in self.sites.items()},
            sites=self.sites,
            return_value=return_value,
            alpha=self.alpha,
            tnorm=self.tnorm,
        )


_active: ContextVar[Optional[Execution]] = ContextVar("predex_execution", default=None)


def softexecute(
    program: Program,
    alpha: float,
    trace: Optional[dict] = None,
    rng: Optional[np.random.Generator] = None,
    tnorm: str = GODEL,
) -> ExecutionResult:
    """Run ``program`` at temperature ``alpha`` with choices fixed by ``trace``.

    Names missing from ``trace`` are sampled from their prior with ``rng``.
    ``trace`` itself is never modified; the returned trace holds exactly the
    choices made by this run, so entries from branches not taken are dropped.
    """
    ex = Execution(alpha, trace, rng, tnorm)
    token = _active.set(ex)
    try:
        value = program()
    finally:
        _active.reset(token)
    return ex.result(value)


def _current() -> Execution:
    ex = _active.get()
    if ex is None:
        raise ModelError("rand/cond and soft comparisons only work inside softexecute")
    return ex


def current_tnorm() -> str:
    ex = _active.get()
    return GODEL if ex is None else ex.tnorm


def current_alpha() -> float:
    return _current().alpha


def rand(erp: Erp, name: str):
    return _current().rand(erp, name)


def cond(c) -> None:
    _current().cond(c)


def eq(x, y) -> SoftBool:
    return soft.soft_eq(x, y, _current().alpha)


def gt(x, y) -> SoftBool:
    return soft.soft_gt(x, y, _current().alpha)


def lt(x, y) -> SoftBool:
    return soft.soft_lt(x, y, _current().alpha)


ge = gt
le = lt


def conj(*cs) -> SoftBool:
    tnorm = current_tnorm()
    out = soft.TRUE
    for c in cs:
        out = soft.soft_and(out, soft._coerce(c), tnorm)
    return out


def disj(*cs) -> SoftBool:
    tnorm = current_tnorm()
    out = soft.FALSE
    for c in cs:
        out = soft.soft_or(out, soft._coerce(c), tnorm)
    return out


def neg(c) -> SoftBool:
    return soft.soft_neg(soft._coerce(c))
