"""Likelihood-free conditioning on Boolean predicates via soft relaxation and replica exchange."""

from .erp import Bernoulli, Beta, DiscreteUniform, Normal, Uniform, make_rng, spawn_rngs
from .mcmc import MhStepConfig, mh_step
from .replica import (
    ExchangeResult,
    WatchdogError,
    make_ladder,
    predicate_exchange,
    swap_log_accept,
)
from .soft import SoftBool, lift
from .trace import (
    ExecutionResult,
    ModelError,
    cond,
    conj,
    disj,
    eq,
    ge,
    gt,
    le,
    lt,
    neg,
    rand,
    softexecute,
)

__version__ = "0.1.0"

__all__ = [
    "Bernoulli", "Beta", "DiscreteUniform", "Normal", "Uniform", "make_rng", "spawn_rngs",
    "MhStepConfig", "mh_step",
    "ExchangeResult", "WatchdogError", "make_ladder", "predicate_exchange", "swap_log_accept",
    "SoftBool", "lift",
    "ExecutionResult", "ModelError", "cond", "conj", "disj", "eq", "ge", "gt", "le", "lt",
    "neg", "rand", "softexecute",
]
