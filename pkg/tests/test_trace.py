import math

import pytest

from predex.erp import Bernoulli, Normal, Uniform, make_rng
from predex.soft import PRODUCT, lift, soft_eq
from predex.trace import (
    ModelError,
    cond,
    conj,
    disj,
    eq,
    gt,
    lt,
    neg,
    rand,
    softexecute,
)

LOG_PHI0 = -0.5 * math.log(2 * math.pi)


def program_one():
    x = rand(Normal(0, 1), "x")
    y = rand(Normal(0, 1), "y")
    cond(gt(x, y))
    return x, y


def program_two():
    x = rand(Normal(0, 1), "x")
    if x > 0:
        cond(eq(x, 1.0))
    else:
        cond(eq(x, -100.0))
    return x


def test_rand_replays_dictionary():
    first = softexecute(program_one, 1.0, {}, make_rng(0))
    again = softexecute(program_one, 1.0, first.trace)
    assert again.return_value == first.return_value
    assert again.log_f == first.log_f


def test_rand_uniform_interior_and_outside():
    def prog():
        return rand(Uniform(0, 1), "x")

    res = softexecute(prog, 1.0, {"x": 0.5})
    assert res.return_value == 0.5 and res.log_prior == 0.0
    assert softexecute(prog, 1.0, {"x": 2.0}).log_prior == -math.inf


def test_duplicate_name_is_an_error():
    def prog():
        rand(Normal(0, 1), "x")
        rand(Normal(0, 1), "x")

    with pytest.raises(ModelError):
        softexecute(prog, 1.0, {}, make_rng(0))


def test_primitives_need_an_execution():
    with pytest.raises(ModelError):
        rand(Normal(0, 1), "x")
    with pytest.raises(ModelError):
        gt(1, 0)


def test_cond_accumulation():
    def prog(tnorm_vals):
        def p():
            for c in tnorm_vals:
                cond(c)
        return p

    assert softexecute(prog([lift(True)]), 1.0).log_soft_lik == 0.0
    pair = [soft_eq(0, 1, 1.0), soft_eq(0, 2, 1.0)]
    assert softexecute(prog(pair), 1.0).log_soft_lik == -4.0
    assert softexecute(prog(pair), 1.0, tnorm=PRODUCT).log_soft_lik == -5.0
    assert softexecute(prog([False]), 1.0).log_soft_lik == -math.inf
    assert softexecute(prog([True]), 1.0).log_soft_lik == 0.0


def test_program_one_examples():
    res = softexecute(program_one, 0.37, {"x": 2.0, "y": 1.0})
    assert res.log_soft_lik == 0.0
    assert res.log_prior == pytest.approx(2 * LOG_PHI0 - (4 + 1) / 2)
    assert res.log_f == res.log_prior + res.log_soft_lik
    assert softexecute(program_one, 1.0, {"x": 0.0, "y": 1.0}).log_soft_lik == -1.0


def test_empty_dictionary_is_filled():
    given = {}
    res = softexecute(program_one, 1.0, given, make_rng(3))
    assert set(res.trace) == {"x", "y"}
    assert given == {}
    assert all(s.fresh for s in res.sites.values())


def test_stale_entries_are_pruned():
    def prog():
        b = rand(Bernoulli(0.5), "b")
        return rand(Normal(0, 1), "x" if b else "y")

    res = softexecute(prog, 1.0, {"b": 1, "x": 0.1, "y": 0.2})
    assert res.trace == {"b": 1, "x": 0.1}
    assert res.log_prior == pytest.approx(math.log(0.5) + LOG_PHI0 - 0.005)


def test_purity():
    d = {"x": -0.3, "y": 0.8}
    a = softexecute(program_one, 0.01, d)
    b = softexecute(program_one, 0.01, d)
    assert (a.log_f, a.log_prior, a.log_soft_lik) == (b.log_f, b.log_prior, b.log_soft_lik)


@pytest.mark.parametrize("d", [{"x": 0.0, "y": 1.0}, {"x": -2.0, "y": 3.0}, {"x": 1.0, "y": 0.0}])
def test_soft_likelihood_nondecreasing_in_alpha(d):
    values = [softexecute(program_one, a, d).log_soft_lik for a in (1e-5, 1e-3, 0.1, 1, 10, 1e5)]
    assert values == sorted(values)


def test_only_taken_branch_is_scored():
    # x = -1 takes the else branch: distance 99 to -100 rather than 2 to 1
    res = softexecute(program_two, 1.0, {"x": -1.0})
    assert res.log_soft_lik == -(99.0**2)
    assert softexecute(program_two, 1.0, {"x": 1.0}).log_soft_lik == 0.0


def test_connective_helpers_and_operators():
    def prog():
        x = rand(Normal(0, 1), "x")
        cond(conj(gt(x, 0.0), lt(x, 1.0)))
        cond(disj(gt(x, 5.0), neg(eq(x, 0.25))))
        cond((gt(x, 0.0) & lt(x, 1.0)) | ~eq(x, 0.5))
        return x

    assert softexecute(prog, 1.0, {"x": 0.5}).log_soft_lik == 0.0
    res = softexecute(prog, 2.0, {"x": 1.5})
    assert res.log_soft_lik == -(0.5**2) / 2.0


def test_satisfaction_iff_hard_predicate():
    for x, y in [(2.0, 1.0), (1.0, 1.0), (0.0, 1.0), (-3.0, 4.0)]:
        for alpha in (1e-5, 1.0, 1e5):
            res = softexecute(program_one, alpha, {"x": x, "y": y})
            assert res.satisfied == (x >= y)
