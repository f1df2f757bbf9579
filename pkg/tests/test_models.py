import math

import numpy as np
import pytest
from scipy import integrate, stats

from predex.models import (
    REGISTRY,
    beta_normal,
    beta_normal_posterior,
    dice_posterior,
    equal_normals_x_sd,
    get_model,
    negation_disjunction,
    truncnorm_cdf,
    truncnorm_mean,
)
from predex.erp import make_rng
from predex.trace import softexecute


def test_registry_names():
    assert {"truncated_gaussian", "equal_normals", "beta_normal", "dice_sum",
            "negation_disjunction"} <= set(REGISTRY)
    with pytest.raises(KeyError, match="available"):
        get_model("glucose")


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_models_round_trip(name):
    spec = get_model(name)
    first = softexecute(spec.program, 0.5, {}, make_rng(0))
    again = softexecute(spec.program, 0.5, first.trace)
    assert again.log_f == first.log_f
    assert again.trace == first.trace
    assert set(spec.variables) <= set(first.trace)


def test_beta_normal_log_f_at_satisfying_point():
    res = softexecute(beta_normal, 1e-3, {"mu": 0.3, "x": 0.5})
    # Beta(3, 4) density 60 mu^2 (1 - mu)^3 and N(0.5; 0.3, 1); kernel(0) = 1
    expected = math.log(60 * 0.3**2 * 0.7**3) - 0.5 * math.log(2 * math.pi) - 0.5 * 0.2**2
    assert res.log_soft_lik == 0.0
    assert res.log_f == pytest.approx(expected, rel=1e-12)


def test_negation_disjunction_soft_value():
    x, y, alpha = math.sqrt(2.0), 2.0, 1.0
    res = softexecute(negation_disjunction, alpha, {"x": x, "y": y})
    first = -((y - x) ** 2) / alpha  # x > y misses by y - x
    # not(x^2 = 2): in floating point sqrt(2)**2 != 2, so this side is satisfied
    second = 0.0 if x * x != 2.0 else -1.0 / alpha
    assert res.log_soft_lik == max(first, second)
    res = softexecute(negation_disjunction, alpha, {"x": 0.5, "y": 2.0})
    assert res.log_soft_lik == 0.0


def test_truncnorm_oracle_against_quadrature():
    z = integrate.quad(stats.norm.pdf, 0, 1)[0]
    mean = integrate.quad(lambda x: x * stats.norm.pdf(x), 0, 1)[0] / z
    assert truncnorm_mean() == pytest.approx(mean, rel=1e-10)
    assert truncnorm_mean() == pytest.approx(0.4598622, abs=1e-6)
    half = integrate.quad(stats.norm.pdf, 0, 0.5)[0] / z
    assert truncnorm_cdf(0.5) == pytest.approx(half)
    assert truncnorm_cdf(-1) == 0.0 and truncnorm_cdf(2) == 1.0


def test_equal_normals_oracle():
    assert equal_normals_x_sd() == pytest.approx(math.sqrt(0.5))
    # brute-force quadrature of the tempered marginal's variance
    alpha = 0.5
    f = lambda x, y: math.exp(-0.5 * (x * x + y * y) - (x - y) ** 2 / alpha)
    z = integrate.dblquad(f, -8, 8, -8, 8)[0]
    m2 = integrate.dblquad(lambda x, y: y * y * f(x, y), -8, 8, -8, 8)[0] / z
    assert equal_normals_x_sd(alpha) == pytest.approx(math.sqrt(m2), rel=1e-6)


def test_beta_normal_oracle_limits():
    exact = beta_normal_posterior(10)
    assert exact.sum() == pytest.approx(1.0)
    assert np.abs(beta_normal_posterior(10, alpha=1e-3) - exact).sum() < 1e-3
    # a very flat kernel gives back the prior
    prior = np.diff(stats.beta(3, 4).cdf(np.linspace(0, 1, 11)))
    assert np.abs(beta_normal_posterior(10, alpha=1e6) - prior).sum() < 0.02


def test_dice_enumeration():
    post = dice_posterior()
    assert len(post) == 6
    assert sum(p for (a, _), p in post.items() if a == 3) == pytest.approx(1 / 6)
