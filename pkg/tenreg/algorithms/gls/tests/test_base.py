# Copyright 2026 The tenreg Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

""" Unit tests for the tenreg.algorithms.gls.base module.
"""
import numpy as np
import pytest

from tenreg.algorithms.als import base as als_base
from tenreg.algorithms.als.functions import initialize_factors
from tenreg.algorithms.als.types import regression_dataset
from tenreg.algorithms.core import max_iterations
from tenreg.algorithms.gls import base
from tenreg.algorithms.gls import functions
from tenreg.algorithms.gls import types
from tenreg.benchmarks.synthetic import ar1_covariance
from tenreg.benchmarks.synthetic import multilinear_problem
from tenreg.exceptions import ConfigurationError
from tenreg.tensor.core import kronecker_chain
from tenreg.tensor.types import factor_set


@pytest.fixture
def rng():
    seed = 1028609616
    return np.random.RandomState(seed)


def relative_chain_error(fitted, truth):
    desired = kronecker_chain(truth)
    return (np.linalg.norm(kronecker_chain(fitted) - desired) /
            np.linalg.norm(desired))


def correlated_problem(seed, n=60):
    covariance = types.separable_covariance([ar1_covariance(4, 0.9),
                                             ar1_covariance(3, -0.8)], 0.5)
    return multilinear_problem(seed, (3, 3), (4, 3), n,
                               covariance=covariance)


@pytest.mark.parametrize("params", [
    {'tol': 0.}, {'max_sweeps': 0}, {'iterations': 3}
])
def test_invalid_parameters(rng, params):
    data, _ = correlated_problem(rng)

    with pytest.raises(ConfigurationError):
        base.fit_gls(data, parameters=params)


def test_nll_never_increases(rng):
    for _ in range(20):
        data, _ = correlated_problem(rng, n=25)

        report = base.fit_gls(data, parameters={'max_sweeps': 50,
                                                'seed': rng})

        trace = report.objective_trace
        for (previous, current) in zip(trace, trace[1:]):
            assert current <= previous + 1e-9 * (1 + abs(previous))


def test_covariance_is_trace_gauged(rng):
    data, _ = correlated_problem(rng)

    report = base.fit_gls(data)

    for sigma in report.covariance.sigmas:
        assert np.trace(sigma) == pytest.approx(sigma.shape[0])
    assert report.covariance.tau2 > 0
    assert report.converged


def test_estimates_mode_covariance(rng):
    data, truth = correlated_problem(rng, n=2000)

    report = base.fit_gls(data)

    desired = ar1_covariance(4, 0.9)
    np.testing.assert_allclose(report.covariance.sigmas[0], desired,
                               atol=0.1)
    assert relative_chain_error(report.factors, truth) < 0.05


def test_identity_covariance_sweeps_match_als(rng):
    data, _ = multilinear_problem(rng, (2, 3), (3, 2), 50, noise_sd=1.)
    init = initialize_factors(rng, data.in_dims, data.out_dims)
    covariance = types.identity_covariance((3, 2), tau2=2.7)

    als = als_base.fit_als(data, init=init,
                           stopping_condition=max_iterations(5))
    factors = init
    for _ in range(5):
        for k in factors.free_modes:
            factors = factors.replace_factor(
                k, functions.gls_conditional_update(data, factors,
                                                    covariance, k))

    assert als.sweeps == 5
    np.testing.assert_allclose(kronecker_chain(factors),
                               kronecker_chain(als.factors), atol=1e-10)


def test_masked_diagonal_keeps_tau2(rng):
    data, _ = multilinear_problem(rng, (3, 3), (3, 3), 400, noise_sd=1.)
    mask = np.zeros(data.Y.dims, dtype=bool)
    mask[np.arange(3), np.arange(3)] = True
    masked = regression_dataset(data.X, data.Y, mask)

    full_tau2 = base.fit_gls(data).covariance.tau2
    masked_tau2 = base.fit_gls(masked).covariance.tau2

    assert full_tau2 == pytest.approx(1., abs=0.1)
    assert masked_tau2 == pytest.approx(1., abs=0.1)


def test_fixed_modes_are_kept(rng):
    data, _ = multilinear_problem(rng, (3, 2), (2, 2), 40, noise_sd=0.5,
                                  fixed_modes=(1,))
    init = factor_set([rng.standard_normal((2, 3)), 2], fixed_modes=(1,))

    report = base.fit_gls(data, init_factors=init,
                          parameters={'max_sweeps': 20})

    assert report.factors.factors[1].fixed_identity
    np.testing.assert_array_equal(report.factors.matrices[1], np.eye(2))


def test_all_fixed_modes(rng):
    data, _ = multilinear_problem(rng, (2, 2), (2, 2), 10, noise_sd=1.,
                                  fixed_modes=(0, 1))
    init = factor_set([2, 2], fixed_modes=(0, 1))

    with pytest.raises(ConfigurationError):
        base.fit_gls(data, init_factors=init)


def test_objective_metrics(rng):
    data, _ = correlated_problem(rng)

    report = base.fit_gls(data, parameters={'max_sweeps': 5, 'tol': 1e-30})

    assert report.sweeps == 5
    assert not report.converged
    assert len(report.objective_trace) == 6
    assert sorted(report.metrics) == [1, 2, 3, 4, 5]
    assert report.metrics[5]['objective'] == report.objective_trace[-1]


@pytest.mark.simulation
def test_gls_beats_ols_under_correlated_errors():
    wins = 0
    for seed in range(50):
        data, truth = correlated_problem(seed, n=100)
        ols = als_base.fit_als(data, parameters={'seed': seed})
        gls = base.fit_gls(data, init_factors=ols.factors)
        if (relative_chain_error(gls.factors, truth) <
                relative_chain_error(ols.factors, truth)):
            wins += 1

    assert wins >= 45
