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

""" Unit tests for the tenreg.algorithms.gls.functions module.
"""
import numpy as np
import pytest
from scipy import stats

from tenreg.algorithms.als import functions as als_functions
from tenreg.algorithms.gls import functions
from tenreg.algorithms.gls import types
from tenreg.benchmarks.synthetic import ar1_covariance
from tenreg.benchmarks.synthetic import multilinear_problem
from tenreg.exceptions import DefinitenessError
from tenreg.exceptions import ShapeError
from tenreg.tensor.core import kronecker
from tenreg.tensor.types import as_array


@pytest.fixture
def rng():
    seed = 1028609616
    return np.random.RandomState(seed)


def random_spd(rng, dim):
    root = rng.standard_normal((dim, dim))
    return root.dot(root.T) + dim * np.eye(dim)


def test_inv_sqrt(rng):
    sigma = random_spd(rng, 4)

    root = functions.inv_sqrt(sigma)

    np.testing.assert_allclose(root.dot(sigma).dot(root), np.eye(4),
                               atol=1e-10)
    np.testing.assert_allclose(functions.inv_sqrt(np.diag([4., 9.])),
                               np.diag([.5, 1. / 3]))


def test_inv_sqrt_not_definite():
    with pytest.raises(DefinitenessError) as error:
        functions.inv_sqrt(np.array([[1., 2.], [2., 1.]]), mode=1)
    assert error.value.mode == 1


def test_sym_sqrt(rng):
    sigma = random_spd(rng, 3)

    root = functions.sym_sqrt(sigma)

    np.testing.assert_allclose(root.dot(root), sigma, atol=1e-10)
    np.testing.assert_allclose(root, root.T)


def test_gls_update_with_identity_covariance_is_ols(rng):
    data, _ = multilinear_problem(rng, (3, 2), (2, 3), 30, noise_sd=1.)
    factors = als_functions.initialize_factors(rng, (3, 2), (2, 3))
    covariance = types.identity_covariance((2, 3), tau2=2.5)

    for k in (0, 1):
        np.testing.assert_allclose(
            functions.gls_conditional_update(data, factors, covariance,
                                             k).entries,
            als_functions.conditional_minimizer(data, factors, k).entries,
            atol=1e-10)


def test_gls_update_recovers_truth(rng):
    covariance = types.separable_covariance([ar1_covariance(3, 0.8),
                                             ar1_covariance(2, -0.5)], 0.3)
    data, truth = multilinear_problem(rng, (2, 4), (3, 2), 40)

    b = functions.gls_conditional_update(data, truth, covariance, 1)

    np.testing.assert_allclose(b.entries, truth.matrices[1], atol=1e-8)


def test_sigma_update_estimates_covariance(rng):
    sigma = ar1_covariance(3, 0.7)
    covariance = types.separable_covariance([sigma, np.eye(2)], 2.)
    residual = functions.sample_array_normal((3, 2, 20000), covariance, rng)

    estimate = functions.sigma_mle_update(
        residual, types.identity_covariance((3, 2)), 0)

    np.testing.assert_allclose(estimate, 2. * sigma, atol=0.1)


def test_sigma_update_zero_residual():
    estimate = functions.sigma_mle_update(
        np.zeros((2, 3, 4)), types.identity_covariance((2, 3)), 1,
        ridge=1e-6)

    np.testing.assert_allclose(estimate, 1e-6 * np.eye(3))


def test_trace_gauge_preserves_chain(rng):
    covariance = types.separable_covariance(
        [random_spd(rng, 2), random_spd(rng, 3)], 0.7)

    gauged = functions.trace_gauge(covariance)

    for sigma in gauged.sigmas:
        assert np.trace(sigma) == pytest.approx(sigma.shape[0])
    np.testing.assert_allclose(
        gauged.tau2 * kronecker(gauged.sigmas[1], gauged.sigmas[0]),
        covariance.tau2 * kronecker(covariance.sigmas[1],
                                    covariance.sigmas[0]), rtol=1e-12)


def test_array_normal_nll_matches_multivariate_normal(rng):
    covariance = types.separable_covariance(
        [random_spd(rng, 2), random_spd(rng, 3)], 1.7)
    residual = rng.standard_normal((2, 3))
    vec_covariance = covariance.tau2 * kronecker(covariance.sigmas[1],
                                                 covariance.sigmas[0])

    desired = -stats.multivariate_normal(mean=np.zeros(6),
                                         cov=vec_covariance).logpdf(
        np.ravel(residual, order='F'))

    assert functions.array_normal_nll(residual, covariance) == (
        pytest.approx(desired, rel=1e-10))


def test_standardized_norm_and_tau2(rng):
    residual = rng.standard_normal((3, 2, 5))
    covariance = types.identity_covariance((3, 2), tau2=4.)

    assert functions.standardized_norm_sq(residual, covariance) == (
        pytest.approx(np.sum(residual ** 2)))
    assert functions.tau2_mle(residual, covariance) == (
        pytest.approx(np.sum(residual ** 2) / 30))


def test_masked_cells_leave_the_cell_count(rng):
    residual = rng.standard_normal((3, 3, 20))
    mask = np.zeros(residual.shape, dtype=bool)
    mask[np.arange(3), np.arange(3)] = True
    residual[mask] = 0.
    observed = residual.size - mask.sum()
    covariance = types.identity_covariance((3, 3), tau2=1.5)

    desired_nll = -np.sum(stats.norm(scale=np.sqrt(1.5)).logpdf(
        residual[~mask]))

    assert functions.tau2_mle(residual, covariance, observed) == (
        pytest.approx(np.sum(residual ** 2) / observed))
    assert functions.array_normal_nll(residual, covariance, observed) == (
        pytest.approx(desired_nll, rel=1e-10))


def test_sample_array_normal_covariance(rng):
    covariance = types.separable_covariance(
        [ar1_covariance(2, 0.6), np.array([[1., -0.4], [-0.4, 2.]])], 1.5)

    draws = as_array(functions.sample_array_normal((2, 2, 50000), covariance,
                                                   rng))

    empirical = np.cov(np.reshape(draws, (4, -1), order='F'))
    desired = 1.5 * kronecker(covariance.sigmas[1], covariance.sigmas[0])
    np.testing.assert_allclose(empirical, desired, atol=0.08)


def test_sample_array_normal_zero_scale(rng):
    covariance = types.identity_covariance((2, 2))._replace(tau2=0.)

    draw = functions.sample_array_normal((2, 2), covariance, rng)

    np.testing.assert_array_equal(draw.data, np.zeros(4))
    with pytest.raises(ShapeError):
        functions.sample_array_normal((3, 2), covariance, rng)


def test_mode_residual_correlation_duplicated_rows(rng):
    residual = rng.standard_normal((3, 4, 10))
    residual[1] = residual[0]

    diagnostic = functions.mode_residual_correlation(residual, 0)

    np.testing.assert_allclose(np.diag(diagnostic.correlation), 1.)
    assert diagnostic.correlation[0, 1] == pytest.approx(1.)
    assert np.all(np.diff(diagnostic.eigenvalues) <= 1e-12)
    assert diagnostic.eigenvalues.sum() == pytest.approx(3.)


def test_mode_residual_correlation_constant_row(rng):
    residual = rng.standard_normal((3, 8))
    residual[2] = 5.

    diagnostic = functions.mode_residual_correlation(residual, 0)

    np.testing.assert_array_equal(diagnostic.correlation[2, :2], [0., 0.])
    assert diagnostic.correlation[2, 2] == 1.
    with pytest.raises(ShapeError):
        functions.mode_residual_correlation(residual, 2)


def test_mode_residual_correlation_null(rng):
    residual = rng.standard_normal((4, 5, 2000))

    diagnostic = functions.mode_residual_correlation(residual, 1)

    off_diagonal = diagnostic.correlation[~np.eye(5, dtype=bool)]
    assert np.max(np.abs(off_diagonal)) < 0.05
