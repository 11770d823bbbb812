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

""" Unit tests for the tenreg.algorithms.als.functions module.
"""
import numpy as np
import pytest

from tenreg.algorithms.als import functions
from tenreg.algorithms.als.types import regression_dataset
from tenreg.benchmarks.synthetic import multilinear_problem
from tenreg.exceptions import ModeError
from tenreg.exceptions import NumericalError
from tenreg.exceptions import ShapeError
from tenreg.exceptions import SingularityError
from tenreg.tensor.core import kronecker_chain
from tenreg.tensor.core import unfold
from tenreg.tensor.types import as_array
from tenreg.tensor.types import dense_tensor
from tenreg.tensor.types import factor_set


@pytest.fixture
def rng():
    seed = 1028609616
    return np.random.RandomState(seed)


def test_conditional_minimizer_recovers_truth(rng):
    data, truth = multilinear_problem(rng, (3, 4), (2, 5), 40)

    a = functions.conditional_minimizer(data, truth, 0)

    np.testing.assert_allclose(a.entries, truth.matrices[0], atol=1e-8)


def test_conditional_minimizer_matches_lstsq(rng):
    data, _ = multilinear_problem(rng, (3, 2, 2), (2, 3, 2), 30,
                                  noise_sd=1.)
    factors = functions.initialize_factors(rng, (3, 2, 2), (2, 3, 2))
    x_tilde = as_array(functions.predict(
        factors.replace_factor(1, factor_set([np.eye(2)]).factors[0]),
        data.X))

    b = functions.conditional_minimizer(data, factors, 1)

    desired = np.linalg.lstsq(unfold(x_tilde, 1).T,
                              unfold(as_array(data.Y), 1).T, rcond=None)[0].T
    np.testing.assert_allclose(b.entries, desired, atol=1e-10)


def test_conditional_minimizer_scalar_mode(rng):
    x = rng.standard_normal((1, 1, 20))
    y = 3. * x + 0.1 * rng.standard_normal((1, 1, 20))
    data = regression_dataset(dense_tensor(x), dense_tensor(y))
    factors = factor_set([[[1.]], [[1.]]])

    a = functions.conditional_minimizer(data, factors, 0)

    np.testing.assert_allclose(a.entries,
                               [[np.sum(x * y) / np.sum(x * x)]])


def test_conditional_minimizer_zero_design(rng):
    data = regression_dataset(dense_tensor(np.zeros((2, 2, 5))),
                              dense_tensor(rng.standard_normal((2, 2, 5))))
    factors = functions.initialize_factors(rng, (2, 2), (2, 2))

    a = functions.conditional_minimizer(data, factors, 0, ridge=1e-8)

    np.testing.assert_array_equal(a.entries, np.zeros((2, 2)))
    with pytest.raises(SingularityError) as error:
        functions.conditional_minimizer(data, factors, 0, ridge=0)
    assert error.value.mode == 0


def test_conditional_minimizer_fixed_mode(rng):
    data, _ = multilinear_problem(rng, (2, 3), (2, 3), 10, fixed_modes=(1,))
    factors = factor_set([np.ones((2, 2)), 3], fixed_modes=(1,))

    with pytest.raises(ModeError):
        functions.conditional_minimizer(data, factors, 1)
    with pytest.raises(ModeError):
        functions.conditional_minimizer(data, factors, 2)


def test_conditional_minimizer_masked_rows(rng):
    data, truth = multilinear_problem(rng, (3, 3), (3, 3), 25,
                                      noise_sd=0.5)
    mask = rng.rand(*data.Y.dims) < 0.2
    masked = regression_dataset(data.X, data.Y, mask)

    a = functions.conditional_minimizer(masked, truth, 0)

    x_tilde = unfold(as_array(functions.predict(
        truth.replace_factor(0, factor_set([np.eye(3)]).factors[0]),
        data.X)), 0)
    y = unfold(as_array(data.Y), 0)
    keep = ~unfold(mask, 0)
    for i in range(3):
        desired = np.linalg.lstsq(x_tilde[:, keep[i]].T, y[i, keep[i]],
                                  rcond=None)[0]
        np.testing.assert_allclose(a.entries[i], desired, atol=1e-10)


def test_conditional_minimizer_never_increases_rss(rng):
    for _ in range(100):
        data, _ = multilinear_problem(rng, (2, 3), (3, 2), 8, noise_sd=1.)
        factors = functions.initialize_factors(rng, (2, 3), (3, 2))
        for k in (0, 1):
            before = functions.rss(data, factors)
            factors = factors.replace_factor(
                k, functions.conditional_minimizer(data, factors, k))
            assert functions.rss(data, factors) <= before * (1 + 1e-12)


def test_predict_bilinear(rng):
    x = rng.standard_normal((3, 4, 6))
    a, b = rng.standard_normal((2, 3)), rng.standard_normal((5, 4))

    y_hat = as_array(functions.predict(factor_set([a, b]), dense_tensor(x)))

    for t in range(6):
        np.testing.assert_allclose(y_hat[:, :, t], a.dot(x[:, :, t]).dot(b.T),
                                   atol=1e-12)


def test_predict_identity_and_zero(rng):
    x = dense_tensor(rng.standard_normal((2, 3, 4)))

    identity = functions.predict(factor_set([np.eye(2), np.eye(3)]), x)
    zero = functions.predict(factor_set([np.zeros((2, 2)),
                                         np.zeros((1, 3))]), x)

    np.testing.assert_allclose(identity.data, x.data)
    np.testing.assert_array_equal(zero.data, np.zeros(8))


def test_predict_shape_mismatch(rng):
    x = dense_tensor(rng.standard_normal((2, 3, 4)))

    with pytest.raises(ShapeError):
        functions.predict(factor_set([np.eye(3), np.eye(3)]), x)


def test_normalize_scale_gauge(rng):
    a, b = rng.standard_normal((2, 3)), rng.standard_normal((4, 2))

    first = functions.normalize_scale(factor_set([2 * a, b / 2]))
    second = functions.normalize_scale(factor_set([a, b]))

    for (f, g) in zip(first.matrices, second.matrices):
        np.testing.assert_allclose(f, g, atol=1e-12)
    norms = [np.linalg.norm(m) for m in first.matrices]
    assert norms[0] == pytest.approx(norms[1])


def test_normalize_scale_preserves_chain(rng):
    for _ in range(20):
        factors = factor_set([rng.standard_normal((2, 3)) * rng.rand() * 10,
                              rng.standard_normal((3, 2)),
                              rng.standard_normal((2, 2)) / 7])
        x = dense_tensor(rng.standard_normal((3, 2, 2, 5)))

        normalized = functions.normalize_scale(factors)

        np.testing.assert_allclose(functions.predict(normalized, x).data,
                                   functions.predict(factors, x).data,
                                   rtol=1e-12, atol=1e-12)
        np.testing.assert_allclose(kronecker_chain(normalized),
                                   kronecker_chain(factors), atol=1e-12)


def test_normalize_scale_idempotent(rng):
    factors = factor_set([rng.standard_normal((2, 2)), 3,
                          rng.standard_normal((4, 1))], fixed_modes=(1,))

    once = functions.normalize_scale(factors)
    twice = functions.normalize_scale(once)

    for (f, g) in zip(once.matrices, twice.matrices):
        np.testing.assert_allclose(f, g, atol=1e-14)
    np.testing.assert_array_equal(once.matrices[1], np.eye(3))


def test_normalize_scale_zero_factor(rng):
    factors = factor_set([np.zeros((2, 2)), rng.standard_normal((2, 2))])

    with pytest.raises(NumericalError):
        functions.normalize_scale(factors)


def test_residual_tensor(rng):
    data, truth = multilinear_problem(rng, (2, 3), (3, 2), 10)
    zero = factor_set([np.zeros((3, 2)), np.zeros((2, 3))])

    np.testing.assert_allclose(functions.residual_tensor(data, truth).data,
                               np.zeros(data.Y.size), atol=1e-12)
    np.testing.assert_array_equal(functions.residual_tensor(data, zero).data,
                                  data.Y.data)


def test_residual_tensor_masked(rng):
    data, _ = multilinear_problem(rng, (2, 2), (2, 2), 6)
    mask = np.zeros(data.Y.dims, dtype=bool)
    mask[0, 0] = True
    masked = regression_dataset(data.X, data.Y, mask)
    zero = factor_set([np.zeros((2, 2)), np.zeros((2, 2))])

    residual = as_array(functions.residual_tensor(masked, zero))

    np.testing.assert_array_equal(residual[0, 0], np.zeros(6))
    assert functions.rss(masked, zero) == pytest.approx(
        np.sum(as_array(data.Y)[~mask] ** 2))


def test_initialize_factors(rng):
    factors = functions.initialize_factors(rng, (3, 2, 4), (2, 2, 4),
                                           fixed_modes=(1,))

    assert factors.out_dims == (2, 2, 4)
    assert factors.in_dims == (3, 2, 4)
    assert factors.free_modes == [0, 2]
    for k in factors.free_modes:
        assert np.linalg.norm(factors.matrices[k]) == pytest.approx(1.)
    with pytest.raises(ShapeError):
        functions.initialize_factors(rng, (3, 2), (2, 3), fixed_modes=(1,))


def test_identity_padded_factors():
    factors = functions.identity_padded_factors((3, 2), (2, 4))

    np.testing.assert_array_equal(factors.matrices[0], np.eye(2, 3))
    np.testing.assert_array_equal(factors.matrices[1], np.eye(4, 2))


def test_cross_moments(rng):
    data, _ = multilinear_problem(rng, (2, 2), (1, 3), 50)

    moments = functions.cross_moments(data)

    assert moments.sxx.shape == (4, 4)
    assert moments.sxy.shape == (4, 3)
    np.testing.assert_allclose(moments.sxx, moments.sxx.T)
    assert np.all(np.linalg.eigvalsh(moments.sxx) >= -1e-12)
