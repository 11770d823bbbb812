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

""" Unit tests for the tenreg.estimators package.
"""
import numpy as np
import pytest

from tenreg.algorithms.als.types import regression_dataset
from tenreg.benchmarks.synthetic import additive_problem
from tenreg.benchmarks.synthetic import multilinear_problem
from tenreg.estimators import AdditiveRegressor
from tenreg.estimators import MultilinearRegressor
from tenreg.estimators import RankOnePerDyadRegressor
from tenreg.estimators import SeparateBilinearRegressor
from tenreg.estimators import ZeroRegressor
from tenreg.exceptions import ConfigurationError
from tenreg.exceptions import ShapeError
from tenreg.tensor.core import kronecker_chain
from tenreg.tensor.types import as_array
from tenreg.tensor.types import dense_tensor


@pytest.fixture
def rng():
    seed = 1028609616
    return np.random.RandomState(seed)


@pytest.mark.parametrize("make", [
    MultilinearRegressor, AdditiveRegressor, RankOnePerDyadRegressor,
    SeparateBilinearRegressor, ZeroRegressor
])
def test_predict_before_fit(make):
    with pytest.raises(ConfigurationError):
        make().predict(dense_tensor(np.zeros((2, 2, 3))))


def test_unknown_method():
    with pytest.raises(ConfigurationError):
        MultilinearRegressor('ridge')


@pytest.mark.parametrize("method", ['als', 'gls'])
def test_multilinear_regressor(rng, method):
    data, truth = multilinear_problem(rng, (2, 3), (3, 2), 60, noise_sd=0.01)

    model = MultilinearRegressor(method, {'seed': 3}).fit(data)

    desired = kronecker_chain(truth)
    assert (np.linalg.norm(kronecker_chain(model.factors()) - desired) /
            np.linalg.norm(desired)) < 1e-2
    assert model.predict(data.X).dims == data.Y.dims
    if method == 'gls':
        assert model.covariance().dims == (3, 2)
    else:
        assert model.covariance() is None


def test_additive_regressor(rng):
    data, _ = additive_problem(rng, 3, 30)

    model = AdditiveRegressor().fit(data)

    np.testing.assert_allclose(model.predict(data.X).data, data.Y.data,
                               atol=1e-8)


def test_rank_one_per_dyad_regressor(rng):
    data, _ = multilinear_problem(rng, (2, 2), (2, 2), 30, noise_sd=0.5)

    model = RankOnePerDyadRegressor({'seed': 1}, threads=2).fit(data)

    assert model.predict(data.X).dims == data.Y.dims
    assert model.fitted.c.shape == (2, 2, 2)


def test_separate_bilinear_regressor(rng):
    truths = []
    x = rng.standard_normal((3, 3, 2, 40))
    y = np.zeros((3, 3, 2, 40))
    for j in range(2):
        a, b = rng.standard_normal((3, 3)), rng.standard_normal((3, 3))
        y[:, :, j] = np.einsum('ip,pqt,jq->ijt', a, x[:, :, j], b)
        truths.append((a, b))
    data = regression_dataset(dense_tensor(x), dense_tensor(y))

    model = SeparateBilinearRegressor(type_mode=2, params={
        'tol': 1e-12, 'max_sweeps': 2000}).fit(data)

    assert len(model.models) == 2
    np.testing.assert_allclose(as_array(model.predict(data.X)), y,
                               atol=1e-6)


def test_separate_bilinear_uses_leading_predictor_slices(rng):
    x = rng.standard_normal((2, 2, 4, 20))
    y = rng.standard_normal((2, 2, 2, 20))
    data = regression_dataset(dense_tensor(x), dense_tensor(y))

    model = SeparateBilinearRegressor(params={'seed': 2}).fit(data)

    assert [m.factors().in_dims for m in model.models] == [(2, 2, 1)] * 2
    assert model.predict(data.X).dims == data.Y.dims


def test_separate_bilinear_shapes(rng):
    data = regression_dataset(dense_tensor(np.ones((2, 2, 1, 5))),
                              dense_tensor(np.ones((2, 2, 2, 5))))

    with pytest.raises(ShapeError):
        SeparateBilinearRegressor().fit(data)
    with pytest.raises(ShapeError):
        SeparateBilinearRegressor(type_mode=3).fit(data)


def test_zero_regressor(rng):
    data, _ = multilinear_problem(rng, (2, 3), (4, 2), 10)

    prediction = ZeroRegressor().fit(data).predict(dense_tensor(
        np.ones((2, 3, 7))))

    assert prediction.dims == (4, 2, 7)
    assert not prediction.data.any()
