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

""" Estimator objects wrapping the fitting procedures behind a common
fit(dataset) / predict(X) interface, as consumed by cross validation.
"""
import numpy as np

from tenreg.algorithms import als
from tenreg.algorithms import gls
from tenreg.algorithms.als.types import regression_dataset
from tenreg.exceptions import ConfigurationError
from tenreg.exceptions import ShapeError
from tenreg.tensor.types import as_array
from tenreg.tensor.types import dense_tensor


class MultilinearRegressor(object):
    """ The multilinear tensor regression model fit by least squares ('als')
    or by maximum likelihood under array normal errors ('gls'). """

    def __init__(self, method='als', params=None):
        if method not in ('als', 'gls'):
            raise ConfigurationError('unknown method {!r}'.format(method))
        self.method = method
        self.params = {} if params is None else dict(params)
        self.report = None

    def fit(self, data):
        if self.method == 'als':
            self.report = als.fit_als(data, parameters=self.params)
        else:
            self.report = gls.fit_gls(data, parameters=self.params)
        return self

    def predict(self, X):
        return als.predict(self.factors(), X)

    def factors(self):
        self.__check_fitted__()
        return self.report.factors

    def covariance(self):
        self.__check_fitted__()
        return getattr(self.report, 'covariance', None)

    def __check_fitted__(self):
        if self.report is None:
            raise ConfigurationError('estimator is not fitted')


class AdditiveRegressor(object):
    def __init__(self):
        self.fitted = None

    def fit(self, data):
        self.fitted = als.fit_additive(data)
        return self

    def predict(self, X):
        if self.fitted is None:
            raise ConfigurationError('estimator is not fitted')
        return als.predict_additive(self.fitted, X)


class RankOnePerDyadRegressor(object):
    def __init__(self, params=None, threads=1):
        self.params = {} if params is None else dict(params)
        self.threads = threads
        self.fitted = None

    def fit(self, data):
        self.fitted = als.fit_rank_one_per_dyad(data, self.params,
                                                self.threads)
        return self

    def predict(self, X):
        if self.fitted is None:
            raise ConfigurationError('estimator is not fitted')
        return als.predict_rank_one_per_dyad(self.fitted, X)


class SeparateBilinearRegressor(object):
    """ One multilinear model per slice of the type mode.

    Outcome type j is regressed on predictor slice j only, so a lag-only
    relational panel gives one bilinear model A_j X_jt B_j^T per action
    type.

    Args:
        type_mode (int): 0-based mode indexing action types in X and Y.
        params (dict): fit_als parameters shared by all slices.
    """

    def __init__(self, type_mode=2, params=None):
        self.type_mode = type_mode
        self.params = {} if params is None else dict(params)
        self.models = []

    def fit(self, data):
        k = self.type_mode
        if not 0 <= k < data.order:
            raise ShapeError('type mode {} out of range'.format(k + 1))
        types = data.Y.dims[k]
        if data.X.dims[k] < types:
            raise ShapeError('predictor type mode has {} slices for {} '
                             'outcome types'.format(data.X.dims[k], types))
        x, y = as_array(data.X), as_array(data.Y)
        self.models = []
        for j in range(types):
            mask = (None if data.mask is None else
                    np.take(data.mask, [j], axis=k))
            part = regression_dataset(dense_tensor(np.take(x, [j], axis=k)),
                                      dense_tensor(np.take(y, [j], axis=k)),
                                      mask)
            self.models.append(MultilinearRegressor(
                'als', self.params).fit(part))
        return self

    def predict(self, X):
        if not self.models:
            raise ConfigurationError('estimator is not fitted')
        x = as_array(X)
        k = self.type_mode
        slices = [as_array(model.predict(dense_tensor(np.take(x, [j],
                                                              axis=k))))
                  for (j, model) in enumerate(self.models)]
        return dense_tensor(np.concatenate(slices, axis=k))


class ZeroRegressor(object):
    """ Predicts zero everywhere; the reference of predictive R^2. """

    def __init__(self):
        self.out_dims = None

    def fit(self, data):
        self.out_dims = data.out_dims
        return self

    def predict(self, X):
        if self.out_dims is None:
            raise ConfigurationError('estimator is not fitted')
        return dense_tensor(np.zeros(tuple(self.out_dims) + (X.dims[-1],)))
