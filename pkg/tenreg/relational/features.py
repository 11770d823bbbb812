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

""" Predictor construction for relational event panels.

All tensors here are plain arrays whose last axis is time. The pipeline is
quantile transform, demean, lag, reciprocity, transitivity and monthly
stacking, in that order.
"""
import logging

import numpy as np
from scipy import stats

from tenreg.algorithms.als.types import regression_dataset
from tenreg.exceptions import ConfigurationError
from tenreg.exceptions import ShapeError
from tenreg.tensor.types import dense_tensor

logger = logging.getLogger(__name__)


def quantile_transform(series, axis=-1):
    """ Normal scores: the value with average rank r among n observations
    maps to Phi^{-1}(r / (n + 1)).

    Args:
        series (array_like): A series, or an array of series along axis.
        axis (int): Time axis.

    Returns:
        numpy.ndarray: Approximately standard normal scores; ties share a
        score and a constant series maps to zeros.

    Examples:
        >>> quantile_transform([5., 1., 9.]) # [0, -0.674, 0.674]
    """
    series = np.asarray(series, dtype=np.float64)
    ranks = stats.rankdata(series, method='average', axis=axis)
    return stats.norm.ppf(ranks / (series.shape[axis] + 1))


def demean(tensor, axis=-1):
    """ Subtracts the mean over time of every series. """
    tensor = np.asarray(tensor, dtype=np.float64)
    return tensor - tensor.mean(axis=axis, keepdims=True)


def build_lag1(y):
    """ First-order lag: X_t = Y_{t-1}, aligned with Y_t for t = 2..T.

    Returns:
        tuple: (X, Y') with T - 1 time slices each.

    Raises:
        ConfigurationError: If T < 2.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.shape[-1] < 2:
        raise ConfigurationError('a lag needs at least 2 periods, got {}'
                                 .format(y.shape[-1]))
    return y[..., :-1], y[..., 1:]


def append_reciprocal(x):
    """ Appends the dyad-transposed copy of every type slice:
    m x m x J x T -> m x m x 2J x T. """
    x = np.asarray(x, dtype=np.float64)
    __check_square__(x)
    return np.concatenate([x, np.swapaxes(x, 0, 1)], axis=2)


def append_transitivity(x, y_lagged, diagonal_defined=False):
    """ Appends one transitivity slice per type,
    sum_{i3} (y[i1,i3] + y[i3,i1]) (y[i2,i3] + y[i3,i2]).

    Args:
        x (numpy.ndarray): Current predictors m x m x F x T.
        y_lagged (numpy.ndarray): Lagged outcomes m x m x J x T the scores
            are computed from.
        diagonal_defined (bool): When False, i3 excludes i1 and i2.

    Returns:
        numpy.ndarray: m x m x (F + J) x T; the new slices are symmetric in
        (i1, i2).
    """
    x = np.asarray(x, dtype=np.float64)
    y_lagged = np.asarray(y_lagged, dtype=np.float64)
    __check_square__(y_lagged)
    if x.shape[:2] != y_lagged.shape[:2] or x.shape[3] != y_lagged.shape[3]:
        raise ShapeError('predictors {} and lagged outcomes {} do not align'
                         .format(x.shape, y_lagged.shape))
    ties = y_lagged + np.swapaxes(y_lagged, 0, 1)
    if not diagonal_defined:
        ties = __zero_diagonal__(ties)
    transitivity = np.einsum('acjt,bcjt->abjt', ties, ties)
    return np.concatenate([x, transitivity], axis=2)


def append_monthly_lag(x, window=4):
    """ Stacks a trailing-window average as a second predictor scale.

    Slice 2 at time t is the average of slice 1 at t-1, ..., t-window. The
    first window periods lack a full window and are dropped, so the result
    is aligned with x[..., window:].

    Args:
        x (numpy.ndarray): Weekly predictors m x m x F x T.
        window (int): Number of periods averaged.

    Returns:
        numpy.ndarray: m x m x F x 2 x (T - window).

    Raises:
        ConfigurationError: If T <= window.
    """
    x = np.asarray(x, dtype=np.float64)
    periods = x.shape[-1]
    if periods <= window:
        raise ConfigurationError('{} periods do not cover a window of {}'
                                 .format(periods, window))
    cumulative = np.concatenate([np.zeros(x.shape[:-1] + (1,)),
                                 np.cumsum(x, axis=-1)], axis=-1)
    monthly = (cumulative[..., window:periods] -
               cumulative[..., :periods - window]) / window
    return np.stack([x[..., window:], monthly], axis=-2)


DEMEAN_ORDERS = ('before', 'after', 'none')


def build_predictors(panel, spec, demean_order='after'):
    """ The full relational predictor pipeline.

    Args:
        panel (tenreg.relational.types.EventPanel): The event counts.
        spec (tenreg.relational.types.PredictorSpec): Predictor families.
        demean_order (str): 'after' demeans the normal scores of every
            series, 'before' demeans the raw series ahead of the transform
            and 'none' skips demeaning.

    Returns:
        tenreg.algorithms.als.types.RegressionDataset: X is
        m x m x F x T' (m x m x F x 2 x T' with monthly lags) and Y
        m x m x J x T' (with a singleton fourth mode when monthly); the
        diagonal is masked unless defined.

    Raises:
        ConfigurationError: If demean_order is not one of DEMEAN_ORDERS.
    """
    if demean_order not in DEMEAN_ORDERS:
        raise ConfigurationError('demean_order must be one of {}, got {!r}'
                                 .format(DEMEAN_ORDERS, demean_order))
    m, _, types, periods = panel.counts.shape
    y = __normal_scores__(panel.counts, demean_order)
    if not panel.diagonal_defined:
        y = __zero_diagonal__(y)

    x, y_next = build_lag1(y)
    if spec.include_reciprocal:
        x = append_reciprocal(x)
    if spec.include_transitivity:
        x = append_transitivity(x, x[:, :, :types], panel.diagonal_defined)
        x[:, :, -types:] = __normal_scores__(x[:, :, -types:], demean_order)
    if not spec.include_lag1:
        x = x[:, :, types:]
    if not panel.diagonal_defined:
        x = __zero_diagonal__(x)
    if spec.include_monthly:
        x = append_monthly_lag(x, spec.monthly_window)
        y_next = y_next[..., spec.monthly_window:][:, :, :, None, :]

    mask = None
    if not panel.diagonal_defined:
        mask = np.zeros(y_next.shape, dtype=bool)
        mask[np.arange(m), np.arange(m)] = True
    logger.info('built predictors %s for outcomes %s', x.shape, y_next.shape)
    return regression_dataset(dense_tensor(x), dense_tensor(y_next), mask)


def __zero_diagonal__(tensor):
    tensor = np.array(tensor, dtype=np.float64, copy=True)
    index = np.arange(tensor.shape[0])
    tensor[index, index] = 0.
    return tensor


def __check_square__(tensor):
    if tensor.ndim < 2 or tensor.shape[0] != tensor.shape[1]:
        raise ShapeError('relational modes must be square, got {}'
                         .format(tensor.shape))


def __normal_scores__(series, demean_order):
    if demean_order == 'before':
        series = demean(series)
    scores = quantile_transform(series)
    if demean_order == 'after':
        scores = demean(scores)
    return scores
