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

""" Cross-validation over the replication mode and model comparisons.
"""
import logging
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pandas as pd

from tenreg.algorithms.core import random_state
from tenreg.algorithms.als.types import regression_dataset
from tenreg.estimators import AdditiveRegressor
from tenreg.estimators import MultilinearRegressor
from tenreg.estimators import RankOnePerDyadRegressor
from tenreg.evaluation.scores import r_squared
from tenreg.evaluation.scores import r_squared_by_slice
from tenreg.exceptions import ConfigurationError
from tenreg.exceptions import TenregError
from tenreg.tensor.types import as_array
from tenreg.tensor.types import dense_tensor

logger = logging.getLogger(__name__)

DEMEAN_OPTIONS = ('train', 'full', 'none')


class SplitPlan(namedtuple('SplitPlan', ['n', 'tests', 'seed', 'test_size',
                                         'disjoint'])):
    """ Test index sets over the replication mode, one per fold. """
    __slots__ = ()

    @property
    def folds(self):
        return len(self.tests)

    def train(self, fold):
        return np.setdiff1d(np.arange(self.n), self.tests[fold])


ScoreTable = namedtuple('ScoreTable', ['scores', 'summary', 'in_sample'])


def make_splits(n, folds=10, test_size=55, seed=None, blocked=False):
    """ Random (or contiguous) test sets of test_size replications.

    The test sets are disjoint when folds * test_size <= n; otherwise every
    fold samples its test set without replacement independently and a
    warning is logged.

    Args:
        n (int): Number of replications.
        folds (int): Number of folds.
        test_size (int): Replications per test set.
        seed (int): Random seed.
        blocked (bool): Contiguous test blocks instead of random weeks.

    Returns:
        SplitPlan: The plan; a pure function of the arguments.

    Raises:
        ConfigurationError: If folds < 1 or not 1 <= test_size < n.
    """
    if folds < 1 or not 1 <= test_size < n:
        raise ConfigurationError('cannot draw {} folds of {} from {}'.format(
            folds, test_size, n))
    rng = random_state(seed)
    disjoint = folds * test_size <= n
    if disjoint and blocked:
        stride = n // folds
        offset = rng.randint(0, n - stride * (folds - 1) - test_size + 1)
        tests = [np.arange(offset + f * stride, offset + f * stride +
                           test_size) for f in range(folds)]
    elif disjoint:
        order = rng.permutation(n)
        tests = [np.sort(order[f * test_size:(f + 1) * test_size])
                 for f in range(folds)]
    else:
        logger.warning('%d folds of %d exceed %d replications; test sets are '
                       'sampled independently per fold', folds, test_size, n)
        if blocked:
            starts = rng.randint(0, n - test_size + 1, size=folds)
            tests = [np.arange(s, s + test_size) for s in starts]
        else:
            tests = [np.sort(rng.choice(n, test_size, replace=False))
                     for _ in range(folds)]
    return SplitPlan(n=n, tests=tuple(tests), seed=seed, test_size=test_size,
                     disjoint=disjoint)


def cross_validate(data, models, plan, threads=1, demean='train',
                   type_mode=None, type_labels=None):
    """ Predictive R^2 of every model on every fold.

    Args:
        data (tenreg.algorithms.als.types.RegressionDataset): The data.
        models (dict): Model name to a callable creating an unfitted
            estimator with fit(dataset) and predict(X).
        plan (SplitPlan): The folds.
        threads (int): Number of worker threads.
        demean (str): 'train' subtracts training-slice means of X and Y from
            both slices, 'full' the means over all replications, 'none'
            leaves the data as is.
        type_mode (int): 0-based outcome mode scored per slice as well.
        type_labels (sequence of str): Labels of the type slices.

    Returns:
        ScoreTable: Scores with columns model, fold, type, predictive_r2
        (type 'all' for the overall score) and a summary with the mean, min
        and max per model and type. Failed folds score NaN and are left out
        of the summary.
    """
    if demean not in DEMEAN_OPTIONS:
        raise ConfigurationError('demean must be one of {}'.format(
            DEMEAN_OPTIONS))
    if plan.n != data.n:
        raise ConfigurationError('plan covers {} replications, data has {}'
                                 .format(plan.n, data.n))
    if type_mode is not None and type_labels is None:
        type_labels = [str(j + 1) for j in range(data.Y.dims[type_mode])]
    x, y = as_array(data.X), as_array(data.Y)
    if demean == 'full':
        x, y = x - x.mean(axis=-1, keepdims=True), y - y.mean(
            axis=-1, keepdims=True)

    def evaluate(task):
        (name, fold) = task
        train_idx, test_idx = plan.train(fold), plan.tests[fold]
        x_train, y_train = x[..., train_idx], y[..., train_idx]
        x_test, y_test = x[..., test_idx], y[..., test_idx]
        if demean == 'train':
            x_mean = x_train.mean(axis=-1, keepdims=True)
            y_mean = y_train.mean(axis=-1, keepdims=True)
            x_train, x_test = x_train - x_mean, x_test - x_mean
            y_train, y_test = y_train - y_mean, y_test - y_mean
        mask_train, mask_test = (None, None) if data.mask is None else (
            data.mask[..., train_idx], data.mask[..., test_idx])
        try:
            model = models[name]().fit(regression_dataset(
                dense_tensor(x_train), dense_tensor(y_train), mask_train))
            y_hat = as_array(model.predict(dense_tensor(x_test)))
            scores = [('all', r_squared(y_test, y_hat, mask_test))]
            if type_mode is not None:
                scores += list(zip(type_labels, r_squared_by_slice(
                    y_test, y_hat, mask_test, type_mode)))
        except (TenregError, np.linalg.LinAlgError) as error:
            logger.warning('model %s failed on fold %d: %s', name, fold + 1,
                           error)
            labels = ['all'] + ([] if type_mode is None else
                                list(type_labels))
            scores = [(label, np.nan) for label in labels]
        return [(name, fold + 1, label, value) for (label, value) in scores]

    tasks = [(name, fold) for name in models for fold in range(plan.folds)]
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        rows = [row for rows in executor.map(evaluate, tasks)
                for row in rows]
    scores = pd.DataFrame(rows, columns=['model', 'fold', 'type',
                                         'predictive_r2'])
    return ScoreTable(scores=scores, summary=summarize_scores(scores),
                      in_sample=None)


def summarize_scores(scores):
    """ Mean, min and max predictive R^2 per model and type, NaN excluded.
    """
    summary = scores.groupby(['model', 'type'], sort=False)[
        'predictive_r2'].agg(['mean', 'min', 'max', 'count']).reset_index()
    return summary.rename(columns={'count': 'folds'})


def in_sample_r_squared(data, models):
    """ R^2 of every model fit to and scored on all of data. """
    rows = []
    for (name, make) in models.items():
        model = make().fit(data)
        rows.append((name, r_squared(data.Y, model.predict(data.X),
                                     data.mask)))
    return pd.DataFrame(rows, columns=['model', 'r2'])


def compare_additive_multiplicative(data, plan, params=None, threads=1,
                                    demean='train'):
    """ The additive, shared multiplicative (K = 2) and rank-one-per-dyad
    models through cross_validate, plus their in-sample R^2. """
    params = {} if params is None else dict(params)
    models = {
        'additive': AdditiveRegressor,
        'multiplicative': lambda: MultilinearRegressor('als', params),
        'rank_one_per_dyad': lambda: RankOnePerDyadRegressor(params),
    }
    table = cross_validate(data, models, plan, threads=threads,
                           demean=demean)
    return table._replace(in_sample=in_sample_r_squared(data, models))
