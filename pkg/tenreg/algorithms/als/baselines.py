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

""" Baseline regression models for a K=2 relational panel Y_t = f(X_t):

* the additive model Y_t = A X_t 1 1^T + 1 1^T X_t B^T + E_t, fit by ordinary
  least squares with the gauge sum(B) = 0;
* the rank-one-per-dyad model y_{i1,i2,t} = c_{i1,i2}^T X_t d_{i1,i2} + e,
  an independent two-block least-squares fit for every ordered dyad.
"""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from tenreg.algorithms.core import init_parameters
from tenreg.algorithms.core import random_state
from tenreg.algorithms.core import spawn_seeds
from tenreg.algorithms.als import base
from tenreg.algorithms.als import types
from tenreg.exceptions import NumericalError
from tenreg.exceptions import ShapeError
from tenreg.exceptions import SingularityError
from tenreg.tensor.types import as_array
from tenreg.tensor.types import dense_tensor

logger = logging.getLogger(__name__)


def fit_additive(data):
    """ Ordinary least squares for the additive model.

    With r_t = X_t 1 and c_t = X_t^T 1 the model reads
    y_{i1,i2,t} = a_{i1} . r_t + b_{i2} . c_t. The normal equations are
    assembled blockwise (never the full design) and solved for the
    minimum-norm solution; A + s 1 1^T, B - s 1 1^T fit identically, and s is
    chosen so that the entries of B sum to zero.

    Args:
        data (tenreg.algorithms.als.types.RegressionDataset): K=2 data.

    Returns:
        tenreg.algorithms.als.types.AdditiveFit: The coefficient matrices.

    Raises:
        ShapeError: If the data is not a K=2 panel.
        SingularityError: If the design is rank deficient beyond the gauge.
    """
    __check_relational__(data)
    x, y = as_array(data.X), as_array(data.Y)
    (m1, m2, n), (p1, p2) = y.shape, x.shape[:2]
    weights = (np.ones(y.shape) if data.weights is None else data.weights)
    rows, cols = x.sum(axis=1).T, x.sum(axis=0).T

    size_a, size_b = m1 * p1, m2 * p2
    gram = np.zeros((size_a + size_b, size_a + size_b))
    gram_aa = np.einsum('it,tp,tq->ipq', weights.sum(axis=1), rows, rows)
    gram_bb = np.einsum('jt,tp,tq->jpq', weights.sum(axis=0), cols, cols)
    gram_ab = np.einsum('ijt,tp,tq->ipjq', weights, rows, cols)
    for i in range(m1):
        gram[i * p1:(i + 1) * p1, i * p1:(i + 1) * p1] = gram_aa[i]
    for j in range(m2):
        block = slice(size_a + j * p2, size_a + (j + 1) * p2)
        gram[block, block] = gram_bb[j]
    gram[:size_a, size_a:] = gram_ab.reshape(size_a, size_b)
    gram[size_a:, :size_a] = gram[:size_a, size_a:].T

    weighted = weights * y
    rhs = np.concatenate([np.einsum('ijt,tp->ip', weighted, rows).ravel(),
                          np.einsum('ijt,tq->jq', weighted, cols).ravel()])

    if not np.any(gram):
        return types.AdditiveFit(A=np.zeros((m1, p1)), B=np.zeros((m2, p2)))
    rank = np.linalg.matrix_rank(gram)
    if rank < gram.shape[0] - 1:
        raise SingularityError('additive design has rank {} < {}'
                               .format(rank, gram.shape[0] - 1))
    theta = np.linalg.lstsq(gram, rhs, rcond=None)[0]
    a = theta[:size_a].reshape(m1, p1)
    b = theta[size_a:].reshape(m2, p2)
    shift = b.sum() / b.size
    return types.AdditiveFit(A=a + shift, B=b - shift)


def predict_additive(fit, X):
    """ Y_hat_t = A X_t 1 1^T + 1 1^T X_t B^T. """
    x = as_array(X)
    rows, cols = x.sum(axis=1), x.sum(axis=0)
    y_hat = (fit.A.dot(rows)[:, None, :] + fit.B.dot(cols)[None, :, :])
    return dense_tensor(y_hat)


def fit_rank_one_per_dyad(data, parameters=None, threads=1):
    """ Independent rank-one bilinear fits, one per ordered dyad.

    Each dyad (i1, i2) is an alternating least-squares problem with 1 x p1
    and 1 x p2 factors, solved by fit_als with the same tolerance and sweep
    controls. Dyads whose cells are all masked are skipped (zero
    coefficients); numerical failures are recorded per dyad.

    Args:
        data (tenreg.algorithms.als.types.RegressionDataset): K=2 data.
        parameters (dict): fit_als parameters; 'seed' is fanned out into one
            seed per dyad.
        threads (int): Number of worker threads.

    Returns:
        tenreg.algorithms.als.types.DyadFit: Per-dyad vectors c (m1 x m2 x
        p1) and d (m1 x m2 x p2), convergence flags and an error dict keyed
        by dyad.
    """
    __check_relational__(data)
    params = init_parameters(base.default_parameters(), parameters)
    y = as_array(data.Y)
    (m1, m2, n), (p1, p2) = y.shape, data.X.dims[:2]
    dyads = [(i, j) for i in range(m1) for j in range(m2)]
    seeds = spawn_seeds(random_state(params['seed']), len(dyads))

    def fit_dyad(task):
        ((i, j), seed) = task
        mask = None if data.mask is None else data.mask[i, j]
        if mask is not None and mask.all():
            return None, None
        dyad = types.regression_dataset(
            data.X, dense_tensor(y[i, j].reshape(1, 1, n)),
            None if mask is None else mask.reshape(1, 1, n))
        try:
            report = base.fit_als(dyad, init=seed,
                                  parameters={**params, 'seed': None})
        except NumericalError as error:
            return None, str(error)
        return report, None

    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        outcomes = list(executor.map(fit_dyad, zip(dyads, seeds)))

    c, d = np.zeros((m1, m2, p1)), np.zeros((m1, m2, p2))
    converged = np.zeros((m1, m2), dtype=bool)
    errors = {}
    for ((i, j), (report, error)) in zip(dyads, outcomes):
        if error is not None:
            errors[(i, j)] = error
            logger.warning('rank-one fit failed for dyad (%d, %d): %s',
                           i + 1, j + 1, error)
        elif report is not None:
            c[i, j], d[i, j] = (report.factors.matrices[0][0],
                                report.factors.matrices[1][0])
            converged[i, j] = report.converged
    return types.DyadFit(c=c, d=d, converged=converged, errors=errors)


def predict_rank_one_per_dyad(fit, X):
    """ y_hat_{i1,i2,t} = c_{i1,i2}^T X_t d_{i1,i2}. """
    return dense_tensor(np.einsum('ijp,pqt,ijq->ijt', fit.c, as_array(X),
                                  fit.d))


def __check_relational__(data):
    if data.order != 2:
        raise ShapeError('baseline models need a K=2 panel, got Y dims {}'
                         .format(data.Y.dims))
