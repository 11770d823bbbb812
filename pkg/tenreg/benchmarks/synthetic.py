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

""" Collection of planted-model problem generators used by the tests and
the simulation studies.
"""
import numpy as np

from tenreg.algorithms.core import random_state
from tenreg.algorithms.als.functions import predict_array
from tenreg.algorithms.als.types import AdditiveFit
from tenreg.algorithms.als.types import regression_dataset
from tenreg.algorithms.gls.functions import sample_array_normal
from tenreg.relational.types import event_panel
from tenreg.tensor.types import KroneckerFactorSet
from tenreg.tensor.types import dense_tensor
from tenreg.tensor.types import factor
from tenreg.tensor.types import identity_factor


def planted_factors(rng, in_dims, out_dims, fixed_modes=()):
    factors = []
    for (k, (m, p)) in enumerate(zip(out_dims, in_dims)):
        if k in fixed_modes:
            factors.append(identity_factor(m))
        else:
            factors.append(factor(rng.standard_normal((m, p))))
    return KroneckerFactorSet(tuple(factors))


def multilinear_problem(seed, in_dims, out_dims, n, noise_sd=0.0,
                        covariance=None, factors=None, fixed_modes=()):
    """ Y = X x {B_1, ..., B_K, I} + E with standard normal X.

    Args:
        seed (int | numpy.random.RandomState): Random seed or state.
        in_dims (tuple): p_1, ..., p_K.
        out_dims (tuple): m_1, ..., m_K.
        n (int): Number of replications.
        noise_sd (float): Standard deviation of i.i.d. errors.
        covariance (SeparableCovariance): Array normal errors instead of
            i.i.d. ones.
        factors (KroneckerFactorSet): The truth; planted at random if None.
        fixed_modes (iterable): Modes pinned to the identity.

    Returns:
        tuple: (RegressionDataset, KroneckerFactorSet truth).
    """
    rng = random_state(seed)
    if factors is None:
        factors = planted_factors(rng, in_dims, out_dims, fixed_modes)
    x = rng.standard_normal(tuple(in_dims) + (n,))
    y = predict_array(factors, x)
    if covariance is not None:
        y = y + np.asarray(sample_array_normal(
            tuple(out_dims) + (n,), covariance, rng).data).reshape(
                y.shape, order='F')
    elif noise_sd > 0:
        y = y + noise_sd * rng.standard_normal(y.shape)
    return regression_dataset(dense_tensor(x), dense_tensor(y)), factors


def additive_problem(seed, m, n, noise_sd=0.0):
    """ Y_t = A X_t 1 1^T + 1 1^T X_t B^T + E_t with sum(B) = 0.

    Returns:
        tuple: (RegressionDataset, AdditiveFit truth).
    """
    rng = random_state(seed)
    a, b = rng.standard_normal((m, m)), rng.standard_normal((m, m))
    b -= b.mean()
    x = rng.standard_normal((m, m, n))
    y = (np.einsum('ip,pt->it', a, x.sum(axis=1))[:, None, :] +
         np.einsum('jq,qt->jt', b, x.sum(axis=0))[None, :, :])
    if noise_sd > 0:
        y = y + noise_sd * rng.standard_normal(y.shape)
    return (regression_dataset(dense_tensor(x), dense_tensor(y)),
            AdditiveFit(A=a, B=b))


def ar1_covariance(dim, rho):
    """ Sigma[i, j] = rho^|i - j|, a strongly non-identity covariance. """
    index = np.arange(dim)
    return rho ** np.abs(index[:, None] - index[None, :])


def event_panel_problem(seed, nodes=25, types=4, periods=543, rate=0.5,
                        diagonal_defined=False):
    """ Poisson event counts with node-level activity heterogeneity. """
    rng = random_state(seed)
    activity = rng.gamma(2., 0.5, size=nodes)
    intensity = rate * np.einsum('i,j->ij', activity, activity)
    counts = rng.poisson(intensity[:, :, None, None],
                         size=(nodes, nodes, types, periods))
    if not diagonal_defined:
        counts[np.arange(nodes), np.arange(nodes)] = 0
    return event_panel(['n{:02d}'.format(i) for i in range(nodes)],
                       ['type{}'.format(j) for j in range(types)],
                       ['p{:04d}'.format(t) for t in range(periods)],
                       counts, diagonal_defined)
