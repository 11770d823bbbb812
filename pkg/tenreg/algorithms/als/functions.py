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

""" Collection of functions used to implement least-squares estimation of the
multilinear tensor regression model Y = X x {B_1, ..., B_K, I} + E by block
coordinate descent.
"""
import logging

import numpy as np
from scipy import linalg

from tenreg.exceptions import ModeError
from tenreg.exceptions import NumericalError
from tenreg.exceptions import ShapeError
from tenreg.exceptions import SingularityError
from tenreg.tensor.core import multilinear
from tenreg.tensor.core import unfold
from tenreg.tensor.types import KroneckerFactorSet
from tenreg.tensor.types import as_array
from tenreg.tensor.types import dense_tensor
from tenreg.tensor.types import factor
from tenreg.tensor.types import identity_factor
from tenreg.algorithms.als.types import CrossMomentPair

logger = logging.getLogger(__name__)

# Cholesky pivots below this fraction of the mean diagonal count as singular.
SINGULAR_PIVOT = 1e-14


def conditional_minimizer(data, factors, k, ridge=1e-8):
    """ Exact least-squares update of B_k holding the other factors fixed.

    Computes B_k = Y_(k) X~_(k)^T (X~_(k) X~_(k)^T)^{-1} where
    X~ = X x {B_1, ..., I, ..., B_K}. Masked outcome cells are dropped, in
    which case every row of B_k gets its own Gram matrix.

    The ridge is not added unconditionally: a well-conditioned Gram matrix
    is inverted as is, so the update is the exact conditional minimizer.
    Only when the Cholesky factorization fails, or a pivot falls below
    SINGULAR_PIVOT times the mean diagonal, is ridge * trace(G) / dim * I
    added before solving (a zero design then gives a zero factor).

    Args:
        data (tenreg.algorithms.als.types.RegressionDataset): The data.
        factors (tenreg.tensor.KroneckerFactorSet): Current factors.
        k (int): 0-based free mode to update.
        ridge (float): Relative ridge used only if the Gram matrix is
            singular; 0 disables the fall-back.

    Returns:
        tenreg.tensor.FactorMatrix: The updated factor.

    Raises:
        ModeError: If mode k is fixed or out of range.
        SingularityError: If the Gram matrix is singular and ridge is 0.
    """
    check_free_mode(factors, k)
    matrices = __matrices__(factors)
    matrices[k] = None
    x_tilde = multilinear(as_array(data.X), matrices)
    weights = data.weights
    entries = solve_normal_equations(
        unfold(as_array(data.Y), k), unfold(x_tilde, k),
        None if weights is None else unfold(weights, k), ridge, k)
    return factor(entries)


def solve_normal_equations(y_k, x_k, weights, ridge, mode):
    """ Row-wise least squares of y_k (m x c) on x_k (p x c).

    Args:
        y_k (numpy.ndarray): Unfolded outcomes.
        x_k (numpy.ndarray): Unfolded, partially multiplied predictors.
        weights (numpy.ndarray): Optional 0/1 weights of y_k's shape.
        ridge (float): Relative ridge for singular Gram matrices.
        mode (int): Mode index reported in errors.

    Returns:
        numpy.ndarray: The m x p coefficient matrix.
    """
    if weights is None:
        gram = x_k.dot(x_k.T)
        return __solve__(gram, x_k.dot(y_k.T), ridge, mode).T

    rows = np.empty((y_k.shape[0], x_k.shape[0]))
    for i in range(y_k.shape[0]):
        weighted = x_k * weights[i]
        rows[i] = __solve__(weighted.dot(x_k.T), weighted.dot(y_k[i]), ridge,
                            mode)
    return rows


def __solve__(gram, rhs, ridge, mode):
    dim = gram.shape[0]
    scale = np.trace(gram) / dim
    try:
        cholesky = linalg.cho_factor(gram)
        if np.min(np.diag(cholesky[0])) ** 2 <= SINGULAR_PIVOT * scale:
            raise linalg.LinAlgError('numerically singular')
        return linalg.cho_solve(cholesky, rhs)
    except linalg.LinAlgError:
        if ridge <= 0:
            raise SingularityError('singular Gram matrix', mode)
    epsilon = ridge * scale if scale > 0 else ridge
    logger.warning('singular Gram matrix for mode %d, adding ridge %.3g',
                   mode + 1, epsilon)
    return linalg.solve(gram + epsilon * np.eye(dim), rhs, assume_a='pos')


def predict(factors, X):
    """ Y_hat = X x {B_1, ..., B_K, I}.

    Args:
        factors (tenreg.tensor.KroneckerFactorSet): The factors.
        X (tenreg.tensor.DenseTensor): Predictors; modes beyond the factor set
            are left unchanged.

    Returns:
        tenreg.tensor.DenseTensor: The prediction.

    Raises:
        ShapeError: If the factors do not conform to X.
    """
    __check_conformance__(factors, X.dims)
    return dense_tensor(predict_array(factors, as_array(X)))


def predict_array(factors, x):
    return multilinear(x, __matrices__(factors))


def residual_array(data, factors):
    residual = as_array(data.Y) - predict_array(factors, as_array(data.X))
    if data.mask is not None:
        residual = np.where(data.mask, 0., residual)
    return residual


def residual_tensor(data, factors):
    """ R = Y - X x {B_1, ..., B_K, I} with masked cells set to zero. """
    __check_conformance__(factors, data.X.dims)
    return dense_tensor(residual_array(data, factors))


def rss(data, factors):
    """ Residual sum of squares over unmasked cells. """
    residual = residual_array(data, factors)
    return float(np.vdot(residual, residual))


def normalize_scale(factors):
    """ Rescales the free factors to a common Frobenius norm.

    Each free B_k is multiplied by c_k = g / ||B_k|| where g is the geometric
    mean of the free factor norms; the product of the c_k is one, so the
    Kronecker chain is unchanged.

    Args:
        factors (tenreg.tensor.KroneckerFactorSet): The factors.

    Returns:
        tenreg.tensor.KroneckerFactorSet: The normalized factors.

    Raises:
        NumericalError: If a free factor is identically zero.

    Examples:
        >>> f = factor_set([2 * a, b / 2])
        >>> normalize_scale(f) # same as normalize_scale(factor_set([a, b]))
    """
    free = factors.free_modes
    if not free:
        return factors
    norms = [np.linalg.norm(factors.factors[k].entries) for k in free]
    for (k, norm) in zip(free, norms):
        if norm == 0:
            raise NumericalError('zero factor, scale undefined', k)
    common = np.exp(np.mean(np.log(norms)))
    for (k, norm) in zip(free, norms):
        factors = factors.replace_factor(
            k, factor(factors.factors[k].entries * (common / norm)))
    return factors


def initialize_factors(rng, in_dims, out_dims, fixed_modes=()):
    """ Random standard normal factors scaled to unit Frobenius norm.

    Args:
        rng (numpy.random.RandomState): The random number generator.
        in_dims (tuple): Predictor mode sizes p_k.
        out_dims (tuple): Outcome mode sizes m_k.
        fixed_modes (iterable): Modes pinned to the identity (p_k = m_k).

    Returns:
        tenreg.tensor.KroneckerFactorSet: The initial factors.
    """
    fixed_modes = set(fixed_modes)
    factors = []
    for (k, (m, p)) in enumerate(zip(out_dims, in_dims)):
        if k in fixed_modes:
            if m != p:
                raise ShapeError('fixed mode {} needs m_k = p_k, got {}x{}'
                                 .format(k + 1, m, p))
            factors.append(identity_factor(m))
        else:
            entries = rng.standard_normal((m, p))
            factors.append(factor(entries / np.linalg.norm(entries)))
    return KroneckerFactorSet(tuple(factors))


def identity_padded_factors(in_dims, out_dims, fixed_modes=()):
    """ Warm start: each B_k is the m_k x p_k identity, truncated or padded
    with zeros. """
    fixed_modes = set(fixed_modes)
    factors = []
    for (k, (m, p)) in enumerate(zip(out_dims, in_dims)):
        if k in fixed_modes:
            factors.append(identity_factor(m))
        else:
            factors.append(factor(np.eye(m, p)))
    return KroneckerFactorSet(tuple(factors))


def cross_moments(data):
    """ S_xx = sum x_r x_r^T / n and S_xy = sum x_r y_r^T / n over the
    replications, with x_r = vec(X_r) and y_r = vec(Y_r). """
    n = data.n
    x = np.reshape(data.X.data, (-1, n), order='F')
    y = np.reshape(data.Y.data, (-1, n), order='F')
    return CrossMomentPair(sxx=x.dot(x.T) / n, sxy=x.dot(y.T) / n)


def objective_measurement(state):
    return 'objective', state.objective_trace[-1]


def __matrices__(factors):
    return [None if f.fixed_identity else f.entries for f in factors.factors]


def check_free_mode(factors, k):
    if not 0 <= k < factors.order:
        raise ModeError('mode {} out of range'.format(k + 1), mode=k)
    if factors.factors[k].fixed_identity:
        raise ModeError('mode {} is fixed to the identity'.format(k + 1),
                        mode=k)


def __check_conformance__(factors, dims):
    if (len(dims) < factors.order or
            tuple(dims[:factors.order]) != factors.in_dims):
        raise ShapeError('factor columns {} do not conform to dims {}'
                         .format(factors.in_dims, tuple(dims)))
