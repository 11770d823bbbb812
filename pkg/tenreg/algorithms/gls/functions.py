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

""" Collection of functions used to implement generalized least squares for
the multilinear tensor regression model under array normal errors,
E ~ N(0, tau2 * Sigma_K kron ... kron Sigma_1).

All Sigma^{-1/2} and Sigma^{1/2} factors are symmetric roots from an
eigendecomposition and are applied mode by mode.
"""
import logging

import numpy as np

from tenreg.algorithms.core import random_state
from tenreg.algorithms.als.functions import predict_array
from tenreg.algorithms.als.functions import solve_normal_equations
from tenreg.algorithms.als.functions import check_free_mode
from tenreg.algorithms.gls.types import ModeCorrelationDiagnostic
from tenreg.exceptions import DefinitenessError
from tenreg.exceptions import ShapeError
from tenreg.tensor.core import multilinear
from tenreg.tensor.core import unfold
from tenreg.tensor.types import as_array
from tenreg.tensor.types import dense_tensor
from tenreg.tensor.types import factor

logger = logging.getLogger(__name__)


def inv_sqrt(matrix, mode=None):
    """ Symmetric inverse square root R with R S R = I.

    Args:
        matrix (numpy.ndarray): Symmetric positive definite S.
        mode (int): Mode reported in errors.

    Returns:
        numpy.ndarray: S^{-1/2}.

    Raises:
        DefinitenessError: If S has a non-positive eigenvalue.

    Examples:
        >>> inv_sqrt(np.diag([4., 9.])) # diag(1/2, 1/3)
    """
    values, vectors = np.linalg.eigh(matrix)
    if values.min() <= 0:
        raise DefinitenessError('matrix is not positive definite', mode)
    return (vectors / np.sqrt(values)).dot(vectors.T)


def sym_sqrt(matrix, mode=None):
    """ Symmetric square root of a positive semidefinite matrix.

    Raises:
        DefinitenessError: If the matrix has a clearly negative eigenvalue.
    """
    values, vectors = np.linalg.eigh(matrix)
    if values.min() < -1e-12 * max(abs(values).max(), 1.0):
        raise DefinitenessError('matrix is not positive semidefinite', mode)
    return (vectors * np.sqrt(np.clip(values, 0., None))).dot(vectors.T)


def standardizers(covariance, skip=None):
    """ The Sigma_k^{-1/2} of every mode, None for the skipped mode. """
    return [None if k == skip else inv_sqrt(sigma, k)
            for (k, sigma) in enumerate(covariance.sigmas)]


def complete_outcomes(data, factors):
    """ Y with masked cells replaced by the current mean prediction. """
    y = as_array(data.Y)
    if data.mask is None:
        return y
    return np.where(data.mask, predict_array(factors, as_array(data.X)), y)


def gls_conditional_update(data, factors, covariance, k, ridge=1e-8):
    """ Conditional maximum-likelihood update of B_k.

    With Y~_(k) = Y_(k) Sigma_{-k}^{-1/2} and
    X~_(k) = X_(k) B_{-k}^T Sigma_{-k}^{-1/2} the update is
    Y~_(k) X~_(k)^T (X~_(k) X~_(k)^T)^{-1}, the OLS formula on whitened data.
    Sigma_k itself and tau2 cancel.

    Args:
        data (tenreg.algorithms.als.types.RegressionDataset): The data.
        factors (tenreg.tensor.KroneckerFactorSet): Current factors.
        covariance (tenreg.algorithms.gls.types.SeparableCovariance): Current
            covariance.
        k (int): 0-based free mode.
        ridge (float): Relative ridge for singular Gram matrices.

    Returns:
        tenreg.tensor.FactorMatrix: The updated factor.
    """
    check_free_mode(factors, k)
    roots = standardizers(covariance, skip=k)
    whitened = [None if root is None else
                (root if f.fixed_identity else root.dot(f.entries))
                for (root, f) in zip(roots, factors.factors)]
    y_tilde = multilinear(complete_outcomes(data, factors), roots)
    x_tilde = multilinear(as_array(data.X), whitened)
    return factor(solve_normal_equations(unfold(y_tilde, k),
                                         unfold(x_tilde, k), None, ridge, k))


def sigma_mle_update(residual, covariance, k, ridge=1e-8):
    """ Moment update Sigma_k = E~_(k) E~_(k)^T / m_{-k}.

    E~ is the residual standardized along every mode except k and divided
    by tau. The result is not gauge normalized; see trace_gauge.

    Args:
        residual (tenreg.tensor.DenseTensor | numpy.ndarray): Residual with
            dims m_1, ..., m_K (and optionally the replication mode).
        covariance (tenreg.algorithms.gls.types.SeparableCovariance): Current
            covariance.
        k (int): 0-based mode.
        ridge (float): Relative ridge added if E~_(k) is rank deficient.

    Returns:
        numpy.ndarray: The m_k x m_k update.
    """
    array = __as_residual_array__(residual)
    standardized = multilinear(array, standardizers(covariance, skip=k))
    unfolded = unfold(standardized, k) / np.sqrt(covariance.tau2)
    sigma = unfolded.dot(unfolded.T) / unfolded.shape[1]
    sigma = (sigma + sigma.T) / 2
    dim = sigma.shape[0]
    scale = np.trace(sigma) / dim
    if np.linalg.eigvalsh(sigma).min() <= 1e-12 * scale:
        epsilon = ridge * scale if scale > 0 else ridge
        logger.warning('rank-deficient residual for mode %d, adding ridge '
                       '%.3g', k + 1, epsilon)
        sigma = sigma + epsilon * np.eye(dim)
    return sigma


def trace_gauge(covariance):
    """ Rescales every Sigma_k to trace m_k, absorbing the scale into tau2.

    tau2 * Sigma_K kron ... kron Sigma_1 is unchanged.
    """
    tau2 = covariance.tau2
    sigmas = []
    for sigma in covariance.sigmas:
        scale = np.trace(sigma) / sigma.shape[0]
        sigmas.append(sigma / scale)
        tau2 *= scale
    return covariance._replace(sigmas=tuple(sigmas), tau2=tau2)


def standardized_norm_sq(residual, covariance):
    """ ||R x {Sigma_1^{-1/2}, ..., Sigma_K^{-1/2}}||^2. """
    array = __as_residual_array__(residual)
    standardized = multilinear(array, standardizers(covariance))
    return float(np.vdot(standardized, standardized))


def tau2_mle(residual, covariance, observed=None):
    """ ||standardized residual||^2 / m, with m the number of observed
    cells.

    Args:
        residual (tenreg.tensor.DenseTensor | numpy.ndarray): Residual with
            masked cells set to zero.
        covariance (tenreg.algorithms.gls.types.SeparableCovariance): Current
            covariance.
        observed (int): Number of unmasked cells; all cells when None.
    """
    array = __as_residual_array__(residual)
    observed = array.size if observed is None else observed
    return standardized_norm_sq(array, covariance) / observed


def array_normal_nll(residual, covariance, observed=None):
    """ Negative log-likelihood of a residual under the array normal model.

    Masked cells carry a zero residual and are left out of the cell count,
    so the normalizing terms cover the observed cells only.
    """
    array = __as_residual_array__(residual)
    size = array.size
    observed = size if observed is None else observed
    logdets = sum(size / s.shape[0] * np.linalg.slogdet(s)[1]
                  for s in covariance.sigmas) * (observed / size)
    return 0.5 * (observed * np.log(2 * np.pi) +
                  observed * np.log(covariance.tau2) + logdets +
                  standardized_norm_sq(array, covariance) / covariance.tau2)


def sample_array_normal(dims, covariance, seed=None):
    """ Draws tau * (Z x {Sigma_1^{1/2}, ..., Sigma_K^{1/2}}), Z standard
    normal, so that the vectorized covariance is
    tau2 * Sigma_K kron ... kron Sigma_1.

    Args:
        dims (tuple): Dimensions; a trailing replication mode beyond the
            covariance order is allowed.
        covariance (tenreg.algorithms.gls.types.SeparableCovariance): The
            covariance; tau2 = 0 yields the zero tensor.
        seed (int | numpy.random.RandomState): Random seed or state.

    Returns:
        tenreg.tensor.DenseTensor: The draw.

    Raises:
        ShapeError: If the covariance does not conform to dims.
    """
    dims = tuple(int(d) for d in dims)
    if (len(dims) not in (covariance.order, covariance.order + 1) or
            dims[:covariance.order] != covariance.dims):
        raise ShapeError('covariance dims {} do not conform to {}'
                         .format(covariance.dims, dims))
    rng = random_state(seed)
    z = rng.standard_normal(dims)
    roots = [sym_sqrt(s, k) for (k, s) in enumerate(covariance.sigmas)]
    return dense_tensor(np.sqrt(covariance.tau2) * multilinear(z, roots))


def mode_residual_correlation(residual, k):
    """ Correlation matrix of the rows of R_(k) and its eigendecomposition.

    Rows with zero variance get zero correlations (unit diagonal kept).

    Args:
        residual (tenreg.tensor.DenseTensor | numpy.ndarray): The residual.
        k (int): 0-based mode.

    Returns:
        tenreg.algorithms.gls.types.ModeCorrelationDiagnostic: Correlation
        with eigenvalues in descending order.
    """
    array = __as_residual_array__(residual)
    if not 0 <= k < array.ndim:
        raise ShapeError('mode {} out of range'.format(k + 1))
    rows = unfold(array, k)
    centered = rows - rows.mean(axis=1, keepdims=True)
    covariance = centered.dot(centered.T)
    sd = np.sqrt(np.diag(covariance))
    constant = sd == 0
    if constant.any():
        logger.warning('zero-variance rows %s in mode %d; their correlations '
                       'are set to zero', list(np.flatnonzero(constant) + 1),
                       k + 1)
    safe = np.where(constant, 1., sd)
    correlation = covariance / np.outer(safe, safe)
    correlation[constant, :] = 0.
    correlation[:, constant] = 0.
    correlation = np.clip((correlation + correlation.T) / 2, -1., 1.)
    np.fill_diagonal(correlation, 1.)
    values, vectors = np.linalg.eigh(correlation)
    return ModeCorrelationDiagnostic(mode=k, correlation=correlation,
                                     eigenvalues=values[::-1],
                                     eigenvectors=vectors[:, ::-1])


def __as_residual_array__(residual):
    if hasattr(residual, 'dims'):
        return as_array(residual)
    return np.asarray(residual, dtype=np.float64)
