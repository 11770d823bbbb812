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

""" Collection of functions used to implement the Gibbs sampler: conjugate
draws for one mode of the regression, the tau2 full conditional, the
masked outcome cells and the scale normalization of saved states.
"""
import numpy as np
from scipy import linalg
from scipy import stats

from tenreg.algorithms.core import random_state
from tenreg.algorithms.als.functions import normalize_scale
from tenreg.algorithms.gls.functions import standardizers
from tenreg.algorithms.gls.functions import sym_sqrt
from tenreg.algorithms.gls.functions import trace_gauge
from tenreg.exceptions import ConfigurationError
from tenreg.exceptions import DefinitenessError
from tenreg.tensor.core import multilinear
from tenreg.tensor.core import unfold


def sample_inverse_wishart(s_inv, nu, seed=None):
    """ Draws Sigma ~ inverse-Wishart(S^{-1}, nu), parameterized so that
    E[Sigma^{-1}] = nu S^{-1}: Sigma^{-1} is Wishart with scale S^{-1}.

    Args:
        s_inv (numpy.ndarray): The SPD matrix S^{-1}.
        nu (float): Degrees of freedom, nu > dim - 1.
        seed (int | numpy.random.RandomState): Random seed or state.

    Returns:
        numpy.ndarray: An SPD draw.

    Raises:
        ConfigurationError: If nu <= dim - 1.
        DefinitenessError: If S^{-1} is not positive definite.
    """
    s_inv = np.array(s_inv, dtype=np.float64, ndmin=2)
    dim = s_inv.shape[0]
    if not nu > dim - 1:
        raise ConfigurationError('nu must exceed {}, got {}'.format(dim - 1,
                                                                   nu))
    try:
        np.linalg.cholesky(s_inv)
    except np.linalg.LinAlgError:
        raise DefinitenessError('inverse-Wishart scale is not positive '
                                'definite')
    precision = np.atleast_2d(stats.wishart(df=nu, scale=s_inv).rvs(
        random_state=random_state(seed)))
    sigma = linalg.inv(precision)
    return (sigma + sigma.T) / 2


def sample_matrix_normal(mean, row_cov, col_cov, seed=None):
    """ Draws M + RowCov^{1/2} Z ColCov^{1/2} with Z standard normal; the
    vectorized covariance is ColCov kron RowCov.

    Raises:
        DefinitenessError: If a covariance is not positive semidefinite.
    """
    mean = np.array(mean, dtype=np.float64, ndmin=2)
    z = random_state(seed).standard_normal(mean.shape)
    return mean + sym_sqrt(np.atleast_2d(row_cov)).dot(z).dot(
        sym_sqrt(np.atleast_2d(col_cov)))


def posterior_parameters(y, x, mode_prior, efficient=True):
    """ Conjugate posterior of Y ~ N(B X, Sigma, I_n) under the mode prior.

    Returns (S_n, M_n, (I_p + X X^T)^{-1}, nu_n) with
    M_n = (M0 + Y X^T)(I_p + X X^T)^{-1} and
    S_n = S0 + D (I_n + X^T X)^{-1} D^T, D = Y - M0 X (D = Y for the default
    M0 = 0). The efficient form uses
    (I_n + X^T X)^{-1} = I_n - X^T (I_p + X X^T)^{-1} X and only inverts a
    p x p matrix.

    Args:
        y (numpy.ndarray): m x n outcomes Y~.
        x (numpy.ndarray): p x n predictors X~.
        mode_prior (tenreg.algorithms.gibbs.types.ModePrior): The prior.
        efficient (bool): Use the p x p form.
    """
    n = y.shape[1]
    gram = np.eye(x.shape[0]) + x.dot(x.T)
    gram_inv = linalg.cho_solve(linalg.cho_factor(gram), np.eye(gram.shape[0]))
    gram_inv = (gram_inv + gram_inv.T) / 2
    residual = y - mode_prior.M0.dot(x)
    if efficient:
        projected = residual.dot(x.T)
        s_n = (mode_prior.S0 + residual.dot(residual.T) -
               projected.dot(gram_inv).dot(projected.T))
    else:
        s_n = mode_prior.S0 + residual.dot(
            linalg.solve(np.eye(n) + x.T.dot(x), residual.T, assume_a='pos'))
    m_n = (mode_prior.M0 + y.dot(x.T)).dot(gram_inv)
    return (s_n + s_n.T) / 2, m_n, gram_inv, mode_prior.nu0 + n


def posterior_update_mode(y, x, mode_prior, seed=None):
    """ Draws (Sigma_k, B_k) from their joint full conditional.

    Sigma_k ~ inverse-Wishart(S_n^{-1}, nu0 + n), then
    B_k | Sigma_k ~ N(M_n, Sigma_k, (I + X~ X~^T)^{-1}).

    Args:
        y (numpy.ndarray): Y~ = Y_(k) Sigma_{-k}^{-1/2} / tau.
        x (numpy.ndarray): X~ = X_(k) B_{-k}^T Sigma_{-k}^{-1/2} / tau.
        mode_prior (tenreg.algorithms.gibbs.types.ModePrior): The prior.
        seed (int | numpy.random.RandomState): Random seed or state.

    Returns:
        tuple: (Sigma_k, B_k).
    """
    rng = random_state(seed)
    s_n, m_n, gram_inv, nu_n = posterior_parameters(y, x, mode_prior)
    sigma = sample_inverse_wishart(linalg.inv(s_n), nu_n, rng)
    return sigma, sample_matrix_normal(m_n, sigma, gram_inv, rng)


def posterior_update_fixed_mode(y, x, mode_prior, seed=None):
    """ Draws Sigma_k for a mode whose factor is pinned to the identity:
    Sigma_k ~ inverse-Wishart((S0 + D D^T)^{-1}, nu0 + n), D = Y~ - X~. """
    residual = y - x
    s_n = mode_prior.S0 + residual.dot(residual.T)
    return sample_inverse_wishart(linalg.inv((s_n + s_n.T) / 2),
                                  mode_prior.nu0 + y.shape[1],
                                  random_state(seed))


def sample_tau2(residual_norm_sq, m_total, eta0, tau0_sq, seed=None):
    """ tau2 ~ inverse-gamma((eta0 + m) / 2, (eta0 tau0^2 + ||R~||^2) / 2).

    Raises:
        ConfigurationError: On a negative residual norm or non-positive
            m_total, eta0 or tau0_sq.
    """
    if residual_norm_sq < 0 or not (m_total > 0 and eta0 > 0 and
                                    tau0_sq > 0):
        raise ConfigurationError('invalid inverse-gamma arguments')
    shape = (eta0 + m_total) / 2.
    rate = (eta0 * tau0_sq + residual_norm_sq) / 2.
    return float(stats.invgamma(a=shape, scale=rate).rvs(
        random_state=random_state(seed)))


def whitened_mode_data(y, x, factors, covariance, k):
    """ Whitened Y~ and X~ entering the full conditional of mode k. """
    roots = standardizers(covariance, skip=k)
    whitened = [None if root is None else
                (root if f.fixed_identity else root.dot(f.entries))
                for (root, f) in zip(roots, factors.factors)]
    tau = np.sqrt(covariance.tau2)
    return (unfold(multilinear(y, roots), k) / tau,
            unfold(multilinear(x, whitened), k) / tau)


def normalize_factors(state):
    """ Equal-norm gauge for the factors and trace gauge for the Sigma_k.

    Both Kronecker chains, of coefficients and of tau2-scaled covariances,
    are unchanged.
    """
    return state._replace(factors=normalize_scale(state.factors),
                          covariance=trace_gauge(state.covariance))


def sample_masked_outcomes(y, mean, mask, covariance, seed=None):
    """ Draws the masked cells of y from their conditional distribution given
    the unmasked cells of the same replication.

    Every replication y[..., t] is N(mean[..., t], tau2 * Sigma_K kron ...
    kron Sigma_1). With precision P the masked block M is normal with
    precision P_MM and mean mean_M - P_MM^{-1} P_MO (y_O - mean_O).
    Replications sharing a mask pattern share one Cholesky factor.

    Args:
        y (numpy.ndarray): Outcomes, replication mode last.
        mean (numpy.ndarray): Mean prediction of y's shape.
        mask (numpy.ndarray): Boolean array of y's shape, True for masked
            cells; None leaves y unchanged.
        covariance (tenreg.algorithms.gls.types.SeparableCovariance): The
            error covariance.
        seed (int | numpy.random.RandomState): Random seed or state.

    Returns:
        numpy.ndarray: A copy of y with the masked cells drawn.
    """
    y = np.array(y, dtype=np.float64, copy=True)
    if mask is None or not mask.any():
        return y
    rng = random_state(seed)
    precisions = []
    for (k, sigma) in enumerate(covariance.sigmas):
        try:
            precision = linalg.inv(sigma)
        except linalg.LinAlgError:
            raise DefinitenessError('covariance is singular', k)
        precisions.append((precision + precision.T) / 2)
    coupling = multilinear(np.where(mask, 0., y - mean),
                           precisions) / covariance.tau2

    dims, n = y.shape[:-1], y.shape[-1]
    flat_y = np.reshape(y, (-1, n), order='F').copy()
    flat_mask = np.reshape(mask, (-1, n), order='F')
    flat_mean = np.reshape(mean, (-1, n), order='F')
    flat_coupling = np.reshape(coupling, (-1, n), order='F')
    patterns = {}
    for t in range(n):
        cells = np.flatnonzero(flat_mask[:, t])
        if cells.size:
            patterns.setdefault(cells.tobytes(), (cells, []))[1].append(t)

    for (cells, times) in patterns.values():
        index = np.unravel_index(cells, dims, order='F')
        block = np.full((cells.size, cells.size), 1. / covariance.tau2)
        for (k, precision) in enumerate(precisions):
            block = block * precision[np.ix_(index[k], index[k])]
        try:
            lower = linalg.cholesky(block, lower=True)
        except linalg.LinAlgError:
            raise DefinitenessError('masked-cell precision is not positive '
                                    'definite')
        cells_times = np.ix_(cells, times)
        shift = linalg.cho_solve((lower, True), flat_coupling[cells_times])
        noise = linalg.solve_triangular(
            lower, rng.standard_normal(shift.shape), lower=True, trans='T')
        flat_y[cells_times] = flat_mean[cells_times] - shift + noise
    return np.reshape(flat_y, y.shape, order='F')
