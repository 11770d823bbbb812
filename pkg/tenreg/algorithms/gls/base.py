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

""" Generalized least squares / maximum likelihood for the multilinear tensor
regression model with separable covariance.

Each sweep updates every free B_k by its whitened least-squares formula, then
every Sigma_k by its conditional MLE (trace gauge applied, scale moved into
tau2), then tau2 by its MLE. Without masked cells every step maximizes the
likelihood over its block, so the negative log-likelihood never increases.
Masked outcome cells are filled with the current mean prediction for the
factor updates and are left out of the cell count of the tau2 and
likelihood terms.

Function 'fit_gls' defines the entry point for running the algorithm.
"""
import logging

import numpy as np

from tenreg.algorithms.core import any_of
from tenreg.algorithms.core import dictionary_based_metrics
from tenreg.algorithms.core import init_parameters
from tenreg.algorithms.core import max_iterations
from tenreg.algorithms.core import random_state
from tenreg.algorithms.core import relative_change
from tenreg.algorithms.als import base as als_base
from tenreg.algorithms.als.functions import normalize_scale
from tenreg.algorithms.als.functions import objective_measurement
from tenreg.algorithms.als.functions import residual_array
from tenreg.algorithms.gls import functions
from tenreg.algorithms.gls import types
from tenreg.exceptions import ConfigurationError
from tenreg.exceptions import DivergenceError

logger = logging.getLogger(__name__)


def fit_gls(data, init_factors=None, init_covariance=None, parameters=None,
            stopping_condition=None, measurements=(objective_measurement,),
            measurer=dictionary_based_metrics):
    """ Fits the multilinear model under array normal errors.

    Args:
        data (tenreg.algorithms.als.types.RegressionDataset): The data.
        init_factors (tenreg.tensor.KroneckerFactorSet): Initial factors;
            by default the fit_als estimate.
        init_covariance (SeparableCovariance): Initial covariance; by default
            identity Sigma_k with the tau2 MLE.
        parameters (dict): Overrides of default_parameters().
        stopping_condition (callable): Predicate over the GLSState.
        measurements (iterable): Metrics collected after every sweep.
        measurer (callable): Metric collector factory.

    Returns:
        tenreg.algorithms.gls.types.GLSReport: Normalized factors, gauged
        covariance and the negative log-likelihood trace.

    Raises:
        ConfigurationError: On invalid parameters.
        DivergenceError: If the likelihood becomes non-finite.
        DefinitenessError: If a covariance update is not positive definite.
    """
    params = init_parameters(default_parameters(), parameters)
    if not params['tol'] > 0:
        raise ConfigurationError('tol must be positive')
    if params['max_sweeps'] < 1:
        raise ConfigurationError('max_sweeps must be at least 1')
    rng = random_state(params['seed'])

    factors = init_factors
    if factors is None:
        als_params = {key: params[key] for key in als_base.default_parameters()}
        factors = als_base.fit_als(data, parameters=als_params).factors
    free = factors.free_modes
    if not free:
        raise ConfigurationError('at least one mode must be free')

    covariance = init_covariance
    if covariance is None:
        covariance = types.identity_covariance(data.out_dims)
        covariance = covariance._replace(tau2=max(functions.tau2_mle(
            residual_array(data, factors), covariance, data.observed_cells),
            np.finfo(float).tiny))
    covariance = functions.trace_gauge(covariance)

    state = types.GLSState(rng, params, iterations=0, factors=factors,
                           covariance=covariance,
                           objective_trace=(__nll__(data, factors,
                                                    covariance),))
    converged_ = relative_change(params['tol'], 1.0)
    if stopping_condition is None:
        stopping_condition = any_of(max_iterations(params['max_sweeps']),
                                    converged_)

    results, measure = measurer(measurements)
    while not stopping_condition(state):
        factors, covariance = __sweep__(data, state.factors, state.covariance,
                                        params['ridge'])
        objective = __nll__(data, factors, covariance)
        if not np.isfinite(objective):
            raise DivergenceError('likelihood is not finite after sweep {}'
                                  .format(state.iterations + 1))
        state = state._replace(factors=factors, covariance=covariance,
                               iterations=state.iterations + 1,
                               objective_trace=state.objective_trace +
                               (objective,))
        results = measure(results, state)
        logger.debug('gls sweep %d: nll %.8g', state.iterations, objective)

    converged = state.iterations > 0 and converged_(state)
    logger.info('gls finished after %d sweeps (converged: %s, nll %.8g)',
                state.iterations, converged, state.objective_trace[-1])
    return types.GLSReport(factors=normalize_scale(state.factors),
                           covariance=state.covariance,
                           objective_trace=list(state.objective_trace),
                           sweeps=state.iterations, converged=converged,
                           metrics=results)


def default_parameters():
    return {'tol': 1e-8, 'max_sweeps': 500, 'ridge': 1e-8, 'seed': None,
            'fixed_modes': (), 'warm_start': False}


def __sweep__(data, factors, covariance, ridge):
    for k in factors.free_modes:
        factors = factors.replace_factor(
            k, functions.gls_conditional_update(data, factors, covariance, k,
                                                ridge))
    residual = residual_array(data, factors)
    for k in range(covariance.order):
        sigma = functions.sigma_mle_update(residual, covariance, k, ridge)
        scale = np.trace(sigma) / sigma.shape[0]
        covariance = covariance.replace_sigma(k, sigma / scale)._replace(
            tau2=covariance.tau2 * scale)
    covariance = covariance._replace(
        tau2=functions.tau2_mle(residual, covariance, data.observed_cells))
    return factors, covariance


def __nll__(data, factors, covariance):
    return functions.array_normal_nll(residual_array(data, factors),
                                      covariance, data.observed_cells)
