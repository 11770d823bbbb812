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

""" Least-squares fitting of the multilinear tensor regression model by block
coordinate descent: each sweep replaces every free factor B_k by its exact
conditional least-squares update, so the residual sum of squares never
increases.

Function 'fit_als' defines the entry point for running the algorithm.
"""
import logging

import numpy as np

from tenreg.algorithms.core import any_of
from tenreg.algorithms.core import dictionary_based_metrics
from tenreg.algorithms.core import init_parameters
from tenreg.algorithms.core import max_iterations
from tenreg.algorithms.core import random_state
from tenreg.algorithms.core import relative_change
from tenreg.algorithms.als import functions
from tenreg.algorithms.als import types
from tenreg.exceptions import ConfigurationError
from tenreg.exceptions import DivergenceError
from tenreg.exceptions import NumericalError
from tenreg.tensor.core import frobenius_norm_sq
from tenreg.tensor.types import KroneckerFactorSet

logger = logging.getLogger(__name__)

# Objective changes are measured against at least this fraction of ||Y||^2,
# so a numerically exact fit counts as converged.
OBJECTIVE_FLOOR = 1e-20


def fit_als(data, init=None, parameters=None, stopping_condition=None,
            measurements=(functions.objective_measurement,),
            measurer=dictionary_based_metrics):
    """ Fits Y = X x {B_1, ..., B_K, I} + E by alternating least squares.

    Args:
        data (tenreg.algorithms.als.types.RegressionDataset): The data.
        init (KroneckerFactorSet | int | None): Initial factors, or a seed
            for random initial factors (parameters['seed'] when None).
        parameters (dict): Overrides of default_parameters().
        stopping_condition (callable): Predicate over the ALSState; by default
            relative objective change below 'tol' or 'max_sweeps' sweeps.
        measurements (iterable): Metrics collected after every sweep.
        measurer (callable): Metric collector factory.

    Returns:
        tenreg.algorithms.als.types.FitReport: Normalized factors, the
        objective trace (initial value first), sweep count and convergence.

    Raises:
        ConfigurationError: If tol <= 0, max_sweeps < 1 or no mode is free.
        DivergenceError: If the objective becomes non-finite.
    """
    params = __init_parameters__(parameters)
    tol = params['tol']

    rng = random_state(params['seed'] if init is None or
                       isinstance(init, KroneckerFactorSet) else init)
    if isinstance(init, KroneckerFactorSet):
        factors = init
    elif params['warm_start']:
        factors = functions.identity_padded_factors(
            data.in_dims, data.out_dims, params['fixed_modes'])
    else:
        factors = functions.initialize_factors(
            rng, data.in_dims, data.out_dims, params['fixed_modes'])
    free = factors.free_modes
    if not free:
        raise ConfigurationError('at least one mode must be free')

    floor = OBJECTIVE_FLOOR * frobenius_norm_sq(data.Y)
    state = types.ALSState(rng, params, iterations=0, factors=factors,
                           objective_trace=(functions.rss(data, factors),))
    converged_ = relative_change(tol, floor)
    if stopping_condition is None:
        stopping_condition = any_of(max_iterations(params['max_sweeps']),
                                    converged_)

    results, measure = measurer(measurements)
    while not stopping_condition(state):
        for k in free:
            factors = factors.replace_factor(
                k, functions.conditional_minimizer(data, factors, k,
                                                   params['ridge']))
        objective = functions.rss(data, factors)
        if not np.isfinite(objective):
            raise DivergenceError('objective is not finite after sweep {}'
                                  .format(state.iterations + 1))
        state = state._replace(factors=factors,
                               iterations=state.iterations + 1,
                               objective_trace=state.objective_trace +
                               (objective,))
        results = measure(results, state)
        logger.debug('als sweep %d: rss %.6g', state.iterations, objective)

    converged = state.iterations > 0 and converged_(state)
    logger.info('als finished after %d sweeps (converged: %s, rss %.6g)',
                state.iterations, converged, state.objective_trace[-1])
    try:
        factors = functions.normalize_scale(state.factors)
    except NumericalError as error:
        logger.warning('final factors not normalized: %s', error)
        factors = state.factors
    return types.FitReport(factors=factors,
                           objective_trace=list(state.objective_trace),
                           sweeps=state.iterations, converged=converged,
                           metrics=results)


def default_parameters():
    return {'tol': 1e-8, 'max_sweeps': 500, 'ridge': 1e-8, 'seed': None,
            'fixed_modes': (), 'warm_start': False}


def __init_parameters__(params):
    params = init_parameters(default_parameters(), params)
    if not params['tol'] > 0:
        raise ConfigurationError('tol must be positive, got {}'
                                 .format(params['tol']))
    if params['max_sweeps'] < 1:
        raise ConfigurationError('max_sweeps must be at least 1')
    return params
