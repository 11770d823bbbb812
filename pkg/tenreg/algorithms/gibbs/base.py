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

""" Gibbs sampler for the multilinear tensor regression model with array
normal errors and conjugate priors.

Each iteration first draws the masked outcome cells given the observed ones,
then, for every mode k in turn, (Sigma_k, B_k) from their joint full
conditional given the data standardized by all other modes, and finally tau2
from its inverse-gamma full conditional. Saved states are scale normalized
so the chains are comparable.

Function 'gibbs_run' defines the entry point for running the sampler.
"""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from tenreg.algorithms.core import init_parameters
from tenreg.algorithms.core import random_state
from tenreg.algorithms.core import spawn_seeds
from tenreg.algorithms.als import base as als_base
from tenreg.algorithms.als.functions import initialize_factors
from tenreg.algorithms.als.functions import predict_array
from tenreg.algorithms.als.functions import residual_array
from tenreg.algorithms.gibbs import functions
from tenreg.algorithms.gibbs import types
from tenreg.algorithms.gibbs.store import ChainStore
from tenreg.algorithms.gls.functions import standardized_norm_sq
from tenreg.algorithms.gls.functions import tau2_mle
from tenreg.algorithms.gls.types import identity_covariance
from tenreg.exceptions import ConfigurationError
from tenreg.exceptions import SamplerError
from tenreg.exceptions import TenregError
from tenreg.tensor.types import as_array
from tenreg.tensor.types import factor

logger = logging.getLogger(__name__)


def gibbs_run(data, prior=None, parameters=None, store=None):
    """ Runs independent Gibbs chains.

    Args:
        data (tenreg.algorithms.als.types.RegressionDataset): The data.
        prior (tenreg.algorithms.gibbs.types.PriorSpec): The prior; by
            default tenreg.algorithms.gibbs.types.default_prior.
        parameters (dict): Overrides of default_parameters(). 'seeds' gives
            one seed per chain; otherwise per-chain seeds are spawned from
            'seed'. 'fix_tau2' pins tau2 to a value instead of sampling it.
        store (ChainStore): Destination of the saved states; a new in-memory
            store by default.

    Returns:
        ChainStore: The post burn-in, thinned and normalized states.

    Raises:
        ConfigurationError: If iters <= burnin, burnin < 0, chains < 1,
            thin < 1, n = 0 or the prior does not conform.
        SamplerError: If a chain fails; the states saved before the failure
            remain in the store.
    """
    params = __init_parameters__(parameters)
    if data.n == 0:
        raise ConfigurationError('at least one replication is required')
    if prior is None:
        prior = types.default_prior(data.out_dims, data.in_dims)
    __check_prior__(prior, data)
    if store is None:
        store = ChainStore()

    seeds = params['seeds']
    if seeds is None:
        seeds = spawn_seeds(random_state(params['seed']), params['chains'])
    elif len(seeds) != params['chains']:
        raise ConfigurationError('{} seeds given for {} chains'.format(
            len(seeds), params['chains']))

    def run_chain(chain):
        return __run_chain__(data, prior, params, store, chain,
                             int(seeds[chain]))

    logger.info('running %d gibbs chains of %d iterations (burn-in %d)',
                params['chains'], params['iters'], params['burnin'])
    with ThreadPoolExecutor(max_workers=max(1, params['threads'])) as pool:
        futures = [pool.submit(run_chain, c) for c in range(params['chains'])]
        errors = [future.exception() for future in futures]
    failed = [error for error in errors if error is not None]
    if failed:
        raise failed[0]
    return store


def default_parameters():
    return {'iters': 5500, 'burnin': 500, 'chains': 4, 'thin': 1,
            'seed': None, 'seeds': None, 'threads': 1, 'warm_start': True,
            'fixed_modes': (), 'fix_tau2': None}


def gibbs_step(data, prior, state, fix_tau2=None):
    """ One full Gibbs iteration: every (Sigma_k, B_k), then tau2.

    Args:
        data (tenreg.algorithms.als.types.RegressionDataset): The data.
        prior (tenreg.algorithms.gibbs.types.PriorSpec): The prior.
        state (tenreg.algorithms.gibbs.types.GibbsState): Current state.
        fix_tau2 (float): Keeps tau2 at this value instead of sampling it.

    Returns:
        tenreg.algorithms.gibbs.types.GibbsState: The next state.
    """
    rng = state.rng
    factors, covariance = state.factors, state.covariance
    x = as_array(data.X)
    y = functions.sample_masked_outcomes(as_array(data.Y),
                                         predict_array(factors, x), data.mask,
                                         covariance, rng)
    for k in range(factors.order):
        y_t, x_t = functions.whitened_mode_data(y, x, factors, covariance, k)
        if factors.factors[k].fixed_identity:
            sigma = functions.posterior_update_fixed_mode(
                y_t, x_t, prior.modes[k], rng)
        else:
            sigma, entries = functions.posterior_update_mode(
                y_t, x_t, prior.modes[k], rng)
            factors = factors.replace_factor(k, factor(entries))
        covariance = covariance.replace_sigma(k, sigma)
    if fix_tau2 is None:
        residual = y - predict_array(factors, x)
        tau2 = functions.sample_tau2(
            standardized_norm_sq(residual, covariance._replace(tau2=1.0)),
            residual.size, prior.eta0, prior.tau0_sq, rng)
    else:
        tau2 = float(fix_tau2)
    return state._replace(factors=factors,
                          covariance=covariance._replace(tau2=tau2),
                          iteration=state.iteration + 1)


def __run_chain__(data, prior, params, store, chain, seed):
    rng = random_state(seed)
    store.open_chain(chain, {'chain': chain, 'seed': seed,
                             'iters': params['iters'],
                             'burnin': params['burnin'],
                             'thin': params['thin'],
                             'prior': __prior_document__(prior)})
    state, saved = None, 0
    try:
        state = __initial_state__(data, params, chain, rng)
        while state.iteration < params['iters']:
            state = gibbs_step(data, prior, state, params['fix_tau2'])
            done = state.iteration - params['burnin']
            if done > 0 and (done - 1) % params['thin'] == 0:
                store.append(chain, functions.normalize_factors(state))
                saved += 1
    except (TenregError, np.linalg.LinAlgError, ValueError) as error:
        # iteration 0 is the initialization
        completed = 0 if state is None else state.iteration
        failed_at = 0 if state is None else completed + 1
        store.close_chain(chain, status='failed', iterations=completed,
                          saved=saved, error=str(error))
        logger.error('gibbs chain %d failed at iteration %d: %s', chain,
                     failed_at, error)
        raise SamplerError(str(error), chain=chain,
                           iteration=failed_at) from error
    store.close_chain(chain, iterations=state.iteration, saved=saved)
    logger.info('gibbs chain %d done: %d states saved', chain, saved)
    return saved


def __initial_state__(data, params, chain, rng):
    if chain == 0 and params['warm_start']:
        factors = als_base.fit_als(
            data, parameters={'seed': rng.randint(2 ** 31 - 1),
                              'fixed_modes': params['fixed_modes']}).factors
    else:
        factors = initialize_factors(rng, data.in_dims, data.out_dims,
                                     params['fixed_modes'])
    covariance = identity_covariance(data.out_dims)
    if params['fix_tau2'] is not None:
        tau2 = float(params['fix_tau2'])
    else:
        residual = residual_array(data, factors)
        tau2 = max(tau2_mle(residual, covariance, data.observed_cells), 1e-8)
    return types.GibbsState(factors=factors,
                            covariance=covariance._replace(tau2=tau2),
                            iteration=0, rng=rng)


def __init_parameters__(parameters):
    params = init_parameters(default_parameters(), parameters)
    if params['chains'] < 1:
        raise ConfigurationError('chains must be at least 1')
    if not 0 <= params['burnin'] < params['iters']:
        raise ConfigurationError('need 0 <= burnin < iters, got {} and {}'
                                 .format(params['burnin'], params['iters']))
    if params['thin'] < 1:
        raise ConfigurationError('thin must be at least 1')
    if params['fix_tau2'] is not None and not params['fix_tau2'] > 0:
        raise ConfigurationError('fix_tau2 must be positive')
    return params


def __check_prior__(prior, data):
    if len(prior.modes) != data.order:
        raise ConfigurationError('prior has {} modes, data has {}'.format(
            len(prior.modes), data.order))
    for (k, (mode, m, p)) in enumerate(zip(prior.modes, data.out_dims,
                                           data.in_dims)):
        if mode.S0.shape != (m, m) or mode.M0.shape != (m, p):
            raise ConfigurationError('prior of mode {} does not conform to '
                                     '{}x{}'.format(k + 1, m, p))


def __prior_document__(prior):
    return {'eta0': prior.eta0, 'tau0_sq': prior.tau0_sq,
            'modes': [{'M0': mode.M0.tolist(), 'S0': mode.S0.tolist(),
                       'nu0': mode.nu0} for mode in prior.modes]}
