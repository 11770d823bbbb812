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

""" Posterior summaries of stored Gibbs chains.
"""
import logging

import numpy as np
import pandas as pd

from tenreg.algorithms.gibbs.types import PosteriorSummary
from tenreg.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

DEFAULT_LEVELS = (0.01, 0.025, 0.975, 0.99)

# Factor entries are flagged when the central 98% band excludes zero, effect
# matrices when the central 95% band does.
FACTOR_BAND = (0.01, 0.99)
EFFECT_BAND = (0.025, 0.975)


def summarize(store, levels=DEFAULT_LEVELS, effect_modes=(),
              include_covariance=True):
    """ Per-entry posterior summaries pooled across chains.

    Args:
        store (tenreg.algorithms.gibbs.store.ChainStore): Saved states.
        levels (sequence of float): Quantile levels in (0, 1).
        effect_modes (sequence of int): 0-based modes flagged by the 95% rule
            instead of the 99% one.
        include_covariance (bool): Also summarize the Sigma_k and tau2.

    Returns:
        tenreg.algorithms.gibbs.types.PosteriorSummary: The table with
        columns mode, row, col, mean, sd, one column per level and flag
        ('+' or '-' when the band excludes zero), and the across-chain
        standard deviation of the posterior means.

    Raises:
        ConfigurationError: If the store holds no samples or a level is
            outside (0, 1).
    """
    samples = store.samples()
    if not samples:
        raise ConfigurationError('no post burn-in samples to summarize')
    levels = sorted(float(level) for level in levels)
    if any(not 0 < level < 1 for level in levels):
        raise ConfigurationError('levels must lie in (0, 1)')

    chain_ids = np.array([c for c in store.chains()
                          for _ in store.samples(c)])
    blocks = []
    first = samples[0]
    for (k, f) in enumerate(first.factors.factors):
        if not f.fixed_identity:
            band = EFFECT_BAND if k in effect_modes else FACTOR_BAND
            draws = np.stack([s.factors.factors[k].entries for s in samples])
            blocks.append(('B{}'.format(k + 1), draws, band))
    if include_covariance:
        for k in range(first.covariance.order):
            draws = np.stack([s.covariance.sigmas[k] for s in samples])
            blocks.append(('S{}'.format(k + 1), draws, None))
        draws = np.array([s.covariance.tau2 for s in samples])
        blocks.append(('tau2', draws.reshape(-1, 1, 1), None))

    tables, dispersions = zip(*[__summarize_block__(label, draws, levels,
                                                    band, chain_ids)
                                for (label, draws, band) in blocks])
    dispersion = pd.concat(dispersions, ignore_index=True)
    if len(store.chains()) > 1:
        logger.info('largest across-chain sd of posterior means: %.4g',
                    dispersion['chain_sd'].max())
    return PosteriorSummary(table=pd.concat(tables, ignore_index=True),
                            dispersion=dispersion)


def level_column(level):
    """ Column name of a quantile level: 0.025 -> 'q025', 0.99 -> 'q99'. """
    return 'q' + repr(float(level))[2:]


def __summarize_block__(label, draws, levels, band, chain_ids):
    rows, cols = draws.shape[1:]
    row_index, col_index = np.meshgrid(np.arange(rows), np.arange(cols),
                                       indexing='ij')
    table = pd.DataFrame({'mode': label, 'row': row_index.ravel() + 1,
                          'col': col_index.ravel() + 1,
                          'mean': draws.mean(axis=0).ravel(),
                          'sd': draws.std(axis=0).ravel()})
    for level in levels:
        table[level_column(level)] = np.quantile(draws, level,
                                                 axis=0).ravel()
    flag = np.full(rows * cols, '', dtype=object)
    if band is not None:
        lower = np.quantile(draws, band[0], axis=0).ravel()
        upper = np.quantile(draws, band[1], axis=0).ravel()
        flag[lower > 0] = '+'
        flag[upper < 0] = '-'
    table['flag'] = flag

    chain_means = np.stack([draws[chain_ids == c].mean(axis=0)
                            for c in np.unique(chain_ids)])
    dispersion = pd.DataFrame({'mode': label, 'row': table['row'],
                               'col': table['col'],
                               'chain_sd': chain_means.std(axis=0).ravel()})
    return table, dispersion
