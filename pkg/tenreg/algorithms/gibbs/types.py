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

""" Types of the Gibbs sampler for the multilinear tensor regression model.
"""
from collections import namedtuple

import numpy as np

from tenreg.exceptions import ConfigurationError
from tenreg.exceptions import DefinitenessError
from tenreg.exceptions import ShapeError

# Prior of one mode: B_k | Sigma_k ~ N(M0, Sigma_k, I) and
# Sigma_k ~ inverse-Wishart(S0^{-1}, nu0).
ModePrior = namedtuple('ModePrior', ['M0', 'S0', 'nu0'])

PriorSpec = namedtuple('PriorSpec', ['modes', 'eta0', 'tau0_sq'])

GibbsState = namedtuple('GibbsState', ['factors', 'covariance', 'iteration',
                                       'rng'])

PosteriorSummary = namedtuple('PosteriorSummary', ['table', 'dispersion'])


def default_prior(out_dims, in_dims, eta0=1.0, tau0_sq=1.0):
    """ Diffuse but proper defaults: M0 = 0, S0 = I, nu0 = m_k + 1. """
    return prior_spec([ModePrior(M0=np.zeros((m, p)), S0=np.eye(m),
                                 nu0=m + 1.)
                       for (m, p) in zip(out_dims, in_dims)], eta0, tau0_sq)


def prior_spec(modes, eta0=1.0, tau0_sq=1.0):
    """ Creates a validated PriorSpec.

    Raises:
        ShapeError: If M0 and S0 of a mode disagree.
        DefinitenessError: If an S0 is not positive definite.
        ConfigurationError: If nu0 <= m_k - 1, eta0 <= 0 or tau0_sq <= 0.
    """
    checked = []
    for (k, mode) in enumerate(modes):
        m0 = np.array(mode.M0, dtype=np.float64, ndmin=2)
        s0 = np.array(mode.S0, dtype=np.float64, ndmin=2)
        if s0.shape != (m0.shape[0], m0.shape[0]):
            raise ShapeError('S0 of mode {} must be {}x{}'.format(
                k + 1, m0.shape[0], m0.shape[0]))
        try:
            np.linalg.cholesky(s0)
        except np.linalg.LinAlgError:
            raise DefinitenessError('S0 is not positive definite', k)
        if not mode.nu0 > m0.shape[0] - 1:
            raise ConfigurationError('nu0 of mode {} must exceed {}'.format(
                k + 1, m0.shape[0] - 1))
        checked.append(ModePrior(M0=m0, S0=s0, nu0=float(mode.nu0)))
    if not (eta0 > 0 and tau0_sq > 0):
        raise ConfigurationError('eta0 and tau0_sq must be positive')
    return PriorSpec(modes=tuple(checked), eta0=float(eta0),
                     tau0_sq=float(tau0_sq))
