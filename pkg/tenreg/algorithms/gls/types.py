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

""" Types of the separable-covariance (array normal) algorithms.
"""
from collections import namedtuple

import numpy as np

from tenreg.algorithms.core import State
from tenreg.exceptions import ConfigurationError
from tenreg.exceptions import DefinitenessError
from tenreg.exceptions import ShapeError


class SeparableCovariance(namedtuple('SeparableCovariance',
                                     ['sigmas', 'tau2'])):
    """ Per-mode covariances Sigma_1, ..., Sigma_K and a global scale tau2.

    The vectorized covariance is tau2 * Sigma_K kron ... kron Sigma_1; the
    replication mode is implicitly the identity.
    """
    __slots__ = ()

    @property
    def order(self):
        return len(self.sigmas)

    @property
    def dims(self):
        return tuple(s.shape[0] for s in self.sigmas)

    def replace_sigma(self, k, sigma):
        sigmas = list(self.sigmas)
        sigmas[k] = sigma
        return self._replace(sigmas=tuple(sigmas))


ModeCorrelationDiagnostic = namedtuple('ModeCorrelationDiagnostic',
                                       ['mode', 'correlation', 'eigenvalues',
                                        'eigenvectors'])

GLSState = namedtuple('GLSState', State._fields + ('factors', 'covariance',
                                                   'objective_trace'))

GLSReport = namedtuple('GLSReport', ['factors', 'covariance',
                                     'objective_trace', 'sweeps',
                                     'converged', 'metrics'])


def separable_covariance(sigmas, tau2=1.0):
    """ Creates a validated SeparableCovariance.

    Raises:
        ShapeError: If a Sigma_k is not square.
        DefinitenessError: If a Sigma_k is not symmetric positive definite.
        ConfigurationError: If tau2 is not positive.
    """
    checked = []
    for (k, sigma) in enumerate(sigmas):
        sigma = np.array(sigma, dtype=np.float64, ndmin=2)
        if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
            raise ShapeError('Sigma_{} must be square'.format(k + 1))
        if not np.allclose(sigma, sigma.T, rtol=1e-10, atol=1e-12):
            raise DefinitenessError('covariance is not symmetric', k)
        try:
            np.linalg.cholesky(sigma)
        except np.linalg.LinAlgError:
            raise DefinitenessError('covariance is not positive definite', k)
        checked.append((sigma + sigma.T) / 2)
    if not tau2 > 0:
        raise ConfigurationError('tau2 must be positive, got {}'.format(tau2))
    return SeparableCovariance(sigmas=tuple(checked), tau2=float(tau2))


def identity_covariance(dims, tau2=1.0):
    return SeparableCovariance(sigmas=tuple(np.eye(d) for d in dims),
                               tau2=float(tau2))
