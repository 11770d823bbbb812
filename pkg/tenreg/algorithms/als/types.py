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

""" Types of the least-squares multilinear regression algorithms.
"""
from collections import namedtuple

import numpy as np

from tenreg.algorithms.core import State
from tenreg.exceptions import ShapeError


class RegressionDataset(namedtuple('RegressionDataset', ['X', 'Y', 'mask'])):
    """ Paired predictor tensor X (p_1 x ... x p_K x n) and outcome tensor Y
    (m_1 x ... x m_K x n). The last mode is the replication mode. The
    optional boolean mask has Y's dims and marks excluded outcome cells.
    """
    __slots__ = ()

    @property
    def order(self):
        """ Number of modes K carrying a factor (replication mode excluded).
        """
        return self.Y.order - 1

    @property
    def n(self):
        return self.Y.dims[-1]

    @property
    def replication_mode(self):
        return self.Y.order - 1

    @property
    def in_dims(self):
        return self.X.dims[:-1]

    @property
    def out_dims(self):
        return self.Y.dims[:-1]

    @property
    def observed_cells(self):
        """ Number of outcome cells entering the fit. """
        if self.mask is None:
            return self.Y.size
        return int(self.Y.size - np.count_nonzero(self.mask))

    @property
    def weights(self):
        """ 1.0 for cells entering the fit, 0.0 for masked cells, or None. """
        if self.mask is None:
            return None
        return (~self.mask).astype(np.float64)


CrossMomentPair = namedtuple('CrossMomentPair', ['sxx', 'sxy'])

FitReport = namedtuple('FitReport', ['factors', 'objective_trace', 'sweeps',
                                     'converged', 'metrics'])

ALSState = namedtuple('ALSState', State._fields + ('factors',
                                                   'objective_trace'))

AdditiveFit = namedtuple('AdditiveFit', ['A', 'B'])

DyadFit = namedtuple('DyadFit', ['c', 'd', 'converged', 'errors'])


def regression_dataset(X, Y, mask=None):
    """ Creates a validated RegressionDataset.

    Args:
        X (tenreg.tensor.DenseTensor): Predictors, replication mode last.
        Y (tenreg.tensor.DenseTensor): Outcomes, replication mode last.
        mask (numpy.ndarray): Optional boolean array of Y's dims, True for
            cells excluded from fitting.

    Raises:
        ShapeError: If the orders or replication lengths disagree, or the
            mask does not match Y.
    """
    if X.order != Y.order or X.order < 2:
        raise ShapeError('X and Y must have the same order >= 2, got {} and '
                         '{}'.format(X.dims, Y.dims))
    if X.dims[-1] != Y.dims[-1]:
        raise ShapeError('replication lengths differ: {} vs {}'
                         .format(X.dims[-1], Y.dims[-1]))
    if mask is not None:
        mask = np.array(mask, dtype=bool)
        if mask.shape != Y.dims:
            raise ShapeError('mask shape {} does not match Y dims {}'
                             .format(mask.shape, Y.dims))
        if not mask.any():
            mask = None
    return RegressionDataset(X=X, Y=Y, mask=mask)
