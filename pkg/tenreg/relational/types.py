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

""" Types of the dyadic event panel layer.
"""
from collections import namedtuple

import numpy as np

from tenreg.exceptions import ConfigurationError
from tenreg.exceptions import ShapeError


class EventPanel(namedtuple('EventPanel', ['nodes', 'types', 'periods',
                                           'counts', 'diagonal_defined'])):
    """ Event counts y[i1, i2, j, t] of actions of type j from node i1 to
    node i2 in period t, with the label of every index.
    """
    __slots__ = ()

    @property
    def shape(self):
        return self.counts.shape


PredictorSpec = namedtuple('PredictorSpec', ['include_lag1',
                                             'include_reciprocal',
                                             'include_transitivity',
                                             'include_monthly',
                                             'monthly_window'])


def event_panel(nodes, types, periods, counts, diagonal_defined=False):
    """ Creates a validated EventPanel.

    Raises:
        ShapeError: If counts is not m x m x J x T for the given labels.
        ConfigurationError: If a count is negative or not an integer.
    """
    counts = np.asarray(counts)
    expected = (len(nodes), len(nodes), len(types), len(periods))
    if counts.shape != expected:
        raise ShapeError('counts have shape {}, labels imply {}'.format(
            counts.shape, expected))
    if counts.size and (counts.min() < 0 or
                        np.any(counts != np.round(counts))):
        raise ConfigurationError('counts must be nonnegative integers')
    counts = counts.astype(np.int64)
    counts.setflags(write=False)
    return EventPanel(nodes=tuple(nodes), types=tuple(types),
                      periods=tuple(periods), counts=counts,
                      diagonal_defined=bool(diagonal_defined))


def predictor_spec(include_lag1=True, include_reciprocal=True,
                   include_transitivity=True, include_monthly=True,
                   monthly_window=4):
    """ Creates a validated PredictorSpec; the defaults give the full
    relational model with weekly and monthly lags. """
    if not (include_lag1 or include_reciprocal or include_transitivity):
        raise ConfigurationError('at least one predictor family must be '
                                 'enabled')
    if monthly_window < 1:
        raise ConfigurationError('monthly_window must be at least 1')
    return PredictorSpec(bool(include_lag1), bool(include_reciprocal),
                         bool(include_transitivity), bool(include_monthly),
                         int(monthly_window))
