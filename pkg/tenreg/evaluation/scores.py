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

""" Goodness-of-fit scores.
"""
import numpy as np

from tenreg.exceptions import ConfigurationError
from tenreg.exceptions import ShapeError


def r_squared(y, y_hat, mask=None):
    """ One minus the ratio of the residual to the total sum of squares.

    The total sum of squares is taken about zero, so on demeaned outcomes
    the zero predictor scores 0 and worse predictors score below 0.

    Args:
        y (DenseTensor | numpy.ndarray): Outcomes.
        y_hat (DenseTensor | numpy.ndarray): Predictions.
        mask (numpy.ndarray): True for cells left out of both sums.

    Returns:
        float: The R^2 value, possibly negative.

    Raises:
        ShapeError: If the shapes differ.
        ConfigurationError: If the unmasked outcomes are all zero.

    Examples:
        >>> r_squared(y, y) # 1.0
    """
    y, y_hat = __as_array__(y), __as_array__(y_hat)
    if y.shape != y_hat.shape:
        raise ShapeError('outcome shape {} differs from prediction shape {}'
                         .format(y.shape, y_hat.shape))
    keep = np.ones(y.shape, dtype=bool) if mask is None else ~np.asarray(
        mask, dtype=bool)
    total = np.sum(y[keep] ** 2)
    if total == 0:
        raise ConfigurationError('outcomes have zero total sum of squares')
    return float(1. - np.sum((y[keep] - y_hat[keep]) ** 2) / total)


def r_squared_by_slice(y, y_hat, mask, mode):
    """ r_squared of every slice along mode, e.g. per action type. """
    y, y_hat = __as_array__(y), __as_array__(y_hat)
    return [r_squared(np.take(y, j, axis=mode), np.take(y_hat, j, axis=mode),
                      None if mask is None else np.take(mask, j, axis=mode))
            for j in range(y.shape[mode])]


def __as_array__(tensor):
    if hasattr(tensor, 'dims'):
        return np.reshape(tensor.data, tensor.dims, order='F')
    return np.asarray(tensor, dtype=np.float64)
