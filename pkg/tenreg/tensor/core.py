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

""" Vectorization, matricization, Kronecker and Tucker products.

The public operations accept and return tenreg.tensor.DenseTensor values.
The array-level helpers (unfold, fold, multilinear) do the same work on
plain numpy arrays indexed array[i_1, ..., i_K] and are what the estimation
algorithms use internally. Modes are 0-based.
"""
import functools

import numpy as np

from tenreg.exceptions import ModeError
from tenreg.exceptions import ShapeError
from tenreg.tensor.types import as_array
from tenreg.tensor.types import dense_tensor


def vectorize(tensor):
    """ The vec of a tensor: its entries in column-major order.

    Examples:
        >>> vectorize(dense_tensor([[1., 3.], [2., 4.]])) # [1., 2., 3., 4.]
    """
    return np.array(tensor.data)


def matricize(tensor, k):
    """ Mode-k matricization.

    Element (i_1, ..., i_K) lands in row i_k; the column index enumerates the
    remaining modes in column-major order, lower modes varying fastest.

    Args:
        tensor (tenreg.tensor.DenseTensor): The tensor.
        k (int): 0-based mode.

    Returns:
        numpy.ndarray: Matrix of shape (m_k, prod_{k' != k} m_k').

    Raises:
        ModeError: If k is out of range.
    """
    __check_mode__(k, tensor.order)
    return np.array(unfold(as_array(tensor), k))


def unmatricize(matrix, k, dims):
    """ Inverse of matricize.

    Raises:
        ModeError: If k is out of range.
        ShapeError: If the matrix shape does not match dims.
    """
    dims = tuple(int(d) for d in dims)
    __check_mode__(k, len(dims))
    matrix = np.asarray(matrix, dtype=np.float64)
    expected = (dims[k], int(np.prod(dims, dtype=np.int64)) // dims[k])
    if matrix.shape != expected:
        raise ShapeError('matrix of shape {} does not unfold dims {} along '
                         'mode {}'.format(matrix.shape, dims, k + 1))
    return dense_tensor(fold(matrix, k, dims))


def kronecker(a, b):
    """ Standard Kronecker product a kron b. """
    return np.kron(np.atleast_2d(a), np.atleast_2d(b))


def kronecker_chain(factors):
    """ Explicit B_K kron ... kron B_1 of a factor set or list of matrices.

    Only meant for small problems and checks; the estimation code never
    materializes the chain.
    """
    matrices = getattr(factors, 'matrices', factors)
    return functools.reduce(lambda acc, b: kronecker(b, acc), matrices[1:],
                            np.atleast_2d(matrices[0]))


def mode_product(array, matrix, k):
    """ Mode-k product of an array with a matrix (M_(k) = B X_(k)). """
    product = np.tensordot(matrix, array, axes=(1, k))
    return np.moveaxis(product, 0, k)


def tucker_product(tensor, factors):
    """ Tucker product X x {B_1, ..., B_K}.

    Computed as successive mode-k products; fixed identity factors are
    skipped. If the tensor has more modes than the factor set, the trailing
    modes (the replication mode) are left untouched.

    Args:
        tensor (tenreg.tensor.DenseTensor): The tensor X.
        factors (tenreg.tensor.KroneckerFactorSet): The factors.

    Returns:
        tenreg.tensor.DenseTensor: The product.

    Raises:
        ShapeError: If a factor's column count does not match its mode.
    """
    matrices = [None if f.fixed_identity else f.entries
                for f in factors.factors]
    __check_conformance__(tensor.dims, factors.in_dims)
    return dense_tensor(multilinear(as_array(tensor), matrices))


def frobenius_norm_sq(tensor):
    return float(np.dot(tensor.data, tensor.data))


def unfold(array, k):
    return np.reshape(np.moveaxis(array, k, 0), (array.shape[k], -1),
                      order='F')


def fold(matrix, k, dims):
    rest = [d for (i, d) in enumerate(dims) if i != k]
    array = np.reshape(matrix, [matrix.shape[0]] + rest, order='F')
    return np.moveaxis(array, 0, k)


def multilinear(array, matrices):
    """ Array-level Tucker product; None entries are identity modes. """
    for (k, matrix) in enumerate(matrices):
        if matrix is not None:
            array = mode_product(array, matrix, k)
    return array


def __check_mode__(k, order):
    if not 0 <= k < order:
        raise ModeError('mode {} out of range for an order-{} tensor'
                        .format(k + 1, order), mode=k)


def __check_conformance__(dims, in_dims):
    if len(in_dims) > len(dims) or tuple(dims[:len(in_dims)]) != in_dims:
        raise ShapeError('factor columns {} do not conform to tensor dims {}'
                         .format(in_dims, tuple(dims)))
