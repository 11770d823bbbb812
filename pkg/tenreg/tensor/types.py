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

""" Value types of the tensor layer.

A DenseTensor stores its entries as a flat float64 vector in generalized
column-major order: multi-index (i_1, ..., i_K) lives at offset
i_1 + i_2 m_1 + i_3 m_1 m_2 + ... (0-based). Both the flat vector and the
array view handed out by as_array are read-only.
"""
from collections import namedtuple

import numpy as np

from tenreg.exceptions import ShapeError


class DenseTensor(namedtuple('DenseTensor', ['dims', 'data'])):
    __slots__ = ()

    @property
    def order(self):
        return len(self.dims)

    @property
    def size(self):
        return self.data.size


class FactorMatrix(namedtuple('FactorMatrix',
                              ['entries', 'fixed_identity'])):
    __slots__ = ()

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]


class KroneckerFactorSet(namedtuple('KroneckerFactorSet', ['factors'])):
    """ Ordered factor matrices B_1, ..., B_K of a multilinear coefficient.

    The implied full coefficient is B_K kron ... kron B_1. The replication
    mode is never part of the set; it is implicitly the identity.
    """
    __slots__ = ()

    @property
    def order(self):
        return len(self.factors)

    @property
    def matrices(self):
        return [f.entries for f in self.factors]

    @property
    def free_modes(self):
        return [k for (k, f) in enumerate(self.factors)
                if not f.fixed_identity]

    @property
    def in_dims(self):
        return tuple(f.cols for f in self.factors)

    @property
    def out_dims(self):
        return tuple(f.rows for f in self.factors)

    def replace_factor(self, k, new_factor):
        factors = list(self.factors)
        factors[k] = new_factor
        return KroneckerFactorSet(tuple(factors))


def dense_tensor(data, dims=None):
    """ Creates a validated, immutable DenseTensor.

    Args:
        data (array_like): Either a K-way array (dims taken from its shape)
            or, when dims is given, a flat sequence in column-major order.
        dims (sequence of int): Optional dimension vector.

    Returns:
        tenreg.tensor.DenseTensor: The tensor.

    Raises:
        ShapeError: If the length does not match dims, a dimension is
            smaller than one or an entry is not finite.

    Examples:
        >>> t = dense_tensor([[1., 3.], [2., 4.]])
        >>> t.data # array([1., 2., 3., 4.])
    """
    array = np.asarray(data, dtype=np.float64)
    if dims is None:
        dims = array.shape
        flat = np.ravel(array, order='F')
    else:
        dims = tuple(int(d) for d in dims)
        flat = np.ravel(array, order='F')
        if flat.size != int(np.prod(dims, dtype=np.int64)):
            raise ShapeError('data of length {} does not match dims {}'
                             .format(flat.size, dims))
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise ShapeError('all dims must be >= 1, got {}'.format(dims))
    if not np.all(np.isfinite(flat)):
        raise ShapeError('tensor entries must be finite')
    flat = np.array(flat, dtype=np.float64, copy=True)
    flat.flags.writeable = False
    return DenseTensor(dims=dims, data=flat)


def as_array(tensor):
    """ Read-only K-way array view of a DenseTensor, indexed as array[i_1, ...].
    """
    return np.reshape(tensor.data, tensor.dims, order='F')


def factor(entries, fixed_identity=False):
    """ Creates a FactorMatrix from a 2-d array.

    Raises:
        ShapeError: If entries is not a matrix, or a fixed factor is not the
            identity.
    """
    entries = np.array(entries, dtype=np.float64, copy=True, ndmin=2)
    if entries.ndim != 2:
        raise ShapeError('factor entries must be a matrix')
    if fixed_identity and (entries.shape[0] != entries.shape[1] or
                           not np.array_equal(entries,
                                              np.eye(entries.shape[0]))):
        raise ShapeError('a fixed factor must be the identity')
    entries.flags.writeable = False
    return FactorMatrix(entries=entries, fixed_identity=bool(fixed_identity))


def identity_factor(dim):
    return factor(np.eye(dim), fixed_identity=True)


def factor_set(matrices, fixed_modes=()):
    """ Builds a KroneckerFactorSet from matrices.

    Args:
        matrices (iterable): One matrix per mode. Entries of fixed modes may
            be an int dimension; either way they become the identity.
        fixed_modes (iterable): 0-based modes pinned to the identity.

    Returns:
        tenreg.tensor.KroneckerFactorSet: The factor set.
    """
    fixed_modes = set(fixed_modes)
    factors = []
    for (k, matrix) in enumerate(matrices):
        if k in fixed_modes:
            dim = matrix if isinstance(matrix, int) else np.shape(matrix)[0]
            factors.append(identity_factor(dim))
        else:
            factors.append(factor(matrix))
    return KroneckerFactorSet(tuple(factors))
