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

""" On-disk formats.

* TNSR1: the ASCII magic line ``TNSR1``, one JSON header line
  ``{"dims": [...], "dtype": "f64", "order": "colmajor"}`` and then the raw
  little-endian float64 entries in column-major order.
* MLTRF1: a single-line JSON document with, per mode, the shape, the
  fixed_identity flag and the row-major entries of the factor matrix.
* MLTRC1: a single-line JSON document with the per-mode covariance
  matrices (row-major) and the global scale tau2.

Floats are written with repr precision so documents round-trip exactly.
"""
import json

import numpy as np

from tenreg.algorithms.gls.types import SeparableCovariance
from tenreg.exceptions import FormatError
from tenreg.tensor.types import KroneckerFactorSet
from tenreg.tensor.types import dense_tensor
from tenreg.tensor.types import factor

TENSOR_MAGIC = b'TNSR1'
FACTORS_FORMAT = 'MLTRF1'
COVARIANCE_FORMAT = 'MLTRC1'


def tensor_to_bytes(tensor):
    header = json.dumps({'dims': list(tensor.dims), 'dtype': 'f64',
                         'order': 'colmajor'})
    return (TENSOR_MAGIC + b'\n' + header.encode('ascii') + b'\n' +
            np.asarray(tensor.data, dtype='<f8').tobytes())


def tensor_from_bytes(payload):
    """ Parses a TNSR1 payload.

    Raises:
        FormatError: On a bad magic line, header or payload length.
    """
    parts = payload.split(b'\n', 2)
    if len(parts) != 3 or parts[0] != TENSOR_MAGIC:
        raise FormatError('not a TNSR1 document')
    try:
        header = json.loads(parts[1].decode('ascii'))
        dims = tuple(int(d) for d in header['dims'])
    except (ValueError, KeyError, TypeError) as error:
        raise FormatError('bad TNSR1 header: {}'.format(error))
    if header.get('dtype') != 'f64' or header.get('order') != 'colmajor':
        raise FormatError('unsupported TNSR1 dtype/order {}'.format(header))
    expected = 8 * int(np.prod(dims, dtype=np.int64))
    if len(parts[2]) != expected:
        raise FormatError('TNSR1 payload has {} bytes, expected {}'
                          .format(len(parts[2]), expected))
    return dense_tensor(np.frombuffer(parts[2], dtype='<f8'), dims)


def write_tensor(path, tensor):
    with open(path, 'wb') as handle:
        handle.write(tensor_to_bytes(tensor))


def read_tensor(path):
    with open(path, 'rb') as handle:
        return tensor_from_bytes(handle.read())


def factors_to_document(factors):
    return {'format': FACTORS_FORMAT,
            'modes': [{'rows': f.rows, 'cols': f.cols,
                       'fixed_identity': f.fixed_identity,
                       'entries': f.entries.tolist()}
                      for f in factors.factors]}


def factors_from_document(document):
    __check_format__(document, FACTORS_FORMAT)
    try:
        factors = []
        for mode in document['modes']:
            entries = np.array(mode['entries'], dtype=np.float64,
                               ndmin=2).reshape(mode['rows'], mode['cols'])
            factors.append(factor(entries, mode['fixed_identity']))
    except (KeyError, TypeError, ValueError) as error:
        raise FormatError('bad MLTRF1 document: {}'.format(error))
    return KroneckerFactorSet(tuple(factors))


def covariance_to_document(covariance):
    return {'format': COVARIANCE_FORMAT, 'tau2': float(covariance.tau2),
            'modes': [{'dim': int(s.shape[0]), 'entries': s.tolist()}
                      for s in covariance.sigmas]}


def covariance_from_document(document):
    __check_format__(document, COVARIANCE_FORMAT)
    try:
        sigmas = tuple(np.array(mode['entries'], dtype=np.float64,
                                ndmin=2).reshape(mode['dim'], mode['dim'])
                       for mode in document['modes'])
        tau2 = float(document['tau2'])
    except (KeyError, TypeError, ValueError) as error:
        raise FormatError('bad MLTRC1 document: {}'.format(error))
    return SeparableCovariance(sigmas=sigmas, tau2=tau2)


def dumps(document):
    return json.dumps(document, separators=(',', ':'))


def loads(line):
    try:
        return json.loads(line)
    except ValueError as error:
        raise FormatError('not a JSON document: {}'.format(error))


def write_factors(path, factors):
    with open(path, 'w') as handle:
        handle.write(dumps(factors_to_document(factors)) + '\n')


def read_factors(path):
    with open(path) as handle:
        return factors_from_document(loads(handle.read()))


def write_covariance(path, covariance):
    with open(path, 'w') as handle:
        handle.write(dumps(covariance_to_document(covariance)) + '\n')


def read_covariance(path):
    with open(path) as handle:
        return covariance_from_document(loads(handle.read()))


def __check_format__(document, name):
    if not isinstance(document, dict) or document.get('format') != name:
        raise FormatError('not a {} document'.format(name))
