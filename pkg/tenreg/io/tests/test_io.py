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

""" Unit tests for the tenreg.io package.
"""
import json

import numpy as np
import pandas as pd
import pytest

from tenreg.algorithms.gls.functions import mode_residual_correlation
from tenreg.algorithms.gls.types import separable_covariance
from tenreg.exceptions import FormatError
from tenreg.exceptions import ShapeError
from tenreg.io import formats
from tenreg.io import tables
from tenreg.tensor.types import dense_tensor
from tenreg.tensor.types import factor_set


@pytest.fixture
def rng():
    seed = 1028609616
    return np.random.RandomState(seed)


def test_tensor_layout():
    payload = formats.tensor_to_bytes(dense_tensor([[1., 3.], [2., 4.]]))

    magic, header, body = payload.split(b'\n', 2)
    assert magic == b'TNSR1'
    assert json.loads(header.decode('ascii')) == {
        'dims': [2, 2], 'dtype': 'f64', 'order': 'colmajor'}
    np.testing.assert_array_equal(np.frombuffer(body, dtype='<f8'),
                                  [1., 2., 3., 4.])


def test_tensor_file(rng, tmpdir):
    tensor = dense_tensor(rng.standard_normal((2, 3, 4)))
    path = str(tmpdir.join('x.tnsr'))

    formats.write_tensor(path, tensor)
    read = formats.read_tensor(path)

    assert read.dims == (2, 3, 4)
    np.testing.assert_array_equal(read.data, tensor.data)


@pytest.mark.parametrize("payload", [
    b'TNSR2\n{"dims": [1], "dtype": "f64", "order": "colmajor"}\n' +
    b'\x00' * 8,
    b'TNSR1\n{"dims": [2], "dtype": "f64", "order": "colmajor"}\n' +
    b'\x00' * 8,
    b'TNSR1\n{"dims": [1], "dtype": "f32", "order": "colmajor"}\n' +
    b'\x00' * 8,
    b'TNSR1\n{"dims": [1], "dtype": "f64", "order": "rowmajor"}\n' +
    b'\x00' * 8,
    b'TNSR1\n{"shape": [1]}\n' + b'\x00' * 8,
    b'TNSR1\nnot json\n' + b'\x00' * 8,
    b'TNSR1',
])
def test_malformed_tensor(payload):
    with pytest.raises(FormatError):
        formats.tensor_from_bytes(payload)


def test_non_finite_tensor_payload():
    payload = (b'TNSR1\n{"dims": [1], "dtype": "f64", "order": "colmajor"}'
               b'\n' + np.array([np.nan]).tobytes())

    with pytest.raises(ShapeError):
        formats.tensor_from_bytes(payload)


def test_factors_document(rng, tmpdir):
    factors = factor_set([rng.standard_normal((2, 3)), 4], fixed_modes=(1,))
    path = str(tmpdir.join('f.mltrf1'))

    formats.write_factors(path, factors)
    with open(path) as handle:
        text = handle.read()
    read = formats.read_factors(path)

    assert text.count('\n') == 1
    assert json.loads(text)['format'] == 'MLTRF1'
    np.testing.assert_array_equal(read.matrices[0], factors.matrices[0])
    assert read.factors[1].fixed_identity
    assert read.out_dims == (2, 4)


def test_covariance_document(rng, tmpdir):
    covariance = separable_covariance([np.array([[2., 0.3], [0.3, 1.]]),
                                       np.eye(3)], 0.1)
    path = str(tmpdir.join('c.mltrc1'))

    formats.write_covariance(path, covariance)
    read = formats.read_covariance(path)

    assert read.tau2 == 0.1
    np.testing.assert_array_equal(read.sigmas[0], covariance.sigmas[0])
    assert read.dims == (2, 3)


@pytest.mark.parametrize("document", [
    {'format': 'MLTRC1', 'modes': []},
    {'format': 'MLTRF1', 'modes': [{'rows': 2, 'cols': 2,
                                    'fixed_identity': False,
                                    'entries': [[1., 2., 3.]]}]},
    {'format': 'MLTRF1', 'modes': [{'rows': 2, 'cols': 2,
                                    'fixed_identity': True,
                                    'entries': [[1., 2.], [3., 4.]]}]},
    {'format': 'MLTRF1'},
    [1, 2],
])
def test_malformed_factors_document(document):
    with pytest.raises(FormatError):
        formats.factors_from_document(document)


def test_malformed_covariance_document():
    with pytest.raises(FormatError):
        formats.covariance_from_document({'format': 'MLTRC1',
                                          'modes': [{'dim': 2,
                                                     'entries': [1.]}]})
    with pytest.raises(FormatError):
        formats.loads('{"format": ')


def test_correlation_and_eigen_frames(rng):
    diagnostic = mode_residual_correlation(rng.standard_normal((3, 4, 20)),
                                           0)

    correlation = tables.correlation_frame(diagnostic)
    eigen = tables.eigen_frame(diagnostic)

    assert list(correlation.columns) == ['row', '1', '2', '3']
    assert list(correlation['row']) == [1, 2, 3]
    assert list(eigen.columns) == ['component', 'eigenvalue', 'v1', 'v2',
                                   'v3']
    np.testing.assert_allclose(eigen['eigenvalue'], diagnostic.eigenvalues)
    np.testing.assert_allclose(eigen[['v1', 'v2', 'v3']].to_numpy()[0],
                               diagnostic.eigenvectors[:, 0])


def test_table_file(tmpdir):
    frame = pd.DataFrame({'mode': ['B1', 'tau2'], 'row': [1, 1],
                          'mean': [0.1234567890123456, 2.], 'flag': ['+', '']})
    path = str(tmpdir.join('summary.csv'))

    tables.write_table(path, frame)
    read = tables.read_table(path)

    assert list(read.columns) == ['mode', 'row', 'mean', 'flag']
    assert read['mean'][0] == pytest.approx(0.123456789012, abs=1e-12)
    assert read['flag'][0] == '+'
    assert pd.isna(read['flag'][1])
