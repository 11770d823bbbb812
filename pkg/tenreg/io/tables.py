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

""" CSV exports of diagnostics, posterior summaries and score tables. Mode,
row and column indices in the files are 1-based.
"""
import numpy as np
import pandas as pd

FLOAT_FORMAT = '%.12g'


def write_table(path, frame):
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)


def read_table(path):
    return pd.read_csv(path, keep_default_na=False, na_values=[''])


def correlation_frame(diagnostic):
    """ Square correlation matrix with a leading 'row' column. """
    dim = diagnostic.correlation.shape[0]
    frame = pd.DataFrame(diagnostic.correlation,
                         columns=[str(i + 1) for i in range(dim)])
    frame.insert(0, 'row', np.arange(1, dim + 1))
    return frame


def eigen_frame(diagnostic):
    """ Eigenvalues in descending order, each followed by its eigenvector
    entries v1, ..., vm. """
    dim = diagnostic.eigenvalues.shape[0]
    frame = pd.DataFrame(diagnostic.eigenvectors.T,
                         columns=['v{}'.format(i + 1) for i in range(dim)])
    frame.insert(0, 'eigenvalue', diagnostic.eigenvalues)
    frame.insert(0, 'component', np.arange(1, dim + 1))
    return frame
