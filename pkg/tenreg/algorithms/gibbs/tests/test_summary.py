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

""" Unit tests for the tenreg.algorithms.gibbs.summary module.
"""
import numpy as np
import pytest

from tenreg.algorithms.gibbs import summary
from tenreg.algorithms.gibbs.store import ChainStore
from tenreg.algorithms.gibbs.types import GibbsState
from tenreg.algorithms.gls.types import identity_covariance
from tenreg.exceptions import ConfigurationError
from tenreg.tensor.types import factor_set


def filled_store(entries_by_chain, fixed_second=False):
    store = ChainStore()
    for (chain, entries) in enumerate(entries_by_chain):
        store.open_chain(chain, {})
        for (iteration, b) in enumerate(entries):
            if fixed_second:
                factors = factor_set([b, 2], fixed_modes=(1,))
            else:
                factors = factor_set([b, np.eye(2)])
            store.append(chain, GibbsState(
                factors=factors, covariance=identity_covariance((2, 2), 2.),
                iteration=iteration + 1, rng=None))
        store.close_chain(chain)
    return store


@pytest.mark.parametrize("level,column", [
    (0.01, 'q01'), (0.025, 'q025'), (0.975, 'q975'), (0.99, 'q99'),
    (0.5, 'q5')
])
def test_level_column(level, column):
    assert summary.level_column(level) == column


def test_constant_chain():
    b = np.array([[1., -2.], [0., 3.]])

    table = summary.summarize(filled_store([[b] * 10])).table

    b1 = table[table['mode'] == 'B1']
    np.testing.assert_allclose(b1['mean'], b.ravel())
    np.testing.assert_allclose(b1['sd'], 0.)
    np.testing.assert_allclose(b1['q01'], b.ravel())
    np.testing.assert_allclose(b1['q99'], b.ravel())
    assert list(b1['flag']) == ['+', '-', '', '+']
    assert list(b1['row']) == [1, 1, 2, 2]
    assert list(b1['col']) == [1, 2, 1, 2]
    tau2 = table[table['mode'] == 'tau2']
    assert tau2['mean'].item() == 2.
    assert tau2['flag'].item() == ''
    assert set(table['mode']) == {'B1', 'B2', 'S1', 'S2', 'tau2'}


def test_alternating_chain():
    ones = np.ones((2, 2))

    table = summary.summarize(filled_store([[ones, -ones] * 50])).table

    b1 = table[table['mode'] == 'B1']
    np.testing.assert_allclose(b1['mean'], 0.)
    np.testing.assert_allclose(b1['sd'], 1.)
    assert list(b1['flag']) == [''] * 4


def test_effect_modes_use_wider_band():
    draws = [np.full((2, 2), 1.)] * 98 + [np.full((2, 2), -1.)] * 2

    factor_table = summary.summarize(filled_store([draws])).table
    effect_table = summary.summarize(filled_store([draws]),
                                     effect_modes=(0,)).table

    assert list(factor_table[factor_table['mode'] == 'B1']['flag']) == (
        [''] * 4)
    assert list(effect_table[effect_table['mode'] == 'B1']['flag']) == (
        ['+'] * 4)


def test_custom_levels_and_fixed_modes():
    store = filled_store([[np.eye(2)] * 4], fixed_second=True)

    table = summary.summarize(store, levels=(0.9, 0.1),
                              include_covariance=False).table

    assert list(table.columns) == ['mode', 'row', 'col', 'mean', 'sd',
                                   'q1', 'q9', 'flag']
    assert set(table['mode']) == {'B1'}


def test_chain_dispersion():
    store = filled_store([[np.zeros((2, 2))] * 5, [2 * np.ones((2, 2))] * 5])

    result = summary.summarize(store, include_covariance=False)

    dispersion = result.dispersion
    np.testing.assert_allclose(
        dispersion[dispersion['mode'] == 'B1']['chain_sd'], 1.)
    np.testing.assert_allclose(
        dispersion[dispersion['mode'] == 'B2']['chain_sd'], 0.)
    np.testing.assert_allclose(
        result.table[result.table['mode'] == 'B1']['mean'], 1.)


@pytest.mark.parametrize("levels", [(0., 0.5), (0.5, 1.), (1.5,)])
def test_invalid_levels(levels):
    with pytest.raises(ConfigurationError):
        summary.summarize(filled_store([[np.eye(2)]]), levels=levels)


def test_empty_store():
    store = ChainStore()
    store.open_chain(0, {})

    with pytest.raises(ConfigurationError):
        summary.summarize(store)


def test_standard_normal_chain_quantiles():
    rng = np.random.RandomState(1028609616)
    draws = list(rng.standard_normal((20000, 2, 2)))

    table = summary.summarize(filled_store([draws])).table

    b1 = table[table['mode'] == 'B1']
    np.testing.assert_allclose(b1['q99'], 2.326, atol=0.08)
    np.testing.assert_allclose(b1['q01'], -2.326, atol=0.08)
    assert np.all(b1['q01'] <= b1['q025'])
    assert np.all(b1['q975'] <= b1['q99'])
