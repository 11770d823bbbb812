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

""" Unit tests for the tenreg.algorithms.gibbs.store module.
"""
import os

import numpy as np
import pytest

from tenreg.algorithms.gibbs import store as store_module
from tenreg.algorithms.gibbs.store import ChainStore
from tenreg.algorithms.gibbs.types import GibbsState
from tenreg.algorithms.gls.types import separable_covariance
from tenreg.exceptions import FormatError
from tenreg.tensor.types import factor_set


@pytest.fixture
def rng():
    seed = 1028609616
    return np.random.RandomState(seed)


def sample_state(rng, iteration):
    return GibbsState(
        factors=factor_set([rng.standard_normal((2, 3)), 2],
                           fixed_modes=(1,)),
        covariance=separable_covariance([np.diag(rng.uniform(1, 2, 2)),
                                         np.eye(2)], rng.uniform(0.5, 1.)),
        iteration=iteration, rng=rng)


def fill(store, rng, chains=2, samples=3):
    for chain in range(chains):
        store.open_chain(chain, {'chain': chain, 'seed': 10 + chain})
        for iteration in range(samples):
            store.append(chain, sample_state(rng, iteration + 1))
        store.close_chain(chain, saved=samples)


def test_in_memory_store(rng):
    store = ChainStore()

    fill(store, rng)

    assert store.chains() == [0, 1]
    assert len(store) == 6
    assert [s.iteration for s in store.samples(1)] == [1, 2, 3]
    assert len(store.samples()) == 6
    assert store.manifest(0) == {'chain': 0, 'seed': 10, 'saved': 3,
                                 'status': 'complete'}


def test_running_chain_manifest(tmpdir):
    store = ChainStore(str(tmpdir))

    store.open_chain(3, {'chain': 3})

    assert store.manifest(3)['status'] == 'running'
    assert os.path.exists(os.path.join(str(tmpdir), 'chain_3',
                                       store_module.MANIFEST_FILE))
    assert len(store) == 0


def test_store_persists_and_loads(rng, tmpdir):
    store = ChainStore(str(tmpdir))
    fill(store, rng)

    loaded = ChainStore.load(str(tmpdir))

    assert loaded.chains() == store.chains()
    assert loaded.manifest(1) == store.manifest(1)
    for (saved, read) in zip(store.samples(), loaded.samples()):
        assert saved.iteration == read.iteration
        for (a, b) in zip(saved.factors.factors, read.factors.factors):
            np.testing.assert_array_equal(a.entries, b.entries)
            assert a.fixed_identity == b.fixed_identity
        for (a, b) in zip(saved.covariance.sigmas, read.covariance.sigmas):
            np.testing.assert_array_equal(a, b)
        assert saved.covariance.tau2 == read.covariance.tau2


def test_load_ignores_other_entries(rng, tmpdir):
    fill(ChainStore(str(tmpdir)), rng, chains=1)
    tmpdir.join('summary.csv').write('mode,row\n')

    assert ChainStore.load(str(tmpdir)).chains() == [0]


def test_load_mismatched_records(rng, tmpdir):
    fill(ChainStore(str(tmpdir)), rng, chains=1)
    path = tmpdir.join('chain_0', store_module.COVARIANCE_FILE)
    lines = path.read().splitlines()
    path.write('\n'.join(lines[:-1]) + '\n')

    with pytest.raises(FormatError):
        ChainStore.load(str(tmpdir))


def test_load_corrupt_record(rng, tmpdir):
    fill(ChainStore(str(tmpdir)), rng, chains=1)
    tmpdir.join('chain_0', store_module.FACTORS_FILE).write('{"format": 1',
                                                           mode='a')

    with pytest.raises(FormatError):
        ChainStore.load(str(tmpdir))
