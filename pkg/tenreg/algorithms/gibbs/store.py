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

""" Storage of Gibbs chains: in memory, and optionally on disk with one
directory per chain holding per-iteration MLTRF1 and MLTRC1 records (one
JSON document per line) and a manifest.
"""
import json
import logging
import os
import threading
from collections import namedtuple

from tenreg.io.formats import covariance_from_document
from tenreg.io.formats import covariance_to_document
from tenreg.io.formats import dumps
from tenreg.io.formats import factors_from_document
from tenreg.io.formats import factors_to_document
from tenreg.io.formats import loads
from tenreg.exceptions import FormatError

logger = logging.getLogger(__name__)

FACTORS_FILE = 'factors.jsonl'
COVARIANCE_FILE = 'covariance.jsonl'
MANIFEST_FILE = 'manifest.json'

ChainSample = namedtuple('ChainSample', ['iteration', 'factors',
                                         'covariance'])


class ChainStore:
    """ Thread-safe store of normalized Gibbs states, keyed by chain.

    Args:
        directory (str): Root directory for the on-disk records; None keeps
            the chains in memory only.
    """

    def __init__(self, directory=None):
        self.directory = directory
        self.__lock = threading.Lock()
        self.__samples = {}
        self.__manifests = {}

    def open_chain(self, chain, manifest):
        """ Registers a chain and writes its manifest. """
        with self.__lock:
            self.__samples[chain] = []
            self.__manifests[chain] = dict(manifest, status='running')
            if self.directory is not None:
                os.makedirs(self.__chain_dir(chain), exist_ok=True)
                for name in (FACTORS_FILE, COVARIANCE_FILE):
                    open(os.path.join(self.__chain_dir(chain), name),
                         'w').close()
                self.__write_manifest(chain)

    def append(self, chain, state):
        """ Stores one saved (already normalized) GibbsState. """
        sample = ChainSample(iteration=state.iteration,
                             factors=state.factors,
                             covariance=state.covariance)
        with self.__lock:
            self.__samples[chain].append(sample)
            if self.directory is not None:
                self.__write_record(chain, FACTORS_FILE, sample.iteration,
                                    factors_to_document(sample.factors))
                self.__write_record(chain, COVARIANCE_FILE, sample.iteration,
                                    covariance_to_document(sample.covariance))

    def close_chain(self, chain, status='complete', **fields):
        with self.__lock:
            self.__manifests[chain].update(fields, status=status)
            if self.directory is not None:
                self.__write_manifest(chain)

    def chains(self):
        return sorted(self.__samples)

    def samples(self, chain=None):
        """ Saved samples of one chain, or of all chains in chain order. """
        if chain is not None:
            return list(self.__samples[chain])
        return [s for c in self.chains() for s in self.__samples[c]]

    def manifest(self, chain):
        return dict(self.__manifests[chain])

    def __len__(self):
        return sum(len(s) for s in self.__samples.values())

    @classmethod
    def load(cls, directory):
        """ Reads a chain store back from disk.

        Raises:
            FormatError: If a record is malformed or the factor and
                covariance records disagree.
        """
        store = cls(directory=None)
        for name in sorted(os.listdir(directory)):
            path = os.path.join(directory, name)
            if not (name.startswith('chain_') and os.path.isdir(path)):
                continue
            chain = int(name[len('chain_'):])
            with open(os.path.join(path, MANIFEST_FILE)) as handle:
                manifest = json.load(handle)
            factor_records = __read_records__(os.path.join(path,
                                                           FACTORS_FILE))
            covariance_records = __read_records__(
                os.path.join(path, COVARIANCE_FILE))
            if len(factor_records) != len(covariance_records):
                raise FormatError('chain {} has {} factor and {} covariance '
                                  'records'.format(chain, len(factor_records),
                                                   len(covariance_records)))
            store.__samples[chain] = [
                ChainSample(iteration=f['iteration'],
                            factors=factors_from_document(f),
                            covariance=covariance_from_document(c))
                for (f, c) in zip(factor_records, covariance_records)]
            store.__manifests[chain] = manifest
        store.directory = directory
        logger.info('loaded %d chains (%d samples) from %s',
                    len(store.chains()), len(store), directory)
        return store

    def __chain_dir(self, chain):
        return os.path.join(self.directory, 'chain_{}'.format(chain))

    def __write_record(self, chain, name, iteration, document):
        with open(os.path.join(self.__chain_dir(chain), name), 'a') as handle:
            handle.write(dumps(dict(document, iteration=iteration)) + '\n')

    def __write_manifest(self, chain):
        with open(os.path.join(self.__chain_dir(chain), MANIFEST_FILE),
                  'w') as handle:
            json.dump(self.__manifests[chain], handle, indent=2,
                      sort_keys=True)


def __read_records__(path):
    with open(path) as handle:
        return [loads(line) for line in handle if line.strip()]
