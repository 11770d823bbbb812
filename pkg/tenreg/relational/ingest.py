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

""" Ingestion of dyadic event records into a dense EventPanel.

Input is CSV with the header ``source,target,type,period,count``; every
row adds count events of the given type from source to target in period.
"""
import logging
import re

import numpy as np
import pandas as pd

from tenreg.exceptions import IngestError
from tenreg.relational.types import event_panel

logger = logging.getLogger(__name__)

COLUMNS = ('source', 'target', 'type', 'period', 'count')

# The header is line 1 of the stream.
FIRST_DATA_LINE = 2


def ingest_events(source, nodes=None, types=None, periods=None,
                  diagonal_defined=False):
    """ Reads event records into an EventPanel.

    Unobserved cells are zero and duplicated cells are summed. Labels are
    ordered lexicographically (numerically when all labels of a kind are
    integers) unless an explicit ordering is given.

    Args:
        source (str | file-like): Path or text stream of the CSV.
        nodes (sequence of str): Explicit node ordering.
        types (sequence of str): Explicit action-type ordering.
        periods (sequence of str): Explicit period ordering.
        diagonal_defined (bool): Whether self-directed events are
            meaningful; when False they are dropped with a warning.

    Returns:
        tenreg.relational.types.EventPanel: The dense panel.

    Raises:
        IngestError: On an empty stream, an unknown or missing column, a
            malformed row or a negative count (with its line number).
    """
    try:
        frame = pd.read_csv(source, dtype=str, keep_default_na=False,
                            skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise IngestError('empty event stream')
    except pd.errors.ParserError as error:
        line = re.search(r'line (\d+)', str(error))
        raise IngestError('malformed row',
                          line=int(line.group(1)) if line else None)

    columns = [c.strip() for c in frame.columns]
    unknown = [c for c in columns if c not in COLUMNS]
    if unknown:
        raise IngestError('unknown column(s) {}'.format(unknown), line=1)
    missing = [c for c in COLUMNS if c not in columns]
    if missing:
        raise IngestError('missing column(s) {}'.format(missing), line=1)
    frame.columns = columns
    if frame.empty:
        raise IngestError('no events, so no nodes')

    frame = frame.fillna('')
    blank = (frame[list(COLUMNS)] == '').any(axis=1).to_numpy()
    if blank.any():
        raise IngestError('row has empty fields', line=__line__(blank))
    counts = pd.to_numeric(frame['count'], errors='coerce').to_numpy()
    malformed = ~np.isfinite(counts) | (counts != np.round(counts))
    if malformed.any():
        raise IngestError('count is not an integer', line=__line__(malformed))
    if (counts < 0).any():
        raise IngestError('negative count', line=__line__(counts < 0))
    frame['count'] = counts.astype(np.int64)

    if not diagonal_defined:
        loops = (frame['source'] == frame['target']).to_numpy()
        if loops.any():
            logger.warning('dropping %d self-directed rows (first at line '
                           '%d)', loops.sum(), __line__(loops))
            frame = frame[~loops]

    keys = ['source', 'target', 'type', 'period']
    duplicated = frame.duplicated(subset=keys, keep='first').to_numpy()
    if duplicated.any():
        logger.warning('%d duplicate cells summed (first at line %d)',
                       duplicated.sum(),
                       frame.index[duplicated][0] + FIRST_DATA_LINE)
    frame = frame.groupby(keys, sort=False, as_index=False)['count'].sum()

    node_labels = __ordering__(pd.concat([frame['source'], frame['target']]),
                               nodes, 'node')
    type_labels = __ordering__(frame['type'], types, 'type')
    period_labels = __ordering__(frame['period'], periods, 'period')

    index = [pd.Index(node_labels).get_indexer(frame['source']),
             pd.Index(node_labels).get_indexer(frame['target']),
             pd.Index(type_labels).get_indexer(frame['type']),
             pd.Index(period_labels).get_indexer(frame['period'])]
    counts = np.zeros((len(node_labels), len(node_labels), len(type_labels),
                       len(period_labels)), dtype=np.int64)
    np.add.at(counts, tuple(index), frame['count'].to_numpy())
    logger.info('ingested %d cells: %d nodes, %d types, %d periods',
                len(frame), len(node_labels), len(type_labels),
                len(period_labels))
    return event_panel(node_labels, type_labels, period_labels, counts,
                       diagonal_defined)


def read_ordering(path):
    """ Labels one per line, blank lines ignored. """
    with open(path) as handle:
        return [line.strip() for line in handle if line.strip()]


def __ordering__(labels, explicit, kind):
    observed = pd.unique(labels)
    if explicit is not None:
        explicit = [str(label) for label in explicit]
        absent = sorted(set(observed) - set(explicit))
        if absent:
            raise IngestError('{} label(s) {} missing from the explicit '
                              'ordering'.format(kind, absent))
        if len(set(explicit)) != len(explicit):
            raise IngestError('explicit {} ordering has duplicates'
                              .format(kind))
        return explicit
    try:
        return sorted(observed, key=int)
    except ValueError:
        return sorted(observed)


def __line__(flags):
    return int(np.flatnonzero(flags)[0]) + FIRST_DATA_LINE
