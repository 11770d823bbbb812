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

from .features import append_monthly_lag
from .features import append_reciprocal
from .features import append_transitivity
from .features import build_lag1
from .features import build_predictors
from .features import demean
from .features import quantile_transform
from .ingest import ingest_events
from .ingest import read_ordering
from .types import EventPanel
from .types import PredictorSpec
from .types import event_panel
from .types import predictor_spec

__all__ = ['append_monthly_lag', 'append_reciprocal', 'append_transitivity',
           'build_lag1', 'build_predictors', 'demean', 'quantile_transform',
           'ingest_events', 'read_ordering', 'EventPanel', 'PredictorSpec',
           'event_panel', 'predictor_spec']
