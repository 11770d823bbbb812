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

from .scores import r_squared
from .scores import r_squared_by_slice
from .validation import ScoreTable
from .validation import SplitPlan
from .validation import compare_additive_multiplicative
from .validation import cross_validate
from .validation import in_sample_r_squared
from .validation import make_splits
from .validation import summarize_scores

__all__ = ['r_squared', 'r_squared_by_slice', 'ScoreTable', 'SplitPlan',
           'compare_additive_multiplicative', 'cross_validate',
           'in_sample_r_squared', 'make_splits', 'summarize_scores']
