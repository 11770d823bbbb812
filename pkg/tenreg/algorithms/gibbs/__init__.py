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

from .base import default_parameters
from .base import gibbs_run
from .base import gibbs_step
from .functions import normalize_factors
from .functions import posterior_parameters
from .functions import posterior_update_fixed_mode
from .functions import posterior_update_mode
from .functions import sample_inverse_wishart
from .functions import sample_masked_outcomes
from .functions import sample_matrix_normal
from .functions import sample_tau2
from .store import ChainStore
from .summary import summarize
from .types import GibbsState
from .types import ModePrior
from .types import PriorSpec
from .types import default_prior
from .types import prior_spec

__all__ = ['default_parameters', 'gibbs_run', 'gibbs_step',
           'normalize_factors', 'posterior_parameters',
           'posterior_update_fixed_mode', 'posterior_update_mode',
           'sample_inverse_wishart', 'sample_masked_outcomes',
           'sample_matrix_normal', 'sample_tau2',
           'ChainStore', 'summarize', 'GibbsState', 'ModePrior', 'PriorSpec',
           'default_prior', 'prior_spec']
