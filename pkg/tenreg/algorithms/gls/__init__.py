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
from .base import fit_gls
from .functions import array_normal_nll
from .functions import gls_conditional_update
from .functions import inv_sqrt
from .functions import mode_residual_correlation
from .functions import sample_array_normal
from .functions import sigma_mle_update
from .functions import trace_gauge
from .types import SeparableCovariance
from .types import identity_covariance
from .types import separable_covariance

__all__ = ['fit_gls', 'default_parameters', 'inv_sqrt',
           'gls_conditional_update', 'sigma_mle_update', 'trace_gauge',
           'array_normal_nll', 'sample_array_normal',
           'mode_residual_correlation', 'SeparableCovariance',
           'identity_covariance', 'separable_covariance']
