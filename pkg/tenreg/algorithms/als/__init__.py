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
from .base import fit_als
from .baselines import fit_additive
from .baselines import fit_rank_one_per_dyad
from .baselines import predict_additive
from .baselines import predict_rank_one_per_dyad
from .functions import conditional_minimizer
from .functions import normalize_scale
from .functions import predict
from .functions import residual_tensor
from .types import RegressionDataset
from .types import regression_dataset

__all__ = ['fit_als', 'default_parameters', 'conditional_minimizer',
           'normalize_scale', 'predict', 'residual_tensor', 'fit_additive',
           'predict_additive', 'fit_rank_one_per_dyad',
           'predict_rank_one_per_dyad', 'RegressionDataset',
           'regression_dataset']
