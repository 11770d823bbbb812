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

from .core import frobenius_norm_sq
from .core import kronecker
from .core import kronecker_chain
from .core import matricize
from .core import mode_product
from .core import tucker_product
from .core import unmatricize
from .core import vectorize
from .types import DenseTensor
from .types import FactorMatrix
from .types import KroneckerFactorSet
from .types import as_array
from .types import dense_tensor
from .types import factor
from .types import factor_set
from .types import identity_factor

__all__ = ['DenseTensor', 'FactorMatrix', 'KroneckerFactorSet', 'as_array',
           'dense_tensor', 'factor', 'factor_set', 'identity_factor',
           'vectorize', 'matricize', 'unmatricize', 'kronecker',
           'kronecker_chain', 'mode_product', 'tucker_product',
           'frobenius_norm_sq']
