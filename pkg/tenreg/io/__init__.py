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

from .formats import read_covariance
from .formats import read_factors
from .formats import read_tensor
from .formats import write_covariance
from .formats import write_factors
from .formats import write_tensor
from .tables import correlation_frame
from .tables import eigen_frame
from .tables import read_table
from .tables import write_table

__all__ = ['read_tensor', 'write_tensor', 'read_factors', 'write_factors',
           'read_covariance', 'write_covariance', 'write_table', 'read_table',
           'correlation_frame', 'eigen_frame']
