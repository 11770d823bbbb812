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

""" Exception hierarchy shared by all tenreg modules.
"""


class TenregError(Exception):
    """ Base class of all errors raised by tenreg. """


class ConfigurationError(TenregError, ValueError):
    """ Invalid parameters or violated preconditions. """


class ShapeError(TenregError, ValueError):
    """ Operand dimensions do not conform. """


class ModeError(ShapeError, IndexError):
    """ Mode index out of range, or a fixed mode where a free one is needed.
    """

    def __init__(self, message, mode=None):
        super().__init__(message)
        self.mode = mode


class NumericalError(TenregError, ArithmeticError):
    """ Base class of numerical failures.

    Args:
        message (str): Description of the failure.
        mode (int): 0-based mode index the failure relates to, if any.
    """

    def __init__(self, message, mode=None):
        if mode is not None:
            message = '{} (mode {})'.format(message, mode + 1)
        super().__init__(message)
        self.mode = mode


class SingularityError(NumericalError):
    """ A Gram or design matrix could not be inverted. """


class DefinitenessError(NumericalError):
    """ A matrix expected to be positive definite is not. """


class DivergenceError(NumericalError):
    """ An iterative procedure produced non-finite values. """


class SamplerError(TenregError):
    """ A Gibbs chain aborted.

    Args:
        message (str): Description of the failure.
        chain (int): Index of the failing chain.
        iteration (int): Iteration at which the chain failed.
    """

    def __init__(self, message, chain=None, iteration=None):
        super().__init__('chain {} aborted at iteration {}: {}'.format(
            chain, iteration, message))
        self.chain = chain
        self.iteration = iteration


class FormatError(TenregError, ValueError):
    """ A TNSR1, MLTRF1 or MLTRC1 document could not be parsed. """


class IngestError(FormatError):
    """ An event CSV row could not be ingested.

    Args:
        message (str): Description of the failure.
        line (int): 1-based line number in the CSV stream, if known.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = 'line {}: {}'.format(line, message)
        super().__init__(message)
        self.line = line
