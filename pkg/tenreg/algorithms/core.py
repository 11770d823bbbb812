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

""" Module defining core utility types and functions used by algorithms.
"""
import logging
from collections import namedtuple

import numpy as np

from tenreg.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

State = namedtuple('State', ['rng', 'params', 'iterations'])


def max_iterations(maximum):
    """
    Higher order function creating predicate for maximum iterations based
    stopping condition.

    Args:
        maximum (int): The maximum number of iterations.

    Returns:
        callable: Function accepting the current state, testing whether
            the maximum iterations have been reached.

    Examples:
        >>> state = State(rng=None, params={}, iterations=0)
        >>> stopping_condition = max_iterations(1000)
        >>> stopping_condition(state) # False

    """

    def max_iterations_(state):
        return state.iterations >= maximum

    return max_iterations_


def relative_change(tol, floor=0.0):
    """
    Higher order function creating a predicate that stops once the relative
    change of the objective in the last iteration falls below tol.

    The state must carry an ``objective_trace`` sequence. The predicate is
    False until at least one iteration has completed.

    Args:
        tol (float): Relative tolerance.
        floor (float): Lower bound on the magnitude the change is measured
            against.

    Returns:
        callable: Stopping condition accepting the current state.
    """

    def relative_change_(state):
        trace = state.objective_trace
        if len(trace) < 2:
            return False
        previous, current = trace[-2], trace[-1]
        return abs(previous - current) <= tol * max(abs(previous), floor,
                                                    np.finfo(float).tiny)

    return relative_change_


def any_of(*conditions):
    """ Combines stopping conditions; stops when any of them holds. """

    def any_of_(state):
        return any(condition(state) for condition in conditions)

    return any_of_


def dictionary_based_metrics(metrics):
    """
    Higher order function creating a result type and collection function from
    the given metrics.

    Args:
        metrics (iterable): Sequence of callable metrics, each
            accepting the algorithm state as parameter and returning the
            measured value with its label:
            measurement(state) -> (label, value).

    Returns:
        tuple(dict, callable): dictionary result type and a collection
            function accepting the current results and the state as arguments
            and returning updated result.

    Examples:
        >>> state = State(rng=None, params={}, iterations=0)
        >>> metrics = [lambda state_: ('iterations', state_.iterations)]
        >>> (results, collect) = dictionary_based_metrics(metrics)
        >>> results = collect(results, state)

    """

    def collect(results, state):
        """
        Measurement collection function for dictionary based metrics.

        Args:
            results (dict): Storing results of metrics.
            state (tenreg.algorithms.core.State): Current state of the
                algorithm.

        Returns:
            dict: Updated results containing new metrics.
        """
        for measurement in metrics:
            (label, value) = measurement(state)
            iteration_dict = results.get(state.iterations, {})
            iteration_dict[label] = value
            results[state.iterations] = iteration_dict
        return results

    return {}, collect


def init_parameters(defaults, params):
    """ Merges params over defaults, rejecting unknown keys.

    Raises:
        ConfigurationError: If params holds a key absent from defaults.
    """
    params = {} if params is None else dict(params)
    unknown = set(params) - set(defaults)
    if unknown:
        raise ConfigurationError('unknown parameters: {}'
                                 .format(sorted(unknown)))
    return {**defaults, **params}


def random_state(seed):
    """ A numpy RandomState from a seed, or the RandomState itself. """
    if isinstance(seed, np.random.RandomState):
        return seed
    return np.random.RandomState(seed)


def spawn_seeds(rng, count):
    """ Fans one random state out into count independent integer seeds. """
    return [int(s) for s in rng.randint(0, 2 ** 31 - 1, size=count)]
