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

""" Command line front end.

    tenreg ingest   --events events.csv --out panel/
    tenreg fit      --data panel/ --method gls --out fit/
    tenreg gibbs    --data panel/ --chains 4 --out gibbs/
    tenreg cv       --data panel/ --models multiplicative,additive --out cv/
    tenreg diagnose --residual fit/residual.tnsr --out diag/

Every command takes --config FILE with key=value lines named like the long
flags (dashes as underscores); flags override the file, the file overrides
the defaults. The resolved configuration is written to
<out>/config.resolved.

Exit codes: 0 success, 2 I/O error, 3 malformed input or configuration,
4 numerical failure, 5 sampler failure.
"""
import argparse
import json
import logging
import os
import sys

import numpy as np

from tenreg import __version__
from tenreg.algorithms import als
from tenreg.algorithms import gibbs
from tenreg.algorithms import gls
from tenreg.algorithms.als.types import regression_dataset
from tenreg.estimators import AdditiveRegressor
from tenreg.estimators import MultilinearRegressor
from tenreg.estimators import RankOnePerDyadRegressor
from tenreg.estimators import SeparateBilinearRegressor
from tenreg.estimators import ZeroRegressor
from tenreg.evaluation import cross_validate
from tenreg.evaluation import make_splits
from tenreg.evaluation import r_squared
from tenreg.exceptions import ConfigurationError
from tenreg.exceptions import FormatError
from tenreg.exceptions import NumericalError
from tenreg.exceptions import SamplerError
from tenreg.exceptions import ShapeError
from tenreg.io import formats
from tenreg.io import tables
from tenreg.relational import build_predictors
from tenreg.relational import ingest_events
from tenreg.relational import predictor_spec
from tenreg.relational import read_ordering
from tenreg.tensor.types import as_array
from tenreg.tensor.types import dense_tensor

logger = logging.getLogger(__name__)

THREADS_VARIABLE = 'TENREG_THREADS'

EXIT_OK, EXIT_IO, EXIT_PARSE, EXIT_NUMERICAL, EXIT_SAMPLER = 0, 2, 3, 4, 5

MODELS = ('multiplicative', 'gls', 'additive', 'rank_one', 'separate',
          'zero')


def main(argv=None):
    """ Runs one command and returns its exit code. """
    parser, commands = build_parser()
    try:
        args = parse_args(parser, commands, argv)
    except (ConfigurationError, FormatError) as error:
        print('tenreg: {}'.format(error), file=sys.stderr)
        return EXIT_PARSE
    except OSError as error:
        print('tenreg: {}'.format(error), file=sys.stderr)
        return EXIT_IO
    logging.basicConfig(level=getattr(logging, args.log_level.upper()),
                        format='%(asctime)s %(name)s %(levelname)s '
                               '%(message)s', stream=sys.stderr)
    try:
        os.makedirs(args.out, exist_ok=True)
        write_resolved(args)
        args.run(args)
    except SamplerError as error:
        logger.error('%s', error)
        return EXIT_SAMPLER
    except NumericalError as error:
        logger.error('%s', error)
        return EXIT_NUMERICAL
    except (FormatError, ConfigurationError, ShapeError) as error:
        logger.error('%s', error)
        return EXIT_PARSE
    except OSError as error:
        logger.error('%s', error)
        return EXIT_IO
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', required=True,
                        help='output directory; nothing is written elsewhere')
    common.add_argument('--config', help='key=value configuration file')
    common.add_argument('--seed', type=int, default=0)
    common.add_argument('--threads', type=int, default=None,
                        help='worker threads (default ${} or 1)'.format(
                            THREADS_VARIABLE))
    common.add_argument('--log-level', default='INFO',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])

    parser = argparse.ArgumentParser(
        prog='tenreg', description='Multilinear tensor regression toolkit.')
    parser.add_argument('--version', action='version', version=__version__)
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True
    commands = {}

    ingest = subparsers.add_parser('ingest', parents=[common],
                                   help='event CSV to predictor tensors')
    ingest.add_argument('--events', required=True)
    ingest.add_argument('--nodes', help='node ordering file')
    ingest.add_argument('--types', help='action-type ordering file')
    ingest.add_argument('--periods', help='period ordering file')
    ingest.add_argument('--diagonal-defined', action='store_true')
    ingest.add_argument('--no-lag1', action='store_true')
    ingest.add_argument('--no-reciprocal', action='store_true')
    ingest.add_argument('--no-transitivity', action='store_true')
    ingest.add_argument('--no-monthly', action='store_true')
    ingest.add_argument('--monthly-window', type=int, default=4)
    ingest.add_argument('--demean', choices=['before', 'after', 'none'],
                        default='after',
                        help='demean each series before or after the '
                             'normal-score transform, or not at all')
    ingest.set_defaults(run=cmd_ingest)
    commands['ingest'] = ingest

    fit = subparsers.add_parser('fit', parents=[common],
                                help='least squares or GLS fit')
    fit.add_argument('--data', required=True)
    fit.add_argument('--method', choices=['als', 'gls'], default='als')
    fit.add_argument('--tol', type=float, default=1e-8)
    fit.add_argument('--max-sweeps', type=int, default=500)
    fit.add_argument('--ridge', type=float, default=1e-8)
    fit.add_argument('--fixed-modes', default='',
                     help='comma separated 1-based modes pinned to I')
    fit.add_argument('--warm-start', action='store_true')
    fit.set_defaults(run=cmd_fit)
    commands['fit'] = fit

    sampler = subparsers.add_parser('gibbs', parents=[common],
                                    help='Gibbs sampler and summaries')
    sampler.add_argument('--data', required=True)
    sampler.add_argument('--iters', type=int, default=5500)
    sampler.add_argument('--burnin', type=int, default=500)
    sampler.add_argument('--chains', type=int, default=4)
    sampler.add_argument('--thin', type=int, default=1)
    sampler.add_argument('--eta0', type=float, default=1.0)
    sampler.add_argument('--tau0-sq', type=float, default=1.0)
    sampler.add_argument('--fixed-modes', default='')
    sampler.add_argument('--effect-modes', default='',
                         help='1-based modes flagged by the 95%% rule')
    sampler.add_argument('--no-warm-start', action='store_true')
    sampler.set_defaults(run=cmd_gibbs)
    commands['gibbs'] = sampler

    cv = subparsers.add_parser('cv', parents=[common],
                               help='cross-validated predictive R^2')
    cv.add_argument('--data', required=True)
    cv.add_argument('--models', default='multiplicative,additive',
                    help='comma separated subset of {}'.format(
                        ','.join(MODELS)))
    cv.add_argument('--folds', type=int, default=10)
    cv.add_argument('--test-size', type=int, default=55)
    cv.add_argument('--demean', choices=['train', 'full', 'none'],
                    default='train')
    cv.add_argument('--type-mode', type=int, default=None,
                    help='1-based outcome mode scored per slice')
    cv.add_argument('--blocked', action='store_true')
    cv.add_argument('--tol', type=float, default=1e-8)
    cv.add_argument('--max-sweeps', type=int, default=500)
    cv.set_defaults(run=cmd_cv)
    commands['cv'] = cv

    diagnose = subparsers.add_parser('diagnose', parents=[common],
                                     help='mode-wise residual correlations')
    diagnose.add_argument('--residual', required=True)
    diagnose.add_argument('--mode', type=int, default=None,
                          help='1-based mode; default all but the last')
    diagnose.set_defaults(run=cmd_diagnose)
    commands['diagnose'] = diagnose
    return parser, commands


def parse_args(parser, commands, argv=None):
    """ Parses argv with flags > config file > defaults.

    Raises:
        ConfigurationError: On an unknown or malformed configuration key.
        OSError: If the configuration file cannot be read.
    """
    args = parser.parse_args(argv)
    if args.config:
        command = commands[args.command]
        values = read_config(args.config)
        known = {action.dest: action for action in command._actions}
        unknown = sorted(set(values) - set(known) - {'config', 'help'})
        if unknown:
            raise ConfigurationError('unknown configuration keys {}'
                                     .format(unknown))
        defaults = {}
        for (key, value) in values.items():
            action = known[key]
            if isinstance(action, argparse._StoreTrueAction):
                defaults[key] = __as_flag__(key, value)
            elif action.choices is not None and value not in action.choices:
                raise ConfigurationError('{} must be one of {}, got {!r}'
                                         .format(key, list(action.choices),
                                                 value))
            else:
                defaults[key] = value
        command.set_defaults(**defaults)
        args = parser.parse_args(argv)
    if args.threads is None:
        threads = os.environ.get(THREADS_VARIABLE, '1')
        try:
            args.threads = int(threads)
        except ValueError:
            raise ConfigurationError('{} must be an integer, got {!r}'
                                     .format(THREADS_VARIABLE, threads))
    return args


def read_config(path):
    values = {}
    with open(path) as handle:
        for (number, line) in enumerate(handle, start=1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise ConfigurationError('{}:{}: expected key=value'.format(
                    path, number))
            key, value = (part.strip() for part in line.split('=', 1))
            values[key.replace('-', '_')] = value
    return values


def write_resolved(args):
    resolved = {key: value for (key, value) in sorted(vars(args).items())
                if key != 'run'}
    with open(os.path.join(args.out, 'config.resolved'), 'w') as handle:
        for (key, value) in resolved.items():
            handle.write('{}={}\n'.format(key, '' if value is None
                                          else value))


def cmd_ingest(args):
    orderings = {kind: None if getattr(args, kind) is None else
                 read_ordering(getattr(args, kind))
                 for kind in ('nodes', 'types', 'periods')}
    panel = ingest_events(args.events, diagonal_defined=args.diagonal_defined,
                          **orderings)
    spec = predictor_spec(include_lag1=not args.no_lag1,
                          include_reciprocal=not args.no_reciprocal,
                          include_transitivity=not args.no_transitivity,
                          include_monthly=not args.no_monthly,
                          monthly_window=args.monthly_window)
    data = build_predictors(panel, spec, demean_order=args.demean)
    formats.write_tensor(__out__(args, 'panel.tnsr'),
                         dense_tensor(panel.counts.astype(np.float64)))
    formats.write_tensor(__out__(args, 'X.tnsr'), data.X)
    formats.write_tensor(__out__(args, 'Y.tnsr'), data.Y)
    if data.mask is not None:
        formats.write_tensor(__out__(args, 'mask.tnsr'),
                             dense_tensor(data.mask.astype(np.float64)))
    manifest = {'nodes': list(panel.nodes), 'types': list(panel.types),
                'periods': list(panel.periods),
                'diagonal_defined': panel.diagonal_defined,
                'spec': spec._asdict(), 'X_dims': list(data.X.dims),
                'Y_dims': list(data.Y.dims),
                'masked': data.mask is not None}
    __write_json__(__out__(args, 'manifest.json'), manifest)
    logger.info('wrote predictors %s and outcomes %s to %s', data.X.dims,
                data.Y.dims, args.out)


def cmd_fit(args):
    data = load_dataset(args.data)
    params = {'tol': args.tol, 'max_sweeps': args.max_sweeps,
              'ridge': args.ridge, 'seed': args.seed,
              'fixed_modes': __modes__(args.fixed_modes),
              'warm_start': args.warm_start}
    if args.method == 'als':
        report = als.fit_als(data, parameters=params)
    else:
        report = gls.fit_gls(data, parameters=params)
        formats.write_covariance(__out__(args, 'covariance.mltrc1'),
                                 report.covariance)
    formats.write_factors(__out__(args, 'factors.mltrf1'), report.factors)
    residual = als.residual_tensor(data, report.factors)
    formats.write_tensor(__out__(args, 'residual.tnsr'), residual)
    rss = float(np.vdot(residual.data, residual.data))
    __write_json__(__out__(args, 'report.json'), {
        'method': args.method, 'sweeps': report.sweeps,
        'converged': bool(report.converged), 'rss': rss,
        'r2': r_squared(data.Y, als.predict(report.factors, data.X),
                        data.mask),
        'objective_trace': [float(v) for v in report.objective_trace]})
    logger.info('%s fit: %d sweeps, rss %.6g', args.method, report.sweeps,
                rss)


def cmd_gibbs(args):
    data = load_dataset(args.data)
    prior = gibbs.default_prior(data.out_dims, data.in_dims, args.eta0,
                                args.tau0_sq)
    store = gibbs.ChainStore(__out__(args, 'chains'))
    gibbs.gibbs_run(data, prior, parameters={
        'iters': args.iters, 'burnin': args.burnin, 'chains': args.chains,
        'thin': args.thin, 'seed': args.seed, 'threads': args.threads,
        'warm_start': not args.no_warm_start,
        'fixed_modes': __modes__(args.fixed_modes)}, store=store)
    summary = gibbs.summarize(store, effect_modes=__modes__(args.effect_modes))
    tables.write_table(__out__(args, 'summary.csv'), summary.table)
    tables.write_table(__out__(args, 'dispersion.csv'), summary.dispersion)


def cmd_cv(args):
    data = load_dataset(args.data)
    names = [name.strip() for name in args.models.split(',') if name.strip()]
    unknown = sorted(set(names) - set(MODELS))
    if unknown or not names:
        raise ConfigurationError('unknown models {}; choose from {}'.format(
            unknown, MODELS))
    params = {'tol': args.tol, 'max_sweeps': args.max_sweeps,
              'seed': args.seed}
    type_mode = None if args.type_mode is None else args.type_mode - 1
    factories = {
        'multiplicative': lambda: MultilinearRegressor('als', params),
        'gls': lambda: MultilinearRegressor('gls', params),
        'additive': AdditiveRegressor,
        'rank_one': lambda: RankOnePerDyadRegressor(params),
        'separate': lambda: SeparateBilinearRegressor(
            2 if type_mode is None else type_mode, params),
        'zero': ZeroRegressor,
    }
    plan = make_splits(data.n, args.folds, args.test_size, args.seed,
                       args.blocked)
    table = cross_validate(data, {name: factories[name] for name in names},
                           plan, threads=args.threads, demean=args.demean,
                           type_mode=type_mode)
    tables.write_table(__out__(args, 'scores.csv'), table.scores)
    tables.write_table(__out__(args, 'scores_summary.csv'), table.summary)


def cmd_diagnose(args):
    residual = formats.read_tensor(args.residual)
    modes = (range(max(1, residual.order - 1)) if args.mode is None else
             [args.mode - 1])
    for k in modes:
        diagnostic = gls.mode_residual_correlation(residual, k)
        tables.write_table(__out__(args, 'correlation_mode{}.csv'.format(
            k + 1)), tables.correlation_frame(diagnostic))
        tables.write_table(__out__(args, 'eigen_mode{}.csv'.format(k + 1)),
                           tables.eigen_frame(diagnostic))


def load_dataset(directory):
    """ X.tnsr, Y.tnsr and the optional mask.tnsr of an ingest output. """
    x = formats.read_tensor(os.path.join(directory, 'X.tnsr'))
    y = formats.read_tensor(os.path.join(directory, 'Y.tnsr'))
    mask = None
    mask_path = os.path.join(directory, 'mask.tnsr')
    if os.path.exists(mask_path):
        mask = as_array(formats.read_tensor(mask_path)) != 0
    return regression_dataset(x, y, mask)


def __modes__(text):
    try:
        return tuple(int(k) - 1 for k in str(text).split(',') if k.strip())
    except ValueError:
        raise ConfigurationError('modes must be comma separated integers, '
                                 'got {!r}'.format(text))


def __as_flag__(key, value):
    if value.lower() in ('1', 'true', 'yes', 'on'):
        return True
    if value.lower() in ('0', 'false', 'no', 'off'):
        return False
    raise ConfigurationError('{} expects a boolean, got {!r}'.format(key,
                                                                    value))


def __out__(args, name):
    return os.path.join(args.out, name)


def __write_json__(path, document):
    with open(path, 'w') as handle:
        json.dump(document, handle, indent=2, sort_keys=True)
        handle.write('\n')


if __name__ == '__main__':
    sys.exit(main())
