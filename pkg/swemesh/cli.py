"""Command-line interface of the shallow-water solver."""
import argparse
import logging
import sys
from typing import List, Optional

from .config import ProblemConfig, SCHEMES, MODES
from .driver import run, convergence_study
from .exceptions import (ConfigError, HaloError, MeshTanglingError,
                         PositivityError, DegenerateMetricError)
from .problems import list_problems
from .report import convergence_table, VARIABLES

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """Argument parser of the ``swemesh`` command."""
    parser = argparse.ArgumentParser(
        prog='swemesh',
        description='High-order energy-stable shallow-water solver on '
                    'adaptive moving meshes.')
    source = parser.add_mutually_exclusive_group()
    source.add_argument('--config', metavar='PATH',
                        help='YAML configuration file')
    source.add_argument('--problem', metavar='NAME',
                        help='registered problem to run with its defaults')
    source.add_argument('--list-problems', action='store_true',
                        help='list the registered problems and exit')
    parser.add_argument('--output', metavar='DIR', default='output',
                        help='output directory (default: %(default)s)')
    parser.add_argument('--scheme', choices=SCHEMES,
                        help='energy-conservative or energy-stable scheme')
    parser.add_argument('--mesh', choices=MODES,
                        help='static or adaptive moving mesh')
    parser.add_argument('--resolution', metavar='N', type=int, nargs='+',
                        help='nodes per axis')
    parser.add_argument('--order', type=int, choices=(1, 2, 3),
                        help='half the formal order of accuracy')
    parser.add_argument('--end-time', metavar='T', type=float,
                        help='final simulation time')
    parser.add_argument('--convergence', metavar='LEVELS', type=int,
                        help='run a refinement study with this many levels')
    parser.add_argument('--no-ring-dissipation', action='store_true',
                        help='drop the mesh-speed weighted dissipation')
    parser.add_argument('--no-progress', action='store_true',
                        help='hide the progress bar')
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true',
                           help='log every time step')
    verbosity.add_argument('-q', '--quiet', action='store_true',
                           help='log warnings and errors only')
    return parser


def configure(args: argparse.Namespace) -> ProblemConfig:
    """Configuration from a file or problem name with flag overrides.

    Raises
    ------
    ConfigError
        If neither a file nor a problem is given, or any value is invalid.

    """
    if args.config:
        config = ProblemConfig.from_yaml(args.config)
    elif args.problem:
        config = ProblemConfig(args.problem)
    else:
        raise ConfigError('Give either --config or --problem!')
    changes = {}
    if args.scheme is not None:
        changes['kind'] = args.scheme
    if args.mesh is not None:
        changes['mode'] = args.mesh
    if args.resolution is not None:
        changes['resolution'] = tuple(args.resolution)
    if args.order is not None:
        changes['order'] = args.order
    if args.end_time is not None:
        end = args.end_time
        changes['end'] = end
        changes['outputs'] = tuple(t for t in config.outputs if t <= end)
    if args.no_ring_dissipation:
        changes['ring_dissipation'] = False
    return config.replace(**changes) if changes else config


def _level(args: argparse.Namespace) -> int:
    if args.verbose:
        return logging.DEBUG
    if args.quiet:
        return logging.WARNING
    return logging.INFO


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point of the ``swemesh`` command.

    Returns
    -------
    int
        0 on success, 2 after a positivity violation, 3 after mesh
        tangling, and 4 for configuration errors.

    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=_level(args),
                        format='%(asctime)s %(levelname)-7s %(name)s: '
                               '%(message)s')
    if args.list_problems:
        for name, description in list_problems():
            print(f'{name:<20} {description}')
        return 0
    try:
        config = configure(args)
        if args.convergence is not None:
            report = convergence_study(config, args.convergence,
                                       not args.no_progress)
            print(convergence_table(report, VARIABLES))
        else:
            run(config, args.output, not args.no_progress)
    except PositivityError as error:
        logger.error('Positivity violated at node %s (h = %s, t = %s): %s',
                     error.node, error.value, error.time, error)
        return error.exit_code
    except MeshTanglingError as error:
        logger.error('Mesh tangled at node %s (J = %s): %s',
                     error.node, error.value, error)
        return error.exit_code
    except (DegenerateMetricError, ConfigError, HaloError) as error:
        logger.error('%s: %s', error.__class__.__name__, error)
        return error.exit_code
    return 0


if __name__ == '__main__':
    sys.exit(main())
