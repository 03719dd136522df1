"""Set up, run, and evaluate simulations described by a ``ProblemConfig``."""
import logging
import time
from pathlib import Path
from typing import Callable, Dict, List, NamedTuple, Optional, Union
from numpy import (ndarray, asarray, argsort, interp, load, savez, stack,
                   float64)

from .config import ProblemConfig
from .exceptions import ConfigError
from .grid import MeshCoordinates
from .integrator import SimulationState, Solver
from .mesh import MeshAdaptor
from .metrics import spatial_metrics
from .report import (ErrorReport, EnergyHistory, norms, state_errors,
                     rotation_asymmetry, VARIABLES)
from .schemes import total_energy
from .state import primitive
from . import writers

logger = logging.getLogger(__name__)

PathT = Union[str, Path]
ExactT = Callable[[MeshCoordinates, float], Optional[ndarray]]


class ProblemCallbacks(NamedTuple):
    """Exact solution and extra source of a configured problem."""
    exact: Optional[ExactT]
    source: Optional[Callable[[MeshCoordinates, float], ndarray]]


class ReferenceSolution(NamedTuple):
    """Final state of a fine-grid reference run."""
    coords: MeshCoordinates
    states: ndarray
    digest: str


class RunArtifacts(NamedTuple):
    """Everything a run produced."""
    directory: Optional[Path]
    files: Dict[str, List[str]]
    state: SimulationState
    energy: EnergyHistory
    errors: Optional[ErrorReport]
    gates: List[tuple]
    asymmetry: Optional[float]
    wall_time: float


def build_problem(config: ProblemConfig) -> tuple:
    """Initial state and callbacks of a configured problem.

    If the mesh moves and initial adaptations are requested, the uniform
    mesh is first adapted to the initial data that many times, each time
    re-evaluating the analytic initial data on the adapted mesh.

    Returns
    -------
    tuple
        The initial :class:`SimulationState` and :class:`ProblemCallbacks`.

    Raises
    ------
    ConfigError
        If the problem needs options it does not know.

    """
    problem, options = config.problem, config.options
    coords = MeshCoordinates.uniform(config.grid)
    if config.moving and config.initial_adaptations:
        adaptor = MeshAdaptor(config.monitor, config.order)
        for _ in range(config.initial_adaptations):
            states = problem.initial_states(coords, options)
            coords = adaptor.adapt(states, coords).new
    states = problem.initial_states(coords, options)
    state = SimulationState.from_states(states, coords, config.order)
    exact = None
    if problem.has_exact:
        def exact(coords: MeshCoordinates, t: float) -> ndarray:
            return problem.exact_states(coords, t, options)
    source = problem.source_term() if config.source else None
    return state, ProblemCallbacks(exact, source)


def make_solver(config: ProblemConfig,
                callbacks: Optional[ProblemCallbacks] = None) -> Solver:
    """Solver with the scheme, mesh mode, and time step rule of a config."""
    source = None if callbacks is None else callbacks.source
    return Solver(config.scheme(), config.order, config.adaptor(), source,
                  config.cfl, config.dt_max, config.dt_exponent)


def simulate(config: ProblemConfig, observer=None,
             progress: bool = False) -> SimulationState:
    """Run a configured problem to its end time without writing files."""
    state, callbacks = build_problem(config)
    solver = make_solver(config, callbacks)
    return solver.advance(state, config.end, config.outputs,
                          observer, progress)


def cut_line(states: ndarray, coords: MeshCoordinates, axis: int,
             value: float) -> ndarray:
    """Sample a 2D solution where the coordinate `axis` equals `value`.

    Every mesh line running along `axis` is intersected with the cut by
    piecewise-linear interpolation in physical coordinates.

    Returns
    -------
    ndarray
        Rows of ``(s, h, v1, v2, b, h+b)`` sorted by the coordinate `s`
        along the cut.

    """
    if axis not in (0, 1):
        raise ValueError(f'Axis must be 0 or 1, not {axis}!')
    h, v1, v2, b = primitive(states)
    fields = (h, v1, v2, b, h + b)
    other = 1 - axis
    x = coords.x
    if axis == 0:
        lines = [(x[0, :, k], x[1, :, k], [f[:, k] for f in fields])
                 for k in range(x.shape[2])]
    else:
        lines = [(x[1, k, :], x[0, k, :], [f[k, :] for f in fields])
                 for k in range(x.shape[1])]
    rows = []
    for along, across, values in lines:
        if not along.min() <= value <= along.max():
            continue
        order = argsort(along)
        s = interp(value, along[order], across[order])
        rows.append([s] + [interp(value, along[order], f[order])
                           for f in values])
    if not rows:
        msg = f'Cut x{axis + 1} = {value} misses the domain!'
        raise ValueError(msg)
    samples = asarray(rows, dtype=float64)
    logger.debug('Cut line along x%d with %d samples.', other + 1, len(rows))
    return samples[argsort(samples[:, 0])]


def reference_solution(config: ProblemConfig,
                       cache_dir: PathT) -> ReferenceSolution:
    """Final state of the fine-grid reference run of a configuration.

    The reference run uses the reference resolution and mesh mode of the
    configuration. Results are cached as ``.npz`` files named by the digest
    of the reference configuration.

    Raises
    ------
    ConfigError
        If the configuration declares no reference resolution.

    """
    if config.reference_resolution is None:
        msg = f'Problem "{config.name}" declares no reference run!'
        raise ConfigError(msg)
    reference = config.replace(resolution=config.reference_resolution,
                               mode=config.reference_mode,
                               reference_resolution=None)
    digest = reference.digest()
    cache = Path(cache_dir)
    path = cache / f'{digest}.npz'
    if path.exists():
        logger.info('Reference cache hit: %s', path)
        with load(str(path)) as data:
            coords = MeshCoordinates(reference.grid, data['x'])
            return ReferenceSolution(coords, data['states'], digest)
    logger.info('Reference cache miss. Computing %s.', digest[:12])
    final = simulate(reference)
    cache.mkdir(parents=True, exist_ok=True)
    savez(str(path), x=final.coords.x, states=final.states)
    return ReferenceSolution(final.coords, final.states, digest)


def reference_errors(state: SimulationState,
                     reference: ReferenceSolution,
                     cut: Optional[tuple] = None,
                     ) -> Dict[str, Dict[str, float]]:
    """Errors against a reference solution on another grid.

    In 1D the reference is interpolated piecewise-linearly to the nodes.
    In 2D both solutions are compared along the given cut line.

    """
    grid = state.grid
    if grid.dimension == 1:
        x = state.coords.x1[:, 0]
        xr = reference.coords.x1[:, 0]
        sampled = stack([interp(x, xr, field[:, 0])
                         for field in reference.states])
        return state_errors(state.states, sampled[..., None], grid)
    if cut is None:
        raise ConfigError('2D reference comparisons need a cut line!')
    axis, value = cut
    mine = cut_line(state.states, state.coords, axis, value)
    theirs = cut_line(reference.states, reference.coords, axis, value)
    columns = {'h': 1, 'v1': 2, 'v2': 3, 'h+b': 5}
    step = grid.spacing[1 - axis]
    errors = {}
    for name in VARIABLES:
        column = columns[name]
        sampled = interp(mine[:, 0], theirs[:, 0], theirs[:, column])
        errors[name] = norms(mine[:, column] - sampled, step)
    return errors


def _label(t: float) -> str:
    return f'{t:.6f}'


def run(config: ProblemConfig, output: Optional[PathT] = None,
        progress: bool = False,
        cache_dir: Optional[PathT] = None) -> RunArtifacts:
    """Run a configured problem and write all its output files.

    Parameters
    ----------
    config: ProblemConfig
        The configuration.
    output: str or Path, optional
        Output directory. Nothing is written if not given.
    progress: bool, optional
        Show a progress bar. Defaults to False.
    cache_dir: str or Path, optional
        Where reference solutions are cached. Defaults to a ``references``
        folder in the output directory.

    Returns
    -------
    RunArtifacts
        Files written, final state, energy history, errors, and gates.

    """
    start = time.perf_counter()
    directory = None if output is None else Path(output)
    files: Dict[str, List[str]] = {'solution': [], 'mesh': [], 'energy': [],
                                   'gates': [], 'errors': [], 'cut': [],
                                   'config': []}
    if directory is not None:
        directory.mkdir(parents=True, exist_ok=True)
        config_path = directory / 'config.yaml'
        config_path.write_text(config.dump(), encoding='utf-8')
        files['config'].append(str(config_path))
    logger.info('Running "%s" with %s scheme on a %s mesh of %s nodes.',
                config.name, config.kind.upper(), config.mode,
                'x'.join(str(n) for n in config.resolution))
    state, callbacks = build_problem(config)
    solver = make_solver(config, callbacks)
    params = config.params
    scheme = solver.scheme
    history = EnergyHistory()
    gates: List[tuple] = []
    cut = config.problem.cut

    def observe(current: SimulationState, is_output: bool) -> None:
        if config.every_step_energy or is_output:
            history.append(current.t, total_energy(
                current.states, current.jacobian, current.grid, params))
        if not is_output:
            return
        metrics = spatial_metrics(current.coords, config.order)
        rhs = scheme.rhs(current.states, metrics.moving(current.xdot))
        for x1, x2, axis in rhs.gate_locations(current.coords):
            gates.append((current.t, x1, x2, axis))
        if directory is None:
            return
        label = _label(current.t)
        files['solution'].append(writers.write_solution(
            directory / f'solution_t{label}.csv', current.states,
            current.coords))
        files['mesh'].append(writers.write_mesh(
            directory / f'mesh_t{label}.csv', current.coords))
        if cut is not None and current.grid.dimension == 2:
            samples = cut_line(current.states, current.coords, *cut)
            files['cut'].append(writers.write_cut_line(
                directory / f'cut_t{label}.csv', samples))
        logger.info('Wrote output at t = %.6g.', current.t)

    outputs = tuple(sorted(set(config.outputs) | {config.end}))
    final = solver.advance(state, config.end, outputs, observe, progress)
    errors = _errors(config, final, callbacks, directory, cache_dir)
    asymmetry = None
    if config.problem.symmetric and len(set(final.grid.shape)) == 1:
        asymmetry = rotation_asymmetry(final.states[0])
        logger.info('Rotation asymmetry of h: %.3e.', asymmetry)
    if directory is not None:
        files['energy'].append(writers.write_energy(
            directory / 'energy.csv', history))
        files['gates'].append(writers.write_gates(
            directory / 'gates.csv', gates))
        if errors is not None:
            files['errors'].append(writers.write_error_report(
                directory / 'errors.csv', errors))
    wall_time = time.perf_counter() - start
    logger.info('Finished "%s" at t = %.6g in %.2f s.',
                config.name, final.t, wall_time)
    return RunArtifacts(directory, files, final, history, errors,
                        gates, asymmetry, wall_time)


def _errors(config: ProblemConfig, final: SimulationState,
            callbacks: ProblemCallbacks, directory: Optional[Path],
            cache_dir: Optional[PathT]) -> Optional[ErrorReport]:
    if callbacks.exact is not None:
        report = ErrorReport('exact')
        exact = callbacks.exact(final.coords, final.t)
        report.add(final.grid, state_errors(final.states, exact, final.grid))
        return report
    if config.reference_resolution is None:
        logger.warning('No exact solution and no reference run for "%s". '
                       'Skipping the error report.', config.name)
        return None
    if cache_dir is None:
        if directory is None:
            logger.warning('No cache directory for the reference run of '
                           '"%s". Skipping the error report.', config.name)
            return None
        cache_dir = directory / 'references'
    reference = reference_solution(config, cache_dir)
    report = ErrorReport(reference.digest)
    report.add(final.grid,
               reference_errors(final, reference, config.problem.cut))
    return report


def convergence_study(config: ProblemConfig, levels: int,
                      progress: bool = False) -> ErrorReport:
    """Errors against the exact solution under repeated refinement.

    The resolution is doubled `levels - 1` times starting from that of
    `config`. Unless the configuration sets its own exponent, the time step
    follows :math:`\\Delta t = C(\\min\\Delta\\xi)^{e}` with `e` = 2 for the
    energy-conservative and 5/3 for the energy-stable scheme, so that the
    spatial error dominates.

    Raises
    ------
    ConfigError
        If the problem has no exact solution or fewer than 2 levels are
        requested.

    """
    if not config.problem.has_exact:
        msg = f'Problem "{config.name}" has no exact solution to converge to!'
        raise ConfigError(msg)
    if levels < 2:
        raise ConfigError(f'Need at least 2 levels, not {levels}!')
    exponent = config.dt_exponent
    if exponent is None:
        exponent = 2.0 if config.kind == 'ec' else 5.0 / 3.0
    report = ErrorReport('exact')
    base = config.grid
    for level in range(levels):
        grid = base.refined(2 ** level)
        resolution = tuple(grid.shape[axis] for axis in grid.axes)
        refined = config.replace(resolution=resolution, dt_exponent=exponent)
        logger.info('Convergence level %d: %s nodes.', level,
                    'x'.join(str(n) for n in resolution))
        state, callbacks = build_problem(refined)
        solver = make_solver(refined, callbacks)
        final = solver.advance(state, refined.end, (), None, progress)
        exact = callbacks.exact(final.coords, final.t)
        report.add(final.grid, state_errors(final.states, exact, final.grid))
    return report
