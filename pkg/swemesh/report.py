"""Error norms, convergence orders, and energy histories."""
from typing import Dict, List, Optional, Sequence, Tuple
from numpy import ndarray, asarray, abs as abs_, sqrt, log, rot90, float64

from .grid import ComputationalGrid
from .state import validated

VARIABLES = ('h', 'h+b', 'v1', 'v2')
NORMS = ('l1', 'l2', 'linf')
NORM_DEFINITIONS = ('l1 = sum(|e|) * dxi1 * dxi2',
                    'l2 = sqrt(sum(e^2) * dxi1 * dxi2)',
                    'linf = max(|e|)')


def norms(error: ndarray, volume: float) -> Dict[str, float]:
    """Discrete norms of a nodal error field, weighted by the cell volume."""
    error = abs_(asarray(error, dtype=float64))
    return {'l1': float(error.sum() * volume),
            'l2': float(sqrt((error * error).sum() * volume)),
            'linf': float(error.max())}


def variables(states: ndarray) -> Dict[str, ndarray]:
    """Depth, surface level, and velocities of conserved states."""
    h, hv1, hv2, b = validated(states)
    return {'h': h, 'h+b': h + b, 'v1': hv1 / h, 'v2': hv2 / h}


def state_errors(states: ndarray, exact: ndarray,
                 grid: ComputationalGrid) -> Dict[str, Dict[str, float]]:
    """Norms of the errors of all reported variables."""
    numerical, reference = variables(states), variables(exact)
    return {name: norms(numerical[name] - reference[name], grid.cell_volume)
            for name in VARIABLES}


class ErrorReport:
    """Errors of a sequence of runs at increasing resolution.

    Parameters
    ----------
    label: str, optional
        What the errors were measured against, e.g. "exact" or the digest
        of a reference run. Defaults to "exact".

    """
    def __init__(self, label: str = 'exact') -> None:
        self.__label = label
        self.__rows: List[Tuple[Tuple[int, ...], float,
                                Dict[str, Dict[str, float]]]] = []

    def __repr__(self) -> str:
        title = self.__class__.__name__
        header = f'{title}:\n'
        divider = '=' * len(title) + '\n'
        label = f'Against:     {self.__label}\n'
        levels = f'Resolutions: {self.resolutions}'
        return header + divider + label + levels

    def __len__(self) -> int:
        return len(self.__rows)

    @property
    def label(self) -> str:
        return self.__label

    @property
    def resolutions(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(row[0] for row in self.__rows)

    @property
    def spacings(self) -> Tuple[float, ...]:
        """Smallest computational spacing of each run."""
        return tuple(row[1] for row in self.__rows)

    def add(self, grid: ComputationalGrid,
            errors: Dict[str, Dict[str, float]]) -> None:
        """Append the errors of a run on the given grid."""
        spacing = min(grid.spacing[axis] for axis in grid.axes)
        self.__rows.append((tuple(grid.shape[a] for a in grid.axes),
                            spacing, errors))

    def error(self, level: int, variable: str = 'h',
              norm: str = 'l1') -> float:
        """Error of one run, variable, and norm."""
        return self.__rows[level][2][variable][norm]

    def errors(self, variable: str = 'h', norm: str = 'l1') -> List[float]:
        """Errors of all runs in one variable and norm."""
        return [row[2][variable][norm] for row in self.__rows]

    def orders(self, variable: str = 'h',
               norm: str = 'l1') -> List[Optional[float]]:
        """Observed orders between successive runs.

        For halved spacings they are :math:`\\log_2(e_{coarse}/e_{fine})`.
        Orders involving a vanishing error are reported as None.

        """
        orders = []
        for coarse, fine in zip(self.__rows[:-1], self.__rows[1:]):
            e_coarse = coarse[2][variable][norm]
            e_fine = fine[2][variable][norm]
            if e_coarse > 0.0 and e_fine > 0.0:
                orders.append(float(log(e_coarse / e_fine)
                                    / log(coarse[1] / fine[1])))
            else:
                orders.append(None)
        return orders

    def rows(self) -> List[List]:
        """Table rows: resolution, variable, norm, error, and order."""
        table = []
        for variable in VARIABLES:
            for norm in NORMS:
                orders = [None] + self.orders(variable, norm)
                for (resolution, _, errors), order in zip(self.__rows, orders):
                    table.append(['x'.join(str(n) for n in resolution),
                                  variable, norm, errors[variable][norm],
                                  order])
        return table


class EnergyHistory:
    """Time series of the discrete total energy."""

    def __init__(self) -> None:
        self.__times: List[float] = []
        self.__energies: List[float] = []

    def __repr__(self) -> str:
        title = self.__class__.__name__
        header = f'{title}:\n'
        divider = '=' * len(title) + '\n'
        samples = f'Samples:      {len(self.__times)}\n'
        increase = f'Max increase: {self.max_increase}'
        return header + divider + samples + increase

    def __len__(self) -> int:
        return len(self.__times)

    @property
    def times(self) -> Tuple[float, ...]:
        return tuple(self.__times)

    @property
    def energies(self) -> Tuple[float, ...]:
        return tuple(self.__energies)

    def append(self, t: float, energy: float) -> None:
        self.__times.append(float(t))
        self.__energies.append(float(energy))

    @property
    def max_increase(self) -> float:
        """Largest increase between consecutive samples, or 0."""
        pairs = zip(self.__energies[:-1], self.__energies[1:])
        return max([later - earlier for earlier, later in pairs] + [0.0])

    def is_non_increasing(self, tolerance: float = 1e-10) -> bool:
        """No increase exceeds `tolerance` times the initial energy."""
        if not self.__energies:
            return True
        return self.max_increase <= tolerance * abs(self.__energies[0])


def rotation_asymmetry(field: ndarray) -> float:
    """Largest change of a square field under rotation by 90 degrees.

    Raises
    ------
    ValueError
        If the field is not square.

    """
    field = asarray(field, dtype=float64)
    if field.ndim != 2 or field.shape[0] != field.shape[1]:
        msg = f'Need a square field, not one of shape {field.shape}!'
        raise ValueError(msg)
    return float(abs_(field - rot90(field)).max())


def convergence_table(report: ErrorReport,
                      variables_: Sequence[str] = ('h',)) -> str:
    """Human-readable error and order table."""
    lines = [f'{"resolution":>12} {"variable":>8} {"norm":>5} '
             f'{"error":>12} {"order":>7}']
    for resolution, variable, norm, error, order in report.rows():
        if variable not in variables_:
            continue
        order = '' if order is None else f'{order:.3f}'
        lines.append(f'{resolution:>12} {variable:>8} {norm:>5} '
                     f'{error:12.4e} {order:>7}')
    return '\n'.join(lines)
