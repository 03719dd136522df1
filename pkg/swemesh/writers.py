"""CSV output of solutions, meshes, energies, gates, and error reports.

All floating-point numbers are written with 17 significant digits, so that
values read back are bitwise identical to the ones written.

"""
import csv
from typing import Iterable, Sequence
from numpy import ndarray

from .grid import MeshCoordinates
from .report import ErrorReport, EnergyHistory, NORM_DEFINITIONS
from .state import primitive

SOLUTION_HEADER = ('x1', 'x2', 'h', 'v1', 'v2', 'b', 'h+b')
ENERGY_HEADER = ('t', 'E')
MESH_HEADER = ('i', 'j', 'x1', 'x2')
GATES_HEADER = ('t', 'x1', 'x2', 'axis')
ERROR_HEADER = ('resolution', 'variable', 'norm', 'error', 'order')


def fmt(value: float) -> str:
    """Render a float with 17 significant digits."""
    return format(float(value), '.17g')


def _write(path: str, header: Sequence[str], rows: Iterable[Sequence],
           comments: Sequence[str] = ()) -> str:
    with open(str(path), 'w', encoding='utf-8', newline='') as stream:
        for comment in comments:
            stream.write(f'# {comment}\n')
        writer = csv.writer(stream)
        writer.writerow(header)
        writer.writerows(rows)
    return str(path)


def write_solution(path: str, states: ndarray, coords: MeshCoordinates) -> str:
    """Nodal solution as columns x1, x2, h, v1, v2, b, and h+b."""
    h, v1, v2, b = (field.ravel() for field in primitive(states))
    x1, x2 = coords.x1.ravel(), coords.x2.ravel()
    rows = ([fmt(value) for value in row]
            for row in zip(x1, x2, h, v1, v2, b, h + b))
    return _write(path, SOLUTION_HEADER, rows)


def write_energy(path: str, history: EnergyHistory) -> str:
    """Total energy over time."""
    rows = ([fmt(t), fmt(e)] for t, e in zip(history.times, history.energies))
    return _write(path, ENERGY_HEADER, rows)


def write_mesh(path: str, coords: MeshCoordinates) -> str:
    """Node indices and coordinates."""
    n1, n2 = coords.grid.shape
    rows = ([i, j, fmt(coords.x1[i, j]), fmt(coords.x2[i, j])]
            for i in range(n1) for j in range(n2))
    return _write(path, MESH_HEADER, rows)


def write_gates(path: str, gates: Iterable[Sequence[float]]) -> str:
    """Where the mesh-speed weighted dissipation acted on the topography.

    Each entry is ``(t, x1, x2, axis)``.

    """
    rows = ([fmt(t), fmt(x1), fmt(x2), int(axis)]
            for t, x1, x2, axis in gates)
    return _write(path, GATES_HEADER, rows)


def write_error_report(path: str, report: ErrorReport) -> str:
    """Error and order table with the norm definitions as header comments."""
    rows = ([resolution, variable, norm, fmt(error),
             '' if order is None else fmt(order)]
            for resolution, variable, norm, error, order in report.rows())
    comments = (f'errors against: {report.label}',) + NORM_DEFINITIONS
    return _write(path, ERROR_HEADER, rows, comments)


def write_cut_line(path: str, samples: ndarray) -> str:
    """Samples along a cut line as columns s, h, v1, v2, b, and h+b."""
    rows = ([fmt(value) for value in row] for row in samples)
    return _write(path, ('s', 'h', 'v1', 'v2', 'b', 'h+b'), rows)
