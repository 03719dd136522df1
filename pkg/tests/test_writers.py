import csv
import pytest
from numpy import zeros, random

from swemesh.grid import ComputationalGrid, MeshCoordinates
from swemesh.report import ErrorReport, EnergyHistory, NORMS, VARIABLES
from swemesh.writers import (SOLUTION_HEADER, MESH_HEADER, fmt,
                             write_solution, write_energy, write_mesh,
                             write_gates, write_error_report, write_cut_line)


def read(path):
    with open(path, encoding='utf-8') as stream:
        lines = stream.read().splitlines()
    comments = [line for line in lines if line.startswith('#')]
    rows = list(csv.reader(line for line in lines if not line.startswith('#')))
    return comments, rows[0], rows[1:]


@pytest.fixture
def coords():
    grid = ComputationalGrid((3, 2), (0.0, 0.0), (1.0, 1.0),
                             ('outflow', 'outflow'))
    return MeshCoordinates.uniform(grid)


def test_fmt_is_exact():
    for value in (0.1, 1.0 / 3.0, -2.5e-17, 12345.678901234567):
        assert float(fmt(value)) == value


def test_solution_reads_back_exactly(coords, tmp_path):
    states = random.RandomState(3).uniform(0.5, 2.0, (4, 3, 2))
    path = write_solution(tmp_path / 'solution.csv', states, coords)
    _, header, rows = read(path)
    assert tuple(header) == SOLUTION_HEADER
    assert len(rows) == 6
    h, hv1, b = states[0, 1, 0], states[1, 1, 0], states[3, 1, 0]
    row = [float(value) for value in rows[2]]
    assert row[0] == coords.x1[1, 0]
    assert row[2] == h
    assert row[3] == hv1 / h
    assert row[5] == b
    assert row[6] == h + b


def test_mesh_rows(coords, tmp_path):
    _, header, rows = read(write_mesh(tmp_path / 'mesh.csv', coords))
    assert tuple(header) == MESH_HEADER
    assert [row[:2] for row in rows] == [['0', '0'], ['0', '1'], ['1', '0'],
                                         ['1', '1'], ['2', '0'], ['2', '1']]
    assert float(rows[-1][2]) == coords.x1[2, 1]


def test_energy_and_gates(tmp_path):
    history = EnergyHistory()
    history.append(0.0, 1.25)
    history.append(0.5, 1.0 / 3.0)
    _, header, rows = read(write_energy(tmp_path / 'energy.csv', history))
    assert header == ['t', 'E']
    assert float(rows[1][1]) == 1.0 / 3.0
    gates = [(0.1, 0.25, 0.5, 1.0), (0.2, 0.75, 0.0, 0)]
    _, header, rows = read(write_gates(tmp_path / 'gates.csv', gates))
    assert header == ['t', 'x1', 'x2', 'axis']
    assert [row[3] for row in rows] == ['1', '0']


def test_error_report_has_norm_definitions(tmp_path):
    report = ErrorReport('abc123')
    grid = ComputationalGrid((20,), (0.0,), (1.0,), ('periodic',))
    report.add(grid, {v: {n: 0.5 for n in NORMS} for v in VARIABLES})
    comments, header, rows = read(write_error_report(tmp_path / 'e.csv',
                                                     report))
    assert comments[0] == '# errors against: abc123'
    assert any('l2' in comment for comment in comments)
    assert header == ['resolution', 'variable', 'norm', 'error', 'order']
    assert rows[0] == ['20', 'h', 'l1', '0.5', '']


def test_cut_line(tmp_path):
    samples = zeros((2, 6))
    samples[1] = [1.0, 2.0, 0.5, 0.0, 0.25, 2.25]
    _, header, rows = read(write_cut_line(tmp_path / 'cut.csv', samples))
    assert header == ['s', 'h', 'v1', 'v2', 'b', 'h+b']
    assert [float(value) for value in rows[1]] == list(samples[1])
