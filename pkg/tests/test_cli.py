import pytest

from swemesh import cli
from swemesh.cli import build_parser, configure, main
from swemesh.exceptions import PositivityError, MeshTanglingError


def test_list_problems(capsys):
    assert main(['--list-problems']) == 0
    out = capsys.readouterr().out
    assert 'lake_at_rest_1d' in out
    assert 'dam_break_bump' in out


@pytest.mark.parametrize('argv', [[],
                                  ['--problem', 'tsunami'],
                                  ['--problem', 'lake_at_rest_1d',
                                   '--resolution', '5']])
def test_configuration_errors(argv, tmp_path):
    assert main(argv + ['--output', str(tmp_path), '-q']) == 4


def test_missing_config_file(tmp_path):
    assert main(['--config', str(tmp_path / 'none.yaml'), '-q']) == 4


def test_flags_override_problem_defaults():
    args = build_parser().parse_args(
        ['--problem', 'lake_at_rest_2d', '--scheme', 'ec', '--mesh',
         'static', '--resolution', '20', '30', '--order', '2',
         '--end-time', '0.05', '--no-ring-dissipation'])
    config = configure(args)
    assert config.kind == 'ec'
    assert not config.moving
    assert config.resolution == (20, 30)
    assert config.order.p == 2
    assert config.end == 0.05
    assert config.outputs == ()
    assert not config.ring_dissipation


def test_small_run(tmp_path):
    argv = ['--problem', 'lake_at_rest_1d', '--resolution', '20',
            '--end-time', '0.004', '--mesh', 'static',
            '--output', str(tmp_path), '--no-progress', '-q']
    assert main(argv) == 0
    assert (tmp_path / 'config.yaml').exists()
    assert (tmp_path / 'energy.csv').exists()


def test_run_from_config_file(tmp_path):
    path = tmp_path / 'run.yaml'
    path.write_text('problem:\n  name: lake_at_rest_1d\n  resolution: 20\n'
                    'time:\n  end: 0.002\n  outputs: []\n')
    out = tmp_path / 'out'
    assert main(['--config', str(path), '--output', str(out),
                 '--no-progress', '-q']) == 0
    assert (out / 'errors.csv').exists()


def test_convergence_table(capsys):
    argv = ['--problem', 'manufactured', '--resolution', '16',
            '--end-time', '0.01', '--mesh', 'static', '--convergence', '2',
            '--no-progress', '-q']
    assert main(argv) == 0
    out = capsys.readouterr().out
    assert 'resolution' in out
    assert '32' in out


def test_positivity_violation_exit_code(monkeypatch, tmp_path):
    def fail(*args, **kwargs):
        raise PositivityError('dry', node=(3, 0), value=-0.1, time=0.25)

    monkeypatch.setattr(cli, 'run', fail)
    assert main(['--problem', 'lake_at_rest_1d', '-q']) == 2


def test_mesh_tangling_exit_code(monkeypatch):
    def fail(*args, **kwargs):
        raise MeshTanglingError('folded', node=(1, 2), value=0.0)

    monkeypatch.setattr(cli, 'run', fail)
    assert main(['--problem', 'lake_at_rest_1d', '-q']) == 3
