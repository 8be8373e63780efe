import csv
import io
import json
import logging

import pytest

from gtdih import common
from gtdih.common import LogFileHandler
from gtdih.free_word import X, Z, format_word
from gtdih.control import Controller, CommandConfig, main, EXIT_OK, EXIT_FAILED, EXIT_USAGE


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    assert code == EXIT_OK
    return json.loads(out)


def test_enumerate_check(capsys):
    report = run_json(capsys, 'enumerate', '--n', '4', '--check')
    assert report['count'] == 4
    assert report['brute_equals_closed'] is True
    assert [(s['m'], s['k']) for s in report['shadows']] == [(0, 0), (1, 1), (2, 1), (3, 0)]


def test_enumerate_csv(capsys):
    code, out = run_cli(capsys, 'enumerate', '--n', '6', '--format', 'csv')
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ['n', 'm', 'k', 'u', 'word']
    assert len(rows) == 13


def test_output_sorted_keys(capsys):
    code, out = run_cli(capsys, 'structure', '--n', '6')
    assert code == EXIT_OK
    assert out.strip() == json.dumps(json.loads(out), sort_keys=True)
    assert json.loads(out)['order'] == 12


def test_compose_invert_order(capsys):
    report = run_json(capsys, 'compose', '--n', '4', '--a', '1,1', '--b', '1,1')
    assert (report['m'], report['k']) == (0, 0)

    report = run_json(capsys, 'invert', '--n', '6', '--a', '2,1')
    assert (report['m'], report['k']) == (2, 1)

    report = run_json(capsys, 'order', '--n', '4', '--a', '3,0')
    assert report['order'] == 2
    assert report['rho'] == {'k': 0, 'u': 7}


def test_table(capsys):
    code, out = run_cli(capsys, 'table', '--n', '4', '--format', 'csv')
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ['', '0.0', '1.1', '2.1', '3.0']
    assert rows[1] == ['0.0', '0.0', '1.1', '2.1', '3.0']

    report = run_json(capsys, 'table', '--n', '4')
    assert report['table'][0] == [0, 1, 2, 3]


def test_reduce_and_fibers(capsys):
    report = run_json(capsys, 'reduce', '--q', '8', '--n', '4', '--a', '5,3')
    assert (report['target']['m'], report['target']['k']) == (1, 1)

    report = run_json(capsys, 'fibers', '--q', '12', '--n', '4')
    assert report['uniform'] is True
    assert {f['size'] for f in report['fibers']} == {6}
    assert len(report['fibers']) == 4


def test_ls_witness(capsys):
    report = run_json(capsys, 'ls-witness', '--n', '6', '--a', '2,1')
    assert report['h'] == format_word(X*Z**-4)
    assert report['case'] == 'xy-coset'
    assert report['verified'] is True

    report = run_json(capsys, 'ls-witness', '--n', '6', '--m', '0', '--k', '0')
    assert report['g'] == '1'


def test_index_bound(capsys):
    assert run_json(capsys, 'index', '--n', '3')['index'] == 108
    report = run_json(capsys, 'bound', '--n', '8')
    assert report['lower_bound'] == 16
    assert report['order'] == 16


def test_profinite_and_tower(capsys):
    report = run_json(capsys, 'profinite', '--alpha', '3')
    assert report['closure_size'] == 16
    assert report['membership_count'] == 16
    assert report['kernel_equals_membership'] is True

    report = run_json(capsys, 'tower', '--alpha', '4', '--a', '1,5')
    assert report['valid'] is True
    assert report['first_failure'] is None
    assert report['levels'][0] == {'alpha': 2, 'k': 1, 'u': 5}


def test_verify_all(capsys):
    report = run_json(capsys, 'verify-all', '--n', '6')
    assert report['ok'] is True
    assert report['checks']['profinite'] == 'skipped'


def test_usage_errors(capsys):
    assert run_cli(capsys, 'compose', '--n', '6', '--a', '1,0', '--b', '0,0')[0] == EXIT_USAGE
    assert run_cli(capsys, 'enumerate')[0] == EXIT_USAGE
    assert run_cli(capsys, 'compose', '--n', '4', '--a', '1,1', '--b', '1,1',
                   '--format', 'csv')[0] == EXIT_USAGE
    assert run_cli(capsys, 'reduce', '--q', '4', '--n', '8', '--a', '0,0')[0] == EXIT_USAGE
    assert run_cli(capsys, 'profinite', '--alpha', '1')[0] == EXIT_USAGE
    assert run_cli(capsys, 'tower', '--alpha', '3', '--a', '1,4')[0] == EXIT_USAGE
    assert run_cli(capsys, 'structure', '--n', '2')[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as excinfo:
        main(['frobnicate'])
    assert excinfo.value.code == 2


def test_bound_precedence(capsys, monkeypatch, tmp_path):
    assert run_cli(capsys, 'enumerate', '--n', '30')[0] == EXIT_USAGE
    assert run_cli(capsys, 'enumerate', '--n', '30', '--bound', '40')[0] == EXIT_OK

    monkeypatch.setenv(common.BOUND_ENV_VAR, '10')
    assert run_cli(capsys, 'enumerate', '--n', '12')[0] == EXIT_USAGE

    config = tmp_path / 'gtdih.yaml'
    config.write_text("enumeration:\n    bound: 16\nprofinite:\nverification:\noutput:\n")
    assert run_cli(capsys, 'enumerate', '--n', '12', '--config', str(config))[0] == EXIT_OK
    assert run_cli(capsys, 'enumerate', '--n', '20', '--config', str(config))[0] == EXIT_USAGE


def test_bad_config(capsys, tmp_path):
    config = tmp_path / 'gtdih.yaml'
    config.write_text("enumeration:\n    bound: 16\n")
    assert run_cli(capsys, 'structure', '--n', '6', '--config', str(config))[0] == EXIT_USAGE
    with pytest.raises(RuntimeError):
        Controller(config_file=str(config))


def test_controller_run():
    controller = Controller(bound=12)
    code, report = controller.run(CommandConfig(command='structure', n=24))
    assert code == EXIT_OK
    assert json.loads(report)['factors'] == ['Aff(Z/3)', 'Htilde(3)']

    code, report = controller.run(CommandConfig(command='verify-all', n=24))
    assert code == EXIT_USAGE


def test_failed_check_exit(monkeypatch):
    from gtdih import verify
    monkeypatch.setattr(verify, 'CHECKS', [('never', lambda n, st: False, lambda n, st: True)])
    code, report = Controller().run(CommandConfig(command='verify-all', n=4))
    assert code == EXIT_FAILED
    assert json.loads(report)['checks'] == {'never': 'fail'}


def test_logfile(capsys, tmp_path):
    logfile = tmp_path / 'gtdih.log'
    root = logging.getLogger()
    try:
        assert run_cli(capsys, 'enumerate', '--n', '4', '--logfile', str(logfile))[0] == EXIT_OK
        assert any(isinstance(h, LogFileHandler) for h in root.handlers)
    finally:
        for handler in [h for h in root.handlers if isinstance(h, LogFileHandler)]:
            root.removeHandler(handler)
            handler.close()
    assert logfile.exists()
