import json

import pytest

import config

from main import build_parser, dispatch, main


def run(*argv):
    return dispatch(list(argv))


def test_genus_text():
    assert run('genus', '--q', '5', '--modulus', '0^1,1^1') == ('3', 0)
    assert run('genus', '--q', '3', '--modulus', 'T^3') == ('10', 0)


def test_genus_json():
    document, code = run('genus', '--q', '3', '--modulus', '0^2', '--format', 'json')
    assert code == 0
    assert json.loads(document) == {"q": 3, "modulus": "0^2", "genus": 1, "degree": 6, "different_degree": 12}


def test_basis_json():
    document, code = run('basis', '--q', '3', '--modulus', 'T^2')
    assert code == 0
    payload = json.loads(document)
    assert payload["genus"] == 1
    assert payload["anchor"] == 0
    assert payload["basis"] == [{"mu0": 0, "mu": [[1, 1, 3], [1, 2, 0]], "val_finite": [0], "inf_bound": 0}]


def test_basis_csv():
    document, code = run('basis', '--q', '5', '--modulus', '0,1', '--format', 'csv')
    assert code == 0
    assert document.splitlines() == [
        'mu0,mu,val_finite,inf_bound',
        '0,2;3,1;0,0',
        '0,3;2,0;1,0',
        '0,3;3,0;0,1',
    ]


def test_count_and_generators():
    assert run('count', '--q', '3', '--modulus', '0^3') == ('10', 0)
    document, code = run('generators', '--q', '3', '--modulus', '0^2')
    assert code == 0
    assert json.loads(document)["generators"] == [{"mu": [[1, 1, 3], [1, 2, 0]]}]


def test_rep_single_unit():
    document, code = run('rep', '--q', '3', '--modulus', '0^2', '--unit', '2')
    assert code == 0
    assert json.loads(document) == {"unit": "2", "matrix": [[2]], "basis_ref": [[0, [[1, 1, 3], [1, 2, 0]]]]}


def test_rep_table():
    document, code = run('rep', '--q', '5', '--modulus', '0,1')
    assert code == 0
    payload = json.loads(document)
    assert len(payload["representations"]) == 16
    assert payload["representations"][0] == {"unit": "1", "matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}


def test_gaps_csv():
    document, code = run('gaps', '--q', '4', '--modulus', '0^2')
    assert code == 0
    assert document == 'modulus,anchor,genus,orders,gaps,caveat\n0^2,0,3,0;1;4,1;2;5,false'


def test_gaps_text_with_caveat():
    document, code = run('gaps', '--q', '3', '--modulus', '0^2,1', '--format', 'text')
    assert code == 0
    assert 'Orders: 0;0;1;3' in document
    assert 'not claimed to be an order sequence' in document


def test_output_is_deterministic():
    argv = ('basis', '--q', '3', '--modulus', '0^2,1', '--at', '1')
    assert run(*argv) == run(*argv)


@pytest.mark.parametrize('argv, code', [
    (('genus', '--q', '3', '--modulus', 'T^2+1'), 2),
    (('genus', '--q', '6', '--modulus', '0'), 2),
    (('genus', '--q', '17', '--modulus', '0'), 2),
    (('basis', '--q', '3', '--modulus', '0^2', '--at', '1'), 2),
    (('rep', '--q', '3', '--modulus', '0^2', '--unit', 'T'), 2),
    (('basis', '--q', '3', '--modulus', '0^3', '--max-genus', '5'), 3),
    (('rep', '--q', '3', '--modulus', '0^3', '--max-units', '10'), 3),
])
def test_error_exit_codes(argv, code):
    document, exit_code = run(*argv)
    assert exit_code == code
    assert document.startswith('❌')


def test_parser_rejects_bad_usage():
    assert run('genus', '--q', '3')[1] == 2
    assert run('genus', '--q', '3', '--modulus', '0', '--format', 'xml')[1] == 2
    assert run('frobnicate')[1] == 2


def test_parser_knows_every_command():
    parser = build_parser()
    args = parser.parse_args(['verify', '--q', '2', '--max-deg', '2'])
    assert (args.command, args.q, args.max_deg) == ('verify', 2, 2)


def test_main_writes_errors_to_stderr(capsys):
    with pytest.raises(SystemExit) as exc:
        main(['genus', '--q', '3', '--modulus', 'T^2+1'])
    assert exc.value.code == 2
    out, err = capsys.readouterr()
    assert out == ''
    assert 'NonSplitModulus' in err


def test_main_writes_documents_to_stdout(capsys):
    with pytest.raises(SystemExit) as exc:
        main(['count', '--q', '5', '--modulus', '0,1'])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == '3'


def test_verify_passes_on_small_moduli():
    document, code = run('verify', '--q', '3', '--max-deg', '3')
    payload = json.loads(document)
    assert code == 0, [s for s in payload["suites"] if s["status"] == 'fail']
    assert payload["passed"]
    assert payload["counts"]["fail"] == 0
    assert payload["counts"]["pass"] > 0


def test_malformed_environment_value_is_recorded(monkeypatch):
    monkeypatch.setattr(config, 'ENV_ERRORS', [])
    monkeypatch.setenv('CFD_MAX_GENUS', 'lots')
    assert config._int_env('CFD_MAX_GENUS', 512) == 512
    assert config.ENV_ERRORS == ["CFD_MAX_GENUS='lots' is not an integer"]


def test_malformed_environment_exits_with_input_error(monkeypatch):
    monkeypatch.setattr(config, 'ENV_ERRORS', ["CFD_MAX_Q='x' is not an integer"])
    document, code = run('genus', '--q', '3', '--modulus', '0')
    assert code == 2
    assert 'InvalidInput' in document
    assert 'CFD_MAX_Q' in document


def test_verify_honours_size_limits():
    document, code = run('verify', '--q', '3', '--max-deg', '3', '--max-genus', '0')
    payload = json.loads(document)
    assert code == 4
    failures = [s for s in payload["suites"] if s["status"] == 'fail']
    assert failures
    assert all('exceeds the limit of 0' in s["detail"] for s in failures)

    document, code = run('verify', '--q', '3', '--max-deg', '2', '--max-units', '1')
    failures = [s for s in json.loads(document)["suites"] if s["status"] == 'fail']
    assert code == 4
    assert any(s["suite"] == 'sigma' for s in failures)
