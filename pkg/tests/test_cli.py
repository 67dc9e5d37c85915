import json

import pytest

from ellimod import cli
from ellimod.errors import ConsistencyError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_describe_json(capsys):
    code, out, _ = run(capsys, "describe", "--group", "GL(2)", "--degree", "1", "--space", "higgs",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["lattice_rank"] == 1 and doc["w_c_order"] == 1


def test_describe_table(capsys):
    code, out, _ = run(capsys, "describe", "-g", "GL(6)", "-d", "2")
    assert code == 0 and "A2xA2" in out and "|W_c|" in out


def test_stable_exists(capsys):
    assert run(capsys, "stable-exists", "--group", "GL(4)", "--degree", "2")[:2] == (0, "no\n")
    assert run(capsys, "stable-exists", "--group", "GL(4)", "--degree", "1")[:2] == (0, "yes\n")


def test_cpair(capsys):
    code, out, _ = run(capsys, "cpair", "--su", "3", "--k", "1")
    doc = json.loads(out)
    assert code == 0 and doc["commutator_residual"] < 1e-12 and doc["commutant_dimension"] == 1


def test_cpair_from_group(capsys):
    code, out, _ = run(capsys, "cpair", "--group", "GL(4)", "--degree", "2")
    assert code == 0 and json.loads(out)["blocks"] == [2, 2]


def test_hitchin_byte_stable(capsys):
    argv = ("hitchin", "--group", "SL(2)", "--point", "0", "--point", "1/2+i")
    a, b = run(capsys, *argv)[1], run(capsys, *argv)[1]
    assert a == b
    doc = json.loads(a)
    assert doc["hitchin"]["fibres"][0]["fixed_points"][0]["count"] == 4


@pytest.mark.parametrize("argv", [
    ("bogus",), ("describe",), ("describe", "--group", "GL(2)", "--format", "xml"),
    ("describe", "--group", "XX(2)"), ("describe", "--group", "GL(2)", "--degree", "1/2"),
    ("describe", "--group", "SL(2)", "--degree", "1"), ("cpair",), ("cpair", "--su", "4", "--k", "2"),
    ("hitchin", "--group", "GL(3)", "--point", "1,2"), ("describe", "--group", "GL(2)", "--space", "moon"),
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_consistency_exit_3(capsys, monkeypatch):
    def boom(*_):
        raise ConsistencyError("methods disagree")

    monkeypatch.setattr(cli, "stable_exists", boom)
    code, _, err = run(capsys, "stable-exists", "--group", "GL(2)", "--degree", "1")
    assert code == 3 and "methods disagree" in err
