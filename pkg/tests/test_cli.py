import json

import pytest

from hochkit.cli import load_algebra, run
from hochkit.errors import ParseError
from hochkit.specfiles import parse_algebra_file, parse_module_file


Z2_ALGEBRA_TEXT = """
# the group algebra of Z/2, by hand
dim = 2
field_order = 2
label 0 = e
label 1 = s
unit = [1, 0]
mult 0 0 = [0:1]
mult 0 1 = [1:1]
mult 1 0 = [1:1]
mult 1 1 = [0:1]
frobenius = [1, 0]
"""

SIGN_MODULE_TEXT = """
algebra = zn:2
dim = 1
action 0 = [[1]]
action 1 = [[-1]]
"""


def test_parse_algebra_file():
    a = parse_algebra_file(Z2_ALGEBRA_TEXT)
    assert a.dim == 2 and a.field_order == 2
    assert a.labels == ("e", "s")
    assert a.serre is not None


def test_parse_algebra_file_rejects_bad_scalar():
    with pytest.raises(ParseError) as exc:
        parse_algebra_file(Z2_ALGEBRA_TEXT.replace("[0:1]", "[0:z3^]", 1))
    assert exc.value.line >= 1


def test_parse_module_file():
    m = parse_module_file(SIGN_MODULE_TEXT, load_algebra)
    assert m.dim == 1
    from hochkit.modules import hom_space, simples_of
    sign = simples_of(load_algebra("zn:2"))[1]
    assert hom_space(sign, m).dim == 1


def test_parse_module_file_rejects_non_module():
    bad = SIGN_MODULE_TEXT.replace("[[-1]]", "[[2]]")
    from hochkit.errors import ModuleDefect
    with pytest.raises(ModuleDefect):
        parse_module_file(bad, load_algebra)


def test_load_algebra_from_file(tmp_path):
    path = tmp_path / "z2.alg"
    path.write_text(Z2_ALGEBRA_TEXT)
    a = load_algebra(str(path))
    assert a.dim == 2


def test_load_algebra_fixture_dir_override(tmp_path, monkeypatch):
    (tmp_path / "mything.alg").write_text(Z2_ALGEBRA_TEXT)
    monkeypatch.setenv("HOCHKIT_FIXTURES", str(tmp_path))
    a = load_algebra("mything")
    assert a.dim == 2 and a.provenance[0] == "custom"


def test_load_algebra_non_associative_file(tmp_path):
    bad = """
dim = 3
unit = [1, 0, 0]
mult 0 0 = [0:1]
mult 0 1 = [1:1]
mult 0 2 = [2:1]
mult 1 0 = [1:1]
mult 2 0 = [2:1]
mult 1 1 = [2:1]
mult 1 2 = [0:1]
mult 2 1 = [1:1]
mult 2 2 = [1:1]
"""
    path = tmp_path / "bad.alg"
    path.write_text(bad)
    from hochkit.errors import NotAssociative
    with pytest.raises(NotAssociative):
        load_algebra(str(path))


def test_cli_hh_command(capsys):
    code = run(["hh", "dual", "--max-degree", "4"])
    out = capsys.readouterr().out
    assert code == 0
    assert "degree 4: 1" in out and "degree 0: 2" in out


def test_cli_hh_degree_guard(capsys):
    code = run(["hh", "dual", "--max-degree", "9999"])
    err = capsys.readouterr().err
    assert code == 2
    assert "cap" in err or "guard" in err


def test_cli_verify_hrr_exit_code(capsys):
    code = run(["verify", "hrr", "s3"])
    out = capsys.readouterr().out
    assert code == 0
    assert "9 passed, 0 failed" in out


def test_cli_chern_documents_idempotent_scale(capsys):
    code = run(["chern", "s3", "std"])
    out = capsys.readouterr().out
    assert code == 0
    assert "ch(std) = [1/3, 0, -1/6, 0, 0, -1/6]" in out
    assert "idempotent normalization" in out
    assert "dim(M) * ch = [2/3, 0, -1/3, 0, 0, -1/3]" in out


def test_cli_pairing(capsys):
    code = run(["pairing", "zn:2", "[1/2,1/2]", "[1/2,-1/2]"])
    out = capsys.readouterr().out
    assert code == 0
    assert "= 0" in out


def test_cli_pairing_rejects_non_central(capsys):
    code = run(["pairing", "s3", "[0,1,0,0,0,0]", "[0,1,0,0,0,0]"])
    assert code == 2  # a transposition is not central in C[S3]


def test_cli_tqft(capsys):
    code = run(["tqft", "s3", "--genus", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "invariant dimension: 3" in out


def test_cli_tqft_genus2_reports_oracle(capsys):
    code = run(["tqft", "zn:2", "--genus", "2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "invariant dimension: 4" in out
    assert "oracle" in out and "8" in out


def test_cli_machine_format_deterministic(capsys):
    code = run(["verify", "hrr", "zn:3", "--format", "machine", "--seed", "5"])
    first = capsys.readouterr().out
    assert code == 0
    doc = json.loads(first)
    assert doc["schema"] == 1 and doc["seed"] == 5
    assert doc["summary"]["fail"] == 0
    code = run(["verify", "hrr", "zn:3", "--format", "machine", "--seed", "5"])
    second = capsys.readouterr().out
    assert first == second


def test_cli_validate_fixture(capsys):
    assert run(["validate", "q8"]) == 0
    out = capsys.readouterr().out
    assert "ok" in out


def test_cli_unknown_fixture(capsys):
    assert run(["validate", "nonsense:9"]) == 2


def test_cli_pushforward_regular(capsys):
    code = run(["pushforward", "regular:zn:2", "[1/2,1/2]"])
    out = capsys.readouterr().out
    assert code == 0
    assert "[1/2, 1/2]" in out
    assert "route A and route B agreed" in out


def test_cli_center(capsys):
    code = run(["center", "s3"])
    out = capsys.readouterr().out
    assert code == 0
    assert "center dimension: 3" in out


def test_cli_iota_default_is_chern(capsys):
    code = run(["iota", "s3", "std"])
    out = capsys.readouterr().out
    assert code == 0
    assert "iota of the identity is the chern class" in out
    assert "pass" in out


def test_cli_iota_with_endo(capsys):
    code = run(["iota", "s3", "std", "--endo", "[[2,0],[0,2]]"])
    out = capsys.readouterr().out
    assert code == 0
    # iota of twice the identity is twice the chern class
    assert "[2/3, 0, -1/3, 0, 0, -1/3]" in out


def test_cli_pushforward_morita(capsys):
    code = run(["pushforward", "morita:zn:2:2", "[1/2,-1/2]"])
    out = capsys.readouterr().out
    assert code == 0
    assert "route A and route B agreed" in out


def test_cli_verify_cardy_fixture_filter(capsys):
    code = run(["verify", "cardy", "zn:3", "--seed", "2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "0 failed" in out
