"""Tests for the dfk command line."""
import json
from pathlib import Path

import pytest

from dfk import __version__
from dfk.cli import EXIT_ERROR, EXIT_OK, EXIT_VIOLATIONS, main
from dfk.fixtures import f_unit
from dfk.structure_io import load

DATA = Path(__file__).resolve().parent.parent / "data"

BROKEN_FRAME = """# dfk-format v1
frame B
tokens s t
con s : { } { s }
con t : { } { t }
ent s : { } |- t ; { s } |- t
end
"""


def sample(name: str) -> str:
    return str(DATA / name)


@pytest.fixture(autouse=True)
def no_env_timestamp(monkeypatch):
    monkeypatch.delenv("DFK_NO_TIMESTAMP", raising=False)
    monkeypatch.delenv("DFK_MAX_BOUND", raising=False)


def test_check_valid_frame(capsys):
    assert main(["--no-timestamp", "check", sample("f_unit.dfk")]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.strip() == "frame F_unit: valid; strong algebraic conservative; truth: t"


def test_check_cfspace_and_poset(capsys):
    assert main(["--no-timestamp", "check", sample("u_unit.dfk")]) == EXIT_OK
    assert main(["--no-timestamp", "check", sample("p_diamond.dfk")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "cfspace U_unit: valid; transitive topological M; M witnesses: { u }" in out
    assert "poset P_diamond: valid; pointed algebraic L-domain" in out


def test_timestamp_line(capsys):
    main(["check", sample("f_unit.dfk")])
    assert capsys.readouterr().out.startswith("Time: ")


def test_check_reports_violations(tmp_path, capsys):
    path = tmp_path / "broken.dfk"
    path.write_text(BROKEN_FRAME, encoding="utf-8")
    assert main(["--no-timestamp", "check", str(path)]) == EXIT_VIOLATIONS
    out = capsys.readouterr().out
    assert out.startswith("frame B: invalid")
    assert "  ✗ interpolation(" in out


def test_check_json(capsys):
    assert main(["--json", "--no-timestamp", "check", sample("f_unit.dfk")]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload['verb'] == "check"
    assert "time" not in payload
    entry = payload['structures'][0]
    assert entry['name'] == "F_unit"
    assert entry['valid'] is True
    assert entry['summary'] == ["strong algebraic conservative", "truth: t"]


def test_states(capsys):
    assert main(["--no-timestamp", "states", sample("f_chain2.dfk")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "STATES: 2" in out
    assert "  []_0 = { 0 }" in out
    assert "  []_1 = { 0 1 }" in out
    assert "EDGES: 1" in out
    assert "  []_0 < []_1" in out


def test_roundtrip_via_frames(capsys):
    assert main(["--no-timestamp", "roundtrip", sample("u_unit.dfk"), "--via", "frames"]) == EXIT_OK
    assert "RESULT: Υ∘Γ = Id, Γ∘Υ = Id" in capsys.readouterr().out


def test_roundtrip_via_domains(capsys):
    assert main(["--no-timestamp", "roundtrip", sample("f_unit.dfk"), "--via", "domains"]) == EXIT_OK
    assert "RESULT: S∘T = Id, T∘S = Id" in capsys.readouterr().out


def test_roundtrip_needs_a_matching_kind(capsys):
    assert main(["roundtrip", sample("p_diamond.dfk"), "--via", "cfspaces"]) == EXIT_ERROR
    assert "✗ roundtrip --via cfspaces needs a frame block" in capsys.readouterr().err


def test_apply_writes_result(tmp_path, capsys):
    output = tmp_path / "out.dfk"
    assert main(["--no-timestamp", "apply", "F", sample("p_diamond.dfk"), "-o", str(output)]) == EXIT_OK
    assert "OUTPUT: frame F_P_diamond -> " in capsys.readouterr().out
    frame = load(str(output)).get("F_P_diamond")
    assert frame.tokens == ("bot", "a", "b", "top")
    assert frame.truth == "bot"


def test_apply_C_gives_unit_frame(tmp_path):
    output = tmp_path / "c.dfk"
    assert main(["apply", "C", sample("u_unit.dfk"), "-o", str(output)]) == EXIT_OK
    frame = load(str(output)).get("C_U_unit")
    assert frame.tokens == ("<u>",)
    assert frame.consistent_sets(0) == f_unit().consistent_sets(0)


def test_apply_rejects_wrong_kind(tmp_path):
    output = tmp_path / "x.dfk"
    assert main(["apply", "F", sample("f_unit.dfk"), "-o", str(output)]) == EXIT_ERROR
    assert not output.exists()


def test_generate_to_stdout(capsys):
    assert main(["generate", "--kind", "poset", "--bounds", "elements=2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("# dfk-format v1")
    assert "poset P0003" in out
    assert "poset P0004" not in out


def test_generate_to_file(tmp_path, capsys):
    output = tmp_path / "frames.dfk"
    code = main(["--no-timestamp", "generate", "--kind", "frame", "--bounds", "tokens=1",
                 "-o", str(output)])
    assert code == EXIT_OK
    assert "COUNT: 1" in capsys.readouterr().out
    assert load(str(output)).get("F0000") == f_unit()


def test_verify_order_suite(capsys):
    assert main(["--no-timestamp", "verify", "--suite", "order", "--bounds", "elements=2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "SUITE: order" in out
    assert "COUNTEREXAMPLES: 0" in out
    assert "ELAPSED" not in out


def test_missing_file(capsys):
    assert main(["check", "does-not-exist.dfk"]) == EXIT_ERROR
    assert capsys.readouterr().err.startswith("✗ ")


def test_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.dfk"
    path.write_text("frame F\nend\n", encoding="utf-8")
    assert main(["check", str(path)]) == EXIT_ERROR
    assert "line 1" in capsys.readouterr().err


def test_order_axiom_failure_is_a_violation(tmp_path, capsys):
    path = tmp_path / "cycle.dfk"
    path.write_text("# dfk-format v1\nposet P\nelements a b\nleq a <= b\nleq b <= a\nend\n",
                    encoding="utf-8")
    assert main(["check", str(path)]) == EXIT_VIOLATIONS
    assert capsys.readouterr().out.startswith("✗ ")


def test_usage_errors():
    assert main([]) == EXIT_ERROR
    assert main(["apply", "Z", sample("f_unit.dfk"), "-o", "x"]) == EXIT_ERROR


def test_version(capsys):
    assert main(["--version"]) == EXIT_OK
    assert __version__ in capsys.readouterr().out


def test_bad_env_integer_is_a_usage_error(monkeypatch, capsys):
    monkeypatch.setenv("DFK_SEED", "abc")
    assert main(["check", sample("f_unit.dfk")]) == EXIT_ERROR
    assert "DFK_SEED" in capsys.readouterr().err
