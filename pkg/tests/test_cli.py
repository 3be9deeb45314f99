import io
import json
from importlib import resources

import pytest

from gslice import cli
from gslice.fam import Morphism
from gslice.lattice import BOT, Tuple
from gslice.prims import builtinSignature

PROGRAMS = resources.files("gslice") / "programs"
QUERY = str(PROGRAMS / "query.gs")
DB = "[(inl (),0),(inr (),1),(inl (),1)]"


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out)
    return code, out.getvalue()


def test_run_lift_num():
    code, out = run("run", QUERY, "--sig", "lift-num", "--input", f"(inl (), {DB})")
    assert code == 0
    assert out.splitlines()[0] == "output: 1"


def test_run_disc_num_has_trivial_fibres():
    code, out = run("run", QUERY, "--sig", "disc-num", "--input", f"(inl (), {DB})")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "output: 1"
    assert lines[2].startswith("output fibre: ()")


def test_run_ill_typed(tmp_path, capsys):
    bad = tmp_path / "bad.gs"
    bad.write_text("program p (x : num) : num = fst x\n")
    code, _ = run("run", str(bad), "--input", "1")
    assert code == 2
    assert "expected product" in capsys.readouterr().err


def test_slice_backward_examples():
    code, out = run("slice", QUERY, "--sig", "lift-num", "--input", f"(inl (), {DB})", "--bwd", "^")
    assert code == 0 and out.strip() == "((), (((), ^), ((), _), ((), ^)))"
    _, out = run("slice", QUERY, "--input", f"(inr (), {DB})", "--bwd", "^")
    assert out.strip() == "((), (((), _), ((), ^), ((), _)))"
    _, out = run("slice", QUERY, "--input", f"(inl (), {DB})", "--bwd", "_")
    assert out.strip() == "((), (((), _), ((), _), ((), _)))"


def test_slice_forward():
    _, out = run("slice", QUERY, "--input", f"(inl (), {DB})",
                 "--fwd", "((), (((), ^), ((), _), ((), _)))")
    assert out.strip() == "_"


def test_slice_interval():
    code, out = run("slice", QUERY, "--sig", "interval-num", "--input", f"(inl (), {DB})",
                    "--bwd", "[9/10,11/10]")
    assert code == 0
    assert out.strip() == "((), (((), [-1/10,1/10]), ((), _), ((), [9/10,11/10])))"


def test_slice_cbn_prints_tags():
    code, out = run("slice", QUERY, "--cbn", "--input", f"(inl (), {DB})", "--bwd", "(^, ^)")
    assert code == 0
    assert out.splitlines()[1] == "tags: (^, (^, (^, ^), (^, _), (^, ^)))"


def test_nonconforming_tangent(capsys):
    code, _ = run("slice", QUERY, "--sig", "interval-num", "--input", f"(inl (), {DB})",
                  "--bwd", "[5,6]")
    assert code == 2
    assert "does not contain" in capsys.readouterr().err
    code, _ = run("slice", QUERY, "--input", f"(inl (), {DB})", "--bwd", "(^, ^)")
    assert code == 2
    assert "L(1)" in capsys.readouterr().err


def test_json_schema():
    code, out = run("slice", QUERY, "--sig", "interval-num", "--input", f"(inl (), {DB})",
                    "--bwd", "[9/10,11/10]", "--json")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"output", "fibre", "tangent"}
    assert data["output"] == "1"
    row1 = data["tangent"][1][0]
    assert row1 == ["()", {"interval": ["-1/10", "1/10"]}]


def test_output_is_deterministic():
    argv = ("slice", QUERY, "--cbn", "--input", f"(inl (), {DB})", "--bwd", "^")
    assert run(*argv) == run(*argv)


def test_check_passes():
    code, out = run("check", QUERY, "--sig", "lift-num",
                    "--inputs", f"(inl (), {DB}); (inr (), {DB})")
    assert code == 0
    assert out.splitlines()[-1].startswith("PASS: 2 inputs")


def test_check_inputs_file(tmp_path):
    f = tmp_path / "inputs.txt"
    f.write_text("-- one per line\n[1, 2]\n[]\n")
    code, out = run("check", str(PROGRAMS / "sum.gs"), "--inputs", str(f))
    assert code == 0 and "2 inputs" in out


def test_check_refuses_intervals_without_sampling(capsys):
    code, _ = run("check", QUERY, "--sig", "interval-num")
    assert code == 2
    assert "--sampled" in capsys.readouterr().err


def test_check_sampled_intervals(monkeypatch):
    monkeypatch.setenv("GSLICE_SEED", "7")
    code, out = run("check", QUERY, "--sig", "interval-num", "--sampled", "--samples", "40")
    assert code == 0 and "seed 7" in out
    assert run("check", QUERY, "--sig", "interval-num", "--sampled", "--samples", "40")[1] == out


def test_check_catches_corrupted_primitive(monkeypatch):
    def corrupted(name):
        sig = builtinSignature(name)
        spec = sig.ops["add"]
        good = spec.morphism
        broken = Morphism(good.apply, good.fwd, lambda x, dy: Tuple((BOT, BOT)), "add")
        sig.ops["add"] = type(spec)(spec.args, spec.result, broken, spec.plain)
        return sig

    monkeypatch.setattr(cli, "builtinSignature", corrupted)
    code, out = run("check", QUERY, "--sig", "lift-num")
    assert code == 1
    assert any(line.startswith("VIOLATION adjunction fails") for line in out.splitlines())


def test_unknown_signature(capsys):
    assert run("run", QUERY, "--sig", "nope")[0] == 2


@pytest.mark.parametrize("argv", [["slice", QUERY], ["frobnicate"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as err:
        cli.main(argv, io.StringIO())
    assert err.value.code == 2
