import subprocess
import sys

import pytest

from hahnaut.cli import EXIT_INPUT, EXIT_OK, EXIT_PROPERTY, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_decompose_identity(capsys, tmp_path):
    cfg = write(tmp_path, "id.toml", 'rho = "id"\n')
    code, out, _ = run(capsys, "decompose", cfg)
    assert code == EXIT_OK
    assert out == "rho: id\ntau: [[1]]\nx.0: 1\nu.0: 1 + O(t^8)\nverdict: OK\n"


def test_decompose_round_trip_kv(capsys, tmp_path):
    cfg = write(
        tmp_path,
        "nf.toml",
        'rho = "conj"\ntau = [[1, 2], [0, 1]]\nx = ["2", "(1+1r)"]\nu = ["1 + t^[0,1]", "1 - 3*t^[0,2]"]\n',
    )
    code, out, _ = run(capsys, "--field", "qsqrt:2", "--group", "z:2", "decompose", cfg, "--format", "kv")
    assert code == EXIT_OK
    assert out.splitlines() == [
        "rho=conj",
        "tau=[[1,2],[0,1]]",
        "x.0=2",
        "x.1=(1+1r)",
        "u.0=1 + t^[0,1] + O(t^[0,8])",
        "u.1=1 - 3*t^[0,2] + O(t^[0,8])",
        "verdict=OK",
    ]


def test_decompose_not_valuation_preserving(capsys, tmp_path):
    cfg = write(tmp_path, "bad.toml", 'images = ["1 + t"]\n')
    code, _, err = run(capsys, "decompose", cfg)
    assert code == EXIT_INPUT
    assert "NotValuationPreserving" in err


def test_eval_invert_compose(capsys, tmp_path):
    cfg = write(tmp_path, "sub.toml", 'images = ["t + t^2"]\n')
    code, out, _ = run(capsys, "eval", cfg, "t^-1", "--cutoff", "3")
    assert code == EXIT_OK and out == "result: t^(-1) - 1 + t + O(t^2)\n"
    code, out, _ = run(capsys, "invert", cfg, "--cutoff", "4")
    assert "u.0: 1 - t + 2*t^2 - 5*t^3 + O(t^4)" in out
    code, out, _ = run(capsys, "compose", cfg, cfg, "--cutoff", "4")
    assert "u.0: 1 + 2*t + 2*t^2 + t^3 + O(t^4)" in out


def test_laurent_and_moebius(capsys):
    assert run(capsys, "laurent", "xs", "1+t", "1+t", "--cutoff", "4")[1] == "result: 1 + 2*t + 2*t^2 + t^3 + O(t^4)\n"
    assert run(capsys, "laurent", "inv", "1+t", "--cutoff", "5")[1] == "result: 1 - t + 2*t^2 - 5*t^3 + 14*t^4 + O(t^5)\n"
    assert run(capsys, "laurent", "apply", "1+t", "t^-1", "--cutoff", "3")[1] == "result: t^(-1) - 1 + t + O(t^2)\n"
    assert run(capsys, "moebius", "classify", "[[1,1],[0,1]]")[1] == "map: [[1,1],[0,1]]\nclass: Other\n"
    assert "class: OneAut" in run(capsys, "moebius", "compose", "[[1,0],[1,1]]", "[[1,0],[2,1]]")[1]
    assert run(capsys, "moebius", "expand", "[[1,0],[1,1]]", "--cutoff", "4")[1] == "result: t - t^2 + t^3 + O(t^4)\n"


def test_puiseux_commands(capsys, tmp_path):
    assert run(capsys, "puiseux", "pow", "1+t", "1/2", "--cutoff", "3")[1] == "result: 1 + 1/2*t - 1/8*t^2 + O(t^3)\n"
    cfg = write(tmp_path, "u.toml", 'u = ["1 + t"]\n')
    code, out, _ = run(capsys, "--group", "q:1:1", "puiseux", "apply", cfg, "t^(1/2) + O(t^2)", "--cutoff", "3")
    assert code == EXIT_OK and out == "result: t^(1/2) + 1/2*t^(3/2) + O(t^2)\n"


def test_rayner_check(capsys):
    code, out, _ = run(capsys, "rayner", "check", "--family", "puiseux", "--seed", "3", "--ceiling", "3")
    assert code == EXIT_OK and out.endswith("OK\n")
    code, out, _ = run(capsys, "rayner", "check", "--family", "puiseux", "--format", "kv")
    assert out.splitlines()[0] == "family=puiseux" and out.splitlines()[-1] == "verdict=pass"


def test_rayner_explicit_supports(capsys):
    argv = ["rayner", "check", "--family", "cardinality:3", "--samples", "0", "--format", "kv"]
    code, out, _ = run(capsys, *argv, "--support", "0, 1", "--support", "2, 3")
    assert code == EXIT_PROPERTY
    assert "R3=fail checked=1 witness={0, 1} U {2, 3} -> {0, 1, 2, 3}" in out.splitlines()
    code, out, _ = run(capsys, "rayner", "check", "--samples", "0", "--support", "1/2, 3/2+", "--format", "kv")
    assert code == EXIT_OK and out.splitlines()[-1] == "verdict=pass"
    assert run(capsys, "rayner", "check", "--support", "1/x")[0] == EXIT_USAGE


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "schilling", "--seed", "7")
    assert code == EXIT_OK and out.rstrip().endswith("OK")
    code, out, _ = run(capsys, "verify", "rayner-kappa-finite", "--format", "kv")
    assert code == EXIT_OK
    assert "expected_failure=true" in out and "verdict=pass" in out and "R3 counterexample" in out


def test_verify_deterministic(capsys):
    first = run(capsys, "verify", "printing", "--seed", "5", "--format", "kv")[1]
    second = run(capsys, "verify", "printing", "--seed", "5", "--format", "kv")[1]
    assert first == second


def test_exit_codes(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "nosuch")
    assert code == EXIT_USAGE and "UnknownSuite" in err
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == EXIT_USAGE
    cfg = write(tmp_path, "id.toml", "")
    code, _, err = run(capsys, "eval", cfg, "t^^2")
    assert code == EXIT_INPUT and "offset 2" in err
    code, _, _ = run(capsys, "decompose", str(tmp_path / "missing.toml"))
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "--cutoff", "-1", "verify", "oaut")
    assert code == EXIT_USAGE


def test_property_failure_exit_code(capsys):
    code, out, _ = run(capsys, "rayner", "check", "--family", "cardinality:2", "--samples", "30")
    assert code == EXIT_PROPERTY and out.endswith("FAILED\n")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hahnaut", "moebius", "classify", "[[2,0],[0,1]]", "--format", "kv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "map=[[1,0],[0,1/2]]\nclass=ValuationPreservingKAut\n"
