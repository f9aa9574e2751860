import json
import subprocess
import sys

import pytest

from thetaderiv.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_orbit_integer(capsys):
    code, out, _ = run(capsys, "orbit", "13")
    assert code == 0
    assert out.count("[periodic, size 3]") == 4


def test_orbit_fraction_json(capsys):
    code, out, _ = run(capsys, "orbit", "1/15", "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert d["orbits"][0]["elements"] == ["1/15", "1/5", "3/5", "4/5", "2/5"]
    assert d["orbits"][0]["kind"] == "merges-into-periodic"


def test_orbit_multiple_of_three_lists_each_start(capsys):
    code, out, _ = run(capsys, "orbit", "6")
    assert code == 0 and len(out.splitlines()) == 5


def test_partition_bad_input(capsys):
    code, _, err = run(capsys, "partition", "9")
    assert code == 3 and "divisible by 3" in err


def test_chain(capsys):
    code, out, _ = run(capsys, "chain", "1/5", "1/6")
    assert code == 0
    assert "preperiod 1, period 4, periodic-core" in out


def test_derive_text(capsys):
    code, out, _ = run(capsys, "derive", "0", "1/4", "--jacobi")
    assert code == 0
    assert out.startswith("theta'[0;1/4] = ")
    assert "# max residual" in out


def test_derive_json_is_loadable(capsys):
    from thetaderiv.expression import from_dict
    code, out, _ = run(capsys, "derive", "1/5", "2/5", "--format", "json", "--tau", "0+2i")
    d = json.loads(out)
    assert code == 0 and d["certification"]["passed"]
    assert from_dict(d).target.bracket() == "[1/5;2/5]"


def test_derive_latex(capsys):
    code, out, _ = run(capsys, "derive", "1/3", "0", "--format", "latex")
    assert code == 0 and out.startswith(r"\theta'")


def test_derive_degenerate(capsys):
    code, _, err = run(capsys, "derive", "1/6", "1/6")
    assert code == 2 and "[1/2;1/2]" in err


def test_derive_period_cap(capsys):
    code, _, err = run(capsys, "derive", "1/61", "0", "--max-period", "8")
    assert code == 4


def test_impossible_tolerance_fails_verification(capsys):
    code, _, _ = run(capsys, "derive", "1/5", "2/5", "--tol", "1e-30")
    assert code == 1


@pytest.mark.parametrize("argv", [["derive", "0.5", "1"], ["derive", "1/2", "x"],
                                  ["verify", "1/5", "2/5", "--tau", "0-1i"], ["orbit", "-4"]])
def test_bad_input_exits_3(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3 and err.startswith("error:")


def test_argparse_errors_exit_3():
    with pytest.raises(SystemExit) as info:
        main(["bogus"])
    assert info.value.code == 3


def test_verify_singular(capsys):
    code, out, _ = run(capsys, "verify", "1/2", "1/2", "--tau", "0+1i")
    assert code == 0
    assert "degenerate-trivial" in out


def test_verify_degenerate_target_still_checks_identity(capsys):
    code, out, _ = run(capsys, "verify", "1/6", "1/6", "--format", "json")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0
    assert {x["identity"] for x in lines} == {"fundamental", "expression"}


def test_suite_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("THETA_DERIV_SEED", "7")
    code, out, err = run(capsys, "suite", "--samples", "5", "--verbose")
    assert code == 0
    assert "seed=7" in err
    assert out.strip().endswith("0 failed")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "thetaderiv", "orbit", "5"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1/5, 3/5, 4/5, 2/5  [periodic, size 4]"
