import json
import subprocess
import sys

import pytest

from polyspecies import cli
from polyspecies.tables import POLYGONAL_2TREES


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ptrees_csv(capsys):
    code, out, err = run(capsys, "ptrees", "--max-n", "10", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,labeled,unlabeled"
    assert len(lines) == 12
    for line in lines[4:]:
        n, lab, unl = map(int, line.split(","))
        assert (lab, unl) == POLYGONAL_2TREES[n]
    assert "n <= 2" in err


def test_json_schema_keeps_big_integers(capsys):
    code, out, _ = run(capsys, "ptrees", "--max-n", "26", "--format", "json", "--which", "labeled")
    data = json.loads(out)
    assert code == 0 and data["family"] == "polygonal"
    last = data["rows"][-1]
    assert last == {"n": 26, "labeled": "2399897780180354666071878804962398006738525"}


def test_table_has_note(capsys):
    code, out, _ = run(capsys, "ptrees", "--max-n", "4")
    assert code == 0
    assert out.splitlines()[0] == "polygonal"
    assert "note:" in out


def test_kgonal_oracle_compare(capsys):
    code, out, err = run(capsys, "kgonal", "--k", "4", "--max-n", "8", "--oracle-compare")
    assert code == 0
    assert "all rows agree" in err
    assert out.count(" ok") == 6


def test_oracle_mismatch_exit_code(capsys):
    code, out, err = run(capsys, "succulents", "--max-n", "7", "--oracle-compare", "--polygon-action", "cyclic")
    assert code == 2
    assert "MISMATCH oracle=119346,52" in out


def test_succulents_default(capsys):
    code, out, _ = run(capsys, "succulents", "--max-n", "7", "--format", "csv")
    assert code == 0
    assert out.splitlines()[-1] == "7,119346,52"


@pytest.mark.parametrize("argv", [
    ["kgonal", "--max-n", "5"],
    ["kgonal", "--k", "2"],
    ["ptrees", "--max-n", "-1"],
    ["ptrees", "--k", "3"],
    ["ptrees", "--format", "xml"],
    ["ptrees", "--bogus"],
    ["solve", "no-such-system"],
    ["solve", "kgonal", "--param", "k"],
    ["oracle", "kgonal"],
    ["oracle", "polygonal", "--max-n", "12"],
    [],
])
def test_usage_errors(capsys, argv):
    code = None
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 1


def test_integrity_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.species"
    bad.write_text("A = 1/3 * L[2](X)")
    code, _, err = run(capsys, "solve", str(bad), "--max-n", "3")
    assert code == 2 and "integrity" in err


def test_solve_file_and_shipped(capsys, tmp_path):
    f = tmp_path / "trees.species"
    f.write_text("T = X * E(T)\n")
    code, out, _ = run(capsys, "solve", str(f), "--max-n", "6", "--format", "csv")
    assert code == 0
    assert out.splitlines()[-1] == "6,7776,20"
    code, out, _ = run(capsys, "solve", "kgonal", "--param", "k=3", "--max-n", "7", "--format", "csv")
    assert code == 0 and out.splitlines()[-1] == "7,27951,12"


def test_solve_syntax_error(capsys, tmp_path):
    f = tmp_path / "broken.species"
    f.write_text("A = (X\n")
    code, _, err = run(capsys, "solve", str(f))
    assert code == 1 and "line 2, column 1" in err


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", "kgonal", "--k", "3", "--max-n", "6", "--format", "csv")
    assert code == 0
    assert out.splitlines()[-1] == "6,1215,5"


def test_output_file(capsys, tmp_path):
    target = tmp_path / "t.csv"
    code, out, _ = run(capsys, "ptrees", "--max-n", "5", "--format", "csv", "--output", str(target))
    assert code == 0 and out == ""
    assert target.read_text().splitlines()[-1] == "5,142,4"


def test_output_is_deterministic(capsys):
    first = run(capsys, "succulents", "--max-n", "9", "--format", "json")
    second = run(capsys, "succulents", "--max-n", "9", "--format", "json")
    assert first == second


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--quick")
    lines = out.splitlines()
    assert len(lines) == 10
    assert all(line.startswith(("PASS", "FAIL")) for line in lines)
    # the two reference tables disagree with the computed unlabeled columns
    assert [line.split()[0] for line in lines].count("FAIL") == 2
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "polyspecies", "ptrees", "--max-n", "3", "--format", "csv"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "3,1,1"


def test_run_config_directly(capsys):
    code = cli.run(cli.RunConfig("kgonal", max_n=6, k=3, format="csv"))
    assert code == 0
    assert capsys.readouterr().out.splitlines()[-1] == "6,1215,5"
