import csv
import io
from pathlib import Path

import pytest

from pqa.cli import RunConfig, main
from pqa.errors import InputError
from pqa.expected import truncated_B
from pqa.fixtures import load_fixture
from pqa.present import find_presentation_isomorphism
from pqa.qcat import build_B
from pqa.textformat import parse_presentation

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cext_dual_numbers(capsys):
    code, out, _ = run(capsys, "cext", "--fixture", "trunc:2", "--module", "A")
    assert code == 0
    assert out.splitlines()[0] == "Dim = (2;1), methods agree, pdim≤1 ✓ idim≤1 ✓"


def test_cext_square_simple(capsys):
    code, out, _ = run(capsys, "cext", "--fixture", "commuting-square", "--module", "S1")
    assert code == 0
    assert "c(S1) is the simple module at [1]" in out


def test_cext_zero_module(capsys):
    code, out, _ = run(capsys, "cext", "--fixture", "trunc:2", "--module", "0")
    assert code == 0
    assert "zero module" in out


def test_grass_example(capsys):
    code, out, _ = run(capsys, "grass", "--fixture", "trunc:2", "--module", "A+S", "--dim", "1", "--q", "2")
    assert code == 0
    assert out.splitlines()[0] == "3 points, 1 stratum, fibers all singletons"


def test_degeneration_example(capsys):
    code, out, _ = run(capsys, "degeneration", "--fixture", "trunc:2", "--module", "A")
    assert code == 0
    assert "chain A > 2*S" in out
    assert "cross-check PASS" in out


@pytest.mark.parametrize("name,vertices", [("trunc:4", 4), ("commuting-square", 11), ("cycle:3:4", 12)])
def test_build_b_vertex_counts(capsys, name, vertices):
    code, out, _ = run(capsys, "build-b", "--fixture", name)
    assert code == 0
    assert "# reference presentation: isomorphic" in out
    assert sum(1 for ln in out.splitlines() if "-type" in ln) == vertices


def test_build_b_roundtrip(capsys, tmp_path):
    target = tmp_path / "B.txt"
    code, out, _ = run(capsys, "build-b", "--fixture", "trunc:3", "--out", str(target))
    assert code == 0 and "written to" in out
    again = parse_presentation(target.read_text())
    fx = load_fixture("trunc:3", 2)
    B = build_B(fx.algebra, fx.catalog).B
    assert find_presentation_isomorphism(again, B) is not None


def test_build_b_from_file(capsys):
    code, out, _ = run(capsys, "build-b", "--input", str(DATA / "a3_linear.txt"))
    assert code == 0
    assert "eBe = A verified" in out
    code, out, _ = run(capsys, "cext", "--input", str(DATA / "dual_numbers.txt"), "--module", "A")
    assert code == 0 and out.startswith("Dim = (2;1)")


def test_exit_codes_for_bad_input(capsys, tmp_path):
    assert run(capsys, "cext", "--fixture", "trunc:2", "--module", "Z")[0] == 2
    assert run(capsys, "cext", "--fixture", "trunc:2", "--module", "A", "--p", "4")[0] == 2
    assert run(capsys, "grass", "--fixture", "trunc:2", "--module", "A", "--dim", "1", "--q", "4")[0] == 2
    assert run(capsys, "build-b", "--fixture", "no-such-fixture")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("algebra x\nfield 2\nvertices 1\narrow a: 1 -> 2\n")
    code, _, err = run(capsys, "build-b", "--input", str(bad))
    assert code == 2 and "pqa:" in err


def test_budget_exit_code(capsys):
    code, _, _ = run(capsys, "grass", "--fixture", "trunc:4", "--module", "A+A", "--dim", "4", "--budget", "3")
    assert code == 3


def test_run_config_validation():
    with pytest.raises(InputError):
        RunConfig("cext", fixture="trunc:2", p=9)
    with pytest.raises(InputError):
        RunConfig("cext", fixture="trunc:2", budget=0)
    assert RunConfig("cext", fixture="trunc:2", p=3).q == 3


@pytest.mark.parametrize(
    "argv,header",
    [
        (["build-b", "--fixture", "trunc:2"], ["vertex", "kind", "source"]),
        (["cext", "--fixture", "trunc:2", "--module", "S"], ["vertex", "dim"]),
        (["grass", "--fixture", "trunc:2", "--module", "A", "--dim", "1"], ["stratum", "points", "dim_pair", "fiber_sizes", "check", "status"]),
        (["degeneration", "--fixture", "trunc:2", "--module", "A"], ["class", "hom_leq_M", "dim_c_leq_dim_cM", "in_image_of_e"]),
    ],
)
def test_csv_headers(capsys, argv, header):
    code, out, _ = run(capsys, *argv, "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == header and len(rows) > 1


def test_csv_cext_values(capsys):
    _, out, _ = run(capsys, "cext", "--fixture", "trunc:2", "--module", "A", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))[1:]
    assert [r[1] for r in rows] == ["2", "1"]


def test_reports_are_deterministic(capsys, monkeypatch):
    argv = ["grass", "--fixture", "commuting-square", "--module", "P1", "--dim", "0,1,0,1"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    monkeypatch.setenv("PQA_SEED", "7")
    third = run(capsys, *argv)
    assert third[1] == first[1]


def test_verify_all_subset(capsys, monkeypatch):
    monkeypatch.setenv("PQA_SEED", "11")
    code, out, _ = run(capsys, "verify-all", "--criteria", "1,9", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["criterion", "status", "seconds", "title", "first_failure"]
    assert [r[0] for r in rows[1:]] == ["1", "9"]
    assert code == 0 and all(r[1] == "PASS" for r in rows[1:])


def test_verify_all_unknown_criterion(capsys):
    assert run(capsys, "verify-all", "--criteria", "42")[0] == 2


def test_truncated_reference_reading():
    # The chosen reading of the zero relation gives the dimension of the
    # Auslander algebra of K[x]/(x^3); the literal reading does not.
    fx = load_fixture("trunc:3", 2)
    B = build_B(fx.algebra, fx.catalog).B
    assert truncated_B(3, 2).dim == B.dim == 14
    assert truncated_B(3, 2, literal_zero_relation=True).dim == 11
