import subprocess
import sys
from pathlib import Path

import pytest

from ecomat.cli import check_table_row, run
from ecomat.riordan import bundled_table, parse_table
from ecomat.specfile import SpecError, load_text, parse_fields, parse_triangle

SPECS = Path(__file__).resolve().parent.parent / "specs"


def ecomat(*argv):
    return run([str(a) for a in argv])


def spec(name):
    return str(SPECS / name)


def ok(*argv):
    code, out, err = ecomat(*argv)
    assert (code, err) == (0, ""), err
    return out.splitlines()


def test_seq_eco_labels():
    assert ok("seq", "--spec", spec("fib.rule"), "--terms", 8) == ["1 1 2 3 5 8 13 21"]
    assert ok("eco", "--spec", spec("central.riordan"), "--levels", 4) == ["1", "1 1", "3 2 1", "10 6 3 1"]
    assert ok("labels", "--spec", spec("bell.rowexpr"), "--terms", 5) == ["1 2 3 4 5"]


def test_gf_finite_and_infinite_agree():
    expected = [
        "1 + 2*z + 5*z^2 + 14*z^3 + 39*z^4 + 108*z^5 + O(z^6)",
        "f_P = (1 - z)/(1 - 3*z + z^2 - z^3)",
    ]
    assert ok("gf", "--spec", spec("parity_finite.explicit"), "--order", 5, "--rational") == expected
    assert ok("gf", "--spec", spec("parity.rowexpr"), "--order", 5, "--rational") == expected
    assert ok("gf", "--spec", spec("schroeder.riordan"), "--order", 6) == [
        "1 + 2*z + 6*z^2 + 22*z^3 + 90*z^4 + 394*z^5 + 1806*z^6 + O(z^7)"
    ]


def test_egf():
    assert ok("egf", "--spec", spec("stirling.eriordan"), "--order", 4) == [
        "1 + 2*z + 3*z^2 + 4*z^3 + 5*z^4 + O(z^5)"
    ]


def test_riordan_detect(tmp_path):
    assert ok("riordan-detect", "--spec", spec("central.rowexpr"), "--levels", 5) == [
        "zeta: 1 + 2*z + 3*z^2 + 4*z^3 + O(z^4)",
        "alpha: 1 + z + z^2 + z^3 + O(z^4)",
    ]
    tri = tmp_path / "pascal.txt"
    tri.write_text("1\n1 1\n1 2 1\n1,3,3,1\n")
    assert ok("riordan-detect", "--triangle", tri) == ["zeta: 1 + O(z^3)", "alpha: 1 + z + O(z^3)"]


def test_riordan_detect_not_riordan(tmp_path):
    tri = tmp_path / "bad.txt"
    tri.write_text("1\n1 1\n2 2 1\n5 5 3 1\n14 14 9 4 2\n")
    code, out, err = ecomat("riordan-detect", "--triangle", tri)
    assert code == 1 and out == ""
    assert err.startswith("error: NotRiordan: ") and err.count("\n") == 1


def test_riordan_build():
    assert ok("riordan-build", "--spec", spec("schroeder.riordan"), "--order", 4, "--levels", 3) == [
        "P:",
        "1 1",
        "2 1 1",
        "4 2 1 1",
        "h: 1 + z + 3*z^2 + 11*z^3 + 45*z^4 + O(z^5)",
        "d: 1 + z + 3*z^2 + 11*z^3 + 45*z^4 + O(z^5)",
        "f: 1 + 2*z + 6*z^2 + 22*z^3 + 90*z^4 + O(z^5)",
    ]


def test_er_roundtrip_both_directions():
    assert ok("er-roundtrip", "--spec", spec("stirling.eriordan"), "--order", 4) == [
        "c: 1 + z + 1/2*z^2 + 1/6*z^3 + 1/24*z^4 + O(z^5)",
        "r: 1 + z + 1/2*z^2 + 1/6*z^3 + 1/24*z^4 + O(z^5)",
        "residual d: 0 + O(z^5)",
        "residual h: 0 + O(z^5)",
    ]
    assert ok("er-roundtrip", "--spec", spec("bessel.eriordan"), "--order", 4) == [
        "d: 1 + z + 3/2*z^2 + 5/2*z^3 + 35/8*z^4 + O(z^5)",
        "h: 1 + 1/2*z + 1/2*z^2 + 5/8*z^3 + 7/8*z^4 + O(z^5)",
        "residual c: 0 + O(z^5)",
        "residual r: 0 + O(z^5)",
    ]


def test_recurrence():
    assert ok("recurrence", "--spec", spec("p4.explicit")) == [
        "characteristic: t^4 - 10*t^3 + 36*t^2 - 55*t + 30",
        "minimal: t^4 - 10*t^3 + 36*t^2 - 55*t + 30",
        "annihilator: t^3 - 8*t^2 + 20*t - 15",
        "divisor chain: holds",
        "recurrence: t^2 - 5*t + 5",
    ]


def test_krylov():
    assert ok("krylov", "--spec", spec("triangular.rowexpr")) == [
        "polynomial: t^3 - 4*t^2 + 3*t - 1",
        "coefficients: -4 3 -1",
        "initial: 1 2 6",
        "gf: (1 - 2*z + z^2)/(1 - 4*z + 3*z^2 - z^3)",
    ]


def test_equiv(tmp_path):
    swapped = tmp_path / "swapped.explicit"
    swapped.write_text("kind: explicit\nrows: [[1,0,1],[2,1,1],[1,1,1]]\n")
    assert ok("equiv", "--spec", spec("parity_finite.explicit"), "--spec", swapped) == ["EQUIVALENT"]
    assert ok("equiv", "--spec", spec("fib.rule"), "--spec", spec("p4.explicit")) == ["DIFFERENT"]
    code, _, err = ecomat("equiv", "--spec", spec("fib.rule"))
    assert code == 2 and err.startswith("error: SpecError")


def test_table_verify():
    lines = ok("table-verify")
    assert lines[-1] == f"{len(bundled_table())}/{len(bundled_table())} rows pass"
    assert all(line.endswith("PASS") for line in lines[:-1])


def test_table_verify_reports_failure(tmp_path):
    table = tmp_path / "table.txt"
    table.write_text("1 | 1 | 1/(1-z)^2 | 1,2,3,4 | A000027\n1 | 1 | 1/(1-z)^2 | 1,2,3,5 | A999999\n")
    code, out, err = ecomat("table-verify", "--table", table, "--terms", 4)
    assert code == 1
    assert out.splitlines()[0] == "row 1 A000027 PASS"
    assert out.splitlines()[1].startswith("row 2 A999999 FAIL ECO iteration gives 1 2 3 4")
    assert out.splitlines()[-1] == "1/2 rows pass"
    assert err == "error: Failure: table rows failed\n"


def test_check_table_row_closed_form_mismatch():
    (row,) = parse_table("1 | 1 | 1/(1-z) | 1,2,3,4 | A000027\n")
    assert check_table_row(row, 4).startswith("f_P expression gives 1 1 1 1")


@pytest.mark.parametrize(
    "argv, code, kind",
    [
        (["krylov", "--spec", spec("bell.rowexpr"), "--max-order", 3, "--window", 10], 1, "NotFound"),
        (["recurrence", "--spec", spec("bell.rowexpr")], 2, "SpecError"),
        (["seq", "--spec", "no/such/file"], 2, "FileNotFoundError"),
        (["seq", "--spec", spec("fib.rule"), "--terms", 0], 2, "UsageError"),
        (["frobnicate"], 2, "UsageError"),
        (["seq"], 2, "SpecError"),
        (["krylov", "--spec", spec("bell.rowexpr"), "--max-order", 8, "--window", 10], 2, "ValueError"),
    ],
)
def test_exit_codes_and_error_line(argv, code, kind):
    got, out, err = ecomat(*argv)
    assert got == code and out == ""
    assert err.startswith(f"error: {kind}: ") and err.endswith("\n") and err.count("\n") == 1


def test_bad_spec_files(tmp_path):
    cases = {
        "nokind": "rows: [[1]]\n",
        "badkind": "kind: triangle\n",
        "missing": "kind: riordan\nzeta: 1\n",
        "unknown": "kind: explicit\nrows: [[1]]\ncolour: red\n",
        "notlist": "kind: explicit\nrows: 7\n",
        "badexpr": "kind: riordan\nzeta: 1/(1-\nalpha: 1\n",
        "params": "kind: rowexpr\nentry: [j==i+1]*a\nsupport: i+1\nparams: a=x\n",
    }
    for name, text in cases.items():
        path = tmp_path / name
        path.write_text(text)
        code, _, err = ecomat("seq", "--spec", path)
        assert code == 2, name
        assert err.startswith("error: ") and err.count("\n") == 1, name


def test_spec_parsing_details():
    fields = parse_fields("kind: explicit  # finite\nrows: [[0,1],\n   [1,1]]\n")
    assert fields == {"kind": "explicit", "rows": "[[0,1], [1,1]]"}
    with pytest.raises(SpecError):
        parse_fields("  indented first\n")
    with pytest.raises(SpecError):
        parse_fields("a: 1\na: 2\n")
    with pytest.raises(SpecError):
        parse_fields("no colon here\n")
    loaded = load_text("kind: rowexpr\nentry: [j==0]*a + [j==i+1]\nsupport: i+1\nparams: a=3\n")
    assert loaded.matrix.row(0) == (3, 1)
    assert load_text("# comment\naxiom (2);\n(2) -> (2)(2);\n").kind == "rule"
    assert parse_triangle("1\n1, 1\n\n1 2 1  # row 2\n") == [[1], [1, 1], [1, 2, 1]]
    with pytest.raises(SpecError):
        parse_triangle("1 x\n")


def test_deterministic_and_entry_point():
    argv = ["gf", "--spec", spec("triangular.rowexpr"), "--rational", "--order", 8]
    assert ecomat(*argv) == ecomat(*argv)
    proc = subprocess.run([sys.executable, "-m", "ecomat.cli", *map(str, argv)], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == ecomat(*argv)[1]
