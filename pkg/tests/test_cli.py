"""Command line round trips, diagnostics, and exit codes."""

import pytest

from qsolv import (
    LaurentPoly,
    ParseError,
    nf_mul,
    quantum_affine,
    quantum_matrices,
    quantum_plane,
    quantum_weyl,
    rank2,
)
from qsolv.cli import (
    parse_element,
    parse_presentation,
    print_presentation,
    run_command,
)

PLANE_SRC = """\
algebra P
params q
gens x poly, y poly
commute x y : q
"""


@pytest.fixture
def plane_file(tmp_path):
    path = tmp_path / "plane.alg"
    path.write_text(PLANE_SRC)
    return str(path)


def write_presentation(tmp_path, p, name="alg"):
    path = tmp_path / f"{name}.alg"
    path.write_text(print_presentation(p))
    return str(path)


@pytest.mark.parametrize(
    "p",
    [
        quantum_plane(),
        quantum_affine(3),
        quantum_weyl(1),
        quantum_weyl(2),
        quantum_matrices(2),
        rank2(0),
        rank2(LaurentPoly.var(("q",), "q") ** 2 - 5 * LaurentPoly.var(("q",), "q") + 6),
    ],
    ids=lambda p: p.name,
)
def test_print_parse_round_trip(p):
    assert parse_presentation(print_presentation(p)) == p


def test_parse_literal_source():
    assert parse_presentation(PLANE_SRC) == quantum_plane()


def test_slash_separates_statements():
    one_liner = "algebra P / params q / gens x poly, y poly / commute x y : q"
    assert parse_presentation(one_liner) == quantum_plane()


def test_comments_and_blank_lines_ignored():
    src = "algebra P\n# a comment\n\nparams q\ngens x poly, y poly\ncommute x y : q\n"
    assert parse_presentation(src) == quantum_plane()


def test_rational_token_is_not_a_unit():
    src = "algebra A\nparams q\ngens x poly, y poly\ncommute x y : 1/2\n"
    with pytest.raises(ParseError) as info:
        parse_presentation(src)
    assert info.value.line == 4


def test_tail_may_only_use_later_generators():
    src = "algebra A\nparams q\ngens x poly, y poly\ncommute x y : q\ntail x y : x\n"
    with pytest.raises(ParseError) as info:
        parse_presentation(src)
    assert info.value.line == 5
    assert "later generators" in info.value.message


def test_poly_after_laurent_rejected():
    src = "algebra A\nparams q\ngens k laurent, x poly\n"
    with pytest.raises(ParseError) as info:
        parse_presentation(src)
    assert info.value.line == 3
    assert "precede" in info.value.message


@pytest.mark.parametrize(
    "src, fragment",
    [
        ("", "empty"),
        ("algebra A\ngens x poly\ngens y poly\n", "duplicate gens"),
        ("algebra A\nparams q\nparams r\ngens x poly\n", "duplicate params"),
        ("algebra A\nparams q\ngens x poly\nfrobnicate\n", "unknown"),
        ("algebra A\nparams q\ngens x poly, x poly\n", "already in use"),
        ("algebra A\nparams q, q\ngens x poly\n", "repeated parameter"),
        ("algebra A\nparams q\ngens x poly, y poly\ncommute x y : r\n", "unknown"),
        ("algebra A\nparams q\n", "missing gens"),
    ],
)
def test_parse_errors(src, fragment):
    with pytest.raises(ParseError) as info:
        parse_presentation(src)
    assert fragment in info.value.message


def test_qskew_and_weight_statements():
    src = (
        "algebra W\nparams c\ngens y poly, x poly\n"
        "commute y x : c^-1\ntail y x : 1\nqskew 1 : c^-1\nweight 2 y : 1\n"
    )
    assert parse_presentation(src) == quantum_weyl(1)


def test_parse_element():
    p = quantum_plane()
    assert parse_element(p, "x*y") == p.monomial((1, 1))
    qinv = LaurentPoly.var(p.params, "q", -1)
    assert parse_element(p, "y*x") == p.monomial((1, 1), qinv)
    from fractions import Fraction

    assert parse_element(p, "1/2") == p.scalar(Fraction(1, 2))
    assert parse_element(p, "1/2 + x^2") == p.scalar(Fraction(1, 2)) + p.monomial((2, 0))
    assert parse_element(p, "q*x - y^2") == p.monomial(
        (1, 0), LaurentPoly.var(p.params, "q")
    ) - p.monomial((0, 2))
    with pytest.raises(ParseError):
        parse_element(p, "z + 1")
    with pytest.raises(ParseError):
        parse_element(p, "x^-1")


def test_validate_command(plane_file, capsys):
    assert run_command(["validate", plane_file]) == 0
    out = capsys.readouterr().out
    assert out.splitlines() == ["WF OK", "Q1 OK", "Q2 OK", "Q3 OK"]


def test_validate_failure_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.alg"
    # a constant tail with no skew scaling breaks Q1
    bad.write_text(
        "algebra B\nparams q\ngens x poly, y poly\ncommute x y : q\ntail x y : 1\n"
    )
    assert run_command(["validate", str(bad)]) == 1
    out = capsys.readouterr().out
    assert any(line.startswith("Q1 FAIL") for line in out.splitlines())


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.alg"
    bad.write_text("algebra A\nparams q\ngens x poly, y poly\ntail x y : x\n")
    assert run_command(["validate", str(bad)]) == 2
    err = capsys.readouterr().err
    assert err.startswith("parse error at line 4")


def test_missing_file_exit_code(tmp_path, capsys):
    assert run_command(["validate", str(tmp_path / "absent.alg")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_weights_command(tmp_path, capsys):
    path = write_presentation(tmp_path, quantum_weyl(1), "weyl")
    assert run_command(["weights", path, "x + y*x"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "components: 2"
    assert len(out) == 3


def test_adjoint_command(tmp_path, capsys):
    path = write_presentation(tmp_path, quantum_weyl(1), "weyl")
    assert run_command(["adjoint", path, "y", "x"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "minimal polynomial: t^2 + (-1 - c^-1)*t + (c^-1)"
    assert out[1] == "eigenvalue 1: (c/(c - 1))*y^-1"
    assert out[2] == "eigenvalue c^-1: (-c^2/(c - 1) + c*y*x)*y^-1"


def test_adjoint_unknown_generator(tmp_path, capsys):
    path = write_presentation(tmp_path, quantum_weyl(1), "weyl")
    assert run_command(["adjoint", path, "y", "z"]) == 2
    assert "unknown" in capsys.readouterr().err


def test_adjoint_repeated_eigenvalue(tmp_path, capsys):
    jordan = tmp_path / "jordan.alg"
    jordan.write_text("algebra J\nparams q\ngens x poly, y poly\ntail x y : 1\n")
    assert run_command(["adjoint", str(jordan), "x", "y"]) == 1
    assert "repeated eigenvalue" in capsys.readouterr().out


def test_center_command(tmp_path, capsys):
    torus = tmp_path / "torus.alg"
    torus.write_text(
        "algebra T\nparams q\n"
        "gens k1 laurent, k2 laurent, k3 laurent\ncommute k1 k2 : q\n"
    )
    assert run_command(["center", str(torus)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "G = <[0, 0, 1]>; center = C[Y^m : m in G]"
    assert "commutation 1 2: q" in out


def test_center_trivial(tmp_path, capsys):
    torus = tmp_path / "free.alg"
    torus.write_text("algebra T\nparams q\ngens k1 laurent, k2 laurent\ncommute k1 k2 : q\n")
    assert run_command(["center", str(torus)]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "G = {0}; center = C"


def test_center_rejects_polynomial_generators(plane_file, capsys):
    assert run_command(["center", plane_file]) == 3
    assert "unsupported" in capsys.readouterr().err


def test_stratify_command(plane_file, capsys):
    assert run_command(["stratify", plane_file]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "strata: 4"
    assert out[1] == "(0, 0, 0): vanish {-}, invert {x, y}, torus rank 2"
    assert out[-1] == "(2): vanish {x, y}, invert {-}, torus rank 0"


def test_stratify_rank2_family(tmp_path, capsys):
    q = LaurentPoly.var(("q",), "q")
    path = write_presentation(tmp_path, rank2(q ** 2 - 5 * q + 6), "rank2")
    assert run_command(["stratify", path]) == 0
    out = capsys.readouterr().out
    assert "exceptional parameter values: {1, 2, 3}" in out
    assert "at q = 1 the fiber is a Weyl algebra" in out
    assert "M1:" in out and "M2:" in out


def test_stratify_unsupported_family(tmp_path, capsys):
    path = write_presentation(tmp_path, quantum_weyl(2), "weyl2")
    assert run_command(["stratify", path]) == 3
    assert "unsupported" in capsys.readouterr().err


def test_specialize_command(plane_file, capsys):
    assert run_command(["specialize", plane_file, "--param", "q=3"]) == 0
    out = capsys.readouterr().out
    assert "all checks pass at the target" in out

    assert run_command(["specialize", plane_file, "--root-of-unity", "4"]) == 1
    out = capsys.readouterr().out
    assert any(line.startswith("Q2 FAIL") for line in out.splitlines())

    assert run_command(["specialize", plane_file, "--param", "q=0"]) == 1
    assert "unit" in capsys.readouterr().err

    # no assignment means the generic point
    assert run_command(["specialize", plane_file]) == 0
    assert "transcendental" in capsys.readouterr().out


def test_specialize_fraction_values(plane_file, capsys):
    assert run_command(["specialize", plane_file, "--param", "q=2/3"]) == 0
    capsys.readouterr()


def test_compositions_command(capsys):
    assert run_command(["compositions", "3"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "(3)"
    assert out[-1] == "count: 8"
    assert len(out) == 9


def test_compositions_rejects_negative(capsys):
    assert run_command(["compositions", "--", "-1"]) == 2
    capsys.readouterr()


def test_report_file(tmp_path, plane_file, capsys):
    report = tmp_path / "report.txt"
    assert run_command(["validate", plane_file, "--out", str(report)]) == 0
    capsys.readouterr()
    lines = report.read_text().splitlines()
    assert lines == sorted(lines)
    assert "command: validate" in lines
    assert all(": " in line for line in lines)
