import json
from fractions import Fraction

import pytest

from glasnerlab import cli, formats
from glasnerlab.errors import FormatError
from glasnerlab.polymat import PolyMat
from glasnerlab.torus import EXACT, FLOAT, TorusPointSet

from conftest import poly

X_MATRIX = '{"d": 1, "entries": [[[0, 1]]]}'
SCALAR_X_2D = '{"d": 2, "entries": [[[0, 1], []], [[], [0, 1]]]}'
POWERS = '{"d": 2, "entries": [[[0, 1], [0, 0, 1]], [[0, 0, 0, 1], [0, 0, 0, 0, 1]]]}'


def test_polymat_round_trip():
    A = formats.parse_polymat(POWERS)
    assert A.dim == 2
    assert A.degree == 4
    assert formats.parse_polymat(formats.dump_polymat(A)) == A


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[1, 2]",
        '{"d": 2, "entries": [[[1]]]}',
        '{"d": 1, "entries": [[[0.5]]]}',
        '{"d": 0, "entries": []}',
        '{"d": 1, "entries": [[["x"]]]}',
    ],
)
def test_polymat_parse_errors(text):
    with pytest.raises(FormatError):
        formats.parse_polymat(text)


def test_dump_polymat_rejects_rational_coeffs():
    A = PolyMat([[poly(Fraction(1, 2), Fraction(1, 2), 0)]])
    with pytest.raises(FormatError):
        formats.dump_polymat(A)


def test_points_exact_round_trip():
    text = "1/2,0\n1/3,2/3\n"
    Y = formats.parse_points(text)
    assert Y.kind == EXACT
    assert Y.points == [(Fraction(1, 2), Fraction(0)), (Fraction(1, 3), Fraction(2, 3))]
    assert formats.parse_points(formats.dump_points(Y)).points == Y.points


def test_points_float_kind():
    Y = formats.parse_points("0.25,0.5\n0.75,0.125\n")
    assert Y.kind == FLOAT


def test_points_bare_integers_are_exact():
    Y = formats.parse_points("0\n")
    assert Y.kind == EXACT


def test_points_comments_and_blanks_skipped():
    Y = formats.parse_points("# header\n\n1/2\n")
    assert len(Y) == 1


@pytest.mark.parametrize(
    "text",
    ["", "1/2,0.25\n", "1/2\n1/3,1/4\n", "1/0\n", "abc\n", "1/2\n1/2\n"],
)
def test_points_parse_errors(text):
    with pytest.raises(FormatError):
        formats.parse_points(text)


def test_generators_round_trip():
    mats = formats.parse_generators("[[[1, 1], [0, 1]], [[1, 0], [1, 1]]]")
    assert len(mats) == 2
    assert mats[0].entries == [[1, 1], [0, 1]]


@pytest.mark.parametrize("text", ["{}", "[]", "[[[0.5]]]", '["x"]'])
def test_generators_parse_errors(text):
    with pytest.raises(FormatError):
        formats.parse_generators(text)


@pytest.fixture
def matrix_file(tmp_path):
    def write(text, name="A.json"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def run_cli(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_cli_check_violation(matrix_file, capsys):
    code, out = run_cli(capsys, ["check", matrix_file(SCALAR_X_2D), "--seed", "1"])
    assert code == 3
    assert out["status"] == "ViolationFound"
    assert out["witness"] is not None


def test_cli_check_clears(matrix_file, capsys):
    code, out = run_cli(capsys, ["check", matrix_file(POWERS), "--seed", "1"])
    assert code == 0
    assert out["status"] == "CertifiedGenericRank"
    assert out["height"] == 5


def test_cli_check_bad_file(matrix_file, capsys):
    code = cli.main(["check", matrix_file("garbage"), "--seed", "1"])
    capsys.readouterr()
    assert code == 2


def test_cli_construct_fixture(matrix_file, tmp_path, capsys):
    out_path = str(tmp_path / "out.json")
    code, out = run_cli(
        capsys,
        ["construct", "--fixture", "sl2-pair", "--seed", "3", "--out", out_path],
    )
    assert code == 0
    assert out["N"] == 4
    assert out["R"] == 2
    assert out["degree"] <= 15
    A = formats.load_polymat(out_path)
    assert A.degree == out["degree"]


def test_cli_construct_not_certified(matrix_file, capsys):
    gens = matrix_file("[[[1, 1], [0, 1]]]", "gens.json")
    code = cli.main(["construct", gens, "--seed", "3"])
    capsys.readouterr()
    assert code == 4


def test_cli_density_dim_mismatch(matrix_file, tmp_path, capsys):
    pts = tmp_path / "pts.txt"
    pts.write_text("1/2,0\n")
    code = cli.main(
        ["density", matrix_file(X_MATRIX), str(pts), "--epsilon", "0.2"]
    )
    capsys.readouterr()
    assert code == 2


def test_cli_density_finds_n(matrix_file, tmp_path, capsys):
    pts = tmp_path / "pts.txt"
    pts.write_text("".join(f"{i}/20\n" for i in range(20)))
    code, out = run_cli(
        capsys,
        ["density", matrix_file(X_MATRIX), str(pts), "--epsilon", "0.1"],
    )
    assert code == 0
    assert out["found_n"] == 1
    assert out["report"]["dense"] is True


def test_cli_density_not_found(matrix_file, tmp_path, capsys):
    pts = tmp_path / "pts.txt"
    pts.write_text("0\n1/2\n")
    code, out = run_cli(
        capsys,
        [
            "density",
            matrix_file(X_MATRIX),
            str(pts),
            "--epsilon",
            "0.2",
            "--n-max",
            "50",
        ],
    )
    assert code == 3
    assert out["found_n"] is None


def test_cli_expsum_complete(capsys):
    code, out = run_cli(capsys, ["expsum", "--coeffs", "0,0,1", "--q", "4"])
    assert code == 0
    assert out["value"][0] == pytest.approx(0.5)
    assert out["value"][1] == pytest.approx(0.5)


def test_cli_expsum_hua_needs_seed(capsys):
    code = cli.main(["expsum", "--hua", "--q", "10"])
    capsys.readouterr()
    assert code == 2


def test_cli_expsum_hua(capsys):
    code, out = run_cli(
        capsys,
        ["expsum", "--hua", "--q", "11", "--q", "23", "--seed", "5"],
    )
    assert code == 0
    assert len(out["samples"]) == 10
    assert out["empirical_C"] > 0


def test_cli_spectrum(tmp_path, capsys):
    pts = tmp_path / "pts.txt"
    pts.write_text("0\n1/2\n1/3\n")
    code, out = run_cli(capsys, ["spectrum", str(pts), "--r", "1.0"])
    assert code == 0
    assert out["counts"] == {"2": 2, "3": 2, "6": 2}
    assert out["weighted_sums"]["1.0"] == pytest.approx(2 / 2 + 2 / 3 + 2 / 6)


def test_cli_spectrum_rejects_floats(tmp_path, capsys):
    pts = tmp_path / "pts.txt"
    pts.write_text("0.5\n0.25\n")
    code = cli.main(["spectrum", str(pts)])
    capsys.readouterr()
    assert code == 2


def test_cli_witness(matrix_file, tmp_path, capsys):
    out_path = str(tmp_path / "wit.txt")
    code, out = run_cli(
        capsys,
        [
            "witness",
            matrix_file(SCALAR_X_2D),
            "--v",
            "1,0",
            "--w",
            "0,1",
            "--size",
            "5",
            "--out",
            out_path,
        ],
    )
    assert code == 0
    assert out["band_direction"] == [1, 0]
    Y = formats.load_points(out_path)
    assert len(Y) == 5


def test_cli_witness_rejects_non_violation(matrix_file, capsys):
    code = cli.main(
        ["witness", matrix_file(POWERS), "--v", "1,0", "--w", "1,0"]
    )
    capsys.readouterr()
    assert code == 3


def test_cli_check_deterministic(matrix_file, capsys):
    path = matrix_file(POWERS)
    _, out1 = run_cli(capsys, ["check", path, "--seed", "42"])
    _, out2 = run_cli(capsys, ["check", path, "--seed", "42"])
    assert out1 == out2
