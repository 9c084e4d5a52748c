import json
from pathlib import Path

import numpy as np
import pytest

import quatrange as qr
from quatrange import Quaternion, fileio
from quatrange.cli import main


@pytest.fixture
def matrix_file(tmp_path):
    T = qr.QMatrix.diag([Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0)])
    path = tmp_path / "matrix.json"
    fileio.dump_matrix(T, path)
    return path


@pytest.fixture
def remark_file(tmp_path):
    path = tmp_path / "remark.json"
    fileio.dump_operator(qr.remark_operator(), path)
    return path


def read_summary(out_dir):
    return json.loads((Path(out_dir) / "summary.json").read_text())


# -- file formats ------------------------------------------------------------------


def test_matrix_round_trip(tmp_path):
    T = qr.QMatrix.from_quaternions([
        [Quaternion(1, 2, 3, 4), Quaternion(0, 0, 0, 0)],
        [Quaternion(0.5, -0.25, 0, 1), Quaternion(-1, 1, 0, 0)],
    ])
    path = tmp_path / "m.json"
    fileio.dump_matrix(T, path)
    back = fileio.load_matrix(path)
    assert np.array_equal(T.arr, back.arr)


def test_operator_round_trip(tmp_path):
    M = qr.remark_operator()
    path = tmp_path / "op.json"
    fileio.dump_operator(M, path)
    back = fileio.load_operator(path)
    assert np.array_equal(back.block.arr, M.block.arr)
    assert back.bound == M.bound
    assert np.array_equal(back.tail.prefix(50), M.tail.prefix(50))
    assert np.array_equal(qr.essential_bild(back), qr.essential_bild(M))


def test_operator_all_tail_kinds(tmp_path):
    tails = [
        qr.ConstantTail(Quaternion(0, 0.5, 0, 0)),
        qr.PeriodicTail([Quaternion(0, 0.5, 0, 0), Quaternion(0, -0.5, 0, 0)]),
        qr.ExplicitTail([Quaternion(1.0), Quaternion(0, 0.5, 0, 0)]),
    ]
    for tail in tails:
        M = qr.ModelOperator(qr.QMatrix.zeros(0), tail,
                             [qr.SimilaritySphere(0.0, 0.5)], bound=1.0)
        path = tmp_path / f"{tail.kind}.json"
        fileio.dump_operator(M, path)
        back = fileio.load_operator(path)
        assert back.tail.kind == tail.kind
        assert np.array_equal(back.tail.prefix(10), tail.prefix(10))


def test_malformed_file_raises(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(fileio.ParseError):
        fileio.load_matrix(path)
    path.write_text(json.dumps({"entries": [[[1, 0, 0]]]}))
    with pytest.raises(fileio.ParseError):
        fileio.load_matrix(path)


# -- subcommands ------------------------------------------------------------------


def test_bild_command(matrix_file, tmp_path):
    out = tmp_path / "out"
    code = main(["bild", str(matrix_file), "--samples", "2000", "--angles", "90",
                 "--seed", "7", "--out", str(out), "--svg"])
    assert code == 0
    lines = (out / "bild.csv").read_text().strip().splitlines()
    assert lines[0] == "a,b,kind"
    assert len(lines) > 2000
    summary = read_summary(out)
    assert summary["config"]["samples"] == 2000
    # both diagonal units lie on the class (0, 1)
    assert summary["outer_polygon"][-1][1] == pytest.approx(1.0, abs=1e-6)
    assert (out / "bild.svg").exists()


def test_sspec_command(matrix_file, tmp_path):
    out = tmp_path / "out"
    assert main(["sspec", str(matrix_file), "--out", str(out)]) == 0
    summary = read_summary(out)
    assert summary["spheres"] == [[pytest.approx(0.0, abs=1e-9),
                                   pytest.approx(1.0, abs=1e-9)]]


def test_essential_command(remark_file, tmp_path):
    out = tmp_path / "out"
    assert main(["essential", str(remark_file), "--out", str(out)]) == 0
    summary = read_summary(out)
    assert summary["vertices"] == [[0.0, -0.5], [0.0, 0.5]]
    csv = (out / "essential.csv").read_text()
    assert csv == "a,b\n0.0,-0.5\n0.0,0.5\n"


def test_lancaster_command(remark_file, tmp_path):
    out = tmp_path / "out"
    code = main(["lancaster", str(remark_file), "--section", "40",
                 "--samples", "5000", "--angles", "60", "--out", str(out),
                 "--target=-1,1;1,1;0.3333333333333333,0;-0.3333333333333333,0",
                 "--edge=-0.3333333333333333,0,-1,1"])
    assert code == 0
    lines = (out / "lancaster.csv").read_text().strip().splitlines()
    assert lines[0] == "N,hausdorff,residual"
    assert len(lines) == 2
    summary = read_summary(out)
    assert summary["rows"][0]["hausdorff_target"] <= 0.05
    assert float(summary["residuals"]["40"]) > 0.0


def test_verify_command(remark_file, tmp_path):
    out = tmp_path / "out"
    code = main(["verify", str(remark_file), "--samples", "5000", "--angles", "90",
                 "--section", "50", "--out", str(out)])
    assert code == 0
    summary = read_summary(out)
    assert summary["pass"] is True
    assert summary["essential_endpoints"]["b_min"] == -0.5
    assert summary["essential_endpoints"]["b_max"] == 0.5
    vertices = summary["essential_vertices"]
    assert [0.0, -0.5] in vertices and [0.0, 0.5] in vertices


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{]")
    out = tmp_path / "out"
    assert main(["bild", str(bad), "--out", str(out)]) == 2
    assert main(["essential", str(bad), "--out", str(out)]) == 2


def test_validation_error_exit_code(tmp_path):
    M = qr.ModelOperator(qr.QMatrix.zeros(0), qr.ConstantTail(Quaternion(0, 1, 0, 0)),
                         [qr.SimilaritySphere(4.0, 0.0)], bound=1.5)
    path = tmp_path / "phantom.json"
    fileio.dump_operator(M, path)
    out = tmp_path / "out"
    assert main(["essential", str(path), "--out", str(out)]) == 2


def test_byte_identical_reruns(remark_file, matrix_file, tmp_path):
    runs = []
    for tag in ("a", "b"):
        out = tmp_path / f"run_{tag}"
        assert main(["verify", str(remark_file), "--samples", "3000",
                     "--angles", "60", "--section", "30", "--seed", "11",
                     "--out", str(out)]) == 0
        assert main(["bild", str(matrix_file), "--samples", "3000",
                     "--angles", "60", "--seed", "11",
                     "--out", str(out / "bild")]) == 0
        runs.append(out)
    for rel in ("summary.json", "verify.csv", "bild/summary.json", "bild/bild.csv"):
        b1 = (runs[0] / rel).read_bytes()
        b2 = (runs[1] / rel).read_bytes()
        assert b1 == b2, f"outputs differ in {rel}"
