"""CLI のサブコマンドと終了コードのテスト"""

import json
import logging

import pytest

from src.cli.core.convex_cli import main
from src.config.constants import EXIT_FAIL, EXIT_INPUT_ERROR, EXIT_NO_CONVERGENCE, EXIT_OK
from src.utils.logger import parse_level, set_log_level

_SQUARE = {"dim": 2, "vertices": [[-1, -1], [1, -1], [1, 1], [-1, 1]]}
_TRIANGLE = {"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1]]}
# 五角形 (0,0), (4,0), (5,2), (2,5), (-1,3) の辺ベクトルを外向きに回したもの
_PENTAGON_MEASURE = {
    "dim": 2,
    "atoms": [
        {"area_vector": [0, -4]},
        {"area_vector": [2, -1]},
        {"area_vector": [3, 3]},
        {"area_vector": [-2, 3]},
        {"area_vector": [-3, -1]},
    ],
}


@pytest.fixture
def write(tmp_path):
    def _write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)

    return _write


def _output(capsys):
    return json.loads(capsys.readouterr().out)


def test_volume(write, capsys):
    assert main(["volume", write("square.json", _SQUARE)]) == EXIT_OK
    payload = _output(capsys)
    assert payload["volume"] == "4"
    assert payload["facets"] == 4


def test_volume_in_float_mode(write, capsys):
    assert main(["volume", "--mode", "float", write("square.json", _SQUARE)]) == EXIT_OK
    assert _output(capsys)["volume"] == pytest.approx(4.0)


def test_mixed_volume(write, capsys):
    square = write("square.json", _SQUARE)
    assert main(["mixed", square, write("triangle.json", _TRIANGLE), "--via-measure"]) == EXIT_OK
    payload = _output(capsys)
    # V(正方形, 三角形) = (vol(K+L) - vol(K) - vol(L)) / 2
    assert payload["mixed_volume"] == payload["via_measure"] == "2"


def test_mixed_volume_needs_n_bodies(write):
    assert main(["mixed", write("square.json", _SQUARE)]) == EXIT_INPUT_ERROR


def test_measure(write, capsys):
    assert main(["measure", write("square.json", _SQUARE)]) == EXIT_OK
    payload = _output(capsys)
    assert len(payload["atoms"]) == 4
    assert all(atom["weight"] == "2" for atom in payload["atoms"])
    assert payload["centroid_defect"] == ["0", "0"]


def test_solve(write, capsys):
    measure = write("measure.json", _PENTAGON_MEASURE)
    assert main(["solve", measure, "--diagnostics"]) == EXIT_OK
    payload = _output(capsys)
    assert len(payload["vertices"]) == 5
    assert payload["volume"] == pytest.approx(20.0, rel=1e-6)
    assert payload["diagnostics"]["converged"]


def test_solve_without_convergence(write, capsys):
    measure = write("measure.json", _PENTAGON_MEASURE)
    code = main(["solve", measure, "--max-iterations", "1", "--tolerance", "1e-14"])
    assert code == EXIT_NO_CONVERGENCE
    payload = _output(capsys)
    assert payload["error"] == "no_convergence"
    assert not payload["diagnostics"]["converged"]


def test_verify_with_inputs(write, capsys, tmp_path):
    inputs = [write("square.json", _SQUARE), write("triangle.json", _TRIANGLE)]
    out = tmp_path / "reports.jsonl"
    assert main(["verify", "brunn_minkowski", "--inputs", *inputs, "--json-out", str(out)]) == EXIT_OK
    report = _output(capsys)
    assert report["name"] == "brunn_minkowski"
    assert report["passed"]
    assert json.loads(out.read_text(encoding="utf-8").splitlines()[0]) == report


def test_verify_random_instances(capsys):
    assert main(["verify", "morse", "--random", "3", "--seed", "1", "--dim", "2"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3
    assert all(json.loads(line)["passed"] for line in lines)


def test_verify_reverse_kt_needs_k(write):
    inputs = [write(f"{i}.json", _SQUARE) for i in range(3)]
    assert main(["verify", "reverse_kt", "--inputs", *inputs]) == EXIT_INPUT_ERROR
    assert main(["verify", "reverse_kt", "--inputs", *inputs, "--k", "1"]) == EXIT_OK


def test_toric_flop(capsys):
    assert main(["toric", "flop", "--a", "1", "--b", "2", "--check-volume", "--wall-jump"]) == EXIT_OK
    payload = _output(capsys)
    assert payload["volume"] == "5"
    assert payload["sections"] == 8
    assert payload["sections_closed_form"] == "8"
    assert payload["check"]["passed"]
    assert payload["wall_jump"]["predicted"] == "6/125"


def test_toric_count(write, capsys):
    triangle = write("triangle.json", {"dim": 2, "vertices": [[0, 0], [2, 0], [0, 2]]})
    assert main(["toric", "count", "--polytope", triangle, "--check-volume"]) == EXIT_OK
    payload = _output(capsys)
    assert payload["lattice_points"] == 6
    assert payload["volume"] == "2"


def test_alexandrov_decompose(write, capsys):
    directions = [[1, 0], [0, 1], [-1, 0], [0, -1], [1, 1], [-1, 1], [-1, -1], [1, -1]]
    f = write("f.json", {"dim": 2, "directions": directions, "values": [1, 1, 1, 1, 3, 3, 3, 3]})
    assert main(["alexandrov", "decompose", "--function", f]) == EXIT_OK
    payload = _output(capsys)
    assert payload["volume"] == "4"
    assert payload["orthogonal"] is True


def test_input_errors(write, tmp_path):
    assert main(["volume", str(tmp_path / "missing.json")]) == EXIT_INPUT_ERROR
    assert main(["volume", write("bad.json", {"dim": 2})]) == EXIT_INPUT_ERROR
    assert main(["solve", write("square.json", _SQUARE)]) == EXIT_INPUT_ERROR
    unbalanced = write("unbalanced.json", {"dim": 2, "atoms": [{"area_vector": [1, 0]}, {"area_vector": [0, 1]}]})
    assert main(["solve", unbalanced]) == EXIT_INPUT_ERROR


def test_unknown_arguments_exit_with_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["verify", "not_a_check"])
    assert info.value.code == 2


def test_info(capsys):
    assert main(["info"]) == EXIT_OK
    payload = _output(capsys)
    assert "environment" in payload
    assert payload["arithmetic_mode"] in ("exact", "float")


def test_log_level_flag(write, capsys):
    cli_logger = logging.getLogger("convex_cli")
    try:
        assert main(["volume", write("square.json", _SQUARE), "--log-level", "ERROR"]) == EXIT_OK
        assert cli_logger.level == logging.ERROR
        assert all(handler.level == logging.ERROR for handler in cli_logger.handlers)
        assert _output(capsys)["volume"] == "4"
    finally:
        set_log_level(parse_level(None))


@pytest.mark.slow
def test_suite_command(tmp_path, capsys):
    code = main(["suite", "--dim", "2", "--count", "1", "--seed", "3", "--output-dir", str(tmp_path)])
    assert code in (EXIT_OK, EXIT_FAIL, EXIT_NO_CONVERGENCE)
    payload = _output(capsys)
    assert payload["exit_code"] == code
    assert (tmp_path / "summary.json").exists()
