import json
from pathlib import Path

import pytest

from sdkappa import __version__
from sdkappa.cli import EXIT_OK, EXIT_REFUTED, EXIT_SCALE, main
from sdkappa.engine import contractible_verdict
from sdkappa.io import (
    canonical_json,
    certificate_to_dot,
    digest,
    order_map_from_json,
    order_map_to_json,
    path_from_json,
    path_to_json,
    poset_from_json,
    poset_to_dot,
    poset_to_json,
    rows_to_csv,
    sequence_from_json,
    sequence_to_json,
)
from sdkappa.poset import OrderMap, grid, make_poset, total_order

EXAMPLE = Path(__file__).resolve().parents[1] / "docs" / "examples" / "sigma1.json"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_canonical_json_is_sorted_and_terminated():
    text = canonical_json({"b": 1, "a": [1, 2]})
    assert text.endswith("\n") and text.index('"a"') < text.index('"b"')
    assert digest({"a": 1}) == digest({"a": 1}) != digest({"a": 2})


def test_poset_round_trip():
    P = grid(1, 2)
    Q = poset_from_json(poset_to_json(P))
    assert Q.relation() == P.relation()


def test_order_map_and_sequence_round_trip():
    phi = OrderMap(total_order(2), total_order(1), {0: 0, 1: 1, 2: 1})
    assert order_map_from_json(order_map_to_json(phi)) == phi
    psi = OrderMap(total_order(1), total_order(0), {0: 0, 1: 0})
    back = sequence_from_json(sequence_to_json([psi, phi]))
    assert [f.assignment for f in back] == [psi.assignment, phi.assignment]


def test_sequence_length_mismatch():
    data = sequence_to_json([OrderMap.identity(total_order(1))])
    data["maps"].append([])
    with pytest.raises(ValueError):
        sequence_from_json(data)


def test_path_round_trip():
    g = ((0, 0), (1, 1), (1, 2))
    assert path_from_json(path_to_json(g, 1, 2)) == g


def test_dot_outputs():
    dot = poset_to_dot(make_poset("ab", [("a", "b")]))
    assert dot.startswith("digraph") and "rankdir=BT" in dot
    v = contractible_verdict(total_order(2))
    assert "ConePoint" in certificate_to_dot(v.certificate)


def test_csv():
    assert rows_to_csv([["a", "b"], [1, 2]]).splitlines() == ["a,b", "1,2"]


def test_version_flag(capsys):
    with pytest.raises(SystemExit):
        main(["--version"])
    assert __version__ in capsys.readouterr().out


def test_paths_command(capsys):
    code, out = run(capsys, "paths", "1", "2", "--mu", "full", "--nu", "full")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["schema"] == "sdkappa.report/1" and data["exit_code"] == 0


def test_kappa_command_small(capsys):
    code, out = run(capsys, "kappa", "1", "0", "--per-cell", "1")
    assert code == EXIT_OK


def test_scale_guard_exit(capsys):
    code, _ = run(capsys, "kappa", "3", "3")
    assert code == EXIT_SCALE


def test_fold_is_refuted(capsys):
    code, _ = run(capsys, "fiber", "--builtin", "fold", "--per-cell", "1")
    assert code == EXIT_REFUTED


def test_cylinder_from_file(capsys):
    code, out = run(capsys, "cylinder", str(EXAMPLE))
    data = json.loads(out)
    assert code == EXIT_OK and data["result"]["verdict"]["verdict"] == "Simple"


def test_cylinder_sigma_flag(capsys):
    _, out1 = run(capsys, "cylinder", "--sigma", "1")
    _, out0 = run(capsys, "cylinder", "--sigma", "0")
    chain = [[0, 0], [0, 1], [1, 1], [1, 2]]
    assert chain in json.loads(out1)["result"]["reduced"]["top_simplices"]
    assert chain not in json.loads(out0)["result"]["reduced"]["top_simplices"]


def test_reports_are_deterministic(capsys):
    _, a = run(capsys, "fiber", "--builtin", "last-vertex:1", "--seed", "4", "--per-cell", "2")
    _, b = run(capsys, "fiber", "--builtin", "last-vertex:1", "--seed", "4", "--per-cell", "2")
    assert a == b


def test_out_file_and_formats(tmp_path, capsys):
    target = tmp_path / "r.csv"
    code, out = run(capsys, "fiber", "--builtin", "identity:1", "--format", "csv", "--out", str(target))
    assert code == EXIT_OK and out == ""
    assert target.read_text().splitlines()[0].startswith("cell")
    code, out = run(capsys, "paths", "1", "1", "--mu", "full", "--nu", "full", "--format", "dot")
    assert out.startswith("digraph")


def test_bad_input_exit(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code = main(["cylinder", str(bad)])
    capsys.readouterr()
    assert code == 1


def test_golden_reports_match():
    from sdkappa.cli import check_golden

    assert check_golden() == []


def test_corrupted_golden_fails_selftest(tmp_path, capsys, monkeypatch):
    import shutil

    from sdkappa import acceptance
    from sdkappa.cli import GOLDEN_DIR

    monkeypatch.setattr(acceptance, "run", lambda quick=False, echo=print: [])
    copy = tmp_path / "golden"
    shutil.copytree(GOLDEN_DIR, copy)
    assert main(["selftest", "--golden", str(copy)]) == EXIT_OK
    target = copy / "paths_1_2_full.json"
    target.write_text(target.read_text().replace("Contractible", "NotContractible", 1))
    assert main(["selftest", "--golden", str(copy)]) != EXIT_OK
    assert "paths_1_2_full.json" in capsys.readouterr().err
