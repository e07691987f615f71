import json

from matrep import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out.strip() else None
    run_cli.last_err = captured.err
    return code, report


def test_info_builtin(capsys):
    code, report = run_cli(capsys, "info", "U3,4")
    assert code == 0
    assert report["results"]["whitney"] == [1, 4, 6, 3]
    assert report["results"]["rank"] == 3


def test_info_five_point(capsys):
    code, report = run_cli(capsys, "info", "explicit")
    assert code == 0
    assert report["results"]["num_flats"] == 10
    assert report["results"]["whitney"] == [1, 4, 5, 2]


def test_info_report_deterministic(capsys):
    _, first = run_cli(capsys, "info", "U2,3")
    _, second = run_cli(capsys, "info", "U2,3")
    first.pop("timing_ms")
    second.pop("timing_ms")
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)


def test_lattice_and_whitney(capsys):
    code, report = run_cli(capsys, "lattice", "U2,4")
    assert code == 0
    assert len(report["results"]["flats"]) == 6
    code, report = run_cli(capsys, "whitney", "funcL")
    assert report["results"]["whitney"] == [1, 3, 3, 1]


def test_matroid_document_round_trip(tmp_path, capsys):
    out = tmp_path / "explicit.json"
    code, _ = run_cli(capsys, "export", "explicit", "--out", str(out))
    assert code == 0
    code, report = run_cli(capsys, "info", str(out))
    assert code == 0
    assert report["results"]["num_flats"] == 10


def test_matroid_document_from_flats(tmp_path, capsys):
    doc = {
        "name": "triangle",
        "elements": ["a", "b", "c"],
        "flats": [[], ["a"], ["b"], ["c"], ["a", "b", "c"]],
    }
    path = tmp_path / "triangle.json"
    path.write_text(json.dumps(doc))
    code, report = run_cli(capsys, "info", str(path))
    assert code == 0
    assert report["results"]["rank"] == 2


def test_malformed_document_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _ = run_cli(capsys, "info", str(path))
    assert code == 3
    assert "line" in run_cli.last_err
    code, _ = run_cli(capsys, "info", str(tmp_path / "missing.json"))
    assert code == 3


def test_document_requires_one_family(tmp_path, capsys):
    doc = {"name": "x", "elements": ["a"], "bases": [["a"]], "flats": [[]]}
    path = tmp_path / "double.json"
    path.write_text(json.dumps(doc))
    code, _ = run_cli(capsys, "info", str(path))
    assert code == 3


def test_check_map(tmp_path, capsys):
    doc = {
        "source": "U3,4",
        "target": "funcN",
        "assignment": {"1": "1", "2": "2", "3": "3", "4": "4", "o": "o"},
    }
    path = tmp_path / "map.json"
    path.write_text(json.dumps(doc))
    code, report = run_cli(capsys, "check-map", str(path))
    assert code == 0
    results = report["results"]
    assert results["is_weak"] and results["is_surjective"] and not results["is_strong"]


def test_check_map_rejects_moved_zero(tmp_path, capsys):
    doc = {
        "source": "U2,3",
        "target": "U2,3",
        "assignment": {"1": "1", "2": "2", "3": "3", "o": "1"},
    }
    path = tmp_path / "map.json"
    path.write_text(json.dumps(doc))
    code, _ = run_cli(capsys, "check-map", str(path))
    assert code == 3


def test_represent_and_betti_round_trip(tmp_path, capsys):
    out = tmp_path / "t.json"
    code, report = run_cli(capsys, "represent", "U2,4", "S0", "--out", str(out))
    assert code == 0
    assert report["results"]["betti_constructed"] == {"0": 7}
    assert report["results"]["agreement"] is True
    code, betti_report = run_cli(capsys, "betti", str(out))
    assert code == 0
    assert betti_report["results"]["betti"] == {"0": 7}


def test_represent_with_s1(tmp_path, capsys):
    code, report = run_cli(capsys, "represent", "U2,3", "S1")
    assert code == 0
    assert report["results"]["betti_constructed"] == {"0": 2, "1": 3}


def test_represent_with_custom_template(tmp_path, capsys):
    template = {"vertices": ["1", "2", "3", "4"], "facets": [["1", "2", "3"], ["1", "3", "4"]]}
    path = tmp_path / "delta.json"
    path.write_text(json.dumps(template))
    code, report = run_cli(capsys, "represent", "U2,3", str(path))
    assert code == 0
    assert report["results"]["agreement"] is True


def test_truncate_command(tmp_path, capsys):
    out = tmp_path / "trunc.json"
    code, report = run_cli(capsys, "truncate", "U3,4", "1", "--out", str(out))
    assert code == 0
    assert report["results"]["rank"] == 2
    code, info = run_cli(capsys, "info", str(out))
    assert info["results"]["whitney"] == [1, 4, 3]


def test_verify_selected_suites(capsys):
    code, report = run_cli(capsys, "verify", "--mobius", "--whitney-monotone", "--appendix-demo")
    assert code == 0
    assert report["results"]["passed"] is True
    names = {c["check"] for c in report["results"]["checks"]}
    assert any(name.startswith("mobius") for name in names)
    assert "appendix-demo" in names


def test_verify_functoriality_notes_flat_map_mismatch(capsys):
    code, report = run_cli(capsys, "verify", "--functoriality")
    assert code == 0
    check = report["results"]["checks"][0]
    assert check["details"]["flat_maps_differ_at"] == [["3", "4"]]
