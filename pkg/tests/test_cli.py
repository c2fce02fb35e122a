import json

from qktw.cli import run
from qktw.graph import petersen_graph
from qktw.treedec import pace_write_gr


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_verdict_command(capsys):
    code, payload = run_json(capsys, ["verdict", "-q", "2", "-n", "4", "-k", "2", "-t", "1"])
    assert code == 0
    assert payload["formula_value"] == "27"
    assert payload["applicable"] == ["K421"]


def test_verdict_bad_params(capsys):
    assert run(["verdict", "-q", "6", "-n", "4", "-k", "2", "-t", "1"]) == 2
    assert run(["verdict", "-q", "2", "-n", "4", "-k", "2", "-t", "2"]) == 2


def test_gen_and_files(tmp_path, capsys):
    out = tmp_path / "g.gr"
    code = run(["gen", "-q", "2", "-n", "4", "-k", "2", "-t", "1", "-o", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "p tw 35 280"
    labels = (tmp_path / "g.gr.labels").read_text().splitlines()
    assert len(labels) == 35
    assert labels[0].startswith("1 ")


def test_gen_is_deterministic(tmp_path, capsys):
    a = tmp_path / "a.gr"
    b = tmp_path / "b.gr"
    run(["gen", "-q", "2", "-n", "4", "-k", "2", "-t", "1", "-o", str(a)])
    run(["gen", "-q", "2", "-n", "4", "-k", "2", "-t", "1", "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_gen_quadric(tmp_path, capsys):
    out = tmp_path / "q.gr"
    code = run(["gen", "--quadric", "-q", "2", "-o", str(out)])
    assert code == 0
    assert out.read_text().splitlines()[0] == "p tw 35 280"
    labels = (tmp_path / "q.gr.labels").read_text().splitlines()
    assert len(labels) == 35 and "," in labels[0]


def test_gen_size_limit(tmp_path, capsys):
    out = tmp_path / "g.gr"
    code = run(
        ["gen", "-q", "2", "-n", "4", "-k", "2", "-t", "1", "-o", str(out), "--cap", "10"]
    )
    assert code == 3


def test_td_build_and_validate(tmp_path, capsys):
    gr = tmp_path / "g.gr"
    td = tmp_path / "g.td"
    code = run(
        ["td-build", "-q", "2", "-n", "4", "-k", "2", "-t", "1", "-o", str(td), "--gr", str(gr)]
    )
    assert code == 0
    assert td.read_text().splitlines()[0] == "s td 8 28 35"
    capsys.readouterr()
    code, payload = run_json(capsys, ["td-validate", str(gr), str(td)])
    assert code == 0
    assert payload["valid"] and payload["width"] == 27


def test_td_validate_catches_breakage(tmp_path, capsys):
    gr = tmp_path / "g.gr"
    td = tmp_path / "g.td"
    run(["td-build", "-q", "2", "-n", "4", "-k", "2", "-t", "1", "-o", str(td), "--gr", str(gr)])
    capsys.readouterr()
    # drop one bag line's vertices: edge coverage must now fail
    lines = td.read_text().splitlines()
    lines[2] = "b 2"
    td.write_text("\n".join(lines) + "\n")
    code, payload = run_json(capsys, ["td-validate", str(gr), str(td)])
    assert code == 1
    assert not payload["valid"]


def test_td_validate_parse_error(tmp_path, capsys):
    gr = tmp_path / "g.gr"
    td = tmp_path / "bad.td"
    pace_write_gr(petersen_graph(), gr)
    td.write_text("s td nonsense\n")
    assert run(["td-validate", str(gr), str(td)]) == 2


def test_tw_exact_command(tmp_path, capsys):
    gr = tmp_path / "pet.gr"
    pace_write_gr(petersen_graph(), gr)
    code, payload = run_json(capsys, ["tw-exact", str(gr)])
    assert code == 0
    assert payload["treewidth"] == 4
    capsys.readouterr()
    assert run(["tw-exact", str(gr), "--max-vertices", "5"]) == 3


def test_alpha_command(capsys):
    code, payload = run_json(capsys, ["alpha", "-q", "2", "-n", "4", "-k", "2", "-t", "1"])
    assert code == 0
    assert payload["formula"] == "7" and payload["exact"] == "7" and payload["agree"]
    capsys.readouterr()
    code, payload = run_json(
        capsys, ["alpha", "-q", "2", "-n", "4", "-k", "2", "-t", "1", "--max-vertices", "10"]
    )
    assert code == 0
    assert payload["exact"] is None and not payload["within_budget"]


def test_verify_grid(capsys):
    code, payload = run_json(capsys, ["verify", "grid", "-q", "2"])
    assert code == 0
    assert payload["suite"] == "grid"
    assert payload["cases"][0]["lhs"] == "6"
    assert payload["summary"]["failed"] == 0


def test_verify_bridge_writes_report(tmp_path, capsys):
    out = tmp_path / "bridge.json"
    code, payload = run_json(capsys, ["verify", "bridge", "-o", str(out)])
    assert code == 0
    assert payload["summary"] == {"total": 27, "passed": 27, "failed": 0}
    assert json.loads(out.read_text()) == payload


def test_verify_census_claims_flag(capsys):
    code, payload = run_json(
        capsys, ["verify", "perp-census", "-q", "2", "--claims", "i,iv"]
    )
    assert code == 0
    assert [c["params"]["claim"] for c in payload["cases"]] == ["i", "iv"]


def test_verify_parabola_renders_huge_exact_values(capsys):
    # the 4th-power tail majorants have thousands of digits; the JSON
    # report must still round-trip
    code, payload = run_json(capsys, ["verify", "parabola"])
    assert code == 0
    assert payload["summary"] == {"total": 200, "passed": 200, "failed": 0}
    assert any(len(c["lhs"]) > 4300 for c in payload["cases"])


def test_verify_unknown_suite_is_usage_error(capsys):
    assert run(["verify", "nonsense"]) == 2


def test_threads_env_is_honored(capsys, monkeypatch):
    monkeypatch.setenv("QKTW_THREADS", "2")
    code, payload = run_json(capsys, ["verify", "bridge"])
    assert code == 0 and payload["summary"]["failed"] == 0
    monkeypatch.setenv("QKTW_THREADS", "0")
    assert run(["verify", "bridge"]) == 2
