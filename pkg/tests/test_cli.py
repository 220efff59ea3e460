import json
import shutil

import pytest
from click.testing import CliRunner

from magic4 import battery
from magic4.cli import main
from magic4.data import DEFAULT_DIR


def run(*args):
    return CliRunner().invoke(main, list(args))


def _fixture_copy(tmp_path):
    d = tmp_path / "fx"
    shutil.copytree(DEFAULT_DIR, d)
    return d


def test_registry_is_well_formed():
    names = [c.name for c in battery.REGISTRY]
    assert len(names) == len(set(names))
    assert {c.suite for c in battery.REGISTRY} == set(battery.SUITES)
    for c in battery.REGISTRY:
        assert all(d in battery.BY_NAME for d in c.deps)


def test_selection_pulls_in_dependencies():
    chosen = {c.name for c in battery.select(["degree"])}
    assert {"U_factorization", "xi_iota_lemma", "P_relations"} <= chosen
    assert {c.name for c in battery.select(["pauli"])} == {c.name for c in battery.REGISTRY if c.suite == "pauli"}
    with pytest.raises(ValueError):
        battery.select(["nope"])


def test_pauli_suite_passes():
    r = run("verify", "pauli")
    assert r.exit_code == 0, r.output
    assert "11 passed, 0 failed" in r.output


def test_ktheory_suite_runs_only_its_checks():
    r = run("verify", "ktheory", "--cone-bound", "6", "--json", "-", "--no-timing")
    assert r.exit_code == 0, r.output
    reports = json.loads(r.stdout)
    assert {x["suite"] for x in reports} == {"ktheory"}
    assert all(x["status"] == "pass" for x in reports)
    assert all("elapsed" not in x for x in reports)
    cone = next(x for x in reports if x["name"] == "positive_cone")
    assert cone["data"]["height_bound"] == 6


def test_json_is_deterministic_modulo_timing(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        r = run("verify", "geometry", "--samples", "3000", "--seed", "42", "--json", str(path), "--no-timing")
        assert r.exit_code == 0, r.output
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_degree_reports_are_reproducible():
    a = run("verify", "--suite", "degree", "--samples", "4000", "--seed", "42", "--json", "-", "--no-timing")
    b = run("verify", "--suite", "degree", "--samples", "4000", "--seed", "42", "--json", "-", "--no-timing")
    assert a.exit_code == 0 and a.stdout == b.stdout
    data = {x["name"]: x for x in json.loads(a.stdout)}
    assert data["degree_w"]["data"]["w"]["snapped"] == 1


def test_missing_fixture_is_a_configuration_error(tmp_path):
    d = _fixture_copy(tmp_path)
    (d / "eta.csv").unlink()
    r = run("verify", "pauli", "--fixtures", str(d))
    assert r.exit_code == 2
    assert "configuration error" in r.output


def test_malformed_fixture_is_a_configuration_error(tmp_path):
    d = _fixture_copy(tmp_path)
    (d / "exp_map.csv").write_text("garbage\n1,x\n")
    r = run("verify", "ktheory", "--fixtures", str(d))
    assert r.exit_code == 2


def test_corrupted_table_is_a_reference_discrepancy(tmp_path):
    d = _fixture_copy(tmp_path)
    path = d / "epsilon.csv"
    lines = path.read_text().splitlines()
    lines[2] = lines[2].replace("-1", "1", 1)
    path.write_text("\n".join(lines) + "\n")
    r = run("verify", "pauli", "--fixtures", str(d), "--json", "-")
    assert r.exit_code == 1
    reports = {x["name"]: x for x in json.loads(r.stdout)}
    bad = reports["epsilon_table"]
    assert bad["status"] == "fail" and bad["category"] == "reference discrepancy"
    assert "eps(2,2)" in bad["witness"]


def test_failed_dependency_skips_dependents(tmp_path):
    d = _fixture_copy(tmp_path)
    path = d / "exp_map.csv"
    lines = path.read_text().splitlines()
    cells = lines[1].split(",")
    cells[1] = str(1 - int(cells[1]))
    lines[1] = ",".join(cells)
    path.write_text("\n".join(lines) + "\n")
    r = run("verify", "ktheory", "--fixtures", str(d), "--json", "-", "--no-timing")
    assert r.exit_code == 1
    reports = {x["name"]: x for x in json.loads(r.stdout)}
    assert reports["delta_table"]["status"] == "fail"
    assert reports["certify_kb"]["status"] == "skipped"
    assert reports["positive_cone"]["status"] == "skipped"


def test_report_order_is_canonical():
    ctx = battery.Context(samples=2000)
    reps = battery.run_checks(battery.select(["pauli", "geometry"]), ctx)
    assert [(r.suite, r.name) for r in reps] == sorted((r.suite, r.name) for r in reps)


def test_help_lists_flags():
    r = run("verify", "--help")
    for flag in ("--suite", "--samples", "--seed", "--cone-bound", "--json", "--fixtures"):
        assert flag in r.output
