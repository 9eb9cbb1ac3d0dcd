import json
import subprocess
import sys
from pathlib import Path

import pytest

from feyncat import graphs
from feyncat.cli import main
from feyncat.finsets import FiberedMap

jsonschema = pytest.importorskip("jsonschema")
from referencing import Registry, Resource  # noqa: E402  (installed with jsonschema)

SCHEMAS = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def load_schema(name):
    return json.loads((SCHEMAS / name).read_text())


def validator(name):
    schemas = [json.loads(p.read_text()) for p in SCHEMAS.glob("*.json")]
    registry = Registry().with_resources((s["$id"], Resource.from_contents(s)) for s in schemas)
    cls = jsonschema.validators.validator_for(load_schema(name))
    return cls(load_schema(name), registry=registry)


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--format", "json", *argv)
    return code, json.loads(out)


@pytest.fixture
def morphism_file(tmp_path):
    G = graphs.aggregate([2, 2])
    H = graphs.aggregate([2])
    phi = next(m for m in graphs.all_morphisms(G, H) if graphs.ghost_graph(m).flags)
    path = tmp_path / "phi.json"
    path.write_text(json.dumps(phi.to_json()))
    return phi, path


# exit codes


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "--bogus")[0] == 2
    assert run(capsys, "finset", "hom", "--cat", "NCSet", "--from", "-1", "--to", "1")[0] == 2
    assert run(capsys, "hopf", "coproduct", "--cat", "FS", "--morphism", "nonsense")[0] == 2
    code, _, err = run(capsys, "graphs", "ghost", "/nonexistent.json")
    assert code == 2 and "cannot read" in err


def test_check_failure_exits_one_with_witness(capsys, tmp_path):
    bad = {"source": {"vertices": [0], "flags": [{"id": 0, "vertex": 0, "iota": 0}]},
           "target": {"vertices": [0], "flags": [{"id": 0, "vertex": 0, "iota": 0}, {"id": 1, "vertex": 0, "iota": 1}]},
           "flag_inj": [[0, 0], [1, 0]], "vertex_surj": [[0, 0]], "ghost_edges": []}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "graphs", "check", str(path))
    assert code == 1 and "invalid morphism" in out


def test_delta_plus_coproduct_exits_one(capsys):
    code, data = run_json(capsys, "hopf", "coproduct", "--cat", "Delta+", "--morphism", "2->1")
    assert code == 1 and data["passed"] is False and "witness" in data


def test_global_flags_before_or_after_subcommand(capsys):
    a = run(capsys, "--bound", "2", "graphs", "enumerate", "--count")
    b = run(capsys, "graphs", "enumerate", "--count", "--bound", "2")
    assert a[0] == b[0] == 0 and a[1] == b[1]
    c = run(capsys, "graphs", "enumerate", "--count", "--bound", "3")
    assert c[1] != a[1]


# values


def test_ncset_count(capsys):
    code, out, _ = run(capsys, "finset", "hom", "--cat", "NCSet", "--from", "3", "--to", "1", "--count")
    assert code == 0 and out.strip() == "6"


def test_plus_gcp_count_matches_ncset(capsys):
    code, out, _ = run(capsys, "plus", "hom", "--level", "gcp", "--from", "2", "--to", "2", "--count")
    assert code == 0 and out.strip() == "6"


def test_kan_extension_has_six_elements(capsys):
    code, data = run_json(capsys, "ops", "kan", "--g", "S3", "--h", "Z2")
    assert code == 0 and data["kan"] == data["induced"] == 6


def test_free_operad_counts(capsys):
    code, out, _ = run(capsys, "ops", "free", "--gen", "2:1", "--upto", "5", "--count")
    assert code == 0 and "14" in out


def test_monoid_ops_pass(capsys):
    code, out, _ = run(capsys, "--bound", "2", "ops", "monoids", "--flavor", "FS", "NCSet")
    assert code == 0 and "PASS" in out


def test_axioms_pass(capsys):
    code, out, _ = run(capsys, "--bound", "3", "axioms", "--cat", "NCSet")
    assert code == 0 and "PASS" in out


def test_transform_checks(capsys):
    assert run(capsys, "--bound", "3", "transform", "dsquared")[0] == 0
    code, data = run_json(capsys, "--seed", "3", "transform", "master", "--trials", "5", "--arity", "3")
    assert code == 0 and data["passed"]


def test_antipode_and_hopf_check(capsys):
    assert run(capsys, "hopf", "antipode", "--cat", "OS")[0] == 0
    assert run(capsys, "--bound", "3", "hopf", "check", "--cat", "FS")[0] == 0


def test_glue_counts(capsys):
    code, data = run_json(capsys, "wconstruct", "glue")
    assert code == 0
    assert tuple(data["counts"]) == (9, 12, 4)


def test_associahedron_formats(capsys):
    code, data = run_json(capsys, "wconstruct", "associahedron", "--n", "4")
    assert code == 0 and len(data["cells"]) == 31
    validator("cubical.v1.json").validate(data)
    code, out, _ = run(capsys, "--format", "off", "wconstruct", "associahedron", "--n", "4")
    assert code == 0 and out.startswith("OFF")
    assert run(capsys, "--format", "off", "wconstruct", "associahedron", "--n", "5")[0] == 2


# JSON documents against the schemas


def test_graph_documents_validate(capsys):
    code, data = run_json(capsys, "--bound", "3", "graphs", "enumerate")
    assert code == 0 and data
    v = validator("graph.v1.json")
    for doc in data:
        v.validate(doc)
        assert graphs.Graph.from_json(doc).to_json() == doc


def test_morphism_documents_validate_and_round_trip(capsys, morphism_file):
    phi, path = morphism_file
    v = validator("morphism.v1.json")
    v.validate(phi.to_json())
    assert graphs.GraphMorphism.from_json(phi.to_json()) == phi
    code, data = run_json(capsys, "graphs", "compose", str(path), str(_identity_file(path, phi)))
    assert code == 0
    v.validate(data)
    assert graphs.GraphMorphism.from_json(data) == phi
    code, ghost = run_json(capsys, "graphs", "ghost", str(path))
    assert code == 0
    validator("graph.v1.json").validate(ghost)
    assert run(capsys, "graphs", "check", str(path))[0] == 0


def _identity_file(path, phi):
    ident = path.with_name("ident.json")
    ident.write_text(json.dumps(graphs.identity(phi.target).to_json()))
    return ident


def test_check_reads_stdin(monkeypatch, capsys):
    import io

    doc = graphs.aggregate([2]).to_json()
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(doc)))
    code, out, _ = run(capsys, "graphs", "check", "-")
    assert code == 0 and "valid graph" in out


def test_fibered_map_documents_validate(capsys):
    code, data = run_json(capsys, "finset", "hom", "--cat", "NCSet", "--from", "3", "--to", "2", "--list")
    assert code == 0
    v = validator("fibered-map.v1.json")
    for doc in data:
        v.validate(doc)
        phi = FiberedMap(doc["source"], doc["target"], tuple(doc["f"]), tuple(map(tuple, doc["orders"])))
        assert phi.source == 3


def test_linear_combinations_validate(capsys):
    code, data = run_json(capsys, "hopf", "coproduct", "--cat", "OS", "--morphism", "2+1")
    assert code == 0
    validator("linear-combination.v1.json").validate(data["coproduct"])
    code, data = run_json(capsys, "transform", "ft", "--upto", "4", "--emit-differential")
    assert code == 0
    v = validator("linear-combination.v1.json")
    for arity in data["arities"].values():
        for row in arity["differential"]:
            v.validate(row["d"])


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "feyncat", "finset", "hom", "--cat", "FinSet", "--from", "3", "--to", "2", "--count"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "8"
