import json
from pathlib import Path

import pytest

from orbitlift.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"
EX14 = str(DATA / "example14.json")
REGULAR = str(DATA / "sl2_regular.json")


def run(tmp_path, *argv):
    out = tmp_path / "report.jsonl"
    code = main(list(argv) + ["--output", str(out)])
    text = out.read_text()
    return code, text, [json.loads(line) for line in text.splitlines()]


def by_id(records):
    return {r["id"]: r for r in records}


def test_validate_example(tmp_path):
    code, _, recs = run(tmp_path, "validate", "--input", EX14)
    assert code == 0
    assert all(r["status"] == "pass" for r in recs)
    assert by_id(recs)["info.dim/partition-of-14"]["value"] == 14


def test_lift_regular(tmp_path):
    code, _, recs = run(tmp_path, "lift", "--input", REGULAR, "--dim-vtilde", "3")
    assert code == 0
    recs = by_id(recs)
    assert recs["info.lifted_partition/two-one"]["value"] == [3]
    assert recs["dualpair.moment_lift/two-one"]["status"] == "pass"


def test_report_shape(tmp_path):
    _, text, recs = run(tmp_path, "triple", "--input", EX14)
    ids = [r["id"] for r in recs]
    assert ids == sorted(ids)
    for r in recs:
        assert {"id", "paper_anchor", "status"} <= set(r) <= {"id", "paper_anchor", "status", "witness", "value"}
        assert r["status"] in ("pass", "fail")
    assert text.endswith("\n")


def test_dims(tmp_path):
    code, _, recs = run(tmp_path, "dims", "--input", EX14)
    assert code == 0
    recs = by_id(recs)
    assert recs["info.dim_V/partition-of-14"]["value"] == 14
    assert recs["info.dim_Vtilde/partition-of-14"]["value"] == 21


def test_moment(tmp_path):
    out = tmp_path / "m.json"
    assert main(["moment", "--input", REGULAR, "--output", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["T"] == [[["1"], ["0"]], [["0"], ["1/2"]], [["0"], ["0"]]]
    assert all(doc["checks"].values())


def test_failed_invariant_exits_one(tmp_path):
    code, _, recs = run(tmp_path, "lift", "--input", EX14, "--dim-vtilde", "20")
    assert code == 1
    failed = [r for r in recs if r["status"] == "fail"]
    assert failed and all("witness" in r for r in failed)


@pytest.mark.parametrize("doc", [
    {"rows": [{"t": 2}]},
    {"epsilon": 3, "rows": []},
    {"epsilon": 1, "rows": [{"t": 1, "mult": 2, "eps": 1, "gram": [[["1"]]]}]},
    [1, 2],
])
def test_schema_errors_exit_two(tmp_path, doc):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert main(["validate", "--input", str(bad)]) == 2


def test_unreadable_input_exits_two(tmp_path):
    assert main(["validate", "--input", str(tmp_path / "missing.json")]) == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert main(["validate", "--input", str(broken)]) == 2


def test_verify_all_small(tmp_path):
    code, text, recs = run(tmp_path, "verify-all", "--seed", "3", "--samples", "10", "--max-part", "4",
                           "--pool-size", "3")
    assert code == 0
    kinds = {r["id"].split("/")[0] for r in recs}
    assert {"sl2.alpha_gamma_hom", "dualpair.alpha_T_hom", "dualpair.phi_T", "dualpair.stable_range",
            "tableaux.admissible", "dualpair.sigma"} <= kinds


def test_verify_all_seed_changes_nothing_on_pass(tmp_path):
    a = run(tmp_path, "verify-all", "--seed", "1", "--samples", "5", "--max-part", "3", "--pool-size", "3")
    b = run(tmp_path, "verify-all", "--seed", "2", "--samples", "5", "--max-part", "3", "--pool-size", "3")
    assert a[0] == b[0] == 0
    assert a[1] == b[1]


def test_verify_all_on_input_corpus(tmp_path):
    corpus = tmp_path / "corpus.json"
    docs = [json.loads(Path(p).read_text()) for p in (EX14, REGULAR)]
    corpus.write_text(json.dumps({"tableaux": docs}))
    code, _, recs = run(tmp_path, "verify-all", "--input", str(corpus), "--samples", "5")
    assert code == 0
    assert "sl2.relations/partition-of-14" in by_id(recs)
