import json
import os

import pytest

import tgc


CORPUS = os.environ.get("TGC_CORPUS_DIR", "corpus")
DATA = os.environ.get("TGC_DATA_DIR", "tests/data")


@pytest.fixture(scope="module")
def ws():
    return tgc.Workspace([CORPUS])


def test_version():
    assert tgc.__version__ == "0.1.0"


def test_check(ws):
    assert ws.ok
    report = ws.check()
    assert report["exit_code"] == 0
    assert report["status"] == "ok"
    assert len(report["theories"]) == 5
    names = [t["id"] for t in report["theories"]]
    assert names == sorted(names)
    assert "Monoid" in names
    assert len(report["morphisms"]) == 6
    assert all(m["verified"] for m in report["morphisms"])
    assert {c["status"] for c in report["checks"]} == {"success"}
    assert {d["established"] for d in report["docs"]} == {True}


def test_paths(ws):
    report = ws.paths("Ring", max_depth=1)
    assert report["exit_code"] == 0
    assert [p["edges"] for p in report["paths"]] == [["AddMon"], ["MulMon"]]


def test_transport(ws):
    report = ws.transport("Monoid", "id_unique", via=["MulMon"])
    assert report["exit_code"] == 0
    assert report["name"] == "id_unique_via_MulMon"
    assert report["formula"] == "forall u:R. (forall x:R. mul(u,x) = x) -> u = one"
    assert not report["duplicate"]

    dup = ws.transport("Monoid", "id_unique", via=["AddMon"])
    assert dup["duplicate"]
    assert dup["name"] == "add_id_unique"


def test_transport_partial_path():
    bad = tgc.Workspace([CORPUS, os.path.join(DATA, "bad", "badmon.tg")])
    assert bad.ok  # a partial morphism is a warning, not an error
    refused = bad.transport("Monoid", "id_unique", via=["BadMon"])
    assert refused["exit_code"] == 1

    allowed = bad.transport(
        "Monoid", "id_unique", via=["BadMon"], allow_partial=True
    )
    assert allowed["exit_code"] == 0
    assert allowed["partial"]


def test_crosscheck(ws):
    report = ws.crosscheck()
    assert report["totals"] == {"success": 4, "failure": 0, "pending": 0}
    one = ws.crosscheck(id="cc_struct")
    assert [c["id"] for c in one["checks"]] == ["cc_struct"]


def test_in_memory_source_and_diagnostics():
    bad = tgc.Workspace(source="theory T { sort S; axiom a : P(x); }")
    assert not bad.ok
    assert any("E-" in d for d in bad.diagnostics)

    good = tgc.Workspace(
        source="theory T { sort S; func c : S; axiom a : c = c; }"
    )
    assert good.ok
    report = good.check()
    assert report["exit_code"] == 0
    assert report["theories"][0]["axioms"] == ["a"]


def test_format_source_round_trip():
    src = 'theory   T{sort S;func c:S;axiom a:c=c;}'
    formatted = tgc.format_source("<mem>", src)
    assert formatted == tgc.format_source("<mem>", formatted)
    assert "theory T {" in formatted

    with pytest.raises(ValueError):
        tgc.format_source("<mem>", "theory {")


def test_report_is_json_stable(ws):
    a = ws.check()
    b = ws.check()
    a.pop("exit_code")
    b.pop("exit_code")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
