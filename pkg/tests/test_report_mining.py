import json

import pytest

from oql import mining
from oql.budget import Budget
from oql.errors import SizeBound
from oql.quantale import builtin, chain_lattice
from oql.report import Report


def test_failing_check_needs_a_witness():
    rep = Report("t")
    with pytest.raises(ValueError):
        rep.add("x", False)


def test_json_order_is_canonical_and_text_puts_failures_first():
    rep = Report("t")
    rep.add("b-ok", True)
    rep.add("a-fail", False, ("w",))
    rep.skip("c-skip", "budget 10")
    data = json.loads(rep.dumps())
    assert [c["name"] for c in data["checks"]] == sorted(c["name"] for c in data["checks"])
    assert data["summary"] == {"failed": 1, "passed": 1, "skipped": 1, "total": 3}
    body = [line.strip() for line in rep.to_text().splitlines() if line.startswith("  ")]
    assert body[0].startswith("FAIL")


def test_budget_counts_nodes():
    b = Budget(3)
    b.spend(3)
    with pytest.raises(SizeBound) as err:
        b.spend(1, "things")
    assert err.value.limit == 3 and "things" in str(err.value)


def test_suite_on_a_girard_quantale_is_green():
    rep = mining.run_suite(builtin("lukasiewicz:3"), 10**6)
    assert rep.ok, rep.failures
    assert not any(c.skipped for c in rep.checks)


def test_suite_skips_on_budget():
    rep = mining.run_suite(builtin("lukasiewicz:3"), 50, only=["raney-buchi"])
    assert [c.skipped for c in rep.checks] == ["budget 50"]


def test_yoneda_over_all_small_categories():
    rep = mining.yoneda_on_small_categories(builtin("lukasiewicz:3"), 3)
    assert rep.ok
    assert [c.detail["categories"] for c in rep.checks] == [1, 9, 281]


def test_mining_records_a_reproduction(tmp_path, monkeypatch):
    def broken(q, limit):
        def fails():
            r = Report("broken")
            r.add("always", False, (q.name,))
            return r
        return [("broken", fails)]

    monkeypatch.setattr(mining, "_suite", broken)
    path = tmp_path / "repro.json"
    rep = mining.mine([("chain2", chain_lattice(2))], repro_path=path)
    assert not rep.ok
    repro = json.loads(path.read_text())
    assert repro["check"] == "broken/always"
    assert repro["quantale"]["name"] == "chain2/I=1"
    assert rep.stamps["reproduction"] == repro
