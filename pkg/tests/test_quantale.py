import itertools
import json

import numpy as np
import pytest

from oql.errors import BadSize, LatticeInvalid, LoadError, NotAssociative, NotMonotone, UnitLawFails
from oql.quantale import (BUILTIN_NAMES, FiniteLattice, builtin, chain_lattice, check_residuation_identities,
                          classify, enumerate_quantales, lattice_from_json, quantale_from_json, residuate,
                          verify_quantale)


def lukasiewicz_oracle(n):
    top = n - 1
    tensor = [[max(0, a + b - top) for b in range(n)] for a in range(n)]
    res = [[min(top, top - a + b) for b in range(n)] for a in range(n)]
    return tensor, res


def goedel_oracle(n):
    top = n - 1
    tensor = [[min(a, b) for b in range(n)] for a in range(n)]
    res = [[top if a <= b else b for b in range(n)] for a in range(n)]
    return tensor, res


@pytest.mark.parametrize("n", [3, 4, 5])
def test_lukasiewicz_tables_match_closed_form(n):
    q = builtin(f"lukasiewicz:{n}")
    tensor, res = lukasiewicz_oracle(n)
    assert q.tensor.tolist() == tensor
    assert q.residuation.tolist() == res


@pytest.mark.parametrize("n", [3, 4, 5])
def test_goedel_tables_match_closed_form(n):
    q = builtin(f"goedel:{n}")
    tensor, res = goedel_oracle(n)
    assert q.tensor.tolist() == tensor
    assert q.residuation.tolist() == res


def test_boolean_is_conjunction():
    q = builtin("boolean2")
    assert q.tensor.tolist() == [[0, 0], [0, 1]]
    assert q.residuation.tolist() == [[1, 1], [0, 1]]
    assert residuate(q, "1", "0") == 0


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_residuation_identities_hold(name):
    results = check_residuation_identities(builtin(name))
    assert len(results) == 10
    assert [r.name for r in results if not r.ok] == []


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_residuation_is_the_adjoint(name):
    q = builtin(name)
    le = q.leq
    for a, b, c in itertools.product(range(q.n), repeat=3):
        assert le[q.tensor[a, b], c] == le[b, q.residuation[a, c]]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_classification(n):
    luk = classify(builtin(f"lukasiewicz:{n}")).flags()
    assert luk["mv"] and luk["girard"] and luk["bl"]
    god = classify(builtin(f"goedel:{n}"))
    assert god.bl and not god.girard and not god.mv
    assert "girard" in god.witnesses


def test_nonintegral_classification():
    cls = classify(builtin("nonintegral3"))
    assert not cls.integral
    assert cls.witnesses["integral"] == ("u", "1")


def test_builtin_name_errors():
    with pytest.raises(KeyError):
        builtin("nope")
    with pytest.raises(BadSize):
        builtin("goedel")
    with pytest.raises(BadSize):
        builtin("boolean:3")


def brute_force_chain_quantales(n):
    """Count unital commutative quantales on the n-chain straight from the laws."""
    inner = list(range(1, n))
    cells = [(a, b) for a in inner for b in inner if a <= b]
    count = 0
    for unit in range(n):
        for vals in itertools.product(range(n), repeat=len(cells)):
            t = [[0] * n for _ in range(n)]
            for (a, b), v in zip(cells, vals):
                t[a][b] = t[b][a] = v
            if any(t[unit][x] != x for x in range(n)):
                continue
            monotone = all(t[a][b] <= t[a][b + 1] for a in range(n) for b in range(n - 1))
            assoc = all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))
            count += monotone and assoc
    return count


@pytest.mark.parametrize("n", [2, 3, 4])
def test_enumeration_matches_brute_force(n):
    found = list(enumerate_quantales(chain_lattice(n)))
    assert len(found) == brute_force_chain_quantales(n)
    assert len({q.to_json()["tensor"].__repr__() + str(q.unit) for q in found}) == len(found)


def test_three_chain_carries_the_standard_quantales():
    found = {(q.unit, str(q.tensor.tolist())) for q in enumerate_quantales(chain_lattice(3))}
    expected = {(q.unit, str(q.tensor.tolist())) for q in map(builtin, ["lukasiewicz:3", "goedel:3", "nonintegral3"])}
    assert found == expected


def test_enumeration_on_two_chain_is_boolean():
    (q,) = enumerate_quantales(chain_lattice(2))
    assert q.tensor.tolist() == [[0, 0], [0, 1]]


def test_shards_partition_the_enumeration():
    lat = chain_lattice(4)
    whole = [q.to_json() for q in enumerate_quantales(lat)]
    parts = [q.to_json() for s in range(3) for q in enumerate_quantales(lat, shard=(s, 3))]
    key = lambda d: json.dumps(d, sort_keys=True)  # noqa: E731
    assert sorted(map(key, whole)) == sorted(map(key, parts))


def test_non_associative_four_chain():
    lat = chain_lattice(4, ["0", "a", "b", "1"])
    t = np.zeros((4, 4), dtype=int)
    for i in range(4):
        t[i, 3] = t[3, i] = i
    t[1, 2] = t[2, 1] = 1
    t[2, 2] = 1
    with pytest.raises(NotAssociative) as err:
        verify_quantale(lat, t, "1")
    assert err.value.witness == ("a", "b", "b")


def test_unit_and_monotonicity_failures():
    lat = chain_lattice(3)
    bad_unit = [[0, 0, 0], [0, 1, 1], [0, 1, 1]]
    with pytest.raises(UnitLawFails):
        verify_quantale(lat, bad_unit, 2)
    not_monotone = [[0, 0, 0], [0, 2, 1], [0, 1, 2]]
    with pytest.raises(NotMonotone):
        verify_quantale(lat, not_monotone, 2)


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_json_round_trip(name):
    q = builtin(name)
    back = quantale_from_json(json.loads(json.dumps(q.to_json())))
    assert back.tensor.tolist() == q.tensor.tolist()
    assert back.unit == q.unit
    assert back.names == q.names


def test_lattice_json_errors_name_the_problem():
    with pytest.raises(LoadError, match="unknown element"):
        quantale_from_json({"elements": ["0", "1"], "leq": [["0", "1"]], "unit": "2", "tensor": {}})
    with pytest.raises(LatticeInvalid) as err:
        lattice_from_json({"elements": ["a", "b"], "leq": []})
    assert err.value.witness == ("a", "b")


def test_m3_lattice_from_order():
    names = ["0", "a", "b", "c", "1"]
    pairs = [("0", x) for x in "abc"] + [(x, "1") for x in "abc"]
    lat = FiniteLattice.from_pairs(names, pairs)
    a, b = lat.index("a"), lat.index("b")
    assert lat.names[lat.join[a, b]] == "1"
    assert lat.names[lat.meet[a, b]] == "0"
    assert not lat.is_chain()
