import itertools

import numpy as np
import pytest

from oql import cd, ocat, olat
from oql.errors import NotCD
from oql.quantale import BUILTIN_NAMES, FiniteLattice, builtin


def boolean_lattice_from_order(names, pairs):
    lat = FiniteLattice.from_pairs(names, pairs)
    q = builtin("boolean2")
    A = ocat.check_category(q, lat.names, lat.leq.astype(int), "custom")
    return olat.certify_complete(A)


def classical_totally_below(L):
    """x << a iff every subset whose join is above a has a member above x."""
    n = L.n
    below = np.zeros((n, n), dtype=bool)
    subsets = [s for r in range(n + 1) for s in itertools.combinations(range(n), r)]
    joins = [L.join_all(s) for s in subsets]
    for a, x in itertools.product(range(n), repeat=2):
        below[a, x] = all(any(L.leq[x, s] for s in S) for S, j in zip(subsets, joins) if L.leq[a, j])
    return below


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_canonical_omega_downarrow_is_closed_form(name):
    q = builtin(name)
    L = olat.omega_lattice(q)
    assert cd.is_cd(L).ok
    D = cd.downarrow(L)
    expected = [[q.tensor[x, q.residuation[t, q.unit]] for t in range(q.n)] for x in range(q.n)]
    assert D.table.tolist() == expected
    assert D.certificate["matches_closed_form"]
    assert cd.interpolate_check(D).ok


@pytest.mark.parametrize("builder", [
    lambda q: olat.presheaf_lattice(ocat.chain_category(q, 2)),
    lambda q: olat.presheaf_lattice(ocat.chain_category(q, 3)),
    lambda q: olat.product([olat.omega_lattice(q)] * 2, q).lattice,
    lambda q: olat.presheaf_lattice(ocat.discrete(q, 2)),
])
def test_boolean_downarrow_is_classical_totally_below(builder):
    L = builder(builtin("boolean2"))
    D = cd.downarrow(L)
    assert np.array_equal(D.table.astype(bool), classical_totally_below(L))


def test_m3_is_not_cd():
    names = ["0", "a", "b", "c", "1"]
    L = boolean_lattice_from_order(names, [("0", x) for x in "abc"] + [(x, "1") for x in "abc"])
    res = cd.is_cd(L)
    assert not res.ok and res.failed == "sup-preserves-binary-meets"
    with pytest.raises(NotCD):
        cd.downarrow(L)
    ok, w = cd.classical_cd(cd.underlying_lattice(L))
    assert not ok and w == ("a", "b", "c")


def test_n5_is_not_cd():
    names = ["0", "a", "b", "c", "1"]
    pairs = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")]
    L = boolean_lattice_from_order(names, pairs)
    assert not cd.is_cd(L).ok
    assert not cd.classical_cd(cd.underlying_lattice(L))[0]


def test_fibre_route_agrees_with_pairwise_route():
    L = olat.presheaf_lattice(ocat.chain_category(builtin("lukasiewicz:3"), 2))
    V = ocat.enumerate_presheaves(L.cat, ocat.LOWER)
    pairwise = cd.is_cd(L, presheaves=V)
    fibre = cd.is_cd(L, budget=1, presheaves=V)
    assert pairwise.route == "pairwise-meets"
    assert fibre.route == "fibre-minimum"
    assert pairwise.ok == fibre.ok


@pytest.mark.parametrize("name", ["boolean2", "lukasiewicz:3"])
def test_direct_search_agrees(name):
    L = olat.omega_lattice(builtin(name))
    assert cd.direct_agreement_check(L).ok


@pytest.mark.parametrize("name", ["boolean2", "lukasiewicz:3"])
@pytest.mark.parametrize("cat", ["terminal", "chain2", "discrete3"])
def test_presheaf_downarrow(name, cat):
    q = builtin(name)
    A = {"terminal": ocat.terminal(q), "chain2": ocat.chain_category(q, 2), "discrete3": ocat.discrete(q, 3)}[cat]
    _, rep = cd.presheaf_downarrow(A)
    assert rep.ok, rep.failures


def test_discrete_one_downarrow_is_constant():
    q = builtin("lukasiewicz:3")
    D, _ = cd.presheaf_downarrow(ocat.discrete(q, 1))
    # objects of [1^op, Omega] are the elements of Omega; down(a) is constantly a
    assert D.table.tolist() == [[a] * q.n for a in range(q.n)]


@pytest.mark.parametrize("name", ["boolean2", "lukasiewicz:3"])
def test_product_downarrow(name):
    q = builtin(name)
    O = olat.omega_lattice(q)
    _, rep = cd.product_downarrow([O, O], q)
    assert rep.ok, rep.failures


def test_empty_product_downarrow_is_zero():
    q = builtin("lukasiewicz:3")
    D, rep = cd.product_downarrow([], q)
    assert rep.ok
    # the single point is bottom, so down(*) is the zero presheaf
    assert D.table.tolist() == [[q.bottom]]


def test_classical_transfer():
    for name in ["boolean2", "lukasiewicz:3", "goedel:3"]:
        q = builtin(name)
        assert cd.check_classical_transfer(q, cd.default_corpus(q)).ok


def test_downarrow_json_uses_names():
    D = cd.downarrow(olat.omega_lattice(builtin("boolean2")))
    assert D.to_json() == {"0": {"0": "0", "1": "0"}, "1": {"0": "1", "1": "1"}}
