import itertools

import numpy as np
import pytest

from oql import cd, ocat, olat, structure
from oql.errors import NotAnOperator
from oql.quantale import builtin


def brute_subalgebras(L):
    """Subsets with bottom and top closed under binary joins, meets, tensors and cotensors."""
    q = L.quantale
    inner = [x for x in range(L.n) if x not in (L.bottom, L.top)]
    out = []
    for r in range(len(inner) + 1):
        for extra in itertools.combinations(inner, r):
            S = {L.bottom, L.top, *extra}
            closed = all(L.join[a, b] in S and L.meet[a, b] in S for a in S for b in S) and \
                all(L.tensor[al, a] in S and L.cotensor[al, a] in S for al in range(q.n) for a in S)
            if closed:
                out.append(tuple(sorted(S)))
    return sorted(out)


def brute_kernels(L):
    """Deflationary idempotent maps preserving binary joins, bottom and tensors."""
    q = L.quantale
    out = []
    for k in itertools.product(range(L.n), repeat=L.n):
        k = np.array(k)
        if not all(L.leq[k[x], x] for x in range(L.n)):
            continue
        if not (k[k] == k).all() or k[L.bottom] != L.bottom:
            continue
        if not (k[L.join] == L.join[k[:, None], k[None, :]]).all():
            continue
        if not all(k[L.tensor[al, x]] == L.tensor[al, k[x]] for al in range(q.n) for x in range(L.n)):
            continue
        out.append(tuple(int(v) for v in k))
    return sorted(out)


LATTICES = {
    "Omega[boolean2]": lambda: olat.omega_lattice(builtin("boolean2")),
    "Omega[lukasiewicz3]": lambda: olat.omega_lattice(builtin("lukasiewicz:3")),
    "Omega[goedel3]": lambda: olat.omega_lattice(builtin("goedel:3")),
    "Omega[nonintegral3]": lambda: olat.omega_lattice(builtin("nonintegral3")),
    "down-sets of chain2": lambda: olat.presheaf_lattice(ocat.chain_category(builtin("boolean2"), 2)),
    "boolean square": lambda: olat.product([olat.omega_lattice(builtin("boolean2"))] * 2).lattice,
}


@pytest.mark.parametrize("key", sorted(LATTICES))
def test_subalgebras_match_brute_force(key):
    L = LATTICES[key]()
    assert sorted(structure.enumerate_subalgebras(L)) == brute_subalgebras(L)


@pytest.mark.parametrize("key", sorted(LATTICES))
def test_kernels_match_brute_force(key):
    L = LATTICES[key]()
    assert sorted(k.map for k in structure.enumerate_kernels(L)) == brute_kernels(L)


@pytest.mark.parametrize("key, subalgebras, kernels", [
    ("Omega[boolean2]", 1, 2), ("Omega[lukasiewicz3]", 1, 2), ("Omega[goedel3]", 1, 3), ("Omega[nonintegral3]", 2, 2),
])
def test_operator_counts(key, subalgebras, kernels):
    L = LATTICES[key]()
    assert len(structure.enumerate_subalgebras(L)) == subalgebras
    assert len(structure.enumerate_closures(L)) == subalgebras
    assert len(structure.enumerate_kernels(L)) == kernels


@pytest.mark.parametrize("key", sorted(LATTICES))
def test_bijections(key):
    L = LATTICES[key]()
    assert structure.closure_bijection_check(L).ok
    assert structure.kernel_bijection_check(L).ok


def test_nonintegral_two_element_subalgebra():
    L = LATTICES["Omega[nonintegral3]"]()
    sub = (L.index("0"), L.index("1"))
    rep = structure.is_subalgebra(L, sub)
    assert rep.ok
    assert rep.stamps["sups_and_infs"] and rep.stamps["closed_under_operations"] and rep.stamps["both_adjoints"]
    assert structure.subalgebra_verdict(L, sub)


def test_missing_top_is_not_a_subalgebra():
    L = LATTICES["Omega[lukasiewicz3]"]()
    assert not structure.subalgebra_verdict(L, (L.index("0"), L.index("u")))


def test_lukasiewicz_zero_one_is_not_a_subalgebra():
    L = LATTICES["Omega[lukasiewicz3]"]()
    assert not structure.subalgebra_verdict(L, (L.index("0"), L.index("1")))


def test_constant_top_is_not_cocontinuous():
    L = LATTICES["Omega[boolean2]"]()
    with pytest.raises(NotAnOperator):
        structure.closure_operator(L, [L.top] * L.n)


def test_boolean_square_quotients():
    L = LATTICES["boolean square"]()
    sizes = sorted(Q.lattice.n for Q in structure.enumerate_quotients(L))
    assert sizes == [1, 2, 2, 4]


def test_quotient_of_kernel_round_trip():
    L = LATTICES["down-sets of chain2"]()
    for k in structure.enumerate_kernels(L):
        Q = structure.quotient_of_kernel(k)
        assert Q.report.ok
        back = structure.kernel_of_quotient(L, Q.lattice, Q.qmap)
        assert back.map == k.map


def test_set_partition_counts():
    # Bell numbers
    assert [sum(1 for _ in structure.set_partitions(n)) for n in range(6)] == [1, 1, 2, 5, 15, 52]


@pytest.mark.parametrize("key", ["Omega[boolean2]", "Omega[lukasiewicz3]", "down-sets of chain2"])
def test_raney_buchi(key):
    L = LATTICES[key]()
    rb = structure.raney_buchi(L)
    assert rb.report.ok, rb.report.failures
    S = olat.sup_many(L, rb.down.table)
    assert S.tolist() == list(range(L.n))


def test_subalgebra_and_quotient_are_cd():
    L = LATTICES["boolean square"]()
    for sub in structure.enumerate_subalgebras(L):
        _, rep = structure.subalgebra_cd(L, sub)
        assert rep.ok
    for Q in structure.enumerate_quotients(L):
        _, rep = structure.quotient_cd(L, Q.lattice, Q.qmap)
        assert rep.ok


def test_left_adjoint_lattice_sizes():
    q = builtin("boolean2")
    O = olat.omega_lattice(q)
    Lft, rep = structure.left_adjoint_lattice(O, O)
    assert rep.ok and Lft.n == 2
    maps = sorted(tuple(p) for p in Lft.cat.points)
    assert maps == [(0, 0), (0, 1)]
    O3 = olat.omega_lattice(builtin("lukasiewicz:3"))
    assert structure.left_adjoint_lattice(O3, O3)[0].n == 3


def test_left_adjoints_into_terminal_source():
    q = builtin("boolean2")
    T = olat.terminal_lattice(q)
    O = olat.omega_lattice(q)
    # a left adjoint out of a one-point lattice sends it to bottom
    Lft, _ = structure.left_adjoint_lattice(T, O)
    assert Lft.n == 1


def test_left_adjoint_kernel_on_boolean():
    O = olat.omega_lattice(builtin("boolean2"))
    k, Q, rep = structure.left_adjoint_kernel(O, O)
    assert rep.ok, rep.failures
    assert k.map == (0, 1, 1)
    assert Q.classes == ((0,), (1, 2))


def test_left_adjoint_kernel_on_two_chain():
    q = builtin("boolean2")
    A = olat.certify_complete(ocat.chain_category(q, 2))
    k, Q, rep = structure.left_adjoint_kernel(A, A)
    assert rep.ok, rep.failures
    assert Q.lattice.n == 2


def test_adjoint_duality_counts():
    assert structure.right_adjoint_duality(LATTICES["Omega[boolean2]"](), LATTICES["Omega[boolean2]"]()).stamps["adjunctions"] == 2
    L3 = LATTICES["Omega[lukasiewicz3]"]()
    rep = structure.right_adjoint_duality(L3, L3)
    assert rep.ok and rep.stamps["adjunctions"] == 3


def test_cd_of_quotients_uses_transport():
    L = LATTICES["boolean square"]()
    D = cd.downarrow(L)
    for Q in structure.enumerate_quotients(L):
        op, rep = structure.quotient_cd(L, Q.lattice, Q.qmap, down=D)
        assert rep.ok
        assert op.table.shape == (Q.lattice.n, Q.lattice.n)
