import itertools

import numpy as np
import pytest

from oql import ocat, olat
from oql.errors import NotAntisymmetric, OQLError
from oql.quantale import BUILTIN_NAMES, builtin


def brute_sup(L, phi):
    """sup phi is the least x with phi(y) <= L(y, x) for all y (a lower bound test done by hand)."""
    q = L.quantale
    upper = [x for x in range(L.n) if all(q.leq[phi[y], L.hom[y, x]] for y in range(L.n))]
    least = [x for x in upper if all(L.leq[x, z] for z in upper)]
    return least[0]


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_canonical_omega_is_complete(name):
    L = olat.omega_lattice(builtin(name))
    assert L.n == builtin(name).n
    assert olat.verify_lattice_laws(L).ok
    assert olat.sup_coherence_check(L).ok


def test_sup_matches_hand_computation():
    q = builtin("lukasiewicz:3")
    L = olat.presheaf_lattice(ocat.chain_category(q, 2))
    V = ocat.enumerate_presheaves(L.cat, ocat.LOWER)
    sups = olat.sup_many(L, V)
    assert [brute_sup(L, phi) for phi in V] == sups.tolist()


def test_tensor_and_cotensor_characterisation():
    q = builtin("goedel:3")
    L = olat.omega_lattice(q)
    R = q.residuation
    for alpha, x, y in itertools.product(range(q.n), repeat=3):
        # L(alpha (x) x, y) = alpha -> L(x, y) = L(x, alpha >-> y)
        assert L.hom[L.tensor[alpha, x], y] == R[alpha, L.hom[x, y]] == L.hom[x, L.cotensor[alpha, y]]


def test_presheaf_lattice_of_two_chain():
    L = olat.presheaf_lattice(ocat.chain_category(builtin("boolean2"), 2))
    assert L.n == 3
    assert L.leq.sum() == 6  # a 3-chain


def test_dual_lattice_reverses_order_and_is_involutive():
    L = olat.omega_lattice(builtin("lukasiewicz:4"))
    D = olat.dual_lattice(L)
    assert np.array_equal(D.leq, L.leq.T)
    DD = olat.dual_lattice(D)
    assert np.array_equal(DD.hom, L.hom)


def test_product_projections_and_sections():
    q = builtin("boolean2")
    O = olat.omega_lattice(q)
    P = olat.product([O, O], q)
    assert P.lattice.n == 4
    assert olat.is_complete_morphism(P.lattice, O, P.projections[0]).complete


def test_empty_product_is_terminal():
    q = builtin("boolean2")
    P = olat.product([], q)
    assert P.lattice.n == 1


def test_non_antisymmetric_category_is_refused():
    q = builtin("boolean2")
    chaotic = ocat.check_category(q, ["a", "b"], [[1, 1], [1, 1]])
    with pytest.raises(NotAntisymmetric):
        olat.certify_complete(chaotic)


def test_non_complete_category_is_refused():
    q = builtin("boolean2")
    with pytest.raises(OQLError):
        olat.certify_complete(ocat.discrete(q, 2))


def test_functor_lattice_is_pointwise():
    q = builtin("boolean2")
    O = olat.omega_lattice(q)
    F = olat.functor_lattice(ocat.chain_category(q, 2), O)
    # monotone maps 2 -> 2
    assert F.n == 3
    maps = np.array(F.cat.points).reshape(F.n, 2)
    for a, b in itertools.product(range(F.n), repeat=2):
        assert tuple(maps[F.join[a, b]]) == tuple(O.join[maps[a], maps[b]])


def test_complete_morphism_detection():
    q = builtin("lukasiewicz:3")
    O = olat.omega_lattice(q)
    assert olat.is_complete_morphism(O, O, list(range(q.n))).complete
    const = [q.top] * q.n
    rep = olat.is_complete_morphism(O, O, const)
    assert not rep.complete and not rep.has_right_adjoint


def test_tarski_fixed_points_of_identity():
    L = olat.omega_lattice(builtin("goedel:4"))
    fix = olat.tarski_fix(L, list(range(L.n)))
    assert fix.n == L.n
