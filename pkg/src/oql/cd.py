"""Complete distributivity and the totally-below operator."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import ocat, olat
from .budget import Budget, as_budget
from .errors import InternalInconsistency, NotCD
from .ocat import LOWER, OmegaCategory
from .olat import CompleteOmegaLattice, sup_many
from .quantale import FiniteLattice, Quantale
from .report import Report


@dataclass
class CDResult:
    ok: bool
    route: str
    failed: str | None = None
    witness: tuple | None = None
    presheaves: int = 0

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class DownarrowOperator:
    """Row a of ``table`` is the lower presheaf of things totally below a."""

    lattice: CompleteOmegaLattice
    table: np.ndarray
    certificate: dict[str, Any] = field(default_factory=dict)

    def of(self, a) -> ocat.Presheaf:
        L = self.lattice
        return ocat.Presheaf(L.cat, LOWER, tuple(int(v) for v in self.table[L.index(a)]))

    def to_json(self) -> dict:
        L = self.lattice
        nm = L.quantale.names
        return {L.objects[a]: {L.objects[x]: nm[self.table[a, x]] for x in range(L.n)} for a in range(L.n)}


def _pairs_budget(budget: Budget) -> int:
    return budget.limit


def is_cd(L: CompleteOmegaLattice, budget: Budget | int | None = None,
          presheaves: np.ndarray | None = None) -> CDResult:
    """Decide whether sup: [L^op, Omega] -> L has a left adjoint.

    sup is a map between complete Omega-lattices, so it has a left adjoint
    exactly when it preserves the top presheaf, binary meets and
    cotensors.  Binary meets are checked pairwise when the number of
    pairs fits the budget; otherwise through the equivalent statement
    that each fibre {phi : a <= sup phi} contains its own meet.
    """
    budget = as_budget(budget)
    q = L.quantale
    V = ocat.enumerate_presheaves(L.cat, LOWER, budget) if presheaves is None else presheaves
    N = V.shape[0]
    S = sup_many(L, V)
    top = np.full((1, L.n), q.top, dtype=np.int64)
    if sup_many(L, top)[0] != L.top:
        return CDResult(False, "", "sup-preserves-top", ("top presheaf",), N)
    for a in range(q.n):
        lhs = sup_many(L, q.residuation[a][V])
        rhs = L.cotensor[a][S]
        if (lhs != rhs).any():
            k = int(np.flatnonzero(lhs != rhs)[0])
            return CDResult(False, "", "sup-preserves-cotensors", (q.names[a], q.fmt(V[k])), N)
    pairs = N * (N - 1) // 2
    if pairs <= _pairs_budget(budget):
        route = "pairwise-meets"
        for i in range(N):
            M = q.meet[V[i][None, :], V[i + 1:]]
            lhs = sup_many(L, M) if M.shape[0] else np.zeros(0, dtype=np.int64)
            rhs = L.meet[S[i], S[i + 1:]]
            if (lhs != rhs).any():
                j = i + 1 + int(np.flatnonzero(lhs != rhs)[0])
                return CDResult(False, route, "sup-preserves-binary-meets", (q.fmt(V[i]), q.fmt(V[j])), N)
    else:
        route = "fibre-minimum"
        for a in range(L.n):
            m = q.vmeet(V[L.leq[a][S]], axis=0)
            if not L.leq[a, sup_many(L, m)[0]]:
                return CDResult(False, route, "sup-preserves-binary-meets", (L.objects[a],), N)
    return CDResult(True, route, presheaves=N)


def closed_form_downarrow(q: Quantale) -> np.ndarray:
    """On canonical Omega: row x, column t holds x * (t -> I)."""
    return q.tensor[np.arange(q.n)[:, None], q.residuation[np.arange(q.n), q.unit][None, :]]


def _is_canonical(L: CompleteOmegaLattice) -> bool:
    q = L.quantale
    return L.objects == q.names and bool((L.hom == q.residuation).all())


def certify_downarrow(L: CompleteOmegaLattice, table: np.ndarray, V: np.ndarray) -> dict[str, Any]:
    """Check the adjunction with sup; raise InternalInconsistency on any gap."""
    q = L.quantale
    table = np.asarray(table, dtype=np.int64)
    for a in range(L.n):
        bad = ocat.presheaf_violation(L.cat, table[a], LOWER)
        if bad is not None:
            raise InternalInconsistency("totally-below row is not a lower presheaf", (L.objects[a],))
    S = sup_many(L, V)
    lhs = ocat.presheaf_homs(q, table, V)
    rhs = L.hom[:, S]
    if (lhs != rhs).any():
        a, k = (int(i) for i in np.argwhere(lhs != rhs)[0])
        raise InternalInconsistency("[P](down a, phi) != L(a, sup phi)", (L.objects[a], q.fmt(V[k])))
    back = sup_many(L, table)
    if (back != np.arange(L.n)).any():
        a = int(np.flatnonzero(back != np.arange(L.n))[0])
        raise InternalInconsistency("sup of totally-below row is not the element", (L.objects[a],))
    H = ocat.presheaf_homs(q, table, table)
    if not q.leq[L.hom, H].all():
        a, b = (int(i) for i in np.argwhere(~q.leq[L.hom, H])[0])
        raise InternalInconsistency("totally-below map is not a functor", (L.objects[a], L.objects[b]))
    shadow = L.leq[:, S] == (q.leq[table[:, None, :], V[None, :, :]]).all(axis=2)
    if not shadow.all():
        a, k = (int(i) for i in np.argwhere(~shadow)[0])
        raise InternalInconsistency("a <= sup phi does not match down(a) <= phi", (L.objects[a], q.fmt(V[k])))
    return {"adjunction_with_sup": True, "presheaves": int(V.shape[0])}


def downarrow(L: CompleteOmegaLattice, budget: Budget | int | None = None,
              presheaves: np.ndarray | None = None) -> DownarrowOperator:
    """Construct the totally-below operator as a pointwise meet, then certify it."""
    budget = as_budget(budget)
    q = L.quantale
    V = ocat.enumerate_presheaves(L.cat, LOWER, budget) if presheaves is None else presheaves
    res = is_cd(L, budget, V)
    if not res.ok:
        raise NotCD(f"sup has no left adjoint ({res.failed})", res.witness)
    S = sup_many(L, V)
    table = np.stack([q.vmeet(V[L.leq[a][S]], axis=0) for a in range(L.n)]) if L.n else np.zeros((0, 0), np.int64)
    cert = certify_downarrow(L, table, V)
    cert["cd_route"] = res.route
    if _is_canonical(L):
        closed = closed_form_downarrow(q)
        if not (closed == table).all():
            x, t = (int(i) for i in np.argwhere(closed != table)[0])
            raise InternalInconsistency("meet construction differs from x*(t->I)", (q.names[x], q.names[t]))
        cert["matches_closed_form"] = True
    table = np.array(table, dtype=np.int64)
    table.setflags(write=False)
    return DownarrowOperator(L, table, cert)


def direct_left_adjoint_of_sup(L: CompleteOmegaLattice, budget: Budget | int | None = None) -> list[tuple[int, ...]]:
    """Search the left adjoints of sup: [L^op, Omega] -> L directly, object by object.

    Returns rows of presheaf indices; empty when sup has no left adjoint.
    """
    budget = as_budget(budget)
    P = ocat.presheaf_category(L.cat, LOWER, budget)
    V = np.array(P.points, dtype=np.int64).reshape(P.n, L.n)
    S = sup_many(L, V)
    cands = ocat.left_adjoint_candidates(L.cat, P, S)
    if not all(cands):
        return []
    sols = ocat._all_choices(cands, budget, "left adjoints of sup")
    return [s for s in sols if ocat.is_functor(L.cat, P, s)]


def direct_agreement_check(L: CompleteOmegaLattice, budget: Budget | int | None = None) -> Report:
    """Compare the preservation test with a direct search for the left adjoint.

    Also checks that the computed operator is the pointwise-least functorial
    section of sup.  Only for lattices whose presheaf category can be built.
    """
    budget = as_budget(budget)
    q = L.quantale
    rep = Report(f"direct complete distributivity on {L.name}")
    res = is_cd(L, budget)
    found = direct_left_adjoint_of_sup(L, budget)
    agree = res.ok == bool(found)
    rep.add("preservation-test-agrees-with-search", agree,
            None if agree else (L.name,), preservation=res.ok, left_adjoints=len(found))
    if not res.ok:
        return rep
    D = downarrow(L, budget)
    V = ocat.enumerate_presheaves(L.cat, LOWER, budget)
    key = {tuple(r): i for i, r in enumerate(V.tolist())}
    mine = tuple(key[tuple(int(v) for v in row)] for row in D.table)
    rep.add("search-finds-exactly-the-operator", found == [mine], None if found == [mine] else (L.name,),
            solutions=len(found))
    S = sup_many(L, V)
    fibres = [[int(k) for k in np.flatnonzero(S == a)] for a in range(L.n)]
    P = ocat.presheaf_category(L.cat, LOWER, budget, V)
    sections = [s for s in ocat._all_choices(fibres, budget, "sections of sup") if ocat.is_functor(L.cat, P, s)]
    below = [bool(q.leq[D.table, V[list(s)]].all()) for s in sections]
    w = None
    if not all(below):
        s = sections[below.index(False)]
        w = tuple(q.fmt(V[k]) for k in s)
    rep.add("operator-is-least-functorial-section", all(below), w, sections=len(sections))
    return rep


def interpolate_check(D: DownarrowOperator) -> Report:
    L, T = D.lattice, D.table
    q = L.quantale
    via = q.vjoin(q.tensor[T[:, :, None], T[None, :, :]], axis=1)
    bad = via != T
    rep = Report(f"interpolation on {L.name}")
    w = None
    if bad.any():
        x, y = (int(i) for i in np.argwhere(bad)[0])
        w = (L.objects[x], L.objects[y])
    rep.add("totally-below-interpolates", not bad.any(), w)
    return rep


# ---------------------------------------------------------------------------
# constructions


def presheaf_downarrow(A: OmegaCategory, budget: Budget | int | None = None) -> tuple[DownarrowOperator, Report]:
    """Totally-below on [A^op, Omega] via the left Kan extension along Yoneda."""
    budget = as_budget(budget)
    q = A.quantale
    P = olat.presheaf_lattice(A, budget, cross_check=False)
    pts = np.array(P.cat.points, dtype=np.int64).reshape(P.n, A.n)
    pos = {tuple(r): i for i, r in enumerate(pts.tolist())}
    y_idx = tuple(pos[tuple(int(v) for v in A.hom[:, a])] for a in range(A.n))
    VV = ocat.enumerate_presheaves(P.cat, LOWER, budget)
    rep = Report(f"presheaf complete distributivity on {A.name}")
    # sup Phi computed in P equals Phi restricted along Yoneda
    sup_pts = pts[sup_many(P, VV)]
    restr = VV[:, list(y_idx)]
    bad = ~(sup_pts == restr).all(axis=1)
    rep.add("sup-is-restriction-along-yoneda", not bad.any(),
            None if not bad.any() else (q.fmt(VV[int(np.flatnonzero(bad)[0])]),), presheaves=int(VV.shape[0]))
    yA = ocat.OmegaFunctor(A, P.cat, y_idx)
    table = ocat.kan(yA, LOWER).left(pts)
    cert = certify_downarrow(P, table, VV)
    generic = downarrow(P, budget, VV)
    same = bool((generic.table == table).all())
    w = None
    if not same:
        a, x = (int(i) for i in np.argwhere(generic.table != table)[0])
        w = (P.objects[a], P.objects[x])
    rep.add("kan-construction-equals-generic", same, w)
    cert["construction"] = "left Kan extension along Yoneda"
    table = np.array(table, dtype=np.int64)
    table.setflags(write=False)
    return DownarrowOperator(P, table, cert), rep


def product_downarrow(lats: Sequence[CompleteOmegaLattice], q: Quantale | None = None,
                      budget: Budget | int | None = None) -> tuple[DownarrowOperator, Report]:
    """Totally-below on a product: down-closure of the padded factor operators."""
    budget = as_budget(budget)
    pr = olat.product(lats, q, budget)
    P = pr.lattice
    qq = P.quantale
    factors = [downarrow(L, budget) for L in lats]
    table = np.full((P.n, P.n), qq.bottom, dtype=np.int64)
    pts = P.cat.points if lats else ((),)
    for i, a in enumerate(pts):
        for j, Dj in enumerate(factors):
            for t in range(lats[j].n):
                x = pr.lower_sections[j][t]
                table[i, x] = qq.join[table[i, x], Dj.table[a[j], t]]
    table = ocat.down_close_many(P.cat, table)
    V = ocat.enumerate_presheaves(P.cat, LOWER, budget)
    cert = certify_downarrow(P, table, V)
    generic = downarrow(P, budget, V)
    rep = Report(f"product complete distributivity on {P.name}")
    same = bool((generic.table == table).all())
    w = None
    if not same:
        a, x = (int(i) for i in np.argwhere(generic.table != table)[0])
        w = (P.objects[a], P.objects[x])
    rep.add("padded-construction-equals-generic", same, w, factors=len(lats))
    cert["construction"] = "down-closure of padded factor operators"
    table.setflags(write=False)
    return DownarrowOperator(P, table, cert), rep


# ---------------------------------------------------------------------------
# classical distributivity


def classical_cd(lat: FiniteLattice) -> tuple[bool, tuple | None]:
    """Finite lattices are completely distributive iff distributive."""
    J, M = lat.join, lat.meet
    lhs = M[np.arange(lat.n)[:, None, None], J[None, :, :]]
    rhs = J[M[:, :, None], M[:, None, :]]
    bad = lhs != rhs
    if bad.any():
        a, b, c = (int(i) for i in np.argwhere(bad)[0])
        return False, (lat.names[a], lat.names[b], lat.names[c])
    return True, None


def underlying_lattice(L: CompleteOmegaLattice) -> FiniteLattice:
    return FiniteLattice.from_order(L.objects, L.leq, reorder=False)


def check_classical_transfer(q: Quantale, corpus: Sequence[tuple[str, CompleteOmegaLattice]],
                             budget: Budget | int | None = None) -> Report:
    """If Omega is distributive, so is the underlying lattice of every CD corpus entry."""
    rep = Report(f"classical distributivity transfer over {q.name}")
    omega_cd, w = classical_cd(q.lattice)
    rep.stamps["omega_distributive"] = omega_cd
    canon = underlying_lattice(olat.omega_lattice(q))
    ok, w2 = classical_cd(canon)
    rep.add("canonical-instance-underlying-is-omega", ok == omega_cd, None if ok == omega_cd else (w2 or w,))
    if not corpus:
        rep.skip("corpus-underlying-distributive", "empty corpus")
        return rep
    for name, L in corpus:
        if not is_cd(L, budget).ok:
            rep.skip(f"corpus[{name}]-underlying-distributive", "entry is not CD")
            continue
        d, w3 = classical_cd(underlying_lattice(L))
        if omega_cd:
            rep.add(f"corpus[{name}]-underlying-distributive", d, w3)
        else:
            rep.skip(f"corpus[{name}]-underlying-distributive", "Omega not distributive", distributive=d)
    return rep


def default_corpus(q: Quantale, budget: Budget | int | None = None) -> list[tuple[str, CompleteOmegaLattice]]:
    """Omega, Omega squared, and the lower presheaves on the 2-chain."""
    O = olat.omega_lattice(q)
    return [
        ("Omega", O),
        ("Omega^2", olat.product([O, O], budget=budget).lattice),
        ("[chain2^op,Omega]", olat.presheaf_lattice(ocat.chain_category(q, 2), budget)),
    ]
