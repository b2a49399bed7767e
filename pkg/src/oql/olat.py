"""Complete Omega-lattices.

A complete Omega-lattice is stored with its underlying lattice tables
and its scalar actions: ``tensor[alpha, x]`` and ``cotensor[alpha, x]``.
Suprema and infima are then folds over those tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import ocat
from .budget import Budget, as_budget
from .errors import (
    ModuleLawFails,
    NotAFunctor,
    NotAntisymmetric,
    NotCotensored,
    NotTensored,
    SizeBound,
    UnderlyingNotComplete,
)
from .ocat import LOWER, UPPER, OmegaCategory, check_category
from .quantale import FiniteLattice, Quantale, _NoBound, fold, lattice_tables
from .report import Report

CERTIFICATE_ROUTE = "tensored-cotensored-complete-order"


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class CompleteOmegaLattice:
    cat: OmegaCategory
    join: np.ndarray
    meet: np.ndarray
    bottom: int
    top: int
    tensor: np.ndarray
    cotensor: np.ndarray
    certificate: dict[str, Any] = field(default_factory=dict)

    @property
    def quantale(self) -> Quantale:
        return self.cat.quantale

    @property
    def n(self) -> int:
        return self.cat.n

    @property
    def hom(self) -> np.ndarray:
        return self.cat.hom

    @property
    def objects(self) -> tuple[str, ...]:
        return self.cat.objects

    @property
    def name(self) -> str:
        return self.cat.name

    @property
    def leq(self) -> np.ndarray:
        return self.cat.leq

    def __repr__(self) -> str:
        return f"CompleteOmegaLattice({self.name!r}, n={self.n})"

    def index(self, obj) -> int:
        return self.cat.index(obj)

    def join_all(self, xs) -> int:
        out = self.bottom
        for x in xs:
            out = int(self.join[out, x])
        return out

    def meet_all(self, xs) -> int:
        out = self.top
        for x in xs:
            out = int(self.meet[out, x])
        return out


def _rows_index(M: np.ndarray) -> dict[bytes, int]:
    M = np.ascontiguousarray(M, dtype=np.int64)
    return {M[i].tobytes(): i for i in range(M.shape[0])}


def _lookup(index: dict[bytes, int], rows: np.ndarray) -> np.ndarray:
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    return np.array([index.get(r.tobytes(), -1) for r in rows], dtype=np.int64)


def certify_complete(A: OmegaCategory, budget: Budget | int | None = None,
                     cross_check: bool = True) -> CompleteOmegaLattice:
    """Certify completeness from the underlying lattice plus tensors and cotensors.

    Every law of the scalar actions is checked on all elements (binary and
    empty families for the join/meet laws).  With ``cross_check`` the
    formula ``sup phi = join_x phi(x) (x) x`` is also confirmed to be left
    adjoint to the Yoneda embedding against every lower presheaf, when
    their number fits the budget.
    """
    q = A.quantale
    n = A.n
    anti, w = ocat.is_antisymmetric(A)
    if not anti:
        raise NotAntisymmetric("distinct isomorphic objects", w)
    try:
        join, meet, bottom, top = lattice_tables(A.leq)
    except _NoBound as e:
        raise UnderlyingNotComplete(e.message, tuple(A.objects[i] for i in e.where)) from None
    H = A.hom
    R = q.residuation
    rows = _rows_index(H)
    cols = _rows_index(H.T)
    tensor = np.zeros((q.n, n), dtype=np.int64)
    cotensor = np.zeros((q.n, n), dtype=np.int64)
    for a in range(q.n):
        # A(a (x) x, z) = a -> A(x, z)
        t = _lookup(rows, R[a][H])
        if (t < 0).any():
            x = int(np.flatnonzero(t < 0)[0])
            raise NotTensored("no tensor", (q.names[a], A.objects[x]))
        tensor[a] = t
        # A(z, a >-> x) = a -> A(z, x)
        c = _lookup(cols, R[a][H.T])
        if (c < 0).any():
            x = int(np.flatnonzero(c < 0)[0])
            raise NotCotensored("no cotensor", (q.names[a], A.objects[x]))
        cotensor[a] = c
    L = CompleteOmegaLattice(A, _frozen(join), _frozen(meet), bottom, top, _frozen(tensor), _frozen(cotensor))
    checks = verify_lattice_laws(L)
    bad = [c for c in checks.checks if not c.ok]
    if bad:
        from .errors import InternalInconsistency
        raise InternalInconsistency(f"certified lattice fails law {bad[0].name}", bad[0].witness)
    cert: dict[str, Any] = {"route": CERTIFICATE_ROUTE, "laws": sorted(c.name for c in checks.checks)}
    if cross_check:
        try:
            V = ocat.enumerate_presheaves(A, LOWER, as_budget(budget))
            s1 = sup_many(L, V)
            s2 = sup_by_adjunction_many(L, V)
            if not (s1 == s2).all():
                from .errors import InternalInconsistency
                k = int(np.flatnonzero(s1 != s2)[0])
                raise InternalInconsistency("sup formula is not left adjoint to Yoneda", (q.fmt(V[k]),))
            cert["sup_left_adjoint_to_yoneda"] = {"presheaves": int(V.shape[0])}
        except SizeBound as e:
            cert["sup_left_adjoint_to_yoneda"] = f"skipped: budget {e.limit}"
    object.__setattr__(L, "certificate", cert)
    return L


def verify_lattice_laws(L: CompleteOmegaLattice) -> Report:
    q = L.quantale
    H, T, C = L.hom, L.tensor, L.cotensor
    R, Jq, Mq, Tq = q.residuation, q.join, q.meet, q.tensor
    J, M = L.join, L.meet
    n = L.n
    E = np.arange(q.n)
    X = np.arange(n)
    rep = Report(f"lattice laws on {L.name}")

    def add(name, bad, labels):
        if np.any(bad):
            idx = np.argwhere(bad)[0]
            rep.add(name, False, tuple(lab[i] for lab, i in zip(labels, idx)))
        else:
            rep.add(name, True)

    el, ob = q.names, L.objects
    # A(a(x)x, y) = a -> A(x,y) = A(x, a>->y)
    lhs = H[T[:, :, None], X[None, None, :]]
    mid = R[E[:, None, None], H[None, :, :]]
    rhs = H[X[None, :, None], C[:, None, :]]
    add("tensor-adjunction", lhs != mid, (el, ob, ob))
    add("cotensor-adjunction", rhs != mid, (el, ob, ob))
    add("unit-tensor", T[q.unit] != X, (ob,))
    add("unit-cotensor", C[q.unit] != X, (ob,))
    add("tensor-associative", T[Tq[:, :, None], X] != T[E[:, None, None], T[None, :, :]], (el, el, ob))
    add("cotensor-associative", C[Tq[:, :, None], X] != C[E[:, None, None], C[None, :, :]], (el, el, ob))
    add("tensor-scalar-joins", T[Jq[:, :, None], X] != J[T[:, None, :], T[None, :, :]], (el, el, ob))
    add("tensor-scalar-empty-join", T[q.bottom] != L.bottom, (ob,))
    add("cotensor-scalar-joins", C[Jq[:, :, None], X] != M[C[:, None, :], C[None, :, :]], (el, el, ob))
    add("cotensor-scalar-empty-join", C[q.bottom] != L.top, (ob,))
    add("tensor-object-joins", T[:, J] != J[T[:, :, None], T[:, None, :]], (el, ob, ob))
    add("tensor-object-empty-join", T[:, L.bottom] != L.bottom, (el,))
    add("cotensor-object-meets", C[:, M] != M[C[:, :, None], C[:, None, :]], (el, ob, ob))
    add("cotensor-object-empty-meet", C[:, L.top] != L.top, (el,))
    add("hom-from-joins", H[J[:, :, None], X] != Mq[H[:, None, :], H[None, :, :]], (ob, ob, ob))
    add("hom-from-bottom", H[L.bottom] != q.top, (ob,))
    add("hom-into-meets", H[X[:, None, None], M[None, :, :]] != Mq[H[:, :, None], H[:, None, :]], (ob, ob, ob))
    add("hom-into-top", H[:, L.top] != q.top, (ob,))
    return rep


# ---------------------------------------------------------------------------
# suprema and infima


def sup_many(L: CompleteOmegaLattice, V) -> np.ndarray:
    """sup phi = join_x phi(x) (x) x, for every row phi of V."""
    V = np.atleast_2d(np.asarray(V, dtype=np.int64))
    return fold(L.join, L.tensor[V, np.arange(L.n)[None, :]], L.bottom, axis=1)


def inf_many(L: CompleteOmegaLattice, V) -> np.ndarray:
    """inf mu = meet_x mu(x) >-> x."""
    V = np.atleast_2d(np.asarray(V, dtype=np.int64))
    return fold(L.meet, L.cotensor[V, np.arange(L.n)[None, :]], L.top, axis=1)


def sup(L: CompleteOmegaLattice, phi) -> int:
    q = L.quantale
    return int(sup_many(L, [q.element(v) for v in phi])[0])


def inf(L: CompleteOmegaLattice, mu) -> int:
    q = L.quantale
    return int(inf_many(L, [q.element(v) for v in mu])[0])


def sup_by_adjunction_many(L: CompleteOmegaLattice, V) -> np.ndarray:
    """The a with A(a, x) = meet_z phi(z) -> A(z, x) for all x; -1 if none exists."""
    q = L.quantale
    V = np.atleast_2d(np.asarray(V, dtype=np.int64))
    target = np.full((V.shape[0], L.n), q.top, dtype=np.int64)
    for z in range(L.n):
        target = q.meet[target, q.residuation[V[:, z][:, None], L.hom[z][None, :]]]
    return _lookup(_rows_index(L.hom), target)


def inf_by_adjunction_many(L: CompleteOmegaLattice, V) -> np.ndarray:
    """The a with A(x, a) = meet_z mu(z) -> A(x, z) for all x; -1 if none exists."""
    q = L.quantale
    V = np.atleast_2d(np.asarray(V, dtype=np.int64))
    target = np.full((V.shape[0], L.n), q.top, dtype=np.int64)
    for z in range(L.n):
        target = q.meet[target, q.residuation[V[:, z][:, None], L.hom[:, z][None, :]]]
    return _lookup(_rows_index(L.hom.T), target)


def all_functions(q: Quantale, n: int, budget: Budget | int | None = None) -> np.ndarray:
    """Every function from n points to the carrier, lexicographic."""
    budget = as_budget(budget)
    total = q.n ** n
    budget.check(total, f"{total} raw functions into {q.name}")
    budget.spend(total, "raw functions")
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((q.n,) * n).reshape(n, -1).T
    return np.ascontiguousarray(grids, dtype=np.int64)


def sup_coherence_check(L: CompleteOmegaLattice, budget: Budget | int | None = None) -> Report:
    """Formula and adjunction characterizations of sup and inf agree on every raw function."""
    q = L.quantale
    V = all_functions(q, L.n, budget)
    rep = Report(f"sup/inf coherence on {L.name}")
    for label, f1, f2 in (("sup", sup_many, sup_by_adjunction_many), ("inf", inf_many, inf_by_adjunction_many)):
        a, b = f1(L, V), f2(L, V)
        bad = a != b
        w = None if not bad.any() else (q.fmt(V[int(np.flatnonzero(bad)[0])]),)
        rep.add(f"{label}-formula-equals-adjunction", not bad.any(), w, functions=int(V.shape[0]))
    s1 = sup_many(L, V)
    s2 = sup_many(L, ocat.down_close_many(L.cat, V))
    bad = s1 != s2
    rep.add("sup-invariant-under-down-closure", not bad.any(),
            None if not bad.any() else (q.fmt(V[int(np.flatnonzero(bad)[0])]),))
    i1 = inf_many(L, V)
    i2 = inf_many(L, ocat.up_close_many(L.cat, V))
    bad = i1 != i2
    rep.add("inf-invariant-under-up-closure", not bad.any(),
            None if not bad.any() else (q.fmt(V[int(np.flatnonzero(bad)[0])]),))
    Y = L.hom.T
    bad = sup_many(L, Y) != np.arange(L.n)
    rep.add("sup-of-principal-is-generator", not bad.any(),
            None if not bad.any() else (L.objects[int(np.flatnonzero(bad)[0])],))
    return rep


# ---------------------------------------------------------------------------
# standard lattices


def omega_lattice(q: Quantale) -> CompleteOmegaLattice:
    return certify_complete(ocat.canonical_omega(q))


def presheaf_lattice(A: OmegaCategory, budget: Budget | int | None = None, cross_check: bool = True) -> CompleteOmegaLattice:
    """[A^op, Omega] certified; tensors are scalar multiples, cotensors residuals."""
    return certify_complete(ocat.presheaf_category(A, LOWER, budget), budget, cross_check)


def upper_presheaf_lattice(A: OmegaCategory, budget: Budget | int | None = None, cross_check: bool = True) -> CompleteOmegaLattice:
    """[A, Omega] with the pointwise residuation hom."""
    return certify_complete(ocat.presheaf_category(A, UPPER, budget), budget, cross_check)


def dual_lattice(L: CompleteOmegaLattice, cross_check: bool = True, budget: Budget | int | None = None) -> CompleteOmegaLattice:
    """L^op: transposed hom, with tensor and cotensor exchanged."""
    D = certify_complete(ocat.dual(L.cat), budget, cross_check)
    if not ((D.tensor == L.cotensor).all() and (D.cotensor == L.tensor).all()):
        from .errors import InternalInconsistency
        raise InternalInconsistency("dual tensor is not the original cotensor", (L.name,))
    return D


def terminal_lattice(q: Quantale) -> CompleteOmegaLattice:
    return certify_complete(ocat.terminal(q))


# ---------------------------------------------------------------------------
# module view


@dataclass(frozen=True, eq=False)
class OmegaModuleSpec:
    quantale: Quantale
    lattice: FiniteLattice
    action: np.ndarray


def validate_module(m: OmegaModuleSpec) -> OmegaModuleSpec:
    """Unit, associativity, and join preservation in each argument of the action."""
    q, lat = m.quantale, m.lattice
    A = np.asarray(m.action, dtype=np.int64)
    n = lat.n
    if A.shape != (q.n, n):
        raise ModuleLawFails(f"action table must be {q.n}x{n}, got {A.shape}")
    E, X = np.arange(q.n), np.arange(n)
    el, ob = q.names, lat.names
    checks = [
        ("unit", A[q.unit] != X, (ob,)),
        ("associativity", A[q.tensor[:, :, None], X] != A[E[:, None, None], A[None, :, :]], (el, el, ob)),
        ("scalar-joins", A[q.join[:, :, None], X] != lat.join[A[:, None, :], A[None, :, :]], (el, el, ob)),
        ("scalar-empty-join", A[q.bottom] != lat.bottom, (ob,)),
        ("object-joins", A[:, lat.join] != lat.join[A[:, :, None], A[:, None, :]], (el, ob, ob)),
        ("object-empty-join", A[:, lat.bottom] != lat.bottom, (el,)),
    ]
    for name, bad, labels in checks:
        if bad.any():
            idx = np.argwhere(bad)[0]
            raise ModuleLawFails(f"action fails {name}", tuple(lab[i] for lab, i in zip(labels, idx)))
    return OmegaModuleSpec(q, lat, _frozen(A))


def module_to_enriched(m: OmegaModuleSpec, name: str = "module") -> CompleteOmegaLattice:
    """A(x, y) = join of the scalars a with a (x) x <= y."""
    m = validate_module(m)
    q, lat, act = m.quantale, m.lattice, m.action
    n = lat.n
    ok = lat.leq[act[:, :, None], np.arange(n)[None, None, :]]  # (a, x, y)
    hom = q.vjoin(np.where(ok, np.arange(q.n)[:, None, None], q.bottom), axis=0)
    L = certify_complete(check_category(q, lat.names, hom, name))
    if not (L.tensor == act).all():
        a, x = np.argwhere(L.tensor != act)[0]
        raise ModuleLawFails("derived tensor differs from the action", (q.names[a], lat.names[x]))
    return L


def enriched_to_module(L: CompleteOmegaLattice) -> OmegaModuleSpec:
    lat = FiniteLattice.from_order(L.objects, L.leq, reorder=False)
    return validate_module(OmegaModuleSpec(L.quantale, lat, L.tensor))


# ---------------------------------------------------------------------------
# derived lattices


def _sub_lattice(L: CompleteOmegaLattice, keep: Sequence[int], name: str, budget=None) -> CompleteOmegaLattice:
    S = ocat.subcategory(L.cat, keep)
    S = OmegaCategory(S.quantale, S.objects, S.hom, name, S.points)
    return certify_complete(S, budget)


def tarski_fix(L: CompleteOmegaLattice, fmap, budget: Budget | int | None = None) -> CompleteOmegaLattice:
    """Fixed points of an endo-functor, certified complete.

    The certificate records that the prefixed points are closed under
    joins and tensors, which is the route the fixed-point argument takes.
    """
    f = ocat.functor(L.cat, L.cat, fmap).map
    fa = np.asarray(f)
    le = L.leq
    pre = [x for x in range(L.n) if le[x, f[x]]]
    pre_set = set(pre)
    closed_joins = L.bottom in pre_set and all(int(L.join[x, y]) in pre_set for x in pre for y in pre)
    closed_tensors = all(int(L.tensor[a, x]) in pre_set for a in range(L.quantale.n) for x in pre)
    maps_into = all(f[x] in pre_set for x in pre)
    if not (closed_joins and closed_tensors and maps_into):
        from .errors import InternalInconsistency
        raise InternalInconsistency("prefixed points are not closed as required", (L.name,))
    fix = [x for x in range(L.n) if fa[x] == x]
    F = _sub_lattice(L, fix, f"Fix[{L.name}]", budget)
    cert = dict(F.certificate)
    cert["prefixed_points"] = {"count": len(pre), "closed_under_joins": closed_joins,
                               "closed_under_tensors": closed_tensors, "invariant": maps_into}
    object.__setattr__(F, "certificate", cert)
    return F


def functor_lattice(A: OmegaCategory, B: CompleteOmegaLattice, budget: Budget | int | None = None) -> CompleteOmegaLattice:
    """[A, B] with pointwise joins and tensors, certified complete."""
    budget = as_budget(budget)
    FC = ocat.functor_category(A, B.cat, budget)
    maps = np.array(FC.points, dtype=np.int64).reshape(FC.n, A.n)
    pos = {tuple(r): i for i, r in enumerate(maps.tolist())}
    # pointwise joins and tensors of functors are functors
    for i in range(FC.n):
        for j in range(FC.n):
            if tuple(B.join[maps[i], maps[j]].tolist()) not in pos:
                raise NotAFunctor("pointwise join left the functor set", (FC.objects[i], FC.objects[j]))
        for a in range(B.quantale.n):
            if tuple(B.tensor[a, maps[i]].tolist()) not in pos:
                raise NotAFunctor("scalar tensor left the functor set", (B.quantale.names[a], FC.objects[i]))
    L = certify_complete(FC, budget, cross_check=False)
    for i in range(FC.n):
        for j in range(FC.n):
            if L.join[i, j] != pos[tuple(B.join[maps[i], maps[j]].tolist())]:
                from .errors import InternalInconsistency
                raise InternalInconsistency("join in [A,B] is not pointwise", (FC.objects[i], FC.objects[j]))
    return L


@dataclass
class ProductLattice:
    lattice: CompleteOmegaLattice
    factors: list[CompleteOmegaLattice]
    projections: list[tuple[int, ...]]
    lower_sections: list[tuple[int, ...]]
    upper_sections: list[tuple[int, ...]]


def product(lats: Sequence[CompleteOmegaLattice], q: Quantale | None = None,
            budget: Budget | int | None = None) -> ProductLattice:
    """Product with projections; each projection's left adjoint pads with
    bottoms and its right adjoint pads with tops."""
    budget = as_budget(budget)
    if not lats:
        if q is None:
            raise ValueError("empty product needs the quantale")
        return ProductLattice(terminal_lattice(q), [], [], [], [])
    size = 1
    for L in lats:
        size *= L.n
    budget.check(size * size, "product hom cells")
    C = ocat.product([L.cat for L in lats])
    P = certify_complete(C, budget, cross_check=False)
    pos = {t: i for i, t in enumerate(C.points)}
    projs, lows, highs = [], [], []
    for j, Lj in enumerate(lats):
        p = tuple(t[j] for t in C.points)
        lo = tuple(pos[tuple(x if k == j else lats[k].bottom for k in range(len(lats)))] for x in range(Lj.n))
        hi = tuple(pos[tuple(x if k == j else lats[k].top for k in range(len(lats)))] for x in range(Lj.n))
        pf = ocat.OmegaFunctor(P.cat, Lj.cat, p)
        ocat.check_adjunction(ocat.OmegaFunctor(Lj.cat, P.cat, lo), pf)
        ocat.check_adjunction(pf, ocat.OmegaFunctor(Lj.cat, P.cat, hi))
        projs.append(p)
        lows.append(lo)
        highs.append(hi)
    # componentwise tensor
    for a in range(P.quantale.n):
        for i, t in enumerate(C.points):
            expect = tuple(int(lats[k].tensor[a, t[k]]) for k in range(len(lats)))
            if C.points[P.tensor[a, i]] != expect:
                from .errors import InternalInconsistency
                raise InternalInconsistency("product tensor is not componentwise", (P.quantale.names[a], C.objects[i]))
    return ProductLattice(P, list(lats), projs, lows, highs)


def equalizer(L: CompleteOmegaLattice, M: CompleteOmegaLattice, fmap, gmap,
              budget: Budget | int | None = None) -> tuple[CompleteOmegaLattice, tuple[int, ...], Report]:
    """E = {x : f x = g x} with the embedding's sup/inf preservation verified."""
    budget = as_budget(budget)
    keep = [x for x in range(L.n) if fmap[x] == gmap[x]]
    E = _sub_lattice(L, keep, f"Eq[{L.name}]", budget)
    emb = tuple(keep)
    rep = Report(f"equalizer in {L.name}")
    for label, var, f_E, f_L in (("sup", LOWER, sup_many, sup_many), ("inf", UPPER, inf_many, inf_many)):
        V = ocat.enumerate_presheaves(E.cat, var, budget)
        img = np.full((V.shape[0], L.n), L.quantale.bottom, dtype=np.int64)
        img[:, list(emb)] = V
        lhs = np.asarray(emb)[f_E(E, V)] if V.shape[0] else np.zeros(0, dtype=np.int64)
        rhs = f_L(L, img)
        bad = lhs != rhs
        rep.add(f"embedding-preserves-{label}", not bad.any(),
                None if not bad.any() else (L.quantale.fmt(V[int(np.flatnonzero(bad)[0])]),),
                presheaves=int(V.shape[0]))
    return E, emb, rep


# ---------------------------------------------------------------------------
# morphisms


def preservation_check(L: CompleteOmegaLattice, M: CompleteOmegaLattice, fmap,
                       budget: Budget | int | None = None) -> Report:
    """Sup/inf preservation against adjoint existence and the order-plus-scalar criteria."""
    budget = as_budget(budget)
    f = np.asarray([M.index(x) for x in fmap], dtype=np.int64)
    rep = Report(f"preservation by a map {L.name} -> {M.name}")
    is_fun = ocat.is_functor(L.cat, M.cat, f)
    monotone = bool((~L.leq | M.leq[np.ix_(f, f)]).all())
    lax = bool(M.leq[M.tensor[:, f], f[L.tensor]].all())
    rep.add("functor<=>monotone-and-lax-tensor", is_fun == (monotone and lax),
            None if is_fun == (monotone and lax) else (is_fun, monotone, lax), functor=is_fun)
    if not is_fun:
        return rep
    fun = ocat.OmegaFunctor(L.cat, M.cat, tuple(int(v) for v in f))
    for side in ("sup", "inf"):
        var = LOWER if side == "sup" else UPPER
        V = ocat.enumerate_presheaves(L.cat, var, budget)
        img = ocat.image_many(fun, V)
        if side == "sup":
            pres = f[sup_many(L, V)] == sup_many(M, img)
            adj = ocat.has_right_adjoint(L.cat, M.cat, f)
            order = bool((f[L.join] == M.join[f[:, None], f[None, :]]).all() and f[L.bottom] == M.bottom)
            scal = bool((f[L.tensor] == M.tensor[:, f]).all())
        else:
            pres = f[inf_many(L, V)] == inf_many(M, img)
            adj = ocat.has_left_adjoint(L.cat, M.cat, f)
            order = bool((f[L.meet] == M.meet[f[:, None], f[None, :]]).all() and f[L.top] == M.top)
            scal = bool((f[L.cotensor] == M.cotensor[:, f]).all())
        preserves = bool(pres.all())
        agree = preserves == adj == (order and scal)
        rep.add(f"{side}-preservation-equivalences", agree,
                None if agree else (preserves, adj, order and scal),
                preserves=preserves, adjoint=adj, order_and_scalars=order and scal)
    return rep


@dataclass
class MorphismReport:
    complete: bool
    has_left_adjoint: bool
    has_right_adjoint: bool
    report: Report


def is_complete_morphism(L: CompleteOmegaLattice, M: CompleteOmegaLattice, fmap,
                         budget: Budget | int | None = None) -> MorphismReport:
    f = tuple(M.index(x) for x in fmap)
    rep = preservation_check(L, M, f, budget)
    if not ocat.is_functor(L.cat, M.cat, f):
        return MorphismReport(False, False, False, rep)
    left = ocat.has_left_adjoint(L.cat, M.cat, f)
    right = ocat.has_right_adjoint(L.cat, M.cat, f)
    return MorphismReport(left and right, left, right, rep)
