"""Double negation, dual lattices, and free completely distributive lattices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import cd, ocat, olat
from .budget import Budget, as_budget
from .errors import NotGirard, NotIntegral
from .ocat import LOWER, UPPER, OmegaCategory
from .olat import CompleteOmegaLattice, dual_lattice, inf_many, sup_many
from .quantale import Quantale, classify
from .report import Report

__all__ = [
    "DualityReport", "FreeCD", "check_dual_distributivity", "dual_lattice", "extend", "free_cd",
    "girard_inf_check", "is_girard", "is_omega_heyting", "negation", "negation_iso",
]


def negation(q: Quantale, V) -> np.ndarray:
    """Pointwise v -> 0."""
    return q.residuation[np.asarray(V, dtype=np.int64), q.bottom]


def is_girard(q: Quantale) -> tuple[bool, str | None]:
    """Double negation law; the witness is the first element it moves."""
    nn = negation(q, negation(q, np.arange(q.n)))
    bad = np.flatnonzero(nn != np.arange(q.n))
    return (True, None) if not bad.size else (False, q.names[int(bad[0])])


def girard_inf_check(q: Quantale, budget: Budget | int | None = None) -> Report:
    """On canonical Omega: inf psi = psi(0) -> 0, and d(x) = const (x -> 0) is right adjoint to inf."""
    rep = Report(f"infima of upper presheaves on Omega[{q.name}]")
    ok, w = is_girard(q)
    if not ok:
        rep.skip("inf-is-negated-value-at-bottom", f"not Girard (witness {w})")
        rep.skip("constant-negation-right-adjoint-to-inf", f"not Girard (witness {w})")
        return rep
    O = olat.omega_lattice(q)
    V = ocat.enumerate_presheaves(O.cat, UPPER, budget)
    infs = inf_many(O, V)
    closed = q.residuation[V[:, q.bottom], q.bottom]
    bad = np.flatnonzero(infs != closed)
    rep.add("inf-is-negated-value-at-bottom", not bad.size,
            None if not bad.size else (q.fmt(V[bad[0]]),), presheaves=int(V.shape[0]))
    # Omega(inf psi, x) = [Omega,Omega](d x, psi) = meet_t (x -> 0) -> psi(t)
    D = np.repeat(negation(q, np.arange(q.n))[:, None], q.n, axis=1)
    d_ok = all(ocat.is_presheaf(O.cat, row, UPPER) for row in D)
    lhs = O.hom[infs]  # (psi, x)
    rhs = ocat.presheaf_homs(q, D, V).T  # (psi, x)
    w2 = None
    if not d_ok:
        w2 = ("d not an upper presheaf",)
    elif (lhs != rhs).any():
        k, x = (int(i) for i in np.argwhere(lhs != rhs)[0])
        w2 = (q.fmt(V[k]), q.names[x])
    rep.add("constant-negation-right-adjoint-to-inf", w2 is None, w2)
    return rep


def is_omega_heyting(L: CompleteOmegaLattice, budget: Budget | int | None = None) -> tuple[bool, tuple | None]:
    """sup preserves binary meets, the top presheaf, and cotensors.

    Over a finite lattice these finitary conditions already force sup to
    preserve every inf, so the verdict coincides with complete
    distributivity; the witness names the failed equation.
    """
    res = cd.is_cd(L, budget)
    return res.ok, None if res.ok else (res.failed, *(res.witness or ()))


def negation_iso(q: Quantale, L, budget: Budget | int | None = None) -> Report:
    """neg: [L^op, Omega] -> [L, Omega]^op is an isometric bijection."""
    ok, w = is_girard(q)
    if not ok:
        raise NotGirard("negation is not involutive", (w,))
    A = L.cat if isinstance(L, CompleteOmegaLattice) else L
    Vl = ocat.enumerate_presheaves(A, LOWER, budget)
    Vu = ocat.enumerate_presheaves(A, UPPER, budget)
    N = negation(q, Vl)
    rep = Report(f"negation isomorphism on {A.name}")
    rep.stamps["lower"] = int(Vl.shape[0])
    rep.stamps["upper"] = int(Vu.shape[0])
    upos = {tuple(r): i for i, r in enumerate(Vu.tolist())}
    miss = [i for i, r in enumerate(N.tolist()) if tuple(r) not in upos]
    rep.add("negation-lands-in-upper-presheaves", not miss, None if not miss else (q.fmt(Vl[miss[0]]),))
    hit = {tuple(r) for r in N.tolist()}
    onto = len(hit) == Vu.shape[0] == Vl.shape[0]
    rep.add("negation-is-bijective", onto, None if onto else (int(Vl.shape[0]), int(Vu.shape[0]), len(hit)))
    back = negation(q, N)
    bad = np.flatnonzero(~(back == Vl).all(axis=1))
    rep.add("double-negation-is-identity", not bad.size, None if not bad.size else (q.fmt(Vl[bad[0]]),))
    Hl = ocat.presheaf_homs(q, Vl, Vl)
    Hn = ocat.presheaf_homs(q, N, N).T  # opposite category
    w2 = None
    if (Hl != Hn).any():
        i, j = (int(v) for v in np.argwhere(Hl != Hn)[0])
        w2 = (q.fmt(Vl[i]), q.fmt(Vl[j]))
    rep.add("negation-preserves-homs", w2 is None, w2)
    return rep


@dataclass
class DualityReport:
    girard: bool
    heyting_op: bool
    corpus_dual_cd: list[tuple[str, bool]]
    witness: tuple | None
    report: Report = field(default_factory=lambda: Report("duality"))

    def to_json(self) -> dict:
        out = self.report.to_json()
        out["girard"] = self.girard
        out["heyting_op"] = self.heyting_op
        out["corpus_dual_cd"] = [[k, v] for k, v in self.corpus_dual_cd]
        out["witness"] = list(self.witness) if self.witness is not None else None
        return out


def check_dual_distributivity(q: Quantale, corpus: Sequence[tuple[str, CompleteOmegaLattice]] | None = None,
                              budget: Budget | int | None = None) -> DualityReport:
    """Girard law, Heyting-ness of Omega^op, and complete distributivity of corpus duals.

    For integral Omega the three agree.  The all-lattices condition is
    only checked over the corpus; the corpus is stamped on the report.
    """
    budget = as_budget(budget)
    if q.unit != q.top:
        raise NotIntegral("duality check needs an integral quantale", (q.names[q.unit], q.names[q.top]))
    if corpus is None:
        corpus = cd.default_corpus(q, budget)
    rep = Report(f"dual distributivity over {q.name}")
    rep.stamps["corpus"] = [name for name, _ in corpus]
    rep.stamps["scope"] = "all-lattices condition checked over the named corpus only"
    girard, gw = is_girard(q)
    flags = classify(q).flags()
    rep.add("girard-agrees-with-classification", girard == flags["girard"], None if girard == flags["girard"] else (gw,))
    O = olat.omega_lattice(q)
    Oop = dual_lattice(O, budget=budget)
    heyting_op, hw = is_omega_heyting(Oop, budget)
    rep.add("girard-iff-omega-op-heyting", girard == heyting_op,
            None if girard == heyting_op else (girard, heyting_op, *(hw or ())))
    witness = None
    if not girard:
        a = q.element(gw)
        # inf of the constant (a -> 0) upper presheaf versus a * inf(const 0) = a
        psi = np.full((1, q.n), q.residuation[a, q.bottom], dtype=np.int64)
        inf_neg = int(inf_many(O, psi)[0])
        inf_zero = int(inf_many(O, np.full((1, q.n), q.bottom, dtype=np.int64))[0])
        witness = (q.names[a], q.names[inf_neg])
        rep.add("witness-breaks-tensor-preservation", inf_neg != q.tensor[a, inf_zero], None if inf_neg != q.tensor[a, inf_zero] else witness,
                alpha=q.names[a], inf_of_cotensor=q.names[inf_neg], alpha_times_inf_zero=q.names[q.tensor[a, inf_zero]])
        op_cd = cd.is_cd(Oop, budget).ok
        rep.add("omega-op-not-cd", not op_cd, None if not op_cd else (Oop.name,))
    corpus_dual = []
    for name, L in corpus:
        if not cd.is_cd(L, budget).ok:
            rep.skip(f"corpus[{name}]-dual-cd", "entry is not CD")
            continue
        dres = cd.is_cd(dual_lattice(L, cross_check=False, budget=budget), budget)
        corpus_dual.append((name, dres.ok))
        if girard:
            rep.add(f"corpus[{name}]-dual-cd", dres.ok, None if dres.ok else (dres.failed, *(dres.witness or ())))
        else:
            rep.skip(f"corpus[{name}]-dual-cd", "not Girard", dual_cd=dres.ok)
    return DualityReport(girard, heyting_op, corpus_dual, witness, rep)


# ---------------------------------------------------------------------------
# free completely distributive lattices


@dataclass(frozen=True, eq=False)
class FreeCD:
    """F(X) = [[Omega^X], Omega]^op with the evaluation unit."""

    quantale: Quantale
    generators: tuple[str, ...]
    power: OmegaCategory
    lattice: CompleteOmegaLattice
    eta: tuple[int, ...]
    report: Report

    def values(self) -> np.ndarray:
        """Row G: the upper presheaf on [Omega^X] that object G stands for."""
        return np.array(self.lattice.cat.points, dtype=np.int64).reshape(self.lattice.n, self.power.n)


def free_cd(q: Quantale, generators: Sequence[str] | int, budget: Budget | int | None = None,
            experimental: bool = False) -> FreeCD:
    """Build F(X); refuses non-Girard Omega unless ``experimental``."""
    budget = as_budget(budget)
    ok, w = is_girard(q)
    if not ok and not experimental:
        raise NotGirard("free construction is only established for Girard quantales", (w,))
    X = tuple(f"x{i}" for i in range(generators)) if isinstance(generators, int) else tuple(generators)
    power = ocat.omega_power(q, X, budget)
    U = olat.upper_presheaf_lattice(power, budget, cross_check=False)
    F = dual_lattice(U, cross_check=False, budget=budget)
    rep = Report(f"free completely distributive lattice on {len(X)} generators over {q.name}")
    rep.stamps["girard"] = ok
    rep.stamps["size"] = F.n
    lam = np.array(power.points, dtype=np.int64).reshape(power.n, len(X))
    fpos = {p: i for i, p in enumerate(F.cat.points)}
    eta = []
    for x in range(len(X)):
        ev = tuple(int(v) for v in lam[:, x])
        found = ev in fpos
        rep.add(f"unit[{X[x]}]-is-upper-presheaf", found, None if found else (X[x],))
        eta.append(fpos.get(ev, -1))
    res = cd.is_cd(F, budget)
    rep.add("free-lattice-is-cd", res.ok, None if res.ok else (res.failed, *(res.witness or ())))
    if ok:
        rep.merge(negation_iso(q, power, budget), "negation/")
    return FreeCD(q, X, power, F, tuple(eta), rep)


def extend(free: FreeCD, A: CompleteOmegaLattice, fvals: Sequence, budget: Budget | int | None = None
           ) -> tuple[tuple[int, ...], Report]:
    """g = sup_A . inf_[A^op,Omega] . (f^<-)^<-, with g . eta = f and uniqueness checked."""
    budget = as_budget(budget)
    q = free.quantale
    f = np.asarray([A.index(v) for v in fvals], dtype=np.int64)
    if f.shape[0] != len(free.generators):
        raise ValueError("one target per generator is required")
    F = free.lattice
    G = free.values()
    lam = np.array(free.power.points, dtype=np.int64).reshape(free.power.n, len(free.generators))
    ppos = {p: i for i, p in enumerate(free.power.points)}
    P = ocat.enumerate_presheaves(A.cat, LOWER, budget)
    # f^<-: lambda in [A^op, Omega] -> lambda . f in [Omega^X]
    pulled = np.asarray([ppos[tuple(int(v) for v in row[f])] for row in P], dtype=np.int64)
    Gamma = G[:, pulled]  # (G, lambda): upper presheaf on [A^op, Omega]
    # inf in [A^op, Omega] of Gamma: pointwise meet over lambda of Gamma(lambda) -> lambda(a)
    inf_vals = q.vmeet(q.residuation[Gamma[:, :, None], P[None, :, :]], axis=1)
    g = sup_many(A, inf_vals)
    rep = Report(f"extension from {F.name} to {A.name}")
    on_gen = g[list(free.eta)] if len(free.eta) else np.zeros(0, dtype=np.int64)
    ok_eta = bool((on_gen == f).all())
    rep.add("extension-restricts-to-f", ok_eta, None if ok_eta else tuple(A.objects[v] for v in on_gen))
    mor = olat.is_complete_morphism(F, A, g, budget)
    rep.add("extension-is-complete-morphism", mor.complete, None if mor.complete else (mor.has_left_adjoint, mor.has_right_adjoint))
    # closed form from the uniqueness argument: g(G) = meet_lam G(lam) >-> join_x lam(x) (x) f(x)
    joins = np.asarray([A.join_all(A.tensor[lam[k], f]) if len(f) else A.bottom for k in range(free.power.n)], dtype=np.int64)
    closed = np.asarray([A.meet_all(A.cotensor[G[i], joins]) for i in range(F.n)], dtype=np.int64)
    same = bool((closed == g).all())
    rep.add("extension-matches-closed-form", same, None if same else (F.objects[int(np.flatnonzero(closed != g)[0])],))
    rivals = []
    for h in ocat.enumerate_functors(F.cat, A.cat, budget):
        h = np.asarray(h, dtype=np.int64)
        if len(free.eta) and not (h[list(free.eta)] == f).all():
            continue
        if ocat.has_left_adjoint(F.cat, A.cat, h) and ocat.has_right_adjoint(F.cat, A.cat, h):
            rivals.append(tuple(int(v) for v in h))
    unique = rivals == [tuple(int(v) for v in g)]
    rep.add("extension-is-unique", unique, None if unique else (len(rivals),), complete_morphisms=len(rivals))
    return tuple(int(v) for v in g), rep
