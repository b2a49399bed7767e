"""Subalgebras, quotients, the Raney-Buchi decomposition, and lattices of left adjoints.

Subalgebras of a complete Omega-lattice are full subcategories closed
under all sups and infs.  Since the empty sup and the empty inf are the
bottom and the top, every subalgebra contains both.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from . import cd, ocat, olat
from .budget import Budget, as_budget
from .errors import InternalInconsistency, NotAnOperator, NotCD
from .ocat import LOWER, UPPER, OmegaCategory, OmegaFunctor
from .olat import CompleteOmegaLattice, inf_many, sup_many
from .report import Report


def _idx(L: CompleteOmegaLattice, xs: Iterable) -> list[int]:
    return sorted({L.index(x) for x in xs})


def _map(L: CompleteOmegaLattice, fmap) -> np.ndarray:
    return np.asarray([L.index(x) for x in fmap], dtype=np.int64)


def _first(mask: np.ndarray) -> tuple[int, ...] | None:
    if mask.all():
        return None
    return tuple(int(i) for i in np.argwhere(~mask)[0])


def _fmt_map(C: OmegaCategory, f) -> str:
    return "[" + ",".join(C.objects[v] for v in f) + "]"


def join_tensor_violation(L: CompleteOmegaLattice, M: CompleteOmegaLattice, f: np.ndarray) -> tuple | None:
    """First failure of f preserving bottom, binary joins and tensors."""
    if f[L.bottom] != M.bottom:
        return ("bottom",)
    w = _first(f[L.join] == M.join[f[:, None], f[None, :]])
    if w is not None:
        return ("join", L.objects[w[0]], L.objects[w[1]])
    w = _first(f[L.tensor] == M.tensor[:, f])
    if w is not None:
        return ("tensor", L.quantale.names[w[0]], L.objects[w[1]])
    return None


def meet_cotensor_violation(L: CompleteOmegaLattice, M: CompleteOmegaLattice, f: np.ndarray) -> tuple | None:
    if f[L.top] != M.top:
        return ("top",)
    w = _first(f[L.meet] == M.meet[f[:, None], f[None, :]])
    if w is not None:
        return ("meet", L.objects[w[0]], L.objects[w[1]])
    w = _first(f[L.cotensor] == M.cotensor[:, f])
    if w is not None:
        return ("cotensor", L.quantale.names[w[0]], L.objects[w[1]])
    return None


# ---------------------------------------------------------------------------
# closure and kernel operators


@dataclass(frozen=True, eq=False)
class ClosureOperator:
    lattice: CompleteOmegaLattice
    map: tuple[int, ...]

    @property
    def cocontinuous(self) -> bool:
        return join_tensor_violation(self.lattice, self.lattice, np.asarray(self.map)) is None

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.map)))

    def named(self) -> dict[str, str]:
        ob = self.lattice.objects
        return {ob[x]: ob[y] for x, y in enumerate(self.map)}


@dataclass(frozen=True, eq=False)
class KernelOperator:
    lattice: CompleteOmegaLattice
    map: tuple[int, ...]

    @property
    def cocontinuous(self) -> bool:
        return join_tensor_violation(self.lattice, self.lattice, np.asarray(self.map)) is None

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.map)))

    def named(self) -> dict[str, str]:
        ob = self.lattice.objects
        return {ob[x]: ob[y] for x, y in enumerate(self.map)}


def _operator_violation(L: CompleteOmegaLattice, f: np.ndarray, inflationary: bool) -> tuple | None:
    ar = np.arange(L.n)
    extensive = L.leq[ar, f] if inflationary else L.leq[f, ar]
    if not extensive.all():
        x = int(np.flatnonzero(~extensive)[0])
        return ("inflationary" if inflationary else "deflationary", L.objects[x])
    if (f[f] != f).any():
        return ("idempotent", L.objects[int(np.flatnonzero(f[f] != f)[0])])
    bad = ocat.functor_violation(L.cat, L.cat, f)
    if bad is not None:
        return ("functor", L.objects[bad[0]], L.objects[bad[1]])
    return None


def closure_operator(L: CompleteOmegaLattice, cmap, cocontinuous: bool = True) -> ClosureOperator:
    f = _map(L, cmap)
    bad = _operator_violation(L, f, True)
    if bad is None and cocontinuous:
        bad = join_tensor_violation(L, L, f)
    if bad is not None:
        raise NotAnOperator("not a cocontinuous closure operator" if cocontinuous else "not a closure operator", bad)
    return ClosureOperator(L, tuple(int(v) for v in f))


def kernel_operator(L: CompleteOmegaLattice, kmap, cocontinuous: bool = True) -> KernelOperator:
    f = _map(L, kmap)
    bad = _operator_violation(L, f, False)
    if bad is None and cocontinuous:
        bad = join_tensor_violation(L, L, f)
    if bad is not None:
        raise NotAnOperator("not a cocontinuous kernel operator" if cocontinuous else "not a kernel operator", bad)
    return KernelOperator(L, tuple(int(v) for v in f))


def _monotone_endos(L: CompleteOmegaLattice, allowed: list[np.ndarray], budget: Budget) -> Iterator[np.ndarray]:
    """Monotone endomaps with f(x) in allowed[x], by backtracking.

    Objects are indexed along a linear extension, so every predecessor
    of x is assigned before x.
    """
    n = L.n
    le = L.leq
    f = np.zeros(n, dtype=np.int64)
    preds = [np.flatnonzero(le[:x, x]) for x in range(n)]

    def rec(x: int):
        if x == n:
            yield f.copy()
            return
        for v in allowed[x]:
            budget.spend(1, "endomap search")
            if le[f[preds[x]], v].all():
                f[x] = v
                yield from rec(x + 1)

    yield from rec(0)


def enumerate_closures(L: CompleteOmegaLattice, budget: Budget | int | None = None) -> list[ClosureOperator]:
    """Every cocontinuous closure operator, lexicographic by map."""
    budget = as_budget(budget)
    allowed = [np.flatnonzero(L.leq[x]) for x in range(L.n)]
    out = []
    for f in _monotone_endos(L, allowed, budget):
        if _operator_violation(L, f, True) is None and join_tensor_violation(L, L, f) is None:
            out.append(ClosureOperator(L, tuple(int(v) for v in f)))
    return out


def enumerate_kernels(L: CompleteOmegaLattice, budget: Budget | int | None = None) -> list[KernelOperator]:
    """Every cocontinuous kernel operator, lexicographic by map."""
    budget = as_budget(budget)
    allowed = [np.flatnonzero(L.leq[:, x]) for x in range(L.n)]
    out = []
    for f in _monotone_endos(L, allowed, budget):
        if _operator_violation(L, f, False) is None and join_tensor_violation(L, L, f) is None:
            out.append(KernelOperator(L, tuple(int(v) for v in f)))
    return out


# ---------------------------------------------------------------------------
# subalgebras


def generate_subalgebra(L: CompleteOmegaLattice, seeds: Iterable = ()) -> tuple[int, ...]:
    """Smallest subset containing the seeds, bottom and top, closed under
    binary joins and meets, tensors and cotensors."""
    S = set(_idx(L, seeds)) | {L.bottom, L.top}
    while True:
        a = np.array(sorted(S), dtype=np.int64)
        new = set(L.join[np.ix_(a, a)].ravel().tolist())
        new |= set(L.meet[np.ix_(a, a)].ravel().tolist())
        new |= set(L.tensor[:, a].ravel().tolist())
        new |= set(L.cotensor[:, a].ravel().tolist())
        if new <= S:
            return tuple(int(x) for x in a)
        S |= new


def enumerate_subalgebras(L: CompleteOmegaLattice, budget: Budget | int | None = None) -> list[tuple[int, ...]]:
    """All subalgebras, found by growing generated subalgebras one element at a time."""
    budget = as_budget(budget)
    start = generate_subalgebra(L)
    seen = {start}
    todo = [start]
    while todo:
        S = todo.pop()
        for x in range(L.n):
            if x in S:
                continue
            budget.spend(1, "subalgebra generation")
            T = generate_subalgebra(L, set(S) | {x})
            if T not in seen:
                seen.add(T)
                todo.append(T)
    return sorted(seen, key=lambda s: (len(s), s))


def is_subalgebra(L: CompleteOmegaLattice, subset: Iterable, budget: Budget | int | None = None) -> Report:
    """Three equivalent descriptions of a subalgebra, each tested independently.

    sups-and-infs: the embedding carries sups and infs of presheaves on the
    subset to elements of the subset.  closed-under-operations: closure
    under bottom, top, binary joins and meets, tensors and cotensors.
    both-adjoints: the embedding has a left and a right adjoint.
    """
    budget = as_budget(budget)
    idx = _idx(L, subset)
    if not idx:
        raise ValueError("subset must be nonempty")
    members = set(idx)
    B = ocat.subcategory(L.cat, idx)
    emb = OmegaFunctor(B, L.cat, tuple(idx))
    rep = Report(f"subalgebra test on {L.name}")
    rep.stamps["subset"] = [L.objects[i] for i in idx]

    Vl = ocat.enumerate_presheaves(B, LOWER, budget)
    s = sup_many(L, ocat.kan(emb, LOWER).left(Vl))
    out_s = [k for k, v in enumerate(s.tolist()) if v not in members]
    Vu = ocat.enumerate_presheaves(B, UPPER, budget)
    i_ = inf_many(L, ocat.kan(emb, UPPER).left(Vu))
    out_i = [k for k, v in enumerate(i_.tolist()) if v not in members]
    cond_a = not out_s and not out_i
    w_a = None
    if out_s:
        w_a = ("sup", B.quantale.fmt(Vl[out_s[0]]), L.objects[s[out_s[0]]])
    elif out_i:
        w_a = ("inf", B.quantale.fmt(Vu[out_i[0]]), L.objects[i_[out_i[0]]])

    gen = generate_subalgebra(L, idx)
    cond_b = set(gen) == members
    w_b = None if cond_b else ("generated", L.objects[sorted(set(gen) - members)[0]])

    left = ocat.has_left_adjoint(B, L.cat, emb.map)
    right = ocat.has_right_adjoint(B, L.cat, emb.map)
    cond_c = left and right
    w_c = None if cond_c else ("left adjoint" if not left else "right adjoint",)

    rep.stamps["sups_and_infs"] = cond_a
    rep.stamps["closed_under_operations"] = cond_b
    rep.stamps["both_adjoints"] = cond_c
    rep.add("sups-and-infs", cond_a, w_a)
    rep.add("closed-under-operations", cond_b, w_b)
    rep.add("both-adjoints", cond_c, w_c)
    # the equivalence itself; disagreement would be a finding
    agree = cond_a == cond_b == cond_c
    rep.add("conditions-agree", agree, None if agree else (cond_a, cond_b, cond_c))
    return rep


def subalgebra_verdict(L: CompleteOmegaLattice, subset: Iterable, budget: Budget | int | None = None) -> bool:
    rep = is_subalgebra(L, subset, budget)
    if not rep.checks[-1].ok:
        raise InternalInconsistency("subalgebra conditions disagree", rep.checks[-1].witness)
    return bool(rep.stamps["closed_under_operations"])


def closure_of_subalgebra(L: CompleteOmegaLattice, subset: Iterable) -> ClosureOperator:
    """c(x) = meet of the members above x."""
    idx = np.array(_idx(L, subset), dtype=np.int64)
    if set(generate_subalgebra(L, idx)) != set(idx.tolist()):
        raise NotAnOperator("subset is not a subalgebra", tuple(L.objects[i] for i in idx))
    cmap = [L.meet_all(idx[L.leq[x, idx]]) for x in range(L.n)]
    return closure_operator(L, cmap)


def subalgebra_of_closure(c: ClosureOperator) -> tuple[int, ...]:
    return c.image()


def closure_bijection_check(L: CompleteOmegaLattice, budget: Budget | int | None = None) -> Report:
    budget = as_budget(budget)
    subs = enumerate_subalgebras(L, budget)
    closures = enumerate_closures(L, budget)
    rep = Report(f"subalgebras versus cocontinuous closures on {L.name}")
    rep.stamps["subalgebras"] = len(subs)
    rep.stamps["closures"] = len(closures)
    rep.add("counts-agree", len(subs) == len(closures), None if len(subs) == len(closures) else (len(subs), len(closures)))
    bad = [S for S in subs if closure_of_subalgebra(L, S).image() != S]
    rep.add("subalgebra-closure-subalgebra", not bad, None if not bad else tuple(L.objects[i] for i in bad[0]))
    bad2 = [c for c in closures if closure_of_subalgebra(L, c.image()).map != c.map]
    rep.add("closure-subalgebra-closure", not bad2, None if not bad2 else (bad2[0].named(),))
    images = {c.image() for c in closures}
    same = images == set(subs)
    rep.add("images-are-the-subalgebras", same, None if same else (sorted(images ^ set(subs))[0],))
    return rep


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True, eq=False)
class QuotientPresentation:
    source: CompleteOmegaLattice
    classes: tuple[tuple[int, ...], ...]
    lattice: CompleteOmegaLattice
    qmap: tuple[int, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]
    report: Report = field(default_factory=lambda: Report("quotient"))

    def partition(self) -> frozenset:
        return frozenset(frozenset(c) for c in self.classes)

    def to_json(self) -> dict:
        ob = self.source.objects
        return {"classes": {self.lattice.objects[i]: [ob[x] for x in c] for i, c in enumerate(self.classes)},
                "hom": [[self.source.quantale.names[v] for v in row] for row in self.lattice.hom]}


def _unique_adjoint(found: list[tuple[int, ...]], what: str, where: str) -> tuple[int, ...]:
    if len(found) != 1:
        raise InternalInconsistency(f"expected exactly one {what}", (where, len(found)))
    return found[0]


def _quotient_from_representatives(L: CompleteOmegaLattice, k: np.ndarray, name: str,
                                   budget: Budget) -> QuotientPresentation:
    reps = sorted(set(k.tolist()))
    cls_of = {r: i for i, r in enumerate(reps)}
    classes = tuple(tuple(int(x) for x in np.flatnonzero(k == r)) for r in reps)
    hom = L.hom[np.ix_(reps, reps)]
    C = ocat.check_category(L.quantale, [L.objects[r] for r in reps], hom, name)
    B = olat.certify_complete(C, budget, cross_check=False)
    qmap = tuple(cls_of[int(v)] for v in k)
    qf = ocat.functor(L.cat, B.cat, qmap)
    left = _unique_adjoint(ocat.find_left_adjoint(qf, budget), "left adjoint of the quotient map", name)
    right = _unique_adjoint(ocat.find_right_adjoint(qf, budget), "right adjoint of the quotient map", name)
    return QuotientPresentation(L, classes, B, qmap, left, right)


def quotient_of_kernel(k: KernelOperator, budget: Budget | int | None = None) -> QuotientPresentation:
    """Classes are the fibres of k, named by their k-image; B([x],[y]) = A(kx, ky)."""
    budget = as_budget(budget)
    L = k.lattice
    K = np.asarray(k.map, dtype=np.int64)
    rep = Report(f"quotient of {L.name} by a kernel")
    # x ~ kx, so compatibility reduces to comparing against representatives
    rep.add("joins-respect-classes", (K[L.join] == K[L.join[np.ix_(K, K)]]).all(),
            _first(K[L.join] == K[L.join[np.ix_(K, K)]]))
    rep.add("tensors-respect-classes", (K[L.tensor] == K[L.tensor[:, K]]).all(),
            _first(K[L.tensor] == K[L.tensor[:, K]]))
    rep.add("meets-respect-classes", (K[L.meet] == K[L.meet[np.ix_(K, K)]]).all(),
            _first(K[L.meet] == K[L.meet[np.ix_(K, K)]]))
    rep.add("cotensors-respect-classes", (K[L.cotensor] == K[L.cotensor[:, K]]).all(),
            _first(K[L.cotensor] == K[L.cotensor[:, K]]))
    # the class hom does not depend on the chosen members
    H = L.hom[np.ix_(K, K)]
    well = all((H[np.ix_(np.flatnonzero(K == a), np.flatnonzero(K == b))] == L.hom[a, b]).all()
               for a in set(K.tolist()) for b in set(K.tolist()))
    rep.add("class-hom-well-defined", well, None if well else (L.name,))
    Qp = _quotient_from_representatives(L, K, f"{L.name}/k", budget)
    object.__setattr__(Qp, "report", rep)
    rep.add("quotient-map-has-both-adjoints", True, None, classes=len(Qp.classes))
    if not rep.ok:
        raise InternalInconsistency("kernel quotient failed a compatibility step", rep.failures[0].witness)
    return Qp


def kernel_of_quotient(L: CompleteOmegaLattice, M: CompleteOmegaLattice, qmap,
                       budget: Budget | int | None = None) -> KernelOperator:
    """k = f . q, where f is the left adjoint of the quotient map q."""
    qm = tuple(int(v) for v in _map(M, qmap))
    if set(qm) != set(range(M.n)):
        raise NotAnOperator("quotient map is not surjective", (M.objects[sorted(set(range(M.n)) - set(qm))[0]],))
    qf = ocat.functor(L.cat, M.cat, qm)
    f = _unique_adjoint(ocat.find_left_adjoint(qf, budget), "left adjoint of the quotient map", M.name)
    ocat.find_right_adjoint(qf, budget)
    return kernel_operator(L, [f[v] for v in qm])


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings: block labels in order of first appearance."""
    labels = [0] * n

    def rec(i: int, top: int):
        if i == n:
            yield tuple(labels)
            return
        for b in range(top + 2):
            labels[i] = b
            yield from rec(i + 1, max(top, b))

    if n == 0:
        yield ()
    else:
        yield from rec(0, -1)


def enumerate_quotients(L: CompleteOmegaLattice, budget: Budget | int | None = None) -> list[QuotientPresentation]:
    """Every quotient algebra up to renaming, by testing each partition of the objects.

    A surjection with a left adjoint sends its left adjoint's value to the
    least member of each class, so the class hom is forced to be the hom
    between class minima.
    """
    budget = as_budget(budget)
    out = []
    for labels in set_partitions(L.n):
        budget.spend(1, "partitions")
        lab = np.asarray(labels, dtype=np.int64)
        mins = []
        for b in range(int(lab.max()) + 1 if L.n else 0):
            members = np.flatnonzero(lab == b)
            low = [m for m in members if L.leq[m, members].all()]
            if not low:
                break
            mins.append(int(low[0]))
        else:
            k = np.asarray([mins[b] for b in labels], dtype=np.int64)
            if not ocat.is_functor(L.cat, L.cat, k):
                continue
            # q must be a functor into the class category and have both adjoints
            reps = sorted(set(k.tolist()))
            pos = {r: i for i, r in enumerate(reps)}
            C = OmegaCategory(L.quantale, tuple(L.objects[r] for r in reps), L.hom[np.ix_(reps, reps)], "quotient")
            qm = tuple(pos[int(v)] for v in k)
            if not ocat.is_functor(L.cat, C, qm):
                continue
            if not (ocat.has_left_adjoint(L.cat, C, qm) and ocat.has_right_adjoint(L.cat, C, qm)):
                continue
            out.append(_quotient_from_representatives(L, k, f"{L.name}/~", budget))
    return out


def kernel_bijection_check(L: CompleteOmegaLattice, budget: Budget | int | None = None) -> Report:
    budget = as_budget(budget)
    kernels = enumerate_kernels(L, budget)
    quotients = enumerate_quotients(L, budget)
    rep = Report(f"quotient algebras versus cocontinuous kernels on {L.name}")
    rep.stamps["kernels"] = len(kernels)
    rep.stamps["quotients"] = len(quotients)
    rep.add("counts-agree", len(kernels) == len(quotients),
            None if len(kernels) == len(quotients) else (len(kernels), len(quotients)))
    parts_q = {Qp.partition(): Qp for Qp in quotients}
    parts_k = {}
    bad_k = None
    for k in kernels:
        Qp = quotient_of_kernel(k, budget)
        parts_k[Qp.partition()] = k
        back = kernel_of_quotient(L, Qp.lattice, Qp.qmap, budget)
        if back.map != k.map and bad_k is None:
            bad_k = k
    rep.add("kernel-quotient-kernel", bad_k is None, None if bad_k is None else (bad_k.named(),))
    bad_q = None
    for part, Qp in parts_q.items():
        k = kernel_of_quotient(L, Qp.lattice, Qp.qmap, budget)
        if quotient_of_kernel(k, budget).partition() != part and bad_q is None:
            bad_q = Qp
    rep.add("quotient-kernel-quotient", bad_q is None, None if bad_q is None else (bad_q.to_json(),))
    same = set(parts_q) == set(parts_k)
    rep.add("same-partitions", same, None if same else (len(set(parts_q) ^ set(parts_k)),))
    return rep


# ---------------------------------------------------------------------------
# complete distributivity of subalgebras and quotients


def _compare_with_generic(M: CompleteOmegaLattice, table: np.ndarray, budget: Budget, rep: Report,
                          name: str) -> cd.DownarrowOperator:
    V = ocat.enumerate_presheaves(M.cat, LOWER, budget)
    res = cd.is_cd(M, budget, V)
    rep.add(f"{name}-is-cd", res.ok, None if res.ok else (res.failed, *(res.witness or ())))
    cert = cd.certify_downarrow(M, table, V)
    generic = cd.downarrow(M, budget, V)
    w = _first(generic.table == table)
    rep.add(f"{name}-composite-equals-generic", w is None,
            None if w is None else (M.objects[w[0]], M.objects[w[1]]))
    t = np.array(table, dtype=np.int64)
    t.setflags(write=False)
    return cd.DownarrowOperator(M, t, cert)


def subalgebra_cd(L: CompleteOmegaLattice, subset: Iterable, budget: Budget | int | None = None,
                  down: cd.DownarrowOperator | None = None) -> tuple[cd.DownarrowOperator, Report]:
    """Totally-below on a subalgebra M: push down(i x) forward along the left adjoint of i."""
    budget = as_budget(budget)
    idx = _idx(L, subset)
    if not subalgebra_verdict(L, idx, budget):
        raise NotAnOperator("subset is not a subalgebra", tuple(L.objects[i] for i in idx))
    M = olat._sub_lattice(L, idx, f"{L.name}|sub{len(idx)}", budget)
    DL = down or cd.downarrow(L, budget)
    inc = OmegaFunctor(M.cat, L.cat, tuple(idx))
    k = _unique_adjoint(ocat.find_left_adjoint(inc, budget), "left adjoint of the embedding", M.name)
    table = ocat.kan(OmegaFunctor(L.cat, M.cat, k), LOWER).left(DL.table[idx])
    rep = Report(f"subalgebra complete distributivity on {M.name}")
    return _compare_with_generic(M, table, budget, rep, "subalgebra"), rep


def quotient_cd(L: CompleteOmegaLattice, M: CompleteOmegaLattice, qmap, budget: Budget | int | None = None,
                down: cd.DownarrowOperator | None = None) -> tuple[cd.DownarrowOperator, Report]:
    """Totally-below on a quotient M: push down(j y) forward along q, j the left adjoint of q."""
    budget = as_budget(budget)
    qm = tuple(int(v) for v in _map(M, qmap))
    qf = ocat.functor(L.cat, M.cat, qm)
    j = _unique_adjoint(ocat.find_left_adjoint(qf, budget), "left adjoint of the quotient map", M.name)
    ocat.find_right_adjoint(qf, budget)
    DL = down or cd.downarrow(L, budget)
    table = ocat.kan(qf, LOWER).left(DL.table[list(j)])
    rep = Report(f"quotient complete distributivity on {M.name}")
    return _compare_with_generic(M, table, budget, rep, "quotient"), rep


# ---------------------------------------------------------------------------
# Raney-Buchi


@dataclass(frozen=True, eq=False)
class RaneyBuchi:
    lattice: CompleteOmegaLattice
    ambient: CompleteOmegaLattice
    presheaves: CompleteOmegaLattice
    embedding: tuple[int, ...]
    quotient_map: tuple[int, ...]
    down: cd.DownarrowOperator
    report: Report

    def to_json(self) -> dict:
        return {"points": list(self.lattice.objects), "ambient_size": self.ambient.n,
                "presheaf_size": self.presheaves.n, "report": self.report.to_json()}


def raney_buchi(L: CompleteOmegaLattice, budget: Budget | int | None = None) -> RaneyBuchi:
    """L as a quotient of the lower presheaves, which form a subalgebra of [Omega^L].

    The converse route is then replayed: totally-below on the ambient
    power is transported to the subalgebra and on to the quotient, and
    must agree with the operator computed on L directly.
    """
    budget = as_budget(budget)
    q = L.quantale
    res = cd.is_cd(L, budget)
    if not res.ok:
        raise NotCD(f"sup has no left adjoint ({res.failed})", res.witness)
    rep = Report(f"Raney-Buchi decomposition of {L.name}")
    amb = olat.certify_complete(ocat.omega_power(q, L.objects, budget), budget, cross_check=False)
    P = olat.presheaf_lattice(L.cat, budget, cross_check=False)
    apos = {p: i for i, p in enumerate(amb.cat.points)}
    emb = tuple(apos[p] for p in P.cat.points)
    ppos = {p: i for i, p in enumerate(P.cat.points)}
    rep.stamps["ambient_size"] = amb.n
    rep.stamps["presheaf_size"] = P.n

    sub = is_subalgebra(amb, emb, budget)
    rep.merge(sub, "subalgebra/")
    inc = OmegaFunctor(P.cat, amb.cat, emb)
    apts = np.array(amb.cat.points, dtype=np.int64).reshape(amb.n, L.n)
    lower = tuple(ppos[tuple(int(v) for v in r)] for r in ocat.down_close_many(L.cat, apts))
    found_l = ocat.find_left_adjoint(inc, budget)
    rep.add("embedding-left-adjoint-is-down-closure", found_l == [lower], None if found_l == [lower] else (len(found_l),))
    interior = q.vmeet(q.residuation[L.hom.T[None, :, :], apts[:, None, :]], axis=2)
    upper = tuple(ppos[tuple(int(v) for v in r)] for r in interior)
    found_r = ocat.find_right_adjoint(inc, budget)
    rep.add("embedding-right-adjoint-is-interior", found_r == [upper], None if found_r == [upper] else (len(found_r),))

    pts = np.array(P.cat.points, dtype=np.int64).reshape(P.n, L.n)
    sup_map = tuple(int(v) for v in sup_many(L, pts))
    rep.add("sup-is-surjective", set(sup_map) == set(range(L.n)),
            None if set(sup_map) == set(range(L.n)) else (L.objects[sorted(set(range(L.n)) - set(sup_map))[0]],))
    D = cd.downarrow(L, budget)
    down = tuple(ppos[tuple(int(v) for v in r)] for r in D.table)
    yon = tuple(ppos[tuple(int(v) for v in L.hom[:, a])] for a in range(L.n))
    ok_l = ocat.is_adjunction(L.cat, P.cat, down, sup_map)
    ok_r = ocat.is_adjunction(P.cat, L.cat, sup_map, yon)
    rep.add("totally-below-left-adjoint-of-sup", ok_l, None if ok_l else (L.name,))
    rep.add("yoneda-right-adjoint-of-sup", ok_r, None if ok_r else (L.name,))

    # converse: ambient -> subalgebra -> quotient
    Damb = cd.downarrow(amb, budget)
    DP, r1 = subalgebra_cd(amb, emb, budget, Damb)
    rep.merge(r1, "converse/")
    # subalgebra_cd re-indexes the subset in ambient order; realign with P
    order = [ppos[amb.cat.points[i]] for i in sorted(emb)]
    perm = np.argsort(order)
    table_P = np.empty_like(DP.table)
    for i_new, i_sub in enumerate(perm):
        table_P[i_new] = DP.table[i_sub][perm]
    DPp = cd.DownarrowOperator(P, table_P, DP.certificate)
    DL, r2 = quotient_cd(P, L, sup_map, budget, DPp)
    rep.merge(r2, "converse/")
    same = bool((DL.table == D.table).all())
    rep.add("converse-recovers-totally-below", same, None if same else (L.name,))
    return RaneyBuchi(L, amb, P, emb, sup_map, D, rep)


# ---------------------------------------------------------------------------
# left adjoints between complete lattices


def left_adjoint_lattice(A: CompleteOmegaLattice, B: CompleteOmegaLattice,
                         budget: Budget | int | None = None) -> tuple[CompleteOmegaLattice, Report]:
    """[A ->l B]: functors with a right adjoint, with pointwise joins and tensors."""
    budget = as_budget(budget)
    F = olat.functor_lattice(A.cat, B, budget)
    maps = np.array(F.cat.points, dtype=np.int64).reshape(F.n, A.n)
    keep = []
    disagree = None
    for i, f in enumerate(maps):
        cheap = join_tensor_violation(A, B, f) is None
        if cheap:
            keep.append(i)
        if cheap != ocat.has_right_adjoint(A.cat, B.cat, f) and disagree is None:
            disagree = F.objects[i]
    rep = Report(f"left adjoints {A.name} -> {B.name}")
    rep.add("preservation-shortcut-matches-adjoint-search", disagree is None, None if disagree is None else (disagree,))
    Lft = olat._sub_lattice(F, keep, f"[{A.name}->l {B.name}]", budget)
    kpos = {tuple(int(v) for v in maps[i]): j for j, i in enumerate(keep)}
    lmaps = maps[keep]
    joins_ok = all(kpos.get(tuple(B.join[lmaps[a], lmaps[b]].tolist())) == Lft.join[a, b]
                   for a in range(Lft.n) for b in range(Lft.n))
    tens_ok = all(kpos.get(tuple(B.tensor[al, lmaps[a]].tolist())) == Lft.tensor[al, a]
                  for al in range(A.quantale.n) for a in range(Lft.n))
    rep.add("joins-are-pointwise", joins_ok, None if joins_ok else (Lft.name,))
    rep.add("tensors-are-pointwise", tens_ok, None if tens_ok else (Lft.name,))
    meets_pointwise = all(kpos.get(tuple(B.meet[lmaps[a], lmaps[b]].tolist())) == Lft.meet[a, b]
                          for a in range(Lft.n) for b in range(Lft.n))
    rep.stamps["meets_pointwise"] = meets_pointwise
    rep.stamps["subalgebra_of_functor_lattice"] = bool(is_subalgebra(F, keep, budget).stamps["closed_under_operations"])
    rep.stamps["size"] = Lft.n
    return Lft, rep


def left_adjoint_kernel(A: CompleteOmegaLattice, B: CompleteOmegaLattice, budget: Budget | int | None = None
                        ) -> tuple[KernelOperator, QuotientPresentation, Report]:
    """k(f)(a) = join_x down(a)(x) (x) f(x) on [A, B], with its quotient."""
    budget = as_budget(budget)
    DA = cd.downarrow(A, budget)
    F = olat.functor_lattice(A.cat, B, budget)
    maps = np.array(F.cat.points, dtype=np.int64).reshape(F.n, A.n)
    pos = {tuple(r): i for i, r in enumerate(maps.tolist())}
    T = DA.table
    rows = []
    for f in maps:
        vals = B.tensor[T, f[None, :]]  # (a, x)
        kf = [int(B.join_all(vals[a])) for a in range(A.n)]
        rows.append(pos[tuple(kf)])
    K = np.asarray(rows, dtype=np.int64)
    rep = Report(f"left-adjoint kernel on [{A.name},{B.name}]")
    ar = np.arange(F.n)
    rep.add("step1-monotone", (~F.leq | F.leq[np.ix_(K, K)]).all(), _first(~F.leq | F.leq[np.ix_(K, K)]))
    rep.add("step2-deflationary", F.leq[K, ar].all(), _first(F.leq[K, ar]))
    rep.add("step3-idempotent", (K[K] == K).all(), _first(K[K] == K))
    rep.add("step4-preserves-tensors", (K[F.tensor] == F.tensor[:, K]).all(), _first(K[F.tensor] == F.tensor[:, K]))
    jw = _first(K[F.join] == F.join[np.ix_(K, K)])
    rep.add("step5-preserves-joins", jw is None and K[F.bottom] == F.bottom, jw or (("bottom",) if K[F.bottom] != F.bottom else None))
    fv = ocat.functor_violation(F.cat, F.cat, K)
    rep.add("step6-functor", fv is None, fv)
    fix = [int(i) for i in np.flatnonzero(K == ar)]
    V = ocat.enumerate_presheaves(A.cat, LOWER, budget)
    sA = sup_many(A, V)
    preserving = []
    for i, f in enumerate(maps):
        img = ocat.image_many(OmegaFunctor(A.cat, B.cat, tuple(int(v) for v in f)), V)
        if (f[sA] == sup_many(B, img)).all():
            preserving.append(i)
    rep.add("step7-fixed-points-are-sup-preserving", fix == preserving,
            None if fix == preserving else (sorted(set(fix) ^ set(preserving))[0],), fixed=len(fix))
    if not rep.ok:
        raise InternalInconsistency("left-adjoint kernel failed a proof step", rep.failures[0].witness)
    k = KernelOperator(F, tuple(int(v) for v in K))
    Qp = quotient_of_kernel(k, budget)
    Lft, lrep = left_adjoint_lattice(A, B, budget)
    rep.merge(lrep, "left-adjoints/")
    # class [f] is named by k(f), a left adjoint; compare homs through that naming
    reps = [Qp.classes[c][0] for c in range(len(Qp.classes))]
    img = [int(K[r]) for r in reps]
    lpos = {tuple(int(v) for v in Lft.cat.points[j]): j for j in range(Lft.n)}
    to_l = [lpos.get(tuple(int(v) for v in maps[i])) for i in img]
    iso = None not in to_l and sorted(to_l) == list(range(Lft.n)) and \
        bool((Qp.lattice.hom == Lft.hom[np.ix_(to_l, to_l)]).all())
    rep.add("quotient-isomorphic-to-left-adjoints", iso, None if iso else (Qp.lattice.name,))
    res = cd.is_cd(Qp.lattice, budget)
    rep.add("quotient-is-cd", res.ok, None if res.ok else (res.failed,))
    return k, Qp, rep


def right_adjoint_duality(A, B, budget: Budget | int | None = None) -> Report:
    """meet_x B(f1 x, f2 x) = meet_y A(g2 y, g1 y) for all adjunctions f_i -| g_i."""
    budget = as_budget(budget)
    A = A.cat if isinstance(A, CompleteOmegaLattice) else A
    B = B.cat if isinstance(B, CompleteOmegaLattice) else B
    q = A.quantale
    pairs = []
    for f in ocat.enumerate_functors(A, B, budget):
        if ocat.has_right_adjoint(A, B, f):
            for g in ocat.find_right_adjoint(OmegaFunctor(A, B, f), budget):
                pairs.append((f, g))
    rep = Report(f"adjoint duality between {A.name} and {B.name}")
    rep.stamps["adjunctions"] = len(pairs)
    bad = None
    for (f1, g1), (f2, g2) in itertools.product(pairs, repeat=2):
        lhs = q.meet_all(B.hom[list(f1), list(f2)]) if A.n else q.top
        rhs = q.meet_all(A.hom[list(g2), list(g1)]) if B.n else q.top
        if lhs != rhs:
            bad = (_fmt_map(B, f1), _fmt_map(B, f2))
            break
    rep.add("left-and-right-homs-agree", bad is None, bad)
    lefts = {f for f, _ in pairs}
    rights = {g for _, g in pairs}
    bij = len(lefts) == len(rights) == len(pairs)
    rep.add("left-right-bijection", bij, None if bij else (len(lefts), len(rights), len(pairs)))
    return rep
