"""Omega-categories over a fixed finite quantale.

Objects are dense indices; ``hom`` is an integer matrix of quantale
elements.  Presheaves are plain integer vectors indexed by objects; the
``Presheaf`` wrapper only adds the base category and variance for the
public API.  Anything that touches many presheaves at once works on an
``(N, n)`` value matrix instead.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .budget import Budget, as_budget
from .errors import (
    LoadError,
    NoAdjoint,
    NotAFunctor,
    NotAPresheaf,
    ReflexivityFails,
    TransitivityFails,
)
from .quantale import Quantale, builtin, quantale_from_json
from .report import Report

LOWER = "lower"
UPPER = "upper"


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class OmegaCategory:
    """A validated Omega-category.

    ``points`` optionally records what each object *is* (a tuple of
    component indices for products, a value vector for presheaves, an
    object map for functor categories).
    """

    quantale: Quantale
    objects: tuple[str, ...]
    hom: np.ndarray
    name: str = ""
    points: tuple | None = None

    @property
    def n(self) -> int:
        return len(self.objects)

    @cached_property
    def _h(self) -> tuple[tuple[int, ...], ...]:
        return tuple(map(tuple, self.hom.tolist()))

    @cached_property
    def leq(self) -> np.ndarray:
        """Underlying preorder: a <= b iff I <= hom(a, b)."""
        return self.quantale.leq[self.quantale.unit][self.hom]

    @cached_property
    def key(self) -> tuple:
        return (self.quantale.key, self.objects, self.hom.tobytes())

    def __eq__(self, other) -> bool:
        return isinstance(other, OmegaCategory) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"OmegaCategory({self.name!r}, n={self.n}, over {self.quantale.name!r})"

    def index(self, obj: str | int) -> int:
        if isinstance(obj, (int, np.integer)):
            return int(obj)
        try:
            return self.objects.index(str(obj))
        except ValueError:
            raise KeyError(f"unknown object {obj!r} in {self.name or 'category'}") from None

    def hom_named(self, a, b) -> str:
        return self.quantale.names[self.hom[self.index(a), self.index(b)]]


def check_category(q: Quantale, objects: Sequence[str], hom, name: str = "",
                   points: tuple | None = None) -> OmegaCategory:
    q.require_commutative()
    objects = tuple(str(o) for o in objects)
    n = len(objects)
    h = np.array(hom, dtype=np.int64).reshape(n, n) if n else np.zeros((0, 0), dtype=np.int64)
    if n and (h.min() < 0 or h.max() >= q.n):
        raise LoadError("hom table has values outside the quantale carrier")
    le = q.leq
    for a in range(n):
        if not le[q.unit, h[a, a]]:
            raise ReflexivityFails("hom(a,a) is not above the unit", (objects[a],))
    T = q.tensor
    for a in range(n):
        comp = T[h[a, :, None], h]  # (b, c): hom(a,b) * hom(b,c)
        bad = ~le[comp, h[a][None, :]]
        if bad.any():
            b, c = (int(x) for x in np.argwhere(bad)[0])
            raise TransitivityFails("hom(a,b) * hom(b,c) exceeds hom(a,c)", (objects[a], objects[b], objects[c]))
    return OmegaCategory(q, objects, _frozen(h), name, points)


# ---------------------------------------------------------------------------
# constructors


def canonical_omega(q: Quantale) -> OmegaCategory:
    """Omega itself with hom(a, b) = a -> b."""
    return check_category(q, q.names, q.residuation, f"Omega[{q.name}]")


def dual(A: OmegaCategory) -> OmegaCategory:
    name = A.name[:-3] if A.name.endswith("^op") else A.name + "^op"
    return check_category(A.quantale, A.objects, A.hom.T, name, A.points)


def discrete(q: Quantale, objects: Sequence[str] | int) -> OmegaCategory:
    if isinstance(objects, int):
        objects = [f"x{i}" for i in range(objects)]
    n = len(objects)
    h = np.full((n, n), q.bottom, dtype=np.int64)
    np.fill_diagonal(h, q.unit)
    return check_category(q, objects, h, f"discrete{n}")


def terminal(q: Quantale) -> OmegaCategory:
    return check_category(q, ["*"], [[q.top]], "terminal")


def chain_category(q: Quantale, n: int) -> OmegaCategory:
    """The n-chain 0 < 1 < ... as an Omega-category: hom = I upward, 0 downward."""
    objects = [str(i) for i in range(n)]
    h = np.where(np.triu(np.ones((n, n), dtype=bool)), q.unit, q.bottom)
    return check_category(q, objects, h, f"chain{n}")


def subcategory(A: OmegaCategory, subset: Iterable) -> OmegaCategory:
    idx = sorted({A.index(x) for x in subset})
    pts = tuple(A.points[i] for i in idx) if A.points is not None else None
    return check_category(A.quantale, [A.objects[i] for i in idx], A.hom[np.ix_(idx, idx)],
                          f"{A.name}|{len(idx)}", pts)


def product(cats: Sequence[OmegaCategory], q: Quantale | None = None) -> OmegaCategory:
    """Cartesian product with hom the meet of componentwise homs.

    Objects are tuples of component indices in lexicographic order; the
    empty product is the terminal category.
    """
    if not cats:
        if q is None:
            raise ValueError("empty product needs the quantale")
        return terminal(q)
    q = cats[0].quantale
    for C in cats[1:]:
        if C.quantale != q:
            raise ValueError("product factors live over different quantales")
    tuples = list(itertools.product(*(range(C.n) for C in cats)))
    idx = np.array(tuples, dtype=np.int64)
    h = np.full((len(tuples), len(tuples)), q.top, dtype=np.int64)
    for k, C in enumerate(cats):
        h = q.meet[h, C.hom[np.ix_(idx[:, k], idx[:, k])]]
    names = ["(" + ",".join(C.objects[i] for C, i in zip(cats, t)) + ")" for t in tuples]
    return check_category(q, names, h, "x".join(C.name for C in cats), tuple(tuples))


def iso_classes(A: OmegaCategory) -> list[tuple[int, ...]]:
    """Objects grouped by isomorphism (hom >= I in both directions)."""
    both = A.leq & A.leq.T
    seen: set[int] = set()
    out = []
    for a in range(A.n):
        if a in seen:
            continue
        cls = tuple(int(b) for b in np.flatnonzero(both[a]))
        seen.update(cls)
        out.append(cls)
    return out


def underlying_preorder(A: OmegaCategory) -> np.ndarray:
    return A.leq


def is_antisymmetric(A: OmegaCategory) -> tuple[bool, tuple | None]:
    le = A.leq
    for a in range(A.n):
        for b in range(a + 1, A.n):
            if le[a, b] and le[b, a]:
                return False, (A.objects[a], A.objects[b])
    return True, None


# ---------------------------------------------------------------------------
# presheaves


@dataclass(frozen=True)
class Presheaf:
    base: OmegaCategory
    variance: str
    values: tuple[int, ...]

    def __call__(self, x) -> int:
        return self.values[self.base.index(x)]

    def named(self) -> dict[str, str]:
        nm = self.base.quantale.names
        return {o: nm[v] for o, v in zip(self.base.objects, self.values)}

    def __repr__(self) -> str:
        return f"Presheaf({self.variance}, {self.base.quantale.fmt(self.values)})"


def _oriented(A: OmegaCategory, variance: str) -> np.ndarray:
    """Hom matrix in the orientation where the presheaf law reads v(x)*H(x,y) <= v(y)."""
    if variance == UPPER:
        return A.hom
    if variance == LOWER:
        return A.hom.T
    raise ValueError(f"variance must be {LOWER!r} or {UPPER!r}, got {variance!r}")


def presheaf_violation(A: OmegaCategory, values, variance: str) -> tuple[int, int] | None:
    q = A.quantale
    v = np.asarray(values, dtype=np.int64)
    H = _oriented(A, variance)
    bad = ~q.leq[q.tensor[v[:, None], H], v[None, :]]
    if bad.any():
        x, y = (int(i) for i in np.argwhere(bad)[0])
        return x, y
    return None


def is_presheaf(A: OmegaCategory, values, variance: str) -> bool:
    return presheaf_violation(A, values, variance) is None


def presheaf(A: OmegaCategory, values, variance: str) -> Presheaf:
    """Wrap and validate a value vector (names or indices)."""
    q = A.quantale
    vals = tuple(q.element(v) for v in values)
    if len(vals) != A.n:
        raise NotAPresheaf(f"expected {A.n} values, got {len(vals)}")
    bad = presheaf_violation(A, vals, variance)
    if bad is not None:
        raise NotAPresheaf(f"not a {variance} presheaf", (A.objects[bad[0]], A.objects[bad[1]]))
    return Presheaf(A, variance, vals)


def enumerate_presheaves(A: OmegaCategory, variance: str, budget: Budget | int | None = None) -> np.ndarray:
    """All presheaves of the given variance as an ``(N, n)`` matrix, rows in lexicographic order.

    Objects are assigned in order; each new value is confined to the
    interval forced by the already-assigned objects, so the search only
    visits prefixes that extend to a presheaf or fail at the diagonal.
    """
    budget = as_budget(budget)
    q = A.quantale
    n = A.n
    H = _oriented(A, variance)
    T, R, J, M, le = q.tensor, q.residuation, q.join, q.meet, q.leq
    values = np.arange(q.n)
    what = f"{variance} presheaves on {A.name or 'category'}"
    # one search node per surviving prefix, level by level; rows stay lexicographic
    P = np.zeros((1, 0), dtype=np.int64)
    for i in range(n):
        budget.spend(P.shape[0], what)
        lo = np.full(P.shape[0], q.bottom, dtype=np.int64)
        hi = np.full(P.shape[0], q.top, dtype=np.int64)
        for j in range(i):
            lo = J[lo, T[P[:, j], H[j, i]]]
            hi = M[hi, R[H[i, j], P[:, j]]]
        fits = le[lo[:, None], values[None, :]] & le[values[None, :], hi[:, None]]
        fits &= le[T[values, H[i, i]], values][None, :]
        rows, vs = np.nonzero(fits)
        P = np.concatenate([P[rows], vs[:, None]], axis=1)
    budget.spend(P.shape[0], what)
    return P.astype(np.int64, copy=False)


def presheaf_homs(q: Quantale, P1, P2) -> np.ndarray:
    """Matrix of [.,Omega](p1, p2) = meet_x p1(x) -> p2(x) for all rows p1 of P1, p2 of P2."""
    P1 = np.asarray(P1, dtype=np.int64)
    P2 = np.asarray(P2, dtype=np.int64)
    if P1.shape[-1] == 0:
        return np.full((P1.shape[0], P2.shape[0]), q.top, dtype=np.int64)
    out = np.full((P1.shape[0], P2.shape[0]), q.top, dtype=np.int64)
    R, M = q.residuation, q.meet
    for x in range(P1.shape[1]):
        out = M[out, R[P1[:, x][:, None], P2[:, x][None, :]]]
    return out


def presheaf_hom(q: Quantale, v1, v2) -> int:
    return int(presheaf_homs(q, np.asarray(v1)[None, :], np.asarray(v2)[None, :])[0, 0])


def presheaf_category(A: OmegaCategory, variance: str = LOWER, budget: Budget | int | None = None,
                      values: np.ndarray | None = None) -> OmegaCategory:
    """[A^op, Omega] (lower) or [A, Omega] (upper) with hom meet_x p1(x) -> p2(x)."""
    budget = as_budget(budget)
    q = A.quantale
    V = enumerate_presheaves(A, variance, budget) if values is None else values
    N = V.shape[0]
    budget.check(N * N, f"hom cells of the {variance} presheaf category on {A.name}")
    h = presheaf_homs(q, V, V)
    names = [q.fmt(row) for row in V]
    label = f"[{A.name}^op,Omega]" if variance == LOWER else f"[{A.name},Omega]"
    pts = tuple(tuple(int(x) for x in row) for row in V)
    return check_category(q, names, h, label, pts)


def omega_power(q: Quantale, X: Sequence[str] | int, budget: Budget | int | None = None) -> OmegaCategory:
    """[Omega^X]: all functions X -> Omega with the pointwise residuation hom."""
    C = presheaf_category(discrete(q, X), LOWER, budget)
    n = X if isinstance(X, int) else len(X)
    return OmegaCategory(q, C.objects, C.hom, f"[Omega^{n}]", C.points)


def yoneda(A: OmegaCategory, a) -> Presheaf:
    return Presheaf(A, LOWER, tuple(int(v) for v in A.hom[:, A.index(a)]))


def coyoneda(A: OmegaCategory, a) -> Presheaf:
    return Presheaf(A, UPPER, tuple(int(v) for v in A.hom[A.index(a), :]))


def down_close_many(A: OmegaCategory, V) -> np.ndarray:
    """Rows mu -> (x -> join_y mu(y) * A(x, y))."""
    q = A.quantale
    V = np.atleast_2d(np.asarray(V, dtype=np.int64))
    return q.vjoin(q.tensor[V[:, None, :], A.hom[None, :, :]], axis=2)


def up_close_many(A: OmegaCategory, V) -> np.ndarray:
    """Rows mu -> (x -> join_y mu(y) * A(y, x))."""
    q = A.quantale
    V = np.atleast_2d(np.asarray(V, dtype=np.int64))
    return q.vjoin(q.tensor[V[:, None, :], A.hom.T[None, :, :]], axis=2)


def down_close(A: OmegaCategory, mu) -> Presheaf:
    mu = [A.quantale.element(v) for v in mu]
    return Presheaf(A, LOWER, tuple(int(v) for v in down_close_many(A, mu)[0]))


def up_close(A: OmegaCategory, mu) -> Presheaf:
    mu = [A.quantale.element(v) for v in mu]
    return Presheaf(A, UPPER, tuple(int(v) for v in up_close_many(A, mu)[0]))


def yoneda_check(A: OmegaCategory, budget: Budget | int | None = None) -> Report:
    budget = as_budget(budget)
    q = A.quantale
    rep = Report(f"yoneda on {A.name}")
    Y = A.hom.T  # row a = y(a)
    Yp = A.hom   # row a = y'(a)
    bad_y = next((a for a in range(A.n) if not is_presheaf(A, Y[a], LOWER)), None)
    bad_yp = next((a for a in range(A.n) if not is_presheaf(A, Yp[a], UPPER)), None)
    rep.add("principal-lower-is-presheaf", bad_y is None, None if bad_y is None else (A.objects[bad_y],))
    rep.add("principal-upper-is-presheaf", bad_yp is None, None if bad_yp is None else (A.objects[bad_yp],))
    for variance, Pr, label in ((LOWER, Y, "yoneda"), (UPPER, Yp, "coyoneda")):
        P = enumerate_presheaves(A, variance, budget)
        H = presheaf_homs(q, Pr, P)  # (a, phi)
        bad = H != P.T
        w = None
        if bad.any():
            a, k = (int(i) for i in np.argwhere(bad)[0])
            w = (A.objects[a], q.fmt(P[k]))
        rep.add(f"{label}-equality", not bad.any(), w, presheaves=int(P.shape[0]))
    iso = presheaf_homs(q, Y, Y)
    bad = iso != A.hom
    w = tuple(A.objects[int(i)] for i in np.argwhere(bad)[0]) if bad.any() else None
    rep.add("yoneda-isometry", not bad.any(), w)
    iso = presheaf_homs(q, Yp, Yp).T  # [A,Omega]^op(y'a, y'b) = [A,Omega](y'b, y'a)
    bad = iso != A.hom
    w = tuple(A.objects[int(i)] for i in np.argwhere(bad)[0]) if bad.any() else None
    rep.add("coyoneda-isometry", not bad.any(), w)
    return rep


# ---------------------------------------------------------------------------
# functors and adjunctions


@dataclass(frozen=True)
class OmegaFunctor:
    dom: OmegaCategory
    cod: OmegaCategory
    map: tuple[int, ...]

    def __call__(self, x) -> int:
        return self.map[self.dom.index(x)]

    def named(self) -> dict[str, str]:
        return {self.dom.objects[a]: self.cod.objects[b] for a, b in enumerate(self.map)}


def functor_violation(A: OmegaCategory, B: OmegaCategory, fmap) -> tuple[int, int] | None:
    f = np.asarray(fmap, dtype=np.int64)
    le = A.quantale.leq
    bad = ~le[A.hom, B.hom[np.ix_(f, f)]]
    if bad.any():
        a, b = (int(i) for i in np.argwhere(bad)[0])
        return a, b
    return None


def is_functor(A: OmegaCategory, B: OmegaCategory, fmap) -> bool:
    return len(fmap) == A.n and functor_violation(A, B, fmap) is None


def functor(A: OmegaCategory, B: OmegaCategory, fmap) -> OmegaFunctor:
    """Validate an object map given by indices, names, or a name -> name dict."""
    if isinstance(fmap, dict):
        fmap = [fmap[o] for o in A.objects]
    m = tuple(B.index(x) for x in fmap)
    if len(m) != A.n:
        raise NotAFunctor(f"object map has {len(m)} entries, expected {A.n}")
    bad = functor_violation(A, B, m)
    if bad is not None:
        raise NotAFunctor("A(a,b) is not below B(fa,fb)", (A.objects[bad[0]], A.objects[bad[1]]))
    return OmegaFunctor(A, B, m)


def identity(A: OmegaCategory) -> OmegaFunctor:
    return OmegaFunctor(A, A, tuple(range(A.n)))


def constant(A: OmegaCategory, B: OmegaCategory, b) -> OmegaFunctor:
    return functor(A, B, [B.index(b)] * A.n)


def enumerate_functors(A: OmegaCategory, B: OmegaCategory, budget: Budget | int | None = None) -> list[tuple[int, ...]]:
    """All Omega-functors A -> B, lexicographic by object map."""
    budget = as_budget(budget)
    n = A.n
    Ah, Bh, le = A._h, B._h, A.quantale._le
    m = [0] * n
    out: list[tuple[int, ...]] = []
    what = f"functors {A.name} -> {B.name}"

    def rec(i: int) -> None:
        budget.spend(1, what)
        if i == n:
            out.append(tuple(m))
            return
        Ai = Ah[i]
        for b in range(B.n):
            Bb = Bh[b]
            if not le[Ai[i]][Bb[b]]:
                continue
            ok = True
            for j in range(i):
                mj = m[j]
                if not le[Ai[j]][Bb[mj]] or not le[Ah[j][i]][Bh[mj][b]]:
                    ok = False
                    break
            if ok:
                m[i] = b
                rec(i + 1)

    rec(0)
    return out


def functor_category(A: OmegaCategory, B: OmegaCategory, budget: Budget | int | None = None) -> OmegaCategory:
    """[A, B] with hom(f, g) = meet_x B(f x, g x)."""
    q = A.quantale
    maps = enumerate_functors(A, B, budget)
    F = np.array(maps, dtype=np.int64).reshape(len(maps), A.n)
    h = np.full((len(maps), len(maps)), q.top, dtype=np.int64)
    for x in range(A.n):
        h = q.meet[h, B.hom[np.ix_(F[:, x], F[:, x])]]
    names = ["[" + ",".join(B.objects[b] for b in m) + "]" for m in maps]
    return check_category(q, names, h, f"[{A.name},{B.name}]", tuple(maps))


@dataclass(frozen=True)
class Adjunction:
    left: OmegaFunctor
    right: OmegaFunctor


def adjunction_violation(A: OmegaCategory, B: OmegaCategory, fmap, gmap) -> tuple[int, int] | None:
    """First (a, b) with B(f a, b) != A(a, g b)."""
    f = np.asarray(fmap, dtype=np.int64)
    g = np.asarray(gmap, dtype=np.int64)
    bad = B.hom[f, :] != A.hom[:, g]
    if bad.any():
        a, b = (int(i) for i in np.argwhere(bad)[0])
        return a, b
    return None


def is_adjunction(A: OmegaCategory, B: OmegaCategory, fmap, gmap) -> bool:
    return (adjunction_violation(A, B, fmap, gmap) is None
            and is_functor(A, B, fmap) and is_functor(B, A, gmap))


def check_adjunction(f: OmegaFunctor, g: OmegaFunctor) -> Adjunction:
    """Exact hom equality plus functoriality of both sides."""
    A, B = f.dom, f.cod
    if g.dom != B or g.cod != A:
        raise NoAdjoint("maps do not run in opposite directions between the same categories")
    bad = adjunction_violation(A, B, f.map, g.map)
    if bad is not None:
        raise NoAdjoint("B(f a, b) != A(a, g b)", (A.objects[bad[0]], B.objects[bad[1]]))
    functor(A, B, f.map)
    functor(B, A, g.map)
    return Adjunction(f, g)


def right_adjoint_candidates(A: OmegaCategory, B: OmegaCategory, fmap) -> list[list[int]]:
    """For each b, the objects x with A(a, x) = B(f a, b) for every a."""
    f = np.asarray(fmap, dtype=np.int64)
    target = B.hom[f, :]  # (a, b)
    return [[int(x) for x in np.flatnonzero((A.hom == target[:, b][:, None]).all(axis=0))] for b in range(B.n)]


def left_adjoint_candidates(A: OmegaCategory, B: OmegaCategory, gmap) -> list[list[int]]:
    """For each a, the objects y with B(y, b) = A(a, g b) for every b."""
    g = np.asarray(gmap, dtype=np.int64)
    target = A.hom[:, g]  # (a, b)
    return [[int(y) for y in np.flatnonzero((B.hom == target[a][None, :]).all(axis=1))] for a in range(A.n)]


def _all_choices(cands: list[list[int]], budget: Budget | int | None, what: str) -> list[tuple[int, ...]]:
    budget = as_budget(budget)
    total = 1
    for c in cands:
        total *= len(c)
    budget.check(total, what)
    budget.spend(total, what)
    return [tuple(t) for t in itertools.product(*cands)]


def find_right_adjoint(f: OmegaFunctor, budget: Budget | int | None = None) -> list[tuple[int, ...]]:
    """All right adjoints of f, canonically ordered.

    The adjunction equality constrains each g(b) separately, so the
    solution set is the product of per-object candidate sets.
    """
    A, B = f.dom, f.cod
    cands = right_adjoint_candidates(A, B, f.map)
    for b, c in enumerate(cands):
        if not c:
            raise NoAdjoint(f"no right adjoint: no object of {A.name} represents B(f-, b)", (B.objects[b],))
    return [g for g in _all_choices(cands, budget, "right adjoint candidates") if is_functor(B, A, g)]


def find_left_adjoint(g: OmegaFunctor, budget: Budget | int | None = None) -> list[tuple[int, ...]]:
    B, A = g.dom, g.cod
    cands = left_adjoint_candidates(A, B, g.map)
    for a, c in enumerate(cands):
        if not c:
            raise NoAdjoint(f"no left adjoint: no object of {B.name} represents A(a, g-)", (A.objects[a],))
    return [f for f in _all_choices(cands, budget, "left adjoint candidates") if is_functor(A, B, f)]


def has_right_adjoint(A: OmegaCategory, B: OmegaCategory, fmap) -> bool:
    return all(right_adjoint_candidates(A, B, fmap))


def has_left_adjoint(B: OmegaCategory, A: OmegaCategory, gmap) -> bool:
    """Whether g: B -> A has a left adjoint."""
    return all(left_adjoint_candidates(A, B, gmap))


def adjunction_properties(adj: Adjunction) -> Report:
    """Triangle identities and the injectivity/surjectivity equivalences."""
    f, g = adj.left, adj.right
    A, B = f.dom, f.cod
    fm, gm = f.map, g.map
    rep = Report("adjunction properties")
    bad = next((a for a in range(A.n) if fm[gm[fm[a]]] != fm[a]), None)
    rep.add("fgf=f", bad is None, None if bad is None else (A.objects[bad],))
    bad = next((b for b in range(B.n) if gm[fm[gm[b]]] != gm[b]), None)
    rep.add("gfg=g", bad is None, None if bad is None else (B.objects[bad],))
    f_inj = len(set(fm)) == A.n
    gf_id = all(gm[fm[a]] == a for a in range(A.n))
    g_surj = set(gm) == set(range(A.n))
    rep.add("f-injective<=>gf=id<=>g-surjective", f_inj == gf_id == g_surj,
            None if f_inj == gf_id == g_surj else (f_inj, gf_id, g_surj))
    if f_inj:
        iso = bool((B.hom[np.ix_(fm, fm)] == A.hom).all())
        rep.add("injective-left-is-isometry", iso, None if iso else ("f",))
    f_surj = set(fm) == set(range(B.n))
    fg_id = all(fm[gm[b]] == b for b in range(B.n))
    g_inj = len(set(gm)) == B.n
    rep.add("f-surjective<=>fg=id<=>g-injective", f_surj == fg_id == g_inj,
            None if f_surj == fg_id == g_inj else (f_surj, fg_id, g_inj))
    if g_inj:
        iso = bool((A.hom[np.ix_(gm, gm)] == B.hom).all())
        rep.add("injective-right-is-isometry", iso, None if iso else ("g",))
    return rep


# ---------------------------------------------------------------------------
# Kan extensions


def image(f: OmegaFunctor, phi) -> np.ndarray:
    """f(phi)(b) = join of phi over the fibre of b; empty fibres give 0."""
    return image_many(f, np.atleast_2d(phi))[0]


def image_many(f: OmegaFunctor, V) -> np.ndarray:
    q = f.dom.quantale
    V = np.atleast_2d(np.asarray(V, dtype=np.int64))
    out = np.full((V.shape[0], f.cod.n), q.bottom, dtype=np.int64)
    for x, b in enumerate(f.map):
        out[:, b] = q.join[out[:, b], V[:, x]]
    return out


@dataclass(frozen=True)
class KanExtensions:
    """Restriction along f and its two adjoints, for one variance."""

    functor: OmegaFunctor
    variance: str

    def _H(self) -> np.ndarray:
        # B-hom oriented so both variances share one formula
        B = self.functor.cod
        return B.hom if self.variance == UPPER else B.hom.T

    def restrict(self, V) -> np.ndarray:
        V = np.atleast_2d(np.asarray(V, dtype=np.int64))
        return V[:, np.asarray(self.functor.map, dtype=np.int64)]

    def left(self, V) -> np.ndarray:
        """Upper: join_x psi(x) * B(fx, y); lower: join_x phi(x) * B(y, fx)."""
        q = self.functor.dom.quantale
        V = np.atleast_2d(np.asarray(V, dtype=np.int64))
        Hf = self._H()[np.asarray(self.functor.map, dtype=np.int64), :]  # (x, y)
        return q.vjoin(q.tensor[V[:, :, None], Hf[None, :, :]], axis=1)

    def right(self, V) -> np.ndarray:
        """Upper: meet_x B(y, fx) -> psi(x); lower: meet_x B(fx, y) -> phi(x)."""
        q = self.functor.dom.quantale
        V = np.atleast_2d(np.asarray(V, dtype=np.int64))
        Hf = self._H()[:, np.asarray(self.functor.map, dtype=np.int64)]  # (y, x)
        return q.vmeet(q.residuation[Hf[None, :, :], V[:, None, :]], axis=2)


def kan(f: OmegaFunctor, variance: str = UPPER) -> KanExtensions:
    _oriented(f.dom, variance)
    return KanExtensions(f, variance)


def kan_check(f: OmegaFunctor, variance: str = UPPER, budget: Budget | int | None = None) -> Report:
    """Verify left -| restrict -| right on the enumerated presheaf categories."""
    budget = as_budget(budget)
    A, B = f.dom, f.cod
    q = A.quantale
    K = kan(f, variance)
    PA = enumerate_presheaves(A, variance, budget)
    PB = enumerate_presheaves(B, variance, budget)
    rep = Report(f"kan extensions ({variance}) along {A.name} -> {B.name}")
    setA = {tuple(r) for r in PA.tolist()}
    setB = {tuple(r) for r in PB.tolist()}
    res, lef, rig = K.restrict(PB), K.left(PA), K.right(PA)
    for label, M, S, src in (("restrict", res, setA, PB), ("left", lef, setB, PA), ("right", rig, setB, PA)):
        bad = next((k for k, r in enumerate(M.tolist()) if tuple(r) not in S), None)
        rep.add(f"{label}-lands-in-presheaves", bad is None, None if bad is None else (q.fmt(src[bad]),))
    # [B](left psi, chi) == [A](psi, chi o f)
    lhs = presheaf_homs(q, lef, PB)
    rhs = presheaf_homs(q, PA, res)
    bad = lhs != rhs
    w = None
    if bad.any():
        i, j = (int(v) for v in np.argwhere(bad)[0])
        w = (q.fmt(PA[i]), q.fmt(PB[j]))
    rep.add("left-adjoint-to-restriction", not bad.any(), w)
    # [A](chi o f, psi) == [B](chi, right psi)
    lhs = presheaf_homs(q, res, PA)
    rhs = presheaf_homs(q, PB, rig)
    bad = lhs != rhs
    w = None
    if bad.any():
        j, i = (int(v) for v in np.argwhere(bad)[0])
        w = (q.fmt(PB[j]), q.fmt(PA[i]))
    rep.add("right-adjoint-to-restriction", not bad.any(), w)
    close = up_close_many if variance == UPPER else down_close_many
    via_image = close(B, image_many(f, PA)) if PA.shape[0] else lef
    bad = ~(via_image == lef).all(axis=1)
    rep.add("left-is-closure-of-image", not bad.any(),
            None if not bad.any() else (q.fmt(PA[int(np.flatnonzero(bad)[0])]),))
    rep.stamps.update({"presheaves_dom": int(PA.shape[0]), "presheaves_cod": int(PB.shape[0])})
    return rep


def check_upper_presheaf_closure(A: OmegaCategory, budget: Budget | int | None = None) -> Report:
    """Closure of [A, Omega] under joins, meets, scalar tensors and residuals."""
    budget = as_budget(budget)
    q = A.quantale
    P = enumerate_presheaves(A, UPPER, budget)
    S = {tuple(r) for r in P.tolist()}
    N = P.shape[0]
    rep = Report(f"upper presheaf closure on {A.name}")
    zero = (q.bottom,) * A.n
    one = (q.top,) * A.n
    rep.add("empty-join-is-presheaf", zero in S, None if zero in S else (q.fmt(zero),))
    rep.add("empty-meet-is-presheaf", one in S, None if one in S else (q.fmt(one),))
    budget.check(N * N, "pairs of upper presheaves")
    for label, table in (("binary-joins", q.join), ("binary-meets", q.meet)):
        C = table[P[:, None, :], P[None, :, :]].reshape(N * N, A.n)
        bad = next((k for k, r in enumerate(C.tolist()) if tuple(r) not in S), None)
        rep.add(label, bad is None, None if bad is None else (q.fmt(P[bad // N]), q.fmt(P[bad % N])))
    for label, table in (("scalar-tensor", q.tensor), ("scalar-residual", q.residuation)):
        bad = None
        for a in range(q.n):
            for k in range(N):
                if tuple(int(v) for v in table[a, P[k]]) not in S:
                    bad = (q.names[a], q.fmt(P[k]))
                    break
            if bad:
                break
        rep.add(label, bad is None, bad)
    bad = None
    dd_bad = None
    for k in range(N):
        psi = P[k]
        acc = np.full(A.n, q.top, dtype=np.int64)
        for a in range(q.n):
            neg = q.residuation[psi, a]
            if bad is None and not is_presheaf(A, neg, LOWER):
                bad = (q.fmt(psi), q.names[a])
            acc = q.meet[acc, q.residuation[neg, a]]
        if dd_bad is None and not (acc == psi).all():
            dd_bad = (q.fmt(psi),)
    rep.add("residual-into-constant-is-lower", bad is None, bad)
    rep.add("double-dualization", dd_bad is None, dd_bad)
    rep.stamps["upper_presheaves"] = N
    return rep


# ---------------------------------------------------------------------------
# small-category enumeration


def enumerate_categories(q: Quantale, n: int, budget: Budget | int | None = None) -> list[OmegaCategory]:
    """Every Omega-category structure on objects 0..n-1 (raw tables, no isomorphism reduction)."""
    budget = as_budget(budget)
    q.require_commutative()
    diag = [v for v in range(q.n) if q.leq[q.unit, v]]
    cells = [(a, b) for a in range(n) for b in range(n)]
    h = [[0] * n for _ in range(n)]
    T, le = q._t, q._le
    out = []

    def ok_upto(k: int) -> bool:
        # transitivity triples whose three cells are all assigned
        a, b = cells[k]
        for c in range(n):
            for (x, y, z) in ((a, b, c), (c, a, b), (a, c, b)):
                idx = max(x * n + y, y * n + z, x * n + z)
                if idx <= k and not le[T[h[x][y]][h[y][z]]][h[x][z]]:
                    return False
        return True

    def rec(k: int) -> None:
        budget.spend(1, f"{n}-object categories over {q.name}")
        if k == len(cells):
            out.append(check_category(q, [str(i) for i in range(n)], [row[:] for row in h],
                                      f"cat{n}#{len(out)}"))
            return
        a, b = cells[k]
        for v in (diag if a == b else range(q.n)):
            h[a][b] = v
            if ok_upto(k):
                rec(k + 1)

    rec(0)
    return out


# ---------------------------------------------------------------------------
# file format


def category_from_json(obj) -> OmegaCategory:
    if isinstance(obj, (str, Path)):
        text = Path(obj).read_text(encoding="utf-8")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise LoadError(f"{obj}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    else:
        data = obj
    qspec = data.get("quantale")
    if isinstance(qspec, str):
        try:
            q = builtin(qspec)
        except KeyError as e:
            raise LoadError(f"quantale: {e.args[0]}") from None
    elif isinstance(qspec, dict):
        q = quantale_from_json(qspec)
    else:
        raise LoadError("'quantale' must be a builtin name or an inline quantale object")
    objects = data.get("objects")
    if not isinstance(objects, list) or not objects:
        raise LoadError("'objects' must be a non-empty array of names")
    objects = [str(o) for o in objects]
    if len(set(objects)) != len(objects):
        raise LoadError("'objects' contains duplicate names")
    pos = {o: i for i, o in enumerate(objects)}
    n = len(objects)
    h = [[-1] * n for _ in range(n)]
    known = set(q.names)
    for key, val in (data.get("hom") or {}).items():
        parts = [p.strip() for p in str(key).split(",")]
        if len(parts) != 2:
            raise LoadError(f"hom[{key!r}]: key must have the form \"a,b\"")
        for p in parts:
            if p not in pos:
                raise LoadError(f"hom[{key!r}]: unknown object {p!r}")
        if str(val) not in known:
            raise LoadError(f"hom[{key!r}]: unknown quantale element {val!r}")
        h[pos[parts[0]]][pos[parts[1]]] = q.element(str(val))
    for a in range(n):
        if h[a][a] < 0:
            h[a][a] = q.unit
        for b in range(n):
            if h[a][b] < 0:
                raise LoadError(f"hom: missing entry \"{objects[a]},{objects[b]}\"")
    return check_category(q, objects, h, str(data.get("name", "category")))
