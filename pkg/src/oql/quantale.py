"""Finite lattices and commutative unital quantales.

Elements are dense indices ``0..n-1`` ordered by a fixed linear extension
of the lattice order, so index 0 is always the bottom.  Names only matter
for I/O.  All tables are read-only numpy arrays; the nested-tuple mirrors
(``_t``, ``_r``, ...) exist for fast scalar access in the search loops.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from .budget import Budget, as_budget
from .errors import (
    BadSize,
    JoinDistributionFails,
    LatticeInvalid,
    LoadError,
    NotAssociative,
    NotCommutative,
    NotMonotone,
    SizeBound,
    UnitLawFails,
)

ENUMERATION_SIZE_BOUND = 5


def _frozen(a) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


def fold(table: np.ndarray, arr, identity: int, axis: int = -1) -> np.ndarray:
    """Reduce ``arr`` along ``axis`` with a binary operation given as a table."""
    arr = np.moveaxis(np.asarray(arr), axis, -1)
    if arr.shape[-1] == 0:
        return np.full(arr.shape[:-1], identity, dtype=np.int64)
    # pairwise halving keeps adjacent operands together, so any associative table works
    while arr.shape[-1] > 1:
        m = arr.shape[-1] // 2 * 2
        paired = table[arr[..., 0:m:2], arr[..., 1:m:2]]
        arr = np.concatenate([paired, arr[..., m:]], axis=-1) if m < arr.shape[-1] else paired
    return arr[..., 0]


class _NoBound(Exception):
    def __init__(self, message: str, where: tuple[int, ...]):
        super().__init__(message)
        self.message = message
        self.where = where


def lattice_tables(rel: np.ndarray) -> tuple[np.ndarray, np.ndarray, int, int]:
    """Joins, meets, bottom and top of a finite partial order, or raise on the first gap.

    The least upper bound, when it exists, is the upper bound with the
    smallest down-set, so one argmin per pair plus a containment check
    decides it.
    """
    rel = np.asarray(rel, dtype=bool)
    n = rel.shape[0]
    rank = rel.sum(axis=0)  # size of each down-set
    bottoms = np.flatnonzero(rel.all(axis=1))
    tops = np.flatnonzero(rel.all(axis=0))
    strict = rel & ~np.eye(n, dtype=bool)
    if len(bottoms) == 0:
        minimal = tuple(int(i) for i in np.flatnonzero(~strict.any(axis=0)))
        raise _NoBound("no bottom element; minimal elements are", minimal)
    if len(tops) == 0:
        maximal = tuple(int(i) for i in np.flatnonzero(~strict.any(axis=1)))
        raise _NoBound("no top element; maximal elements are", maximal)
    join = np.zeros((n, n), dtype=np.int64)
    meet = np.zeros((n, n), dtype=np.int64)
    big = n + 1
    for a in range(n):
        ub = rel[a][None, :] & rel  # (b, c): c above a and b
        score = np.where(ub, rank[None, :], big)
        c = score.argmin(axis=1)
        ok = ~(ub & ~rel[c]).any(axis=1)
        if not ok.all():
            b = int(np.flatnonzero(~ok)[0])
            raise _NoBound("no least upper bound", (a, b))
        join[a] = c
        lb = rel[:, a][None, :] & rel.T  # (b, c): c below a and b
        score = np.where(lb, -rank[None, :], 1)
        c = score.argmin(axis=1)
        ok = ~(lb & ~rel[:, c].T).any(axis=1)
        if not ok.all():
            b = int(np.flatnonzero(~ok)[0])
            raise _NoBound("no greatest lower bound", (a, b))
        meet[a] = c
    return join, meet, int(bottoms[0]), int(tops[0])


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    names: tuple[str, ...]
    leq: np.ndarray
    join: np.ndarray
    meet: np.ndarray
    bottom: int
    top: int

    @property
    def n(self) -> int:
        return len(self.names)

    @classmethod
    def from_order(cls, names: Sequence[str], leq, reorder: bool = True) -> "FiniteLattice":
        """Validate a partial order and derive joins and meets.

        ``leq`` is any boolean n x n relation; its reflexive-transitive
        closure is taken.  With ``reorder`` the elements are re-indexed
        along a linear extension (ties broken by the given order).
        """
        names = tuple(str(x) for x in names)
        n = len(names)
        if n == 0:
            raise LatticeInvalid("empty carrier has no bottom")
        if len(set(names)) != n:
            dup = next(x for x in names if names.count(x) > 1)
            raise LatticeInvalid("duplicate element name", (dup,))
        rel = np.array(leq, dtype=bool).reshape(n, n) | np.eye(n, dtype=bool)
        for k in range(n):
            rel |= rel[:, k : k + 1] & rel[k : k + 1, :]
        both = rel & rel.T & ~np.eye(n, dtype=bool)
        if both.any():
            a, b = np.argwhere(both)[0]
            raise LatticeInvalid("order is not antisymmetric", (names[a], names[b]))
        if reorder:
            # down-set size strictly increases along the order: a linear extension
            perm = sorted(range(n), key=lambda a: (int(rel[:, a].sum()), a))
            rel = rel[np.ix_(perm, perm)]
            names = tuple(names[i] for i in perm)
        try:
            join, meet, bottom, top = lattice_tables(rel)
        except _NoBound as e:
            raise LatticeInvalid(e.message, tuple(names[i] for i in e.where)) from None
        return cls(names, _frozen(rel), _frozen(join), _frozen(meet), bottom, top)

    @classmethod
    def from_pairs(cls, names: Sequence[str], pairs: Iterable[tuple[str, str]]) -> "FiniteLattice":
        idx = {x: i for i, x in enumerate(names)}
        rel = np.zeros((len(names), len(names)), dtype=bool)
        for a, b in pairs:
            rel[idx[a], idx[b]] = True
        return cls.from_order(names, rel)

    def index(self, name: str) -> int:
        try:
            return self.names.index(str(name))
        except ValueError:
            raise KeyError(f"unknown element {name!r}") from None

    def join_all(self, xs: Iterable[int]) -> int:
        out = self.bottom
        for x in xs:
            out = int(self.join[out, x])
        return out

    def meet_all(self, xs: Iterable[int]) -> int:
        out = self.top
        for x in xs:
            out = int(self.meet[out, x])
        return out

    def is_chain(self) -> bool:
        return bool((self.leq | self.leq.T).all())


def chain_lattice(n: int, names: Sequence[str] | None = None) -> FiniteLattice:
    if n < 1:
        raise BadSize(f"chain size must be positive, got {n}")
    if names is None:
        names = chain_names(n)
    rel = np.triu(np.ones((n, n), dtype=bool))
    return FiniteLattice.from_order(names, rel)


def chain_names(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("0",)
    if n == 2:
        return ("0", "1")
    if n == 3:
        return ("0", "u", "1")
    return tuple(["0"] + [f"{k}/{n - 1}" for k in range(1, n - 1)] + ["1"])


@dataclass(frozen=True, eq=False)
class Quantale:
    """A validated finite unital quantale with its residuation table."""

    name: str
    lattice: FiniteLattice
    unit: int
    tensor: np.ndarray
    residuation: np.ndarray
    commutative: bool = True

    # -- shorthands -------------------------------------------------------
    @property
    def n(self) -> int:
        return self.lattice.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.lattice.names

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @property
    def top(self) -> int:
        return self.lattice.top

    @property
    def leq(self) -> np.ndarray:
        return self.lattice.leq

    @property
    def join(self) -> np.ndarray:
        return self.lattice.join

    @property
    def meet(self) -> np.ndarray:
        return self.lattice.meet

    @property
    def integral(self) -> bool:
        return self.unit == self.top

    @cached_property
    def _t(self) -> tuple[tuple[int, ...], ...]:
        return tuple(map(tuple, self.tensor.tolist()))

    @cached_property
    def _r(self) -> tuple[tuple[int, ...], ...]:
        return tuple(map(tuple, self.residuation.tolist()))

    @cached_property
    def _le(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(map(tuple, self.leq.tolist()))

    @cached_property
    def _j(self) -> tuple[tuple[int, ...], ...]:
        return tuple(map(tuple, self.join.tolist()))

    @cached_property
    def _m(self) -> tuple[tuple[int, ...], ...]:
        return tuple(map(tuple, self.meet.tolist()))

    @cached_property
    def intervals(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """``intervals[lo][hi]``: elements v with lo <= v <= hi, ascending."""
        le = self.leq
        return tuple(
            tuple(tuple(v for v in range(self.n) if le[lo, v] and le[v, hi]) for hi in range(self.n))
            for lo in range(self.n)
        )

    @cached_property
    def key(self) -> tuple:
        return (self.names, self.leq.tobytes(), self.unit, tuple(self.tensor.ravel().tolist()))

    def __eq__(self, other) -> bool:
        return isinstance(other, Quantale) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Quantale({self.name!r}, n={self.n}, unit={self.names[self.unit]!r})"

    def element(self, name: str | int) -> int:
        if isinstance(name, (int, np.integer)):
            return int(name)
        return self.lattice.index(name)

    def fmt(self, values: Iterable[int]) -> str:
        return "(" + ",".join(self.names[int(v)] for v in values) + ")"

    def join_all(self, xs: Iterable[int]) -> int:
        return self.lattice.join_all(xs)

    def meet_all(self, xs: Iterable[int]) -> int:
        return self.lattice.meet_all(xs)

    def vjoin(self, arr, axis: int = -1) -> np.ndarray:
        return fold(self.join, arr, self.bottom, axis)

    def vmeet(self, arr, axis: int = -1) -> np.ndarray:
        return fold(self.meet, arr, self.top, axis)

    def require_commutative(self) -> None:
        if not self.commutative:
            a, b = _first_noncommuting(self.tensor)
            raise NotCommutative(
                f"quantale {self.name!r} is not commutative; downstream constructions need commutativity",
                (self.names[a], self.names[b]),
            )

    def to_json(self) -> dict:
        n = self.n
        pairs = [[self.names[a], self.names[b]] for a in range(n) for b in range(n) if a != b and self.leq[a, b]]
        tensor = {}
        for a in range(n):
            for b in range(n):
                if self.commutative and b < a:
                    continue
                tensor[f"{self.names[a]},{self.names[b]}"] = self.names[self.tensor[a, b]]
        return {
            "name": self.name,
            "elements": list(self.names),
            "leq": pairs,
            "unit": self.names[self.unit],
            "tensor": tensor,
        }


def _first_noncommuting(t: np.ndarray) -> tuple[int, int]:
    bad = np.argwhere(t != t.T)
    a, b = bad[0]
    return int(a), int(b)


def _residuals(lat: FiniteLattice, t: np.ndarray) -> np.ndarray:
    n = lat.n
    res = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            res[a, b] = lat.join_all(c for c in range(n) if lat.leq[t[a, c], b])
    return res


def verify_quantale(lattice: FiniteLattice, tensor, unit: int | str, name: str = "") -> Quantale:
    """Check the quantale axioms on a tensor table and derive residuation.

    A table that is valid except for commutativity is returned with
    ``commutative=False``; every Omega-categorical constructor refuses it.
    """
    n = lattice.n
    t = np.array(tensor, dtype=np.int64)
    if t.shape != (n, n):
        raise LoadError(f"tensor table must be {n}x{n}, got shape {t.shape}")
    if t.min() < 0 or t.max() >= n:
        raise LoadError("tensor table has values outside the carrier")
    u = lattice.index(unit) if isinstance(unit, str) else int(unit)
    nm = lattice.names
    le = lattice.leq
    for a in range(n):
        if t[a, u] != a or t[u, a] != a:
            raise UnitLawFails("unit law fails", (nm[a], nm[u]))
    for a in range(n):
        for b in range(n):
            if not le[a, b]:
                continue
            for c in range(n):
                if not le[t[a, c], t[b, c]] or not le[t[c, a], t[c, b]]:
                    raise NotMonotone("tensor is not monotone", (nm[a], nm[b], nm[c]))
    bot = lattice.bottom
    for a in range(n):
        if t[a, bot] != bot or t[bot, a] != bot:
            raise JoinDistributionFails("tensor does not preserve the empty join", (nm[a], nm[bot]))
    J = lattice.join
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if t[a, J[b, c]] != J[t[a, b], t[a, c]] or t[J[b, c], a] != J[t[b, a], t[c, a]]:
                    raise JoinDistributionFails("tensor does not distribute over binary joins", (nm[a], nm[b], nm[c]))
    tab = t.tolist()
    for a in range(n):
        for b in range(n):
            ab = tab[a][b]
            for c in range(n):
                if tab[ab][c] != tab[a][tab[b][c]]:
                    raise NotAssociative("tensor is not associative", (nm[a], nm[b], nm[c]))
    commutative = bool((t == t.T).all())
    res = _residuals(lattice, t)
    # residuation adjunction: a*b <= c  <=>  b <= a->c
    lhs = le[t[:, :, None], np.arange(n)[None, None, :]]
    rhs = le[np.arange(n)[None, :, None], res[:, None, :]]
    if not (lhs == rhs).all():
        a, b, c = (int(x) for x in np.argwhere(lhs != rhs)[0])
        raise JoinDistributionFails("residuation adjunction fails", (nm[a], nm[b], nm[c]))
    return Quantale(name or "quantale", lattice, u, _frozen(t), _frozen(res), commutative)


def residuate(q: Quantale, a: int | str, b: int | str) -> int:
    return int(q.residuation[q.element(a), q.element(b)])


# ---------------------------------------------------------------------------
# built-in instances


def boolean2() -> Quantale:
    lat = chain_lattice(2)
    return verify_quantale(lat, [[0, 0], [0, 1]], 1, "boolean2")


def lukasiewicz(n: int) -> Quantale:
    if n < 2:
        raise BadSize(f"lukasiewicz chain needs n >= 2, got {n}")
    lat = chain_lattice(n)
    t = [[max(0, a + b - (n - 1)) for b in range(n)] for a in range(n)]
    return verify_quantale(lat, t, n - 1, f"lukasiewicz{n}")


def goedel(n: int) -> Quantale:
    if n < 2:
        raise BadSize(f"goedel chain needs n >= 2, got {n}")
    lat = chain_lattice(n)
    t = [[min(a, b) for b in range(n)] for a in range(n)]
    return verify_quantale(lat, t, n - 1, f"goedel{n}")


def nonintegral3() -> Quantale:
    """3-chain 0 < u < 1 with unit u and 1*1 = 1."""
    lat = chain_lattice(3)
    t = [[0, 0, 0], [0, 1, 2], [0, 2, 2]]
    return verify_quantale(lat, t, 1, "nonintegral3")


_ALIASES = {
    "boolean": "boolean2",
    "boolean2": "boolean2",
    "bool": "boolean2",
    "lukasiewicz": "lukasiewicz",
    "luk": "lukasiewicz",
    "goedel": "goedel",
    "godel": "goedel",
    "nonintegral3": "nonintegral3",
    "nonintegral": "nonintegral3",
}


def builtin(name: str, n: int | None = None) -> Quantale:
    """Look up a standard quantale: ``builtin("lukasiewicz:3")`` or ``builtin("goedel", 4)``."""
    base, _, arg = str(name).partition(":")
    if arg:
        try:
            n = int(arg)
        except ValueError:
            raise BadSize(f"bad size {arg!r} in builtin name {name!r}") from None
    key = _ALIASES.get(base.lower())
    if key is None:
        raise KeyError(f"unknown builtin quantale {name!r}")
    if key == "boolean2":
        if n not in (None, 2):
            raise BadSize(f"boolean quantale has 2 elements, not {n}")
        return boolean2()
    if key == "nonintegral3":
        if n not in (None, 3):
            raise BadSize(f"nonintegral3 has 3 elements, not {n}")
        return nonintegral3()
    if n is None:
        raise BadSize(f"{key} needs a size, e.g. {key}:3")
    return lukasiewicz(n) if key == "lukasiewicz" else goedel(n)


BUILTIN_NAMES = ("boolean2", "lukasiewicz:3", "lukasiewicz:4", "lukasiewicz:5",
                 "goedel:3", "goedel:4", "goedel:5", "nonintegral3")


# ---------------------------------------------------------------------------
# identity checks and classification


@dataclass
class IdentityResult:
    name: str
    ok: bool
    witness: tuple | None = None


def _subsets(n: int) -> list[tuple[int, ...]]:
    return [s for k in range(n + 1) for s in itertools.combinations(range(n), k)]


def check_residuation_identities(q: Quantale) -> list[IdentityResult]:
    """Exhaustively check the ten standard tensor/residuation identities.

    Indexed families range over every subset of the carrier.
    """
    n, T, R, le = q.n, q._t, q._r, q._le
    nm = q.names
    bot, top, unit = q.bottom, q.top, q.unit
    E = range(n)
    fams = _subsets(n)
    out: list[IdentityResult] = []

    def record(name, gen):
        for wit in gen:
            out.append(IdentityResult(name, False, tuple(wit)))
            return
        out.append(IdentityResult(name, True))

    def names_of(*xs):
        return tuple(nm[x] if isinstance(x, int) else "{" + ",".join(nm[y] for y in x) + "}" for x in xs)

    record("zero-annihilates", (names_of(a) for a in E if T[bot][a] != bot))
    record("residual-is-join", (names_of(a, b) for a in E for b in E
                                if R[a][b] != q.join_all(c for c in E if le[T[a][c]][b])))
    record("unit-and-zero-residuals", (names_of(a) for a in E if R[unit][a] != a or R[bot][a] != top))
    record("residual-composition", (names_of(a, b, c) for a in E for b in E for c in E
                                    if not le[T[R[a][b]][R[b][c]]][R[a][c]]))
    record("currying", (names_of(a, b, c) for a in E for b in E for c in E
                        if not (R[a][R[b][c]] == R[T[a][b]][c] == R[b][R[a][c]])))
    record("triple-residual", (names_of(a, b) for a in E for b in E if R[R[R[a][b]][b]][b] != R[a][b]))
    record("tensor-preserves-joins", (names_of(a, S) for a in E for S in fams
                                      if T[a][q.join_all(S)] != q.join_all(T[a][b] for b in S)))
    record("residual-reverses-joins-and-preserves-meets", (
        names_of(S, b) for S in fams for b in E
        if R[q.join_all(S)][b] != q.meet_all(R[a][b] for a in S)
        or R[b][q.meet_all(S)] != q.meet_all(R[b][a] for a in S)))
    record("internal-hom-covariant", (names_of(a, b) for a in E for b in E
                                      if q.meet_all(R[R[c][a]][R[c][b]] for c in E) != R[a][b]))
    record("internal-hom-contravariant", (names_of(a, b) for a in E for b in E
                                          if q.meet_all(R[R[a][c]][R[b][c]] for c in E) != R[b][a]))
    return out


@dataclass
class QuantaleClass:
    commutative: bool
    integral: bool
    divisible: bool
    prelinear: bool
    bl: bool
    girard: bool
    mv: bool
    witnesses: dict[str, tuple] = field(default_factory=dict)

    def flags(self) -> dict[str, bool]:
        return {k: getattr(self, k) for k in
                ("commutative", "integral", "divisible", "prelinear", "bl", "girard", "mv")}


def classify(q: Quantale) -> QuantaleClass:
    n, T, R, J, M = q.n, q._t, q._r, q._j, q._m
    nm = q.names
    bot, top = q.bottom, q.top
    wit: dict[str, tuple] = {}

    def first(gen):
        return next(iter(gen), None)

    comm = first((nm[a], nm[b]) for a in range(n) for b in range(n) if T[a][b] != T[b][a])
    integral = q.unit == top
    if not integral:
        wit["integral"] = (nm[q.unit], nm[top])
    div = first((nm[a], nm[b]) for a in range(n) for b in range(n) if T[a][R[a][b]] != M[a][b])
    pre = first((nm[a], nm[b]) for a in range(n) for b in range(n) if J[R[a][b]][R[b][a]] != top)
    gir = first((nm[a],) for a in range(n) if R[R[a][bot]][bot] != a)
    for key, w in (("commutative", comm), ("divisible", div), ("prelinear", pre), ("girard", gir)):
        if w is not None:
            wit[key] = w
    bl = integral and div is None and pre is None
    if not bl:
        wit["bl"] = wit.get("integral") or wit.get("divisible") or wit.get("prelinear")
    mv = bl and gir is None
    if not mv:
        wit["mv"] = wit["bl"] if not bl else wit["girard"]
    return QuantaleClass(comm is None, integral, div is None, pre is None, bl, gir is None, mv, wit)


# ---------------------------------------------------------------------------
# enumeration


def _tensor_candidates(lat: FiniteLattice, unit: int):
    """Free cells (a <= b by index) of a commutative tensor with given unit."""
    n = lat.n
    fixed = {lat.bottom, unit}
    return [(a, b) for a in range(n) for b in range(a, n) if a not in fixed and b not in fixed]


def _leaf_ok(lat: FiniteLattice, t: list[list[int]]) -> bool:
    n = lat.n
    J = lat.join.tolist()
    for a in range(n):
        ta = t[a]
        for b in range(n):
            for c in range(n):
                if ta[J[b][c]] != J[ta[b]][ta[c]]:
                    return False
    for a in range(n):
        for b in range(n):
            ab = t[a][b]
            for c in range(n):
                if t[ab][c] != t[a][t[b][c]]:
                    return False
    return True


def quantale_branches(lattice: FiniteLattice) -> list[tuple[int, int | None]]:
    """Top-level branches of the search, in sequential order: (unit, first free cell value)."""
    out = []
    n = lattice.n
    for unit in range(n):
        if unit == lattice.bottom and n > 1:
            continue
        cells = _tensor_candidates(lattice, unit)
        if not cells:
            out.append((unit, None))
        else:
            out.extend((unit, v) for v in range(n))
    return out


def enumerate_quantales(
    lattice: FiniteLattice,
    bound: int = ENUMERATION_SIZE_BOUND,
    shard: tuple[int, int] | None = None,
    budget: Budget | int | None = None,
    name: str = "",
) -> Iterator[Quantale]:
    """Yield every commutative unital quantale on ``lattice``.

    Output is ordered by (unit index, tensor table) lexicographically.  With
    ``shard=(s, k)`` only the top-level branches whose position is
    congruent to ``s`` mod ``k`` are explored; the union over all shards,
    sorted by :func:`quantale_sort_key`, equals the unsharded stream.
    """
    n = lattice.n
    if n > bound:
        raise SizeBound(f"quantales on a {n}-element lattice (bound {bound})", bound)
    budget = as_budget(budget)
    le = lattice.leq.tolist()
    base = name or ("chain" + str(n) if lattice.is_chain() else "lattice" + str(n))
    branches = quantale_branches(lattice)
    for pos, (unit, first_val) in enumerate(branches):
        if shard is not None and pos % shard[1] != shard[0]:
            continue
        cells = _tensor_candidates(lattice, unit)
        t = [[-1] * n for _ in range(n)]
        for a in range(n):
            t[a][lattice.bottom] = t[lattice.bottom][a] = lattice.bottom
            t[a][unit] = t[unit][a] = a

        def consistent(a: int, b: int) -> bool:
            v = t[a][b]
            for c in range(n):
                w = t[c][b]
                if w < 0:
                    continue
                if le[a][c] and not le[v][w]:
                    return False
                if le[c][a] and not le[w][v]:
                    return False
            return True

        def rec(k: int) -> Iterator[list[list[int]]]:
            budget.spend(1, f"tensor tables on {base}")
            if k == len(cells):
                if _leaf_ok(lattice, t):
                    yield t
                return
            a, b = cells[k]
            values = range(n) if k > 0 or first_val is None else (first_val,)
            for v in values:
                t[a][b] = t[b][a] = v
                if consistent(a, b) and consistent(b, a):
                    yield from rec(k + 1)
            t[a][b] = t[b][a] = -1

        for table in rec(0):
            sig = "".join(lattice.names[table[a][b]] for a, b in cells)
            label = f"{base}/I={lattice.names[unit]}" + (f"/{sig}" if sig else "")
            yield verify_quantale(lattice, [row[:] for row in table], unit, label)


def quantale_sort_key(q: Quantale) -> tuple:
    return (q.unit, tuple(q.tensor.ravel().tolist()))


# ---------------------------------------------------------------------------
# file format


def _load_json(path_or_obj) -> dict:
    if isinstance(path_or_obj, dict):
        return path_or_obj
    text = Path(path_or_obj).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise LoadError(f"{path_or_obj}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None


def lattice_from_json(obj) -> FiniteLattice:
    data = _load_json(obj)
    elements = data.get("elements")
    if not isinstance(elements, list) or not elements:
        raise LoadError("'elements' must be a non-empty array of names")
    names = [str(x) for x in elements]
    known = set(names)
    pairs = []
    for i, pair in enumerate(data.get("leq", [])):
        if not isinstance(pair, list) or len(pair) != 2:
            raise LoadError(f"leq[{i}]: expected a pair [a, b]")
        for j, x in enumerate(pair):
            if str(x) not in known:
                raise LoadError(f"leq[{i}][{j}]: unknown element {x!r}")
        pairs.append((str(pair[0]), str(pair[1])))
    return FiniteLattice.from_pairs(names, pairs)


def quantale_from_json(obj) -> Quantale:
    """Load the JSON quantale format (see README)."""
    data = _load_json(obj)
    lat = lattice_from_json(data)
    names = lat.names
    known = set(names)
    unit = data.get("unit")
    if str(unit) not in known:
        raise LoadError(f"unit: unknown element {unit!r}")
    n = lat.n
    t = [[-1] * n for _ in range(n)]
    tensor = data.get("tensor")
    if not isinstance(tensor, dict):
        raise LoadError("'tensor' must be an object mapping \"a,b\" to an element")
    for key, val in tensor.items():
        parts = [p.strip() for p in str(key).split(",")]
        if len(parts) != 2:
            raise LoadError(f"tensor[{key!r}]: key must have the form \"a,b\"")
        for p in parts:
            if p not in known:
                raise LoadError(f"tensor[{key!r}]: unknown element {p!r}")
        if str(val) not in known:
            raise LoadError(f"tensor[{key!r}]: unknown element {val!r}")
        a, b = lat.index(parts[0]), lat.index(parts[1])
        t[a][b] = lat.index(str(val))
    for a in range(n):
        for b in range(n):
            if t[a][b] < 0:
                if t[b][a] < 0:
                    raise LoadError(f"tensor: missing entry for \"{names[a]},{names[b]}\"")
                t[a][b] = t[b][a]
    return verify_quantale(lat, t, str(unit), str(data.get("name", "quantale")))
