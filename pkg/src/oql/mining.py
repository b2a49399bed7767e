"""Counterexample mining: enumerate quantales and run every checker on each.

Every check in the suite is a theorem, so any failure is an
implementation bug; the smallest failing quantale is kept as a
reproduction record.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Iterable, Sequence

from . import cd, girard, ocat, olat, structure
from .budget import Budget, as_budget, default_budget
from .errors import OQLError, SizeBound
from .quantale import (FiniteLattice, Quantale, chain_lattice, check_residuation_identities,
                       enumerate_quantales, lattice_from_json, quantale_sort_key)
from .report import Check, Report


def yoneda_on_small_categories(q: Quantale, max_objects: int = 3, budget: Budget | int | None = None) -> Report:
    """Yoneda on every Omega-category with at most ``max_objects`` objects, one check per size."""
    budget = as_budget(budget)
    rep = Report(f"yoneda on categories with at most {max_objects} objects")
    for n in range(1, max_objects + 1):
        cats = ocat.enumerate_categories(q, n, budget)
        bad = next((A for A in cats if not ocat.yoneda_check(A, budget).ok), None)
        rep.add(f"objects={n}", bad is None, None if bad is None else (bad.name,), categories=len(cats))
    return rep


def _suite(q: Quantale, limit: int) -> list[tuple[str, Callable[[], Report]]]:
    """Named theorem checks for one quantale; each builds its own budget."""

    def fresh() -> Budget:
        return Budget(limit)

    def identities() -> Report:
        rep = Report("residuation identities")
        for r in check_residuation_identities(q):
            rep.add(r.name, r.ok, r.witness)
        return rep

    def yoneda() -> Report:
        rep = ocat.yoneda_check(ocat.canonical_omega(q), fresh())
        rep.merge(ocat.yoneda_check(ocat.chain_category(q, 2), fresh()), "chain2/")
        rep.merge(yoneda_on_small_categories(q, 3, fresh()), "all/")
        return rep

    def totally_below() -> Report:
        rep = Report("totally-below on the corpus")
        for name, L in cd.default_corpus(q, fresh()):
            res = cd.is_cd(L, fresh())
            rep.add(f"{name}/is-cd", res.ok, None if res.ok else (res.failed, *(res.witness or ())), route=res.route)
            if res.ok:
                rep.merge(cd.interpolate_check(cd.downarrow(L, fresh())), f"{name}/")
        return rep

    def presheaf() -> Report:
        return cd.presheaf_downarrow(ocat.chain_category(q, 2), fresh())[1]

    def product() -> Report:
        O = olat.omega_lattice(q)
        return cd.product_downarrow([O, O], budget=fresh())[1]

    def closures() -> Report:
        return structure.closure_bijection_check(olat.omega_lattice(q), fresh())

    def kernels() -> Report:
        return structure.kernel_bijection_check(olat.omega_lattice(q), fresh())

    def raney_buchi() -> Report:
        return structure.raney_buchi(olat.omega_lattice(q), fresh()).report

    def left_adjoints() -> Report:
        O = olat.omega_lattice(q)
        return structure.left_adjoint_kernel(O, O, fresh())[2]

    def classical() -> Report:
        return cd.check_classical_transfer(q, cd.default_corpus(q, fresh()), fresh())

    def duality() -> Report:
        if q.unit != q.top:
            rep = Report("dual distributivity")
            rep.skip("coherence", "not integral")
            return rep
        return girard.check_dual_distributivity(q, budget=fresh()).report

    return [
        ("identities", identities), ("yoneda", yoneda), ("totally-below", totally_below),
        ("presheaf-cd", presheaf), ("product-cd", product), ("closure-bijection", closures),
        ("kernel-bijection", kernels), ("raney-buchi", raney_buchi), ("left-adjoint-kernel", left_adjoints),
        ("classical-transfer", classical), ("duality", duality),
    ]


def run_suite(q: Quantale, limit: int, only: Iterable[str] | None = None) -> Report:
    rep = Report(q.name)
    wanted = set(only) if only else None
    for name, fn in _suite(q, limit):
        if wanted is not None and name not in wanted:
            continue
        try:
            rep.merge(fn(), f"{name}/")
        except SizeBound as e:
            rep.skip(f"{name}", f"budget {e.limit}")
        except OQLError as e:
            rep.add(f"{name}", False, (type(e).__name__, str(e)))
    return rep


def _shard_job(args) -> list[tuple[tuple, str, dict, list[tuple]]]:
    lat_json, s, k, limit, only = args
    lat = lattice_from_json(lat_json)
    out = []
    for q in enumerate_quantales(lat, shard=(s, k), budget=Budget(limit)):
        rep = run_suite(q, limit, only)
        rows = [(c.name, c.ok, c.witness, c.detail, c.skipped) for c in rep.checks]
        out.append((quantale_sort_key(q), q.name, q.to_json(), rows))
    return out


def _lattice_json(lat: FiniteLattice) -> dict:
    pairs = [[lat.names[a], lat.names[b]] for a in range(lat.n) for b in range(lat.n) if lat.leq[a, b]]
    return {"elements": list(lat.names), "leq": pairs}


def mine(lattices: Sequence[tuple[str, FiniteLattice]], shards: int = 1, budget: Budget | int | None = None,
         only: Iterable[str] | None = None, repro_path: str | Path | None = None) -> Report:
    """Run the suite on every quantale of every lattice; shards run in separate processes."""
    limit = as_budget(budget).limit if budget is not None else default_budget()
    only_t = tuple(sorted(only)) if only else None
    rep = Report("mining")
    rep.stamps["budget"] = limit
    rep.stamps["lattices"] = [label for label, _ in lattices]
    rep.stamps["isomorphism"] = "raw tables; isomorphic duplicates are not merged"
    counts = {}
    failing = None
    for label, lat in lattices:
        jobs = [(_lattice_json(lat), s, shards, limit, only_t) for s in range(shards)]
        if shards > 1:
            with ProcessPoolExecutor(max_workers=shards) as pool:
                parts = list(pool.map(_shard_job, jobs))
        else:
            parts = [_shard_job(jobs[0])]
        results = sorted((r for part in parts for r in part), key=lambda r: r[0])
        counts[label] = len(results)
        for _, qname, qjson, rows in results:
            for name, ok, witness, detail, skipped in rows:
                rep.checks.append(Check(f"{qname}/{name}", ok, witness, detail, skipped))
                if not ok and failing is None:
                    failing = {"quantale": qjson, "check": name, "witness": list(witness or ())}
    rep.stamps["quantales"] = counts
    if failing is not None:
        rep.stamps["reproduction"] = failing
        if repro_path is not None:
            Path(repro_path).write_text(json.dumps(failing, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return rep


def chain_lattices(sizes: Iterable[int]) -> list[tuple[str, FiniteLattice]]:
    return [(f"chain{n}", chain_lattice(n)) for n in sizes]
