"""Command-line front end.

Exit codes:
  0 = every check passed
  1 = some check failed
  2 = input could not be parsed or loaded
  3 = a size budget was exceeded
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Callable

from . import cd, girard, mining, ocat, olat, structure
from .budget import Budget, default_budget
from .errors import BadSize, LoadError, OQLError, SizeBound
from .quantale import (BUILTIN_NAMES, builtin, chain_lattice, check_residuation_identities, classify,
                       enumerate_quantales, lattice_from_json, quantale_from_json, quantale_sort_key)
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3


class _Input:
    """What --builtin/--file resolved to: a quantale and a certified lattice."""

    def __init__(self, args, budget: Budget):
        self.args = args
        self.budget = budget
        self._lattice = None
        if getattr(args, "builtin", None):
            try:
                self.quantale = builtin(args.builtin)
            except (KeyError, BadSize) as e:
                raise LoadError(f"--builtin: {e.args[0] if e.args else e}") from None
            self.category = ocat.canonical_omega(self.quantale)
        elif getattr(args, "file", None):
            data = _read_json(args.file)
            if "objects" in data:
                self.category = _load(args.file, ocat.category_from_json)
                self.quantale = self.category.quantale
            elif "tensor" in data:
                self.quantale = _load(args.file, quantale_from_json)
                self.category = ocat.canonical_omega(self.quantale)
            else:
                raise LoadError(f"{args.file}: expected a quantale (\"tensor\") or a category (\"objects\")")
        else:
            raise LoadError("give --builtin NAME or --file PATH")

    @property
    def lattice(self) -> olat.CompleteOmegaLattice:
        if self._lattice is None:
            self._lattice = olat.certify_complete(self.category, self.budget)
        return self._lattice


def _read_json(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise LoadError(f"{path}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise LoadError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise LoadError(f"{path}: top level must be an object")
    return data


def _load(path: str, loader: Callable):
    try:
        return loader(_read_json(path))
    except LoadError as e:
        if str(e).startswith(path):
            raise
        raise LoadError(f"{path}: {e}") from None


def _error_report(title: str, name: str, e: OQLError) -> Report:
    rep = Report(title)
    rep.add(name, False, e.witness or (type(e).__name__,), error=type(e).__name__, message=str(e))
    return rep


# ---------------------------------------------------------------------------
# quantale


def cmd_quantale(args, budget: Budget) -> Report:
    if args.action == "enumerate":
        return _quantale_enumerate(args, budget)
    src = args.builtin or args.path or args.file
    title = f"quantale {args.action} {src}"
    try:
        if args.builtin:
            q = builtin(args.builtin)
        elif args.path or args.file:
            q = _load(args.path or args.file, quantale_from_json)
        else:
            raise LoadError("give --builtin NAME or a quantale file")
    except (KeyError, BadSize) as e:
        raise LoadError(f"--builtin: {e.args[0] if e.args else e}") from None
    except LoadError:
        raise
    except OQLError as e:
        return _error_report(title, "valid-quantale", e)
    rep = Report(title)
    rep.stamps["quantale"] = q.name
    if args.action == "verify":
        rep.add("valid-quantale", True)
        if q.commutative:
            rep.add("commutative", True)
        else:
            try:
                q.require_commutative()
            except OQLError as e:
                rep.add("commutative", False, e.witness)
        for r in check_residuation_identities(q):
            rep.add(f"identity/{r.name}", r.ok, r.witness)
    else:
        cls = classify(q)
        flags = cls.flags()
        rep.stamps["flags"] = flags
        for k in sorted(flags):
            rep.skip(f"flag/{k}", "classification", value=flags[k], witness=list(cls.witnesses.get(k, ())))
    return rep


def _quantale_enumerate(args, budget: Budget) -> Report:
    if args.chain:
        lat = chain_lattice(args.chain)
        label = f"chain{args.chain}"
    elif args.lattice:
        lat = _load(args.lattice, lattice_from_json)
        label = args.lattice
    else:
        raise LoadError("give --chain N or --lattice PATH")
    qs = []
    for s in range(args.shards):
        qs.extend(enumerate_quantales(lat, shard=(s, args.shards), budget=budget))
    qs.sort(key=quantale_sort_key)
    rep = Report(f"quantale enumerate {label}")
    rep.stamps["count"] = len(qs)
    rep.stamps["quantales"] = [q.to_json() for q in qs]
    rep.stamps["isomorphism"] = "raw tables; isomorphic duplicates are not merged"
    rep.add("enumeration-complete", True, count=len(qs))
    return rep


# ---------------------------------------------------------------------------
# categories and lattices


def cmd_cat(args, budget: Budget) -> Report:
    inp = _Input(args, budget)
    A = inp.category
    rep = Report(f"cat check {A.name}")
    anti, w = ocat.is_antisymmetric(A)
    rep.stamps["antisymmetric"] = anti
    if not anti:
        rep.stamps["antisymmetry_witness"] = list(w)
    rep.merge(ocat.yoneda_check(A, budget), "yoneda/")
    rep.merge(ocat.check_upper_presheaf_closure(A, budget), "upper-presheaves/")
    return rep


def cmd_lat(args, budget: Budget) -> Report:
    inp = _Input(args, budget)
    rep = Report(f"lat check {inp.category.name}")
    try:
        L = inp.lattice
    except OQLError as e:
        if isinstance(e, SizeBound):
            raise
        return _error_report(rep.title, "complete", e)
    rep.add("complete", True, route=L.certificate.get("route"))
    rep.merge(olat.sup_coherence_check(L, budget), "sup/")
    return rep


# ---------------------------------------------------------------------------
# complete distributivity


def cmd_cd(args, budget: Budget) -> Report:
    inp = _Input(args, budget)
    L = inp.lattice
    if args.dual:
        L = olat.dual_lattice(L, cross_check=False, budget=budget)
    rep = Report(f"cd check {L.name}")
    res = cd.is_cd(L, budget)
    detail = {"route": res.route, "presheaves": res.presheaves}
    if args.dual and not res.ok:
        ok_g, w = girard.is_girard(L.quantale)
        if not ok_g:
            detail["note"] = f"predicted: Omega is not Girard (witness {w})"
    rep.add("is-cd", res.ok, None if res.ok else (res.failed, *(res.witness or ())), **detail)
    if res.ok:
        D = cd.downarrow(L, budget)
        rep.merge(cd.interpolate_check(D), "")
        if args.down:
            rep.stamps["downarrow"] = D.to_json()
    return rep


# ---------------------------------------------------------------------------
# structure


def cmd_struct(args, budget: Budget) -> Report:
    inp = _Input(args, budget)
    L = inp.lattice
    if args.action == "raney-buchi":
        rb = structure.raney_buchi(L, budget)
        rb.report.stamps["points"] = list(L.objects)
        return rb.report
    if args.action == "subalgebras":
        rep = structure.closure_bijection_check(L, budget)
        rep.stamps["subalgebra_list"] = [[L.objects[i] for i in S] for S in structure.enumerate_subalgebras(L, budget)]
        return rep
    if args.action == "quotients":
        rep = structure.kernel_bijection_check(L, budget)
        rep.stamps["kernel_list"] = [k.named() for k in structure.enumerate_kernels(L, budget)]
        return rep
    if args.action == "left-adjoints":
        _, _, rep = structure.left_adjoint_kernel(L, L, budget)
        rep.merge(structure.right_adjoint_duality(L, L, budget), "duality/")
        return rep
    raise LoadError(f"unknown struct action {args.action!r}")


# ---------------------------------------------------------------------------
# girard


def cmd_girard(args, budget: Budget) -> Report:
    inp = _Input(args, budget)
    q = inp.quantale
    if args.action in ("duality", "theorem11"):
        corpus = cd.default_corpus(q, budget) if args.corpus == "auto" else [(Path(p).stem, _lattice_from_file(p, budget)) for p in args.corpus_files]
        d = girard.check_dual_distributivity(q, corpus, budget)
        d.report.stamps["girard"] = d.girard
        d.report.stamps["heyting_op"] = d.heyting_op
        d.report.stamps["corpus_dual_cd"] = [[k, v] for k, v in d.corpus_dual_cd]
        if d.witness is not None:
            d.report.stamps["witness"] = list(d.witness)
        d.report.merge(girard.girard_inf_check(q, budget), "inf/")
        return d.report
    if args.action == "negation":
        return girard.negation_iso(q, inp.category, budget)
    if args.action == "free":
        fr = girard.free_cd(q, args.generators, budget, experimental=args.experimental)
        rep = fr.report
        rep.stamps["eta"] = [fr.lattice.objects[i] if i >= 0 else None for i in fr.eta]
        if args.target is not None:
            A = olat.omega_lattice(q)
            _, r = girard.extend(fr, A, [args.target] * len(fr.generators), budget)
            rep.merge(r, "extend/")
        return rep
    raise LoadError(f"unknown girard action {args.action!r}")


def _lattice_from_file(path: str, budget: Budget) -> olat.CompleteOmegaLattice:
    return olat.certify_complete(_load(path, ocat.category_from_json), budget)


# ---------------------------------------------------------------------------
# mining


def _parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise LoadError(f"--chain: expected N, N..M or N,M,..., got {text!r}") from None


def cmd_mine(args, budget: Budget) -> Report:
    lattices = mining.chain_lattices(_parse_range(args.chain)) if args.chain else []
    for path in args.lattice or []:
        lattices.append((Path(path).stem, _load(path, lattice_from_json)))
    if not lattices:
        raise LoadError("give --chain and/or --lattice")
    only = args.suite.split(",") if args.suite else None
    return mining.mine(lattices, args.shards, budget, only, args.repro)


# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, inputs: bool = True) -> None:
    if inputs:
        p.add_argument("--builtin", metavar="NAME[:n]", help="built-in quantale: " + ", ".join(BUILTIN_NAMES))
        p.add_argument("--file", metavar="PATH", help="quantale or category JSON file")
    p.add_argument("--budget", type=int, default=None, help="search-node cap (default OQL_BUDGET or 10^6)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--timing", action="store_true", help="include wall times (breaks byte-identical output)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="oql", description="Checks for finite quantale-enriched lattices.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quantale", help="verify, classify or enumerate quantales")
    p.add_argument("action", choices=("verify", "classify", "enumerate"))
    p.add_argument("path", nargs="?", help="quantale JSON file")
    p.add_argument("--chain", type=int, help="enumerate on the n-element chain")
    p.add_argument("--lattice", metavar="PATH", help="enumerate on a lattice JSON file")
    p.add_argument("--shards", type=int, default=1)
    _common(p)
    p.set_defaults(run=cmd_quantale)

    p = sub.add_parser("cat", help="Yoneda and presheaf checks on a category")
    p.add_argument("action", choices=("check",))
    _common(p)
    p.set_defaults(run=cmd_cat)

    p = sub.add_parser("lat", help="certify a complete Omega-lattice")
    p.add_argument("action", choices=("check",))
    _common(p)
    p.set_defaults(run=cmd_lat)

    p = sub.add_parser("cd", help="complete distributivity")
    p.add_argument("action", choices=("check",))
    p.add_argument("--down", action="store_true", help="include the totally-below table")
    p.add_argument("--dual", action="store_true", help="test the dual lattice instead")
    _common(p)
    p.set_defaults(run=cmd_cd)

    p = sub.add_parser("struct", help="subalgebras, quotients, Raney-Buchi, left adjoints")
    p.add_argument("action", choices=("subalgebras", "quotients", "raney-buchi", "left-adjoints"))
    _common(p)
    p.set_defaults(run=cmd_struct)

    p = sub.add_parser("girard", help="duality, negation and free lattices")
    p.add_argument("action", choices=("duality", "theorem11", "negation", "free"))
    p.add_argument("--corpus", default="auto", help="'auto' or 'files'")
    p.add_argument("--corpus-file", dest="corpus_files", action="append", default=[], metavar="PATH")
    p.add_argument("--generators", type=int, default=1)
    p.add_argument("--target", help="extend the constant map to this element of Omega")
    p.add_argument("--experimental", action="store_true", help="allow non-Girard quantales for 'free'")
    _common(p)
    p.set_defaults(run=cmd_girard)

    p = sub.add_parser("mine", help="run every checker over enumerated quantales")
    p.add_argument("--chain", help="chain sizes: N, N..M or N,M")
    p.add_argument("--lattice", action="append", metavar="PATH", help="lattice JSON file (repeatable)")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--suite", help="comma-separated subset of suite items")
    p.add_argument("--repro", metavar="PATH", help="write the first failure's reproduction here")
    _common(p, inputs=False)
    p.set_defaults(run=cmd_mine)
    return ap


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _echo(argv: list[str]) -> str:
    """Command echo without execution-only flags, so sharded and timed runs match plain ones."""
    words, skip = ["oql"], False
    for a in argv:
        if skip:
            skip = False
        elif a == "--timing" or a.startswith("--shards="):
            continue
        elif a == "--shards":
            skip = True
        else:
            words.append(a)
    return " ".join(words)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    if getattr(args, "shards", 1) < 1:
        print("oql: --shards must be at least 1", file=sys.stderr)
        return EXIT_PARSE
    budget = Budget(args.budget if args.budget is not None else default_budget())
    run: Callable = args.run
    started = time.perf_counter()
    try:
        rep = run(args, budget)
    except LoadError as e:
        print(f"oql: {e}", file=sys.stderr)
        return EXIT_PARSE
    except SizeBound as e:
        print(f"oql: budget exceeded: {e}", file=sys.stderr)
        rep = Report(f"{args.command} {getattr(args, 'action', '')}".strip())
        rep.skip(args.command, f"budget {e.limit}")
        rep.stamps["budget"] = budget.limit
        _emit(rep.dumps() if args.format == "json" else rep.to_text(), args.out)
        return EXIT_BUDGET
    except OQLError as e:
        rep = _error_report(f"{args.command} {getattr(args, 'action', '')}".strip(), type(e).__name__, e)
    rep.stamps.setdefault("budget", budget.limit)
    rep.stamps["command"] = _echo(argv)
    if args.timing:
        rep.stamps["seconds"] = round(time.perf_counter() - started, 4)
    text = rep.dumps(args.timing) if args.format == "json" else rep.to_text(args.timing)
    _emit(text, args.out)
    return EXIT_OK if rep.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
