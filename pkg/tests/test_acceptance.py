"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line with the evidence
and elapsed time.  Run with ``pytest tests/test_acceptance.py -v -s``, or
directly with ``python3 tests/test_acceptance.py`` for just the lines.
"""

from __future__ import annotations

import json
import sys
import time
from contextlib import redirect_stdout
from io import StringIO

import numpy as np
import pytest

from oql import cd, girard, mining, ocat, olat, structure
from oql.cli import main as cli_main
from oql.quantale import BUILTIN_NAMES, builtin, check_residuation_identities, classify


def boolean_two_chain_lattice():
    return olat.certify_complete(ocat.chain_category(builtin("boolean2"), 2))


# ---------------------------------------------------------------------------
# criteria: each returns (ok, evidence)


def quantale_laws():
    bad = []
    for name in BUILTIN_NAMES:
        q = builtin(name)
        bad += [f"{name}:{r.name}" for r in check_residuation_identities(q) if not r.ok]
        cls = classify(q)
        if name.startswith("lukasiewicz") and not cls.mv:
            bad.append(f"{name}: not mv")
        if name.startswith("goedel") and not (cls.bl and not cls.girard):
            bad.append(f"{name}: not bl-not-girard")
        if name == "nonintegral3" and cls.integral:
            bad.append(f"{name}: integral")
    return not bad, f"{len(BUILTIN_NAMES)} built-ins x 10 identities; problems={bad}"


def yoneda():
    bad = [n for n in BUILTIN_NAMES if not ocat.yoneda_check(ocat.canonical_omega(builtin(n))).ok]
    rep = mining.yoneda_on_small_categories(builtin("lukasiewicz:3"), 3)
    counts = [c.detail["categories"] for c in rep.checks]
    return not bad and rep.ok, f"canonical failures={bad}; Luk3 categories by size {counts} all pass={rep.ok}"


def sup_coherence():
    total, bad = 0, []
    for name in ("boolean2", "lukasiewicz:3", "goedel:3", "nonintegral3"):
        q = builtin(name)
        for label, L in cd.default_corpus(q):
            rep = olat.sup_coherence_check(L)
            total += rep.checks[0].detail["functions"]
            if not rep.ok:
                bad.append(f"{name}/{label}")
    return not bad, f"{total} raw functions checked for sup and inf; failures={bad}"


def cd_certification():
    bad = []
    instances = 0
    for name in BUILTIN_NAMES:
        q = builtin(name)
        L = olat.omega_lattice(q)
        if not cd.is_cd(L).ok:
            bad.append(f"{name}: not cd")
            continue
        D = cd.downarrow(L)
        closed = [[q.tensor[x, q.residuation[t, q.unit]] for t in range(q.n)] for x in range(q.n)]
        if D.table.tolist() != closed:
            bad.append(f"{name}: closed form")
    for name in ("boolean2", "lukasiewicz:3", "goedel:3", "nonintegral3"):
        for label, L in cd.default_corpus(builtin(name)):
            if cd.is_cd(L).ok:
                instances += 1
                if not cd.interpolate_check(cd.downarrow(L)).ok:
                    bad.append(f"{name}/{label}: interpolation")
    return not bad, f"{len(BUILTIN_NAMES)} canonical instances match x*(t->I); interpolation on {instances} corpus instances; problems={bad}"


def presheaf_cd():
    bad, sizes = [], []
    for name in ("boolean2", "lukasiewicz:3"):
        q = builtin(name)
        for A in (ocat.terminal(q), ocat.chain_category(q, 2), ocat.discrete(q, 3)):
            D, rep = cd.presheaf_downarrow(A)
            sizes.append(rep.checks[0].detail["presheaves"])
            if not rep.ok:
                bad.append(f"{name}/{A.name}")
    return not bad, f"presheaf counts {sizes}; failures={bad}"


def product_cd():
    bad = []
    two = boolean_two_chain_lattice()
    O = olat.omega_lattice(builtin("lukasiewicz:3"))
    for label, lats in (("(2-chain)^2 over boolean2", [two, two]), ("Omega^2 over Luk3", [O, O])):
        D, rep = cd.product_downarrow(lats)
        if not rep.ok:
            bad.append(label)
    return not bad, f"padded construction equals generic on both products; failures={bad}"


def bijections():
    parts = []
    ok = True
    for name in ("boolean2", "lukasiewicz:3"):
        L = olat.omega_lattice(builtin(name))
        c = structure.closure_bijection_check(L)
        k = structure.kernel_bijection_check(L)
        ok &= c.ok and k.ok
        ok &= len(structure.enumerate_subalgebras(L)) == len(structure.enumerate_closures(L))
        ok &= len(structure.enumerate_quotients(L)) == len(structure.enumerate_kernels(L))
        parts.append(f"{name}: subalgebras={c.stamps['subalgebras']} closures={c.stamps['closures']} "
                     f"quotients={k.stamps['quotients']} kernels={k.stamps['kernels']}")
    return bool(ok), "; ".join(parts)


def raney_buchi():
    bad = []
    lats = [("Omega[boolean2]", olat.omega_lattice(builtin("boolean2"))),
            ("Omega[Luk3]", olat.omega_lattice(builtin("lukasiewicz:3"))),
            ("2-chain over boolean2", boolean_two_chain_lattice())]
    for label, L in lats:
        rb = structure.raney_buchi(L)
        section = olat.sup_many(L, rb.down.table).tolist() == list(range(L.n))
        if not (rb.report.ok and section):
            bad.append(label)
    return not bad, f"subalgebra, quotient and CD certificates plus sup.down = id on 3 lattices; failures={bad}"


def left_adjoint_kernel():
    bad = []
    for label, A in (("2-chain over boolean2", boolean_two_chain_lattice()),
                     ("Omega[boolean2]", olat.omega_lattice(builtin("boolean2")))):
        k, Q, rep = structure.left_adjoint_kernel(A, A)
        F = k.lattice
        maps = np.array(F.cat.points, dtype=np.int64).reshape(F.n, A.n)
        fixed = {i for i in range(F.n) if k.map[i] == i}
        # independent route: a map preserves all sups exactly when it has a right adjoint
        with_right = {i for i in range(F.n) if ocat.has_right_adjoint(A.cat, A.cat, maps[i])}
        steps = all(c.ok for c in rep.checks if c.name.startswith("step"))
        iso = all(c.ok for c in rep.checks if c.name == "quotient-isomorphic-to-left-adjoints")
        if not (rep.ok and steps and iso and fixed == with_right):
            bad.append(label)
    return not bad, f"steps 1-7, Fix(k) = left adjoints, quotient iso [A->l B] on 2 instances; failures={bad}"


def duality_battery():
    bad = []
    for name in ("lukasiewicz:3", "boolean2"):
        d = girard.check_dual_distributivity(builtin(name))
        if not (d.girard and d.heyting_op and all(v for _, v in d.corpus_dual_cd) and d.report.ok):
            bad.append(name)
    witnesses = {}
    for name in ("goedel:3", "goedel:4"):
        q = builtin(name)
        d = girard.check_dual_distributivity(q)
        alpha = q.element(d.witness[0])
        double = q.residuation[q.residuation[alpha, q.bottom], q.bottom]
        dual_cd = cd.is_cd(olat.dual_lattice(olat.omega_lattice(q))).ok
        witnesses[name] = d.witness[0]
        if d.heyting_op or double == alpha or dual_cd:
            bad.append(name)
    return not bad, f"Girard instances green; non-Girard witnesses {witnesses}; failures={bad}"


def free_cd():
    bad = []
    q = builtin("boolean2")
    fr = girard.free_cd(q, ["x"])
    F = fr.lattice
    chain = F.n == 3 and all(F.leq[a, b] or F.leq[b, a] for a in range(3) for b in range(3))
    if not (chain and fr.report.ok):
        bad.append("F({x}) over boolean2 is not a 3-chain")
    target = olat.presheaf_lattice(ocat.chain_category(q, 2))
    for v in range(target.n):
        g, rep = girard.extend(fr, target, [v])
        if not rep.ok or g[fr.eta[0]] != v:
            bad.append(f"boolean2 f(x)={target.objects[v]}")
    q3 = builtin("lukasiewicz:3")
    fr3 = girard.free_cd(q3, ["x"])
    O = olat.omega_lattice(q3)
    for v in range(O.n):
        g, rep = girard.extend(fr3, O, [v])
        if not rep.ok or g[fr3.eta[0]] != v:
            bad.append(f"Luk3 f(x)={O.objects[v]}")
    return not bad, f"|F| = {F.n} and {fr3.lattice.n}; g.eta = f and uniqueness for 3 + 3 targets; failures={bad}"


def mining_regression():
    outputs = []
    for extra in ([], ["--shards", "4"]):
        buf = StringIO()
        with redirect_stdout(buf):
            code = cli_main(["mine", "--chain", "2..3", "--format", "json", *extra])
        outputs.append((code, buf.getvalue()))
    (code, plain), (_, sharded) = outputs
    summary = json.loads(plain)["summary"]
    return code == 0 and summary["failed"] == 0 and plain == sharded, \
        f"summary={summary}; sharded byte-identical={plain == sharded}"


CRITERIA = [
    (1, "quantale law suite", quantale_laws, None),
    (2, "Yoneda", yoneda, None),
    (3, "sup coherence", sup_coherence, None),
    (4, "CD certification", cd_certification, None),
    (5, "presheaf CD", presheaf_cd, 10.0),
    (6, "product CD", product_cd, None),
    (7, "bijection theorems", bijections, None),
    (8, "Raney-Buchi", raney_buchi, None),
    (9, "left-adjoint kernel", left_adjoint_kernel, None),
    (10, "duality battery", duality_battery, 30.0),
    (11, "free CD", free_cd, 60.0),
    (12, "mining regression", mining_regression, 300.0),
]


def evaluate(number, title, fn, seconds):
    start = time.perf_counter()
    ok, evidence = fn()
    elapsed = time.perf_counter() - start
    in_time = seconds is None or elapsed <= seconds
    limit = f", limit {seconds:.0f}s" if seconds is not None else ""
    line = f"criterion {number:2d} [{title}]: {'PASS' if ok and in_time else 'FAIL'} ({elapsed:.2f}s{limit}) {evidence}"
    return ok and in_time, line


@pytest.mark.parametrize("number, title, fn, seconds", CRITERIA, ids=[f"criterion-{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, title, fn, seconds, capsys):
    ok, line = evaluate(number, title, fn, seconds)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
