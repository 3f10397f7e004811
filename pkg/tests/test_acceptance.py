"""Acceptance gate: every top-level guarantee of the package, one line each.

Each test runs one guarantee end to end at n = 4 with exact arithmetic,
prints a single PASS/FAIL line with its wall time, and enforces the
stated runtime budget.  The stretch configuration at n = 8 is opt-in via
UQSL2_STRETCH=1 and carries no budget.
"""

import os
import subprocess
import sys
import time

import pytest

from uqsl2.k0ring import k0_reports
from uqsl2.moncat import tensor_reports
from uqsl2.qgroup import AlgebraContext
from uqsl2.quasihopf import QuasiHopfData, axiom_reports
from uqsl2.reps import (
    block_structure,
    verify_family_constructors,
    verify_structure_counts,
)


def _gate(name: str, reports, budget: float, start: float, capsys) -> None:
    elapsed = time.time() - start
    ok = all(r.passed for r in reports)
    mark = "PASS" if ok and elapsed < budget else "FAIL"
    with capsys.disabled():
        print(f"\n{mark} {name} ({elapsed:.1f}s, budget {budget:.0f}s)", flush=True)
    for r in reports:
        assert r.passed, f"{r.statement}: {r.counterexample}"
    assert elapsed < budget, f"{name} exceeded its {budget:.0f}s budget"


def test_quasi_hopf_axiom_suite(qh, capsys):
    start = time.time()
    _gate("quasi-Hopf axiom suite", axiom_reports(qh), 300, start, capsys)


def test_idempotent_system(actx, capsys):
    start = time.time()
    _gate(
        "primitive idempotent system", [actx.verify_idempotent_system()], 60, start, capsys
    )


def test_commutation_sweep(actx, capsys):
    start = time.time()
    rep = actx.verify_commutation_lemmas()
    assert rep.instances >= 4 * (actx.N - 1)
    _gate("power commutation sweep", [rep], 60, start, capsys)


def test_structure_census_and_quiver(actx, capsys):
    start = time.time()
    _, quiver = block_structure(actx)
    reports = [verify_structure_counts(actx), quiver]
    _gate("structure census and block quiver", reports, 600, start, capsys)


def test_regular_module_decomposition_exhaustive(actx, capsys):
    start = time.time()
    rep = actx.verify_regular_decomposition(slow=True)
    _gate("exhaustive regular-module decomposition", [rep], 1800, start, capsys)


def test_strand_family_constructors(actx, capsys):
    start = time.time()
    _gate(
        "strand family constructors", [verify_family_constructors(actx)], 900, start, capsys
    )


def test_tensor_product_sweeps(actx, capsys):
    start = time.time()
    _gate("tensor decomposition sweeps", tensor_reports(actx), 3600, start, capsys)


def test_grothendieck_ring(actx, capsys):
    start = time.time()
    _gate("Grothendieck ring presentation and products", k0_reports(actx), 300, start, capsys)


def test_table_determinism(tmp_path, capsys):
    start = time.time()

    def run(extra):
        return subprocess.run(
            [sys.executable, "-m", "uqsl2.cli", "table", "cg-ss", "--n", "4"] + extra,
            capture_output=True,
            text=True,
        )

    cache = tmp_path / "cache.json"
    outputs = [run([]), run(["--cache", str(cache)]), run(["--cache", str(cache)])]
    ok = (
        all(p.returncode == 0 for p in outputs)
        and outputs[0].stdout == outputs[1].stdout == outputs[2].stdout
        and len(outputs[0].stdout.splitlines()) > 256
    )
    elapsed = time.time() - start
    mark = "PASS" if ok else "FAIL"
    with capsys.disabled():
        print(f"\n{mark} table determinism with and without cache ({elapsed:.1f}s)", flush=True)
    assert ok


@pytest.mark.skipif(
    os.environ.get("UQSL2_STRETCH") != "1", reason="stretch run is opt-in (UQSL2_STRETCH=1)"
)
def test_stretch_parameter_n8(capsys):
    import random

    from uqsl2.moncat import decompose_standard_product, simple_simple_rule
    from uqsl2.reps import all_labels

    start = time.time()
    ctx = AlgebraContext(8)
    reports = axiom_reports(QuasiHopfData(ctx))
    rng = random.Random(0)
    labels = all_labels(ctx)
    pairs = [(rng.choice(labels), rng.choice(labels)) for _ in range(20)]
    ok = all(r.passed for r in reports)
    for (i1, j1), (i2, j2) in pairs:
        want = simple_simple_rule(ctx, i1, j1, i2, j2)
        res = decompose_standard_product(ctx, ("S", i1, j1), ("S", i2, j2))
        if not res.ok or res.summands != want:
            ok = False
            break
    elapsed = time.time() - start
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} stretch run at n=8 ({elapsed:.1f}s)", flush=True)
    for r in reports:
        assert r.passed, f"{r.statement}: {r.counterexample}"
    assert ok
