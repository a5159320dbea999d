"""Acceptance criteria, run end-to-end at the reference desk scale.

Reference scale: the linearly oriented A2 and A3 quivers with principal
framing, q in {2, 3}, dimension-vector totals up to 4, fixed RNG seed.  Every
equality is exact in Z[sqrt(q), 1/sqrt(q)] (zero tolerance).  One pass/fail
line per criterion is printed (visible with pytest -s).
"""

import itertools

import pytest

from hallmorph import (
    DerivedContext,
    HallContext,
    SuiteConfig,
    ValuedQuiver,
    corrupt_lambda,
    frame_principal,
)
from hallmorph.qca import compare_with_psi
from hallmorph.suites import (
    suite_appendix,
    suite_bialgebra,
    suite_cluster_mult,
    suite_counting,
    suite_gvectors,
    suite_integration,
    suite_psi,
    suite_qca,
    suite_relations,
)

RNG_SEED = 20240810


@pytest.fixture(scope="module")
def halls():
    out = {}
    for n in (2, 3):
        for q in (2, 3):
            ctx = HallContext(frame_principal(ValuedQuiver.linear(n), q=q), q)
            ctx.cat.ensure_catalog(4)
            out[(n, q)] = ctx
    return out


def _cfg(**kw):
    base = dict(
        max_total=4, term_total=2, pmax=2, samples=100, assoc_samples=200,
        rng_seed=RNG_SEED, depth=5,
    )
    base.update(kw)
    return SuiteConfig(**base)


def _emit(num: int, desc: str, ok: bool, detail: str = ""):
    mark = "PASS" if ok else "FAIL"
    print(f"[{mark}] criterion {num:2d}: {desc} {detail}".rstrip())
    assert ok, f"criterion {num} failed: {desc} {detail}"


def _fails(report):
    return "; ".join(f"{c.name}: {c.detail}" for c in report.checks if not c.ok)


def _run_all(halls, fn, cfg_by_key):
    bad = []
    for key, hall in sorted(halls.items()):
        rep = fn(hall, cfg_by_key(key))
        if not rep.ok:
            bad.append(f"A{key[0]} q={key[1]} -> {_fails(rep)}")
    return bad


def test_criterion_01_relations(halls):
    bad = _run_all(halls, suite_relations, lambda key: _cfg())
    _emit(1, "relations (h1)-(h6), (x1)-(x6), gradedness, associativity (>=200 triples)",
          not bad, "; ".join(bad))


def test_criterion_02_bialgebra(halls):
    bad = _run_all(halls, suite_bialgebra, lambda key: _cfg())
    _emit(2, "Delta is an algebra map for * and star (>=100 pairs per config)",
          not bad, "; ".join(bad))


def test_criterion_03_integration(halls):
    bad = _run_all(halls, suite_integration, lambda key: _cfg())
    _emit(3, "int, int(x)int and mu are multiplicative (>=100 samples each)",
          not bad, "; ".join(bad))


def test_criterion_04_psi(halls):
    bad = _run_all(halls, suite_psi, lambda key: _cfg())
    _emit(4, "psi pipeline = closed form on the (M, P) sweep; Psi(K_a)=X^{a~}; "
             "Psi multiplicative (>=100 pairs)", not bad, "; ".join(bad))


def test_criterion_05_cluster_mult(halls):
    bad = _run_all(halls, suite_cluster_mult, lambda key: _cfg())
    _emit(5, "both cluster multiplication identities inside T_Lambda",
          not bad, "; ".join(bad))


def test_criterion_06_gvectors(halls):
    bad = _run_all(halls, suite_gvectors, lambda key: _cfg())
    _emit(6, "Psi images homogeneous with g = -ind0 (modules and shifts)",
          not bad, "; ".join(bad))


def test_criterion_07_appendix(halls):
    bad = []
    for key, hall in sorted(halls.items()):
        der = DerivedContext(hall.seed, hall.q)
        cfg = _cfg(samples=100 if key[0] == 2 else 60)
        rep = suite_appendix(hall, der, cfg)
        if not rep.ok:
            bad.append(f"A{key[0]} q={key[1]} -> {_fails(rep)}")
    _emit(7, "derived route: relations, phi, Hom vanishing, psi = closed form = "
             "cluster character", not bad, "; ".join(bad))


def test_criterion_08_qca(halls):
    bad = []
    for (n, q), hall in sorted(halls.items()):
        depth = 5 if n == 2 else 8
        rep = suite_qca(hall, _cfg(depth=depth))
        rows = compare_with_psi(hall, depth, max_total=4)
        expected_rows = {2: 3 + 2 + 1, 3: 6 + 3 + 1}[n]
        if not rep.ok or len(rows) != expected_rows or not all(r["matched"] for r in rows):
            bad.append(f"A{n} q={q}")
    _emit(8, "BZ mutation variables match Psi images exactly (A2 depth 5, A3 depth 8)",
          not bad, "; ".join(bad))


def test_criterion_09_counting(halls):
    bad = _run_all(halls, suite_counting, lambda key: _cfg())
    _emit(9, "counting oracles: Ext sums, Hall associativity, hom-fiber dual routes",
          not bad, "; ".join(bad))


def test_criterion_10_negative_control(halls):
    hall = halls[(2, 2)]
    bad_seed = corrupt_lambda(hall.seed, 0, 2)
    broken = HallContext(bad_seed, 2)
    cfg = _cfg(samples=25, assoc_samples=25, max_total=2)
    failures = {
        "relations": suite_relations(broken, cfg).ok,
        "integration": suite_integration(broken, cfg).ok,
        "psi": suite_psi(broken, cfg).ok,
    }
    ok = not any(failures.values())
    _emit(10, "corrupting Lambda makes suites 1, 3 and 4 fail (no vacuous passes)",
          ok, str(failures) if not ok else "")
