"""Acceptance criteria 1-9, one test each; every test leaves a PASS/FAIL line in the summary."""

import time

import pytest

from conftest import ACCEPTANCE
from orbitlift.checks import random_suite_tasks, stable_range_samples, tableau_checks
from orbitlift.cli import main
from orbitlift.corpus import DIVISION_ALGEBRAS, admissible_tableaux
from orbitlift.dualpair import build_moment_lift

SEED = 7
CORE = {
    1: ("sl2.relations",),
    2: ("tableaux.jordan_roundtrip",),
    3: ("dualpair.moment_lift",),
    4: ("dualpair.sigma",),
    5: ("sl2.sign_identity",),
}


def record(n, ok, detail):
    line = "criterion %d: %s  %s" % (n, "PASS" if ok else "FAIL", detail)
    ACCEPTANCE[n] = line
    print(line)
    assert ok, line


def failures(results):
    return [r.id for r in results if not r.ok]


def run_core(corpus, kinds):
    start = time.perf_counter()
    results = []
    for name, tab, eps in corpus:
        results.extend(tableau_checks(name, tab, eps, which=kinds))
    return results, time.perf_counter() - start


@pytest.fixture(scope="module")
def corpus10():
    return admissible_tableaux(10)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_field_corpus(n, corpus10):
    results, secs = run_core(corpus10, CORE[n])
    bad = failures(results)
    ok = not bad and len(results) == len(corpus10) and (n != 1 or secs < 30)
    record(n, ok, "%d tableaux of size <= 10, %d checks, %.1fs%s"
           % (len(corpus10), len(results), secs, "; failing: %s" % bad[:3] if bad else ""))


@pytest.fixture(scope="module")
def random_pool():
    pool = [(name, build_moment_lift(tab, eps)) for name, tab, eps in admissible_tableaux(5)]
    return pool


def test_homomorphism_suites(random_pool):
    which = ["sl2.alpha_gamma_hom", "dualpair.alpha_T_hom", "dualpair.phi_T"]
    results = [task() for task in random_suite_tasks(random_pool, 500, SEED, 10, which)]
    bad = [(r.id, r.witness) for r in results if not r.ok]
    record(6, not bad and len(results) == 3,
           "500 samples each, bound 10, suites %s%s" % (", ".join(r.id for r in results), "; %s" % bad if bad else ""))


def test_stable_range():
    r = stable_range_samples(100, SEED, 10, max_dim=6, max_dim_tilde=14)
    record(7, r.ok, "100 samples, dim V <= 6, dim V~ <= 14%s" % ("; %s" % r.witness if not r.ok else ""))


def test_division_algebras():
    kinds = tuple(k for ks in CORE.values() for k in ks)
    start = time.perf_counter()
    total, bad, sizes = 0, [], []
    for alg in DIVISION_ALGEBRAS:
        corpus = admissible_tableaux(4, alg)
        results, _ = run_core(corpus, kinds)
        total += len(results)
        sizes.append(len(corpus))
        bad += failures(results)
    secs = time.perf_counter() - start
    record(8, not bad and all(sizes) and secs < 120,
           "%s tableaux of size <= 4, %d checks, %.1fs%s" % ("+".join(map(str, sizes)), total, secs,
                                                            "; failing: %s" % bad[:3] if bad else ""))


def test_determinism(tmp_path):
    argv = ["verify-all", "--seed", str(SEED), "--samples", "500", "--max-part", "8"]
    outs, codes = [], []
    for k in range(2):
        path = tmp_path / ("run%d.jsonl" % k)
        codes.append(main(argv + ["--output", str(path)]))
        outs.append(path.read_bytes())
    same = outs[0] == outs[1]
    record(9, same and codes == [0, 0],
           "verify-all --seed %d --samples 500 --max-part 8 twice: exit %s, %d bytes, identical=%s"
           % (SEED, codes, len(outs[0]), same))
