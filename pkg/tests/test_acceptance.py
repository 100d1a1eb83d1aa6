"""The eleven acceptance criteria, each at its stated tolerance and time limit.

Every criterion is exact.  Caches are cleared first so that timings do not
benefit from earlier tests.
"""
import time
from contextlib import contextmanager

import pytest

from parking_vertex import fockoracle as fo
from parking_vertex import modealg as ma
from parking_vertex import symfun as sf
from parking_vertex import verify as vf
from parking_vertex.combinatorics import (
    area_condition_failures,
    enumerate_admissible_sequences,
    enumerate_parking_functions,
    fixed_parking_functions,
    path_to_pf,
    pf_to_labelled_path,
)


@contextmanager
def criterion(record, number, description, limit):
    fo.clear_caches()
    ma.clear_caches()
    outcome = {"ok": False}
    t0 = time.perf_counter()
    try:
        yield outcome
    finally:
        elapsed = time.perf_counter() - t0
        passed = outcome["ok"] and elapsed < limit
        record(number, f"{description} (limit {limit} s)", passed, elapsed)
    assert elapsed < limit, f"criterion {number} took {elapsed:.2f} s, limit {limit} s"


def test_criterion_01_parking_dimension(record_criterion):
    with criterion(record_criterion, 1, "multilinear basis size (n+1)^(n-1), n=1..5", 1) as c:
        sizes = [len(enumerate_admissible_sequences(n, n, 1, multilinear=True)) for n in range(1, 6)]
        c["ok"] = sizes == [1, 3, 16, 125, 1296]
    assert sizes == [1, 3, 16, 125, 1296]


def test_criterion_02_catalan(record_criterion):
    expected = [1, 2, 5, 14, 42, 132, 429, 1430]
    with criterion(record_criterion, 2, "k=1 basis size is Catalan, n=1..8", 1) as c:
        sizes = [len(enumerate_admissible_sequences(n, 1, 1)) for n in range(1, 9)]
        c["ok"] = sizes == expected
    assert sizes == expected


def test_criterion_03_fuss_catalan(record_criterion):
    with criterion(record_criterion, 3, "k=1 basis size is Fuss-Catalan, m=2,3", 1) as c:
        m2 = [len(enumerate_admissible_sequences(n, 1, 2)) for n in range(1, 5)]
        m3 = [len(enumerate_admissible_sequences(n, 1, 3)) for n in range(1, 4)]
        c["ok"] = m2 == [1, 3, 12, 55] and m3 == [1, 4, 22]
    assert m2 == [1, 3, 12, 55]
    assert m3 == [1, 4, 22]


def test_criterion_04_higher_multilinear(record_criterion):
    with criterion(record_criterion, 4, "multilinear basis size (2n+1)^(n-1), n=1..4", 5) as c:
        sizes = [len(enumerate_admissible_sequences(n, n, 2, multilinear=True)) for n in range(1, 5)]
        c["ok"] = sizes == [1, 5, 49, 729]
    assert sizes == [1, 5, 49, 729]


def test_criterion_05_character_identity(record_criterion):
    with criterion(record_criterion, 5, "graded character equals projected PF(n) orbit expansion, n<=5, k<=n", 30) as c:
        report = vf.verify_character_match(5, timeout=None)
        c["ok"] = report.passed and len(report.cases) == 15
    assert report.passed, report.first_failure()
    assert len(report.cases) == 15


def test_criterion_06_module_isomorphism(record_criterion):
    with criterion(record_criterion, 6, "multilinear trace equals PF fixed points per cycle type, n<=5", 60) as c:
        mismatches = []
        types = 0
        for n in range(1, 6):
            chars = ma.multilinear_character(n)
            for mu in sf.partitions(n):
                types += 1
                expected = fixed_parking_functions(sf.permutation_of_type(mu), n)
                if chars[mu] != expected:
                    mismatches.append((n, mu, chars[mu], expected))
        c["ok"] = not mismatches and len(chars) == 7
    assert not mismatches
    assert len(chars) == 7 and types == 1 + 2 + 3 + 5 + 7


def test_criterion_07_oracle_independence(record_criterion):
    triples = [(2, 2, 1), (3, 1, 1), (3, 2, 1), (3, 3, 1), (4, 1, 1), (2, 1, 2), (3, 1, 2)]
    with criterion(record_criterion, 7, "rank certificates equal basis sizes", 120) as c:
        report = vf.verify_independence(triples, timeout=None)
        c["ok"] = report.passed
    assert report.passed, report.first_failure()
    assert [case["rank"] for case in report.cases] == [7, 5, 30, 91, 14, 3, 12]


def test_criterion_08_relations(record_criterion):
    configs = [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2)]
    with criterion(record_criterion, 8, "quadratic relations on all Fock basis vectors of depth <= 5, |i|,|j| <= 3", 120) as c:
        reports = [vf.verify_relations(k, m, 5, modes=3, timeout=None) for k, m in configs]
        c["ok"] = all(r.passed for r in reports)
    for r in reports:
        assert r.passed, r.first_failure()


def test_criterion_09_rewrite_oracle(record_criterion):
    with criterion(record_criterion, 9, "500 random words agree with their normal forms on the Fock vacuum", 120) as c:
        report = vf.verify_rewrite(500, seed=0, timeout=None)
        c["ok"] = report.passed
    assert report.passed, report.first_failure()


def test_criterion_10_fock_character(record_criterion):
    with criterion(record_criterion, 10, "Fock character equals closed form, |sum c| <= 3, degree <= 8, k <= 2", 30) as c:
        reports = [vf.verify_fock_character(k, 1, 3, 8, timeout=None) for k in (1, 2)]
        c["ok"] = all(r.passed for r in reports)
    for r in reports:
        assert r.passed, r.first_failure()


def test_criterion_11_bijection(record_criterion):
    with criterion(record_criterion, 11, "round trip through (sigma, b) and conditions (i)-(iii) on (sigma', a), n<=6", 30) as c:
        round_trip_failures = []
        condition_failures = []
        for n in range(1, 7):
            for f in enumerate_parking_functions(n):
                path = pf_to_labelled_path(f)
                if path_to_pf(path) != f:
                    round_trip_failures.append(f.values)
                failed = area_condition_failures(path.sigma_prime, path.a)
                if failed:
                    condition_failures.append((f.values, failed))
        c["ok"] = not round_trip_failures and not condition_failures
    assert not round_trip_failures
    assert not condition_failures, (
        f"{len(condition_failures)} parking functions violate the area conditions; "
        f"first: f={condition_failures[0][0]} {condition_failures[0][1]}"
    )
