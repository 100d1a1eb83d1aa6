"""Verification suites shared by the CLI, the scripts and the acceptance tests."""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import combinatorics as comb_
from . import fockoracle as fo
from . import modealg as ma
from . import symfun as sf
from .errors import ResourceLimitError

DEFAULT_TIMEOUT = 60.0


class Deadline:
    def __init__(self, seconds):
        self.seconds = seconds
        self.t0 = time.perf_counter()

    def check(self):
        if self.seconds is not None and time.perf_counter() - self.t0 > self.seconds:
            raise ResourceLimitError(f"suite exceeded its {self.seconds} s budget")

    @property
    def elapsed_ms(self):
        return (time.perf_counter() - self.t0) * 1000


@dataclass
class SuiteReport:
    suite: str
    cases: list = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def passed(self):
        return all(c["status"] == "pass" for c in self.cases)

    @property
    def status(self):
        return "pass" if self.passed else "fail"

    def first_failure(self):
        return next((c for c in self.cases if c["status"] != "pass"), None)

    def to_dict(self):
        return {
            "suite": self.suite,
            "status": self.status,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "cases": self.cases,
        }


def _status(ok):
    return "pass" if ok else "fail"


# --- relations ---------------------------------------------------------------


def relation_test_vectors(cfg, max_depth):
    """Fock basis vectors of depth <= max_depth at charges 0, f_1, -f_1."""
    charges = [cfg.zero(), cfg.basis_vector(1), tuple(-c for c in cfg.basis_vector(1))]
    return [mono for h in charges for mono in fo.fock_basis(cfg, h, max_depth)]


def _relation_failures(args):
    k, m, monos, modes = args
    cfg = fo.LatticeConfig(k, m)
    fails = []
    checked = 0
    for mono in monos:
        x = fo.FockElement({mono: 1})
        checked += k * k * (2 * modes + 1) ** 2
        for p, q, i, j in fo.relation_failures(x, cfg, modes):
            fails.append({"p": p, "q": q, "i": i, "j": j, "charge": list(mono.charge), "parts": [list(t) for t in mono.parts]})
    return checked, fails


def verify_relations(k, m, max_depth, modes=3, threads=1, timeout=DEFAULT_TIMEOUT):
    deadline = Deadline(timeout)
    cfg = fo.LatticeConfig(k, m)
    monos = relation_test_vectors(cfg, max_depth)
    if threads > 1:
        chunks = [(k, m, monos[t::threads], modes) for t in range(threads)]
        with ProcessPoolExecutor(threads) as pool:
            results = list(pool.map(_relation_failures, chunks))
    else:
        results = []
        for mono in monos:
            results.append(_relation_failures((k, m, [mono], modes)))
            deadline.check()
    checked = sum(r[0] for r in results)
    fails = [f for r in results for f in r[1]]
    case = {
        "k": k,
        "m": m,
        "max_depth": max_depth,
        "modes": modes,
        "vectors": len(monos),
        "checked": checked,
        "status": _status(not fails),
    }
    if fails:
        case["counterexample"] = fails[0]
    return SuiteReport("relations", [case], deadline.elapsed_ms)


# --- independence ------------------------------------------------------------


def verify_independence(triples, threads=1, timeout=DEFAULT_TIMEOUT):
    deadline = Deadline(timeout)
    cases = []
    if threads > 1:
        with ProcessPoolExecutor(threads) as pool:
            reports = list(pool.map(_certificate, triples))
    else:
        reports = []
        for t in triples:
            reports.append(_certificate(t))
            deadline.check()
    for rep in reports:
        cases.append(rep.to_dict())
    return SuiteReport("independence", cases, deadline.elapsed_ms)


def _certificate(triple):
    n, k, m = triple
    return fo.independence_certificate(n, k, m)


# --- character match ---------------------------------------------------------


def verify_character_match(n_max, ks=None, timeout=DEFAULT_TIMEOUT):
    """Graded character of Q_n(k) against the projected orbit expansion of PF(n)."""
    deadline = Deadline(timeout)
    cases = []
    for n in range(1, n_max + 1):
        frob = sf.frobenius_monomial_expansion(sf.parking_function_rep(n))
        for k in ks or range(1, n + 1):
            ch = ma.graded_character(n, ma.AlgebraParams(k, 1)).coeffs
            proj = sf.project_to_variables(frob, k)
            cases.append({"n": n, "k": k, "terms": len(proj), "status": _status(ch == proj)})
            deadline.check()
    return SuiteReport("character-match", cases, deadline.elapsed_ms)


# --- bijection -------------------------------------------------------------


def verify_bijection(n_max, timeout=DEFAULT_TIMEOUT):
    """Round trip through ``(sigma, b)`` and the conditions on ``(sigma', a)``."""
    deadline = Deadline(timeout)
    cases = []
    for n in range(1, n_max + 1):
        round_trip = 0
        bad_round_trip = None
        cond_fail = {"(i)": 0, "(ii)": 0, "(iii)": 0}
        first_cond = None
        total = 0
        for f in comb_.enumerate_parking_functions(n):
            total += 1
            path = comb_.pf_to_labelled_path(f)
            if comb_.path_to_pf(path) == f:
                round_trip += 1
            elif bad_round_trip is None:
                bad_round_trip = list(f.values)
            failures = comb_.area_condition_failures(path.sigma_prime, path.a)
            for name in failures:
                cond_fail[name.split()[0]] += 1
            if failures and first_cond is None:
                first_cond = {"f": list(f.values), **path.to_dict(), "sigma_prime": list(path.sigma_prime), "failed": failures}
        deadline.check()
        ok = round_trip == total and not any(cond_fail.values())
        case = {
            "n": n,
            "parking_functions": total,
            "round_trip": round_trip,
            "area_condition_failures": cond_fail,
            "status": _status(ok),
        }
        if bad_round_trip is not None:
            case["round_trip_counterexample"] = bad_round_trip
        if first_cond is not None:
            case["area_counterexample"] = first_cond
        cases.append(case)
    return SuiteReport("bijection", cases, deadline.elapsed_ms)


# --- Fock character ----------------------------------------------------------


def verify_fock_character(k, m, window, degree, timeout=DEFAULT_TIMEOUT):
    deadline = Deadline(timeout)
    cfg = fo.LatticeConfig(k, m)
    counted = fo.fock_character(cfg, window, degree)
    closed = fo.fock_character_closed_form(cfg, window, degree)
    mismatches = [key for key in set(counted) | set(closed) if counted.get(key, 0) != closed.get(key, 0)]
    case = {
        "k": k,
        "m": m,
        "window": window,
        "degree": degree,
        "bidegrees": len(counted),
        "status": _status(not mismatches),
    }
    if mismatches:
        d1, h = min(mismatches)
        case["counterexample"] = {"d1": d1, "charge": list(h), "counted": counted.get((d1, h), 0), "closed_form": closed.get((d1, h), 0)}
    return SuiteReport("fock-character", [case], deadline.elapsed_ms)


# --- rewrite against oracle --------------------------------------------------


def random_words(samples, seed, max_len=4, max_k=3, max_mode=3, max_m=2):
    """Seed-deterministic ``(word, k, m)`` samples."""
    rng = random.Random(seed)
    out = []
    for _ in range(samples):
        k = rng.randint(1, max_k)
        m = rng.randint(1, max_m)
        length = rng.randint(1, max_len)
        w = ma.word(*[(rng.randint(1, k), rng.randint(0, max_mode)) for _ in range(length)])
        out.append((w, k, m))
    return out


def verify_rewrite(samples=500, seed=0, timeout=DEFAULT_TIMEOUT):
    """Evaluate random words and their normal forms on the Fock vacuum."""
    deadline = Deadline(timeout)
    fails = []
    for w, k, m in random_words(samples, seed):
        cfg = fo.LatticeConfig(k, m)
        nf = ma.rewrite_to_admissible(ma.AlgebraElement.of(w), ma.AlgebraParams(k, m))
        if fo.evaluate_word(w, cfg.zero(), cfg) != fo.evaluate(nf, cfg.zero(), cfg):
            fails.append({"word": ma.format_word(w), "k": k, "m": m})
        deadline.check()
    case = {"samples": samples, "seed": seed, "status": _status(not fails)}
    if fails:
        case["counterexample"] = fails[0]
    return SuiteReport("rewrite", [case], deadline.elapsed_ms)
