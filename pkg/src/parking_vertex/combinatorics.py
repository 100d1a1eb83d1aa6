"""Parking functions, labelled Dyck paths and the closed-form counts.

A parking function of length ``n`` with parameter ``m`` is stored as the
tuple of its values ``(f(1), ..., f(n))``.  For ``m = 1`` the condition is the
classical one: at least ``t`` arguments take a value ``<= t``.  For general
``m`` the values range over ``1..mn`` and the threshold for ``t`` arguments
is ``m(t-1)+1``; these are counted by ``(mn+1)^(n-1)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb

from .errors import DomainError, InvariantError, ResourceLimitError

DEFAULT_ITEM_CAP = 10**7


def _threshold(t, m):
    return m * (t - 1) + 1


def is_parking_function(values, m=1):
    values = tuple(values)
    if not values:
        raise DomainError("a parking function needs at least one value")
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    if any(v < 1 for v in values):
        raise DomainError(f"values must be >= 1, got {values}")
    n = len(values)
    if any(v > m * n for v in values):
        return False
    return all(
        sum(1 for v in values if v <= _threshold(t, m)) >= t for t in range(1, n + 1)
    )


@dataclass(frozen=True)
class ParkingFunction:
    values: tuple
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if not is_parking_function(self.values, self.m):
            raise InvariantError("parking", f"{self.values} is not a parking function (m={self.m})")

    @property
    def n(self):
        return len(self.values)

    def __call__(self, j):
        return self.values[j - 1]

    def to_json(self):
        return json.dumps(list(self.values))

    @classmethod
    def from_json(cls, text, m=1):
        return cls(tuple(json.loads(text)), m)


def parking_function_count(n, m=1):
    """Closed form ``(mn+1)^(n-1)``."""
    if n < 1 or m < 1:
        raise DomainError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    return (m * n + 1) ** (n - 1)


def fuss_catalan(n, m=1):
    """``binom((m+1)n, n) / (mn+1)``, exact."""
    if n < 0 or m < 1:
        raise DomainError(f"need n >= 0 and m >= 1, got n={n}, m={m}")
    num = comb((m + 1) * n, n)
    q, r = divmod(num, m * n + 1)
    assert r == 0
    return q


def catalan(n):
    return fuss_catalan(n, 1)


def _check_cap(count, cap, what):
    if cap is not None and count > cap:
        raise ResourceLimitError(f"{what}: {count} items exceeds the cap of {cap}")


def enumerate_parking_functions(n, m=1, cap=DEFAULT_ITEM_CAP):
    """All parking functions of length ``n``, lexicographic in the values."""
    total = parking_function_count(n, m)
    _check_cap(total, cap, f"parking functions of length {n}")
    top = m * n
    out = []
    prefix = []

    def feasible():
        # best completion sets every free value to 1
        free = n - len(prefix)
        return all(
            sum(1 for v in prefix if v <= _threshold(t, m)) + free >= t for t in range(1, n + 1)
        )

    def rec():
        if len(prefix) == n:
            out.append(ParkingFunction(tuple(prefix), m))
            return
        for v in range(1, top + 1):
            prefix.append(v)
            if feasible():
                rec()
            prefix.pop()

    rec()
    assert len(out) == total
    return out


@dataclass(frozen=True)
class LabelledPath:
    """A parking function encoded as ``(sigma, b)``.

    ``sigma`` lists the arguments sorted by value (ties by argument) and
    ``b[t-1]`` is the number of arguments with value ``<= t``.  Inside one
    value block, i.e. at positions ``s`` with ``s`` not among the ``b``
    values, ``sigma`` must increase.
    """

    sigma: tuple
    b: tuple
    a: tuple = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "b", tuple(self.b))
        n = len(self.sigma)
        if n == 0 or len(self.b) != n:
            raise InvariantError("shape", "sigma and b must be nonempty of equal length")
        if sorted(self.sigma) != list(range(1, n + 1)):
            raise InvariantError("permutation", f"{self.sigma} is not a permutation of 1..{n}")
        b = self.b
        if any(x < 0 for x in b) or any(b[t] > b[t + 1] for t in range(n - 1)) or b[-1] != n:
            raise InvariantError("(i)", f"b={b} must be weakly increasing with b_n = n")
        if any(b[t - 1] < t for t in range(1, n)):
            raise InvariantError("(ii)", f"b={b} must satisfy b_t >= t")
        ends = set(b)
        for s in range(1, n):
            if s not in ends and self.sigma[s - 1] > self.sigma[s]:
                raise InvariantError(
                    "(iii)", f"sigma decreases inside a value block at position {s}"
                )
        a = tuple(b[n - s] - n - 1 + s for s in range(1, n + 1))
        object.__setattr__(self, "a", a)

    @property
    def n(self):
        return len(self.sigma)

    @property
    def sigma_prime(self):
        """Position- and value-reversed permutation paired with ``a``."""
        n = self.n
        return tuple(n + 1 - self.sigma[n - s] for s in range(1, n + 1))

    def to_dict(self):
        return {"sigma": list(self.sigma), "b": list(self.b), "a": list(self.a)}

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        path = cls(tuple(d["sigma"]), tuple(d["b"]))
        if "a" in d and tuple(d["a"]) != path.a:
            raise InvariantError("a", f"a={d['a']} does not match b={d['b']}")
        return path


def pf_to_labelled_path(f):
    if not isinstance(f, ParkingFunction):
        f = ParkingFunction(tuple(f))
    if f.m != 1:
        raise DomainError("the labelled path encoding is defined for m = 1")
    n = f.n
    sigma = tuple(sorted(range(1, n + 1), key=lambda j: (f(j), j)))
    b = tuple(sum(1 for v in f.values if v <= t) for t in range(1, n + 1))
    return LabelledPath(sigma, b)


def path_to_pf(path):
    n = path.n
    values = [0] * n
    t = 1
    for s in range(1, n + 1):
        while path.b[t - 1] < s:
            t += 1
        values[path.sigma[s - 1] - 1] = t
    return ParkingFunction(tuple(values))


def area_condition_failures(sigma, a):
    """Return the names of the failed conditions for a ``(sigma, a)`` pair.

    (i) ``a_1 = 0``; (ii) ``a_{s+1} <= a_s + 1``; (iii) ``sigma(s) < sigma(s+1)``
    whenever ``a_{s+1} = a_s + 1``.  Each failure is reported with its first
    offending position.
    """
    failures = []
    if a[0] != 0:
        failures.append("(i) at s=1")
    for s in range(len(a) - 1):
        if a[s + 1] > a[s] + 1:
            failures.append(f"(ii) at s={s + 1}")
            break
    for s in range(len(a) - 1):
        if a[s + 1] == a[s] + 1 and sigma[s] > sigma[s + 1]:
            failures.append(f"(iii) at s={s + 1}")
            break
    return failures


@dataclass(frozen=True)
class AdmissibleSequence:
    """Index data ``(p_s, i_s)`` of an admissible monomial."""

    k: int
    m: int
    pairs: tuple

    def __post_init__(self):
        pairs = tuple((int(p), int(i)) for p, i in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if not pairs:
            raise InvariantError("length", "empty sequence")
        if any(not 1 <= p <= self.k for p, _ in pairs):
            raise InvariantError("colour", f"colours must lie in 1..{self.k}")
        if pairs[0][1] != 0 or any(i < 0 for _, i in pairs):
            raise InvariantError("(i)", "need i_1 = 0 and i_s >= 0")
        for (p, i), (q, j) in zip(pairs, pairs[1:]):
            if j > i + self.m:
                raise InvariantError("(ii)", f"jump {i} -> {j} exceeds m={self.m}")
            if j == i + self.m and p > q:
                raise InvariantError("(iii)", f"colours {p} > {q} at a maximal jump")

    @property
    def n(self):
        return len(self.pairs)

    @property
    def colours(self):
        return tuple(p for p, _ in self.pairs)

    @property
    def modes(self):
        return tuple(i for _, i in self.pairs)


def mode_sequences(n, m=1):
    """``i``-data with ``i_1 = 0``, ``0 <= i_{s+1} <= i_s + m``, lexicographic."""
    if n < 1 or m < 1:
        raise DomainError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    out = []

    def rec(seq):
        if len(seq) == n:
            out.append(tuple(seq))
            return
        for j in range(0, seq[-1] + m + 1):
            seq.append(j)
            rec(seq)
            seq.pop()

    rec([0])
    return out


def _colourings(modes, k, m, distinct):
    n = len(modes)
    out = []
    cols = []
    used = set()

    def rec(s):
        if s == n:
            out.append(tuple(cols))
            return
        lo = 1
        if s > 0 and modes[s] == modes[s - 1] + m:
            lo = cols[-1]
        for p in range(lo, k + 1):
            if distinct and p in used:
                continue
            cols.append(p)
            used.add(p)
            rec(s + 1)
            used.discard(p)
            cols.pop()

    rec(0)
    return out


def enumerate_admissible_sequences(n, k, m=1, multilinear=False, cap=DEFAULT_ITEM_CAP):
    """All admissible ``(p, i)`` data, ordered by ``i``-data then colours.

    With ``multilinear=True`` only colourings using each colour exactly once
    are returned (this requires ``k = n``).
    """
    if k < 1:
        raise DomainError(f"need k >= 1, got {k}")
    if multilinear and k != n:
        raise DomainError("the multilinear component needs k = n")
    out = []
    for modes in mode_sequences(n, m):
        for cols in _colourings(modes, k, m, multilinear):
            out.append(AdmissibleSequence(k, m, tuple(zip(cols, modes))))
            _check_cap(len(out), cap, f"admissible sequences (n={n}, k={k}, m={m})")
    return out


def cycles_of(sigma):
    """Cycles of a permutation given as a 1-based tuple of images."""
    n = len(sigma)
    seen = [False] * (n + 1)
    cycles = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cyc = []
        j = start
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = sigma[j - 1]
        cycles.append(tuple(cyc))
    return cycles


def fixed_parking_functions(sigma, n, m=1):
    """Number of parking functions ``f`` with ``f o sigma = f``."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise DomainError(f"{sigma} is not a permutation of 1..{n}")
    cycles = cycles_of(sigma)
    top = m * n
    count = 0
    # a fixed function is constant on each cycle
    vals = [0] * len(cycles)

    def rec(c):
        nonlocal count
        if c == len(cycles):
            f = [0] * n
            for cyc, v in zip(cycles, vals):
                for j in cyc:
                    f[j - 1] = v
            count += is_parking_function(f, m)
            return
        for v in range(1, top + 1):
            vals[c] = v
            rec(c + 1)

    rec(0)
    return count
