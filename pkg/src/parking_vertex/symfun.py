"""Partitions, monomial expansions and characters of permutation representations.

The Frobenius character of a set representation ``M`` of ``S_n`` has, in the
monomial basis, coefficient of ``m_mu`` equal to the number of orbits of the
Young subgroup ``S_mu`` on ``M``.  Everything here is computed by explicit
enumeration; no symmetric-function library is involved.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Callable

from .combinatorics import cycles_of, enumerate_parking_functions
from .errors import DomainError


def canonical_partition(parts):
    parts = tuple(sorted((int(x) for x in parts), reverse=True))
    if any(x < 1 for x in parts):
        raise DomainError(f"partition parts must be positive, got {parts}")
    return parts


def partitions(n):
    """Partitions of ``n`` as weakly decreasing tuples, in decreasing lex order."""
    if n < 0:
        raise DomainError(f"cannot partition {n}")

    def rec(rest, largest):
        if rest == 0:
            yield ()
            return
        for part in range(min(rest, largest), 0, -1):
            for tail in rec(rest - part, part):
                yield (part,) + tail

    return list(rec(n, n))


def cycle_type(sigma):
    return canonical_partition(len(c) for c in cycles_of(sigma))


def permutation_of_type(mu):
    """The permutation with consecutive cycles ``(1..mu_1)(mu_1+1..)...``."""
    images = []
    start = 1
    for part in mu:
        block = list(range(start, start + part))
        images.extend(block[1:] + block[:1])
        start += part
    return tuple(images)


def compose(sigma, tau):
    """``(sigma o tau)(j) = sigma(tau(j))``."""
    return tuple(sigma[t - 1] for t in tau)


@dataclass(frozen=True)
class MonomialExpansion:
    n: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for mu, c in self.coeffs.items():
            mu = canonical_partition(mu)
            if sum(mu) != self.n:
                raise DomainError(f"partition {mu} does not have weight {self.n}")
            if c:
                clean[mu] = int(c)
        object.__setattr__(self, "coeffs", clean)

    def __getitem__(self, mu):
        return self.coeffs.get(canonical_partition(mu), 0)

    def to_json(self):
        items = [{"mu": list(mu), "c": c} for mu, c in sorted(self.coeffs.items(), reverse=True)]
        return json.dumps({"n": self.n, "coeffs": items})

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(d["n"], {tuple(item["mu"]): item["c"] for item in d["coeffs"]})


@dataclass(frozen=True)
class SetRepresentation:
    """A finite ``S_n``-set.  ``action(pi, x)`` is a left action."""

    n: int
    elements: tuple
    action: Callable = field(compare=False)


def _act_on_arguments(pi, f):
    # (pi . f)(pi(j)) = f(j)
    out = [0] * len(f)
    for j, v in enumerate(f):
        out[pi[j] - 1] = v
    return tuple(out)


def parking_function_rep(n, m=1):
    """``PF(n)``: parking functions with ``S_n`` permuting the arguments."""
    elements = tuple(f.values for f in enumerate_parking_functions(n, m))
    return SetRepresentation(n, elements, _act_on_arguments)


def _young_generators(mu, n):
    gens = []
    start = 1
    for part in mu:
        for j in range(start, start + part - 1):
            t = list(range(1, n + 1))
            t[j - 1], t[j] = t[j], t[j - 1]
            gens.append(tuple(t))
        start += part
    return gens


def young_subgroup_orbits(rep, mu):
    """Number of orbits of ``S_mu1 x S_mu2 x ...`` on the elements.

    The factors act on consecutive blocks of ``1..n`` in the order of the
    parts.  Orbits are found by union-find over adjacent transpositions.
    """
    mu = canonical_partition(mu)
    if sum(mu) != rep.n:
        raise DomainError(f"weight of {mu} differs from degree {rep.n}")
    index = {x: i for i, x in enumerate(rep.elements)}
    parent = list(range(len(rep.elements)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    orbits = len(parent)
    for g in _young_generators(mu, rep.n):
        for i, x in enumerate(rep.elements):
            ri, rj = find(i), find(index[rep.action(g, x)])
            if ri != rj:
                parent[ri] = rj
                orbits -= 1
    return orbits


def frobenius_monomial_expansion(rep):
    return MonomialExpansion(rep.n, {mu: young_subgroup_orbits(rep, mu) for mu in partitions(rep.n)})


def project_to_variables(exp, k):
    """Expand into a polynomial in ``x_1..x_k``: ``{exponent vector: coefficient}``."""
    if k < 1:
        raise DomainError(f"need k >= 1, got {k}")
    poly = Counter()
    for mu, c in exp.coeffs.items():
        if len(mu) > k:
            continue
        padded = mu + (0,) * (k - len(mu))
        for alpha in set(permutations(padded)):
            poly[alpha] += c
    return {alpha: c for alpha, c in poly.items() if c}


def format_polynomial(poly):
    if not poly:
        return "0"
    terms = []
    for alpha in sorted(poly, reverse=True):
        c = poly[alpha]
        mono = "*".join(
            f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(alpha) if e
        )
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms)


def permutation_character(rep, cycle_type):
    """Fixed points of the standard permutation of the given cycle type."""
    mu = canonical_partition(cycle_type)
    if sum(mu) != rep.n:
        raise DomainError(f"weight of {mu} differs from degree {rep.n}")
    pi = permutation_of_type(mu)
    return sum(1 for x in rep.elements if rep.action(pi, x) == x)


# --- character theory of S_n by brute force -------------------------------


def class_sizes(n):
    """Cycle type -> number of permutations, by enumerating ``S_n``."""
    return dict(Counter(cycle_type(s) for s in permutations(range(1, n + 1))))


def inner_product(chi, psi, n):
    sizes = class_sizes(n)
    total = sum(size * chi[mu] * psi[mu] for mu, size in sizes.items())
    return Fraction(total, factorial(n))


def _tabloid_character(shape, n):
    content = []
    for label, part in enumerate(shape):
        content.extend([label] * part)
    tabloids = set(permutations(content))
    chi = {}
    for mu in partitions(n):
        pi = permutation_of_type(mu)
        chi[mu] = sum(1 for w in tabloids if all(w[pi[j] - 1] == w[j] for j in range(n)))
    return chi


def character_table(n):
    """Irreducible characters of ``S_n``, keyed by partition then cycle type.

    Built from the permutation characters on tabloids, which are
    unitriangular in the irreducibles; partitions are processed in
    decreasing lexicographic order and the known irreducibles are peeled off.
    """
    table = {}
    for shape in partitions(n):
        chi = _tabloid_character(shape, n)
        for lam, irr in table.items():
            mult = inner_product(chi, irr, n)
            if mult:
                chi = {mu: chi[mu] - mult * irr[mu] for mu in chi}
        assert inner_product(chi, chi, n) == 1
        table[shape] = {mu: int(v) for mu, v in chi.items()}
    return table


def decompose(chi, n):
    """Multiplicities of the irreducibles in a class function (exact rationals)."""
    return {lam: inner_product(chi, irr, n) for lam, irr in character_table(n).items()}


def value_at_ones(poly):
    """Evaluate a polynomial ``{exponents: coeff}`` at ``x_1 = ... = x_k = 1``."""
    return sum(poly.values())
