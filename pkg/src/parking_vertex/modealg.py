"""The algebras B^(m)(k), their vacuum module and its admissible normal form.

Generators ``e_p[i]`` carry a colour ``p`` in ``1..k`` and an integer mode
``i``.  A word is a tuple of generators applied, left to right, to a vacuum
``v`` with ``v e_p[i] = 0`` for ``i > 0``.  The defining relations are

    sum_{i=0}^{m} (-1)^i binom(m, i) [e_p[r-i], e_q[s+i]]_m = 0,
    [a, b]_m = ab - (-1)^m ba,

for all colours ``p, q`` (equal colours included) and integers ``r, s``.
"""
from __future__ import annotations

import heapq
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import NamedTuple

from .combinatorics import enumerate_admissible_sequences
from .errors import DomainError, FuelExhaustedError, ParseError
from .symfun import canonical_partition, partitions, permutation_of_type

DEFAULT_FUEL = 10**6


@dataclass(frozen=True)
class AlgebraParams:
    k: int = 1
    m: int = 1

    def __post_init__(self):
        if self.k < 1 or self.m < 1:
            raise DomainError(f"need k >= 1 and m >= 1, got k={self.k}, m={self.m}")


class Generator(NamedTuple):
    colour: int
    mode: int

    def __str__(self):
        return f"e{self.colour}[{self.mode}]"


def word(*pairs):
    return tuple(Generator(p, i) for p, i in pairs)


class AlgebraElement:
    """Finite rational combination of words; zero coefficients are dropped."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                w = tuple(Generator(*g) for g in w)
                clean[w] = clean.get(w, 0) + c
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def of(cls, w, coeff=1):
        return cls({tuple(w): coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return AlgebraElement(out)

    def __neg__(self):
        return AlgebraElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar):
        return AlgebraElement({w: scalar * c for w, c in self.terms.items()})

    def __mul__(self, other):
        """Scalar multiple, or concatenation product of words."""
        if not isinstance(other, AlgebraElement):
            return other * self
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return AlgebraElement(out)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda t: _order_key(t[0])))

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"AlgebraElement({format_element(self)!r})"

    def to_json(self):
        return json.dumps(
            [
                {"coeff": f"{c.numerator}/{c.denominator}", "word": [list(g) for g in w]}
                for w, c in self
            ]
        )

    @classmethod
    def from_json(cls, text):
        return cls({tuple(tuple(g) for g in t["word"]): Fraction(t["coeff"]) for t in json.loads(text)})


_TOKEN = re.compile(r"e(\d+)\[(-?\d+)\]")


def parse_word(text):
    """Parse ``e<p>[<i>]`` tokens separated by spaces."""
    gens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos] == " ":
            pos += 1
        if pos == len(text):
            break
        if gens and text[pos - 1] != " ":
            raise ParseError(text, pos, "expected a space between generators")
        match = _TOKEN.match(text, pos)
        if not match:
            raise ParseError(text, pos, "expected a generator e<p>[<i>]")
        gens.append(Generator(int(match.group(1)), int(match.group(2))))
        pos = match.end()
    if not gens:
        raise ParseError(text, 0, "empty word")
    return tuple(gens)


def format_word(w):
    return " ".join(str(g) for g in w) if w else "v"


def format_element(elem):
    if not elem:
        return "0"
    parts = []
    for w, c in elem:
        sign = "+" if c > 0 else "-"
        parts.append(f"{sign}{abs(c)} {format_word(w)}")
    return " ".join(parts)


def check_colours(elem, params):
    for w in elem.terms:
        for g in w:
            if not 1 <= g.colour <= params.k:
                raise DomainError(f"colour {g.colour} outside 1..{params.k}")


def relation_element(params, p, q, r, s):
    """The defining relation with parameters ``(p, q, r, s)``, collected."""
    m = params.m
    terms = Counter()
    for i in range(m + 1):
        c = (-1) ** i * comb(m, i)
        a, b = Generator(p, r - i), Generator(q, s + i)
        terms[(a, b)] += c
        terms[(b, a)] -= (-1) ** m * c
    return AlgebraElement(terms)


def first_violation(w, m):
    """Position of the first obstruction to admissibility, or None.

    ``-1`` means the first factor has positive mode and dies on the vacuum;
    ``s >= 0`` points at the pair ``(w[s], w[s+1])``.
    """
    if w and w[0].mode > 0:
        return -1
    for s in range(len(w) - 1):
        a, b = w[s], w[s + 1]
        gap = b.mode - a.mode
        if gap > m or (gap == m and a.colour > b.colour):
            return s
    return None


def is_admissible(w, m):
    return first_violation(w, m) is None


def _pair_expansion(a, b, m):
    """Express a violating pair ``e_p[x] e_q[y]`` through smaller pairs.

    Solving the relation with ``r = x + m``, ``s = y - m`` for its ``i = m``
    term gives

        e_p[x] e_q[y] = - sum_{i<m} (-1)^(i+m) C(m,i) e_p[x+m-i] e_q[y-m+i]
                        + sum_{i<=m} (-1)^i C(m,i) e_q[y-m+i] e_p[x+m-i].

    For ``m = 1`` these are the two classical span identities.
    """
    p, x = a
    q, y = b
    out = []
    for i in range(m):
        out.append((-((-1) ** (i + m)) * comb(m, i), Generator(p, x + m - i), Generator(q, y - m + i)))
    for i in range(m + 1):
        out.append(((-1) ** i * comb(m, i), Generator(q, y - m + i), Generator(p, x + m - i)))
    return out


def _order_key(w):
    # every rewrite step produces strictly larger keys
    return (tuple(g.mode for g in w), tuple(-g.colour for g in w))


_NF_CACHE = {}


def _normal_form_word(w, m, fuel):
    key = (w, m)
    if key in _NF_CACHE:
        return _NF_CACHE[key]
    pending = {w: Fraction(1)}
    heap = [(_order_key(w), w)]
    result = {}
    steps = 0
    while heap:
        _, u = heapq.heappop(heap)
        c = pending.pop(u, 0)
        if not c:
            continue
        cached = _NF_CACHE.get((u, m))
        if cached is not None:
            for v, d in cached:
                result[v] = result.get(v, 0) + c * d
            continue
        s = first_violation(u, m)
        if s is None:
            result[u] = result.get(u, 0) + c
            continue
        if s == -1:
            continue
        steps += 1
        if steps > fuel:
            raise FuelExhaustedError(f"no normal form for {format_word(w)} within {fuel} steps")
        for d, g1, g2 in _pair_expansion(u[s], u[s + 1], m):
            v = u[:s] + (g1, g2) + u[s + 2 :]
            if v not in pending:
                heapq.heappush(heap, (_order_key(v), v))
            pending[v] = pending.get(v, 0) + c * d
            if not pending[v]:
                del pending[v]
    nf = tuple((v, d) for v, d in result.items() if d)
    _NF_CACHE[key] = nf
    return nf


def rewrite_to_admissible(elem, params, fuel=DEFAULT_FUEL):
    """Expand an element of the vacuum module in the admissible basis.

    Obstructions are removed leftmost first.  Each step raises the mode
    sequence lexicographically (or, at a maximal jump, lowers the colour
    sequence) while keeping all modes within the original range, so the
    process terminates; ``fuel`` bounds the steps per input word.
    """
    if not isinstance(elem, AlgebraElement):
        elem = AlgebraElement.of(elem)
    check_colours(elem, params)
    out = {}
    for w, c in elem.terms.items():
        for v, d in _normal_form_word(w, params.m, fuel):
            out[v] = out.get(v, 0) + c * d
    return AlgebraElement(out)


def admissible_basis(n, params, multilinear=False):
    seqs = enumerate_admissible_sequences(n, params.k, params.m, multilinear=multilinear)
    return [word(*seq.pairs) for seq in seqs]


def word_statistics(w):
    """``(d1, d2)`` for a word on the neutral vacuum: mode sum and colour charge."""
    return sum(g.mode for g in w), Counter(g.colour for g in w)


@dataclass(frozen=True)
class GradedCharacter:
    k: int
    coeffs: dict = field(default_factory=dict)

    def total(self):
        return sum(self.coeffs.values())


def graded_character(n, params):
    buckets = Counter()
    for w in admissible_basis(n, params):
        counts = [0] * params.k
        for g in w:
            counts[g.colour - 1] += 1
        buckets[tuple(counts)] += 1
    return GradedCharacter(params.k, dict(buckets))


def relabel(sigma, elem):
    return AlgebraElement(
        {tuple(Generator(sigma[g.colour - 1], g.mode) for g in w): c for w, c in elem.terms.items()}
    )


def colour_permutation(sigma, elem, params):
    """Apply the colour permutation ``p -> sigma[p-1]`` and renormalise."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, params.k + 1)):
        raise DomainError(f"{sigma} is not a permutation of 1..{params.k}")
    if not isinstance(elem, AlgebraElement):
        elem = AlgebraElement.of(elem)
    return rewrite_to_admissible(relabel(sigma, elem), params)


def multilinear_character(n, m=1):
    """Trace of each cycle type on the multilinear admissible basis."""
    params = AlgebraParams(n, m)
    basis = admissible_basis(n, params, multilinear=True)
    out = {}
    for mu in partitions(n):
        sigma = permutation_of_type(mu)
        trace = Fraction(0)
        for w in basis:
            image = colour_permutation(sigma, AlgebraElement.of(w), params)
            trace += image.terms.get(w, 0)
        assert trace.denominator == 1
        out[canonical_partition(mu)] = int(trace)
    return out


def clear_caches():
    """Drop memoised normal forms."""
    _NF_CACHE.clear()
