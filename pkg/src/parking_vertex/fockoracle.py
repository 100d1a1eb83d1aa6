"""Lattice Fock spaces and vertex operators with exact coefficients.

The lattice has basis ``f_1..f_k`` with the degenerate form ``(f_p, f_q) = -m``.
The Fock space of charge ``h`` is a polynomial space in the creation
operators ``f_q[-j]`` (``j >= 1``) applied to the vacuum ``v_h``.  All modules
are right modules: ``x . (AB) = (x . A) . B``.

Heisenberg bracket: ``[f_p[i], f_q[j]] = (f_p, f_q) * j * delta_{i+j,0}``
(residue of ``t^i d(t^j)``).  Hence ``f_p[j]``, ``j > 0``, contracts any
creation part of mode ``j`` with the scalar ``-m j``, and ``f_p[0]`` acts on
charge ``h`` by ``(h, f_p) = -m * sum(h)``.

The vertex operator ``V_{h', f_p}(z) = sum V[i] z^{-i}`` is

    exp(-sum_{l>0} f_p[l] z^{-l} / l) . D . exp(sum_{l>0} f_p[-l] z^l / l)

applied left to right, and ``U_p[i]`` acts on charge ``h`` as
``V[i + (h, f_p)]``.
"""
from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd, lcm, prod
from typing import NamedTuple

from .combinatorics import enumerate_admissible_sequences
from .errors import DomainError, ResourceLimitError
from .symfun import partitions

DEFAULT_ITEM_CAP = 10**7


@dataclass(frozen=True)
class LatticeConfig:
    k: int = 1
    m: int = 1

    def __post_init__(self):
        if self.k < 1 or self.m < 1:
            raise DomainError(f"need k >= 1 and m >= 1, got k={self.k}, m={self.m}")

    def gram(self, p, q):
        return -self.m

    def pairing(self, charge, p):
        """``(h, f_p)`` for ``h = sum c_q f_q``."""
        return -self.m * sum(charge)

    def zero(self):
        return (0,) * self.k

    def basis_vector(self, p):
        return tuple(1 if q == p else 0 for q in range(1, self.k + 1))


class FockMonomial(NamedTuple):
    charge: tuple
    parts: tuple  # sorted (colour, mode) pairs, modes >= 1

    @classmethod
    def make(cls, charge, parts=()):
        parts = tuple(sorted((int(q), int(j)) for q, j in parts))
        if any(j < 1 for _, j in parts):
            raise DomainError(f"creation modes must be >= 1, got {parts}")
        return cls(tuple(charge), parts)

    @property
    def depth(self):
        return sum(j for _, j in self.parts)

    @property
    def degree(self):
        return -self.depth


class FockElement:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        out = {}
        for mono, c in (terms or {}).items():
            if c:
                out[mono] = out.get(mono, 0) + Fraction(c)
        self.terms = {mono: c for mono, c in out.items() if c}

    @classmethod
    def vacuum(cls, charge):
        return cls({FockMonomial.make(charge): 1})

    @classmethod
    def monomial(cls, charge, parts, coeff=1):
        return cls({FockMonomial.make(charge, parts): coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, FockElement) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return FockElement(out)

    def __neg__(self):
        return FockElement({mono: -c for mono, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar):
        return FockElement({mono: scalar * c for mono, c in self.terms.items()})

    def __repr__(self):
        body = ", ".join(f"{c}*{mono.charge}{list(mono.parts)}" for mono, c in sorted(self.terms.items()))
        return f"FockElement({body})"

    def charges(self):
        return {mono.charge for mono in self.terms}

    def to_json(self):
        charges = self.charges()
        if len(charges) > 1:
            raise DomainError("only charge-homogeneous elements serialise")
        charge = next(iter(charges)) if charges else ()
        terms = [
            {"coeff": f"{c.numerator}/{c.denominator}", "parts": [list(x) for x in mono.parts]}
            for mono, c in sorted(self.terms.items())
        ]
        return json.dumps({"charge": list(charge), "terms": terms})

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        charge = tuple(d["charge"])
        return cls(
            {FockMonomial.make(charge, [tuple(x) for x in t["parts"]]): Fraction(t["coeff"]) for t in d["terms"]}
        )


def _linear(fn, x):
    out = {}
    for mono, c in x.terms.items():
        for mono2, d in fn(mono).items():
            out[mono2] = out.get(mono2, 0) + c * d
    return FockElement(out)


def heisenberg_apply(gen, x, cfg):
    """Right action of ``f_p[j]`` on ``x``."""
    p, j = gen

    def on_monomial(mono):
        if j < 0:
            return {FockMonomial.make(mono.charge, mono.parts + ((p, -j),)): 1}
        if j == 0:
            return {mono: cfg.pairing(mono.charge, p)}
        out = {}
        scalar = -cfg.m * j
        parts = list(mono.parts)
        for idx, (q, jj) in enumerate(parts):
            if jj == j:
                rest = FockMonomial(mono.charge, tuple(parts[:idx] + parts[idx + 1 :]))
                out[rest] = out.get(rest, 0) + scalar
        return out

    return _linear(on_monomial, x)


def _z(lam):
    """``z_lambda = prod_l l^{m_l} m_l!``."""
    counts = Counter(lam)
    return prod(l**c * factorial(c) for l, c in counts.items())


@lru_cache(maxsize=None)
def _creation_parts(p, c):
    """``c!`` times the ``z^c`` coefficient of ``exp(sum_l f_p[-l] z^l / l)``: ``[(parts, c!/z_lambda)]``."""
    return tuple((tuple((p, l) for l in sorted(lam)), factorial(c) // _z(lam)) for lam in partitions(c))


# Monomial part-tuples are interned as small integers so that the inner
# accumulation loops hash ints rather than nested tuples.
_PART_IDS = {}
_PARTS = []


def _intern(parts):
    ident = _PART_IDS.get(parts)
    if ident is None:
        ident = _PART_IDS[parts] = len(_PARTS)
        _PARTS.append(parts)
    return ident


def _submultisets(parts, m):
    """``[(removed mode sum, weight, kept parts)]`` over sub-multisets of ``parts``.

    The weight ``m^r * prod binom(a, r)`` counts the ways the shift
    ``x_{q,l} -> x_{q,l} + m z^{-l}`` removes ``r`` parts.
    """
    found = [(0, 1, ())]
    for part, a in sorted(Counter(parts).items()):
        found = [
            (s + r * part[1], w * comb(a, r) * m**r, kept + (part,) * (a - r))
            for s, w, kept in found
            for r in range(a + 1)
        ]
    return found


@lru_cache(maxsize=1 << 17)
def _times_creation(kept, p, c):
    """``kept`` times ``c!`` times the ``z^c`` creation coefficient, as ``[(id, coeff)]``."""
    return tuple(
        (_intern(tuple(sorted(kept + new)) if new else kept), coeff) for new, coeff in _creation_parts(p, c)
    )


@lru_cache(maxsize=1 << 17)
def _vertex_kernel(ident, p, k_index, m):
    """``V[k_index]`` of colour ``p`` on one interned monomial, times ``D!``.

    The output is homogeneous of depth ``D = depth - k_index`` and every
    creation coefficient ``1/z_lambda`` with ``|lambda| <= D`` becomes an
    integer after scaling by ``D!``.
    """
    parts = _PARTS[ident]
    top = sum(j for _, j in parts) - k_index
    if top < 0:
        return ()
    fact_top = factorial(top)
    out = {}
    get = out.get
    for a, w, kept in _submultisets(parts, m):
        c = a - k_index
        if c < 0:
            continue
        w *= fact_top // factorial(c)
        for key, coeff in _times_creation(kept, p, c):
            out[key] = get(key, 0) + w * coeff
    return tuple(out.items())


class _Scaled(NamedTuple):
    """Homogeneous piece ``{interned parts: int} / scale`` of fixed charge and depth."""

    charge: tuple
    depth: int
    scale: int
    poly: dict


def _apply_vertex(x, p, i, m):
    """``U_p[i]`` on a homogeneous piece, exactly, in integers."""
    k_index = i - m * sum(x.charge)
    top = x.depth - k_index
    new_charge = tuple(c + (1 if q == p else 0) for q, c in enumerate(x.charge, start=1))
    out = {}
    if top >= 0:
        get = out.get
        for ident, c in x.poly.items():
            for ident2, d in _vertex_kernel(ident, p, k_index, m):
                out[ident2] = get(ident2, 0) + c * d
    return _Scaled(new_charge, top, x.scale * factorial(max(top, 0)), out)


def _pieces(x):
    """Split a charge-homogeneous element into integer-scaled pieces by depth."""
    charges = x.charges()
    if len(charges) > 1:
        raise DomainError("the vertex operators need a charge-homogeneous input")
    by_depth = {}
    for mono, c in x.terms.items():
        by_depth.setdefault(mono.depth, {})[_intern(mono.parts)] = c
    pieces = []
    for depth, terms in sorted(by_depth.items()):
        scale = lcm(*(c.denominator for c in terms.values()))
        poly = {ident: int(c * scale) for ident, c in terms.items()}
        pieces.append(_Scaled(next(iter(charges)), depth, scale, poly))
    return pieces


def _to_element(pieces):
    return FockElement(
        {
            FockMonomial(s.charge, _PARTS[ident]): Fraction(c, s.scale)
            for s in pieces
            for ident, c in s.poly.items()
            if c
        }
    )


def vertex_component(p, i, x, cfg):
    """Apply ``U_p[i]`` to a charge-homogeneous element."""
    return _to_element([_apply_vertex(s, p, i, cfg.m) for s in _pieces(x)])


def vertex_component_series(p, i, x, cfg):
    """``U_p[i]`` built literally from Heisenberg operators; slow reference.

    Expands both exponentials term by term with ``heisenberg_apply``, the
    annihilation factor up to the depth of ``x`` and the creation factor up
    to the order forced by homogeneity.
    """
    if len(x.charges()) > 1:
        raise DomainError("vertex_component_series needs a charge-homogeneous input")
    if not x:
        return FockElement()
    charge = next(iter(x.charges()))
    k_index = i + cfg.pairing(charge, p)
    depth = max(mono.depth for mono in x.terms)
    new_charge = tuple(c + (1 if q == p else 0) for q, c in enumerate(charge, start=1))
    total = FockElement()
    for a in range(max(0, k_index), depth + 1):
        # z^{-a} part of exp(-sum f_p[l] z^{-l}/l)
        annihilated = FockElement()
        for lam in partitions(a):
            y = x
            for l in lam:
                y = heisenberg_apply((p, l), y, cfg)
            annihilated = annihilated + Fraction((-1) ** len(lam), _z(lam)) * y
        shifted = FockElement({FockMonomial(new_charge, mono.parts): c for mono, c in annihilated.terms.items()})
        c = a - k_index
        for lam in partitions(c):
            y = shifted
            for l in lam:
                y = heisenberg_apply((p, -l), y, cfg)
            total = total + Fraction(1, _z(lam)) * y
    return total


def evaluate_word(w, start, cfg):
    """``v_start . e_{p1}[i1] ... e_{ps}[is]``."""
    x = _Scaled(tuple(start), 0, 1, {_intern(()): 1})
    for p, i in w:
        if not 1 <= p <= cfg.k:
            raise DomainError(f"colour {p} outside 1..{cfg.k}")
        x = _apply_vertex(x, p, i, cfg.m)
        if not x.poly:
            return FockElement()
    return _to_element([x])


def evaluate(elem, start, cfg):
    """Evaluate a rational combination of words (``{word: coeff}`` or an element with ``.terms``)."""
    terms = getattr(elem, "terms", elem)
    total = FockElement()
    for w, c in terms.items():
        total = total + c * evaluate_word(w, start, cfg)
    return total


def relation_weights(cfg, p, q):
    """Coefficients of ``(1 - t)^(-N)`` with ``N = (f_p, f_q) = -m``: a polynomial."""
    m = -cfg.gram(p, q)
    return [(-1) ** l * comb(m, l) for l in range(m + 1)]


def _double_products(x, cfg):
    """Memoised ``(p, i, q, j) -> [U_q[j] U_p[i] piece for each depth piece of x]``."""
    pieces = _pieces(x)
    first = {}
    second = {}

    def get(p, i, q, j):
        key = (p, i, q, j)
        if key not in second:
            if (p, i) not in first:
                first[(p, i)] = [_apply_vertex(s, p, i, cfg.m) for s in pieces]
            second[key] = [_apply_vertex(s, q, j, cfg.m) for s in first[(p, i)]]
        return second[key]

    return get


def _relation_holds(get, p, q, i, j, weights, n_form):
    sides = []
    for l, nu in enumerate(weights):
        sides.append((nu, get(p, i + l, q, j - n_form - l)))
        sides.append((-nu, get(q, j + l, p, i - n_form - l)))
    common = lcm(*(s.scale for _, group in sides for s in group))
    diff = {}
    acc = diff.get
    for nu, group in sides:
        for s in group:
            factor = nu * (common // s.scale)
            for ident, c in s.poly.items():
                diff[ident] = acc(ident, 0) + factor * c
    return not any(diff.values())


def check_quadratic_relation(p, q, i, j, test, cfg):
    """Both sides of the exchange relation agree on ``test``.

    ``sum_l nu_l U_p[i+l] U_q[j-N-l] = sum_l nu_l U_q[j+l] U_p[i-N-l]``.
    """
    if not test:
        return True
    return _relation_holds(_double_products(test, cfg), p, q, i, j, relation_weights(cfg, p, q), cfg.gram(p, q))


def relation_failures(test, cfg, modes):
    """All ``(p, q, i, j)`` with ``|i|, |j| <= modes`` where the relation fails on ``test``.

    Products ``U_q[j] U_p[i] test`` are shared between the cases.
    """
    if not test:
        return []
    get = _double_products(test, cfg)
    fails = []
    seen = {}
    for p in range(1, cfg.k + 1):
        for q in range(1, cfg.k + 1):
            weights = relation_weights(cfg, p, q)
            n_form = cfg.gram(p, q)
            for i in range(-modes, modes + 1):
                for j in range(-modes, modes + 1):
                    # (q, p, j, i) is the same equation with its sides swapped
                    key = min((p, q, i, j), (q, p, j, i))
                    if key not in seen:
                        seen[key] = _relation_holds(get, p, q, i, j, weights, n_form)
                    if not seen[key]:
                        fails.append((p, q, i, j))
    return fails


def coloured_partitions(k, depth):
    """Multisets of ``(colour, mode)`` parts with mode sum ``depth``, sorted."""
    out = []

    def rec(rest, floor, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for j in range(floor[1] if floor else 1, rest + 1):
            for q in range(1, k + 1):
                if floor and (j, q) < (floor[1], floor[0]):
                    continue
                acc.append((q, j))
                rec(rest - j, (q, j), acc)
                acc.pop()

    rec(depth, None, [])
    return out


def fock_basis(cfg, charge, max_depth):
    """All Fock monomials of the given charge and depth at most ``max_depth``."""
    return [
        FockMonomial.make(charge, parts)
        for d in range(max_depth + 1)
        for parts in coloured_partitions(cfg.k, d)
    ]


def rank_of_span(xs):
    """Exact rank over the rationals, by fraction-free integer elimination.

    Columns are the sorted Fock monomials occurring in ``xs``; every row is
    scaled to a primitive integer vector before elimination.
    """
    columns = sorted({mono for x in xs for mono in x.terms})
    col_index = {mono: t for t, mono in enumerate(columns)}
    rows = []
    for x in xs:
        if not x:
            continue
        den = 1
        for c in x.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        row = [0] * len(columns)
        for mono, c in x.terms.items():
            row[col_index[mono]] = int(c * den)
        rows.append(row)
    rank = 0
    for col in range(len(columns)):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        a = prow[col]
        for r in range(rank + 1, len(rows)):
            b = rows[r][col]
            if b:
                new = [a * u - b * v for u, v in zip(rows[r], prow)]
                g = 0
                for u in new:
                    g = gcd(g, u)
                rows[r] = [u // g for u in new] if g > 1 else new
        rank += 1
    return rank


def charge_window(cfg, window):
    """Charges with every coordinate and the coordinate sum in ``[-window, window]``."""
    out = [()]
    for _ in range(cfg.k):
        out = [c + (x,) for c in out for x in range(-window, window + 1)]
    return [c for c in out if abs(sum(c)) <= window]


def vacuum_shift(cfg, charge):
    """``-(1/2) (h - f_1, h)`` for ``h = sum c_p f_p``; an integer."""
    s = sum(charge)
    q, r = divmod(cfg.m * (s * s - s), 2)
    assert r == 0
    return q


def fock_character(cfg, window, degree_cutoff, cap=DEFAULT_ITEM_CAP):
    """``{(d1, charge): dim}`` by counting Fock monomials.

    ``d1 = degree - (1/2)(h - f_1, h)`` with ``degree = -depth``; only depths up
    to ``degree_cutoff`` are included.
    """
    counts = [len(coloured_partitions(cfg.k, d)) for d in range(degree_cutoff + 1)]
    charges = charge_window(cfg, window)
    if sum(counts) * len(charges) > cap:
        raise ResourceLimitError("fock_character window exceeds the item cap")
    out = {}
    for h in charges:
        shift = vacuum_shift(cfg, h)
        for d, cnt in enumerate(counts):
            out[(-d + shift, h)] = cnt
    return out


def _inverse_euler_power(k, cutoff):
    """Coefficients ``a_N`` of ``prod_{l>=1} (1 - u^l)^(-k)`` up to ``u^cutoff``."""
    series = [1] + [0] * cutoff
    for l in range(1, cutoff + 1):
        for _ in range(k):
            # multiply by 1/(1 - u^l)
            for e in range(l, cutoff + 1):
                series[e] += series[e - l]
    return series


def fock_character_closed_form(cfg, window, degree_cutoff):
    """Coefficients of ``(q^{-1})_inf^{-k} sum_h q^{-(h-f_1,h)/2} z^h`` in the window."""
    series = _inverse_euler_power(cfg.k, degree_cutoff)
    out = {}
    for h in charge_window(cfg, window):
        shift = vacuum_shift(cfg, h)
        for depth, coeff in enumerate(series):
            out[(shift - depth, h)] = coeff
    return out


@dataclass
class CertificateReport:
    n: int
    k: int
    m: int
    basis_size: int
    rank: int
    elapsed_ms: float

    @property
    def status(self):
        return "pass" if self.rank == self.basis_size else "fail"

    def to_dict(self):
        return {
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "basis_size": self.basis_size,
            "rank": self.rank,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "status": self.status,
        }

    def to_json(self):
        return json.dumps(self.to_dict())


def independence_certificate(n, k, m=1, multilinear=False):
    """Rank of the admissible words evaluated on ``v_0`` against their number."""
    t0 = time.perf_counter()
    cfg = LatticeConfig(k, m)
    seqs = enumerate_admissible_sequences(n, k, m, multilinear=multilinear)
    vectors = [evaluate_word(seq.pairs, cfg.zero(), cfg) for seq in seqs]
    rank = rank_of_span(vectors)
    elapsed = (time.perf_counter() - t0) * 1000
    return CertificateReport(n, k, m, len(seqs), rank, elapsed)


def clear_caches():
    """Drop memoised vertex kernels and interned monomials."""
    _vertex_kernel.cache_clear()
    _times_creation.cache_clear()
    _PART_IDS.clear()
    _PARTS.clear()
