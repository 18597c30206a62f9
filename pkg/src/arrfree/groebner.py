"""Buchberger's algorithm under DegRevLex, normal forms and Hilbert functions.

Exact-mode reductions run fraction-free over the integers: divisors are kept
primitive (content 1, positive leading coefficient) and the working
polynomial is rescaled instead of introducing fractions, with the
accumulated multiplier divided out at the end.  Pairs are pruned with
Buchberger's coprimality and chain criteria (Gebauer-Moeller installation)
and selected by smallest lcm degree first.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .monomial import MonomialIdeal, count_standard_monomials
from .polyring import Polynomial

__all__ = [
    "DegreeCapExceeded", "GroebnerBasis",
    "normal_form", "s_polynomial", "buchberger",
    "leading_term_ideal", "hilbert_function",
]


class DegreeCapExceeded(RuntimeError):
    """The computation needed a total degree above the configured cap."""


# ---------------------------------------------------------------------------
# internal integer / modular reduction kernels
# ---------------------------------------------------------------------------

def _int_terms(f: Polynomial) -> Tuple[dict, int]:
    """Coefficients of f scaled to integers; returns (terms, multiplier)."""
    denom_lcm = 1
    for c in f._terms.values():
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    return {pp: int(c * denom_lcm) for pp, c in f._terms.items()}, denom_lcm


def _primitive(terms: dict) -> dict:
    """Divide by the integer content and normalize the leading sign."""
    if not terms:
        return terms
    content = 0
    for v in terms.values():
        content = math.gcd(content, v)
        if content == 1:
            break
    lead = max(terms)
    if terms[lead] < 0:
        content = -content
    if content != 1:
        terms = {pp: v // content for pp, v in terms.items()}
    return terms


def _shrink(work: dict, rem: dict, mult: int) -> int:
    """Remove the common integer content of work, rem and the multiplier."""
    g = mult
    for v in work.values():
        g = math.gcd(g, v)
        if g == 1:
            return mult
    for v in rem.values():
        g = math.gcd(g, v)
        if g == 1:
            return mult
    if g > 1:
        for k in work:
            work[k] //= g
        for k in rem:
            rem[k] //= g
        mult //= g
    return mult


def _reduce_int(work: dict, divisors: Sequence[tuple],
                degree_cap: Optional[int] = None) -> Tuple[dict, int]:
    """Fraction-free full reduction of an integer term dict.

    ``divisors`` holds (lt, lc, tail) triples with lc > 0 and tail the
    non-leading terms.  Returns (remainder, mult) with
    remainder = mult * NF(original work).
    """
    mult = 1
    rem: dict = {}
    while work:
        t = max(work)
        if degree_cap is not None and t.degree() > degree_cap:
            raise DegreeCapExceeded(
                f"reduction reached degree {t.degree()} > cap {degree_cap}")
        c = work.pop(t)
        for lt, lc, tail in divisors:
            if lt.divides(t):
                q = t / lt
                g = math.gcd(c, lc)
                a = lc // g
                b = c // g
                if a != 1:
                    mult *= a
                    for k in work:
                        work[k] *= a
                    for k in rem:
                        rem[k] *= a
                trivial_q = q.degree() == 0
                for gm, gc in tail:
                    k = gm if trivial_q else gm * q
                    v = work.get(k, 0) - b * gc
                    if v:
                        work[k] = v
                    else:
                        work.pop(k, None)
                if mult.bit_length() > 512:
                    mult = _shrink(work, rem, mult)
                break
        else:
            rem[t] = c
    return rem, mult


def _reduce_mod(work: dict, divisors: Sequence[tuple], p: int,
                degree_cap: Optional[int] = None) -> dict:
    """Full reduction mod p; divisors are monic (lt, tail) pairs."""
    rem: dict = {}
    while work:
        t = max(work)
        if degree_cap is not None and t.degree() > degree_cap:
            raise DegreeCapExceeded(
                f"reduction reached degree {t.degree()} > cap {degree_cap}")
        c = work.pop(t)
        for lt, tail in divisors:
            if lt.divides(t):
                q = t / lt
                trivial_q = q.degree() == 0
                for gm, gc in tail:
                    k = gm if trivial_q else gm * q
                    v = (work.get(k, 0) - c * gc) % p
                    if v:
                        work[k] = v
                    else:
                        work.pop(k, None)
                break
        else:
            rem[t] = c
    return rem


def _tail(terms: dict) -> list:
    lead = max(terms)
    return [(pp, c) for pp, c in terms.items() if pp != lead]


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def normal_form(f: Polynomial, G: Sequence[Polynomial],
                degree_cap: Optional[int] = None) -> Polynomial:
    """Remainder of f on division by the list G.

    No term of the result is divisible by any leading term of G, and the
    difference f - result lies in the ideal generated by G.  Reduction always
    uses the first divisor in list order, so the result is deterministic.
    """
    divisors = [g for g in G if not g.is_zero]
    for g in divisors:
        f._check_compatible(g)
    if f.is_zero or not divisors:
        return f
    field = f.field
    if field.p is None:
        work, m0 = _int_terms(f)
        packed = []
        for g in divisors:
            terms = _primitive(_int_terms(g)[0])
            packed.append((max(terms), terms[max(terms)], _tail(terms)))
        rem, mult = _reduce_int(work, packed, degree_cap)
        denom = m0 * mult
        return Polynomial({pp: Fraction(v, denom) for pp, v in rem.items()},
                          f.nvars, field)
    work = dict(f._terms)
    packed = [(g.leading_power_product(), _tail(g.monic()._terms))
              for g in divisors]
    rem = _reduce_mod(work, packed, field.p, degree_cap)
    return Polynomial(rem, f.nvars, field, _trusted=True)


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """The S-polynomial of two nonzero polynomials."""
    f._check_compatible(g)
    if f.is_zero or g.is_zero:
        raise ValueError("S-polynomial of the zero polynomial is undefined")
    lt_f, lt_g = f.leading_power_product(), g.leading_power_product()
    lcm = lt_f.lcm(lt_g)
    field = f.field
    mf = Polynomial.monomial(lcm / lt_f, f.nvars, field,
                             field.inv(f.leading_coefficient()))
    mg = Polynomial.monomial(lcm / lt_g, g.nvars, field,
                             field.inv(g.leading_coefficient()))
    return mf * f - mg * g


class GroebnerBasis:
    """Reduced Groebner basis under DegRevLex: monic, interreduced, sorted."""

    __slots__ = ("elements", "nvars", "field")

    order = "degrevlex"

    def __init__(self, elements: Sequence[Polynomial], nvars: int, field):
        self.elements = tuple(elements)
        self.nvars = nvars
        self.field = field

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    @property
    def is_zero_ideal(self) -> bool:
        return not self.elements

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.elements)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self.elements).is_zero

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.nvars == other.nvars
                and self.field == other.field and self.elements == other.elements)

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(str(g) for g in self.elements)}])"


class _Engine:
    """State of one Buchberger run (one coefficient field, one ambient)."""

    def __init__(self, nvars: int, field, degree_cap: Optional[int]):
        self.nvars = nvars
        self.field = field
        self.p = field.p
        self.degree_cap = degree_cap
        self.store: dict = {}      # id -> term dict (never mutated)
        self.lts: dict = {}        # id -> leading power product
        self.active: list = []     # ids sorted by (lt degree, lt, id)
        self.pairs: dict = {}      # (i, j) i<j -> lcm power product
        self.next_id = 0

    # -- plumbing ----------------------------------------------------------

    def _normalize(self, terms: dict) -> dict:
        if self.p is None:
            return _primitive(terms)
        lead = max(terms)
        inv = pow(terms[lead], -1, self.p)
        if inv == 1:
            return terms
        return {pp: c * inv % self.p for pp, c in terms.items()}

    def _divisor_list(self) -> list:
        if self.p is None:
            return [(self.lts[i], self.store[i][self.lts[i]], _tail(self.store[i]))
                    for i in self.active]
        return [(self.lts[i], _tail(self.store[i])) for i in self.active]

    def _nf(self, work: dict) -> dict:
        if self.p is None:
            rem, _ = _reduce_int(work, self._divisor_list(), self.degree_cap)
            return _primitive(rem)
        rem = _reduce_mod(work, self._divisor_list(), self.p, self.degree_cap)
        return self._normalize(rem) if rem else rem

    def _spair_terms(self, i: int, j: int) -> dict:
        fi, fj = self.store[i], self.store[j]
        lt_i, lt_j = self.lts[i], self.lts[j]
        lcm = lt_i.lcm(lt_j)
        qi, qj = lcm / lt_i, lcm / lt_j
        if self.p is None:
            lc_i, lc_j = fi[lt_i], fj[lt_j]
            g = math.gcd(lc_i, lc_j)
            a, b = lc_j // g, lc_i // g
        else:
            a = b = 1
        out: dict = {}
        for pp, c in fi.items():
            out[pp * qi] = a * c
        for pp, c in fj.items():
            k = pp * qj
            v = out.get(k, 0) - b * c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        if self.p is not None:
            out = {pp: v % self.p for pp, v in out.items() if v % self.p}
        return out

    # -- Gebauer-Moeller update ---------------------------------------------

    def add(self, terms: dict) -> None:
        h = self.next_id
        self.next_id += 1
        self.store[h] = terms
        lt_h = max(terms)
        self.lts[h] = lt_h

        # candidate pairs of h with the current basis, pruned by the chain
        # criterion: drop a pair whose lcm is covered by a kept pair, by a
        # strictly smaller pending lcm, or by an equal lcm still pending
        kept: list = []
        pending = [(g, lt_h.lcm(self.lts[g])) for g in self.active]
        while pending:
            g, lcm_hg = pending.pop(0)
            covered = (
                any(o.divides(lcm_hg) for _, o in kept)
                or any(o.divides(lcm_hg) and o != lcm_hg for _, o in pending)
                or any(o == lcm_hg for _, o in pending))
            if lt_h.coprime(self.lts[g]) or not covered:
                kept.append((g, lcm_hg))
        new_pairs = [(g, lcm_hg) for g, lcm_hg in kept
                     if not lt_h.coprime(self.lts[g])]

        # drop old pairs whose lcm is strictly covered by h
        for (i, j), lcm_ij in list(self.pairs.items()):
            if lt_h.divides(lcm_ij) \
                    and self.lts[i].lcm(lt_h) != lcm_ij \
                    and lt_h.lcm(self.lts[j]) != lcm_ij:
                del self.pairs[(i, j)]
        for g, lcm_hg in new_pairs:
            self.pairs[(min(g, h), max(g, h))] = lcm_hg

        # retire basis elements whose leading term h covers
        self.active = [g for g in self.active if not lt_h.divides(self.lts[g])]
        self.active.append(h)
        self.active.sort(key=lambda g: (self.lts[g].degree(), self.lts[g], g))

    def select_pair(self):
        """Normal strategy: smallest lcm degree first, then lcm, then ids."""
        return min(self.pairs.items(),
                   key=lambda kv: (kv[1].degree(), kv[1], kv[0]))

    def run(self) -> None:
        while self.pairs:
            (i, j), lcm = self.select_pair()
            del self.pairs[(i, j)]
            if self.degree_cap is not None and lcm.degree() > self.degree_cap:
                raise DegreeCapExceeded(
                    f"S-pair lcm degree {lcm.degree()} > cap {self.degree_cap}")
            h = self._nf(self._spair_terms(i, j))
            if h:
                self.add(h)

    def reduced_basis(self) -> list:
        """Tail-reduce the surviving elements against each other."""
        final = []
        ids = sorted(self.active, key=lambda g: (self.lts[g].degree(), self.lts[g], g))
        for g in ids:
            others = [i for i in ids if i != g]
            if self.p is None:
                packed = [(self.lts[i], self.store[i][self.lts[i]],
                           _tail(self.store[i])) for i in others]
                rem, _ = _reduce_int(dict(self.store[g]), packed, self.degree_cap)
                final.append(_primitive(rem))
            else:
                packed = [(self.lts[i], _tail(self.store[i])) for i in others]
                rem = _reduce_mod(dict(self.store[g]), packed, self.p,
                                  self.degree_cap)
                final.append(self._normalize(rem))
        return final


def buchberger(gens: Sequence[Polynomial],
               degree_cap: Optional[int] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Zero generators are discarded; an all-zero input yields the zero ideal,
    represented by an empty basis.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("buchberger requires at least one generator")
    nvars = gens[0].nvars
    field = gens[0].field
    for g in gens[1:]:
        gens[0]._check_compatible(g)
    nonzero = [g for g in gens if not g.is_zero]
    if not nonzero:
        return GroebnerBasis((), nvars, field)
    if degree_cap is not None:
        top = max(g.total_degree() for g in nonzero)
        if top > degree_cap:
            raise DegreeCapExceeded(f"generator degree {top} > cap {degree_cap}")

    engine = _Engine(nvars, field, degree_cap)
    if field.p is None:
        items = [_primitive(_int_terms(g)[0]) for g in nonzero]
    else:
        items = [engine._normalize(dict(g._terms)) for g in nonzero]
    # feed generators smallest leading term first, reducing each against the
    # basis built so far
    items.sort(key=lambda t: (max(t).degree(), max(t)))
    for terms in items:
        reduced = engine._nf(dict(terms)) if engine.active else terms
        if reduced:
            engine.add(reduced)
    engine.run()

    elements = []
    for terms in engine.reduced_basis():
        if field.p is None:
            lead = max(terms)
            lc = terms[lead]
            poly = Polynomial({pp: Fraction(v, lc) for pp, v in terms.items()},
                              nvars, field)
        else:
            poly = Polynomial(terms, nvars, field, _trusted=True)
        elements.append(poly)
    elements.sort(key=lambda g: g.leading_power_product())
    return GroebnerBasis(elements, nvars, field)


def leading_term_ideal(G: GroebnerBasis) -> MonomialIdeal:
    """Monomial ideal of the leading terms of a reduced basis."""
    return MonomialIdeal((g.leading_power_product() for g in G.elements), G.nvars)


def hilbert_function(B: MonomialIdeal, d: int) -> int:
    """Dimension of degree-d part of the monomial quotient S/B."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    return count_standard_monomials(B, B.nvars, d)
