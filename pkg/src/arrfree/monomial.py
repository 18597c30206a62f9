"""Combinatorics of monomial ideals.

Minimal generators, membership, sectional matrices, reduction numbers,
regularity and graded Betti numbers of strongly stable ideals, and the
two-variable lex-segment shape test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .polyring import DimensionError, PowerProduct, format_power_product

__all__ = [
    "INFINITE", "MonomialIdeal", "StronglyStableIdeal", "NotStronglyStableError",
    "minimalize", "contains", "is_strongly_stable", "borel_moves", "borel_closure",
    "SectionalMatrix", "sectional_matrix", "triangle_equality",
    "reduction_number", "regularity_stable",
    "BettiTable", "betti_eliahou_kervaire",
    "LexSegmentShape", "is_cm_codim2_stable", "codimension", "is_cohen_macaulay",
    "count_standard_monomials", "degree_monomials",
]


class _Infinite:
    """Sentinel for an infinite reduction number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"


INFINITE = _Infinite()


class NotStronglyStableError(ValueError):
    """A Borel-fixed ideal was required but the input is not one."""


def _canonical_order(gens: Iterable[PowerProduct]) -> tuple:
    # Display order: by degree, then DegRevLex descending within a degree.
    return tuple(sorted(gens, key=_gen_sort_key))


def _gen_sort_key(pp: PowerProduct):
    return (pp.degree(), _DescendingPP(pp))


class _DescendingPP:
    __slots__ = ("pp",)

    def __init__(self, pp):
        self.pp = pp

    def __lt__(self, other):
        return self.pp > other.pp

    def __eq__(self, other):
        return self.pp == other.pp


class MonomialIdeal:
    """Monomial ideal given by its (automatically minimalized) generators."""

    __slots__ = ("generators", "nvars")

    def __init__(self, gens: Iterable[PowerProduct], nvars: int):
        gens = [g if isinstance(g, PowerProduct) else PowerProduct(g) for g in gens]
        for g in gens:
            if len(g) != nvars:
                raise DimensionError(f"{g!r} has {len(g)} exponents, expected {nvars}")
        minimal = []
        for g in sorted(set(gens), key=lambda p: p.degree()):
            if not any(h.divides(g) for h in minimal):
                minimal.append(g)
        self.generators = _canonical_order(minimal)
        self.nvars = nvars

    @classmethod
    def zero(cls, nvars: int) -> "MonomialIdeal":
        return cls((), nvars)

    @classmethod
    def unit(cls, nvars: int) -> "MonomialIdeal":
        return cls((PowerProduct.unit(nvars),), nvars)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        return bool(self.generators) and self.generators[0].degree() == 0

    @property
    def is_proper(self) -> bool:
        return not self.is_unit

    def contains(self, t: PowerProduct) -> bool:
        if len(t) != self.nvars:
            raise DimensionError(f"{t!r} has {len(t)} exponents, expected {self.nvars}")
        return any(g.divides(t) for g in self.generators)

    def __contains__(self, t: PowerProduct) -> bool:
        return self.contains(t)

    def generator_degrees(self) -> dict:
        """Map degree -> number of minimal generators of that degree."""
        out: dict = {}
        for g in self.generators:
            out[g.degree()] = out.get(g.degree(), 0) + 1
        return out

    def max_generator_degree(self) -> Optional[int]:
        if not self.generators:
            return None
        return max(g.degree() for g in self.generators)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MonomialIdeal)
                and self.nvars == other.nvars
                and self.generators == other.generators)

    def __hash__(self) -> int:
        return hash((self.nvars, self.generators))

    def __repr__(self) -> str:
        return f"<{', '.join(format_power_product(g) for g in self.generators) or '0'}>"


def minimalize(gens: Iterable[PowerProduct], nvars: int) -> MonomialIdeal:
    """Drop every generator divisible by another one."""
    return MonomialIdeal(gens, nvars)


def contains(B: MonomialIdeal, t: PowerProduct) -> bool:
    """Monomial membership: some minimal generator divides t."""
    return B.contains(t)


# ---------------------------------------------------------------------------
# strong stability (Borel-fixedness)
# ---------------------------------------------------------------------------

def borel_moves(t: PowerProduct) -> Iterator[PowerProduct]:
    """All x_i * t / x_j for i < j with x_j dividing t."""
    for j in range(len(t)):
        if t[j] == 0:
            continue
        for i in range(j):
            moved = list(t)
            moved[j] -= 1
            moved[i] += 1
            yield PowerProduct(moved)


def is_strongly_stable(B: MonomialIdeal) -> bool:
    """True iff every Borel move on every minimal generator stays in B."""
    return all(B.contains(m) for g in B.generators for m in borel_moves(g))


def borel_closure(gens: Iterable[PowerProduct], nvars: int) -> MonomialIdeal:
    """Smallest strongly stable ideal containing the given monomials."""
    seen = set()
    queue = [g if isinstance(g, PowerProduct) else PowerProduct(g) for g in gens]
    while queue:
        t = queue.pop()
        if t in seen:
            continue
        seen.add(t)
        queue.extend(borel_moves(t))
    return MonomialIdeal(seen, nvars)


class StronglyStableIdeal(MonomialIdeal):
    """A monomial ideal verified to be strongly stable.

    ``certificate`` carries randomized-computation metadata when the ideal
    was produced as a generic initial ideal; it does not take part in
    equality or hashing.
    """

    __slots__ = ("certificate",)

    def __init__(self, gens: Iterable[PowerProduct], nvars: int, certificate=None):
        super().__init__(gens, nvars)
        if not is_strongly_stable(MonomialIdeal(self.generators, nvars)):
            raise NotStronglyStableError(f"{self!r} is not strongly stable")
        self.certificate = certificate

    @classmethod
    def from_ideal(cls, B: MonomialIdeal, certificate=None) -> "StronglyStableIdeal":
        return cls(B.generators, B.nvars, certificate)


def _as_stable(B: MonomialIdeal) -> MonomialIdeal:
    if isinstance(B, StronglyStableIdeal):
        return B
    if not is_strongly_stable(B):
        raise NotStronglyStableError(
            f"{B!r} is not strongly stable; pass raw=True for plain counting")
    return B


# ---------------------------------------------------------------------------
# counting standard monomials
# ---------------------------------------------------------------------------

def degree_monomials(degree: int, nvars: int) -> Iterator[tuple]:
    """All exponent tuples of the given total degree (plain tuples)."""
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in degree_monomials(degree - first, nvars - 1):
            yield (first,) + rest


def count_standard_monomials(B: MonomialIdeal, i: int, d: int) -> int:
    """Number of degree-d monomials in x_1..x_i lying outside B."""
    if not 1 <= i <= B.nvars:
        raise IndexError(f"row index {i} out of range 1..{B.nvars}")
    if d < 0:
        return 0
    # Generators involving variables beyond x_i never divide such monomials.
    gens = [g[:i] for g in B.generators if all(e == 0 for e in g[i:])]
    if any(not any(g) for g in gens):
        return 0  # unit ideal
    count = 0
    for mono in degree_monomials(d, i):
        if not any(all(a <= b for a, b in zip(g, mono)) for g in gens):
            count += 1
    return count


# ---------------------------------------------------------------------------
# sectional matrices
# ---------------------------------------------------------------------------

class SectionalMatrix:
    """Table M(i, d) of generic-section Hilbert values, i = 1..l, d = 0..dmax."""

    __slots__ = ("values", "dmax", "source")

    def __init__(self, values: Sequence[Sequence[int]], source: MonomialIdeal):
        self.values = tuple(tuple(row) for row in values)
        self.dmax = len(self.values[0]) - 1
        self.source = source

    @property
    def nrows(self) -> int:
        return len(self.values)

    def m(self, i: int, d: int) -> int:
        """Entry M(i, d) with 1-based row index."""
        if not 1 <= i <= self.nrows:
            raise IndexError(f"row index {i} out of range 1..{self.nrows}")
        if not 0 <= d <= self.dmax:
            raise IndexError(f"degree {d} out of range 0..{self.dmax}")
        return self.values[i - 1][d]

    def row(self, i: int) -> tuple:
        if not 1 <= i <= self.nrows:
            raise IndexError(f"row index {i} out of range 1..{self.nrows}")
        return self.values[i - 1]

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for row in self.values for v in row)

    def __eq__(self, other):
        return (isinstance(other, SectionalMatrix) and self.values == other.values
                and self.source == other.source)

    def __repr__(self):
        return f"SectionalMatrix(dmax={self.dmax}, rows={self.values})"


def sectional_matrix(B: MonomialIdeal, dmax: Optional[int] = None, *,
                     raw: bool = False) -> SectionalMatrix:
    """Sectional matrix of S/B for a strongly stable ideal B.

    Sectioning by generic linear forms agrees with sectioning by the smallest
    variables only for Borel-fixed ideals, so non-Borel input is rejected
    unless ``raw=True`` asks for the plain counts.
    """
    if not raw:
        B = _as_stable(B)
    if dmax is None:
        top = B.max_generator_degree()
        dmax = (top if top is not None else 0) + 2
    values = [[count_standard_monomials(B, i, d) for d in range(dmax + 1)]
              for i in range(1, B.nvars + 1)]
    return SectionalMatrix(values, B)


def triangle_equality(M: SectionalMatrix, i: int, d: int) -> bool:
    """Whether M(i,d) = M(i-1,d) + M(i,d-1).

    For a strongly stable source this is equivalent to the absence of a
    degree-d minimal generator divisible by x_i; both readings are computed
    and must agree.
    """
    if i < 2 or d < 1:
        raise IndexError(f"triangle equality needs i >= 2 and d >= 1, got ({i}, {d})")
    numeric = M.m(i, d) == M.m(i - 1, d) + M.m(i, d - 1)
    B = M.source
    if isinstance(B, MonomialIdeal) and is_strongly_stable(B):
        combinatorial = not any(
            g.degree() == d and g[i - 1] > 0 for g in B.generators)
        if combinatorial != numeric:
            raise AssertionError(
                f"triangle equality mismatch at ({i}, {d}): "
                f"matrix says {numeric}, generators say {combinatorial}")
    return numeric


def reduction_number(B: MonomialIdeal, i: int):
    """The i-th reduction number: min d with x_(l-i)^(d+1) in B, else INFINITE.

    Membership of a pure power is decided by the pure-power generators of the
    same variable.  For the unit ideal the result is -1.
    """
    if not 0 <= i <= B.nvars - 1:
        raise IndexError(f"reduction index {i} out of range 0..{B.nvars - 1}")
    var = B.nvars - i  # 1-based variable index l - i
    pure = [g.degree() for g in B.generators if g.degree() == g[var - 1]]
    if not pure:
        return INFINITE
    return min(pure) - 1


def regularity_stable(B: MonomialIdeal) -> int:
    """Regularity of a strongly stable ideal: its top generator degree."""
    B = _as_stable(B)
    if B.is_zero:
        raise ValueError("regularity undefined for the zero ideal")
    return B.max_generator_degree()


# ---------------------------------------------------------------------------
# graded Betti numbers of strongly stable ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BettiTable:
    """Graded Betti data of a strongly stable ideal.

    ``beta0[j]`` counts minimal generators of degree j, ``beta1[j]`` the first
    syzygies in degree j, and ``m_table[(k, j)]`` the degree-j generators whose
    biggest dividing variable is x_k.
    """

    beta0: dict
    beta1: dict
    m_table: dict

    def beta(self, i: int, j: int) -> int:
        """General entry beta_{i,j} via the biggest-variable counts."""
        return sum(math.comb(k - 1, i) * m
                   for (k, deg), m in self.m_table.items() if deg == j - i)


def betti_eliahou_kervaire(B: MonomialIdeal) -> BettiTable:
    """Betti numbers of a strongly stable ideal from its generators."""
    B = _as_stable(B)
    m_table: dict = {}
    for g in B.generators:
        k = g.max_variable()
        if k == 0:
            raise ValueError("Betti table undefined for the unit ideal")
        key = (k, g.degree())
        m_table[key] = m_table.get(key, 0) + 1
    beta0: dict = {}
    beta1: dict = {}
    for (k, j), m in m_table.items():
        beta0[j] = beta0.get(j, 0) + m
        if k >= 2:
            beta1[j + 1] = beta1.get(j + 1, 0) + (k - 1) * m
    return BettiTable(beta0=dict(sorted(beta0.items())),
                      beta1=dict(sorted(beta1.items())),
                      m_table=dict(sorted(m_table.items())))


# ---------------------------------------------------------------------------
# Cohen-Macaulay tests
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LexSegmentShape:
    """Witness of the two-variable lex-segment shape of a stable ideal.

    Generators are x_1^(n-1), x_1^(n-2) x_2^(lambda_1), ..., x_2^(lambda_(n-1))
    with a strictly increasing lambda sequence.
    """

    n: int
    lambdas: tuple

    def __bool__(self) -> bool:
        return True


def is_cm_codim2_stable(B: MonomialIdeal) -> Optional[LexSegmentShape]:
    """Lex-segment shape of a strongly stable ideal, or None.

    A proper nonzero strongly stable ideal is Cohen-Macaulay of codimension 2
    exactly when its generators involve only the first two variables, pure
    powers of both occur, and there is exactly one generator for each x_1
    power from n-1 down to 0.
    """
    B = _as_stable(B)
    if B.is_zero or B.is_unit:
        return None
    if any(g.max_variable() > 2 for g in B.generators):
        return None
    if B.nvars < 2:
        return None
    by_x1 = {}
    for g in B.generators:
        e1 = g[0]
        e2 = g[1]
        if e1 in by_x1:
            return None
        by_x1[e1] = e2
    n = max(by_x1) + 1
    if sorted(by_x1) != list(range(n)):
        return None
    if by_x1[n - 1] != 0:
        return None
    lambdas = tuple(by_x1[n - 1 - i] for i in range(1, n))
    if any(a >= b for a, b in zip(lambdas, lambdas[1:])) or (lambdas and lambdas[0] < 1):
        return None
    return LexSegmentShape(n=n, lambdas=lambdas)


def codimension(B: MonomialIdeal) -> int:
    """Codimension of a strongly stable ideal: variables with pure powers."""
    B = _as_stable(B)
    if B.is_zero:
        return 0
    if B.is_unit:
        return B.nvars
    codim = 0
    for var in range(1, B.nvars + 1):
        if any(g.degree() == g[var - 1] and g.degree() > 0 for g in B.generators):
            codim = var
    return codim


def is_cohen_macaulay(B: MonomialIdeal) -> bool:
    """Cohen-Macaulayness of S/B for strongly stable B via the sectional matrix.

    S/B is Cohen-Macaulay of codimension c iff the reduction number
    r_(l-c) is finite and the triangle equality holds at (c+1, d) for every
    d up to the regularity.
    """
    B = _as_stable(B)
    if B.is_zero or B.is_unit:
        return True
    c = codimension(B)
    if c == B.nvars:
        return True  # zero-dimensional quotients are Cohen-Macaulay
    reg = regularity_stable(B)
    if reduction_number(B, B.nvars - c) is INFINITE:
        return False
    M = sectional_matrix(B, max(reg, 1))
    return all(triangle_equality(M, c + 1, d) for d in range(1, reg + 1))
