"""Central hyperplane arrangements and their freeness.

Freeness is decided through the generic initial ideal of the Jacobian ideal:
either by the shape of its minimal generators, or by three entries of the
sectional matrix together with one partial row sum.  Both tests reduce to
Cohen-Macaulayness of the Jacobian ring, so they must always agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .gin import GinCertificate, GinConfig, rgin
from .monomial import (INFINITE, BettiTable, MonomialIdeal, SectionalMatrix,
                       StronglyStableIdeal, betti_eliahou_kervaire,
                       is_cm_codim2_stable, reduction_number,
                       regularity_stable, sectional_matrix)
from .polyring import QQ, DimensionError, Polynomial, PowerProduct, variables

__all__ = [
    "ArrangementError", "NotFreeRginError", "InternalConsistencyError",
    "ValidationInfo", "Arrangement", "ExponentVector", "FreenessReport",
    "RealizabilityVerdict", "ConjectureReport",
    "validate", "defining_polynomial", "jacobian_ideal",
    "analyze", "is_free_via_rgin", "is_free_via_sectional",
    "exponents_from_rgin", "rgin_from_exponents",
    "supersolvable_from_exponents", "realizable_as_free", "check_conjecture_Z",
]


class ArrangementError(ValueError):
    """The given forms do not define a valid central arrangement."""


class NotFreeRginError(ValueError):
    """The ideal does not have the generator shape of a free arrangement."""


class InternalConsistencyError(RuntimeError):
    """Two routes that must agree did not; indicates a failed genericity
    certificate or a bug."""


class ExponentVector(tuple):
    """Non-decreasing positive integer exponents."""

    __slots__ = ()

    def __new__(cls, entries) -> "ExponentVector":
        t = tuple(int(v) for v in entries)
        if not t:
            raise ValueError("exponent vector must be non-empty")
        if any(v < 1 for v in t):
            raise ValueError(f"exponents must be positive: {t}")
        if any(a > b for a, b in zip(t, t[1:])):
            raise ValueError(f"exponents must be non-decreasing: {t}")
        return tuple.__new__(cls, t)


# ---------------------------------------------------------------------------
# validation and basic data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationInfo:
    central: bool
    distinct: bool
    essential: bool
    n: int
    l: int
    problems: Tuple[str, ...] = ()


def _is_linear_form(f: Polynomial) -> bool:
    return (not f.is_zero and f.is_homogeneous() and f.total_degree() == 1)


def _rank(rows: List[List[Fraction]], ncols: int) -> int:
    m = [row[:] for row in rows]
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = Fraction(1) / m[rank][col]
        for r in range(rank + 1, len(m)):
            if m[r][col]:
                factor = m[r][col] * inv
                m[r] = [v - factor * p for v, p in zip(m[r], m[rank])]
        rank += 1
        if rank == ncols:
            break
    return rank


def _coefficient_vector(f: Polynomial) -> List[Fraction]:
    out = [Fraction(0)] * f.nvars
    for pp, c in f._terms.items():
        for j, e in enumerate(pp):
            if e:
                out[j] = c
    return out


def validate(forms: Sequence[Polynomial]) -> ValidationInfo:
    """Check centrality, distinctness and essentiality of a list of forms."""
    forms = list(forms)
    if not forms:
        raise ArrangementError("an arrangement needs at least one hyperplane")
    l = forms[0].nvars
    problems = []
    central = True
    for idx, f in enumerate(forms):
        if f.nvars != l:
            raise DimensionError(f"form #{idx + 1} lives in {f.nvars} variables, "
                                 f"expected {l}")
        if f.field != QQ:
            raise ArrangementError(f"form #{idx + 1} must have rational coefficients")
        if not _is_linear_form(f):
            central = False
            problems.append(f"form #{idx + 1} ({f}) is not linear homogeneous")
    distinct = True
    if central:
        normalized = []
        for idx, f in enumerate(forms):
            vec = _coefficient_vector(f)
            first = next(c for c in vec if c != 0)
            normalized.append(tuple(c / first for c in vec))
        seen: dict = {}
        for idx, key in enumerate(normalized):
            if key in seen:
                distinct = False
                problems.append(
                    f"forms #{seen[key] + 1} and #{idx + 1} define the same hyperplane")
            else:
                seen[key] = idx
    essential = False
    if central:
        essential = _rank([_coefficient_vector(f) for f in forms], l) == l
    return ValidationInfo(central=central, distinct=distinct, essential=essential,
                          n=len(forms), l=l, problems=tuple(problems))


class Arrangement:
    """A central arrangement of pairwise distinct hyperplanes."""

    __slots__ = ("forms", "nvars", "labels", "essential")

    def __init__(self, forms: Sequence[Polynomial], labels: Optional[Sequence[str]] = None):
        info = validate(forms)
        if not info.central or not info.distinct:
            raise ArrangementError("; ".join(info.problems))
        self.forms = tuple(forms)
        self.nvars = info.l
        self.essential = info.essential
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != len(self.forms):
            raise ArrangementError("one label per hyperplane required")

    @property
    def n(self) -> int:
        return len(self.forms)

    @property
    def l(self) -> int:
        return self.nvars

    def __repr__(self):
        return f"Arrangement([{', '.join(str(f) for f in self.forms)}])"


def defining_polynomial(A: Arrangement) -> Polynomial:
    """Product of the defining linear forms; homogeneous of degree n."""
    Q = A.forms[0]
    for f in A.forms[1:]:
        Q = Q * f
    return Q


def jacobian_ideal(A: Arrangement) -> List[Polynomial]:
    """Generators of the Jacobian ideal: the l partial derivatives.

    For a product of n linear forms over the rationals the polynomial itself
    is a combination of its partials (checked here), so it is omitted from
    the generator list.
    """
    Q = defining_polynomial(A)
    partials = [Q.partial_derivative(i) for i in range(1, A.nvars + 1)]
    euler = Polynomial.zero(A.nvars, QQ)
    xs = variables(A.nvars, QQ)
    for xi, dQ in zip(xs, partials):
        euler = euler + xi * dQ
    if euler != Q.scale(A.n):
        raise InternalConsistencyError("Euler relation failed for the Jacobian ideal")
    return partials


# ---------------------------------------------------------------------------
# freeness reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FreenessReport:
    free: bool
    method: str
    n: int
    l: int
    essential: bool
    rgin: StronglyStableIdeal
    sectional: SectionalMatrix
    d0: Optional[int]
    regularity: Optional[int]
    exponents: Optional[ExponentVector]
    betti: Optional[BettiTable]
    provenance: GinCertificate

    @property
    def trivially_free(self) -> bool:
        return self.rgin.is_unit


def _free_by_generator_shape(B: StronglyStableIdeal, n: int) -> bool:
    """Generator-shape freeness test for B = rgin of a Jacobian ideal."""
    if B.is_unit:
        return True
    l = B.nvars
    x1_power = PowerProduct(tuple(n - 1 if j == 0 else 0 for j in range(l)))
    has_x1 = x1_power in B.generators
    has_x2_power = l >= 2 and any(
        g.degree() >= 1 and g.degree() == g[1] for g in B.generators)
    no_higher = all(g.max_variable() <= 2 for g in B.generators)
    return has_x1 and has_x2_power and no_higher


def _assert_free_shape(B: StronglyStableIdeal, n: int) -> None:
    """Consistency checks that hold whenever the shape test says free."""
    if B.is_unit:
        return
    shape = is_cm_codim2_stable(B)
    if shape is None or shape.n != n:
        raise InternalConsistencyError(
            f"free verdict but rgin lacks the expected {n}-generator shape: {B!r}")
    lam = shape.lambdas
    if any(b - a not in (1, 2) for a, b in zip(lam, lam[1:])):
        raise InternalConsistencyError(
            f"free verdict but lambda increments leave {{1,2}}: {lam}")
    reg = regularity_stable(B)
    degrees = {g.degree() for g in B.generators}
    missing = [d for d in range(n - 1, reg + 1) if d not in degrees]
    if missing:
        raise InternalConsistencyError(
            f"free verdict but generator degrees miss {missing}")


def _free_by_sectional(B: StronglyStableIdeal, M: SectionalMatrix,
                       d0: Optional[int]) -> bool:
    """Sectional-matrix freeness test (three entries plus one row sum)."""
    if M.is_zero:
        return True
    l = B.nvars
    if l < 3:
        # every central arrangement in the plane (or the line) is free
        return True
    if d0 is None or d0 is INFINITE:
        raise InternalConsistencyError(
            "the second-variable reduction number must be finite for a Jacobian ideal")
    flat = M.m(3, d0) == M.m(3, d0 + 1) == M.m(3, d0 + 2)
    row_sum = sum(M.m(2, d) for d in range(0, d0 + 1))
    return flat and M.m(3, d0) == row_sum


def analyze(A: Arrangement, cfg: GinConfig = GinConfig(),
            method: str = "both", dmax: Optional[int] = None) -> FreenessReport:
    """Full freeness report for one arrangement.

    ``method`` selects which characterization decides the verdict; with
    "both" the two are compared and must agree.  ``dmax`` widens the
    sectional matrix beyond the default regularity + 2 bound.
    """
    if method not in ("rgin", "sectional", "both"):
        raise ValueError(f"unknown method {method!r}")
    n, l = A.n, A.l
    B = rgin(jacobian_ideal(A), cfg)
    reg = regularity_stable(B) if not B.is_zero else None
    if B.is_unit or l < 2:
        d0 = None
    else:
        r = reduction_number(B, l - 2)
        d0 = None if r is INFINITE else r
    floor = (reg if reg is not None else 0) + 2
    if d0 is not None:
        floor = max(floor, d0 + 2)
    dmax = floor if dmax is None else max(dmax, floor)
    M = sectional_matrix(B, dmax)

    verdicts = {}
    if method in ("rgin", "both"):
        verdicts["rgin"] = _free_by_generator_shape(B, n)
        if verdicts["rgin"]:
            _assert_free_shape(B, n)
    if method in ("sectional", "both"):
        verdicts["sectional"] = _free_by_sectional(B, M, d0)
    if len(verdicts) == 2 and verdicts["rgin"] != verdicts["sectional"]:
        raise InternalConsistencyError(
            f"freeness verdicts disagree: generator shape says "
            f"{verdicts['rgin']}, sectional matrix says {verdicts['sectional']}")
    free = next(iter(verdicts.values()))

    betti = None
    if not B.is_zero and not B.is_unit:
        betti = betti_eliahou_kervaire(B)
    exponents = None
    if free and A.essential:
        if B.is_unit:
            exponents = ExponentVector((1,) * l)
        else:
            exponents = exponents_from_rgin(B)
            if sum(exponents) != n or len(exponents) != l or exponents[0] != 1:
                raise InternalConsistencyError(
                    f"exponents {exponents} inconsistent with n={n}, l={l}")
    return FreenessReport(free=free, method=method, n=n, l=l,
                          essential=A.essential, rgin=B, sectional=M,
                          d0=d0, regularity=reg, exponents=exponents,
                          betti=betti, provenance=B.certificate)


def is_free_via_rgin(A: Arrangement, cfg: GinConfig = GinConfig()) -> FreenessReport:
    """Freeness via the minimal generators of rgin of the Jacobian ideal."""
    return analyze(A, cfg, method="rgin")


def is_free_via_sectional(A: Arrangement, cfg: GinConfig = GinConfig()) -> FreenessReport:
    """Freeness via three sectional-matrix entries and one row sum."""
    return analyze(A, cfg, method="sectional")


# ---------------------------------------------------------------------------
# exponents <-> rgin
# ---------------------------------------------------------------------------

def exponents_from_rgin(B: StronglyStableIdeal) -> ExponentVector:
    """Recover the exponents of a free essential arrangement from its rgin.

    The multiplicity of the exponent value a is the drop of the generator
    count between degrees a+n-2 and a+n-1; the remaining entries equal the
    top value lambda_(n-1) - n + 2.
    """
    shape = is_cm_codim2_stable(B)
    if shape is None:
        raise NotFreeRginError(
            f"{B!r} is not a two-variable lex-segment ideal")
    l = B.nvars
    n = shape.n
    beta0 = B.generator_degrees()
    e_top = shape.lambdas[-1] - n + 2
    exps: List[int] = []
    for alpha in range(1, e_top + 1):
        c = beta0.get(alpha + n - 2, 0) - beta0.get(alpha + n - 1, 0)
        if c < 0:
            raise NotFreeRginError(
                f"generator counts increase between degrees {alpha + n - 2} "
                f"and {alpha + n - 1}")
        exps.extend([alpha] * c)
    if len(exps) != l:
        raise NotFreeRginError(
            f"the counting procedure yields {len(exps)} exponents, "
            f"but the ambient dimension is {l}")
    result = ExponentVector(exps)
    if sum(result) != n:
        raise NotFreeRginError(
            f"exponents {result} do not sum to the hyperplane count {n}")
    return result


def rgin_from_exponents(e) -> StronglyStableIdeal:
    """The unique rgin of a free essential arrangement with exponents e."""
    e = ExponentVector(e)
    if e[0] != 1:
        raise ValueError("the smallest exponent of an essential arrangement is 1")
    l = len(e)
    n = sum(e)
    if n == 1:
        return StronglyStableIdeal((PowerProduct.unit(l),), l)
    degrees: List[int] = []
    j = n - 1
    while True:
        count = sum(1 for v in e if v > j - n + 1)
        if count == 0:
            break
        degrees.extend([j] * count)
        j += 1
    assert len(degrees) == n
    gens = []
    for i, d in enumerate(degrees):
        lam = d - (n - 1 - i)
        exps = [0] * l
        exps[0] = n - 1 - i
        if l >= 2:
            exps[1] = lam
        elif lam:
            raise ValueError("one variable cannot carry these exponents")
        gens.append(PowerProduct(exps))
    return StronglyStableIdeal(gens, l)


def supersolvable_from_exponents(e) -> Arrangement:
    """The staircase arrangement {x1} U {x1 - a*xk : 1 <= a <= e_k}.

    It is central, essential, supersolvable, and free with exponents e.
    """
    e = ExponentVector(e)
    if e[0] != 1:
        raise ValueError("the construction needs leading exponent 1")
    l = len(e)
    xs = variables(l, QQ)
    forms = [xs[0]]
    for k in range(2, l + 1):
        for a in range(1, e[k - 1] + 1):
            forms.append(xs[0] - xs[k - 1].scale(a))
    return Arrangement(forms)


# ---------------------------------------------------------------------------
# realizability as the rgin of a free arrangement
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RealizabilityVerdict:
    realizable: bool
    reason: Optional[str]
    exponents: Optional[ExponentVector]
    arrangement: Optional[Arrangement]
    verified: bool

    def __bool__(self):
        return self.realizable


def _no(reason: str) -> RealizabilityVerdict:
    return RealizabilityVerdict(False, reason, None, None, False)


def realizable_as_free(B: StronglyStableIdeal, cfg: GinConfig = GinConfig(),
                       verify: bool = True) -> RealizabilityVerdict:
    """Decide whether B is the rgin of the Jacobian ideal of a free
    essential arrangement, and construct one if so.

    The generator-count chain test and the equivalent lambda-count test are
    both evaluated and must agree.  On success the witness arrangement is
    checked end-to-end: its rgin must reproduce B exactly.
    """
    if B.is_unit or B.is_zero:
        return _no("the unit and zero ideals are not Jacobian rgins of "
                   "essential free arrangements")
    l = B.nvars
    shape = is_cm_codim2_stable(B)
    if shape is None:
        return _no("not Cohen-Macaulay of codimension 2 "
                   "(generators must form a two-variable lex segment)")
    n = shape.n
    beta0 = B.generator_degrees()
    d_min = n - 1
    d_max = shape.lambdas[-1]

    chain_verdict: Optional[str] = None
    if beta0.get(d_min, 0) != l:
        chain_verdict = (f"beta0 at the minimal degree {d_min} is "
                         f"{beta0.get(d_min, 0)}, expected l = {l}")
    else:
        for j in range(d_min + 1, d_max):
            if beta0.get(j, 0) == 0:
                chain_verdict = f"no minimal generator of degree {j}"
                break
        if chain_verdict is None and d_max > d_min \
                and beta0.get(d_min + 1, 0) >= beta0[d_min]:
            chain_verdict = (f"beta0({d_min}) = {beta0[d_min]} does not drop: "
                             f"beta0({d_min + 1}) = {beta0.get(d_min + 1, 0)}")
        if chain_verdict is None:
            for j in range(d_min + 1, d_max):
                if beta0.get(j, 0) < beta0.get(j + 1, 0):
                    chain_verdict = (f"beta0({j}) = {beta0.get(j, 0)} < "
                                     f"beta0({j + 1}) = {beta0.get(j + 1, 0)}")
                    break

    # independent reading: counts of lambda_i = i + s must start at l - 1
    # and never increase with s
    lam = shape.lambdas
    s_top = lam[-1] - n + 1
    counts = [sum(1 for i, v in enumerate(lam, start=1) if v == i + s)
              for s in range(0, s_top + 1)]
    lambda_ok = (1 + counts[0] == l) and \
        all(a >= b for a, b in zip(counts, counts[1:])) and \
        sum(counts) == len(lam)
    if lambda_ok != (chain_verdict is None):
        raise InternalConsistencyError(
            f"chain test ({chain_verdict is None}) and lambda-count test "
            f"({lambda_ok}) disagree on {B!r}")
    if chain_verdict is not None:
        return _no(chain_verdict)

    exponents = exponents_from_rgin(B)
    arrangement = supersolvable_from_exponents(exponents)
    verified = False
    if verify:
        B2 = rgin(jacobian_ideal(arrangement), cfg)
        if MonomialIdeal(B2.generators, l) != MonomialIdeal(B.generators, l):
            raise InternalConsistencyError(
                f"constructed arrangement has rgin {B2!r}, expected {B!r}")
        verified = True
    return RealizabilityVerdict(True, None, exponents, arrangement, verified)


# ---------------------------------------------------------------------------
# conjecture harness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConjectureReport:
    """Outcome of the third-variable degree-bound check.

    The predicate: every minimal generator involving the third variable has
    degree at least d0 + 1, where d0 + 1 is the least pure power of the
    second variable.  This is an experiment harness, never a freeness gate.
    """

    holds: bool
    d0: Optional[int]
    violations: Tuple[PowerProduct, ...]
    vacuous: bool


def check_conjecture_Z(B: StronglyStableIdeal) -> ConjectureReport:
    """Check the degree bound for third-variable generators of B."""
    l = B.nvars
    third = [g for g in B.generators if l >= 3 and g[2] > 0]
    pure2 = [g.degree() for g in B.generators
             if l >= 2 and g.degree() >= 1 and g.degree() == g[1]]
    d0 = min(pure2) - 1 if pure2 else None
    if d0 is None:
        # Borel-fixedness makes third-variable generators force a pure power
        # of the second variable, so this branch is the vacuous one.
        return ConjectureReport(holds=not third, d0=None,
                                violations=tuple(third), vacuous=True)
    violations = tuple(g for g in third if g.degree() < d0 + 1)
    return ConjectureReport(holds=not violations, d0=d0,
                            violations=violations, vacuous=not third)
