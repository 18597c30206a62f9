"""Exact sparse multivariate polynomial arithmetic with the DegRevLex order.

Variables are x_1 > x_2 > ... > x_l.  Coefficients are exact rationals by
default; an optional prime-field mode is available for modular runs.  All
values are immutable after construction and safe to share across workers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "LESS", "EQUAL", "GREATER",
    "DimensionError", "PowerProduct", "cmp_degrevlex",
    "Rationals", "PrimeField", "QQ", "GF",
    "Polynomial", "variables", "multiply", "partial_derivative",
    "LinearChange", "apply_linear_change",
    "var_names", "format_power_product",
]

LESS, EQUAL, GREATER = -1, 0, 1


class DimensionError(ValueError):
    """Operands live in polynomial rings with different variable counts."""


# ---------------------------------------------------------------------------
# power products
# ---------------------------------------------------------------------------

class PowerProduct(tuple):
    """Exponent vector of a monomial, totally ordered by DegRevLex."""

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int]) -> "PowerProduct":
        t = tuple.__new__(cls, exponents)
        if not t:
            raise ValueError("a power product needs at least one variable")
        for e in t:
            if not isinstance(e, int) or e < 0:
                raise ValueError(f"exponents must be non-negative integers, got {e!r}")
        return t

    @classmethod
    def unit(cls, nvars: int) -> "PowerProduct":
        return cls((0,) * nvars)

    @classmethod
    def variable(cls, i: int, nvars: int) -> "PowerProduct":
        """The power product x_i (1-based index)."""
        if not 1 <= i <= nvars:
            raise IndexError(f"variable index {i} out of range 1..{nvars}")
        return cls(tuple(1 if j == i - 1 else 0 for j in range(nvars)))

    @property
    def nvars(self) -> int:
        return len(self)

    def degree(self) -> int:
        return sum(self)

    def __mul__(self, other: "PowerProduct") -> "PowerProduct":
        if len(self) != len(other):
            raise DimensionError("power products of different lengths")
        return PowerProduct(tuple(a + b for a, b in zip(self, other)))

    def __truediv__(self, other: "PowerProduct") -> "PowerProduct":
        """Exact division; raises if ``other`` does not divide ``self``."""
        if len(self) != len(other):
            raise DimensionError("power products of different lengths")
        diff = tuple(a - b for a, b in zip(self, other))
        if any(d < 0 for d in diff):
            raise ValueError(f"{other} does not divide {self}")
        return PowerProduct(diff)

    def divides(self, other: "PowerProduct") -> bool:
        if len(self) != len(other):
            raise DimensionError("power products of different lengths")
        return all(a <= b for a, b in zip(self, other))

    def lcm(self, other: "PowerProduct") -> "PowerProduct":
        if len(self) != len(other):
            raise DimensionError("power products of different lengths")
        return PowerProduct(tuple(max(a, b) for a, b in zip(self, other)))

    def coprime(self, other: "PowerProduct") -> bool:
        return all(a == 0 or b == 0 for a, b in zip(self, other))

    def max_variable(self) -> int:
        """1-based index of the biggest variable dividing this monomial; 0 for 1."""
        for j in range(len(self) - 1, -1, -1):
            if self[j] > 0:
                return j + 1
        return 0

    # DegRevLex ordering.  Reversed iteration finds the last differing
    # exponent; the side where it is smaller wins.
    def _cmp(self, other: "PowerProduct") -> int:
        if len(self) != len(other):
            raise DimensionError("power products of different lengths")
        sd, od = sum(self), sum(other)
        if sd != od:
            return LESS if sd < od else GREATER
        for a, b in zip(reversed(self), reversed(other)):
            if a != b:
                return GREATER if a < b else LESS
        return EQUAL

    def __lt__(self, other):
        return self._cmp(other) == LESS

    def __le__(self, other):
        return self._cmp(other) != GREATER

    def __gt__(self, other):
        return self._cmp(other) == GREATER

    def __ge__(self, other):
        return self._cmp(other) != LESS

    def __repr__(self) -> str:
        return f"PowerProduct({tuple(self)})"

    def __str__(self) -> str:
        return format_power_product(self)


def cmp_degrevlex(a: PowerProduct, b: PowerProduct) -> int:
    """Three-way DegRevLex comparison: LESS, EQUAL or GREATER."""
    return PowerProduct._cmp(a, b)


# ---------------------------------------------------------------------------
# coefficient fields
# ---------------------------------------------------------------------------

class Rationals:
    """Exact rational coefficients (arbitrary precision, lowest terms)."""

    p = None
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, c) -> Fraction:
        return Fraction(c)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return Fraction(1) / a

    def div(self, a, b):
        return a / b

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """Coefficients in GF(p), stored as ints in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def coerce(self, c) -> int:
        if isinstance(c, Fraction):
            den = c.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {c} vanishes mod {self.p}")
            return c.numerator * pow(den, -1, self.p) % self.p
        return int(c) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * pow(b, -1, self.p) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

CoeffLike = Union[int, Fraction]


class Polynomial:
    """Immutable sparse polynomial: a map from power products to coefficients."""

    __slots__ = ("nvars", "field", "_terms", "_lead")

    def __init__(self, terms: Mapping[PowerProduct, CoeffLike], nvars: int,
                 field=QQ, _trusted: bool = False):
        self.nvars = nvars
        self.field = field
        if _trusted:
            clean = dict(terms)
        else:
            clean = {}
            for pp, c in terms.items():
                if not isinstance(pp, PowerProduct):
                    pp = PowerProduct(pp)
                if len(pp) != nvars:
                    raise DimensionError(f"{pp} has {len(pp)} exponents, expected {nvars}")
                c = field.coerce(c)
                if c != field.zero:
                    clean[pp] = c
        self._terms = clean
        self._lead = max(clean) if clean else None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, field=QQ) -> "Polynomial":
        return cls({}, nvars, field, _trusted=True)

    @classmethod
    def constant(cls, c, nvars: int, field=QQ) -> "Polynomial":
        return cls({PowerProduct.unit(nvars): c}, nvars, field)

    @classmethod
    def variable(cls, i: int, nvars: int, field=QQ) -> "Polynomial":
        """The polynomial x_i (1-based index)."""
        return cls({PowerProduct.variable(i, nvars): 1}, nvars, field)

    @classmethod
    def monomial(cls, pp: PowerProduct, nvars: int, field=QQ, coeff=1) -> "Polynomial":
        return cls({pp: coeff}, nvars, field)

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def leading_power_product(self) -> PowerProduct:
        if self._lead is None:
            raise ValueError("the zero polynomial has no leading term")
        return self._lead

    def leading_coefficient(self):
        return self._terms[self.leading_power_product()]

    def total_degree(self):
        """Total degree, or None for the zero polynomial."""
        if not self._terms:
            return None
        return max(pp.degree() for pp in self._terms)

    def coefficient(self, pp: PowerProduct):
        return self._terms.get(pp, self.field.zero)

    def terms(self) -> Iterator[tuple]:
        """Terms in descending DegRevLex order."""
        for pp in sorted(self._terms, reverse=True):
            yield pp, self._terms[pp]

    def term_dict(self) -> dict:
        return dict(self._terms)

    def is_homogeneous(self) -> bool:
        degs = {pp.degree() for pp in self._terms}
        return len(degs) <= 1

    # -- arithmetic --------------------------------------------------------

    def _check_compatible(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise DimensionError(
                f"polynomials in {self.nvars} and {other.nvars} variables")
        if self.field != other.field:
            raise ValueError(f"coefficient fields differ: {self.field} vs {other.field}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        field = self.field
        out = dict(self._terms)
        for pp, c in other._terms.items():
            s = field.add(out.get(pp, field.zero), c)
            if s == field.zero:
                out.pop(pp, None)
            else:
                out[pp] = s
        return Polynomial(out, self.nvars, field, _trusted=True)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        field = self.field
        return Polynomial({pp: field.neg(c) for pp, c in self._terms.items()},
                          self.nvars, field, _trusted=True)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        field = self.field
        p = field.p
        out: dict = {}
        small, big = (self._terms, other._terms)
        if len(small) > len(big):
            small, big = big, small
        for pa, ca in small.items():
            for pb, cb in big.items():
                pp = pa * pb
                v = out.get(pp, 0) + ca * cb
                out[pp] = v
        if p is not None:
            out = {pp: v % p for pp, v in out.items()}
        return Polynomial({pp: v for pp, v in out.items() if v},
                          self.nvars, field, _trusted=True)

    def scale(self, c) -> "Polynomial":
        field = self.field
        c = field.coerce(c)
        if c == field.zero:
            return Polynomial.zero(self.nvars, field)
        return Polynomial({pp: field.mul(v, c) for pp, v in self._terms.items()},
                          self.nvars, field, _trusted=True)

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(1, self.nvars, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise ValueError("cannot normalize the zero polynomial")
        lc = self.leading_coefficient()
        if lc == self.field.one:
            return self
        inv = self.field.inv(lc)
        return self.scale(inv)

    def partial_derivative(self, i: int) -> "Polynomial":
        """Formal derivative with respect to x_i (1-based index)."""
        if not 1 <= i <= self.nvars:
            raise IndexError(f"variable index {i} out of range 1..{self.nvars}")
        j = i - 1
        field = self.field
        out: dict = {}
        for pp, c in self._terms.items():
            e = pp[j]
            if e == 0:
                continue
            dropped = PowerProduct(tuple(v - 1 if k == j else v for k, v in enumerate(pp)))
            v = field.add(out.get(dropped, field.zero), field.mul(c, field.coerce(e)))
            if v == field.zero:
                out.pop(dropped, None)
            else:
                out[dropped] = v
        return Polynomial(out, self.nvars, field, _trusted=True)

    def convert(self, field) -> "Polynomial":
        """Reinterpret the coefficients in another field."""
        if field == self.field:
            return self
        return Polynomial({pp: field.coerce(c) for pp, c in self._terms.items()},
                          self.nvars, field)

    # -- equality / display --------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Polynomial) and self.nvars == other.nvars
                and self.field == other.field and self._terms == other._terms)

    def __hash__(self) -> int:
        return hash((self.nvars, self.field, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for pp, c in self.terms():
            mono = format_power_product(pp)
            if self.field.p is not None:
                csym = str(c)
                negative = False
            else:
                negative = c < 0
                c = abs(c)
                csym = str(c)
            if mono == "1":
                body = csym
            elif csym == "1":
                body = mono
            else:
                body = f"{csym}*{mono}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f" - {body}" if negative else f" + {body}")
        return "".join(parts)


def variables(nvars: int, field=QQ) -> list:
    """The list [x_1, ..., x_l] as polynomials."""
    return [Polynomial.variable(i, nvars, field) for i in range(1, nvars + 1)]


def multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    """Exact product of two polynomials."""
    return f * g


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    """Formal partial derivative of f with respect to x_i (1-based)."""
    return f.partial_derivative(i)


# ---------------------------------------------------------------------------
# invertible linear changes of coordinates
# ---------------------------------------------------------------------------

def _det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(rows)
    m = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return det


class LinearChange:
    """Invertible linear substitution x_j -> sum_k matrix[j][k] * x_k."""

    __slots__ = ("matrix", "nvars")

    def __init__(self, matrix: Sequence[Sequence[CoeffLike]]):
        rows = tuple(tuple(Fraction(c) for c in row) for row in matrix)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square and non-empty")
        if _det(rows) == 0:
            raise ValueError("singular matrix rejected")
        self.matrix = rows
        self.nvars = n

    @classmethod
    def identity(cls, nvars: int) -> "LinearChange":
        return cls([[1 if i == j else 0 for j in range(nvars)] for i in range(nvars)])

    def inverse(self) -> "LinearChange":
        n = self.nvars
        aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
               for i, row in enumerate(self.matrix)]
        for col in range(n):
            pivot = next(r for r in range(col, n) if aug[r][col] != 0)
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = Fraction(1) / aug[col][col]
            aug[col] = [v * inv for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    factor = aug[r][col]
                    aug[r] = [v - factor * p for v, p in zip(aug[r], aug[col])]
        return LinearChange([row[n:] for row in aug])

    def __eq__(self, other):
        return isinstance(other, LinearChange) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"LinearChange({[[str(c) for c in row] for row in self.matrix]})"

    def as_int_rows(self) -> list:
        """Matrix rows as plain ints (requires integral entries)."""
        out = []
        for row in self.matrix:
            if any(c.denominator != 1 for c in row):
                raise ValueError("matrix has non-integer entries")
            out.append([int(c) for c in row])
        return out


def apply_linear_change(f: Polynomial, g: LinearChange) -> Polynomial:
    """Compose f with the linear map g (substitute each variable)."""
    if f.nvars != g.nvars:
        raise DimensionError(f"polynomial in {f.nvars} variables, change in {g.nvars}")
    if f.is_zero:
        return f
    field = f.field
    n = f.nvars
    images = []
    for j in range(n):
        row = {}
        for k, c in enumerate(g.matrix[j]):
            if c:
                row[PowerProduct.variable(k + 1, n)] = c
        images.append(Polynomial(row, n, field))
    # Cache powers of each image so dense inputs reuse work.
    pows: list = [[Polynomial.constant(1, n, field), images[j]] for j in range(n)]

    def power(j: int, e: int) -> Polynomial:
        while len(pows[j]) <= e:
            pows[j].append(pows[j][-1] * images[j])
        return pows[j][e]

    total = Polynomial.zero(n, field)
    for pp, c in f._terms.items():
        part = Polynomial.constant(c, n, field)
        for j, e in enumerate(pp):
            if e:
                part = part * power(j, e)
        total = total + part
    return total


# ---------------------------------------------------------------------------
# display helpers
# ---------------------------------------------------------------------------

def var_names(nvars: int) -> list:
    """Display names: x, y, z, w for up to 4 variables, else x1..xl."""
    if nvars <= 4:
        return ["x", "y", "z", "w"][:nvars]
    return [f"x{i}" for i in range(1, nvars + 1)]


def format_power_product(pp: PowerProduct, names: Sequence[str] = None) -> str:
    if names is None:
        names = var_names(len(pp))
    parts = []
    for name, e in zip(names, pp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"
