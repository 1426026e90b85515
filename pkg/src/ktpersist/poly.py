"""Exact univariate polynomials in t over Q or F_p, and sparse matrices of them."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

NEG_INF = float("-inf")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: characteristic 0 means Q, otherwise the prime field F_p."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not is_prime(self.characteristic):
            raise ValueError(f"field characteristic {self.characteristic} is not 0 or a prime")

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        text = text.strip().lower()
        if text in ("q", "0"):
            return cls(0)
        if text.startswith("p:"):
            try:
                p = int(text[2:])
            except ValueError:
                raise ValueError(f"bad field spec {text!r}") from None
            return cls(p)
        raise ValueError(f"bad field spec {text!r}; expected 'q' or 'p:<prime>'")

    def __str__(self):
        return "q" if self.characteristic == 0 else f"p:{self.characteristic}"

    def __call__(self, x):
        """Coerce an int, Fraction or numeric string into a field element."""
        if isinstance(x, str):
            x = Fraction(x)
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def reduce(self, x):
        return x % self.characteristic if self.characteristic else x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic:
            return pow(x, -1, self.characteristic)
        return 1 / Fraction(x)

    def format(self, x) -> str:
        return str(x)


QQ = FieldSpec(0)


class Polynomial:
    """Immutable sparse polynomial: ``coeffs`` maps exponent to a nonzero field element."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldSpec, coeffs: Mapping[int, object] | None = None, *, _clean=False):
        self.field = field
        if _clean:
            self.coeffs = coeffs
        else:
            red = field.reduce
            cs = {}
            for e, c in (coeffs or {}).items():
                if e < 0:
                    raise ValueError("negative exponent")
                c = red(field(c))
                if c:
                    cs[e] = c
            self.coeffs = cs
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, field: FieldSpec = QQ) -> Polynomial:
        return cls(field, {}, _clean=True)

    @classmethod
    def one(cls, field: FieldSpec = QQ) -> Polynomial:
        return cls(field, {0: field(1)}, _clean=True)

    @classmethod
    def monomial(cls, field: FieldSpec, coeff, exponent: int) -> Polynomial:
        return cls(field, {exponent: coeff})

    @classmethod
    def t_power(cls, exponent: int, field: FieldSpec = QQ) -> Polynomial:
        return cls(field, {exponent: field(1)}, _clean=True)

    @classmethod
    def constant(cls, c, field: FieldSpec = QQ) -> Polynomial:
        return cls(field, {0: c})

    # basic queries

    @property
    def degree(self):
        return max(self.coeffs) if self.coeffs else NEG_INF

    @property
    def lead(self):
        return self.coeffs[max(self.coeffs)] if self.coeffs else self.field(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1 and 0 in self.coeffs

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def is_one(self) -> bool:
        return self.coeffs == {0: 1}

    def monic(self) -> Polynomial:
        if not self.coeffs:
            return self
        lc = self.lead
        if lc == 1:
            return self
        return self.scale(self.field.inv(lc))

    def evaluate(self, x):
        x = self.field(x)
        total = self.field(0)
        for e, c in self.coeffs.items():
            total += c * x**e
        return self.field.reduce(total)

    def terms(self) -> Iterator[tuple[int, object]]:
        """Terms in decreasing exponent order."""
        for e in sorted(self.coeffs, reverse=True):
            yield e, self.coeffs[e]

    def sort_key(self):
        return (self.degree, tuple(self.terms()))

    # arithmetic

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise ValueError("polynomials over different fields")
            return other
        return Polynomial.constant(other, self.field)

    def __add__(self, other):
        other = self._coerce(other)
        red = self.field.reduce
        cs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = red(cs.get(e, 0) + c)
            if v:
                cs[e] = v
            else:
                cs.pop(e, None)
        return Polynomial(self.field, cs, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        red = self.field.reduce
        return Polynomial(self.field, {e: red(-c) for e, c in self.coeffs.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> Polynomial:
        c = self.field(c)
        if not c:
            return Polynomial.zero(self.field)
        red = self.field.reduce
        return Polynomial(self.field, {e: red(v * c) for e, v in self.coeffs.items()}, _clean=True)

    def shift(self, k: int) -> Polynomial:
        """Multiply by t^k."""
        return Polynomial(self.field, {e + k: c for e, c in self.coeffs.items()}, _clean=True)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        if len(other.coeffs) == 1:
            (k, c), = other.coeffs.items()
            return self.scale(c).shift(k) if c != 1 else self.shift(k)
        red = self.field.reduce
        cs: dict[int, object] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                cs[e1 + e2] = cs.get(e1 + e2, 0) + c1 * c2
        cs = {e: v for e, v in ((e, red(v)) for e, v in cs.items()) if v}
        return Polynomial(self.field, cs, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Polynomial.one(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        field = self.field
        red = field.reduce
        db = other.degree
        inv_lc = field.inv(other.lead)
        if len(other.coeffs) == 1:
            # monomial divisor: split by exponent
            q = {e - db: red(c * inv_lc) for e, c in self.coeffs.items() if e >= db}
            r = {e: c for e, c in self.coeffs.items() if e < db}
            return Polynomial(field, q, _clean=True), Polynomial(field, r, _clean=True)
        r = dict(self.coeffs)
        q = {}
        while r:
            dr = max(r)
            if dr < db:
                break
            c = red(r[dr] * inv_lc)
            shift = dr - db
            q[shift] = c
            for e, v in other.coeffs.items():
                k = e + shift
                nv = red(r.get(k, 0) - c * v)
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return Polynomial(field, q, _clean=True), Polynomial(field, r, _clean=True)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: Polynomial) -> bool:
        if not self.coeffs:
            return not other.coeffs
        return not (other % self).coeffs

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self.field)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.characteristic, frozenset(self.coeffs.items())))
        return self._hash

    def __lt__(self, other: Polynomial):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.terms():
            neg = False
            if self.field.characteristic == 0 and c < 0:
                neg, c = True, -c
            if e == 0:
                body = str(c)
            else:
                mono = "t" if e == 1 else f"t^{e}"
                body = mono if c == 1 else f"{c}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd; gcd(0, 0) = 0."""
    if a.is_monomial() and b.is_monomial():
        return Polynomial.t_power(min(a.degree, b.degree), a.field)
    while b.coeffs:
        a, b = b, a % b
    return a.monic()


def poly_gcd_many(polys: Iterable[Polynomial], field: FieldSpec = QQ) -> Polynomial:
    g = Polynomial.zero(field)
    for p in polys:
        g = poly_gcd(g, p)
        if g.is_one():
            break
    return g


def poly_lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    if not a or not b:
        return Polynomial.zero(a.field)
    return (a * b // poly_gcd(a, b)).monic()


_TERM = re.compile(
    r"""\s*([+-])?\s*
        (?:(\d+(?:/\d+)?)\s*\*?\s*)?      # coefficient
        (t(?:\s*\^\s*(\d+))?)?            # power of t
        \s*""",
    re.VERBOSE,
)


def parse_poly(text: str, field: FieldSpec = QQ) -> Polynomial:
    """Parse expressions like ``t^3 - 2*t + 1/2`` or ``3t^2``."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    pos = 0
    cs: dict[int, object] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        sign, coeff, tpart, exp = m.groups()
        if coeff is None and tpart is None:
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        if sign is None and not first:
            raise ValueError(f"missing operator in polynomial {text!r}")
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        e = (int(exp) if exp else 1) if tpart else 0
        cs[e] = cs.get(e, 0) + c
        pos = m.end()
        first = False
    return Polynomial(field, cs)


class SparsePolyMatrix:
    """rows x cols matrix storing only nonzero Polynomial entries keyed by (row, col)."""

    __slots__ = ("rows", "cols", "field", "entries")

    def __init__(self, rows: int, cols: int, entries=None, field: FieldSpec = QQ):
        self.rows = rows
        self.cols = cols
        self.field = field
        self.entries: dict[tuple[int, int], Polynomial] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            if not isinstance(v, Polynomial):
                v = Polynomial.constant(v, field)
            if v:
                self.entries[i, j] = v

    def __getitem__(self, key) -> Polynomial:
        return self.entries.get(key) or Polynomial.zero(self.field)

    def __eq__(self, other):
        if not isinstance(other, SparsePolyMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self):
        return f"SparsePolyMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    @property
    def shape(self):
        return self.rows, self.cols

    def transpose(self) -> SparsePolyMatrix:
        return SparsePolyMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}, self.field)

    def __matmul__(self, other: SparsePolyMatrix) -> SparsePolyMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: dict[int, list] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict[tuple[int, int], Polynomial] = {}
        for (i, k), u in self.entries.items():
            for j, v in by_row.get(k, ()):
                out[i, j] = out.get((i, j), Polynomial.zero(self.field)) + u * v
        return SparsePolyMatrix(self.rows, other.cols, out, self.field)

    def is_zero(self) -> bool:
        return not self.entries

    def map(self, fn) -> SparsePolyMatrix:
        return SparsePolyMatrix(self.rows, self.cols, {k: fn(v) for k, v in self.entries.items()}, self.field)

    def at_one(self) -> dict[tuple[int, int], object]:
        """Entries evaluated at t = 1 (a plain matrix over the field)."""
        out = {}
        for k, v in self.entries.items():
            x = v.evaluate(1)
            if x:
                out[k] = x
        return out

    def columns(self) -> dict[int, dict[int, Polynomial]]:
        cols: dict[int, dict[int, Polynomial]] = {}
        for (i, j), v in self.entries.items():
            cols.setdefault(j, {})[i] = v
        return cols

    def to_dense(self) -> list[list[Polynomial]]:
        z = Polynomial.zero(self.field)
        return [[self.entries.get((i, j), z) for j in range(self.cols)] for i in range(self.rows)]
