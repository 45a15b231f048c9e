"""Exact arithmetic in the rational function field Q(q).

A :class:`RatFunc` is stored as a pair of integer polynomials ``num/den`` in
``q`` (python-flint ``fmpz_poly``) with

* ``gcd(num, den) == 1`` in Z[q] (this also removes common integer content),
* ``den`` has a positive leading coefficient,
* ``num == 0`` implies ``den == 1``.

Negative powers of ``q`` live in the denominator, so ``q^-1`` is ``1/q``.
With this convention equality of canonical forms is structural equality.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Union

from flint import fmpz_poly

__all__ = [
    "DivisionByZero",
    "PoleError",
    "ZeroArgument",
    "ScalarSyntaxError",
    "LaurentPoly",
    "RatFunc",
    "Q",
    "ONE",
    "ZERO",
    "ratfunc_normalize",
    "ratfunc_arith",
    "ratfunc_eval",
    "ratfunc_factor_report",
    "parse_scalar",
    "FactorEntry",
    "FactorReport",
    "CYCLOTOMIC_MAX_ORDER",
]

CYCLOTOMIC_MAX_ORDER = 12


class DivisionByZero(ZeroDivisionError):
    pass


class PoleError(ArithmeticError):
    pass


class ZeroArgument(ValueError):
    pass


class ScalarSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


_POLY_ONE = fmpz_poly([1])
_POLY_ZERO = fmpz_poly([])


@dataclass(frozen=True)
class LaurentPoly:
    """``q**shift * sum(coeffs[i] * q**i)``; ``coeffs`` trimmed at both ends."""

    shift: int = 0
    coeffs: tuple = ()

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        lo = 0
        while lo < len(coeffs) and coeffs[lo] == 0:
            lo += 1
        hi = len(coeffs)
        while hi > lo and coeffs[hi - 1] == 0:
            hi -= 1
        shift = self.shift + lo if hi > lo else 0
        object.__setattr__(self, "coeffs", coeffs[lo:hi])
        object.__setattr__(self, "shift", shift)

    @classmethod
    def from_terms(cls, terms: dict) -> "LaurentPoly":
        """Build from ``{exponent: integer coefficient}``."""
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls(lo, tuple(terms.get(e, 0) for e in range(lo, hi + 1)))

    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self) -> dict:
        return {self.shift + i: c for i, c in enumerate(self.coeffs) if c}

    def __str__(self) -> str:
        return _format_laurent(self.terms())


def _format_laurent(terms: dict) -> str:
    """Ascending powers, explicit ``q^-1``; ``0`` for the empty sum."""
    if not terms:
        return "0"
    parts = []
    for e in sorted(terms):
        c = terms[e]
        if e == 0:
            body = str(abs(c))
        elif e == 1:
            body = "q" if abs(c) == 1 else f"{abs(c)}*q"
        else:
            body = f"q^{e}" if abs(c) == 1 else f"{abs(c)}*q^{e}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def _poly_from_laurent(lp: LaurentPoly):
    """Return ``(poly, shift)`` with ``lp == poly * q**shift``."""
    return fmpz_poly(list(lp.coeffs)), lp.shift


def _is_monomial(p: fmpz_poly) -> bool:
    coeffs = p.coeffs()
    return sum(1 for c in coeffs if c) == 1


class RatFunc:
    """An element of Q(q) in canonical form.  Immutable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None, *, _canonical=False):
        if _canonical:
            self.num = num
            self.den = den
            self._hash = None
            return
        num = _coerce_poly(num)
        den = _POLY_ONE if den is None else _coerce_poly(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        self.num, self.den = _canonical_pair(num, den)
        self._hash = None

    # construction helpers
    @classmethod
    def from_int(cls, n: int) -> "RatFunc":
        return cls(fmpz_poly([n]) if n else _POLY_ZERO, _POLY_ONE, _canonical=True)

    @classmethod
    def from_fraction(cls, f) -> "RatFunc":
        f = Fraction(f)
        return cls(fmpz_poly([f.numerator]), fmpz_poly([f.denominator]))

    @classmethod
    def from_laurent(cls, lp: LaurentPoly) -> "RatFunc":
        poly, shift = _poly_from_laurent(lp)
        if shift >= 0:
            return cls(poly * fmpz_poly([0] * shift + [1]), _POLY_ONE, _canonical=True)
        return cls(poly, fmpz_poly([0] * (-shift) + [1]), _canonical=True)

    @classmethod
    def qpow(cls, e: int) -> "RatFunc":
        mono = fmpz_poly([0] * abs(e) + [1])
        if e >= 0:
            return cls(mono, _POLY_ONE, _canonical=True)
        return cls(fmpz_poly([1]), mono, _canonical=True)

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, int):
            return cls.from_int(x)
        if isinstance(x, (Fraction,)):
            return cls.from_fraction(x)
        if isinstance(x, LaurentPoly):
            return cls.from_laurent(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    # predicates
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def is_laurent(self) -> bool:
        """True when the denominator is a power of q."""
        return self.den.is_one() or (_is_monomial(self.den) and self.den.leading_coefficient() == 1)

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    # arithmetic
    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _canonical=True)

    def __add__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            if self.den.is_one():
                return RatFunc(self.num + other.num, _POLY_ONE, _canonical=True)
            return _make(self.num + other.num, self.den)
        return _make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, _POLY_ONE, _canonical=True)
        # cross-cancel first to keep the gcds small
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n = (self.num // g1) * (other.num // g2)
        d = (self.den // g2) * (other.den // g1)
        return _make_coprime(n, d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return _make_coprime(self.den, self.num)

    def __truediv__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        if other.num.is_zero():
            raise DivisionByZero("division by zero")
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) / self

    def __pow__(self, e: int) -> "RatFunc":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return ONE
        return RatFunc(self.num ** e, self.den ** e, _canonical=True)

    # comparisons / hashing
    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self == RatFunc.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((tuple(int(c) for c in self.num.coeffs()),
                               tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    # views
    def numerator_coeffs(self) -> list:
        return [int(c) for c in self.num.coeffs()]

    def denominator_coeffs(self) -> list:
        return [int(c) for c in self.den.coeffs()]

    def as_laurent(self):
        """The Laurent polynomial equal to self, or None if den is not ``q**k``."""
        if not self.is_laurent():
            return None
        k = self.den.degree()
        return LaurentPoly(-k, tuple(self.numerator_coeffs()))

    def degree_span(self) -> int:
        return max(self.num.degree(), 0) + self.den.degree()

    def eval(self, p) -> Fraction:
        return ratfunc_eval(self, p)

    def to_json(self) -> dict:
        return {"num": self.numerator_coeffs(), "den": self.denominator_coeffs()}

    @classmethod
    def from_json(cls, obj) -> "RatFunc":
        return cls(fmpz_poly([int(c) for c in obj["num"]]), fmpz_poly([int(c) for c in obj["den"]]))

    def __str__(self) -> str:
        lp = self.as_laurent()
        if lp is not None:
            return str(lp)
        num = _format_laurent(LaurentPoly(0, tuple(self.numerator_coeffs())).terms())
        den = _format_laurent(LaurentPoly(0, tuple(self.denominator_coeffs())).terms())
        # a monomial denominator c*q^k prints as is
        return f"({num})/({den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def needs_parens(self) -> bool:
        """Whether the printed form is a sum (needs brackets as a factor)."""
        s = str(self)
        return " " in s or s.startswith("(")


def _coerce_poly(x) -> fmpz_poly:
    if isinstance(x, fmpz_poly):
        return x
    if isinstance(x, int):
        return fmpz_poly([x]) if x else _POLY_ZERO
    if isinstance(x, (list, tuple)):
        return fmpz_poly([int(c) for c in x])
    raise TypeError(f"cannot build a polynomial from {type(x).__name__}")


def _canonical_pair(num: fmpz_poly, den: fmpz_poly):
    if num.is_zero():
        return _POLY_ZERO, _POLY_ONE
    g = num.gcd(den)
    if not g.is_one():
        num = num // g
        den = den // g
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return num, den


def _make(num, den) -> RatFunc:
    n, d = _canonical_pair(num, den)
    return RatFunc(n, d, _canonical=True)


def _make_coprime(num, den) -> RatFunc:
    """Canonicalize a pair already coprime in Z[q]; only the sign may need fixing."""
    if num.is_zero():
        return ZERO
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return RatFunc(num, den, _canonical=True)


ZERO = RatFunc(_POLY_ZERO, _POLY_ONE, _canonical=True)
ONE = RatFunc(fmpz_poly([1]), _POLY_ONE, _canonical=True)
Q = RatFunc(fmpz_poly([0, 1]), _POLY_ONE, _canonical=True)

Scalar = Union[RatFunc, int, Fraction]


def ratfunc_normalize(num: LaurentPoly, den: LaurentPoly) -> RatFunc:
    """Canonical fraction ``num/den`` of two Laurent polynomials."""
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    return RatFunc.from_laurent(num) / RatFunc.from_laurent(den)


def ratfunc_arith(kind: str, a, b) -> RatFunc:
    a, b = RatFunc.coerce(a), RatFunc.coerce(b)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown operation {kind!r}")


def _horner(coeffs: Iterable[int], p: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(list(coeffs)):
        acc = acc * p + c
    return acc


def ratfunc_eval(f: RatFunc, p) -> Fraction:
    """Exact value of ``f`` at ``q = p`` for a nonzero rational ``p``."""
    p = Fraction(p)
    if p == 0:
        raise PoleError("evaluation at q = 0")
    f = RatFunc.coerce(f)
    d = _horner(f.denominator_coeffs(), p)
    if d == 0:
        raise PoleError(f"pole at q = {p}")
    return _horner(f.numerator_coeffs(), p) / d


class FactorEntry(NamedTuple):
    factor: tuple           # integer coefficients, ascending
    multiplicity: int
    cyclotomic: object      # order n of the cyclotomic polynomial, or None

    def __str__(self) -> str:
        label = f"Phi_{self.cyclotomic}" if self.cyclotomic else "-"
        poly = _format_laurent(LaurentPoly(0, self.factor).terms())
        return f"({poly})^{self.multiplicity} [{label}]"


@dataclass(frozen=True)
class FactorReport:
    unit: Fraction
    numerator: tuple
    denominator: tuple

    def factors(self):
        return self.numerator + self.denominator

    def is_q_power(self, entry: FactorEntry) -> bool:
        return entry.factor == (0, 1)

    def orders(self) -> set:
        return {e.cyclotomic for e in self.factors() if e.cyclotomic is not None}

    def foreign(self) -> list:
        """Factors that are neither q nor a recognized cyclotomic polynomial."""
        return [e for e in self.factors() if e.cyclotomic is None and e.factor != (0, 1)]

    def to_json(self) -> dict:
        enc = lambda es: [
            {"factor": list(e.factor), "multiplicity": e.multiplicity, "cyclotomic": e.cyclotomic}
            for e in es
        ]
        return {
            "unit": str(self.unit),
            "numerator": enc(self.numerator),
            "denominator": enc(self.denominator),
        }

    def __str__(self) -> str:
        num = " ".join(str(e) for e in self.numerator) or "1"
        den = " ".join(str(e) for e in self.denominator) or "1"
        return f"{self.unit} * {num} / {den}"


_CYCLOTOMIC = {n: tuple(int(c) for c in fmpz_poly.cyclotomic(n).coeffs())
               for n in range(1, CYCLOTOMIC_MAX_ORDER + 1)}
_CYCLOTOMIC_LOOKUP = {v: k for k, v in _CYCLOTOMIC.items()}


def _factor_poly(p: fmpz_poly):
    content, factors = p.factor()
    entries = []
    for f, m in factors:
        coeffs = tuple(int(c) for c in f.coeffs())
        entries.append(FactorEntry(coeffs, int(m), _CYCLOTOMIC_LOOKUP.get(coeffs)))
    entries.sort(key=lambda e: (len(e.factor), e.factor))
    return Fraction(int(content)), tuple(entries)


def ratfunc_factor_report(f) -> FactorReport:
    """Irreducible factorization of numerator and denominator over Q[q]."""
    f = RatFunc.coerce(f)
    if f.is_zero():
        raise ZeroArgument("factor report of zero")
    cn, num = _factor_poly(f.num)
    cd, den = _factor_poly(f.den)
    return FactorReport(cn / cd, num, den)


# --- scalar text syntax -----------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|(\^)|([-+*/()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            while text[pos].isspace():
                pos += 1
            raise ScalarSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        toks.append((m.group(m.lastindex), start))
        pos = m.end()
    toks.append(("", len(text)))
    return toks


def parse_scalar(text: str) -> RatFunc:
    """Parse integers, ``q``, ``^`` with integer exponents, ``+ - * /`` and parentheses."""
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos][0]

    def take(expected=None):
        nonlocal pos
        tok, off = toks[pos]
        if expected is not None and tok != expected:
            raise ScalarSyntaxError(f"expected {expected!r}, got {tok or 'end of input'!r}", off)
        pos += 1
        return tok

    def expr():
        sign = 1
        if peek() in "+-" and peek():
            sign = -1 if take() == "-" else 1
        acc = term() * sign
        while peek() in ("+", "-") and peek():
            op = take()
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = factor()
        while peek() in ("*", "/") and peek():
            op = take()
            rhs = factor()
            acc = acc * rhs if op == "*" else acc / rhs
        return acc

    def factor():
        base = atom()
        if peek() == "^":
            take()
            neg = False
            if peek() == "-":
                take()
                neg = True
            tok, off = toks[pos]
            if not tok.isdigit():
                raise ScalarSyntaxError("expected integer exponent", off)
            take()
            e = int(tok)
            return base ** (-e if neg else e)
        return base

    def atom():
        tok, off = toks[pos]
        if tok.isdigit():
            take()
            return RatFunc.from_int(int(tok))
        if tok == "q":
            take()
            return Q
        if tok == "(":
            take()
            v = expr()
            take(")")
            return v
        if tok == "-":
            take()
            return -factor()
        raise ScalarSyntaxError(f"unexpected {tok or 'end of input'!r}", off)

    value = expr()
    if peek() != "":
        raise ScalarSyntaxError(f"unexpected {peek()!r}", toks[pos][1])
    return value
