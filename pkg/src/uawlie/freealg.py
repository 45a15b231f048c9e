"""The free unital associative algebra on the ordered alphabet A < B < C.

Words are plain strings over ``"ABC"`` (the empty string is the identity).
A :class:`FreeElement` is a sparse map word -> :class:`RatFunc` with zero
coefficients pruned, so ``==`` is mathematical equality.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .scalar import ONE, RatFunc

ALPHABET = "ABC"

__all__ = [
    "ALPHABET",
    "FreeElement",
    "word_key",
    "concat_mul",
    "lie_bracket_free",
    "theta",
    "coeff",
    "homogeneous_part",
    "gen",
]


def word_key(w: str):
    """Deterministic word order: by length, then lexicographic (A < B < C)."""
    return (len(w), w)


def _check_word(w: str) -> str:
    if any(ch not in ALPHABET for ch in w):
        raise ValueError(f"not a word over {ALPHABET}: {w!r}")
    return w


class FreeElement:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[str, object] | None = None):
        clean = {}
        for w, c in (terms or {}).items():
            c = RatFunc.coerce(c)
            if c:
                clean[_check_word(w)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> "FreeElement":
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def word(cls, w: str, c=ONE) -> "FreeElement":
        return cls({w: c})

    @classmethod
    def scalar(cls, c) -> "FreeElement":
        return cls({"": c})

    # linear structure
    def __add__(self, other) -> "FreeElement":
        other = _as_free(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            if v is None:
                out[w] = c
            else:
                v = v + c
                if v:
                    out[w] = v
                else:
                    del out[w]
        return FreeElement._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "FreeElement":
        return FreeElement._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "FreeElement":
        return self + (-_as_free(other))

    def __rsub__(self, other) -> "FreeElement":
        return _as_free(other) - self

    def scale(self, c) -> "FreeElement":
        c = RatFunc.coerce(c)
        if not c:
            return FreeElement._raw({})
        return FreeElement._raw({w: v * c for w, v in self.terms.items()})

    def __mul__(self, other) -> "FreeElement":
        if isinstance(other, FreeElement):
            return concat_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "FreeElement":
        return self.scale(other)

    def __truediv__(self, c) -> "FreeElement":
        return self.scale(RatFunc.coerce(1) / RatFunc.coerce(c))

    def __pow__(self, n: int) -> "FreeElement":
        if n < 0:
            raise ValueError("negative power in the free algebra")
        out = FreeElement.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, FreeElement):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of zero")
        return max(len(w) for w in self.terms)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def words(self):
        return sorted(self.terms, key=word_key)

    def items(self):
        return [(w, self.terms[w]) for w in self.words()]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in self.words():
            c = self.terms[w]
            parts.append(f"({c}) * {w or '1'}" if c.needs_parens() else f"{c} * {w or '1'}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"FreeElement({self})"

    def to_json(self) -> list:
        return [{"word": w, "coeff": self.terms[w].to_json()} for w in self.words()]


def _as_free(x) -> FreeElement:
    if isinstance(x, FreeElement):
        return x
    return FreeElement.scalar(x)


def gen(letter: str) -> FreeElement:
    return FreeElement.word(_check_word(letter))


def concat_mul(f: FreeElement, g: FreeElement) -> FreeElement:
    """Bilinear extension of word concatenation."""
    out: dict = {}
    for u, a in f.terms.items():
        for v, b in g.terms.items():
            w = u + v
            c = a * b
            prev = out.get(w)
            if prev is None:
                out[w] = c
            else:
                c = prev + c
                if c:
                    out[w] = c
                else:
                    del out[w]
    return FreeElement._raw(out)


def lie_bracket_free(f: FreeElement, g: FreeElement) -> FreeElement:
    return concat_mul(f, g) - concat_mul(g, f)


def theta(f: FreeElement) -> FreeElement:
    """The anti-automorphism sending each word W to (-1)^|W| times its reversal."""
    return FreeElement._raw({w[::-1]: (-c if len(w) % 2 else c) for w, c in f.terms.items()})


def coeff(f: FreeElement, w: str) -> RatFunc:
    return f.terms.get(w, RatFunc.from_int(0))


def homogeneous_part(f: FreeElement, n: int) -> FreeElement:
    return FreeElement._raw({w: c for w, c in f.terms.items() if len(w) == n})


def linear_combination(pairs: Iterable) -> FreeElement:
    """Sum of ``c * f`` over ``(c, f)`` pairs."""
    out = FreeElement._raw({})
    for c, f in pairs:
        out = out + f.scale(c)
    return out
