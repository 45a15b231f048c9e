"""Lie monomials, the Hall basis on A < B < C and Hall coordinates.

A tree is either a letter (``"A"``, ``"B"``, ``"C"``) or a pair
``(left, right)`` meaning ``[left, right]``.

Order on monomials: shorter first; letters A < B < C; two composites of the
same length compare by their right factors, then by their left factors, both
recursively.  Within a fixed length, Hall elements are numbered in this
order, which gives the global indices ``H1 = A, ..., H4 = [B,A], H5 = [C,A],
H6 = [C,B], H7 = [[B,A],A], ...``.
"""

from __future__ import annotations

import re
import threading
from functools import lru_cache
from typing import Mapping, NamedTuple, Union

from .freealg import ALPHABET, FreeElement, lie_bracket_free
from .scalar import ONE, RatFunc

Tree = Union[str, tuple]

__all__ = [
    "Tree",
    "EmptyWord",
    "NotInLie",
    "HallElement",
    "LieSeries",
    "tree_length",
    "order_key",
    "lie_compare",
    "is_hall",
    "hall_generate",
    "hall_element",
    "hall_index",
    "witt_count",
    "left_normed",
    "expand",
    "hall_rewrite",
    "bracket_hall",
    "hall_coords_by_solve",
    "format_tree",
    "parse_tree",
]

REWRITE_BUDGET = 200_000


class EmptyWord(ValueError):
    pass


class NotInLie(Exception):
    """The element is not in the free Lie algebra."""


class RewriteBudgetExceeded(RuntimeError):
    pass


@lru_cache(maxsize=None)
def tree_length(t: Tree) -> int:
    if isinstance(t, str):
        return 1
    return tree_length(t[0]) + tree_length(t[1])


@lru_cache(maxsize=None)
def order_key(t: Tree):
    """Sort key realizing the monomial order (length, right factor, left factor)."""
    if isinstance(t, str):
        return (1, t)
    return (tree_length(t), order_key(t[1]), order_key(t[0]))


def lie_compare(u: Tree, v: Tree) -> str:
    ku, kv = order_key(u), order_key(v)
    if ku < kv:
        return "LT"
    if ku > kv:
        return "GT"
    return "EQ"


@lru_cache(maxsize=None)
def is_hall(t: Tree) -> bool:
    if isinstance(t, str):
        return t in ALPHABET
    u, v = t
    if not (is_hall(u) and is_hall(v)):
        return False
    if not order_key(u) > order_key(v):
        return False
    if isinstance(u, tuple) and order_key(u[1]) > order_key(v):
        return False
    return True


def witt_count(n: int, m: int = 3) -> int:
    """Dimension of the degree-n part of the free Lie algebra on m letters."""
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += _mobius(d) * m ** (n // d)
    return total // n


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


class HallElement(NamedTuple):
    tree: Tree
    index: int
    length: int

    def __str__(self) -> str:
        return f"H{self.index} = {format_tree(self.tree)}"


class _HallTable:
    """Enumeration of Hall elements, grown on demand and never reordered."""

    def __init__(self):
        self.by_length: list = [[]]
        self.trees: list = []
        self.index: dict = {}
        self.lock = threading.Lock()

    def ensure(self, max_len: int):
        if len(self.by_length) > max_len:
            return
        with self.lock:
            while len(self.by_length) <= max_len:
                n = len(self.by_length)
                if n == 1:
                    level = list(ALPHABET)
                else:
                    level = []
                    for lu in range(n - 1, 0, -1):
                        lv = n - lu
                        if lv > lu:
                            continue
                        for u in self.by_length[lu]:
                            for v in self.by_length[lv]:
                                if is_hall((u, v)):
                                    level.append((u, v))
                    level.sort(key=order_key)
                for t in level:
                    self.trees.append(t)
                    self.index[t] = len(self.trees)
                self.by_length.append(level)


_TABLE = _HallTable()


def hall_generate(max_len: int) -> list:
    """All Hall elements of length <= max_len, in canonical order."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    _TABLE.ensure(max_len)
    out = []
    for n in range(1, max_len + 1):
        for t in _TABLE.by_length[n]:
            out.append(HallElement(t, _TABLE.index[t], n))
    return out


def hall_element(index: int) -> Tree:
    """The tree of the Hall element with the given 1-based index."""
    if index < 1:
        raise IndexError("Hall indices start at 1")
    n = 1
    while len(_TABLE.trees) < index:
        n += 1
        _TABLE.ensure(n)
    return _TABLE.trees[index - 1]


def hall_index(t: Tree) -> int:
    _TABLE.ensure(tree_length(t))
    try:
        return _TABLE.index[t]
    except KeyError:
        raise ValueError(f"{format_tree(t)} is not a Hall element") from None


def H(index: int) -> Tree:
    return hall_element(index)


def left_normed(word: str) -> Tree:
    """``X1 X2 ... Xt -> [[[X1, X2], ...], Xt]``."""
    if not word:
        raise EmptyWord("left-normed bracketing of the empty word")
    t: Tree = word[0]
    for ch in word[1:]:
        t = (t, ch)
    return t


@lru_cache(maxsize=None)
def expand(t: Tree) -> FreeElement:
    """The element of the free algebra represented by a bracket tree."""
    if isinstance(t, str):
        return FreeElement.word(t)
    return lie_bracket_free(expand(t[0]), expand(t[1]))


def format_tree(t: Tree) -> str:
    if isinstance(t, str):
        return t
    return f"[{format_tree(t[0])},{format_tree(t[1])}]"


_TREE_TOKEN = re.compile(r"\s*(H\d+|[ABC\[\],])")


def parse_tree(text: str) -> Tree:
    """Parse ``[[B,A],C]``-style trees; ``H12`` names a Hall element."""
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TREE_TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad tree syntax at offset {pos}")
        toks.append(m.group(1))
        pos = m.end()
    it = iter(toks + [""])
    cur = [next(it)]

    def take():
        tok = cur[0]
        cur[0] = next(it)
        return tok

    def node():
        tok = take()
        if tok in ("A", "B", "C"):
            return tok
        if tok.startswith("H"):
            return hall_element(int(tok[1:]))
        if tok == "[":
            left = node()
            if take() != ",":
                raise ValueError("expected ','")
            right = node()
            if take() != "]":
                raise ValueError("expected ']'")
            return (left, right)
        raise ValueError(f"unexpected token {tok!r}")

    t = node()
    if cur[0] != "":
        raise ValueError(f"trailing input {cur[0]!r}")
    return t


# --- Lie series: linear combinations of bracket trees ------------------------

def _add_into(acc: dict, key, c: RatFunc):
    v = acc.get(key)
    if v is None:
        if c:
            acc[key] = c
    else:
        v = v + c
        if v:
            acc[key] = v
        else:
            del acc[key]


class LieSeries:
    """A finitely supported map tree -> RatFunc.

    After :func:`hall_rewrite` all keys are Hall trees, so the series is a
    coordinate vector in the Hall basis.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        acc: dict = {}
        for t, c in (terms or {}).items():
            _add_into(acc, t, RatFunc.coerce(c))
        self.terms = acc

    @classmethod
    def of(cls, t: Tree, c=ONE) -> "LieSeries":
        return cls({t: c})

    def __add__(self, other: "LieSeries") -> "LieSeries":
        acc = dict(self.terms)
        for t, c in other.terms.items():
            _add_into(acc, t, c)
        out = LieSeries()
        out.terms = acc
        return out

    def __neg__(self):
        out = LieSeries()
        out.terms = {t: -c for t, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LieSeries":
        c = RatFunc.coerce(c)
        out = LieSeries()
        out.terms = {t: v * c for t, v in self.terms.items()} if c else {}
        return out

    __rmul__ = scale

    def __mul__(self, c):
        return self.scale(c)

    def __truediv__(self, c):
        return self.scale(ONE / RatFunc.coerce(c))

    def __eq__(self, other):
        return isinstance(other, LieSeries) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def is_hall(self) -> bool:
        return all(is_hall(t) for t in self.terms)

    def bracket(self, other: "LieSeries") -> "LieSeries":
        """Bracket of two Hall-coordinate series, rewritten into Hall form."""
        acc: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                ab = a * b
                for t, c in bracket_hall(u, v).items():
                    _add_into(acc, t, ab * c)
        out = LieSeries()
        out.terms = acc
        return out

    def by_index(self) -> dict:
        """``{hall index: coefficient}`` (requires Hall keys)."""
        return {hall_index(t): c for t, c in self.terms.items()}

    def to_free(self) -> FreeElement:
        out = FreeElement()
        for t, c in self.terms.items():
            out = out + expand(t).scale(c)
        return out

    def items(self):
        return sorted(self.terms.items(), key=lambda it: order_key(it[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t, c in self.items():
            label = f"H{hall_index(t)}" if is_hall(t) else format_tree(t)
            parts.append(f"({c}) * {label}" if c.needs_parens() else f"{c} * {label}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LieSeries({self})"

    def to_json(self) -> list:
        return [{"index": hall_index(t) if is_hall(t) else None, "tree": format_tree(t),
                 "coeff": c.to_json()} for t, c in self.items()]


class _Budget:
    def __init__(self, limit):
        self.left = limit

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise RewriteBudgetExceeded("Hall rewriting exceeded its step budget")


_BRACKET_CACHE: dict = {}
_BRACKET_LOCK = threading.Lock()


def bracket_hall(u: Tree, v: Tree, _budget: _Budget | None = None) -> dict:
    """Hall coordinates of ``[u, v]`` for Hall trees ``u`` and ``v``.

    Rules: ``[u, u] = 0``; ``[u, v] = -[v, u]`` when ``u < v``; ``[u, v]`` is
    Hall when ``u`` is a letter or ``u = [x, y]`` with ``y <= v``; otherwise
    ``[[x, y], v] = [[x, v], y] + [x, [y, v]]`` with both brackets rewritten
    recursively.
    """
    key = (u, v)
    hit = _BRACKET_CACHE.get(key)
    if hit is not None:
        return hit
    budget = _budget or _Budget(REWRITE_BUDGET)
    budget.spend()
    if u == v:
        result: dict = {}
    else:
        ku, kv = order_key(u), order_key(v)
        if ku < kv:
            result = {t: -c for t, c in bracket_hall(v, u, budget).items()}
        elif isinstance(u, str) or order_key(u[1]) <= kv:
            result = {(u, v): ONE}
        else:
            x, y = u
            acc: dict = {}
            for h, c in bracket_hall(x, v, budget).items():
                for t, d in bracket_hall(h, y, budget).items():
                    _add_into(acc, t, c * d)
            for g, c in bracket_hall(y, v, budget).items():
                for t, d in bracket_hall(x, g, budget).items():
                    _add_into(acc, t, c * d)
            result = acc
    with _BRACKET_LOCK:
        _BRACKET_CACHE[key] = result
    return result


def _rewrite_tree(t: Tree, budget: _Budget) -> dict:
    if isinstance(t, str):
        return {t: ONE}
    left = _rewrite_tree(t[0], budget)
    right = _rewrite_tree(t[1], budget)
    acc: dict = {}
    for u, a in left.items():
        for v, b in right.items():
            ab = a * b
            for w, c in bracket_hall(u, v, budget).items():
                _add_into(acc, w, ab * c)
    return acc


def hall_rewrite(expr) -> LieSeries:
    """Rewrite a tree or a linear combination of trees into Hall coordinates."""
    if isinstance(expr, (str, tuple)):
        expr = {expr: ONE}
    elif isinstance(expr, LieSeries):
        expr = expr.terms
    budget = _Budget(REWRITE_BUDGET)
    acc: dict = {}
    for t, c in expr.items():
        c = RatFunc.coerce(c)
        for w, d in _rewrite_tree(t, budget).items():
            _add_into(acc, w, c * d)
    out = LieSeries()
    out.terms = acc
    return out


def hall_coords_by_solve(f: FreeElement, max_len: int = 7) -> LieSeries:
    """Hall coordinates of ``f`` found by an exact linear solve.

    Independent of :func:`hall_rewrite`: each homogeneous component of ``f``
    is solved against the expansions of all Hall elements of that length.
    Raises :class:`NotInLie` when no solution exists.
    """
    degrees = sorted({len(w) for w in f.terms})
    out: dict = {}
    for n in degrees:
        if n == 0 or n > max_len:
            raise NotInLie(f"component of degree {n} is outside the supported range")
        basis = [h.tree for h in hall_generate(n) if h.length == n]
        ech = _solver_for_length(n)
        part = {w: c for w, c in f.terms.items() if len(w) == n}
        coords = ech.solve(part)
        if coords is None:
            raise NotInLie(f"degree-{n} component is not a Lie element")
        for i, c in coords.items():
            out[basis[i]] = c
    return LieSeries(out)


@lru_cache(maxsize=None)
def _solver_for_length(n: int):
    from .linalg import Echelon

    ech = Echelon(key=lambda w: w)
    for h in hall_generate(n):
        if h.length == n:
            ech.add(expand(h.tree).terms)
    return ech
