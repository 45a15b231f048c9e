"""Expressions over the generators, parsed into a small AST.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := ["+" | "-"] factor (factor | "*" factor | "/" factor)*
    factor := atom ("^" ["-"] nat)?
    atom   := nat | "q" | "A" | "B" | "C" | "al" | "be" | "ga" | "Om"
            | "[" expr "," expr "]" | "(" expr ")" | "H" nat

Juxtaposition is multiplication and binds left to right, like ``*``.  A
sign may open any term so that printed normal forms parse back.  Division
and negative exponents are accepted only where the operand is a scalar;
that is checked on evaluation, not by the parser.  ``α β γ Ω`` are aliases
of ``al be ga Om``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .freealg import FreeElement, lie_bracket_free
from .hall import LieSeries, hall_element, hall_rewrite
from .scalar import ONE, Q, RatFunc
from .uaw import UAW, UawElement, default_algebra

GENERATORS = ("A", "B", "C", "al", "be", "ga", "Om")
ALIASES = {"α": "al", "β": "be", "γ": "ga", "Ω": "Om"}
_NAMES = sorted(GENERATORS + ("q", "H") + tuple(ALIASES), key=len, reverse=True)
_ATOM_START = frozenset({"nat", "q", "H", "[", "("} | set(GENERATORS))


class ExprSyntaxError(ValueError):
    """``offset`` is a byte offset into the UTF-8 encoded input."""

    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        exp = f"; expected one of {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"{message} at byte {offset}{exp}")


class EvalError(ValueError):
    pass


# --- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class QSym:
    pass


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class HallRef:
    index: int


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


@dataclass(frozen=True)
class Bracket:
    left: "Expr"
    right: "Expr"


Expr = Union[Num, QSym, Gen, HallRef, Neg, Add, Sub, Mul, Div, Pow, Bracket]


# --- tokens --------------------------------------------------------------------

def _tokenize(text: str) -> list:
    toks = []
    i, n = 0, len(text)
    byte = lambda k: len(text[:k].encode("utf-8"))
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("nat", int(text[i:j]), byte(i)))
            i = j
            continue
        if ch in "+-*/^[](),":
            toks.append((ch, ch, byte(i)))
            i += 1
            continue
        for name in _NAMES:
            if text.startswith(name, i):
                canon = ALIASES.get(name, name)
                toks.append((canon, canon, byte(i)))
                i += len(name)
                break
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r}", byte(i),
                                  _ATOM_START | {"+", "-", "*", "/", "^", "]", ")", ","})
    toks.append(("end", None, byte(n)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos][0]

    def take(self, *kinds):
        kind, value, off = self.toks[self.pos]
        if kinds and kind not in kinds:
            shown = "end of input" if kind == "end" else repr(value)
            raise ExprSyntaxError(f"unexpected {shown}", off, kinds)
        self.pos += 1
        return value

    def expr(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        sign = None
        if self.peek() in ("+", "-"):
            sign = self.take()
        node = self.factor()
        while True:
            kind = self.peek()
            if kind == "*":
                self.take()
                node = Mul(node, self.factor())
            elif kind == "/":
                self.take()
                node = Div(node, self.factor())
            elif kind in _ATOM_START:
                node = Mul(node, self.factor())
            else:
                break
        return Neg(node) if sign == "-" else node

    def factor(self):
        node = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            k = self.take("nat")
            node = Pow(node, -k if neg else k)
        return node

    def atom(self):
        kind = self.peek()
        if kind == "nat":
            return Num(self.take())
        if kind == "q":
            self.take()
            return QSym()
        if kind in GENERATORS:
            return Gen(self.take())
        if kind == "H":
            self.take()
            return HallRef(self.take("nat"))
        if kind == "[":
            self.take()
            left = self.expr()
            self.take(",")
            right = self.expr()
            self.take("]")
            return Bracket(left, right)
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        self.take(*_ATOM_START)


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    node = p.expr()
    p.take("end")
    return node


# --- printing --------------------------------------------------------------------

_PREC = {Add: 0, Sub: 0, Neg: 1, Mul: 2, Div: 2, Pow: 3}


def _prec(node) -> int:
    return _PREC.get(type(node), 4)


def _wrap(node, minimum: int) -> str:
    s = format_expr(node)
    return f"({s})" if _prec(node) < minimum else s


def format_expr(node: Expr) -> str:
    """Print with the fewest parentheses that parse back to the same tree."""
    t = type(node)
    if t is Num:
        return str(node.value)
    if t is QSym:
        return "q"
    if t is Gen:
        return node.name
    if t is HallRef:
        return f"H{node.index}"
    if t is Neg:
        return "-" + _wrap(node.arg, 2)
    if t in (Add, Sub):
        op = " + " if t is Add else " - "
        return format_expr(node.left) + op + _wrap(node.right, 1)
    if t in (Mul, Div):
        op = "*" if t is Mul else "/"
        return _wrap(node.left, 2) + op + _wrap(node.right, 3)
    if t is Pow:
        return f"{_wrap(node.base, 4)}^{node.exp}"
    if t is Bracket:
        return f"[{format_expr(node.left)}, {format_expr(node.right)}]"
    raise TypeError(node)


# --- evaluation ------------------------------------------------------------------

class _Domain:
    """Target algebra for :func:`_evaluate`; scalars stay RatFunc until mixed."""

    def gen(self, name):
        raise NotImplementedError

    def hall(self, n):
        raise NotImplementedError

    def mul(self, x, y):
        return x * y

    def bracket(self, x, y):
        raise NotImplementedError

    def lift(self, c: RatFunc):
        raise NotImplementedError


class _Delta(_Domain):
    def __init__(self, alg: UAW):
        self.alg = alg

    def gen(self, name):
        return self.alg.omega if name == "Om" else self.alg.gen(name)

    def hall(self, n):
        return self.alg.H(n)

    def bracket(self, x, y):
        return self.alg.bracket(x, y)

    def lift(self, c):
        return self.alg.scalar(c)


class _Free(_Domain):
    def __init__(self, alg: UAW):
        self.alg = alg

    def gen(self, name):
        alg = self.alg
        table = {"al": alg.free_alpha, "be": alg.free_beta, "ga": alg.free_gamma, "Om": alg.free_omega}
        return table[name]() if name in table else FreeElement.word(name)

    def hall(self, n):
        return LieSeries.of(hall_element(n)).to_free()

    def bracket(self, x, y):
        return lie_bracket_free(x, y)

    def lift(self, c):
        return FreeElement.scalar(c)


class _Lie(_Domain):
    """Lie expressions only: brackets, generators, H n, sums and scalar multiples."""

    def gen(self, name):
        if name not in ("A", "B", "C"):
            raise EvalError(f"{name} is not a Lie generator")
        return LieSeries.of(name)

    def hall(self, n):
        return LieSeries.of(hall_element(n))

    def mul(self, x, y):
        raise EvalError("product of two non-scalars is not a Lie expression")

    def bracket(self, x, y):
        return x.bracket(y)

    def lift(self, c):
        raise EvalError("a nonzero scalar is not a Lie element")


def _is_scalar(x) -> bool:
    return isinstance(x, RatFunc)


def _evaluate(node, dom: _Domain):
    t = type(node)
    if t is Num:
        return RatFunc.coerce(node.value)
    if t is QSym:
        return Q
    if t is Gen:
        return dom.gen(node.name)
    if t is HallRef:
        if node.index < 1:
            raise EvalError("Hall indices start at 1")
        return dom.hall(node.index)
    if t is Neg:
        return -_evaluate(node.arg, dom)
    if t in (Add, Sub):
        x, y = _evaluate(node.left, dom), _evaluate(node.right, dom)
        if _is_scalar(x) != _is_scalar(y):
            x, y = (dom.lift(x), y) if _is_scalar(x) else (x, dom.lift(y))
        return x + y if t is Add else x - y
    if t is Mul:
        x, y = _evaluate(node.left, dom), _evaluate(node.right, dom)
        if _is_scalar(x):
            return x * y if _is_scalar(y) else y.scale(x)
        if _is_scalar(y):
            return x.scale(y)
        return dom.mul(x, y)
    if t is Div:
        x, y = _evaluate(node.left, dom), _evaluate(node.right, dom)
        if not _is_scalar(y):
            raise EvalError("division by a non-scalar")
        return x / y if _is_scalar(x) else x.scale(ONE / y)
    if t is Pow:
        x = _evaluate(node.base, dom)
        if _is_scalar(x):
            return x ** node.exp
        if node.exp < 0:
            raise EvalError("negative power of a non-scalar")
        out = dom.lift(ONE)
        for _ in range(node.exp):
            out = dom.mul(out, x)
        return out
    if t is Bracket:
        x, y = _evaluate(node.left, dom), _evaluate(node.right, dom)
        if _is_scalar(x) or _is_scalar(y):
            return RatFunc.coerce(0)
        return dom.bracket(x, y)
    raise TypeError(node)


def _ensure(value, dom):
    return dom.lift(value) if _is_scalar(value) else value


def to_uaw(node: Expr, alg: UAW | None = None) -> UawElement:
    dom = _Delta(alg or default_algebra())
    return _ensure(_evaluate(node, dom), dom)


def to_free(node: Expr, alg: UAW | None = None) -> FreeElement:
    dom = _Free(alg or default_algebra())
    return _ensure(_evaluate(node, dom), dom)


def to_lie(node: Expr) -> LieSeries:
    """Hall coordinates of a Lie expression; raises :class:`EvalError` otherwise."""
    value = _evaluate(node, _Lie())
    if _is_scalar(value):
        if value:
            raise EvalError("a nonzero scalar is not a Lie element")
        return LieSeries()
    return hall_rewrite(value)
