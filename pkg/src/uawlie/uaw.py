"""The universal Askey-Wilson algebra in its irreducible (PBW-type) basis.

Elements are sparse maps from normal words ``A^i B^j C^k al^r be^s ga^t``
(exponent tuples ``(i, j, k, r, s, t)``) to :class:`RatFunc`.  The central
elements alpha, beta, gamma are exponent slots rather than letters.

Products are computed by rewriting words over A, B, C: the leftmost
adjacent inversion ``BA``, ``CA`` or ``CB`` is replaced using

    BA = q^2 AB + (q^3 - q^-1) C - (q^2 - 1) ga
    CA = q^-2 AC - (q - q^-3) B + (1 - q^-2) be
    CB = q^2 BC + (q^3 - q^-1) A - (q^2 - 1) al

until no inversion is left.  Each substitution either keeps the length and
removes one inversion or shortens the word, so rewriting terminates.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, replace
from typing import Mapping, NamedTuple

from .freealg import FreeElement
from .hall import Tree, hall_element
from .scalar import ONE, Q, RatFunc, ZeroArgument

__all__ = [
    "NormalWord",
    "OmegaWord",
    "RewriteRules",
    "DEFAULT_RULES",
    "UawElement",
    "CommPoly",
    "UAW",
    "default_algebra",
    "inversion_count",
    "format_normal_word",
]

NormalWord = tuple  # (i, j, k, r, s, t)
OmegaWord = tuple   # (i, j, k, l, r, s, t) with i*j*k == 0

_QP = Q + Q ** -1
_QM = Q - Q ** -1


def inversion_count(word: str) -> int:
    """Number of pairs j < k with letter_j > letter_k."""
    count = 0
    seen = {"A": 0, "B": 0, "C": 0}
    for ch in reversed(word):
        if ch == "B":
            count += seen["A"]
        elif ch == "C":
            count += seen["A"] + seen["B"]
        seen[ch] += 1
    return count


class Rule(NamedTuple):
    swap: RatFunc      # coefficient of the swapped pair
    letter: RatFunc    # coefficient of the third generator
    central: RatFunc   # coefficient of the central element


@dataclass(frozen=True)
class RewriteRules:
    """Coefficients of the three inversion substitutions."""

    BA: Rule
    CA: Rule
    CB: Rule

    def perturbed(self, pair: str, slot: str, delta=1) -> "RewriteRules":
        rule = getattr(self, pair)
        rule = rule._replace(**{slot: getattr(rule, slot) + delta})
        return replace(self, **{pair: rule})

    def slots(self):
        for pair in ("BA", "CA", "CB"):
            for slot in Rule._fields:
                yield pair, slot


DEFAULT_RULES = RewriteRules(
    BA=Rule(Q ** 2, Q * _QP * _QM, -(Q * _QM)),
    CA=Rule(Q ** -2, -(Q ** -1) * _QP * _QM, Q ** -1 * _QM),
    CB=Rule(Q ** 2, Q * _QP * _QM, -(Q * _QM)),
)

# pair -> (third letter, central slot position in the normal word)
_PAIR_DATA = {"BA": ("C", 5), "CA": ("B", 4), "CB": ("A", 3)}
_GREEK = ("al", "be", "ga")


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


def format_normal_word(w: NormalWord) -> str:
    names = ("A", "B", "C") + _GREEK
    parts = []
    for name, e in zip(names, w):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return " ".join(parts) or "1"


def format_omega_word(w: OmegaWord) -> str:
    names = ("A", "B", "C", "Om") + _GREEK
    parts = []
    for name, e in zip(names, w):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return " ".join(parts) or "1"


def _normal_key(w: NormalWord):
    return (sum(w), w)


class UawElement:
    """An element of the algebra, tied to the :class:`UAW` instance that made it."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "UAW", terms: Mapping | None = None):
        self.alg = alg
        acc: dict = {}
        for w, c in (terms or {}).items():
            _add_into(acc, tuple(w), RatFunc.coerce(c))
        self.terms = acc

    @classmethod
    def _raw(cls, alg, terms):
        obj = cls.__new__(cls)
        obj.alg = alg
        obj.terms = terms
        return obj

    def _coerce(self, other) -> "UawElement":
        if isinstance(other, UawElement):
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(acc, w, c)
        return UawElement._raw(self.alg, acc)

    __radd__ = __add__

    def __neg__(self):
        return UawElement._raw(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "UawElement":
        c = RatFunc.coerce(c)
        if not c:
            return UawElement._raw(self.alg, {})
        return UawElement._raw(self.alg, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, UawElement):
            return self.alg.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(ONE / RatFunc.coerce(c))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, UawElement):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def words(self):
        return sorted(self.terms, key=_normal_key)

    def items(self):
        return [(w, self.terms[w]) for w in self.words()]

    def top_part(self) -> "UawElement":
        """The terms of maximal total degree."""
        n = self.alg.filtration_degree(self)
        return UawElement._raw(self.alg, {w: c for w, c in self.terms.items() if sum(w) == n})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in reversed(self.words()):
            c = self.terms[w]
            word = format_normal_word(w)
            if word == "1":
                parts.append(f"({c})" if c.needs_parens() else str(c))
            elif c == ONE:
                parts.append(word)
            elif c == -ONE:
                parts.append(f"-1 {word}")
            else:
                parts.append(f"({c}) {word}" if c.needs_parens() else f"{c} {word}")
        out = parts[0]
        for p in parts[1:]:
            out += " + " + p
        return out

    def __repr__(self):
        return f"UawElement({self})"

    def to_json(self) -> list:
        return [
            {**dict(zip("ijkrst", w)), "coeff": self.terms[w].to_json()}
            for w in self.words()
        ]


class CommPoly:
    """A polynomial in commuting Abar, Bbar, Cbar over Q(q)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        acc: dict = {}
        for e, c in (terms or {}).items():
            _add_into(acc, tuple(e), RatFunc.coerce(c))
        self.terms = acc

    @classmethod
    def var(cls, n: int) -> "CommPoly":
        e = [0, 0, 0]
        e[n] = 1
        return cls({tuple(e): ONE})

    @classmethod
    def const(cls, c) -> "CommPoly":
        return cls({(0, 0, 0): c})

    def __add__(self, other):
        if not isinstance(other, CommPoly):
            other = CommPoly.const(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            _add_into(acc, e, c)
        out = CommPoly()
        out.terms = acc
        return out

    __radd__ = __add__

    def __neg__(self):
        out = CommPoly()
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, CommPoly):
            other = CommPoly.const(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, CommPoly):
            c = RatFunc.coerce(other)
            out = CommPoly()
            out.terms = {e: v * c for e, v in self.terms.items()} if c else {}
            return out
        acc: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                _add_into(acc, (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]), c1 * c2)
        out = CommPoly()
        out.terms = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = CommPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, CommPoly):
            return self.terms == other.terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            c = self.terms[e]
            mono = " ".join(
                (n if k == 1 else f"{n}^{k}") for n, k in zip(("Ab", "Bb", "Cb"), e) if k
            ) or "1"
            if mono == "1":
                parts.append(f"({c})" if c.needs_parens() else str(c))
            elif c == ONE:
                parts.append(mono)
            else:
                parts.append(f"({c}) {mono}" if c.needs_parens() else f"{c} {mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"CommPoly({self})"

    def to_json(self) -> list:
        return [{"a": e[0], "b": e[1], "c": e[2], "coeff": self.terms[e].to_json()}
                for e in sorted(self.terms, key=lambda e: (sum(e), e))]


class UAW:
    """The algebra together with its rewriting rules and memo tables.

    Memo tables are filled under a lock and only ever grow, so concurrent
    readers see either a missing entry or a finished one.
    """

    def __init__(self, rules: RewriteRules = DEFAULT_RULES):
        self.rules = rules
        self._rule_table = {
            pair: (getattr(rules, pair), third, slot)
            for pair, (third, slot) in _PAIR_DATA.items()
        }
        self._memo = {"left": {}, "right": {}}
        self._lock = threading.Lock()
        self._lie_cache: dict = {}
        self._power_cache: dict = {}
        self._omega_cache: dict = {}
        self._auto_cache: dict = {}

    # --- construction ---------------------------------------------------
    def element(self, terms: Mapping) -> UawElement:
        return UawElement(self, terms)

    def zero(self) -> UawElement:
        return UawElement._raw(self, {})

    def one(self) -> UawElement:
        return UawElement._raw(self, {(0, 0, 0, 0, 0, 0): ONE})

    def scalar(self, c) -> UawElement:
        c = RatFunc.coerce(c)
        return UawElement._raw(self, {(0, 0, 0, 0, 0, 0): c} if c else {})

    def monomial(self, i=0, j=0, k=0, r=0, s=0, t=0, c=ONE) -> UawElement:
        return UawElement(self, {(i, j, k, r, s, t): c})

    def gen(self, name: str) -> UawElement:
        pos = {"A": 0, "B": 1, "C": 2, "al": 3, "be": 4, "ga": 5}[name]
        e = [0] * 6
        e[pos] = 1
        return UawElement._raw(self, {tuple(e): ONE})

    @property
    def A(self):
        return self.gen("A")

    @property
    def B(self):
        return self.gen("B")

    @property
    def C(self):
        return self.gen("C")

    @property
    def alpha(self):
        return self.gen("al")

    @property
    def beta(self):
        return self.gen("be")

    @property
    def gamma(self):
        return self.gen("ga")

    # --- rewriting ------------------------------------------------------
    def reduce_word(self, word: str, strategy: str = "left") -> dict:
        """Normal form of a word over A, B, C as ``{normal word: coeff}``."""
        memo = self._memo[strategy]
        hit = memo.get(word)
        if hit is not None:
            return hit
        result = self._reduce_uncached(word, strategy, memo)
        return result

    def _reduce_uncached(self, word: str, strategy: str, memo: dict) -> dict:
        # iterative deepening would be cleaner, but recursion depth is bounded
        # by length + inversions, which stays far below the interpreter limit
        pos = -1
        if strategy == "left":
            for p in range(len(word) - 1):
                if word[p] > word[p + 1]:
                    pos = p
                    break
        else:
            for p in range(len(word) - 2, -1, -1):
                if word[p] > word[p + 1]:
                    pos = p
                    break
        if pos < 0:
            result = {(word.count("A"), word.count("B"), word.count("C"), 0, 0, 0): ONE}
        else:
            pair = word[pos:pos + 2]
            rule, third, slot = self._rule_table[pair]
            head, tail = word[:pos], word[pos + 2:]
            result = {}
            if rule.swap:
                for w, c in self.reduce_word(head + pair[::-1] + tail, strategy).items():
                    _add_into(result, w, c * rule.swap)
            if rule.letter:
                for w, c in self.reduce_word(head + third + tail, strategy).items():
                    _add_into(result, w, c * rule.letter)
            if rule.central:
                for w, c in self.reduce_word(head + tail, strategy).items():
                    w2 = list(w)
                    w2[slot] += 1
                    _add_into(result, tuple(w2), c * rule.central)
        with self._lock:
            memo[word] = result
        return result

    def reduce(self, word: str, r: int = 0, s: int = 0, t: int = 0, c=ONE,
               strategy: str = "left") -> UawElement:
        """Normal form of ``c * word * al^r be^s ga^t``."""
        c = RatFunc.coerce(c)
        acc: dict = {}
        for w, v in self.reduce_word(word, strategy).items():
            _add_into(acc, (w[0], w[1], w[2], w[3] + r, w[4] + s, w[5] + t), v * c)
        return UawElement._raw(self, acc)

    def from_free(self, f: FreeElement) -> UawElement:
        """The canonical map from the free algebra."""
        acc: dict = {}
        for word, c in f.terms.items():
            for w, v in self.reduce_word(word).items():
                _add_into(acc, w, v * c)
        return UawElement._raw(self, acc)

    # --- products -------------------------------------------------------
    def mul(self, x: UawElement, y: UawElement) -> UawElement:
        acc: dict = {}
        memo = self._memo["left"]
        for u, a in x.terms.items():
            ustr = "A" * u[0] + "B" * u[1] + "C" * u[2]
            for v, b in y.terms.items():
                if u[2] == 0 and (u[1] == 0 or v[0] == 0) or (v[0] == 0 and v[1] == 0):
                    # already in normal order
                    w = (u[0] + v[0], u[1] + v[1], u[2] + v[2],
                         u[3] + v[3], u[4] + v[4], u[5] + v[5])
                    _add_into(acc, w, a * b)
                    continue
                word = ustr + "A" * v[0] + "B" * v[1] + "C" * v[2]
                nf = memo.get(word)
                if nf is None:
                    nf = self.reduce_word(word)
                ab = a * b
                for w, c in nf.items():
                    _add_into(acc, (w[0], w[1], w[2], w[3] + u[3] + v[3],
                                    w[4] + u[4] + v[4], w[5] + u[5] + v[5]), c * ab)
        return UawElement._raw(self, acc)

    def bracket(self, x: UawElement, y: UawElement) -> UawElement:
        return self.mul(x, y) - self.mul(y, x)

    # --- Lie monomials --------------------------------------------------
    def lie(self, t: Tree) -> UawElement:
        """Image of a bracket tree under the canonical map."""
        hit = self._lie_cache.get(t)
        if hit is not None:
            return hit
        if isinstance(t, str):
            result = self.gen(t)
        else:
            result = self.bracket(self.lie(t[0]), self.lie(t[1]))
        with self._lock:
            self._lie_cache[t] = result
        return result

    def H(self, index: int) -> UawElement:
        return self.lie(hall_element(index))

    def lie_series(self, series) -> UawElement:
        out = self.zero()
        for t, c in series.terms.items():
            out = out + self.lie(t).scale(c)
        return out

    # --- distinguished elements ----------------------------------------
    def free_alpha(self) -> FreeElement:
        return _free_central("A", "B", "C")

    def free_beta(self) -> FreeElement:
        return _free_central("B", "C", "A")

    def free_gamma(self) -> FreeElement:
        return _free_central("C", "A", "B")

    def free_omega(self) -> FreeElement:
        """The first Casimir expression, written in the free algebra."""
        w = FreeElement.word
        q = Q
        return (w("ABC", q) + w("AA", q**2) + w("BB", q**-2) + w("CC", q**2)
                - w("A") * self.free_alpha() * q - w("B") * self.free_beta() * q**-1
                - w("C") * self.free_gamma() * q)

    def casimir_expressions(self) -> list:
        """The six expressions for the Casimir element, as elements here."""
        A, B, C = self.A, self.B, self.C
        al, be, ga = self.alpha, self.beta, self.gamma
        q = Q
        w = lambda s: self.reduce(s)
        return [
            w("ABC") * q + A * A * q**2 + B * B * q**-2 + C * C * q**2
            - A * al * q - B * be * q**-1 - C * ga * q,
            w("BCA") * q + A * A * q**2 + B * B * q**2 + C * C * q**-2
            - A * al * q - B * be * q - C * ga * q**-1,
            w("CAB") * q + A * A * q**-2 + B * B * q**2 + C * C * q**2
            - A * al * q**-1 - B * be * q - C * ga * q,
            w("CBA") * q**-1 + A * A * q**-2 + B * B * q**2 + C * C * q**-2
            - A * al * q**-1 - B * be * q - C * ga * q**-1,
            w("ACB") * q**-1 + A * A * q**-2 + B * B * q**-2 + C * C * q**2
            - A * al * q**-1 - B * be * q**-1 - C * ga * q,
            w("BAC") * q**-1 + A * A * q**2 + B * B * q**-2 + C * C * q**-2
            - A * al * q - B * be * q**-1 - C * ga * q**-1,
        ]

    @property
    def omega(self) -> UawElement:
        hit = self._omega_cache.get("omega")
        if hit is None:
            hit = self.casimir_expressions()[0]
            self._omega_cache["omega"] = hit
        return hit

    def free_r(self) -> list:
        """The nine defining relations r0..r8 as elements of the free algebra."""
        from .freealg import lie_bracket_free

        A, B, C = (FreeElement.word(x) for x in "ABC")
        al, be, ga = self.free_alpha(), self.free_beta(), self.free_gamma()
        pairs = [(A, al), (B, be), (C, ga), (B, al), (C, be), (A, ga), (C, al), (A, be), (B, ga)]
        return [lie_bracket_free(x, d) for x, d in pairs]

    def constants(self) -> dict:
        """alpha, beta, gamma, omega and the images of r0..r8."""
        return {
            "alpha": self.from_free(self.free_alpha()),
            "beta": self.from_free(self.free_beta()),
            "gamma": self.from_free(self.free_gamma()),
            "omega": self.omega,
            "r": [self.from_free(r) for r in self.free_r()],
        }

    # --- filtration -----------------------------------------------------
    def filtration_degree(self, x: UawElement) -> int:
        if not x.terms:
            raise ZeroArgument("0 lies in every filtration level")
        return max(sum(w) for w in x.terms)

    def in_filtration(self, x: UawElement, n: int) -> bool:
        return not x.terms or self.filtration_degree(x) <= n

    # --- Omega basis ----------------------------------------------------
    def omega_power(self, l: int) -> UawElement:
        key = ("pow", l)
        hit = self._omega_cache.get(key)
        if hit is None:
            hit = self.one() if l == 0 else self.omega_power(l - 1) * self.omega
            self._omega_cache[key] = hit
        return hit

    def from_omega_basis(self, coords: Mapping) -> UawElement:
        out = self.zero()
        for (i, j, k, l, r, s, t), c in coords.items():
            out = out + (self.monomial(i, j, k, r, s, t) * self.omega_power(l)).scale(c)
        return out

    def to_omega_basis(self, x: UawElement) -> dict:
        """Coordinates in the basis ``A^i B^j C^k Om^l al^r be^s ga^t`` (ijk = 0).

        A normal word with ``ijk > 0`` is the top-degree part (up to a nonzero
        scalar) of ``A^(i-1) B^(j-1) C^(k-1) Om``, so such words are peeled off
        from the top filtration degree downwards.
        """
        work = dict(x.terms)
        out: dict = {}
        while work:
            # ijk = 0 terms transfer directly; they are never produced again
            # at higher degree by the peeling below
            w = max(work, key=_normal_key)
            c = work.pop(w)
            i, j, k, r, s, t = w
            if i * j * k == 0:
                _add_into(out, (i, j, k, 0, r, s, t), c)
                continue
            m = min(i, j, k)
            ow = (i - m, j - m, k - m, m, r, s, t)
            image = self.from_omega_basis({ow: ONE})
            lead = image.terms[w]
            factor = c / lead
            _add_into(out, ow, factor)
            for w2, c2 in image.terms.items():
                if w2 == w:
                    continue
                _add_into(work, w2, -(c2 * factor))
        return out

    # --- automorphisms ----------------------------------------------------
    def _images(self, name: str) -> dict:
        hit = self._auto_cache.get(name)
        if hit is not None:
            return hit
        A, B, C = self.A, self.B, self.C
        if name == "rho":
            imgs = {"A": B, "B": C, "C": A, "al": self.beta, "be": self.gamma, "ga": self.alpha}
        elif name == "sigma":
            imgs = {"A": B, "B": A, "C": C + self.bracket(A, B) / _QM,
                    "al": self.beta, "be": self.alpha, "ga": self.gamma}
        else:
            raise ValueError(name)
        self._auto_cache[name] = imgs
        return imgs

    def _image_power(self, name: str, gen: str, n: int) -> UawElement:
        key = (name, gen, n)
        hit = self._power_cache.get(key)
        if hit is None:
            hit = self.one() if n == 0 else self._image_power(name, gen, n - 1) * self._images(name)[gen]
            with self._lock:
                self._power_cache[key] = hit
        return hit

    def apply_auto(self, name: str, x: UawElement) -> UawElement:
        out = self.zero()
        for w, c in x.terms.items():
            img = self.one()
            for gen, e in zip(("A", "B", "C", "al", "be", "ga"), w):
                if e:
                    img = img * self._image_power(name, gen, e)
            out = out + img.scale(c)
        return out

    def rho(self, x: UawElement) -> UawElement:
        return self.apply_auto("rho", x)

    def sigma(self, x: UawElement) -> UawElement:
        return self.apply_auto("sigma", x)

    # --- commutative image ------------------------------------------------
    def psi_images(self) -> dict:
        Ab, Bb, Cb = CommPoly.var(0), CommPoly.var(1), CommPoly.var(2)
        return {
            "A": Ab, "B": Bb, "C": Cb,
            "al": Ab * _QP + Bb * Cb,
            "be": Bb * _QP + Ab * Cb,
            "ga": Cb * _QP + Ab * Bb,
        }

    def psi(self, x: UawElement) -> CommPoly:
        imgs = self.psi_images()
        out = CommPoly()
        for w, c in x.terms.items():
            term = CommPoly.const(c)
            for gen, e in zip(("A", "B", "C", "al", "be", "ga"), w):
                if e:
                    term = term * imgs[gen] ** e
            out = out + term
        return out

    def psi_free(self, f: FreeElement) -> CommPoly:
        """Commutative image of a free-algebra element (letters commute)."""
        out = CommPoly()
        for word, c in f.terms.items():
            out = out + CommPoly({(word.count("A"), word.count("B"), word.count("C")): c})
        return out


def _free_central(x: str, y: str, z: str) -> FreeElement:
    """(q + q^-1) X + (q Y Z - q^-1 Z Y) / (q - q^-1)."""
    return FreeElement({x: _QP, y + z: Q / _QM, z + y: -(Q ** -1) / _QM})


_DEFAULT = None
_DEFAULT_LOCK = threading.Lock()


def default_algebra() -> UAW:
    global _DEFAULT
    if _DEFAULT is None:
        with _DEFAULT_LOCK:
            if _DEFAULT is None:
                _DEFAULT = UAW()
    return _DEFAULT
