"""Per-algebra evaluation context shared by the checks."""

from __future__ import annotations

import threading
import weakref

from ..freealg import FreeElement
from ..hall import expand, hall_element, left_normed
from ..scalar import Q
from ..uaw import UAW, default_algebra

q = Q
qp = Q + Q ** -1
qm = Q - Q ** -1


class Context:
    """Shortcuts for writing statements: ``L(n)`` is the n-th standard Lie
    monomial in the algebra, ``F(n)`` the n-th Hall element in the free
    algebra, ``LN``/``FLN`` their left-normed analogues."""

    def __init__(self, alg: UAW):
        self.alg = alg
        self.cache: dict = {}
        self.lock = threading.Lock()

    def L(self, n: int):
        return self.alg.H(n)

    def LN(self, word: str):
        return self.alg.lie(left_normed(word))

    def m(self, i=0, j=0, k=0, r=0, s=0, t=0):
        return self.alg.monomial(i, j, k, r, s, t)

    @staticmethod
    def F(n: int) -> FreeElement:
        return expand(hall_element(n))

    @staticmethod
    def FLN(word: str) -> FreeElement:
        return expand(left_normed(word))

    def memo(self, key, build):
        hit = self.cache.get(key)
        if hit is None:
            hit = build()
            with self.lock:
                self.cache[key] = hit
        return hit


_CONTEXTS: "weakref.WeakKeyDictionary[UAW, Context]" = weakref.WeakKeyDictionary()
_LOCK = threading.Lock()


def context_for(alg: UAW | None = None) -> Context:
    alg = alg or default_algebra()
    with _LOCK:
        ctx = _CONTEXTS.get(alg)
        if ctx is None:
            ctx = _CONTEXTS[alg] = Context(alg)
    return ctx
