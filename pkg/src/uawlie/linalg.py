"""Exact linear algebra over Q(q).

Two elimination routes are provided:

* :func:`bareiss` -- fraction-free elimination over Z[q].  Each row is first
  cleared of denominators (a unit rescaling over Q(q)), then the classical
  Bareiss update ``(p*a_ij - a_ik*a_pj) / prev`` is applied; every division is
  checked to be exact.  The pivots are the leading minors, kept for factor
  reports.  :func:`rank` and :func:`det` are built on it.
* :class:`Echelon` -- an incremental row-echelon basis over the field, used
  to solve and to decide span membership.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from flint import fmpz_poly

from .scalar import ONE, ZERO, RatFunc, ratfunc_factor_report

__all__ = [
    "MissingBasisLabel",
    "NotInSpan",
    "NonExactDivision",
    "BasisIndex",
    "ExactMatrix",
    "expansion_matrix",
    "bareiss",
    "BareissResult",
    "rank",
    "det",
    "in_span",
    "Echelon",
    "support_basis",
    "ALLOWED_CYCLOTOMIC_ORDERS",
    "is_admissible_pivot",
]


class MissingBasisLabel(KeyError):
    pass


class NotInSpan(Exception):
    """Raised (or returned) when a target is outside the span of a family."""


class NonExactDivision(ArithmeticError):
    pass


def _terms(v) -> Mapping:
    if isinstance(v, Mapping):
        return v
    return v.terms


class BasisIndex:
    """An ordered list of distinct basis labels with position lookup."""

    def __init__(self, labels: Iterable[Hashable]):
        self.labels = list(labels)
        self.pos = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.pos) != len(self.labels):
            raise ValueError("basis labels must be distinct")

    def __len__(self):
        return len(self.labels)

    def __contains__(self, label):
        return label in self.pos

    def index(self, label) -> int:
        try:
            return self.pos[label]
        except KeyError:
            raise MissingBasisLabel(label) from None


def support_basis(vectors: Iterable, key=None, reverse=False) -> BasisIndex:
    """The union of supports, sorted by ``key``."""
    labels = set()
    for v in vectors:
        labels.update(_terms(v))
    return BasisIndex(sorted(labels, key=key, reverse=reverse))


@dataclass
class ExactMatrix:
    rows: int
    cols: int
    entries: list  # row-major list of lists of RatFunc

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry count does not match the shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [[RatFunc.coerce(x) for x in r] for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return ExactMatrix(self.rows, other.cols, out)

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.entries == other.entries

    def sparse_rows(self) -> list:
        return [{j: x for j, x in enumerate(r) if x} for r in self.entries]

    def to_json(self) -> str:
        return json.dumps({"rows": self.rows, "cols": self.cols,
                           "entries": [[x.to_json() for x in r] for r in self.entries]})

    @classmethod
    def from_json(cls, text: str) -> "ExactMatrix":
        obj = json.loads(text)
        return cls(obj["rows"], obj["cols"],
                   [[RatFunc.from_json(x) for x in r] for r in obj["entries"]])


def expansion_matrix(vectors: Sequence, basis: BasisIndex) -> ExactMatrix:
    """Row v, column b holds the coefficient of basis label b in vector v."""
    out = []
    for v in vectors:
        row = [ZERO] * len(basis)
        for lab, c in _terms(v).items():
            row[basis.index(lab)] = RatFunc.coerce(c)
        out.append(row)
    return ExactMatrix(len(out), len(basis), out)


# --- fraction-free elimination ----------------------------------------------

def _lcm(a: fmpz_poly, b: fmpz_poly) -> fmpz_poly:
    if a.is_one():
        return b
    if b.is_one():
        return a
    return (a * b) // a.gcd(b)


def _clear_row(row: Mapping[int, RatFunc]):
    """Scale a sparse row into Z[q]; returns (poly row, scale as RatFunc)."""
    den = fmpz_poly([1])
    for x in row.values():
        den = _lcm(den, x.den)
    out = {}
    for j, x in row.items():
        out[j] = x.num * (den // x.den)
    return out, RatFunc(den)


def _exact_div(a: fmpz_poly, b: fmpz_poly) -> fmpz_poly:
    if b.is_one():
        return a
    quo, rem = divmod(a, b)
    if not rem.is_zero():
        raise NonExactDivision("Bareiss step left a nonzero remainder")
    return quo


ALLOWED_CYCLOTOMIC_ORDERS = (1, 2, 3, 4, 6, 8, 12)
_CYCLO = {n: fmpz_poly.cyclotomic(n) for n in ALLOWED_CYCLOTOMIC_ORDERS}


def is_admissible_pivot(p: fmpz_poly, orders=ALLOWED_CYCLOTOMIC_ORDERS) -> bool:
    """True iff ``p`` is a constant times a power of q times Phi_n (n in orders)."""
    if p.is_zero():
        return False
    coeffs = p.coeffs()
    low = next(i for i, c in enumerate(coeffs) if c != 0)
    if low:
        p = fmpz_poly(coeffs[low:])
    for n in orders:
        phi = _CYCLO[n]
        while p.degree() >= phi.degree():
            quo, rem = divmod(p, phi)
            if not rem.is_zero():
                break
            p = quo
    return p.degree() == 0


@dataclass
class BareissResult:
    rank: int
    pivots: list                # leading minors as RatFunc (after row clearing)
    pivot_rows: list
    pivot_cols: list
    row_scales: list = field(repr=False, default_factory=list)
    sign: int = 1

    def factor_reports(self):
        return [ratfunc_factor_report(p) for p in self.pivots]


def bareiss(M, order: Sequence[int] | None = None, prefer=None,
            row_tiers: Sequence[int] | None = None) -> BareissResult:
    """Fraction-free elimination of an :class:`ExactMatrix` (or sparse rows).

    Pivot rule: scan columns in ``order`` (default natural order); at each
    column take, among the remaining rows that are nonzero there, the entry of
    smallest degree (ties: lowest row).  Columns with no candidate are skipped.

    With ``prefer`` (a predicate on ``fmpz_poly``), each step instead takes the
    first column in ``order`` holding a candidate that satisfies it, and falls
    back to the plain rule only when no remaining entry does.  Every entry of
    the working matrix is a minor of the cleared input, so this steers which
    leading minors get recorded without changing rank or determinant.

    ``row_tiers`` ranks rows: a row of a higher tier becomes a pivot only once
    every lower-tier row is exhausted, so rows known to be dependent can be
    kept out of the pivots.
    """
    if isinstance(M, ExactMatrix):
        srows = M.sparse_rows()
        ncols = M.cols
    else:
        srows = [dict(r) for r in M]
        ncols = 1 + max((j for r in srows for j in r), default=-1)
    rows = []
    scales = []
    for r in srows:
        pr, s = _clear_row(r)
        rows.append(pr)
        scales.append(s)
    order = list(range(ncols)) if order is None else list(order)
    remaining = list(range(len(rows)))
    prev = fmpz_poly([1])
    pivots, prow, pcol = [], [], []
    tiers = list(row_tiers) if row_tiers is not None else [0] * len(rows)
    pending = list(order)
    while pending and remaining:
        col, p = _choose_pivot(rows, remaining, pending, prefer, tiers)
        if col is None:
            break
        pending.remove(col)
        remaining.remove(p)
        prow_data = rows[p]
        piv = prow_data[col]
        for i in remaining:
            r = rows[i]
            b = r.pop(col, None)
            new = {}
            if b is None:
                for j, x in r.items():
                    new[j] = _exact_div(piv * x, prev)
            else:
                keys = set(r) | set(prow_data)
                keys.discard(col)
                for j in keys:
                    x = r.get(j)
                    y = prow_data.get(j)
                    if x is None:
                        v = -(b * y)
                    elif y is None:
                        v = piv * x
                    else:
                        v = piv * x - b * y
                    if not v.is_zero():
                        new[j] = _exact_div(v, prev)
            rows[i] = new
        prev = piv
        pivots.append(RatFunc(piv))
        prow.append(p)
        pcol.append(col)
    return BareissResult(len(pivots), pivots, prow, pcol, scales, _perm_sign(prow, pcol))


def _choose_pivot(rows, remaining, pending, prefer, tiers):
    for tier in sorted({tiers[i] for i in remaining if rows[i]}):
        cand = [i for i in remaining if tiers[i] == tier]

        def smallest(col, admissible):
            best = None
            for i in cand:
                a = rows[i].get(col)
                if a is not None and (admissible is None or admissible(a)):
                    d = a.degree()
                    if best is None or d < best[0]:
                        best = (d, i)
            return best

        if prefer is not None:
            for col in pending:
                best = smallest(col, prefer)
                if best is not None:
                    return col, best[1]
        for col in pending:
            best = smallest(col, None)
            if best is not None:
                return col, best[1]
    return None, None


def _perm_sign(rows_: list, cols_: list) -> int:
    """Sign of the permutation pairing pivot rows with pivot columns."""
    n = len(rows_)
    # det of the square matrix restricted to pivots equals sign * last pivot,
    # where the sign comes from ordering both rows and columns ascending
    def inversions(seq):
        return sum(1 for a in range(n) for b in range(a + 1, n) if seq[a] > seq[b])
    return -1 if (inversions(rows_) + inversions(cols_)) % 2 else 1


def rank(M) -> int:
    return bareiss(M).rank


def det(M: ExactMatrix) -> RatFunc:
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    if M.rows == 0:
        return ONE
    res = bareiss(M)
    if res.rank < M.rows:
        return ZERO
    scale = ONE
    for s in res.row_scales:
        scale = scale * s
    return res.pivots[-1] * res.sign / scale


# --- field elimination, span membership ---------------------------------------

class Echelon:
    """Incremental echelon form over Q(q) with provenance tracking.

    Each stored row is ``(vector, combination)`` where ``vector`` equals the
    combination of the inserted family members it records.  A row is keyed by
    its pivot, the largest label under ``key``, and normalized to pivot
    coefficient 1; all its other labels are smaller than the pivot.
    """

    def __init__(self, key=None):
        self.key = key or (lambda lab: lab)
        self.rows: dict = {}
        self.count = 0
        self.pivot_values: list = []

    def reduce(self, vec: Mapping, comb: dict | None = None):
        """Reduce ``vec`` by the stored rows; returns (residual, combination)."""
        key = self.key
        vec = {k: RatFunc.coerce(v) for k, v in vec.items() if v}
        comb = dict(comb or {})
        heap = [(_Neg(key(l)), l) for l in vec if l in self.rows]
        heapq.heapify(heap)
        seen = set()
        while heap:
            _, lead = heapq.heappop(heap)
            if lead in seen:
                continue
            seen.add(lead)
            c = vec.get(lead)
            if c is None:
                continue
            rvec, rcomb = self.rows[lead]
            for lab, x in rvec.items():
                v = vec.get(lab)
                v = -(c * x) if v is None else v - c * x
                if v:
                    if lab not in vec and lab in self.rows and lab not in seen:
                        heapq.heappush(heap, (_Neg(key(lab)), lab))
                    vec[lab] = v
                else:
                    vec.pop(lab, None)
            for idx, x in rcomb.items():
                v = comb.get(idx)
                v = -(c * x) if v is None else v - c * x
                if v:
                    comb[idx] = v
                else:
                    comb.pop(idx, None)
        return vec, comb

    def add(self, vec: Mapping) -> bool:
        """Insert a vector; returns False if it was dependent on earlier ones."""
        idx = self.count
        self.count += 1
        res, comb = self.reduce(vec, {idx: ONE})
        if not res:
            return False
        lead = max(res, key=self.key)
        c = res[lead]
        self.pivot_values.append(c)
        inv = c.inverse()
        self.rows[lead] = ({k: v * inv for k, v in res.items()},
                           {k: v * inv for k, v in comb.items()})
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def solve(self, target: Mapping):
        """Coordinates of ``target`` in the inserted family, or None."""
        res, comb = self.reduce(target, {})
        if res:
            return None
        return {k: -v for k, v in comb.items() if v}


class _Neg:
    """Reverses the order of a key so heapq pops the largest first."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return other.k < self.k

    def __eq__(self, other):
        return self.k == other.k


def in_span(target, family: Sequence, basis: BasisIndex | None = None, key=None):
    """Exact coordinates of ``target`` in ``family``; raises :class:`NotInSpan`."""
    if basis is not None:
        for v in list(family) + [target]:
            for lab in _terms(v):
                basis.index(lab)
        key = key or basis.index
    ech = Echelon(key=key)
    for v in family:
        ech.add(_terms(v))
    coords = ech.solve(_terms(target))
    if coords is None:
        raise NotInSpan("target is not in the span of the family")
    return [coords.get(i, ZERO) for i in range(len(family))]
