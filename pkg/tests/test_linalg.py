import random

import pytest
from flint import fmpz_poly

from uawlie.freealg import FreeElement
from uawlie.hall import hall_generate
from uawlie.linalg import (BasisIndex, ExactMatrix, MissingBasisLabel, NotInSpan, bareiss, det,
                           expansion_matrix, in_span, is_admissible_pivot, rank, support_basis)
from uawlie.scalar import ONE, Q, ZERO, RatFunc
from uawlie.uaw import default_algebra

U = default_algebra()
W = FreeElement.word
PRIME = 1000003


def _rand_entry(rng):
    return RatFunc([rng.randint(-3, 3) for _ in range(3)], [rng.randint(1, 3), rng.randint(0, 2)])


def _rand_matrix(rng, n, m):
    return ExactMatrix.from_rows([[_rand_entry(rng) for _ in range(m)] for _ in range(n)])


def test_expansion_matrix_examples():
    # [TRIVIAL]
    vecs = [U.A, U.B, U.C]
    basis = BasisIndex([(1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0)])
    assert expansion_matrix(vecs, basis) == ExactMatrix.identity(3)
    M = expansion_matrix([W("AB") + W("BA"), W("AB") - W("BA")], BasisIndex(["AB", "BA"]))
    assert M == ExactMatrix.from_rows([[1, 1], [1, -1]])
    with pytest.raises(MissingBasisLabel):
        expansion_matrix([W("CC")], BasisIndex(["AB"]))


def test_det_and_rank_examples():
    # [TRIVIAL]
    assert det(ExactMatrix.from_rows([[Q, 1], [1, Q ** -1]])) == ZERO
    assert det(ExactMatrix.from_rows([[Q ** 2, 0], [5, Q ** -2]])) == ONE
    assert rank(ExactMatrix.identity(3)) == 3
    assert det(ExactMatrix.from_rows([[0, 1], [1, 0]])) == -ONE


def _cofactor_det(rows):
    """Oracle: Laplace expansion along the first row."""
    if len(rows) == 1:
        return rows[0][0]
    total = ZERO
    for j, a in enumerate(rows[0]):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def test_det_matches_cofactor_expansion_and_is_multiplicative():
    # [DERIVED] oracle: cofactor expansion
    rng = random.Random(21)
    for _ in range(50):
        X, Y = _rand_matrix(rng, 3, 3), _rand_matrix(rng, 3, 3)
        assert det(X) == _cofactor_det(X.entries)
        assert det(X @ Y) == det(X) * det(Y)


def test_rank_of_transpose():
    rng = random.Random(22)
    for _ in range(30):
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        X = _rand_matrix(rng, n, m)
        if n > 1:
            # plant a dependent row
            X = ExactMatrix.from_rows(X.entries[:-1] + [[a + b for a, b in zip(X.entries[0], X.entries[1 % (n - 1)])]])
        assert rank(X) == rank(X.transpose())


def test_in_span_examples():
    # [TRIVIAL]
    assert in_span(U.A, [U.A, U.B]) == [ONE, ZERO]
    with pytest.raises(NotInSpan):
        in_span(U.A * U.B, [U.A, U.B])
    with pytest.raises(MissingBasisLabel):
        in_span(U.C, [U.A, U.B], basis=support_basis([U.A, U.B]))


def test_family_members_have_unit_coordinates():
    fam = [U.lie(h.tree) for h in hall_generate(3)]
    for i, v in enumerate(fam):
        assert in_span(v, fam) == [ONE if j == i else ZERO for j in range(len(fam))]


def test_admissible_pivots():
    # [TRIVIAL]
    assert is_admissible_pivot(fmpz_poly([0, 0, -3]))
    assert is_admissible_pivot(fmpz_poly([1, 0, 1]) * fmpz_poly([1, -1, 1]))
    assert not is_admissible_pivot(fmpz_poly([1, 0, 2]))
    assert not is_admissible_pivot(fmpz_poly([1, 1, 1, 1, 1]))
    assert not is_admissible_pivot(fmpz_poly([]))


def test_preferred_pivots_do_not_change_rank_or_det():
    rng = random.Random(23)
    for _ in range(20):
        X = _rand_matrix(rng, 3, 3)
        assert bareiss(X, prefer=is_admissible_pivot).rank == rank(X)


def test_matrix_json_round_trip():
    X = ExactMatrix.from_rows([[Q, 1], [Q ** -1 + 2, 0]])
    assert ExactMatrix.from_json(X.to_json()) == X


def _mod_eval(f, q0):
    num = sum(int(c) * pow(q0, i, PRIME) for i, c in enumerate(f.numerator_coeffs())) % PRIME
    den = sum(int(c) * pow(q0, i, PRIME) for i, c in enumerate(f.denominator_coeffs())) % PRIME
    return num * pow(den, PRIME - 2, PRIME) % PRIME


def _mod_rank(rows):
    rows = [r[:] for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], PRIME - 2, PRIME)
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] * inv % PRIME
                rows[i] = [(x - f * y) % PRIME for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def test_length_five_rank_against_modular_oracle():
    # [DERIVED] oracle: Gaussian elimination mod a prime at a fixed q
    elems = hall_generate(5)
    vecs = [U.lie(h.tree) for h in elems]
    basis = support_basis(vecs, key=lambda w: (-sum(w), w))
    M = expansion_matrix(vecs, basis)
    q0 = 7
    mod_rows = [[_mod_eval(x, q0) if x else 0 for x in row] for row in M.entries]
    assert _mod_rank(mod_rows) == 76
