import random
from fractions import Fraction
from math import gcd

import pytest

from uawlie.scalar import (ONE, Q, ZERO, DivisionByZero, LaurentPoly, PoleError, RatFunc,
                           ScalarSyntaxError, ZeroArgument, parse_scalar, ratfunc_eval,
                           ratfunc_factor_report, ratfunc_normalize)

qp = Q + Q ** -1
qm = Q - Q ** -1


# --- oracle: primitive remainder sequences on plain integer lists -------------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _content(p):
    g = 0
    for c in p:
        g = gcd(g, c)
    return g


def _primitive(p):
    g = _content(p)
    return [c // g for c in p] if g else []


def _prem(a, b):
    """Pseudo-remainder of a by b (lists, ascending)."""
    a, b = _trim(a), _trim(b)
    lb = b[-1]
    while len(a) >= len(b):
        shift = len(a) - len(b)
        la = a[-1]
        a = [c * lb for c in a]
        for i, c in enumerate(b):
            a[i + shift] -= la * c
        a = _trim(a)
    return a


def prs_gcd(a, b):
    a, b = _primitive(_trim(a)), _primitive(_trim(b))
    ca, cb = _content(a) or 1, _content(b) or 1
    while b:
        a, b = b, _primitive(_prem(a, b))
    g = _primitive(a)
    if g and g[-1] < 0:
        g = [-c for c in g]
    return [c * gcd(ca, cb) for c in g] if g else g


def _divexact(a, b):
    a, b = _trim(a), _trim(b)
    out = [0] * (len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = Fraction(a[-1], b[-1])
        assert c.denominator == 1
        out[shift] = int(c)
        for i, x in enumerate(b):
            a[i + shift] -= int(c) * x
        a = _trim(a)
    assert not a
    return out


def oracle_canonical(num, den):
    num, den = _trim(num), _trim(den)
    g = prs_gcd(num, den)
    n, d = _divexact(num, g), _divexact(den, g)
    k = gcd(_content(n), _content(d))
    n, d = [c // k for c in n], [c // k for c in d]
    if d[-1] < 0:
        n, d = [-c for c in n], [-c for c in d]
    return _trim(n), _trim(d)


def _rand_poly(rng, deg=4):
    return [rng.randint(-6, 6) for _ in range(rng.randint(0, deg) + 1)]


def _rand_ratfunc(rng):
    while True:
        d = _rand_poly(rng)
        if _trim(d):
            return RatFunc(_rand_poly(rng), d)


# --- canonical form ------------------------------------------------------------

def test_canonical_form_matches_prs_oracle():
    # [DERIVED] oracle: pure-Python primitive PRS gcd
    rng = random.Random(11)
    for _ in range(200):
        a, b = _rand_poly(rng, 5), _rand_poly(rng, 5)
        common = _rand_poly(rng, 2)
        if not _trim(b) or not _trim(common):
            continue
        num = _trim(_mul(a, common))
        den = _trim(_mul(b, common))
        f = RatFunc(num or [0], den)
        if not num:
            assert f == ZERO
            continue
        on, od = oracle_canonical(num, den)
        assert f.numerator_coeffs() == on
        assert f.denominator_coeffs() == od


def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_canonical_conventions():
    # [TRIVIAL]
    f = RatFunc([0, -2], [0, 0, -4])
    assert f.numerator_coeffs() == [1] and f.denominator_coeffs() == [0, 2]
    assert RatFunc(0, [5, 7]) == ZERO and ZERO.denominator_coeffs() == [1]
    assert Q ** -1 == RatFunc(1, [0, 1])


def test_normalize_idempotent_and_laurent_input():
    # [TRIVIAL] (q + q^-1) / (q - q^-1) = (q^2 + 1) / (q^2 - 1)
    f = ratfunc_normalize(LaurentPoly(-1, (1, 0, 1)), LaurentPoly(-1, (-1, 0, 1)))
    assert f == RatFunc([1, 0, 1], [-1, 0, 1])
    g = ratfunc_normalize(LaurentPoly(0, tuple(f.numerator_coeffs())),
                          LaurentPoly(0, tuple(f.denominator_coeffs())))
    assert g == f and g.numerator_coeffs() == f.numerator_coeffs()


def test_zero_denominator():
    with pytest.raises(DivisionByZero):
        RatFunc(1, 0)
    with pytest.raises(DivisionByZero):
        ONE / ZERO


def test_field_axioms_on_random_samples():
    # [TRIVIAL] 200 seeded triples, exact equality
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = (_rand_ratfunc(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a * a.inverse() == ONE


def test_eval_examples():
    # [TRIVIAL]
    assert ratfunc_eval(qp, 2) == Fraction(5, 2)
    assert ratfunc_eval(Q ** 2, -3) == 9
    with pytest.raises(PoleError):
        ratfunc_eval(1 / qm, 1)
    with pytest.raises(PoleError):
        ratfunc_eval(Q, 0)


def test_eval_is_multiplicative():
    # [TRIVIAL]
    rng = random.Random(3)
    for _ in range(100):
        a, b = _rand_ratfunc(rng), _rand_ratfunc(rng)
        p = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5))
        try:
            lhs = ratfunc_eval(a * b, p)
            rhs = ratfunc_eval(a, p) * ratfunc_eval(b, p)
        except PoleError:
            continue
        assert lhs == rhs


def _entries(entries):
    return [(e.factor, e.multiplicity, e.cyclotomic) for e in entries]


def test_factor_report_examples():
    # [TRIVIAL]
    rep = ratfunc_factor_report(Q ** 2 - 1)
    assert _entries(rep.numerator) == [((-1, 1), 1, 1), ((1, 1), 1, 2)]
    rep = ratfunc_factor_report(Q ** 4 + Q ** 2 + 1)
    assert sorted(e.cyclotomic for e in rep.numerator) == [3, 6]
    # [DERIVED] (q - q^-1)^2 = (q^2 - 1)^2 / q^2, by unique factorization
    rep = ratfunc_factor_report(qm ** 2)
    assert _entries(rep.numerator) == [((-1, 1), 2, 1), ((1, 1), 2, 2)]
    assert _entries(rep.denominator) == [((0, 1), 2, None)]
    assert not rep.foreign()
    with pytest.raises(ZeroArgument):
        ratfunc_factor_report(ZERO)


def test_factor_report_flags_foreign_factor():
    rep = ratfunc_factor_report(2 * Q ** 2 + 1)
    assert len(rep.foreign()) == 1


def test_parse_and_print_round_trip():
    # [TRIVIAL]
    assert parse_scalar("q^3 - q^-1") == Q ** 3 - Q ** -1
    assert parse_scalar("(q + q^-1)/(q - q^-1)") == qp / qm
    assert str(Q ** 3 - Q ** -1) == "-q^-1 + q^3"
    rng = random.Random(5)
    for _ in range(100):
        f = _rand_ratfunc(rng)
        assert parse_scalar(str(f)) == f


def test_parse_errors_carry_offset():
    with pytest.raises(ScalarSyntaxError) as exc:
        parse_scalar("q + x")
    assert exc.value.offset == 4
