import random

from uawlie.freealg import (FreeElement, coeff, concat_mul, gen, homogeneous_part,
                            lie_bracket_free, theta)
from uawlie.scalar import ONE, Q

A, B, C = gen("A"), gen("B"), gen("C")
W = FreeElement.word


def test_concatenation():
    # [TRIVIAL]
    assert concat_mul(W("AB"), C) == W("ABC")
    assert concat_mul(A + B, C) == W("AC") + W("BC")
    assert concat_mul(FreeElement.scalar(ONE), W("CAB")) == W("CAB")


def test_bracket():
    # [TRIVIAL]
    assert lie_bracket_free(A, B) == W("AB") - W("BA")
    assert not lie_bracket_free(A, A)
    assert lie_bracket_free(W("AB"), C) == W("ABC") - W("CAB")


def test_theta():
    # [PAPER] theta reverses words with sign (-1)^length and negates Lie elements
    assert theta(W("ABC")) == -W("CBA")
    assert theta(W("AB") - W("BA")) == W("BA") - W("AB")
    assert theta(FreeElement.scalar(ONE)) == FreeElement.scalar(ONE)


def test_theta_is_an_involutive_antiautomorphism():
    # [TRIVIAL]
    rng = random.Random(2)
    for _ in range(50):
        f = FreeElement({"".join(rng.choice("ABC") for _ in range(rng.randint(0, 4))): rng.randint(-3, 3)
                         for _ in range(3)})
        g = FreeElement({"".join(rng.choice("ABC") for _ in range(rng.randint(0, 4))): Q ** rng.randint(-2, 2)
                         for _ in range(3)})
        assert theta(theta(f)) == f
        assert theta(f * g) == theta(g) * theta(f)


def test_coeff_and_homogeneous_part():
    # [TRIVIAL]
    f = W("AB") - W("BA")
    assert coeff(f, "AB") == 1 and coeff(f, "BA") == -1 and coeff(f, "CC") == 0
    assert homogeneous_part(A + W("AB"), 1) == A
    assert homogeneous_part(A + W("AB"), 2) == W("AB")
    assert not homogeneous_part(A, 0)


def test_zero_coefficients_are_pruned():
    f = W("AB") + W("AB", -1)
    assert not f and f.terms == {}


def test_print_order_is_length_then_lex():
    f = W("B") + W("AC") + W("A", Q)
    assert str(f) == "q * A + 1 * B + 1 * AC"
