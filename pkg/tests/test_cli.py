import json
import random

import pytest

from uawlie.cli import main
from uawlie.expr import (Add, Bracket, ExprSyntaxError, Gen, HallRef, Mul, Neg, Num, Pow, QSym, Sub,
                         format_expr, parse_expr, to_lie, to_uaw)
from uawlie.hall import parse_tree
from uawlie.uaw import default_algebra

U = default_algebra()


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_nf_of_ba(capsys):
    # [PAPER] coefficients print with ascending powers
    code, out, _ = run(capsys, "nf", "B*A")
    assert code == 0
    assert out.strip() == "q^2 A B + (-q^-1 + q^3) C + (1 - q^2) ga"


def test_parse_examples():
    # [PAPER] / [TRIVIAL]
    assert to_uaw(parse_expr("q^2*A*B + (q^3 - q^-1)*C - (q^2-1)*ga")) == U.reduce("BA")
    assert parse_expr("[ [B,A], C ]") == parse_expr("[[B,A],C]")
    assert to_lie(parse_expr("H12")).by_index() == {12: 1}
    assert to_lie(parse_expr("[[B,A],C]")) == to_lie(parse_expr("H12"))
    assert parse_expr("α β γ Ω") == parse_expr("al be ga Om")
    assert parse_expr("A B^2") == Mul(Gen("A"), Pow(Gen("B"), 2))


def test_syntax_errors_carry_offset_and_expected():
    with pytest.raises(ExprSyntaxError) as exc:
        parse_expr("A + ")
    assert exc.value.offset == 4 and "A" in exc.value.expected
    with pytest.raises(ExprSyntaxError) as exc:
        parse_expr("α # B")
    assert exc.value.offset == 3  # α is two bytes
    with pytest.raises(ExprSyntaxError) as exc:
        parse_expr("[A, B")
    assert exc.value.expected == ("]",)


def test_hall_listing(capsys):
    # [DERIVED] enumeration
    code, out, _ = run(capsys, "hall", "--max-len", "2")
    assert code == 0
    assert out.splitlines() == ["H1 A", "H2 B", "H3 C", "H4 [B,A]", "H5 [C,A]", "H6 [C,B]"]


def test_exit_codes(capsys):
    assert run(capsys, "nf", "A +")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "hall")[0] == 2
    assert run(capsys, "nf", "A / 0")[0] == 2
    code, _, err = run(capsys, "hallcoords", "A*B + B*A")
    assert code == 1 and "not in the Lie algebra" in err
    code, out, _ = run(capsys, "hallcoords", "A*B - B*A")
    assert code == 0 and out.strip() == "-1 * H4"


def test_expand_and_psi(capsys):
    code, out, _ = run(capsys, "expand", "[B,A]")
    assert code == 0 and out.strip() == "-1 * AB + 1 * BA"
    code, out, _ = run(capsys, "psi", "[B,A]")
    assert code == 0 and out.strip() == "0"


def test_json_output(capsys):
    code, out, _ = run(capsys, "--json", "nf", "B*A")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 3 and all(set(d) == {"i", "j", "k", "r", "s", "t", "coeff"} for d in data)
    code, out, _ = run(capsys, "hallcoords", "--json", "[A,B]")
    assert json.loads(out) == [{"index": 4, "tree": "[B,A]", "coeff": {"num": [-1], "den": [1]}}]


def test_rank_file(tmp_path, capsys):
    f = tmp_path / "fam.json"
    f.write_text(json.dumps(["A", "B", "A + B", "[B,A]", "A*B"]), encoding="utf-8")
    code, out, _ = run(capsys, "rank", "--file", str(f))
    assert code == 0 and out.strip() == "4"
    f.write_text("{not json", encoding="utf-8")
    assert run(capsys, "rank", "--file", str(f))[0] == 2


def test_verify_suite(capsys):
    # [PAPER] the four length-5 relations hold
    code, out, _ = run(capsys, "verify", "--suite", "rel5_*")
    assert code == 0 and "PASS rel5_four_relations" in out
    code, out, _ = run(capsys, "verify", "--suite", "free_B*", "--json")
    assert code == 0 and json.loads(out)["status"] == "pass"


def _random_expr(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice([Num(rng.randint(0, 5)), QSym(), Gen(rng.choice(["A", "B", "C", "al", "be", "ga", "Om"])),
                           HallRef(rng.randint(1, 20))])
    kind = rng.randrange(6)
    a = _random_expr(rng, depth - 1)
    if kind == 0:
        return Neg(a)
    if kind == 1:
        return Pow(a, rng.randint(0, 3))
    b = _random_expr(rng, depth - 1)
    return [Add, Sub, Mul, Bracket][kind - 2](a, b)


def test_round_trip_stability():
    rng = random.Random(31)
    for _ in range(200):
        e = parse_expr(format_expr(_random_expr(rng, 4)))
        assert parse_expr(format_expr(e)) == e


def test_nf_output_reparses_to_a_fixed_point():
    rng = random.Random(32)
    for _ in range(30):
        x = to_uaw(parse_expr(format_expr(_random_expr(rng, 3))))
        assert to_uaw(parse_expr(str(x))) == x
    x = to_uaw(parse_expr("C*B*A + q^-3 * Om"))
    assert to_uaw(parse_expr(str(x))) == x


def test_hall_tree_text_matches_expression_syntax():
    assert to_lie(parse_expr("[[C,B],[B,A]]")).by_index() == {31: 1}
    assert parse_tree("[[C,B],[B,A]]") == (("C", "B"), ("B", "A"))
