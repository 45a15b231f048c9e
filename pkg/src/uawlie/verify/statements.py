"""The verified statements, written as data.

An :class:`Identity` builds ``(lhs, rhs)`` in either the free algebra or the
algebra of the context.  A :class:`Membership` builds ``(x, n)`` and asserts
that ``x`` has filtration degree at most ``n``.

Where the printed form of a formula does not hold, the statement carries the
form that does under ``build`` and the printed one under ``printed``; checks
evaluate both and report the printed verdict in their witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from ..freealg import FreeElement, lie_bracket_free
from .context import Context, q, qm, qp


@dataclass(frozen=True)
class Identity:
    name: str
    build: Callable[[Context], tuple]
    printed: Optional[Callable[[Context], tuple]] = None


@dataclass(frozen=True)
class Membership:
    name: str
    build: Callable[[Context], tuple]
    printed: Optional[Callable[[Context], tuple]] = None


# --- free algebra ---------------------------------------------------------

_A, _B, _C = (FreeElement.word(x) for x in "ABC")


def free_central(ctx: Context):
    alg = ctx.alg
    return alg.free_alpha(), alg.free_beta(), alg.free_gamma()


def free_r(ctx: Context) -> list:
    return ctx.alg.free_r()


def free_H0(ctx: Context) -> FreeElement:
    F = ctx.F
    return (F(31) - F(24)) / (qp ** 2 * qm ** 2) + F(7) / qm - 2 * F(5)


def free_I0(ctx: Context) -> FreeElement:
    return lie_bracket_free(free_H0(ctx), ctx.F(4))


def _h4alpha_r_part(ctx: Context) -> FreeElement:
    r = free_r(ctx)
    br = lie_bracket_free
    return (-2 * r[5] / qp + q * br(_B, r[0]) / (qp ** 2 * qm)
            + (q * _B * r[1] - q ** -1 * r[1] * _B) / (qp ** 2 * qm) - _A * r[3] / qp ** 2)


def _h4alpha_r_part_printed(ctx: Context) -> FreeElement:
    r = free_r(ctx)
    return (r[1] * _B - _A * r[3]) / qp ** 2 + q * qm * r[5] / qp


def _i0_rhs(ctx: Context, r_part) -> FreeElement:
    r = free_r(ctx)
    br = lie_bracket_free
    F4 = ctx.F(4)
    return F4 * (br(r[0], _B) - br(r[3], _A)) / qp ** 2 - br(r_part, F4)


def _free_BA(ctx):
    al, be, ga = free_central(ctx)
    return ctx.F(4) / (q * qm) - qp * _C, _A * _B - ga


def _free_CA(ctx):
    al, be, ga = free_central(ctx)
    return ctx.F(5) / (-(q ** -1) * qm) - qp * _B, _A * _C - be


def _free_CA_printed(ctx):
    al, be, ga = free_central(ctx)
    return ctx.F(5) / (q ** -1 * qm) - qp * _B, _A * _C - be


def _free_BAA(ctx):
    al, be, ga = free_central(ctx)
    r = free_r(ctx)
    F = ctx.F
    return (F(7) / (q ** 2 * qm ** 2) - qp * F(5) / (q * qm),
            _A * _A * _B + qp * _A * _C - _A * ga + r[5] / (q * qm))


def _free_BAC(ctx):
    al, be, ga = free_central(ctx)
    r = free_r(ctx)
    return (ctx.F(12) / (qp * qm ** 2),
            _B * _B - _A * _A + (_A * al - _B * be) / qp - (q * r[0] + q ** -1 * r[1]) / (qp * qm))


def _free_BAC_printed(ctx):
    al, be, ga = free_central(ctx)
    r = free_r(ctx)
    return ctx.F(12) / (qp * qm ** 2), _B * _B - _A * _A + (_A * al - _B * be + r[1]) / qp


def _free_H4alpha(ctx):
    al, _, _ = free_central(ctx)
    return ctx.F(4) * al / qp ** 2, free_H0(ctx) + _h4alpha_r_part(ctx)


def _free_H4alpha_printed(ctx):
    al, _, _ = free_central(ctx)
    return ctx.F(4) * al / qp ** 2, free_H0(ctx) + _h4alpha_r_part_printed(ctx)


def _free_I0(ctx):
    return free_I0(ctx), _i0_rhs(ctx, _h4alpha_r_part(ctx))


def _free_I0_printed(ctx):
    return free_I0(ctx), _i0_rhs(ctx, _h4alpha_r_part_printed(ctx))


FREE_IDENTITIES = {
    "free_BA": [Identity("BAfree", _free_BA)],
    "free_CA": [Identity("CAfree", _free_CA, _free_CA_printed)],
    "free_BAA": [Identity("BAAfree", _free_BAA)],
    "free_BAC": [Identity("BACfree", _free_BAC, _free_BAC_printed)],
    "free_H4alpha": [Identity("H4afree", _free_H4alpha, _free_H4alpha_printed)],
    "free_I0_identity": [Identity("I0free", _free_I0, _free_I0_printed)],
}


# --- identities in the algebra --------------------------------------------

def _D():
    return qp ** 2 * qm ** 2


def _six(ctx):
    L = ctx.L
    al, be, ga = ctx.alg.alpha, ctx.alg.beta, ctx.alg.gamma
    D = _D()
    return [
        Identity("H4a", lambda c: (L(4) * al / qp ** 2,
                                   (L(31) - L(24)) / D + L(7) / qm - 2 * L(5))),
        Identity("H6b", lambda c: (L(6) * be / qp ** 2,
                                   (L(27) - L(25)) / D + L(11) / qm + 2 * L(4))),
        Identity("H5g", lambda c: (L(5) * ga / qp ** 2,
                                   -(L(30) + L(18)) / D + L(13) / qm - 2 * L(6))),
        Identity("H4b", lambda c: (L(4) * be / qp ** 2,
                                   (L(30) - L(22)) / D - L(9) / qm + 2 * L(6))),
        Identity("H6g", lambda c: (L(6) * ga / qp ** 2,
                                   (-L(31) + L(24) - L(20)) / D - L(14) / qm - 2 * L(5))),
        Identity("H5a", lambda c: (L(5) * al / qp ** 2,
                                   -L(25) / D - L(8) / qm - 2 * L(4))),
    ]


def six_identities(ctx: Context) -> list:
    return _six(ctx)


def h5b_h6a(ctx: Context) -> list:
    L = ctx.L
    al, be, ga = ctx.alg.alpha, ctx.alg.beta, ctx.alg.gamma
    return [
        Identity("H5b", lambda c: (
            L(5) * be + L(4) * ga,
            (-L(65) + L(58)) / qm ** 3 - (L(23) + L(17)) / qm ** 2 - qp ** 2 * (L(12) - L(10)) / qm)),
        Identity("H6a", lambda c: (
            L(6) * al - L(4) * ga,
            (-L(75) + L(61)) / qm ** 3 - (L(26) - L(17)) / qm ** 2 - qp ** 2 * L(10) / qm)),
    ]


def rel5_identities(ctx: Context) -> list:
    L = ctx.L
    al, be, ga = ctx.alg.alpha, ctx.alg.beta, ctx.alg.gamma
    E = 2 * q ** 2 * qp ** 2 * qm
    a = (2 * q ** 2 + 1) * (q ** 2 + 2)
    b = q ** 4 + 3 * q ** 2 + 1
    c69 = 3 * q ** 4 + 5 * q ** 2 + 3
    c64 = 2 * q ** 4 + 3 * q ** 2 + 2
    tail44 = lambda: -L(27) + 2 * L(25) - L(19) + L(15)
    tail74 = lambda: L(45) / qm - 2 * L(31) - L(28) + 2 * L(24) - L(20) + L(16)
    seed_head = lambda: ((-L(27) + 2 * L(25)) / qm
                         + (q ** 4 + 1) * (L(19) - L(15)) / (q ** 2 * qm))
    coeff_11_8 = 2 * (q ** 6 - 1) / (q ** 3 * qm)
    return [
        Identity(
            "H44REL",
            lambda c: (L(44) / qm,
                       -a * (L(73) + L(67)) / E - b * (L(62) - 2 * L(60)) / E + tail44()),
            lambda c: (L(44) / qm,
                       a * (L(73) + L(67)) / E - b * (L(62) - 2 * L(60)) / E + tail44()),
        ),
        Identity(
            "H69REL",
            lambda c: (L(69) / (2 * qp ** 2 * qm),
                       -c69 * L(78) / E + b * L(76) / E + c64 * L(64) / E
                       - (L(51) - L(47)) / qm + L(29) + L(22) - L(21) + L(18)),
            lambda c: (L(69) / (2 * qp ** 2 * qm),
                       -c69 * L(78) / E + b * L(76) / E - c64 * L(64) / E
                       - (L(51) - L(47)) / qm + L(29) + L(22) - L(21) + L(18)),
        ),
        Identity(
            "H74REL",
            lambda c: (L(74) / (2 * qp ** 2 * qm),
                       b * (-2 * L(70) + L(68)) / E + a * L(63) / E + tail74()),
            lambda c: (L(74) / (2 * qp ** 2 * qm),
                       (-2 * L(70) + L(68)) / E + a * L(63) / E + tail74()),
        ),
        Identity(
            "H79REL",
            lambda c: (L(79), -L(75) + L(72) - L(65) + L(61) + L(58)),
        ),
        Identity(
            "H44seed",
            lambda c: (L(44) / _D(),
                       -seed_head() + coeff_11_8 * (L(11) - L(8))
                       - L(12) * ga / qp ** 2 - L(9) * be - L(7) * al),
            lambda c: (L(44) / _D(),
                       seed_head() - coeff_11_8 * (L(11) - L(8))
                       + L(12) * ga / qp ** 2 + L(9) * be + L(7) * al),
        ),
    ]


def h7g_h9g(ctx: Context) -> list:
    L = ctx.L
    ga = ctx.alg.gamma
    return [
        Identity("H7g", lambda c: (
            L(7) * ga / (2 * qp ** 2),
            (q ** 6 - 1) * L(57) / (2 * q ** 3 * qp ** 2 * qm ** 3) - L(35) / (2 * qp ** 2 * qm ** 2)
            - (L(30) + L(22)) / (2 * qm) + L(13) - L(9))),
        Identity("H9g", lambda c: (
            L(9) * ga / (2 * qp ** 2),
            -L(59) / (2 * qm ** 2) - L(37) / (2 * qp ** 2 * qm ** 2)
            + (L(31) + L(24)) / (2 * qm) - L(14) - L(7))),
    ]


def complement_identities(ctx: Context) -> list:
    alg = ctx.alg
    m = ctx.m
    return [
        Identity("BACincomp", lambda c: (
            ctx.L(12) / (qp * qm ** 2),
            m(0, 2) - m(2) + (alg.A * alg.alpha - alg.B * alg.beta) / qp)),
        Identity("CABincomp", lambda c: (
            ctx.L(10) / (qp * qm ** 2),
            m(0, 0, 2) - m(2) + (alg.A * alg.alpha - alg.C * alg.gamma) / qp)),
    ]


# --- filtration memberships -------------------------------------------------

def two_gen(ctx: Context, i: int, j: int) -> list:
    LN, m = ctx.LN, ctx.m
    return [
        Membership(f"LBAi[i={i}]", lambda c: (
            LN("B" + "A" * i) - q ** i * qm ** i * m(i, 1, 0), i)),
        Membership(f"LCAi[i={i}]", lambda c: (
            LN("C" + "A" * i) - (-1) ** i * q ** -i * qm ** i * m(i, 0, 1), i)),
        Membership(f"LCBj[j={j}]", lambda c: (
            LN("C" + "B" * j) - q ** j * qm ** j * m(0, j, 1), j)),
    ]


def ad_abc(ctx: Context, i: int, j: int, k: int) -> list:
    alg, m = ctx.alg, ctx.m
    x = m(i, j, k)
    n = i + j + k
    tag = f"[i={i},j={j},k={k}]"
    return [
        Membership("AABC" + tag, lambda c: (
            alg.bracket(alg.A, x) - (1 - q ** (2 * (j - k))) * m(i + 1, j, k), n)),
        Membership("BABC" + tag, lambda c: (
            alg.bracket(alg.B, x) - (q ** (2 * i) - q ** (2 * k)) * m(i, j + 1, k), n)),
        Membership("CABC" + tag, lambda c: (
            alg.bracket(alg.C, x) - (q ** (2 * (j - i)) - 1) * m(i, j, k + 1), n)),
    ]


def mixed(ctx: Context, i: int, j: int, k: int) -> list:
    """Families indexed by ``i, j, k >= 1``; the C-A-B ones need ``i >= 2``."""
    LN, m = ctx.LN, ctx.m
    Om = ctx.alg.omega
    out = [
        Membership(f"BAiBj[i={i},j={j}]", lambda c: (
            LN("B" + "A" * i + "B" * j)
            - (-1) ** j * q ** i * (q ** (2 * i) - 1) ** j * qm ** i * m(i, j + 1), i + j)),
        Membership(f"CAiCk[i={i},k={k}]", lambda c: (
            LN("C" + "A" * i + "C" * k)
            - (-1) ** i * q ** (-i * (2 * k + 1)) * (q ** (2 * i) - 1) ** k * qm ** i * m(i, 0, k + 1),
            i + k)),
        Membership(f"CBjCk[j={j},k={k}]", lambda c: (
            LN("C" + "B" * j + "C" * k)
            - (-1) ** k * q ** j * (q ** (2 * j) - 1) ** k * qm ** j * m(0, j, k + 1), j + k)),
        Membership(f"BABjCk[j={j},k={k}]", lambda c: (
            LN("BA" + "B" * j + "C" * k)
            - (-1) ** (j + k) * q ** -j * (q ** (2 * j) - 1) ** k * qm ** (j + 1)
            * m(0, j, k - 1) * Om, j + k + 1)),
    ]
    if i >= 2:
        out += [
            Membership(f"CAiBj[i={i},j={j}]", lambda c: (
                LN("C" + "A" * i + "B" * j)
                - (-1) ** (i + j) * q ** (1 - i) * (q ** (2 * (i - 1)) - 1) ** j * qm ** i
                * m(i - 1, j - 1) * Om, i + j)),
            Membership(f"CAiBCk[i={i},k={k}]", lambda c: (
                LN("C" + "A" * i + "B" + "C" * k)
                - (-1) ** (i + 1) * q ** ((1 - i) * (1 + 2 * k)) * (q ** (2 * (i - 1)) - 1) ** (k + 1)
                * qm ** i * m(i - 1, 0, k) * Om, i + k + 1)),
        ]
    return out


def two_gen_low(ctx: Context, j: int, k: int) -> list:
    """The i = 1, 2 specializations of the [BA^iB^j]-type families."""
    LN, m = ctx.LN, ctx.m
    return [
        Membership(f"BAiBj11[j={j}]", lambda c: (
            LN("BA" + "B" * j) - (-1) ** j * q ** (j + 1) * qm ** (j + 1) * m(1, j + 1), j + 1)),
        Membership(
            f"CAiCk11[k={k}]",
            lambda c: (LN("CA" + "C" * k) + q ** -(k + 1) * qm ** (k + 1) * m(1, 0, k + 1), k + 1),
            lambda c: (LN("CA" + "C" * k) + q ** -(k + 2) * qm ** (k + 1) * m(1, 0, k + 1), k + 1),
        ),
        Membership(f"CBjCk11[k={k}]", lambda c: (
            LN("CB" + "C" * k) - (-1) ** k * q ** (k + 1) * qm ** (k + 1) * m(0, 1, k + 1), k + 1)),
        Membership(f"BAiBj12[j={j}]", lambda c: (
            LN("BAA" + "B" * j)
            - (-1) ** j * q ** (2 * (j + 1)) * qp ** j * qm ** (j + 2) * m(2, j + 1), j + 2)),
        Membership(
            f"CAiCk12[k={k}]",
            lambda c: (LN("CAA" + "C" * k)
                       - q ** (-2 * (k + 1)) * qp ** k * qm ** (k + 2) * m(2, 0, k + 1), k + 2),
            lambda c: (LN("CAA" + "C" * k)
                       - q ** (-2 * (k + 1)) * qp ** k * qm ** (k + 1) * m(2, 0, k + 1), k + 2),
        ),
        Membership(f"CBjCk12[k={k}]", lambda c: (
            LN("CBB" + "C" * k)
            - (-1) ** k * q ** (2 * (k + 1)) * qp ** k * qm ** (k + 2) * m(0, 2, k + 1), k + 2)),
    ]


def omega_leading(ctx: Context) -> list:
    L, alg = ctx.L, ctx.alg
    Om = alg.omega
    return [
        Membership("Om18", lambda c: (L(18) + qm ** 3 * alg.A * Om, 3)),
        Membership("Om24", lambda c: (L(24) - qm ** 3 * alg.B * Om, 3)),
        Membership("Om32", lambda c: (L(32) - qm ** 3 * alg.C * Om, 3)),
    ]


def l5_leading(ctx: Context) -> list:
    L, m = ctx.L, ctx.m
    Om = ctx.alg.omega
    return [
        Membership("L5H36", lambda c: (L(36) - qp * qm ** 4 * m(2) * Om, 4)),
        Membership("L5H38", lambda c: (L(38) - q * qm ** 4 * m(1, 1) * Om, 4)),
        Membership("L5H45", lambda c: (L(45) + q ** -1 * qm ** 4 * m(1, 0, 1) * Om, 4)),
        Membership("L5H46", lambda c: (L(46) + qp * qm ** 4 * m(0, 2) * Om, 4)),
        Membership("L5H51", lambda c: (L(51) + q * qm ** 4 * m(0, 1, 1) * Om, 4)),
        Membership("L5H72", lambda c: (L(72) + qp * qm ** 4 * m(0, 0, 2) * Om, 4)),
    ]


def l5_two_gen(ctx: Context, j: int, k: int) -> list:
    LN, m = ctx.LN, ctx.m
    return [
        Membership(f"BAiBjL5[j={j}]", lambda c: (
            LN("BAAA" + "B" * j)
            - (-1) ** j * q ** 3 * (q ** 6 - 1) ** j * qm ** 3 * m(3, j + 1), j + 3)),
        Membership(f"CAiCkL5[k={k}]", lambda c: (
            LN("CAAA" + "C" * k)
            + q ** (-3 * (2 * k + 1)) * (q ** 6 - 1) ** k * qm ** 3 * m(3, 0, k + 1), k + 3)),
        Membership(f"CBjCkL5[k={k}]", lambda c: (
            LN("CBBB" + "C" * k)
            - (-1) ** k * q ** 3 * (q ** 6 - 1) ** k * qm ** 3 * m(0, 3, k + 1), k + 3)),
    ]


# --- span statements ----------------------------------------------------------

def span_targets(ctx: Context) -> dict:
    """The eight replacement statements: each target must lie in the span set."""
    L = ctx.L
    al, be, ga = ctx.alg.alpha, ctx.alg.beta, ctx.alg.gamma
    c6 = (q ** 6 - 1) / (q ** 3 * qm ** 3)
    return {
        "H52": L(13) * al + L(52) / qm ** 2,
        "H54": L(14) * be - L(54) / qm ** 2 + L(52) / qm ** 2,
        "H57": L(7) * ga - c6 * L(57),
        "H59": L(9) * ga + qp ** 2 * L(59) / qm ** 2,
        "H66": L(8) * be - c6 * L(66),
        "H71": L(13) * be + qp ** 2 * L(71) / qm ** 2,
        "H77": L(11) * al - c6 * L(77),
        "H80": L(14) * al + qp ** 2 * L(80) / qm ** 2,
    }
