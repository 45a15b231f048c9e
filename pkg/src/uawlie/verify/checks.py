"""The registered checks.

Each check returns ``(passed, witness)``.  Witnesses are JSON-ready and
deterministic: normal forms are printed in their canonical order and
elimination data is reported by row index.
"""

from __future__ import annotations

import random
from collections import Counter

from ..freealg import FreeElement, lie_bracket_free, theta
from ..hall import LieSeries, expand, hall_element, hall_generate, hall_rewrite, witt_count
from ..linalg import (Echelon, bareiss, expansion_matrix, is_admissible_pivot,
                      support_basis)
from ..scalar import RatFunc, parse_scalar, ratfunc_factor_report
from ..uaw import CommPoly
from . import statements as S
from .context import qm, qp
from .registry import register

FAMILY = (1, 12)
DEPENDENT_L5 = (44, 69, 74, 79)
_SHOW = 600


def _show(x) -> str:
    s = str(x)
    return s if len(s) <= _SHOW else s[:_SHOW] + f" ... ({len(x.terms)} terms)"


def _identities(ctx, stmts):
    failures, printed = {}, {}
    for st in stmts:
        lhs, rhs = st.build(ctx)
        diff = lhs - rhs
        if diff:
            failures[st.name] = _show(diff)
        if st.printed is not None:
            plhs, prhs = st.printed(ctx)
            printed[st.name] = plhs == prhs
    witness = {}
    if failures:
        witness["nonzero_differences"] = failures
    if printed:
        witness["printed_form_holds"] = printed
    return not failures, witness or None


def _memberships(ctx, stmts):
    alg = ctx.alg
    failures, printed = {}, {}
    for st in stmts:
        x, n = st.build(ctx)
        if not alg.in_filtration(x, n):
            failures[st.name] = {"bound": n, "degree": alg.filtration_degree(x),
                                 "top_part": _show(x.top_part())}
        if st.printed is not None:
            px, pn = st.printed(ctx)
            printed[st.name] = alg.in_filtration(px, pn)
    witness = {}
    if failures:
        witness["outside_filtration"] = failures
    if printed:
        witness["printed_form_holds"] = printed
    return not failures, witness or None


def _rank_of(vectors, key=lambda w: (sum(w), w)):
    ech = Echelon(key=key)
    for v in vectors:
        ech.add(v.terms)
    return ech.rank


def _pivot_summary(result) -> dict:
    orders, foreign = Counter(), []
    for idx, p in enumerate(result.pivots):
        rep = ratfunc_factor_report(p)
        orders.update(rep.orders())
        if rep.foreign() or not is_admissible_pivot(p.num):
            foreign.append({"pivot": idx, "factors": str(rep)})
    return {"cyclotomic_orders": sorted(orders), "q_power_only": not orders,
            "foreign": foreign}


# --- relations of the algebra ---------------------------------------------

@register("reduction_rules", "BA, CA, CB reduce to the three defining substitutions")
def reduction_rules(ctx):
    alg = ctx.alg
    P = parse_scalar
    expected = {
        "BA": {(1, 1, 0, 0, 0, 0): P("q^2"), (0, 0, 1, 0, 0, 0): P("q^3 - q^-1"),
               (0, 0, 0, 0, 0, 1): P("1 - q^2")},
        "CA": {(1, 0, 1, 0, 0, 0): P("q^-2"), (0, 1, 0, 0, 0, 0): P("q^-3 - q"),
               (0, 0, 0, 0, 1, 0): P("1 - q^-2")},
        "CB": {(0, 1, 1, 0, 0, 0): P("q^2"), (1, 0, 0, 0, 0, 0): P("q^3 - q^-1"),
               (0, 0, 0, 1, 0, 0): P("1 - q^2")},
    }
    bad = {}
    for word, terms in expected.items():
        got = alg.reduce(word)
        if got != alg.element(terms):
            bad[word] = {"got": str(got), "expected": str(alg.element(terms))}
    return not bad, ({"mismatch": bad} if bad else None)


@register("casimir_six_equal", "the six Casimir expressions coincide, have degree 3 and are central")
def casimir_six_equal(ctx):
    alg = ctx.alg
    forms = alg.casimir_expressions()
    witness = {}
    distinct = [i for i, f in enumerate(forms) if f != forms[0]]
    if distinct:
        witness["differs_from_first"] = {str(i): _show(forms[i] - forms[0]) for i in distinct}
    deg = alg.filtration_degree(forms[0])
    if deg != 3:
        witness["degree"] = deg
    for name in "ABC":
        br = alg.bracket(alg.gen(name), forms[0])
        if br:
            witness[f"bracket_{name}"] = _show(br)
    return not witness, witness or None


@register("central_relations", "alpha, beta, gamma reduce to themselves and r0..r8 vanish")
def central_relations(ctx):
    alg = ctx.alg
    witness = {}
    for name, f, g in (("alpha", alg.free_alpha(), alg.alpha), ("beta", alg.free_beta(), alg.beta),
                       ("gamma", alg.free_gamma(), alg.gamma)):
        got = alg.from_free(f)
        if got != g:
            witness[name] = str(got)
    for i, r in enumerate(alg.free_r()):
        got = alg.from_free(r)
        if got:
            witness[f"r{i}"] = _show(got)
    return not witness, witness or None


@register("confluence", "left- and right-first reduction agree on random words of length <= 8",
          bounds={"seed": (0, 2 ** 31 - 1)}, defaults={"seed": 0})
def confluence(ctx, seed):
    alg = ctx.alg
    rng = random.Random(seed)
    for _ in range(200):
        word = "".join(rng.choice("ABC") for _ in range(rng.randint(1, 8)))
        left = alg.element(alg.reduce_word(word, "left"))
        right = alg.element(alg.reduce_word(word, "right"))
        if left != right:
            return False, {"word": word, "difference": _show(left - right)}
    return True, None


# --- free algebra and Hall machinery ---------------------------------------

def _random_tree(rng, n):
    if n == 1:
        return rng.choice("ABC")
    k = rng.randint(1, n - 1)
    return (_random_tree(rng, k), _random_tree(rng, n - k))


@register("hall_machinery", "Hall counts, rewrite round trips and the theta sign on Hall elements",
          bounds={"seed": (0, 2 ** 31 - 1)}, defaults={"seed": 0})
def hall_machinery(ctx, seed):
    witness = {}
    elems = hall_generate(5)
    counts = [sum(1 for h in elems if h.length == n) for n in range(1, 6)]
    if counts != [3, 3, 8, 18, 48] or counts != [witt_count(n) for n in range(1, 6)]:
        witness["counts"] = counts
    if sum(counts[:4]) != 32 or len(elems) != 80:
        witness["totals"] = [sum(counts[:4]), len(elems)]
    rng = random.Random(seed)
    for _ in range(100):
        t = _random_tree(rng, rng.randint(1, 6))
        series = hall_rewrite(t)
        if not series.is_hall() or series.to_free() != expand(t):
            witness["rewrite"] = str(t)
            break
    odd = [h.index for h in elems if theta(expand(h.tree)) != -expand(h.tree)]
    if odd:
        witness["theta_not_negating"] = odd
    return not witness, witness or None


@register("theta_r_nonzero", "theta(r_i) + r_i is nonzero for every defining relation")
def theta_r_nonzero(ctx):
    zero = [i for i, r in enumerate(S.free_r(ctx)) if not (theta(r) + r)]
    return not zero, ({"vanishing": zero} if zero else None)


def _free_check(key):
    def run(ctx):
        return _identities(ctx, S.FREE_IDENTITIES[key])
    return run


for _key, _text in (
    ("free_BA", "[BA] in terms of AB - gamma"),
    ("free_CA", "[CA] in terms of AC - beta"),
    ("free_BAA", "[BAA] in terms of A^2 B, AC and r5"),
    ("free_BAC", "[BAC] in terms of B^2 - A^2 and r0, r1"),
    ("free_H4alpha", "[BA] alpha against H0 and the relations"),
    ("free_I0_identity", "I0 as a combination of brackets with r0, r1, r3, r5"),
):
    register(_key, _text)(_free_check(_key))


def i0_series(ctx=None) -> LieSeries:
    """I0 = [H0, H4] as a series of Hall brackets."""
    T = hall_element
    h0 = (LieSeries.of(T(31)) - LieSeries.of(T(24))) / (qp ** 2 * qm ** 2) \
        + LieSeries.of(T(7)) / qm - LieSeries.of(T(5)).scale(2)
    return hall_rewrite(h0.bracket(LieSeries.of(T(4))))


@register("I0_nonzero_hall", "I0 has exactly four nonzero Hall coordinates")
def i0_nonzero_hall(ctx):
    T = hall_element
    series = i0_series()
    D = qp ** 2 * qm ** 2
    expected = {(T(31), T(4)): 1 / D, (T(24), T(4)): -1 / D, T(57): 1 / qm,
                T(30): RatFunc.coerce(-2)}
    witness = {}
    if series.terms != expected:
        witness["coordinates"] = {str(t): str(c) for t, c in series.items()}
    if not series.is_hall():
        witness["non_hall_keys"] = True
    if series.to_free() != S.free_I0(ctx):
        witness["expansion_mismatch"] = True
    return not witness, witness or None


# --- filtration --------------------------------------------------------------

@register("filtration_two_gen", "[BA^i], [CA^i], [CB^j] leading terms",
          bounds={"i": (0, 12), "j": (0, 12), "k": (0, 12)}, grid=("i", "j"),
          defaults={"i": 1, "j": 1, "k": 1})
def filtration_two_gen(ctx, i, j, k):
    return _memberships(ctx, S.two_gen(ctx, i, j))


@register("filtration_ad_abc", "ad A, ad B, ad C on A^i B^j C^k",
          bounds={"i": (0, 12), "j": (0, 12), "k": (0, 12)}, grid=("i", "j", "k"))
def filtration_ad_abc(ctx, i, j, k):
    return _memberships(ctx, S.ad_abc(ctx, i, j, k))


@register("filtration_mixed", "three-letter families and the Omega-producing families",
          bounds={"i": FAMILY, "j": FAMILY, "k": FAMILY}, grid=("i", "j", "k"))
def filtration_mixed(ctx, i, j, k):
    return _memberships(ctx, S.mixed(ctx, i, j, k) + S.two_gen_low(ctx, j, k))


@register("complement_H10_H12", "[CAB] and [BAC] modulo the degree-2 complement")
def complement_h10_h12(ctx):
    ok, witness = _identities(ctx, S.complement_identities(ctx))
    witness = dict(witness or {})
    for n in (10, 12):
        deg = ctx.alg.filtration_degree(ctx.L(n))
        if deg != 2:
            ok = False
            witness[f"degree_H{n}"] = deg
    return ok, witness or None


@register("omega_leading_H18_H24_H32", "H18, H24, H32 lead with A Omega, B Omega, C Omega")
def omega_leading(ctx):
    return _memberships(ctx, S.omega_leading(ctx))


@register("L5_families", "length-5 Omega-leading terms and the [BA^3 B^j]-type families",
          bounds={"i": FAMILY, "j": FAMILY, "k": FAMILY}, grid=("j", "k"),
          defaults={"i": 1})
def l5_families(ctx, i, j, k):
    return _memberships(ctx, S.l5_leading(ctx) + S.l5_two_gen(ctx, j, k))


# --- identities in the algebra -------------------------------------------------

@register("delta_six_identities", "the six [BA] alpha-type identities")
def delta_six(ctx):
    return _identities(ctx, S.six_identities(ctx))


@register("seven_H5b_H6a", "[CA] beta + [BA] gamma and [CB] alpha - [BA] gamma in Lie monomials")
def seven_h5b_h6a(ctx):
    return _identities(ctx, S.h5b_h6a(ctx))


@register("seven_H7g_H9g", "[BAA] gamma and [BAB] gamma in Lie monomials")
def seven_h7g_h9g(ctx):
    return _identities(ctx, S.h7g_h9g(ctx))


@register("rel5_four_relations", "the four length-5 relations and the seed identity for H44")
def rel5(ctx):
    return _identities(ctx, S.rel5_identities(ctx))


# --- ranks ----------------------------------------------------------------------

def _lie_matrix(ctx, max_len, keep=None):
    elems = [h for h in hall_generate(max_len) if keep is None or keep(h.index)]
    vecs = [ctx.L(h.index) for h in elems]
    basis = support_basis(vecs, key=lambda w: (-sum(w), w))
    return elems, expansion_matrix(vecs, basis)


def _rank_check(ctx, key, max_len, expect, keep=None, tiers=None):
    def build():
        elems, M = _lie_matrix(ctx, max_len, keep)
        row_tiers = [tiers(h.index) for h in elems] if tiers else None
        return elems, bareiss(M, prefer=is_admissible_pivot, row_tiers=row_tiers)

    # the eliminations are deterministic, so one per algebra instance suffices
    elems, res = ctx.memo(("bareiss", key), build)
    summary = _pivot_summary(res)
    witness = {"rows": len(elems), "rank": res.rank, "pivot_factors": summary}
    ok = res.rank == expect and not summary["foreign"]
    return ok, witness, elems, res


@register("L4_rank", "the 32 standard Lie monomials of length <= 4 are independent")
def l4_rank(ctx):
    ok, witness, _, _ = _rank_check(ctx, "L4", 4, 32)
    return ok, witness


@register("L5_rank", "the 80 standard Lie monomials of length <= 5 have rank 76")
def l5_rank(ctx):
    dep = set(DEPENDENT_L5)
    ok, witness, elems, res = _rank_check(ctx, "L5", 5, 76, tiers=lambda n: int(n in dep))
    pivoted = sorted(elems[r].index for r in res.pivot_rows)
    retained = [h.index for h in elems if h.index not in dep]
    if pivoted != retained:
        ok = False
        witness["non_pivot_rows"] = sorted(set(h.index for h in elems) - set(pivoted))
    return ok, witness


@register("L5_basis", "the 76 retained standard Lie monomials of length <= 5 are independent")
def l5_basis(ctx):
    dep = set(DEPENDENT_L5)
    ok, witness, _, _ = _rank_check(ctx, "L5_retained", 5, 76, keep=lambda n: n not in dep)
    return ok, witness


# --- independent families and replacements -----------------------------------------

def base_family(ctx, n: int, l5: bool) -> list:
    """The independent Lie monomials of the length-4 (or length-5) family at ``n``."""
    L, LN, alg = ctx.L, ctx.LN, ctx.alg
    fam = [alg.one(), alg.A, alg.B, alg.C] + [L(x) for x in (10, 12, 18, 24, 32)]
    if l5:
        fam += [L(x) for x in (36, 38, 45, 46, 51, 72)]
    heads = [("B", "A", "B"), ("C", "A", "C"), ("C", "B", "C")]
    for x in range(1, n + 1):
        for first, mid, tail in heads:
            fam += [LN(first + mid * x), LN(first + mid + tail * x), LN(first + mid * 2 + tail * x)]
            if l5:
                fam.append(LN(first + mid * 3 + tail * x))
    return fam


def with_centrals(ctx, fam: list, m: int) -> list:
    mono = ctx.m
    return [Y * mono(0, 0, 0, r, s, t)
            for Y in fam
            for r in range(m + 1) for s in range(m + 1 - r) for t in range(m + 1 - r - s)]


@register("aux_independence", "the auxiliary families times central monomials of degree <= m",
          bounds={"n": FAMILY, "m": (0, 6)}, grid=("n", "m"))
def aux_independence(ctx, n, m):
    witness = {}
    ok = True
    for label, l5 in (("J", False), ("J_prime", True)):
        fam = with_centrals(ctx, base_family(ctx, n, l5), m)
        r = _rank_of(fam)
        witness[label] = {"size": len(fam), "rank": r}
        ok &= r == len(fam)
    return ok, witness


def _key(v):
    return frozenset(v.terms.items())


def _replace(fam, old, new):
    drop = {_key(o) for o in old}
    kept = [v for v in fam if _key(v) not in drop]
    if len(kept) != len(fam) - len(old):
        raise AssertionError("replaced vectors are not all in the family")
    return kept + new


def _central_layer(ctx):
    L = ctx.L
    al, be, ga = ctx.alg.alpha, ctx.alg.beta, ctx.alg.gamma
    old = [L(6) * ga, L(4) * be, L(5) * al, L(6) * be, L(5) * ga, L(4) * al]
    return old, [L(i) for i in (20, 22, 25, 27, 30, 31)]


def replacement_sets(ctx) -> dict:
    """The chain of independent sets ending with one containing the retained 76."""
    L = ctx.L
    al, be, ga = ctx.alg.alpha, ctx.alg.beta, ctx.alg.gamma
    old, new = _central_layer(ctx)
    sets = {
        "J_L4": _replace(with_centrals(ctx, base_family(ctx, 3, False), 1), old, new),
        "J_L5": _replace(with_centrals(ctx, base_family(ctx, 4, True), 1), old, new),
    }
    sets["J0"] = _replace(sets["J_L5"],
                          [L(13) * al, L(14) * be, L(7) * ga, L(9) * ga,
                           L(8) * be, L(13) * be, L(11) * al, L(14) * al],
                          [L(i) for i in (52, 54, 57, 59, 66, 71, 77, 80)])
    groups = [
        ("JA", [L(12) * ga, L(10) * ga, L(9) * be, L(7) * al], (60, 62, 67, 73)),
        ("JB", [L(7) * be, L(8) * ga, L(5) * be], (42, 58, 65)),
        ("JC", [L(12) * be, L(13) * ga, L(8) * al, L(10) * be], (49, 63, 68, 70)),
        ("JD", [L(11) * ga, L(6) * al, L(9) * al], (40, 61, 75)),
        ("JE", [L(10) * al, L(11) * be, L(12) * al, L(14) * ga], (47, 64, 76, 78)),
    ]
    cur = sets["J0"]
    for name, drop, add in groups:
        cur = _replace(cur, drop, [L(i) for i in add])
        sets[name] = cur
    return sets


@register("replacement_chain", "each replacement step keeps the family independent")
def replacement_chain(ctx):
    sets = replacement_sets(ctx)
    witness = {name: {"size": len(v), "rank": _rank_of(v)} for name, v in sets.items()}
    ok = all(w["size"] == w["rank"] for w in witness.values())
    final = {_key(v) for v in sets["JE"]}
    missing = [n for n in range(1, 81)
               if n not in DEPENDENT_L5 and _key(ctx.L(n)) not in final]
    if missing:
        ok = False
        witness["retained_missing_from_JE"] = missing
    return ok, witness


@register("span_replacements", "the eight central-times-monomial targets lie in the span set")
def span_replacements(ctx):
    fam = base_family(ctx, 4, True)
    _, layer = _central_layer(ctx)
    literal = Echelon(key=lambda w: (sum(w), w))
    for v in fam:
        literal.add(v.terms)
    used = Echelon(key=lambda w: (sum(w), w))
    for v in fam + layer:
        used.add(v.terms)
    targets = S.span_targets(ctx)
    outside = [k for k, v in targets.items() if used.solve(v.terms) is None]
    witness = {
        "span_set_rank": used.rank,
        "literal_set_contains": {k: literal.solve(v.terms) is not None for k, v in targets.items()},
    }
    if outside:
        witness["outside_span"] = outside
    return not outside, witness


# --- automorphisms and the commutative image --------------------------------------

def _substitute_free(f: FreeElement, images: dict) -> FreeElement:
    out = FreeElement()
    for word, c in f.terms.items():
        term = FreeElement.scalar(c)
        for x in word:
            term = term * images[x]
        out = out + term
    return out


def _substitute_tree(t, images: dict) -> LieSeries:
    if isinstance(t, str):
        return images[t]
    return _substitute_tree(t[0], images).bracket(_substitute_tree(t[1], images))


@register("psl2_action", "rho^3 = sigma^2 = 1, both kill r_i, fix Omega and preserve the Lie algebra")
def psl2_action(ctx):
    alg = ctx.alg
    witness = {}
    gens = {"A": alg.A, "B": alg.B, "C": alg.C, "al": alg.alpha, "be": alg.beta, "ga": alg.gamma}
    for name, x in gens.items():
        if alg.rho(alg.rho(alg.rho(x))) != x:
            witness.setdefault("rho_cubed", []).append(name)
        if alg.sigma(alg.sigma(x)) != x:
            witness.setdefault("sigma_squared", []).append(name)
    Af, Bf, Cf = (FreeElement.word(x) for x in "ABC")
    free_images = {
        "rho": {"A": Bf, "B": Cf, "C": Af},
        "sigma": {"A": Bf, "B": Af, "C": Cf + lie_bracket_free(Af, Bf) / qm},
    }
    for name, imgs in free_images.items():
        for i, r in enumerate(alg.free_r()):
            img = alg.from_free(_substitute_free(r, imgs))
            if img:
                witness.setdefault(f"{name}_r", {})[f"r{i}"] = _show(img)
        if alg.apply_auto(name, alg.omega) != alg.omega:
            witness[f"{name}_moves_omega"] = True
    T = hall_element
    lie_images = {
        "rho": {"A": LieSeries.of("B"), "B": LieSeries.of("C"), "C": LieSeries.of("A")},
        "sigma": {"A": LieSeries.of("B"), "B": LieSeries.of("A"),
                  "C": LieSeries.of("C") - LieSeries.of(T(4)) / qm},
    }
    for name, imgs in lie_images.items():
        for h in hall_generate(3):
            series = hall_rewrite(_substitute_tree(h.tree, imgs))
            if not series.is_hall() or alg.lie_series(series) != alg.apply_auto(name, alg.H(h.index)):
                witness.setdefault(f"{name}_not_in_L", []).append(h.index)
    return not witness, witness or None


def _comm_family(alg, n):
    """Abar, Bbar, Cbar and Omega-bar^l alpha-bar^r beta-bar^s gamma-bar^t, 3l+r+s+t <= n."""
    Ab, Bb, Cb = CommPoly.var(0), CommPoly.var(1), CommPoly.var(2)
    imgs = alg.psi_images()
    om = alg.psi(alg.omega)
    out = [Ab, Bb, Cb]
    for l in range(n // 3 + 1):
        for r in range(n - 3 * l + 1):
            for s in range(n - 3 * l - r + 1):
                for t in range(n - 3 * l - r - s + 1):
                    out.append(om ** l * imgs["al"] ** r * imgs["be"] ** s * imgs["ga"] ** t)
    return out


@register("psi_homomorphism", "the commutative image: kernel, image formulas, multiplicativity, independence")
def psi_homomorphism(ctx):
    alg = ctx.alg
    Ab, Bb, Cb = CommPoly.var(0), CommPoly.var(1), CommPoly.var(2)
    witness = {}
    nz = [i for i, r in enumerate(alg.free_r()) if alg.psi_free(r)]
    if nz:
        witness["psi_r_nonzero"] = nz
    formulas = {
        "alpha": (alg.psi_free(alg.free_alpha()), qp * Ab + Bb * Cb),
        "beta": (alg.psi_free(alg.free_beta()), qp * Bb + Ab * Cb),
        "gamma": (alg.psi_free(alg.free_gamma()), qp * Cb + Ab * Bb),
        "omega": (alg.psi(alg.omega), -qp * Ab * Bb * Cb - Ab * Ab - Bb * Bb - Cb * Cb),
    }
    for name, (got, want) in formulas.items():
        if got != want:
            witness.setdefault("image_formula", {})[name] = str(got)
    printed_omega = qp * Ab * Bb * Cb - Ab * Ab - Bb * Bb - Cb * Cb
    witness["printed_form_holds"] = {"omega": alg.psi(alg.omega) == printed_omega}
    rng = random.Random(0)
    for _ in range(20):
        x = alg.monomial(*(rng.randint(0, 2) for _ in range(6)))
        y = alg.monomial(*(rng.randint(0, 2) for _ in range(6)))
        if alg.psi(x * y) != alg.psi(x) * alg.psi(y):
            witness.setdefault("not_multiplicative", []).append([str(x), str(y)])
    fam = _comm_family(alg, 3)
    ech = Echelon()
    for v in fam:
        ech.add(v.terms)
    witness["commutative_family"] = {"size": len(fam), "rank": ech.rank}
    ok = not (set(witness) - {"printed_form_holds", "commutative_family"}) and ech.rank == len(fam)
    return ok, witness
