from fractions import Fraction

import pytest

from cherednik import dirac as dr
from cherednik.field import symbol
from cherednik.group import N_c, ParameterFunction
from cherednik.laurent import GradedCharacter, LPoly, parse_lpoly
from cherednik.modules import (
    BabyVerma,
    IntegralReflectionM,
    IntegralReflectionX,
    Rep,
    SimpleHead,
    StandardModule,
    graded_character,
    rep_of,
)

from conftest import group

C = symbol("c")
q = parse_lpoly
B2_BLOCK = ["11x0", "0x2", "1x1"]
G2_BLOCK = ["phi'_{1,3}", "phi''_{1,3}", "phi_{2,2}", "phi_{2,1}"]


def _restricted(G):
    return ParameterFunction.constant(G, C, 0)


def _matrix(rows, order):
    return {(a, b): q(v) for a, row in zip(order, rows) for b, v in zip(order, row)}


# ---------------------------------------------------------------- square and invariance


@pytest.mark.parametrize("name", ["Z2", "Z3", "B2", "G2"])
def test_square_identity_on_standard_and_integral_modules(name):
    G = group(name)
    c = ParameterFunction.generic(G, per_class=True)
    for lab in G.labels():
        for M in (StandardModule(G, lab, c), IntegralReflectionM(G, lab, c)):
            assert dr.dirac_square_check(M, 2)["vectors_checked"] > 0
    assert dr.g_invariance_check(StandardModule(G, G.labels()[-1], c), 2) > 0


@pytest.mark.parametrize("name", ["Z2", "Z3", "B2"])
def test_square_identity_on_restricted_modules(name):
    G = group(name)
    c = _restricted(G)
    for lab in G.labels():
        M = BabyVerma(G, lab, c)
        assert dr.dirac_square_check(M)["ok"]
        assert dr.dirac_square_check(SimpleHead(M))["ok"]


def test_square_identity_on_filtration_piece():
    G = group("B2")
    X = IntegralReflectionX(G, "1x1", ParameterFunction.constant(G, Fraction(1, 3)), 1)
    assert dr.dirac_square_check(X, 1)["vectors_checked"] > 0


def test_flat_square_on_z2_standard_module():
    G = group("Z2")
    M = StandardModule(G, "triv", ParameterFunction.constant(G, 0))
    D = dr.LocalDirac(M)
    for n in D.degrees(5):
        for key in D.basis(n):
            # (1/2) D^2 = -(d + l), vanishing only on 1 (x) 1
            assert D.apply(D.apply({key: 1})) == ({key: -2 * n} if n else {})


@pytest.mark.parametrize("name", ["Z2", "Z3", "B2", "G2"])
def test_isotypic_square_scalars(name):
    G = group(name)
    c = ParameterFunction.generic(G, per_class=True)
    for lab in G.labels():
        res = dr.square_scalar_check(StandardModule(G, lab, c), 2)
        assert res["projections_checked"] > 0
        assert res["k_X"] == Fraction(G.rank, 2) - N_c(G, lab, c)


def test_restricted_square_scalars():
    G = group("B2")
    c = _restricted(G)
    for lab in G.labels():
        M = BabyVerma(G, lab, c)
        assert dr.square_scalar_check(M)["k_X"] == -N_c(G, lab, c)
        assert dr.square_scalar_check(SimpleHead(M))["ok"]


def test_reducible_module_has_no_infinitesimal_character():
    G = group("B2")
    a, b = rep_of(G, "2x0"), rep_of(G, "0x11")
    mats = tuple(((a.matrices[g][0][0], 0), (0, b.matrices[g][0][0])) for g in range(G.order))
    M = StandardModule(G, Rep("2x0+0x11", 2, mats), ParameterFunction.constant(G, Fraction(1, 3)))
    with pytest.raises(dr.NoInfinitesimalCharacter):
        dr.square_scalar_check(M, 1)


# ---------------------------------------------------------------- index and cohomology


@pytest.mark.parametrize("name", ["Z2", "Z3", "B2", "G2"])
def test_index_of_standard_module_is_tau(name):
    G = group(name)
    c = ParameterFunction.generic(G, per_class=True)
    for lab in G.labels():
        ch = graded_character(StandardModule(G, lab, c), 4)
        assert dr.dirac_index(G, ch, 4) == GradedCharacter({lab: LPoly.const(1)})


@pytest.mark.parametrize("name", ["Z2", "Z3", "B2", "G2"])
def test_index_of_baby_verma_is_pg_times_tau(name):
    G = group(name)
    c = _restricted(G)
    for lab in G.labels():
        ch = graded_character(BabyVerma(G, lab, c))
        assert dr.dirac_index(G, ch) == GradedCharacter({lab: G.P_G})


def test_index_of_zero_module():
    G = group("B2")
    assert dr.dirac_index(G, GradedCharacter()) == GradedCharacter()
    assert dr.character_formula_check(G, GradedCharacter(), 3)["ok"]


@pytest.mark.parametrize("name", ["Z2", "B2"])
def test_index_from_characters_matches_cohomology(name):
    G = group(name)
    c = ParameterFunction.constant(G, Fraction(1, 3))
    for lab in G.labels():
        M = StandardModule(G, lab, c)
        via = dr.index_from_cohomology(M, 4).truncate(None, 4)
        assert via == dr.dirac_index(G, graded_character(M, 4), 4)
    c0 = _restricted(G)
    for lab in G.labels():
        L = SimpleHead(BabyVerma(G, lab, c0))
        assert dr.index_from_cohomology(L) == dr.dirac_index(G, L.character)


def test_flat_z2_cohomology_is_in_degree_zero():
    G = group("Z2")
    M = StandardModule(G, "triv", ParameterFunction.constant(G, 0))
    coh = dr.dirac_cohomology(M, 5)
    for n, res in coh.items():
        for sign in ("+", "-"):
            expect = G.irrep("triv").character if (n == 0 and sign == "+") else [0] * G.order
            assert list(res[sign]) == list(expect)


@pytest.mark.parametrize("lab", B2_BLOCK)
def test_b2_cohomology_lies_in_block(lab):
    G = group("B2")
    L = SimpleHead(BabyVerma(G, lab, _restricted(G)))
    seen = set()
    for res in dr.dirac_cohomology(L).values():
        for sign in ("+", "-"):
            if any(v != 0 for v in res[sign]):
                seen |= set(G.decompose_int(res[sign]))
    assert seen and seen <= set(B2_BLOCK)


# ---------------------------------------------------------------- matrices


def test_b2_block_matrices():
    G = group("B2")
    c = _restricted(G)
    n = dr.multiplicity_matrix(G, c, B2_BLOCK)
    d = dr.dirac_index_matrix(G, c, B2_BLOCK)
    assert n == _matrix([["1", "q^4", "q"], ["q^4", "1", "q"], ["q+q^3", "q+q^3", "1+q^2"]], B2_BLOCK)
    assert d == _matrix([["1", "q^2", "-q"], ["q^2", "1", "-q"], ["-q-q^3", "-q-q^3", "1+q^4"]], B2_BLOCK)
    assert dr.check_inverse(G, d, n, B2_BLOCK)


def test_g2_block_matrices():
    G = group("G2")
    c = _restricted(G)
    n = dr.multiplicity_matrix(G, c, G2_BLOCK)
    d = dr.dirac_index_matrix(G, c, G2_BLOCK)
    assert d == _matrix(
        [
            ["1", "q^2", "-q", "0"],
            ["q^2", "1", "-q", "0"],
            ["-q", "-q", "1+q^2", "-q"],
            ["0", "0", "-q-q^3", "1+q^4"],
        ],
        G2_BLOCK,
    )
    assert n[(G2_BLOCK[0], G2_BLOCK[0])] == q("1")
    assert n[(G2_BLOCK[0], G2_BLOCK[1])] == q("q^6")
    assert n[(G2_BLOCK[0], G2_BLOCK[2])] == q("q+q^5")
    assert n[(G2_BLOCK[0], G2_BLOCK[3])] == q("q^2")
    assert dr.check_inverse(G, d, n, G2_BLOCK)


@pytest.mark.parametrize("name", ["Z2", "Z3", "B2", "G2"])
def test_full_matrices_are_inverse_up_to_pg(name):
    G = group(name)
    c = _restricted(G)
    order = G.labels()
    n = dr.multiplicity_matrix(G, c, order)
    d = dr.dirac_index_matrix(G, c, order)
    assert dr.check_inverse(G, d, n, order)
    assert all(v.is_nonnegative() for v in n.values())


@pytest.mark.parametrize("name, block", [("B2", B2_BLOCK), ("G2", G2_BLOCK)])
def test_singleton_blocks(name, block):
    G = group(name)
    c = _restricted(G)
    heads = dr.restricted_heads(G, c)
    n = dr.multiplicity_matrix(G, c)
    d = dr.dirac_index_matrix(G, c)
    for lab in G.labels():
        if lab in block:
            continue
        chM, chL = heads[lab]
        assert chM == chL.scale(n[(lab, lab)])
        assert d[(lab, lab)] * n[(lab, lab)] == G.P_G


def test_inverse_check_reports_failure():
    G = group("B2")
    c = _restricted(G)
    d = dr.dirac_index_matrix(G, c, B2_BLOCK)
    n = dr.multiplicity_matrix(G, c, B2_BLOCK)
    n[("1x1", "1x1")] = q("1")
    with pytest.raises(dr.InverseCheckFailure):
        dr.check_inverse(G, d, n, B2_BLOCK)


# ---------------------------------------------------------------- character formula, pairings, splits


@pytest.mark.parametrize("name", ["Z2", "Z3", "B2", "G2"])
def test_character_formula_for_standard_modules(name):
    G = group(name)
    c = ParameterFunction.generic(G, per_class=True)
    for lab in G.labels():
        assert dr.character_formula_check(G, graded_character(StandardModule(G, lab, c), 5), 5)["ok"]


def test_character_formula_with_index_from_cohomology():
    G = group("B2")
    c = ParameterFunction.constant(G, Fraction(1, 3))
    for lab in G.labels():
        M = StandardModule(G, lab, c)
        via = dr.index_from_cohomology(M, 4)
        assert dr.character_formula_check(G, graded_character(M, 4), 4, index=via)["ok"]


def test_character_formula_for_b2_head():
    G = group("B2")
    c = _restricted(G)
    chL = dr.restricted_heads(G, c)["1x1"][1]
    d = dr.dirac_index_matrix(G, c, B2_BLOCK)
    row = GradedCharacter({t: d[("1x1", t)] for t in B2_BLOCK})
    assert dr.character_formula_check(G, chL, 8, index=row)["ok"]
    L = SimpleHead(BabyVerma(G, "1x1", c))
    assert dr.character_formula_check(G, chL, 8, index=dr.index_from_cohomology(L))["ok"]


def test_character_formula_detects_wrong_index():
    G = group("B2")
    c = _restricted(G)
    chL = dr.restricted_heads(G, c)["1x1"][1]
    with pytest.raises(dr.MismatchAt):
        dr.character_formula_check(G, chL, 8, index=GradedCharacter({"1x1": q("1+q^4")}))


@pytest.mark.parametrize("route", ["index", "elliptic"])
def test_ep_between_standard_modules(route):
    G = group("B2")
    c = ParameterFunction.constant(G, C)
    hi = 6
    chars = {lab: graded_character(StandardModule(G, lab, c), hi) for lab in G.labels()}
    for a in G.labels():
        for b in G.labels():
            # both characters are truncated, so only degrees <= hi - r are exact
            val = dr.ep_pairing(G, chars[a], chars[b], route, hi=hi).truncate(None, hi - G.rank)
            assert val == (LPoly.const(1) if a == b else LPoly())


@pytest.mark.parametrize("route", ["index", "elliptic"])
def test_ep_with_simple_heads_gives_dirac_polynomials(route):
    G = group("B2")
    c = _restricted(G)
    heads = dr.restricted_heads(G, c)
    d = dr.dirac_index_matrix(G, c, B2_BLOCK)
    hi = G.rank + 6
    for tau in B2_BLOCK:
        chM = graded_character(StandardModule(G, tau, c), hi)
        for sig in B2_BLOCK:
            assert dr.ep_pairing(G, chM, heads[sig][1], route, hi=hi) == d[(sig, tau)]
    assert dr.ep_pairing(G, chM, GradedCharacter(), route, hi=hi) == LPoly()


def test_ep_rejects_unknown_route():
    G = group("Z2")
    with pytest.raises(ValueError):
        dr.ep_pairing(G, GradedCharacter(), GradedCharacter(), "other")


def test_index_split_examples():
    G = group("B2")
    c = _restricted(G)
    heads = dr.restricted_heads(G, c)
    plus, minus = dr.index_split(dr.dirac_index(G, heads["11x0"][1]))
    assert plus == GradedCharacter({"11x0": q("1"), "0x2": q("q^2")})
    assert minus == GradedCharacter({"1x1": q("q")})
    for lab in G.labels():
        plus, minus = dr.index_split(dr.dirac_index(G, heads[lab][1]))
        dims = [sum(G.irrep(l).dim * p.at_one() for l, p in part.data.items()) for part in (plus, minus)]
        assert dims[0] == dims[1]
        # disjoint isotypes in each degree
        for l in set(plus.labels()) & set(minus.labels()):
            assert not set(plus[l].terms) & set(minus[l].terms)


def test_index_split_of_standard_module():
    G = group("B2")
    ch = graded_character(StandardModule(G, "1x1", ParameterFunction.constant(G, Fraction(1, 5))), 4)
    plus, minus = dr.index_split(dr.dirac_index(G, ch, 4))
    assert plus == GradedCharacter({"1x1": LPoly.const(1)}) and minus == GradedCharacter()


@pytest.mark.parametrize("name", ["B2", "G2"])
def test_mirror_symmetry(name):
    G = group(name)
    c = _restricted(G)
    for lab in G.labels():
        assert dr.mirror_check(G, c, lab)


def test_restricted_heads_need_t_zero():
    G = group("B2")
    with pytest.raises(ValueError):
        dr.restricted_heads(G, ParameterFunction.constant(G, C, 1))
