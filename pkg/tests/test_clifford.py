from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cherednik.clifford import (
    apply_sparse,
    det_one_minus_gq,
    kappa,
    lambda_pm_character,
    spin_act,
    tau_element,
    wedge_basis,
    wedge_power_matrix,
)
from cherednik.laurent import GradedCharacter, LPoly, parse_lpoly

from conftest import group

GROUPS = ["Z2", "Z3", "Z4", "B2", "G2"]


def _basis_vectors(r):
    for i in range(r):
        e = [0] * r
        e[i] = 1
        yield e, [0] * r
        yield [0] * r, e


def _pair(a, b):
    (ya, xa), (yb, xb) = a, b
    return sum(x * y for x, y in zip(xa, yb)) + sum(x * y for x, y in zip(xb, ya))


def _compose_sparse(a, b):
    out = {}
    for (t, m), u in a.items():
        for (m2, s), v in b.items():
            if m == m2:
                out[(t, s)] = out.get((t, s), 0) + u * v
    return {k: v for k, v in out.items() if v != 0}


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("dual", [False, True])
def test_clifford_relation_on_basis(r, dual):
    vs = list(_basis_vectors(r))
    for a, b in product(vs, vs):
        for S in wedge_basis(r):
            om = {S: 1}
            ab = spin_act(*a, spin_act(*b, om, dual), dual)
            ba = spin_act(*b, spin_act(*a, om, dual), dual)
            total = dict(ab)
            for k, v in ba.items():
                total[k] = total.get(k, 0) + v
            total = {k: v for k, v in total.items() if v != 0}
            expect = {S: -2 * _pair(a, b)} if _pair(a, b) else {}
            assert total == expect


@given(st.integers(1, 3).flatmap(lambda r: st.tuples(*[st.integers(-3, 3)] * (2 * r)).map(lambda t: (r, t))), st.booleans())
def test_spin_action_flips_parity(data, dual):
    r, coords = data
    y, x = list(coords[:r]), list(coords[r:])
    for S in wedge_basis(r):
        for T in spin_act(y, x, {S: 1}, dual):
            assert (len(T) - len(S)) % 2 == 1


def test_spin_examples():
    assert spin_act([0], [1], spin_act([1], [0], {(): 1})) == {(): -2}
    assert spin_act([1, 0], [0, 0], {(0, 1): 1}) == {}
    assert spin_act([0, 1], [0, 0], {(0, 1): 1}) == {}


@pytest.mark.parametrize("name", GROUPS)
def test_tau_acts_by_reflection(name):
    G = group(name)
    for s in G.reflections:
        assert tau_element(G, s) == wedge_power_matrix(G.mats_h[s.index])
        assert tau_element(G, s, dual=True) == wedge_power_matrix(G.mats_hs[s.index])


def test_z2_tau_signs():
    G = group("Z2")
    (s,) = G.reflections
    assert tau_element(G, s) == {((), ()): 1, ((0,), (0,)): -1}


@pytest.mark.parametrize("name", GROUPS)
def test_tau_is_multiplicative(name):
    G = group(name)
    refl = {r.index: r for r in G.reflections}
    for a, b in product(G.reflections, G.reflections):
        ab = G.mult[a.index][b.index]
        comp = _compose_sparse(tau_element(G, a), tau_element(G, b))
        assert comp == wedge_power_matrix(G.mats_h[ab])
        if ab in refl:
            assert comp == tau_element(G, refl[ab])


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("dual", [False, True])
def test_kappa_scalars(r, dual):
    k = kappa(r, dual)
    for S in wedge_basis(r):
        got = apply_sparse(k, {S: 1})
        ell = len(S)
        # kappa/2 acts on Lambda^l by l - r/2 (on S* the degree is counted from the top)
        half = Fraction(ell) - Fraction(r, 2) if not dual else Fraction(r, 2) - ell
        assert got == ({S: 2 * half} if half else {})


def test_lambda_characters():
    B2, G2 = group("B2"), group("G2")
    q = parse_lpoly
    assert lambda_pm_character(B2, "h") == GradedCharacter({"2x0": q("1"), "1x1": q("-q"), "0x11": q("q^2")})
    assert lambda_pm_character(G2, "h") == GradedCharacter(
        {"phi_{1,0}": q("1"), "phi_{2,1}": q("-q"), "phi_{1,6}": q("q^2")}
    )


@pytest.mark.parametrize("name", GROUPS)
def test_lambda_character_is_det_one_minus_gq(name):
    G = group(name)
    ch = lambda_pm_character(G, "hs")
    for g in range(G.order):
        total = LPoly()
        for lab, poly in ch.data.items():
            total = total + poly * LPoly.const(G.irrep(lab).character[g])
        assert total == det_one_minus_gq(G, g)


def test_lambda_v_alternating_dimension_vanishes():
    G = group("B2")
    ch = lambda_pm_character(G, "V")
    # at q = 1 the alternating sum of dimensions vanishes
    assert sum(G.irrep(l).dim * p.at_one() for l, p in ch.data.items()) == 0


def test_unknown_space_rejected():
    with pytest.raises(ValueError):
        lambda_pm_character(group("Z2"), "w")
