from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cherednik import poly as P
from cherednik.modules import fundamental_invariants

from conftest import group

GROUPS = ["Z2", "Z3", "Z4", "B2", "G2"]


@st.composite
def setups(draw, dmax=4):
    G = group(draw(st.sampled_from(GROUPS)))
    s = draw(st.sampled_from(G.reflections))
    r = G.rank
    mono = st.tuples(*[st.integers(0, dmax)] * r).filter(lambda e: sum(e) <= dmax)
    p = draw(st.dictionaries(mono, st.integers(-3, 3).filter(bool), max_size=4))
    q = draw(st.dictionaries(mono, st.integers(-3, 3).filter(bool), max_size=4))
    v = draw(st.lists(st.integers(-2, 2), min_size=r, max_size=r))
    return G, s, p, q, v


def x(e):
    return {tuple(e): 1}


def test_derivative_examples():
    assert P.partial(x([5]), [1]) == {(4,): 5}
    assert P.partial({(0,): 1}, [1]) == {}
    assert P.partial(x([2, 1]), [1, 0]) == {(1, 1): 2}


def test_z2_action_and_divided_difference():
    G = group("Z2")
    (s,) = G.reflections
    for n in range(6):
        assert P.act(x([n]), G.mats_hs[s.index]) == {(n,): (-1) ** n}
    assert P.divided_diff(G, s, x([2])) == {}
    assert P.divided_diff(G, s, x([3])) == {(2,): 2}


@pytest.mark.parametrize("name", GROUPS)
def test_delta_of_alpha(name):
    G = group(name)
    for s in G.reflections:
        assert P.divided_diff(G, s, P.linear_form(s.alpha)) == {(0,) * G.rank: 1 - s.lam}
        assert 1 - s.lam == 2 * s.d


def test_identity_acts_trivially():
    G = group("B2")
    p = {(2, 1): 3, (0, 4): -1}
    assert P.act(p, G.mats_hs[0]) == p


def test_b2_invariant_is_fixed_and_killed():
    G = group("B2")
    # average of x1^2 over the group is a degree-two invariant
    avg = {}
    for m in G.mats_hs:
        avg = P.padd(avg, P.act(x([2, 0]), m), Fraction(1, G.order))
    assert avg
    inv2 = [f for f in fundamental_invariants(G) if P.degree(f) == 2][0]
    assert all(v * inv2[next(iter(avg))] == inv2[e] * avg[next(iter(avg))] for e, v in avg.items())
    for s in G.reflections:
        assert P.act(avg, G.mats_hs[s.index]) == avg
        assert P.divided_diff(G, s, avg) == {}


def test_divided_difference_rejects_corrupt_form():
    import dataclasses

    G = group("B2")
    s = G.reflections[0]
    bad_alpha = (s.alpha[0] + 1, s.alpha[1] + 2)
    assert bad_alpha[0] * s.alpha[1] != bad_alpha[1] * s.alpha[0]
    bad = dataclasses.replace(s, alpha=bad_alpha)
    with pytest.raises(P.DivisionFailure):
        for e in P.monomials(2, 3):
            P.divided_diff(G, bad, x(e))


def test_z2_dual_integral_on_powers():
    G = group("Z2")
    (s,) = G.reflections
    for d in range(8):
        got = P.integral_op(G, s, x([d]), dual=True)
        assert got == ({} if d % 2 else {(d + 1,): Fraction(2, d + 1)})


def test_z3_integral_of_constant():
    G = group("Z3")
    for s in G.reflections:
        # a line integral of 1 along alpha_s^vee gives u = alpha_s/2, and (1 - s)u = (1 - lam) u
        got = P.integral_op(G, s, {(0,): 1})
        assert got == {(1,): (1 - s.lam) * s.alpha[0] / 2}
        assert got == {(1,): s.d * s.alpha[0]}


def test_pairing_examples():
    assert P.pairing(x([1]), x([1])) == 1
    for n in range(7):
        assert P.pairing(x([n]), x([n])) == factorial(n)
    assert P.pairing(x([2, 1]), x([1, 2])) == 0
    assert P.pairing(x([2, 1]), x([2, 1])) == 2


def test_monomials_and_format():
    assert P.monomials(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert P.format_poly({(2, 1): 3, (0, 2): Fraction(-1, 2)}) == "3 * x1^2 x2 - 1/2 * x2^2"
    assert P.format_poly({}) == "0"


@given(setups())
def test_divided_difference_certificate_and_leibniz(data):
    G, s, p, q, _ = data
    mat = G.mats_hs[s.index]
    dp = P.divided_diff(G, s, p)
    assert P.mul_linear(dp, s.alpha) == P.padd(p, P.act(p, mat), -1)
    if P.degree(p):
        assert P.degree(dp) is None or P.degree(dp) < P.degree(p)
    lhs = P.divided_diff(G, s, P.pmul(q, p))
    rhs = P.padd(P.pmul(q, dp), P.pmul(P.divided_diff(G, s, q), P.act(p, mat)))
    assert lhs == rhs


@given(setups())
def test_integral_inverts_derivative(data):
    G, s, p, q, _ = data
    assert P.integral_op(G, s, P.partial(p, s.coalpha)) == P.padd(p, P.act(p, G.mats_hs[s.index]), -1)
    assert P.integral_op(G, s, P.partial(q, s.alpha), dual=True) == P.padd(q, P.act(q, G.mats_h[s.index]), -1)


@given(setups())
def test_derivative_commutator_with_integral(data):
    G, s, p, _, y = data
    comm = P.padd(P.partial(P.integral_op(G, s, p), y), P.integral_op(G, s, P.partial(p, y)), -1)
    assert comm == P.pscale(P.act(p, G.mats_hs[s.index]), s.d * s.alpha_at(y))


@given(setups(), st.lists(st.integers(-3, 3), min_size=1, max_size=4))
def test_integral_independent_of_antiderivative(data, coeffs):
    G, s, p, _, _ = data
    # antiderivatives differ by polynomials in the forms vanishing on alpha_s^vee, which s fixes
    if G.rank == 1:
        ell = {(0,): 1}
    else:
        ell = P.linear_form([s.coalpha[1], -s.coalpha[0]])
    k, power = {}, {(0,) * G.rank: 1}
    for a in coeffs:
        k = P.padd(k, power, a)
        power = P.pmul(power, ell)
    assert P.partial(k, s.coalpha) == {}
    assert P.act(k, G.mats_hs[s.index]) == k
    assert P.integral_op(G, s, p) == P.integral_expansion(G, s, p)


@given(setups(dmax=3))
def test_duality_of_delta_and_integral(data):
    G, s, p, q, _ = data
    sinv = G.refl_of[G.inverse[s.index]]
    assert P.pairing(P.divided_diff(G, s, p), q) == P.pairing(p, P.integral_op(G, sinv, q, dual=True))
    assert P.pairing(P.integral_op(G, s, p), q) == P.pairing(p, P.divided_diff(G, sinv, q, dual=True))


@given(setups(dmax=6), st.booleans())
def test_operator_expansions(data, dual):
    G, s, p, _, _ = data
    mat = G.mats_h[s.index] if dual else G.mats_hs[s.index]
    sp = P.act(p, mat)
    assert P.s_expansion(G, s, p, dual) == sp
    assert P.one_minus_s_expansion(G, s, p, dual) == P.padd(p, sp, -1)
    assert P.delta_expansion(G, s, p, dual) == P.divided_diff(G, s, p, dual)
    assert P.integral_expansion(G, s, p, dual) == P.integral_op(G, s, p, dual)


@given(setups(dmax=3))
def test_integration_by_parts(data):
    G, s, q1, q2, _ = data
    lhs = P.integral_op(G, s, P.pmul(q1, P.partial(q2, s.alpha)), dual=True)
    prod = P.pmul(q1, q2)
    rhs = P.padd(prod, P.act(prod, G.mats_h[s.index]), -1)
    rhs = P.padd(rhs, P.integral_op(G, s, P.pmul(P.partial(q1, s.alpha), q2), dual=True), -1)
    assert lhs == rhs


@given(setups())
def test_multiplication_commutator(data):
    G, s, p, _, v = data
    comm = P.padd(P.integral_op(G, s, P.mul_linear(p, v)), P.mul_linear(P.integral_op(G, s, p), v), -1)
    assert comm == P.pscale(P.psi_op(G, s, p), s.x_at_coalpha(v))


@given(setups(), st.integers(0, 11))
def test_equivariance_of_integral(data, gi):
    G, s, p, _, _ = data
    g = gi % G.order
    ginv = G.inverse[g]
    conj_s = G.refl_of[G.mult[G.mult[g][s.index]][ginv]]
    # g(alpha_s) = k alpha_{gsg^-1}, and rescaling alpha by k rescales I by k
    m = G.mats_hs[g]
    image = [sum((m[i][j] * s.alpha[j] for j in range(G.rank)), Fraction(0)) for i in range(G.rank)]
    j = next(i for i, a in enumerate(conj_s.alpha) if a != 0)
    k = image[j] / conj_s.alpha[j]
    assert image == [k * a for a in conj_s.alpha]
    lhs = P.act(P.integral_op(G, s, P.act(p, G.mats_hs[ginv])), m)
    assert lhs == P.pscale(P.integral_op(G, conj_s, p), k)
