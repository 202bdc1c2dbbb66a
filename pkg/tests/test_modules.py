from fractions import Fraction
from math import factorial

import pytest

from cherednik import poly as P
from cherednik.clifford import det_one_minus_gq
from cherednik.field import symbol
from cherednik.group import ParameterFunction
from cherednik.laurent import GradedCharacter, LPoly, parse_lpoly
from cherednik.modules import (
    BabyVerma,
    IntegralReflectionM,
    IntegralReflectionX,
    OppositeStandardModule,
    Rep,
    SimpleHead,
    StandardModule,
    check_euler,
    check_relations,
    coinvariant_basis,
    fundamental_invariants,
    generated_submodule_character,
    graded_character,
    one_dimensional_check,
    piece_character,
    rep_of,
    singular_vectors,
    symmetric_power_class_function,
)

from conftest import group

C = symbol("c")
MODULE_GROUPS = ["Z2", "Z3", "B2", "G2"]


def _cases():
    for name in MODULE_GROUPS:
        for lab in group(name).labels():
            yield name, lab


def _params(G, t=Fraction(1)):
    return ParameterFunction.generic(G, t, per_class=True)


def _x_power(M, v, i, m):
    for _ in range(m):
        v = M.act_x(i, v)
    return v


# ---------------------------------------------------------------- relations


@pytest.mark.parametrize("name, lab", list(_cases()))
@pytest.mark.parametrize("kind", ["standard", "irM"])
def test_relations_and_euler(name, lab, kind):
    G = group(name)
    c = _params(G)
    cls = StandardModule if kind == "standard" else IntegralReflectionM
    M = cls(G, lab, c)
    cutoff = 3 if G.rank == 1 else 2
    assert check_relations(M, cutoff) == []
    assert check_euler(M, cutoff) == []


@pytest.mark.parametrize("name", MODULE_GROUPS)
@pytest.mark.parametrize("t", [Fraction(0), Fraction(2, 3)])
def test_relations_at_special_parameters(name, t):
    G = group(name)
    vals = tuple(Fraction(3 * i + 1, 4) for i in range(len(G.reflection_classes)))
    c = ParameterFunction(G, vals, t)
    lab = G.labels()[-1]
    for M in (StandardModule(G, lab, c), IntegralReflectionM(G, lab, c), IntegralReflectionX(G, lab, c, 1)):
        assert check_relations(M, 1) == []
        assert check_euler(M, 1, expect_scalar=False) == []


def test_z2_commutator_with_powers_of_x():
    G = group("Z2")
    c = ParameterFunction.constant(G, C)
    (s,) = G.reflections
    for lab in G.labels():
        M = StandardModule(G, lab, c)
        for j in range(4):
            v = {((j,), 0): 1}
            for m in range(1, 6):
                lhs = P.padd(M.act_y(0, _x_power(M, v, 0, m)), _x_power(M, M.act_y(0, v), 0, m), -1)
                rhs = P.padd(
                    P.pscale(_x_power(M, v, 0, m - 1), m),
                    P.pscale(_x_power(M, M.act_g(s.index, v), 0, m - 1), -C * (1 - (-1) ** m)),
                )
                assert lhs == rhs


def test_flat_standard_module_uses_plain_derivatives():
    G = group("B2")
    M = StandardModule(G, "1x1", ParameterFunction.constant(G, 0))
    for key in M.basis(3):
        for i in range(2):
            e, z = key
            expect = {(f, z): a for f, a in P.partial({e: 1}, [int(i == j) for j in range(2)]).items()}
            assert M.act_y(i, {key: 1}) == expect


def test_b2_euler_scalar_by_degree():
    G = group("B2")
    c = ParameterFunction.constant(G, C)
    for lab in G.labels():
        assert check_euler(StandardModule(G, lab, c), 4) == []


def test_relation_failure_detected_for_wrong_parameter_function():
    from cherednik.modules import RelationCheckFailure

    G = group("B2")
    c = ParameterFunction.constant(G, C)
    M = StandardModule(G, "2x0", c)
    M.refl_coef = M.refl_coef[1:]
    with pytest.raises(RelationCheckFailure):
        check_relations(M, 2)


# ---------------------------------------------------------------- duality


def _pair_keys(a, b):
    (p, zi), (q, wj) = a, b
    if p != q or zi != wj:
        return 0
    w = 1
    for k in p:
        w *= factorial(k)
    return w


def _pair(u, v):
    total = 0
    for a, x in u.items():
        for b, y in v.items():
            w = _pair_keys(a, b)
            if w:
                total = total + x * y * w
    return total


@pytest.mark.parametrize("name, lab", list(_cases()))
def test_gamma_duality_with_opposite_module(name, lab):
    G = group(name)
    c = _params(G)
    M = IntegralReflectionM(G, lab, c)
    O = OppositeStandardModule(G, rep_of(G, lab).dual(G), c.check())
    for k in range(3):
        for a in M.basis(k):
            v = {a: 1}
            for i in range(G.rank):
                for b in O.basis(-(k + 1)):
                    assert _pair(M.act_x(i, v), {b: 1}) == _pair(v, P.pscale(O.act_x(i, {b: 1}), -1))
                for b in O.basis(-(k - 1)) if k else []:
                    assert _pair(M.act_y(i, v), {b: 1}) == _pair(v, O.act_y(i, {b: 1}))
            for b in O.basis(-k):
                for g in range(G.order):
                    assert _pair(M.act_g(g, v), {b: 1}) == _pair(v, O.act_g(G.inverse[g], {b: 1}))


@pytest.mark.parametrize("name", MODULE_GROUPS)
def test_opposite_module_relations(name):
    G = group(name)
    lab = G.labels()[-1]
    O = OppositeStandardModule(G, lab, _params(G), hi=2)
    assert check_relations(O) == []


# ---------------------------------------------------------------- filtration


def _sym_tensor_rep(G, n, lab):
    """C[h*]_n (x) tau as a Rep, with y-monomials as basis."""
    monos = P.monomials(G.rank, n)
    mats = []
    for g in range(G.order):
        cols = [P.act({e: 1}, G.mats_h[g]) for e in monos]
        mats.append(tuple(tuple(cols[j].get(monos[i], 0) for j in range(len(monos))) for i in range(len(monos))))
    return Rep(f"S{n}", len(monos), tuple(mats)).tensor(rep_of(G, lab))


@pytest.mark.parametrize("name, lab", [("Z2", "triv"), ("Z2", "sgn"), ("Z3", "chi1"), ("B2", "1x1"), ("G2", "phi_{1,6}")])
def test_filtration_quotients(name, lab):
    G = group(name)
    c = _params(G)
    cutoff = 3 if G.rank == 1 else 2
    prev = None
    for n in range(3 if G.rank == 1 else 2):
        X = IntegralReflectionX(G, lab, c, n)
        assert check_relations(X, cutoff - 1) == []
        ch = graded_character(X, cutoff)
        if prev is not None:
            quotient = IntegralReflectionM(G, _sym_tensor_rep(G, n, lab), c)
            expect = graded_character(quotient, cutoff + n).shift(-n)
            assert ch - prev == expect
        prev = ch


@pytest.mark.parametrize("name, lab", list(_cases()))
def test_bottom_of_filtration_is_integral_reflection_module(name, lab):
    G = group(name)
    c = _params(G)
    X = IntegralReflectionX(G, lab, c, 0)
    M = IntegralReflectionM(G, lab, c)
    zero = (0,) * G.rank

    def lift(v):
        return {(e, zero, z): a for (e, z), a in v.items()}

    for k in range(3):
        for key in M.basis(k):
            v = {key: 1}
            for i in range(G.rank):
                assert X.act_x(i, lift(v)) == lift(M.act_x(i, v))
                assert X.act_y(i, lift(v)) == lift(M.act_y(i, v))
            for g in G.generators:
                assert X.act_g(g, lift(v)) == lift(M.act_g(g, v))


def test_h_singular_vectors_of_filtration_piece():
    G = group("B2")
    X = IntegralReflectionX(G, "1x1", _params(G), 1)
    # y kills exactly the vectors with constant C[h] part
    for k in (-1, 0):
        sing = singular_vectors(X, k)
        expected = [key for key in X.basis(k) if sum(key[0]) == 0]
        assert len(sing) == len(expected)
        assert all(sum(key[0]) == 0 for v in sing for key in v)
    assert singular_vectors(X, 1) == []


# ---------------------------------------------------------------- coinvariants and baby Vermas


@pytest.mark.parametrize("name, dims", [("Z2", [1, 1]), ("B2", [1, 2, 2, 2, 1]), ("G2", [1, 2, 2, 2, 2, 2, 1])])
def test_coinvariant_hilbert_series(name, dims):
    G = group(name)
    basis = coinvariant_basis(G)
    assert [len(basis[d]) for d in sorted(basis)] == dims
    assert sum(dims) == G.order
    # (prod (1 - q^d_i)) / (1 - q)^r expanded
    series = G.P_G
    for _ in range(G.rank):
        series = _divide_by_one_minus_q(series)
    assert [series.coeff(d) for d in range(len(dims))] == dims


def _divide_by_one_minus_q(p):
    out, acc = {}, 0
    for d in range(p.min_degree(), p.max_degree() + 1):
        acc += p.coeff(d)
        if acc:
            out[d] = acc
    return LPoly(out)


def test_z2_coinvariants_and_baby_verma_basis():
    G = group("Z2")
    assert coinvariant_basis(G) == {0: [(0,)], 1: [(1,)]}
    M = BabyVerma(G, "triv", ParameterFunction.constant(G, C, 0))
    assert [key for k in M.degrees() for key in M.basis(k)] == [((0,), 0), ((1,), 0)]


@pytest.mark.parametrize("name", ["B2", "G2"])
def test_fundamental_invariants(name):
    G = group(name)
    invs = fundamental_invariants(G)
    assert sorted(P.degree(f) for f in invs) == sorted(G.fundamental_degrees)
    for f in invs:
        for m in G.mats_hs:
            assert P.act(f, m) == f


@pytest.mark.parametrize("name, lab", [("B2", "1x1"), ("B2", "0x2"), ("G2", "phi_{2,2}"), ("Z3", "chi2")])
def test_baby_verma_character(name, lab):
    G = group(name)
    M = BabyVerma(G, lab, ParameterFunction.constant(G, C, 0))
    dims = sum(len(M.basis(k)) for k in M.degrees())
    assert dims == G.order * G.irrep(lab).dim
    assert check_relations(M) == []
    chi = G.irrep(lab).character
    for g in range(G.order):
        series = LPoly({k: piece_character(M, k)[g] for k in M.degrees() if M.basis(k)})
        assert series * det_one_minus_gq(G, g) == G.P_G * LPoly.const(chi[g])


def test_baby_verma_rejects_nonzero_t():
    G = group("B2")
    with pytest.raises(ValueError):
        BabyVerma(G, "2x0", ParameterFunction.constant(G, C, 1))


def test_b2_simple_heads():
    G = group("B2")
    c = ParameterFunction.constant(G, C, 0)
    q = parse_lpoly
    head = SimpleHead(BabyVerma(G, "1x1", c))
    assert head.character == GradedCharacter({"1x1": q("1+q^2"), "2x0": q("q"), "0x11": q("q")})
    assert SimpleHead(BabyVerma(G, "11x0", c)).character == GradedCharacter({"11x0": q("1")})
    assert SimpleHead(BabyVerma(G, "0x2", c)).character == GradedCharacter({"0x2": q("1")})


def test_g2_simple_head():
    G = group("G2")
    c = ParameterFunction.constant(G, C, 0)
    q = parse_lpoly
    head = SimpleHead(BabyVerma(G, "phi_{2,1}", c))
    assert head.character == GradedCharacter({"phi_{2,1}": q("1+q^2"), "phi_{1,0}": q("q"), "phi_{1,6}": q("q")})


@pytest.mark.parametrize("name", ["Z2", "Z3", "B2"])
def test_simple_heads_have_no_positive_singular_vectors(name):
    G = group(name)
    c = ParameterFunction.constant(G, C, 0)
    for lab in G.labels():
        head = SimpleHead(BabyVerma(G, lab, c))
        assert check_relations(head) == []
        for k in head.degrees():
            if k > 0:
                assert singular_vectors(head, k) == []
        assert generated_submodule_character(head, head.hi) == head.character


def test_flat_head_of_one_dimensional_characters():
    G = group("B2")
    head = SimpleHead(BabyVerma(G, "11x0", ParameterFunction.constant(G, C, 0)))
    assert head.hi == 0
    (key,) = head.basis(0)
    for i in range(2):
        assert head.act_x(i, {key: 1}) == {}
        assert head.act_y(i, {key: 1}) == {}


# ---------------------------------------------------------------- characters and submodules


@pytest.mark.parametrize("name, lab", [("B2", "1x1"), ("G2", "phi_{2,2}"), ("Z3", "chi1")])
def test_standard_module_character_is_product(name, lab):
    G = group(name)
    M = StandardModule(G, lab, _params(G))
    ch = graded_character(M, 4)
    chi = G.irrep(lab).character
    graded = {k: [a * b for a, b in zip(symmetric_power_class_function(G, k), chi)] for k in range(5)}
    assert ch == G.graded_from_class_functions(graded)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_z2_finite_dimensional_quotient(k):
    G = group("Z2")
    c = ParameterFunction.constant(G, Fraction(2 * k + 1, 2))
    ch = generated_submodule_character(IntegralReflectionM(G, "triv", c), 4 * k + 6)
    assert sum(p.at_one() for p in ch.data.values()) == 2 * k + 1
    assert ch.degrees() == list(range(2 * k + 1))


def test_z2_generated_submodule_is_everything_for_regular_c():
    G = group("Z2")
    c = ParameterFunction.constant(G, Fraction(1, 3))
    M = IntegralReflectionM(G, "triv", c)
    assert generated_submodule_character(M, 6) == graded_character(M, 6)


def test_degree_zero_is_singular_in_integral_reflection_module():
    G = group("B2")
    M = IntegralReflectionM(G, "1x1", _params(G))
    assert len(singular_vectors(M, 0)) == 2
    assert singular_vectors(M, 1) == []


def test_one_dimensional_examples():
    Z2 = group("Z2")
    res = one_dimensional_check(Z2, "triv", ParameterFunction.constant(Z2, Fraction(1, 2)))
    assert res["criterion"] and res["witness"]
    for name in ("Z2", "Z3", "B2", "G2"):
        G = group(name)
        flat = ParameterFunction.constant(G, 0)
        for lab in G.labels():
            if G.irrep(lab).dim == 1:
                res = one_dimensional_check(G, lab, flat)
                assert not res["criterion"] and not res["witness"]


@pytest.mark.parametrize("name", ["Z2", "I2(3)", "B2", "I2(5)", "G2"])
@pytest.mark.parametrize("shift", [Fraction(0), Fraction(1, 7), Fraction(-1, 7)])
def test_one_dimensional_at_coxeter_parameter(name, shift):
    G = group(name)
    for lab in G.labels():
        ir = G.irrep(lab)
        if ir.dim != 1 or len({ir.character[s.index] for s in G.reflections}) != 1:
            continue
        eps = ir.character[G.reflections[0].index]
        c = ParameterFunction.constant(G, eps / G.coxeter_number + shift)
        res = one_dimensional_check(G, lab, c)
        assert res["criterion"] == (shift == 0)
        assert res["witness"] == res["criterion"]
