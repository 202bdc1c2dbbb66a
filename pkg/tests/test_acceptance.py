"""Acceptance checks 1-10, each printing one ``criterion N: PASS|FAIL`` line."""

from fractions import Fraction

import pytest

from cherednik import cli
from cherednik import dirac as dr
from cherednik.field import symbol
from cherednik.global_dirac import do_complex, global_index_check, z2_suite
from cherednik.group import ParameterFunction
from cherednik.laurent import GradedCharacter, LPoly, parse_lpoly as q
from cherednik.modules import BabyVerma, StandardModule, graded_character, one_dimensional_check
from cherednik.verify import SUITES, run_all

from conftest import group

C = symbol("c")

B2_BLOCK = ["11x0", "0x2", "1x1"]
B2_D = [["1", "q^2", "-q"], ["q^2", "1", "-q"], ["-q-q^3", "-q-q^3", "1+q^4"]]
B2_N = [["1", "q^4", "q"], ["q^4", "1", "q"], ["q+q^3", "q+q^3", "1+q^2"]]

G2_BLOCK = ["phi'_{1,3}", "phi''_{1,3}", "phi_{2,2}", "phi_{2,1}"]
G2_D = [
    ["1", "q^2", "-q", "0"],
    ["q^2", "1", "-q", "0"],
    ["-q", "-q", "1+q^2", "-q"],
    ["0", "0", "-q-q^3", "1+q^4"],
]
G2_N = [
    ["1", "q^6", "q+q^5", "q^2"],
    ["q^6", "1", "q+q^5", "q^2"],
    ["q+q^5", "q+q^5", "1+q^2+q^4+q^6", "q+q^3"],
    ["q^2+q^4", "q^2+q^4", "q+2q^3+q^5", "1+q^4"],
]


@pytest.fixture
def report(capsys):
    def emit(n, check):
        try:
            check()
        except Exception as exc:
            with capsys.disabled():
                print(f"\ncriterion {n}: FAIL ({type(exc).__name__}: {exc})")
            raise
        with capsys.disabled():
            print(f"\ncriterion {n}: PASS")

    return emit


def _matrix(rows, order):
    return {(a, b): q(v) for a, row in zip(order, rows) for b, v in zip(order, row)}


def _golden_block(name, order, d_rows, n_rows, pg, table):
    G = group(name)
    c = ParameterFunction.constant(G, C, 0)
    d = dr.dirac_index_matrix(G, c, order)
    n = dr.multiplicity_matrix(G, c, order)
    assert d == _matrix(d_rows, order)
    assert n == _matrix(n_rows, order)
    assert G.P_G == q(pg[0]) * q(pg[1])
    prod = dr.matrix_product(d, n, order)
    assert all(prod[(a, b)] == (G.P_G if a == b else LPoly()) for a in order for b in order)
    assert cli.main(["reproduce", table]) == cli.EXIT_OK


def test_criterion_1_b2_matrices(report):
    report(1, lambda: _golden_block("B2", B2_BLOCK, B2_D, B2_N, ("1-q^2", "1-q^4"), "B2-matrices"))


def test_criterion_2_g2_matrices(report):
    report(2, lambda: _golden_block("G2", G2_BLOCK, G2_D, G2_N, ("1-q^2", "1-q^6"), "G2-matrices"))


def test_criterion_3_simple_heads(report):
    def check():
        B2, G2 = group("B2"), group("G2")
        hb = dr.restricted_heads(B2, ParameterFunction.constant(B2, C, 0))
        hg = dr.restricted_heads(G2, ParameterFunction.constant(G2, C, 0))
        assert hb["1x1"][1] == GradedCharacter({"1x1": q("1+q^2"), "2x0": q("q"), "0x11": q("q")})
        assert hg["phi_{2,1}"][1] == GradedCharacter(
            {"phi_{2,1}": q("1+q^2"), "phi_{1,0}": q("q"), "phi_{1,6}": q("q")}
        )

    report(3, check)


def test_criterion_4_z2_suite(report):
    def check():
        rows = z2_suite(cutoff=4)
        assert len(rows) == 12
        for row in rows:
            assert row["ker_ok"] and row["coker_ok"] and row["stable"], row
        for row in rows:
            if row["singular"]:
                n = abs(2 * Fraction(row["c"]))
                assert row["certificate"]["K0"] == n

    report(4, check)


def test_criterion_5_global_index(report):
    def check():
        Z2 = group("Z2")
        for tau in ("triv", "sgn"):
            ts = Z2.irrep(tau).character[1]
            values = [Fraction(-ts * (2 * k + 1), 2) for k in range(3)] + [Fraction(1, 3), Fraction(2), Fraction(-5, 4)]
            for cv in values:
                c = ParameterFunction.constant(Z2, cv, Fraction(1))
                assert global_index_check(Z2, tau, c, 4, recheck=True)["ok"]
        B2 = group("B2")
        for cv in (Fraction(1, 5), Fraction(1, 2)):
            c = ParameterFunction.constant(B2, cv, Fraction(1))
            for tau in B2.labels():
                assert global_index_check(B2, tau, c, 1)["ok"]

    report(5, check)


def test_criterion_6_property_suites(report):
    def check():
        rows = run_all(seed=0, cases=200)
        assert [r["suite"] for r in rows] == list(SUITES)
        bad = [r for r in rows if not r["ok"] or r["cases"] < 200]
        assert not bad, bad

    report(6, check)


def test_criterion_7_standard_indices(report):
    def check():
        for name in ("Z2", "Z3", "B2", "G2"):
            G = group(name)
            c = ParameterFunction.generic(G, per_class=True)
            c0 = ParameterFunction.constant(G, C, 0)
            for lab in G.labels():
                ch = graded_character(StandardModule(G, lab, c), 4)
                assert dr.dirac_index(G, ch, 4) == GradedCharacter({lab: LPoly.const(1)})
                assert dr.dirac_index(G, graded_character(BabyVerma(G, lab, c0))) == GradedCharacter({lab: G.P_G})

    report(7, check)


def test_criterion_8_ep_pairing(report):
    def check():
        G = group("B2")
        c = ParameterFunction.constant(G, C, 0)
        heads = dr.restricted_heads(G, c)
        d = dr.dirac_index_matrix(G, c, B2_BLOCK)
        hi = G.rank + 6
        chars = {lab: graded_character(StandardModule(G, lab, c), hi) for lab in B2_BLOCK}
        for route in ("index", "elliptic"):
            for tau in B2_BLOCK:
                for sig in B2_BLOCK:
                    mm = dr.ep_pairing(G, chars[tau], chars[sig], route, hi=hi).truncate(None, hi - G.rank)
                    assert mm == (LPoly.const(1) if tau == sig else LPoly())
                    assert dr.ep_pairing(G, chars[tau], heads[sig][1], route, hi=hi) == d[(sig, tau)]

    report(8, check)


def test_criterion_9_one_dimensional(report):
    def check():
        seen = 0
        for name in ("Z2", "I2(3)", "B2", "I2(5)", "G2"):
            G = group(name)
            for lab in G.labels():
                ir = G.irrep(lab)
                if ir.dim != 1 or len({ir.character[s.index] for s in G.reflections}) != 1:
                    continue
                eps = ir.character[G.reflections[0].index]
                for shift in (Fraction(0), Fraction(1, 7), Fraction(-1, 7)):
                    res = one_dimensional_check(G, lab, ParameterFunction.constant(G, eps / G.coxeter_number + shift))
                    assert res["criterion"] == res["witness"] == (shift == 0), (name, lab, shift)
                    seen += 1
        assert seen >= 30

    report(9, check)


def test_criterion_10_do_complex(report):
    def check():
        G = group("Z2")
        for tau in ("triv", "sgn"):
            for cv in (Fraction(0), Fraction(1, 3), Fraction(2)):
                res = do_complex(G, tau, ParameterFunction.constant(G, cv, Fraction(1)), 12)
                assert res["higher_vanish"] and res["h0_is_tau"], (tau, cv)
            outcomes = set()
            for k in range(20):
                res = do_complex(G, tau, ParameterFunction.constant(G, Fraction(k - 10, 2), Fraction(1)), 12)
                assert res["agree"], (tau, k)
                outcomes.add(res["higher_vanish"])
            # the scan meets both regimes
            assert outcomes == {True, False}

    report(10, check)
