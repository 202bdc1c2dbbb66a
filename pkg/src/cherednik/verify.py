"""Seeded randomized property suites behind ``cherednik verify-all``.

Every suite draws its cases from a ``random.Random`` seeded by the caller and
raises on the first failed identity.  ``run_all`` collects one row per suite;
an exception (including ``DivisionFailure`` from corrupted reflection data) is
reported in the row instead of aborting the run.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import poly as P
from .dirac import MismatchAt, dirac_square_check
from .field import symbol
from .global_dirac import DOComplex, GlobalDirac, cancellation_identities, check_commutation, global_square_check
from .group import ParameterFunction, ReflectionGroup, build_group
from .linalg import vaxpy
from .modules import (
    BabyVerma,
    IntegralReflectionM,
    IntegralReflectionX,
    RelationCheckFailure,
    StandardModule,
    check_euler,
    check_relations,
)

__all__ = ["SUITES", "PropertyFailure", "run_all", "random_poly"]

POLY_GROUPS = ("Z2", "Z3", "Z4", "B2", "G2")
MODULE_GROUPS = ("Z2", "Z3", "B2", "G2")
GLOBAL_GROUPS = ("Z2", "Z3", "B2")


class PropertyFailure(AssertionError):
    pass


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise PropertyFailure(what)


def random_poly(rng: random.Random, r: int, dmax: int, terms: int = 3) -> dict:
    out: dict = {}
    for _ in range(terms):
        d = rng.randint(0, dmax)
        e = [0] * r
        for _ in range(d):
            e[rng.randrange(r)] += 1
        out = P.padd(out, {tuple(e): rng.randint(-3, 3)})
    return out


def _vec(rng: random.Random, r: int) -> list:
    return [rng.randint(-2, 2) for _ in range(r)]


def _random_monomial(rng: random.Random, r: int, d: int) -> dict:
    return {rng.choice(P.monomials(r, d)): 1}


class _Ctx:
    def __init__(self, groups: dict):
        self.groups = groups

    def pick(self, rng: random.Random, names) -> ReflectionGroup:
        names = [n for n in names if n in self.groups] or list(self.groups)
        return self.groups[rng.choice(names)]


def _param(rng: random.Random, G: ReflectionGroup, t, allow_symbolic: bool = True) -> ParameterFunction:
    if allow_symbolic and rng.random() < 0.3:
        return ParameterFunction.constant(G, symbol("c"), t)
    vals = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 5)) for _ in G.reflection_classes)
    return ParameterFunction(G, vals, t)


# ---------------------------------------------------------------------------
# polynomial operators


def suite_divided_differences(rng, ctx, cases):
    for _ in range(cases):
        G = ctx.pick(rng, POLY_GROUPS)
        s = rng.choice(G.reflections)
        dual = rng.random() < 0.5
        mat, form = (G.mats_h[s.index], s.coalpha) if dual else (G.mats_hs[s.index], s.alpha)
        p = random_poly(rng, G.rank, 5)
        quo = P.divided_diff(G, s, p, dual)
        _require(P.mul_linear(quo, form) == P.padd(p, P.act(p, mat), -1), "alpha_s Delta_s != 1 - s")
    return cases


def suite_integral_identities(rng, ctx, cases):
    for _ in range(cases):
        G = ctx.pick(rng, POLY_GROUPS)
        s = rng.choice(G.reflections)
        r = G.rank
        smat, smat_dual = G.mats_hs[s.index], G.mats_h[s.index]
        p = random_poly(rng, r, 4)
        q = random_poly(rng, r, 4)
        # I_s d_{alpha_s^vee} = 1 - s and the dual statement
        lhs = P.integral_op(G, s, P.partial(p, s.coalpha))
        _require(lhs == P.padd(p, P.act(p, smat), -1), "I_s o d_coalpha != 1 - s")
        lhs = P.integral_op(G, s, P.partial(q, s.alpha), dual=True)
        _require(lhs == P.padd(q, P.act(q, smat_dual), -1), "I_s^v o d_alpha != 1 - s")
        # [d_y, I_s] = d_s alpha_s(y) s and the dual statement
        y = _vec(rng, r)
        comm = P.padd(P.partial(P.integral_op(G, s, p), y), P.integral_op(G, s, P.partial(p, y)), -1)
        _require(comm == P.pscale(P.act(p, smat), s.d * s.alpha_at(y)), "[d_y, I_s] != d_s alpha_s(y) s")
        x = _vec(rng, r)
        comm = P.padd(P.partial(P.integral_op(G, s, q, True), x), P.integral_op(G, s, P.partial(q, x), True), -1)
        _require(comm == P.pscale(P.act(q, smat_dual), s.dcheck * s.x_at_coalpha(x)), "[d_x, I_s^v] != d_s^v x(coalpha) s")
    return cases


def suite_duality(rng, ctx, cases):
    done = 0
    for name in [n for n in POLY_GROUPS if n in ctx.groups] or list(ctx.groups):
        G = ctx.groups[name]
        for _ in range(cases):
            s = rng.choice(G.reflections)
            sinv = G.refl_of[G.inverse[s.index]]
            d = rng.randint(1, 5)
            p = _random_monomial(rng, G.rank, d)
            q = _random_monomial(rng, G.rank, d - 1)
            _require(
                P.pairing(P.divided_diff(G, s, p), q) == P.pairing(p, P.integral_op(G, sinv, q, dual=True)),
                "<Delta_s p, q> != <p, I^v_{s^-1} q>",
            )
            q = _random_monomial(rng, G.rank, d + 1)
            p = _random_monomial(rng, G.rank, d)
            _require(
                P.pairing(P.integral_op(G, s, p), q) == P.pairing(p, P.divided_diff(G, sinv, q, dual=True)),
                "<I_s p, q> != <p, Delta^v_{s^-1} q>",
            )
            done += 1
    return done


def suite_expansions(rng, ctx, cases):
    for _ in range(cases):
        G = ctx.pick(rng, POLY_GROUPS)
        s = rng.choice(G.reflections)
        dual = rng.random() < 0.5
        mat = G.mats_h[s.index] if dual else G.mats_hs[s.index]
        p = random_poly(rng, G.rank, 6)
        sp = P.act(p, mat)
        _require(P.s_expansion(G, s, p, dual) == sp, "reflection expansion")
        _require(P.one_minus_s_expansion(G, s, p, dual) == P.padd(p, sp, -1), "(1 - s) expansion")
        _require(P.delta_expansion(G, s, p, dual) == P.divided_diff(G, s, p, dual), "Delta_s expansion")
        _require(P.integral_expansion(G, s, p, dual) == P.integral_op(G, s, p, dual), "I_s expansion")
    return cases


def suite_integration_by_parts(rng, ctx, cases):
    for _ in range(cases):
        G = ctx.pick(rng, POLY_GROUPS)
        s = rng.choice(G.reflections)
        q1 = random_poly(rng, G.rank, 3)
        q2 = random_poly(rng, G.rank, 3)
        lhs = P.integral_op(G, s, P.pmul(q1, P.partial(q2, s.alpha)), dual=True)
        prod = P.pmul(q1, q2)
        rhs = P.padd(prod, P.act(prod, G.mats_h[s.index]), -1)
        rhs = P.padd(rhs, P.integral_op(G, s, P.pmul(P.partial(q1, s.alpha), q2), dual=True), -1)
        _require(lhs == rhs, "integration by parts")
    return cases


def suite_multiplication_commutator(rng, ctx, cases):
    for _ in range(cases):
        G = ctx.pick(rng, POLY_GROUPS)
        s = rng.choice(G.reflections)
        p = random_poly(rng, G.rank, 4)
        x = _vec(rng, G.rank)
        comm = P.padd(P.integral_op(G, s, P.mul_linear(p, x)), P.mul_linear(P.integral_op(G, s, p), x), -1)
        _require(comm == P.pscale(P.psi_op(G, s, p), s.x_at_coalpha(x)), "[I_s, mu_x] != x(coalpha) Psi_s")
    return cases


# ---------------------------------------------------------------------------
# module realizations


def _random_module(rng, ctx):
    G = ctx.pick(rng, MODULE_GROUPS)
    tau = rng.choice(G.labels())
    kind = rng.choice(("standard", "irM", "irX", "baby-verma"))
    t = Fraction(0) if kind == "baby-verma" else rng.choice((Fraction(0), Fraction(1), Fraction(2, 3)))
    c = _param(rng, G, t)
    if kind == "standard":
        return StandardModule(G, tau, c), 2
    if kind == "irM":
        return IntegralReflectionM(G, tau, c), 2
    if kind == "irX":
        return IntegralReflectionX(G, tau, c, rng.randint(0, 1)), 1
    return BabyVerma(G, tau, c), None


def _count(M, cutoff) -> int:
    return sum(len(M.basis(k)) for k in M.degrees(cutoff))


def suite_module_relations(rng, ctx, cases):
    done = 0
    while done < cases:
        M, cutoff = _random_module(rng, ctx)
        try:
            check_relations(M, cutoff)
        except RelationCheckFailure as exc:
            raise PropertyFailure(f"{M.kind} {M.G.name} {M.tau_label}: {exc}") from exc
        fails = check_euler(M, cutoff, expect_scalar=M.kind != "irX")
        _require(not fails, f"Euler grading on {M.kind} {M.G.name} {M.tau_label}: {fails[:1]}")
        done += _count(M, cutoff)
    return done


def suite_dunkl_commutativity(rng, ctx, cases):
    done = 0
    while done < cases:
        G = ctx.pick(rng, ("B2", "G2", "Z3"))
        c = _param(rng, G, rng.choice((Fraction(0), Fraction(1))))
        M = StandardModule(G, rng.choice(G.labels()), c)
        for k in range(3):
            for key in M.basis(k):
                v = {key: 1}
                for i in range(G.rank):
                    for j in range(i + 1, G.rank):
                        diff = M.act_y(i, M.act_y(j, v))
                        vaxpy(diff, -1, M.act_y(j, M.act_y(i, v)))
                        _require(not diff, "Dunkl operators do not commute")
                done += 1
        D = GlobalDirac(G, rng.choice(G.labels()), c, 0)
        for d in range(3):
            for q in P.monomials(G.rank, d):
                for z in range(D.tau.dim):
                    for i in range(G.rank):
                        for j in range(i + 1, G.rank):
                            a = _apply_qz(D, i, _apply_qz(D, j, {(q, z): 1}))
                            vaxpy(a, -1, _apply_qz(D, j, _apply_qz(D, i, {(q, z): 1})))
                            _require(not a, "dual Dunkl operators do not commute")
                    done += 1
    return done


def _apply_qz(D, j, v):
    out: dict = {}
    for (q, z), a in v.items():
        for k, b in D.dual_dunkl_qz(j, q, z).items():
            w = out.get(k, 0) + a * b
            if w == 0:
                out.pop(k, None)
            else:
                out[k] = w
    return out


# ---------------------------------------------------------------------------
# Dirac operators


def suite_local_dirac_square(rng, ctx, cases):
    done = 0
    while done < cases:
        M, cutoff = _random_module(rng, ctx)
        try:
            done += dirac_square_check(M, 1 if cutoff else None)["vectors_checked"]
        except MismatchAt as exc:
            raise PropertyFailure(f"D^2 on {M.kind} {M.G.name} {M.tau_label}: {exc}") from exc
    return done


def _random_global(rng, ctx):
    G = ctx.pick(rng, GLOBAL_GROUPS)
    t = rng.choice((Fraction(0), Fraction(1)))
    c = _param(rng, G, t)
    level = 2 if G.rank == 1 else 1
    return GlobalDirac(G, rng.choice(G.labels()), c, level), (1 if G.rank == 1 else 0)


def suite_global_square(rng, ctx, cases):
    done = 0
    while done < cases:
        D, cutoff = _random_global(rng, ctx)
        done += global_square_check(D, cutoff)["vectors_checked"]
    return done


def suite_cancellation(rng, ctx, cases):
    done = 0
    while done < cases:
        D, cutoff = _random_global(rng, ctx)
        done += cancellation_identities(D, cutoff)["vectors_checked"]
    return done


def suite_commutation(rng, ctx, cases):
    done = 0
    while done < cases:
        D, cutoff = _random_global(rng, ctx)
        done += check_commutation(D, cutoff)
    return done


def suite_koszul(rng, ctx, cases):
    done = 0
    while done < cases:
        G = ctx.pick(rng, GLOBAL_GROUPS)
        c = _param(rng, G, Fraction(1))
        cx = DOComplex(G, rng.choice(G.labels()), c)
        done += cx.identities(3 if G.rank == 1 else 2)["vectors_checked"]
    return done


SUITES = {
    "divided-differences": suite_divided_differences,
    "integral-identities": suite_integral_identities,
    "duality": suite_duality,
    "expansions": suite_expansions,
    "integration-by-parts": suite_integration_by_parts,
    "multiplication-commutator": suite_multiplication_commutator,
    "module-relations": suite_module_relations,
    "dunkl-commutativity": suite_dunkl_commutativity,
    "local-dirac-square": suite_local_dirac_square,
    "global-dirac-square": suite_global_square,
    "cancellation": suite_cancellation,
    "commutation": suite_commutation,
    "koszul": suite_koszul,
}


def _run_one(job) -> dict:
    seed, cases, name, groups = job
    if groups is None:
        groups = {n: build_group(n) for n in sorted(set(POLY_GROUPS + MODULE_GROUPS + GLOBAL_GROUPS))}
    rng = random.Random(f"{seed}:{name}")
    row = {"suite": name, "ok": True, "cases": 0, "error": ""}
    try:
        row["cases"] = SUITES[name](rng, _Ctx(groups), cases)
    except Exception as exc:  # reported, not raised
        row["ok"] = False
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def run_all(seed: int = 0, cases: int = 200, suites=None, groups: dict | None = None, workers: int = 1) -> list[dict]:
    """Run the named suites (all by default); one row per suite, failures captured.

    Each suite has its own generator seeded from (seed, suite name), so the
    rows do not depend on ``workers``.
    """
    names = list(suites or SUITES)
    if groups is None and workers <= 1:
        groups = {n: build_group(n) for n in sorted(set(POLY_GROUPS + MODULE_GROUPS + GLOBAL_GROUPS))}
    jobs = [(seed, cases, name, groups) for name in names]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_one, jobs))
    return [_run_one(job) for job in jobs]
