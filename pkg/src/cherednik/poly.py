"""Polynomials on h and h* and the operators acting on them.

A polynomial is a plain dict ``exponent tuple -> scalar`` without zero
coefficients.  The same functions serve C[h] (variables x_i) and C[h*]
(variables y_i): a derivative along a vector is given by the vector's
coordinates, since x_i(y_j) = delta_ij in both directions.  Group elements act
through their matrix on the space of variables (``mats_hs`` for C[h],
``mats_h`` for C[h*]), column j being the image of the j-th variable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .field import format_scalar

__all__ = [
    "DivisionFailure",
    "monomials",
    "padd",
    "pscale",
    "pmul",
    "linear_form",
    "partial",
    "partial_power",
    "mul_linear",
    "act",
    "divided_diff",
    "integral_op",
    "pairing",
    "s_expansion",
    "one_minus_s_expansion",
    "delta_expansion",
    "integral_expansion",
    "psi_op",
    "degree",
    "format_poly",
]


class DivisionFailure(ArithmeticError):
    """A polynomial expected to be divisible by a linear form was not."""


def monomials(r: int, d: int) -> list[tuple]:
    """Exponent tuples of total degree d in r variables, lexicographically descending."""
    if r == 0:
        return [()] if d == 0 else []
    if r == 1:
        return [(d,)]
    out = []
    for a in range(d, -1, -1):
        for rest in monomials(r - 1, d - a):
            out.append((a,) + rest)
    return out


def degree(p: dict) -> int | None:
    return max((sum(e) for e in p), default=None)


def padd(p: dict, q: dict, a=1) -> dict:
    """p + a*q."""
    out = dict(p)
    for e, v in q.items():
        w = out.get(e, 0) + a * v
        if w == 0:
            out.pop(e, None)
        else:
            out[e] = w
    return out


def pscale(p: dict, a) -> dict:
    if a == 0:
        return {}
    return {e: v * a for e, v in p.items()}


def pmul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, v1 in p.items():
        for e2, v2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            w = out.get(e, 0) + v1 * v2
            if w == 0:
                out.pop(e, None)
            else:
                out[e] = w
    return out


def linear_form(coords) -> dict:
    """The degree-one polynomial sum_i coords[i] * var_i."""
    r = len(coords)
    out = {}
    for i, a in enumerate(coords):
        if a != 0:
            e = [0] * r
            e[i] = 1
            out[tuple(e)] = a
    return out


def partial(p: dict, v) -> dict:
    """Derivative along the vector with coordinates v."""
    out: dict = {}
    for e, c in p.items():
        for i, a in enumerate(v):
            if a == 0 or e[i] == 0:
                continue
            f = e[:i] + (e[i] - 1,) + e[i + 1 :]
            w = out.get(f, 0) + c * a * e[i]
            if w == 0:
                out.pop(f, None)
            else:
                out[f] = w
    return out


def partial_power(p: dict, v, n: int) -> dict:
    for _ in range(n):
        if not p:
            break
        p = partial(p, v)
    return p


def mul_linear(p: dict, v) -> dict:
    return pmul(p, linear_form(v))


@lru_cache(maxsize=None)
def _act_monomial(mat: tuple, e: tuple) -> dict:
    r = len(e)
    if not any(e):
        return {e: 1}
    i = next(k for k in range(r) if e[k])
    rest = e[:i] + (e[i] - 1,) + e[i + 1 :]
    image = linear_form([mat[k][i] for k in range(r)])
    return pmul(image, _act_monomial(mat, rest))


def act(p: dict, mat) -> dict:
    """Image of p under the algebra automorphism extending a linear map on the variables."""
    mat = tuple(tuple(row) for row in mat)
    out: dict = {}
    for e, c in p.items():
        for f, v in _act_monomial(mat, e).items():
            w = out.get(f, 0) + c * v
            if w == 0:
                out.pop(f, None)
            else:
                out[f] = w
    return out


def _divide_linear(p: dict, form) -> dict:
    k = next((i for i, a in enumerate(form) if a != 0), None)
    if k is None:
        raise DivisionFailure("division by the zero form")
    lead = form[k]
    rest = {}
    for i, a in enumerate(form):
        if i != k and a != 0:
            rest[i] = a
    rem = dict(p)
    quo: dict = {}
    while True:
        cands = [e for e in rem if e[k] > 0]
        if not cands:
            break
        top = max(e[k] for e in cands)
        for e in [e for e in cands if e[k] == top]:
            coef = rem.pop(e) / lead
            f = e[:k] + (e[k] - 1,) + e[k + 1 :]
            quo[f] = quo.get(f, 0) + coef
            for i, a in rest.items():
                g = f[:i] + (f[i] + 1,) + f[i + 1 :]
                w = rem.get(g, 0) - coef * a
                if w == 0:
                    rem.pop(g, None)
                else:
                    rem[g] = w
    if rem:
        raise DivisionFailure("polynomial is not divisible by the linear form")
    return {e: v for e, v in quo.items() if v != 0}


def _refl_data(G, s, dual: bool):
    """(matrix of s on the variables, divisor form, derivative direction, half-form) for I_s or its dual."""
    if dual:
        return G.mats_h[s.index], s.coalpha, s.alpha, [a / 2 for a in s.coalpha]
    return G.mats_hs[s.index], s.alpha, s.coalpha, [a / 2 for a in s.alpha]


def divided_diff(G, s, p: dict, dual: bool = False) -> dict:
    """Delta_s p = (p - s(p)) / alpha_s on C[h]; with ``dual`` the same with alpha_s^vee on C[h*]."""
    mat, form, _, _ = _refl_data(G, s, dual)
    return _divide_linear(padd(p, act(p, mat), -1), form)


def integral_op(G, s, p: dict, dual: bool = False) -> dict:
    """I_s p = (1 - s) P for the antiderivative P = sum_n (-1)^n u^(n+1)/(n+1)! d^n p along alpha_s^vee.

    Here u = alpha_s / 2, so that the derivative of u along alpha_s^vee is 1.
    With ``dual`` this is I_s^vee on C[h*] (roles of alpha_s and alpha_s^vee swapped).
    """
    mat, _, direction, half = _refl_data(G, s, dual)
    u = linear_form(half)
    big: dict = {}
    upow = dict(u)
    term = p
    n = 0
    while term:
        big = padd(big, pmul(upow, term), Fraction((-1) ** n, factorial(n + 1)))
        term = partial(term, direction)
        upow = pmul(upow, u)
        n += 1
    return padd(big, act(big, mat), -1)


def pairing(p: dict, q: dict):
    """(p(d) q)(0) for p in C[h], q in C[h*] in dual coordinates."""
    total = 0
    for e, a in p.items():
        b = q.get(e)
        if b is not None:
            w = 1
            for k in e:
                w *= factorial(k)
            total = total + a * b * w
    return total


def s_expansion(G, s, p: dict, dual: bool = False) -> dict:
    return _series_from(G, s, p, dual, 0, lambda n: Fraction((-1) ** n, factorial(n)), 0, 0)


def one_minus_s_expansion(G, s, p: dict, dual: bool = False) -> dict:
    return _series_from(G, s, p, dual, 1, lambda n: Fraction((-1) ** (n + 1), factorial(n)), 0, 0)


def delta_expansion(G, s, p: dict, dual: bool = False) -> dict:
    return _series_from(G, s, p, dual, 1, lambda n: Fraction((-1) ** (n + 1), factorial(n)), -1, 0)


def integral_expansion(G, s, p: dict, dual: bool = False) -> dict:
    return _series_from(G, s, p, dual, 1, lambda n: Fraction((-1) ** (n + 1), factorial(n)), 0, -1)


def psi_op(G, s, p: dict, dual: bool = False) -> dict:
    """Psi_s = sum_{n>=2} (-1)^(n+1) / (n (n-2)!) d_s^n alpha_s^n D^(n-2)."""
    return _series_from(G, s, p, dual, 2, lambda n: Fraction((-1) ** (n + 1), n * factorial(n - 2)), 0, -2)


def _series_from(G, s, p, dual, start, coeff, alpha_shift, deriv_shift):
    """sum_{n>=start} coeff(n) d^n alpha^(n+alpha_shift) D^(n+deriv_shift) p."""
    _, form, direction, _ = _refl_data(G, s, dual)
    dd = s.dcheck if dual else s.d
    lin = linear_form(form)
    out: dict = {}
    n = start
    term = partial_power(p, direction, n + deriv_shift)
    apow = {tuple(0 for _ in form): 1}
    for _ in range(n + alpha_shift):
        apow = pmul(apow, lin)
    while term:
        out = padd(out, pmul(apow, term), coeff(n) * dd**n)
        term = partial(term, direction)
        apow = pmul(apow, lin)
        n += 1
    return out


def format_poly(p: dict, var: str = "x") -> str:
    """Canonical text, total-degree-major with descending exponents: ``3 * x1^2 x2 - 1/2 * x2^2``."""
    if not p:
        return "0"
    keys = sorted(p, key=lambda e: (-sum(e), tuple(-a for a in e)))
    parts = []
    for e in keys:
        mono = " ".join(f"{var}{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
        coef = format_scalar(p[e])
        if mono:
            parts.append(f"{coef} * {mono}")
        else:
            parts.append(coef)
    out = parts[0]
    for part in parts[1:]:
        out += " - " + part[1:] if part.startswith("-") else " + " + part
    return out
