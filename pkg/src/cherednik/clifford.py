"""Spin modules S = Lambda h and S* = Lambda h* for the Clifford algebra of h + h*.

Wedge basis vectors are sorted index tuples.  On S the Clifford generators act
by y -> y wedge and x -> -2 (contraction by x); on S* by y -> -(contraction by
y) and x -> 2 x wedge.  Both satisfy vv' + v'v = -2(v, v') for the pairing
(y + x, y' + x') = x(y') + x'(y) on V = h + h*.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .laurent import LPoly

__all__ = [
    "wedge_basis",
    "wedge_in",
    "contract",
    "spin_act",
    "spin_matrix",
    "wedge_power_matrix",
    "tau_element",
    "kappa",
    "lambda_pm_character",
    "apply_sparse",
    "det_one_minus_gq",
]


def wedge_basis(r: int) -> list[tuple]:
    """Subsets of range(r) ordered by size, then lexicographically."""
    return [S for ell in range(r + 1) for S in combinations(range(r), ell)]


def wedge_in(i: int, S: tuple):
    """e_i wedge e_S as (sign, subset), or None."""
    if i in S:
        return None
    pos = sum(1 for j in S if j < i)
    T = tuple(sorted(S + (i,)))
    return (-1 if pos % 2 else 1), T


def contract(i: int, S: tuple):
    """Contraction of e_S by the dual functional of e_i, as (sign, subset), or None."""
    if i not in S:
        return None
    pos = S.index(i)
    return (-1 if pos % 2 else 1), S[:pos] + S[pos + 1 :]


def _add(out: dict, key, val) -> None:
    w = out.get(key, 0) + val
    if w == 0:
        out.pop(key, None)
    else:
        out[key] = w


def spin_act(v_h, v_hs, omega: dict, dual: bool = False) -> dict:
    """Clifford action of (y, x) in h + h* on a spin vector.

    ``v_h`` are the coordinates of y in the y basis and ``v_hs`` those of x in
    the x basis.  ``dual`` selects S* = Lambda h* instead of S = Lambda h.
    """
    out: dict = {}
    wedge_coef, contract_coef = (v_hs, v_h) if dual else (v_h, v_hs)
    wedge_scale, contract_scale = (2, -1) if dual else (1, -2)
    for S, a in omega.items():
        for i, b in enumerate(wedge_coef):
            if b != 0:
                hit = wedge_in(i, S)
                if hit:
                    _add(out, hit[1], a * b * hit[0] * wedge_scale)
        for i, b in enumerate(contract_coef):
            if b != 0:
                hit = contract(i, S)
                if hit:
                    _add(out, hit[1], a * b * hit[0] * contract_scale)
    return out


def spin_matrix(r: int, op) -> dict:
    """Sparse matrix {(row, col): value} of a linear operator on the wedge basis."""
    out = {}
    for S in wedge_basis(r):
        for T, v in op({S: 1}).items():
            out[(T, S)] = v
    return out


def _det(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] != 0:
            minor = [row[:j] + row[j + 1 :] for row in m[1:]]
            term = m[0][j] * _det(minor)
            total = total + (term if j % 2 == 0 else -term)
    return total


def wedge_power_matrix(mat) -> dict:
    """Exterior-power action of a matrix: e_S -> sum_T det(mat[T, S]) e_T."""
    r = len(mat)
    out = {}
    for S in wedge_basis(r):
        for T in combinations(range(r), len(S)):
            v = _det([[mat[i][j] for j in S] for i in T])
            if v != 0:
                out[(T, S)] = v
    return out


def apply_sparse(mat: dict, omega: dict) -> dict:
    out: dict = {}
    for (T, S), v in mat.items():
        a = omega.get(S)
        if a is not None:
            _add(out, T, v * a)
    return out


def tau_element(G, s, dual: bool = False) -> dict:
    """Matrix of tau_s^vee = d_s^vee alpha_s^vee alpha_s / 2 + 1 on S, or tau_s = d_s alpha_s alpha_s^vee / 2 + 1 on S*."""
    r = G.rank
    zero = [0] * r

    def op(omega):
        if dual:
            inner = spin_act(zero, s.alpha, spin_act(s.coalpha, zero, omega, True), True)
            coef = s.d / 2
        else:
            inner = spin_act(s.coalpha, zero, spin_act(zero, s.alpha, omega))
            coef = s.dcheck / 2
        out = dict(omega)
        for k, v in inner.items():
            _add(out, k, coef * v)
        return out

    return spin_matrix(r, op)


def kappa(r: int, dual: bool = False) -> dict:
    """kappa = sum_i (x_i y_i + 1) in the Clifford algebra, as a matrix on S (or S*)."""
    unit = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    zero = [0] * r

    def op(omega):
        out: dict = {}
        for i in range(r):
            img = spin_act(zero, unit[i], spin_act(unit[i], zero, omega, dual), dual)
            for k, v in img.items():
                _add(out, k, v)
            for k, v in omega.items():
                _add(out, k, v)
        return out

    return spin_matrix(r, op)


def lambda_pm_character(G, space: str = "hs"):
    """Graded character of Lambda^+ - Lambda^- of h*, h or V = h + h*, with Lambda^l in degree l."""
    if space == "hs":
        chars = G.wedge_chars_hs
    elif space == "h":
        chars = G.wedge_chars_h
    elif space == "V":
        r = G.rank
        chars = []
        for ell in range(2 * r + 1):
            f = [Fraction(0)] * G.order
            for a in range(max(0, ell - r), min(ell, r) + 1):
                for g in range(G.order):
                    f[g] = f[g] + G.wedge_chars_h[a][g] * G.wedge_chars_hs[ell - a][g]
            chars.append(f)
    else:
        raise ValueError(f"unknown space {space!r}")
    graded = {ell: [(-1) ** ell * v for v in f] for ell, f in enumerate(chars)}
    return G.graded_from_class_functions(graded)


def det_one_minus_gq(G, g: int, on: str = "hs") -> LPoly:
    """det(1 - g q) on h* (or h)."""
    chars = G.wedge_chars_hs if on == "hs" else G.wedge_chars_h
    out = {}
    for ell, f in enumerate(chars):
        out[ell] = (-1) ** ell * f[g]
    return LPoly(out)
