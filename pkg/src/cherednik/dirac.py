"""Local Dirac operators, Dirac cohomology and index, and the polynomial matrices of a block.

The Dirac element sum_j (x_j (x) y_j + y_j (x) x_j) acts on X (x) S* with
S* = Lambda h*, where y_j acts on S* by minus the contraction and x_j by twice
the wedge.  Lambda^l h* sits in degree l, so D preserves the total degree.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .clifford import apply_sparse, contract, wedge_basis, wedge_in, wedge_power_matrix
from .group import N_c, ParameterFunction, ReflectionGroup
from .laurent import GradedCharacter, LPoly
from .linalg import kernel, row_basis, vaxpy
from .modules import (
    BabyVerma,
    ModuleRealization,
    SimpleHead,
    euler_action,
    graded_character,
)

__all__ = [
    "MismatchAt",
    "InconsistentCharacters",
    "InverseCheckFailure",
    "NoInfinitesimalCharacter",
    "LocalDirac",
    "dirac_square_check",
    "g_invariance_check",
    "infinitesimal_constant",
    "square_scalar_check",
    "dirac_index",
    "dirac_cohomology",
    "index_from_cohomology",
    "restricted_heads",
    "multiplicity_matrix",
    "dirac_index_matrix",
    "matrix_product",
    "check_inverse",
    "character_formula_check",
    "graded_pairing",
    "ep_pairing",
    "index_split",
    "mirror_check",
    "subspace_character",
    "isotypic_projection",
]


class MismatchAt(AssertionError):
    pass


class InconsistentCharacters(ValueError):
    pass


class InverseCheckFailure(AssertionError):
    pass


class NoInfinitesimalCharacter(ValueError):
    pass


def _add(out: dict, key, val) -> None:
    if val == 0:
        return
    w = out.get(key, 0) + val
    if w == 0:
        out.pop(key, None)
    else:
        out[key] = w


@lru_cache(maxsize=None)
def _wedge_mat(mat: tuple) -> dict:
    return wedge_power_matrix(mat)


def subspace_character(G: ReflectionGroup, act_g, vectors) -> list:
    """Class function of G on the span of ``vectors`` (assumed G-stable)."""
    vectors = [v for v in vectors if v]
    if not vectors:
        return [0] * G.order
    basis = row_basis(vectors)
    per_class = []
    for cls in G.classes:
        g = cls[0]
        tr = 0
        for p, row in basis.items():
            tr = tr + act_g(g, row).get(p, 0)
        per_class.append(tr)
    return [per_class[G.class_of[g]] for g in range(G.order)]


def isotypic_projection(G: ReflectionGroup, label: str, act_g, v: dict) -> dict:
    """Projection of v to the isotypic component of an irrep: (dim/|G|) sum_g conj(chi(g)) g v."""
    from .field import conj

    ir = G.irreps[label]
    out: dict = {}
    for g in range(G.order):
        a = conj(ir.character[g])
        if a != 0:
            vaxpy(out, a, act_g(g, v))
    return {k: x * Fraction(ir.dim, G.order) for k, x in out.items()}


class LocalDirac:
    """D_X on X (x) Lambda h*; keys (module key, wedge subset)."""

    def __init__(self, X: ModuleRealization):
        self.X = X
        self.G = X.G
        self.r = X.G.rank

    def basis(self, n: int, parity: int | None = None) -> list:
        out = []
        for S in wedge_basis(self.r):
            if parity is not None and len(S) % 2 != parity:
                continue
            for key in self.X.basis(n - len(S)):
                out.append((key, S))
        return out

    def degrees(self, cutoff: int | None = None) -> range:
        hi = self.X.hi + self.r if self.X.hi is not None else cutoff
        if cutoff is not None:
            hi = min(hi, cutoff)
        return range(self.X.lo, hi + 1)

    def apply(self, v: dict) -> dict:
        X = self.X
        out: dict = {}
        for (key, S), a in v.items():
            for j in range(self.r):
                hit = contract(j, S)
                if hit:
                    sign, S2 = hit
                    for k2, b in X.act_x(j, {key: 1}).items():
                        _add(out, (k2, S2), -sign * a * b)
                hit = wedge_in(j, S)
                if hit:
                    sign, S2 = hit
                    for k2, b in X.act_y(j, {key: 1}).items():
                        _add(out, (k2, S2), 2 * sign * a * b)
        return out

    def act_g(self, g: int, v: dict) -> dict:
        wm = _wedge_mat(tuple(tuple(r) for r in self.G.mats_hs[g]))
        out: dict = {}
        for (key, S), a in v.items():
            img = self.X.act_g(g, {key: 1})
            wimg = apply_sparse(wm, {S: 1})
            for k2, b in img.items():
                for S2, w in wimg.items():
                    _add(out, (k2, S2), a * b * w)
        return out

    def square_rhs(self, v: dict) -> dict:
        """(-eu (x) 1 + t kappa/2 - sum_s (c(s)/d_s) s (x) s) v, with kappa/2 = r/2 - l on Lambda^l h*."""
        X = self.X
        out: dict = {}
        by_S: dict = {}
        for (key, S), a in v.items():
            by_S.setdefault(S, {})[key] = a
        for S, part in by_S.items():
            for k2, b in euler_action(X, part).items():
                _add(out, (k2, S), -b)
            k = X.t * (Fraction(self.r, 2) - len(S))
            for k2, b in part.items():
                _add(out, (k2, S), k * b)
        for s, coef in X.refl_coef:
            for k2, b in self.act_g(s.index, v).items():
                _add(out, k2, -coef * b)
        return out


def dirac_square_check(X: ModuleRealization, cutoff: int | None = None) -> dict:
    """Compare (1/2) D^2 with the right-hand side on every basis vector of every piece."""
    D = LocalDirac(X)
    checked = 0
    for n in D.degrees(cutoff):
        for key in D.basis(n):
            v = {key: 1}
            lhs = {k: a / 2 for k, a in D.apply(D.apply(v)).items()}
            rhs = D.square_rhs(v)
            diff = dict(lhs)
            vaxpy(diff, -1, rhs)
            if diff:
                raise MismatchAt(f"degree {n}, vector {key}")
            checked += 1
    return {"module": X.kind, "tau": X.tau_label, "vectors_checked": checked, "ok": True}


def g_invariance_check(X: ModuleRealization, cutoff: int | None = None) -> int:
    """rho(g) D = D rho(g) on every basis vector, for every group element; returns the count checked."""
    D = LocalDirac(X)
    checked = 0
    for n in D.degrees(cutoff):
        for key in D.basis(n):
            v = {key: 1}
            Dv = D.apply(v)
            for g in range(X.G.order):
                diff = D.apply(D.act_g(g, v))
                vaxpy(diff, -1, D.act_g(g, Dv))
                if diff:
                    raise MismatchAt(f"element {g}, degree {n}, vector {key}")
            checked += 1
    return checked


def infinitesimal_constant(X: ModuleRealization, cutoff: int | None = None):
    """k_X with eu = t d + k_X on every degree-d piece; raises if eu is not of that form."""
    k = None
    for d in X.degrees(cutoff):
        for key in X.basis(d):
            ev = euler_action(X, {key: 1})
            a = ev.get(key, 0)
            if len(ev) > (1 if a != 0 else 0):
                raise NoInfinitesimalCharacter(f"eu is not diagonal at {key} in degree {d}")
            kd = a - X.t * d
            if k is None:
                k = kd
            elif kd != k:
                raise NoInfinitesimalCharacter(f"eu - t deg takes values {k} and {kd}")
    return k if k is not None else 0


def square_scalar_check(X: ModuleRealization, cutoff: int | None = None) -> dict:
    """On the sigma-isotype of total degree n, (1/2) D^2 = -t n - k_X + h_c(sigma)."""
    G = X.G
    k = infinitesimal_constant(X, cutoff)
    scalars = {lab: X.t * Fraction(G.rank, 2) - N_c(G, lab, X.c) - k for lab in G.labels()}
    D = LocalDirac(X)
    checked = 0
    for n in D.degrees(cutoff):
        for key in D.basis(n):
            for lab, base in scalars.items():
                p = isotypic_projection(G, lab, D.act_g, {key: 1})
                if not p:
                    continue
                lhs = {kk: a / 2 for kk, a in D.apply(D.apply(p)).items()}
                vaxpy(lhs, -(base - X.t * n), p)
                if lhs:
                    raise MismatchAt(f"degree {n}, isotype {lab}, vector {key}")
                checked += 1
    return {"k_X": k, "projections_checked": checked, "ok": True}


def dirac_index(G: ReflectionGroup, chX: GradedCharacter, hi: int | None = None) -> GradedCharacter:
    """ch X (x) (Lambda^+ h* - Lambda^- h*), truncated to degrees <= hi when X was truncated at hi."""
    out = G.tensor_graded(chX, {ell: [(-1) ** ell * v for v in f] for ell, f in enumerate(G.wedge_chars_hs)})
    return out.truncate(None, hi) if hi is not None else out


def dirac_cohomology(X: ModuleRealization, cutoff: int | None = None) -> dict:
    """Per degree n, the class functions of H^+ and H^- where H^e = ker D^e / (ker D^e cap im D^-e)."""
    D = LocalDirac(X)
    G = X.G
    out = {}
    for n in D.degrees(cutoff):
        spaces = {p: D.basis(n, p) for p in (0, 1)}
        images = {}
        kernels = {}
        for p in (0, 1):
            cols = [D.apply({k: 1}) for k in spaces[p]]
            images[p] = cols
            kernels[p] = [{spaces[p][i]: a for i, a in kv.items()} for kv in kernel(cols)] if cols else []
        res = {}
        for p in (0, 1):
            ker = kernels[p]
            im_other = images[1 - p]
            ch_ker = subspace_character(G, D.act_g, ker)
            ch_im = subspace_character(G, D.act_g, im_other)
            ch_sum = subspace_character(G, D.act_g, ker + im_other)
            ch_cap = [a + b - c for a, b, c in zip(ch_ker, ch_im, ch_sum)]
            res["+" if p == 0 else "-"] = [a - b for a, b in zip(ch_ker, ch_cap)]
        out[n] = res
    return out


def index_from_cohomology(X: ModuleRealization, cutoff: int | None = None) -> GradedCharacter:
    """H^+ - H^- from explicit kernels and images."""
    G = X.G
    graded = {}
    for n, res in dirac_cohomology(X, cutoff).items():
        f = [a - b for a, b in zip(res["+"], res["-"])]
        if any(v != 0 for v in f):
            graded[n] = f
    return G.graded_from_class_functions(graded)


# ---------------------------------------------------------------------------
# restricted case: heads, multiplicity and index matrices

_HEADS: dict = {}


def _param_key(c: ParameterFunction):
    return (c.group.name, tuple(repr(v) for v in c.values), repr(c.t))


def restricted_heads(G: ReflectionGroup, c: ParameterFunction) -> dict:
    """label -> (ch of the baby Verma, ch of its simple head), computed once per (G, c)."""
    if c.t != 0:
        raise ValueError("restricted computations need t = 0")
    key = _param_key(c)
    if key not in _HEADS:
        data = {}
        for lab in G.labels():
            M = BabyVerma(G, lab, c)
            L = SimpleHead(M)
            data[lab] = (graded_character(M), L.character)
        _HEADS[key] = data
    return _HEADS[key]


def multiplicity_matrix(G: ReflectionGroup, c: ParameterFunction, order: list | None = None) -> dict:
    """n[(tau, sigma)] = graded multiplicity of the simple head of sigma in the baby Verma of tau."""
    heads = restricted_heads(G, c)
    labels = G.labels()
    out = {}
    for tau in labels:
        rest = heads[tau][0]
        coeffs = {sig: LPoly() for sig in labels}
        while rest:
            d = min(rest.degrees())
            for sig in labels:
                m = rest[sig].coeff(d)
                if m == 0:
                    continue
                if m < 0:
                    raise InconsistentCharacters(f"negative remainder for {sig} in degree {d} of M({tau})")
                coeffs[sig] = coeffs[sig] + LPoly.monomial(d, m)
                rest = rest - heads[sig][1].scale(LPoly.monomial(d, m))
        for sig in labels:
            out[(tau, sig)] = coeffs[sig]
    if order is not None:
        return {(a, b): out[(a, b)] for a in order for b in order}
    return out


def dirac_index_matrix(G: ReflectionGroup, c: ParameterFunction, order: list | None = None) -> dict:
    """d[(sigma, tau)] = coefficient of tau in the Dirac index of the simple head of sigma."""
    heads = restricted_heads(G, c)
    labels = G.labels()
    out = {}
    for sig in labels:
        idx = dirac_index(G, heads[sig][1])
        for tau in labels:
            out[(sig, tau)] = idx[tau]
    if order is not None:
        return {(a, b): out[(a, b)] for a in order for b in order}
    return out


def matrix_product(a: dict, b: dict, order: list) -> dict:
    out = {}
    for i in order:
        for j in order:
            acc = LPoly()
            for k in order:
                acc = acc + a[(i, k)] * b[(k, j)]
            out[(i, j)] = acc
    return out


def check_inverse(G: ReflectionGroup, d: dict, n: dict, order: list, scale: LPoly | None = None) -> bool:
    """[d][n] = scale * Id, with scale = P_G(q) in the restricted case."""
    scale = G.P_G if scale is None else scale
    prod = matrix_product(d, n, order)
    for i in order:
        for j in order:
            want = scale if i == j else LPoly()
            if prod[(i, j)] != want:
                raise InverseCheckFailure(f"entry ({i}, {j}) is {prod[(i, j)]}, expected {want}")
    return True


def character_formula_check(G: ReflectionGroup, chX: GradedCharacter, cutoff: int, index=None) -> dict:
    """Per class: ch X * det(1 - g q) = ch I_D(X) modulo q^(cutoff+1).

    ``index`` is an independently computed I_D(X) (from cohomology, say); by
    default it is taken from the character itself.
    """
    idx = (dirac_index(G, chX, cutoff) if index is None else index).truncate(None, cutoff)
    xs = G.class_values(chX)
    ids = G.class_values(idx)
    r = G.rank
    for cls in G.classes:
        g = cls[0]
        det = {ell: (-1) ** ell * G.wedge_chars_hs[ell][g] for ell in range(r + 1)}
        prod: dict = {}
        for e, v in xs[g].items():
            for ell, w in det.items():
                if e + ell <= cutoff:
                    prod[e + ell] = prod.get(e + ell, 0) + v * w
        lhs = {e: v for e, v in prod.items() if v != 0}
        rhs = {e: v for e, v in ids[g].items() if v != 0 and e <= cutoff}
        if lhs != rhs:
            raise MismatchAt(f"class of element {g}: {lhs} != {rhs}")
    return {"ok": True, "classes": len(G.classes), "cutoff": cutoff}


# ---------------------------------------------------------------------------
# pairings


def graded_pairing(G: ReflectionGroup, A: GradedCharacter, B: GradedCharacter) -> LPoly:
    """sum over degrees a, b of q^(b-a) dim Hom_G(A_a, B_b)."""
    out = LPoly()
    for lab in A.labels():
        pa, pb = A[lab], B[lab]
        if pb:
            out = out + pa.bar() * pb
    return out


def ep_pairing(
    G: ReflectionGroup, chX: GradedCharacter, chY: GradedCharacter, route: str = "index", hi: int | None = None
) -> LPoly:
    """Graded Euler-Poincare pairing from characters.

    ``index``: <I_D(X), I_D(Y)>.  ``elliptic``: <X (x) (Lambda^+ V - Lambda^- V), Y>,
    with h in degree -1 and h* in degree +1.  When X is known only up to
    degree ``hi``, the product is kept in degrees <= hi - r, where it is exact.
    """
    if route == "index":
        ix = dirac_index(G, chX, hi)
        iy = dirac_index(G, chY)
        return graded_pairing(G, ix, iy)
    if route != "elliptic":
        raise ValueError(f"unknown route {route!r}")
    r = G.rank
    graded = {}
    for a in range(r + 1):
        for b in range(r + 1):
            f = [(-1) ** (a + b) * u * v for u, v in zip(G.wedge_chars_h[a], G.wedge_chars_hs[b])]
            graded.setdefault(b - a, [0] * G.order)
            graded[b - a] = [x + y for x, y in zip(graded[b - a], f)]
    prod = G.tensor_graded(chX, graded)
    if hi is not None:
        prod = prod.truncate(None, hi - r)
    return graded_pairing(G, prod, chY)


def index_split(idx: GradedCharacter) -> tuple[GradedCharacter, GradedCharacter]:
    """(i+, i-): positive and negated negative parts of a virtual graded character."""
    plus, minus = {}, {}
    for lab, p in idx.data.items():
        pos = {e: v for e, v in p.terms.items() if v > 0}
        neg = {e: -v for e, v in p.terms.items() if v < 0}
        if pos:
            plus[lab] = LPoly(pos)
        if neg:
            minus[lab] = LPoly(neg)
    return GradedCharacter(plus), GradedCharacter(minus)


def _dual_twist(G: ReflectionGroup, ch: GradedCharacter) -> GradedCharacter:
    """ch of V* (x) det_(h*), the dual carrying degree -d in place of d."""
    (det,) = G.decompose_int(G.wedge_chars_hs[G.rank])
    out = {}
    for lab, p in ch.data.items():
        for lab2, m in G.tensor_table[(G.dual_label(lab), det)].items():
            out[lab2] = out.get(lab2, LPoly()) + p.bar() * m
    return GradedCharacter(out)


def mirror_check(G: ReflectionGroup, c: ParameterFunction, label: str) -> bool:
    """Dual-twist symmetry of the index split of a restricted simple head.

    With N the top degree of L(tau) and sigma its (irreducible) top piece,
    ch(i^(+-,*) (x) det_(h*)) = q^(-r-N) ch(i^(+-)) of the c-check head of sigma*
    (the signs swap for odd r).  For L concentrated in degree 0 this is the
    identity with sigma = tau and no extra shift.
    """
    heads = restricted_heads(G, c)
    heads_check = restricted_heads(G, c.check())
    chL = heads[label][1]
    top = max(chL.degrees())
    tops = {lab: p.coeff(top) for lab, p in chL.data.items() if p.coeff(top) != 0}
    if list(tops.values()) != [1]:
        raise InconsistentCharacters(f"top piece of L({label}) is not irreducible: {tops}")
    (sigma,) = tops
    plus, minus = index_split(dirac_index(G, chL))
    pc, mc = index_split(dirac_index(G, heads_check[G.dual_label(sigma)][1]))
    shift = LPoly.monomial(-G.rank - top)
    lhs_p, lhs_m = _dual_twist(G, plus), _dual_twist(G, minus)
    if G.rank % 2 == 0:
        return lhs_p == pc.scale(shift) and lhs_m == mc.scale(shift)
    return lhs_p == mc.scale(shift) and lhs_m == pc.scale(shift)
