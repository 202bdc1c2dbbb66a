"""Finite reflection groups with explicit matrices, reflection data and irreps.

Conventions.  ``h`` has basis ``y_1..y_r`` and ``h*`` the dual basis
``x_1..x_r``.  Each element stores its matrix on ``h*`` (column j is the image
of ``x_j``) and on ``h`` (the inverse transpose).  For a reflection ``s`` the
number ``lam`` is the nontrivial eigenvalue on ``h*``; ``alpha`` (coordinates
in the ``x`` basis) and ``coalpha`` (coordinates in the ``y`` basis) are
eigenvectors normalised by ``alpha(coalpha) = 2``.  Reflections sharing a
hyperplane share ``alpha``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .field import ParamScalar, conj, format_scalar, param_eval, symbol, zeta
from .laurent import GradedCharacter, LPoly
from .linalg import identity, mat_inv, mat_mul, rank, transpose

__all__ = [
    "Reflection",
    "IrrepData",
    "ReflectionGroup",
    "ParameterFunction",
    "NotScalar",
    "build_dihedral",
    "build_cyclic",
    "build_group",
    "N_c",
    "h_c",
    "zeta_scalars",
    "zeta_matrix",
    "blocks_t0",
]


class NotScalar(ValueError):
    pass


def _freeze(mat):
    return tuple(tuple(row) for row in mat)


def _det(mat):
    n = len(mat)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return mat[0][0]
    total = 0
    for j in range(n):
        if mat[0][j] != 0:
            minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
            term = mat[0][j] * _det(minor)
            total = total + (term if j % 2 == 0 else -term)
    return total


def _elementary_symmetric(mat):
    """Coefficients e_0..e_r of det(1 + u*mat), i.e. the characters of the exterior powers."""
    n = len(mat)
    out = [Fraction(1)]
    from itertools import combinations

    for k in range(1, n + 1):
        total = 0
        for idx in combinations(range(n), k):
            total = total + _det([[mat[i][j] for j in idx] for i in idx])
        out.append(total)
    return out


@dataclass(frozen=True)
class Reflection:
    index: int
    alpha: tuple
    coalpha: tuple
    lam: object

    @property
    def d(self):
        return (1 - self.lam) / 2

    @property
    def dcheck(self):
        return (1 - 1 / self.lam) / 2

    def alpha_at(self, y) -> object:
        """alpha_s(y) for y given by coordinates in the y basis."""
        return sum((a * b for a, b in zip(self.alpha, y)), Fraction(0))

    def x_at_coalpha(self, x) -> object:
        """x(alpha_s^vee) for x given by coordinates in the x basis."""
        return sum((a * b for a, b in zip(x, self.coalpha)), Fraction(0))


@dataclass
class IrrepData:
    label: str
    dim: int
    matrices: list
    aliases: tuple = ()

    @cached_property
    def character(self):
        return [sum((m[i][i] for i in range(self.dim)), Fraction(0)) for m in self.matrices]


@dataclass
class ReflectionGroup:
    name: str
    rank: int
    mats_hs: list
    mats_h: list
    mult: list
    inverse: list
    reflections: list
    irreps: dict
    fundamental_degrees: list
    conductor: int
    words: list = field(default_factory=list)

    # ------------------------------------------------------------------ basics
    @property
    def order(self) -> int:
        return len(self.mats_hs)

    @cached_property
    def is_real(self) -> bool:
        return all(r.lam == -1 for r in self.reflections)

    @cached_property
    def refl_of(self) -> dict:
        return {r.index: r for r in self.reflections}

    @cached_property
    def classes(self) -> list:
        seen = set()
        out = []
        for g in range(self.order):
            if g in seen:
                continue
            cls = sorted({self.mult[self.mult[h][g]][self.inverse[h]] for h in range(self.order)})
            seen.update(cls)
            out.append(tuple(cls))
        return out

    @cached_property
    def class_of(self) -> list:
        out = [0] * self.order
        for i, cls in enumerate(self.classes):
            for g in cls:
                out[g] = i
        return out

    @cached_property
    def reflection_classes(self) -> list:
        """Conjugacy classes made of reflections, as tuples of element indices."""
        rset = {r.index for r in self.reflections}
        return [cls for cls in self.classes if cls[0] in rset]

    @cached_property
    def refl_class_of(self) -> dict:
        return {g: i for i, cls in enumerate(self.reflection_classes) for g in cls}

    @cached_property
    def coxeter_number(self):
        """2|S|/r; the Coxeter number for real groups."""
        return Fraction(2 * len(self.reflections), self.rank)

    def labels(self) -> list:
        return list(self.irreps)

    def irrep(self, label: str) -> IrrepData:
        key = _normalise_label(label)
        for lab, ir in self.irreps.items():
            if key == _normalise_label(lab) or key in (_normalise_label(a) for a in ir.aliases):
                return ir
        raise KeyError(f"unknown irrep {label!r} for {self.name}; known: {', '.join(self.irreps)}")

    def element_of_word(self, word) -> int:
        g = 0
        for gen in reversed(word):
            g = self.mult[self.generators[gen]][g]
        return g

    @cached_property
    def generators(self) -> list:
        """Element indices of the simple generators (words of length one)."""
        ngen = max((max(w) for w in self.words if w), default=-1) + 1
        return [self.words.index((k,)) for k in range(ngen)]

    # ------------------------------------------------------------ characters
    @cached_property
    def char_hs(self):
        return [sum((m[i][i] for i in range(self.rank)), Fraction(0)) for m in self.mats_hs]

    @cached_property
    def char_h(self):
        return [sum((m[i][i] for i in range(self.rank)), Fraction(0)) for m in self.mats_h]

    @cached_property
    def wedge_chars_h(self):
        """wedge_chars_h[l][g] = character of Lambda^l h at g."""
        per = [_elementary_symmetric(m) for m in self.mats_h]
        return [[per[g][l] for g in range(self.order)] for l in range(self.rank + 1)]

    @cached_property
    def wedge_chars_hs(self):
        per = [_elementary_symmetric(m) for m in self.mats_hs]
        return [[per[g][l] for g in range(self.order)] for l in range(self.rank + 1)]

    def inner(self, f, g) -> object:
        """(1/|G|) sum f(x) conj(g(x))."""
        total = 0
        for a, b in zip(f, g):
            if a != 0 and b != 0:
                total = total + a * conj(b)
        return total / self.order

    def decompose(self, f) -> dict:
        """Multiplicities of the irreps in a class function given per element."""
        out = {}
        for lab, ir in self.irreps.items():
            m = self.inner(f, ir.character)
            if m != 0:
                out[lab] = m
        return out

    def decompose_int(self, f) -> dict:
        out = {}
        for lab, m in self.decompose(f).items():
            if not (isinstance(m, (int, Fraction)) and Fraction(m).denominator == 1):
                raise ValueError(f"non-integral multiplicity {m} of {lab}")
            out[lab] = int(m)
        return out

    @cached_property
    def tensor_table(self) -> dict:
        """(a, b) -> {c: multiplicity of c in a (x) b}."""
        out = {}
        for a, ia in self.irreps.items():
            for b, ib in self.irreps.items():
                f = [x * y for x, y in zip(ia.character, ib.character)]
                out[(a, b)] = self.decompose_int(f)
        return out

    def tensor_with_class_function(self, label: str, f) -> dict:
        ch = self.irreps[label].character
        return self.decompose_int([x * y for x, y in zip(ch, f)])

    def dual_label(self, label: str) -> str:
        ch = [conj(v) for v in self.irreps[label].character]
        dec = self.decompose_int(ch)
        (lab,) = dec
        return lab

    @cached_property
    def det_h_label(self) -> str:
        (lab,) = self.decompose_int(self.wedge_chars_h[self.rank])
        return lab

    @cached_property
    def triv_label(self) -> str:
        return next(lab for lab, ir in self.irreps.items() if all(v == 1 for v in ir.character))

    def tensor_graded(self, chi: GradedCharacter, f_graded: dict) -> GradedCharacter:
        """chi (x) V where V is given as {degree: class function}."""
        out = {}
        for lab, poly in chi.data.items():
            for deg, f in f_graded.items():
                for lab2, m in self.tensor_with_class_function(lab, f).items():
                    out[lab2] = out.get(lab2, LPoly()) + poly * LPoly.monomial(deg, m)
        return GradedCharacter(out)

    def graded_from_class_functions(self, graded: dict) -> GradedCharacter:
        out = {}
        for deg, f in graded.items():
            for lab, m in self.decompose_int(f).items():
                out[lab] = out.get(lab, LPoly()) + LPoly.monomial(deg, m)
        return GradedCharacter(out)

    def class_values(self, chi: GradedCharacter) -> dict:
        """Evaluate a graded character on each element: {g: {degree: value}} as LPoly-like dicts."""
        out = []
        for g in range(self.order):
            acc = {}
            for lab, poly in chi.data.items():
                v = self.irreps[lab].character[g]
                for e, m in poly.terms.items():
                    acc[e] = acc.get(e, 0) + m * v
            out.append(acc)
        return out

    @cached_property
    def P_G(self) -> LPoly:
        out = LPoly.const(1)
        for d in self.fundamental_degrees:
            out = out * (LPoly.const(1) - LPoly.monomial(d))
        return out

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "order": self.order,
            "fundamental_degrees": self.fundamental_degrees,
            "elements_on_h": [[[format_scalar(v) for v in row] for row in m] for m in self.mats_h],
            "reflections": [
                {
                    "element": r.index,
                    "alpha": [format_scalar(v) for v in r.alpha],
                    "coalpha": [format_scalar(v) for v in r.coalpha],
                    "lambda": format_scalar(r.lam),
                }
                for r in self.reflections
            ],
            "irreps": {
                lab: {"dim": ir.dim, "aliases": list(ir.aliases), "character": [format_scalar(v) for v in ir.character]}
                for lab, ir in self.irreps.items()
            },
        }


def _normalise_label(label: str) -> str:
    return label.replace("_", "").replace("{", "").replace("}", "").replace(",", "").replace("×", "x").lower()


# ---------------------------------------------------------------------------
# construction


def _close(gens_hs):
    """Breadth-first closure; returns element matrices, words and the index of each generator."""
    r = len(gens_hs[0])
    ident = _freeze(identity(r))
    index = {ident: 0}
    mats = [ident]
    words = [()]
    queue = deque([0])
    while queue:
        g = queue.popleft()
        for k, s in enumerate(gens_hs):
            new = _freeze(mat_mul(s, mats[g]))
            if new not in index:
                index[new] = len(mats)
                mats.append(new)
                words.append((k,) + words[g])
                queue.append(index[new])
    return mats, words, index


def _finish(name, mats, words, index, irreps_gen, degrees, conductor):
    n = len(mats)
    mult = [[index[_freeze(mat_mul(mats[a], mats[b]))] for b in range(n)] for a in range(n)]
    inverse = [next(b for b in range(n) if mult[a][b] == 0) for a in range(n)]
    mats_h = [_freeze(transpose(mat_inv([list(row) for row in m]))) for m in mats]
    r = len(mats[0])
    reflections = []
    for g in range(1, n):
        a = mats[g]
        diff = [[a[i][j] - (1 if i == j else 0) for j in range(r)] for i in range(r)]
        rows = [{j: diff[i][j] for j in range(r) if diff[i][j] != 0} for i in range(r)]
        if rank(rows) != 1:
            continue
        lam = sum((a[i][i] for i in range(r)), Fraction(0)) - (r - 1)
        col = next(j for j in range(r) if any(diff[i][j] != 0 for i in range(r)))
        alpha = [diff[i][col] for i in range(r)]
        lead = next(v for v in alpha if v != 0)
        alpha = tuple(v / lead for v in alpha)
        b = mats_h[g]
        diffh = [[b[i][j] - (1 if i == j else 0) for j in range(r)] for i in range(r)]
        colh = next(j for j in range(r) if any(diffh[i][j] != 0 for i in range(r)))
        coalpha = [diffh[i][colh] for i in range(r)]
        pair = sum((x * y for x, y in zip(alpha, coalpha)), Fraction(0))
        coalpha = tuple(v * 2 / pair for v in coalpha)
        reflections.append(Reflection(g, alpha, coalpha, lam))
    irreps = {}
    for label, aliases, gen_imgs in irreps_gen:
        dim = len(gen_imgs[0])
        ims = []
        for w in words:
            m = identity(dim)
            for k in reversed(w):
                m = mat_mul(gen_imgs[k], m)
            ims.append(_freeze(m))
        irreps[label] = IrrepData(label, dim, ims, tuple(aliases))
    grp = ReflectionGroup(
        name=name,
        rank=r,
        mats_hs=list(mats),
        mats_h=mats_h,
        mult=mult,
        inverse=inverse,
        reflections=reflections,
        irreps=irreps,
        fundamental_degrees=list(degrees),
        conductor=conductor,
        words=list(words),
    )
    return grp


def build_dihedral(m: int) -> ReflectionGroup:
    """I2(m) in a root basis: alpha_1 long, alpha_2 short (equal length for odd m)."""
    if m < 3:
        raise ValueError("dihedral groups need m >= 3")
    four_cos2 = lambda j: 2 + zeta(m, j) + zeta(m, -j)  # noqa: E731  (2 cos(pi j/m))^2 = 2 + 2cos(2 pi j/m)

    def gens_for(j):
        a12, a21 = Fraction(-1), -four_cos2(j)
        s1 = [[Fraction(-1), -a12], [Fraction(0), Fraction(1)]]
        s2 = [[Fraction(1), Fraction(0)], [-a21, Fraction(-1)]]
        return [s1, s2]

    # column j of s_i is e_j - a_ij e_i, with a_ij = alpha_j(alpha_i^vee)
    gens = gens_for(1)
    mats, words, index = _close(gens)
    one = [[Fraction(1)]]
    neg = [[Fraction(-1)]]
    table = []
    if m == 4:
        names = {"triv": ("2x0", ["triv"]), "sgn": ("0x11", ["sgn"]), "eps1": ("11x0", []), "eps2": ("0x2", []), "rho1": ("1x1", ["refl", "rho1"])}
    elif m == 6:
        names = {
            "triv": ("phi_{1,0}", ["triv"]),
            "sgn": ("phi_{1,6}", ["sgn"]),
            "eps1": ("phi'_{1,3}", []),
            "eps2": ("phi''_{1,3}", []),
            "rho1": ("phi_{2,1}", ["refl", "rho1"]),
            "rho2": ("phi_{2,2}", ["rho2"]),
        }
    else:
        names = {}

    def add(key, imgs):
        lab, aliases = names.get(key, (key, []))
        if key == "rho1" and key not in names:
            aliases = ["refl"]
        table.append((lab, aliases, imgs))

    add("triv", [one, one])
    add("sgn", [neg, neg])
    if m % 2 == 0:
        add("eps1", [neg, one])
        add("eps2", [one, neg])
    for j in range(1, (m - 1) // 2 + 1):
        add(f"rho{j}", gens_for(j))
    name = {4: "B2", 6: "G2"}.get(m, f"I2({m})")
    return _finish(name, mats, words, index, table, [2, m], m)


def build_cyclic(l: int) -> ReflectionGroup:
    """Z_l acting on a line; the generator acts on h* by zeta_l^{-1}."""
    if l < 2:
        raise ValueError("cyclic groups need l >= 2")
    gen = [[zeta(l, -1)]]
    mats, words, index = _close([gen])
    table = []
    for k in range(l):
        if l == 2:
            lab, aliases = ("triv", ["chi0"]) if k == 0 else ("sgn", ["chi1"])
        else:
            lab, aliases = f"chi{k}", (["triv"] if k == 0 else [])
        table.append((lab, aliases, [[[zeta(l, k)]]]))
    name = f"Z{l}"
    return _finish(name, mats, words, index, table, [l], l)


def build_group(name: str) -> ReflectionGroup:
    """Parse "B2", "G2", "I2m"/"I2(m)"/"I2_m", "Zl"."""
    s = name.strip().upper().replace("(", "").replace(")", "").replace("_", "")
    if s == "B2":
        return build_dihedral(4)
    if s == "G2":
        return build_dihedral(6)
    if s.startswith("I2") and s[2:].isdigit():
        return build_dihedral(int(s[2:]))
    if s.startswith("Z") and s[1:].isdigit():
        return build_cyclic(int(s[1:]))
    raise ValueError(f"unknown group {name!r}")


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class ParameterFunction:
    """c as values on the reflection classes (indexed as in ``G.reflection_classes``), plus t."""

    group: ReflectionGroup
    values: tuple
    t: object = Fraction(1)

    @staticmethod
    def constant(G: ReflectionGroup, c, t=Fraction(1)) -> "ParameterFunction":
        return ParameterFunction(G, tuple(c for _ in G.reflection_classes), t)

    @staticmethod
    def generic(G: ReflectionGroup, t=Fraction(1), per_class: bool = False) -> "ParameterFunction":
        if per_class and len(G.reflection_classes) > 1:
            vals = tuple(symbol(f"c{i + 1}") for i in range(len(G.reflection_classes)))
        else:
            vals = tuple(symbol("c") for _ in G.reflection_classes)
        return ParameterFunction(G, vals, t)

    def __call__(self, s) -> object:
        idx = s.index if isinstance(s, Reflection) else s
        return self.values[self.group.refl_class_of[idx]]

    def check(self) -> "ParameterFunction":
        """c-check: s -> c(s^{-1})."""
        G = self.group
        vals = []
        for cls in G.reflection_classes:
            vals.append(self(G.inverse[cls[0]]))
        return ParameterFunction(G, tuple(vals), self.t)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def specialise(self, assignment: dict) -> "ParameterFunction":
        return ParameterFunction(
            self.group, tuple(param_eval(v, assignment) for v in self.values), param_eval(self.t, assignment)
        )

    def is_symbolic(self) -> bool:
        return any(isinstance(v, ParamScalar) for v in self.values + (self.t,))


def _irrep(G, sigma):
    return G.irrep(sigma) if isinstance(sigma, str) else sigma


def N_c(G: ReflectionGroup, sigma, c: ParameterFunction):
    """Scalar of sum_s (c(s)/d_s) s on the irrep sigma."""
    ir = _irrep(G, sigma)
    n = ir.dim
    acc = [[Fraction(0)] * n for _ in range(n)]
    for r in G.reflections:
        coef = c(r) / r.d
        if coef == 0:
            continue
        m = ir.matrices[r.index]
        for i in range(n):
            for j in range(n):
                if m[i][j] != 0:
                    acc[i][j] = acc[i][j] + coef * m[i][j]
    val = acc[0][0]
    for i in range(n):
        for j in range(n):
            if acc[i][j] != (val if i == j else 0):
                raise NotScalar(f"sum over reflections is not scalar on {ir.label}")
    return val


def h_c(G: ReflectionGroup, sigma, c: ParameterFunction):
    return c.t * Fraction(G.rank, 2) - N_c(G, sigma, c)


def zeta_matrix(G: ReflectionGroup, eps, c: ParameterFunction, on: str = "h"):
    """Matrix of zeta_{c,eps} = sum_s (c(s)/d_s) eps(s) (1 - s) on h or h*."""
    ir = _irrep(G, eps)
    if ir.dim != 1:
        raise ValueError("zeta_{c,eps} needs a one-dimensional eps")
    r = G.rank
    acc = [[Fraction(0)] * r for _ in range(r)]
    mats = G.mats_h if on == "h" else G.mats_hs
    for s in G.reflections:
        coef = c(s) / s.d * ir.matrices[s.index][0][0]
        m = mats[s.index]
        for i in range(r):
            for j in range(r):
                v = (1 if i == j else 0) - m[i][j]
                if v != 0:
                    acc[i][j] = acc[i][j] + coef * v
    return acc


def zeta_scalars(G: ReflectionGroup, eps, c: ParameterFunction):
    """(h_{c,eps}, h*_{c,eps}) from the closed formulas; see :func:`zeta_matrix` for the matrices."""
    ir = _irrep(G, eps)
    if ir.dim != 1:
        raise ValueError("zeta scalars need a one-dimensional eps")
    r = G.rank
    det_h = G.wedge_chars_h[r]
    hs = sum((c(s) * ir.character[s.index] for s in G.reflections), Fraction(0)) * Fraction(2, r)
    h = sum((-c(s) * ir.character[s.index] * det_h[s.index] for s in G.reflections), Fraction(0)) * Fraction(2, r)
    return h, hs


def blocks_t0(labels: list, n_matrix: dict) -> list:
    """Connected components of the linkage graph (edge when n[(tau, sigma)] != 0)."""
    parent = {lab: lab for lab in labels}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (a, b), v in n_matrix.items():
        if v and a in parent and b in parent:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
    comps = {}
    for lab in labels:
        comps.setdefault(find(lab), []).append(lab)
    return [comps[k] for k in sorted(comps, key=lambda k: labels.index(comps[k][0]))]
