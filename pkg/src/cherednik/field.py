"""Exact scalars: rationals, cyclotomic numbers and rational functions in parameters.

Rationals are plain :class:`fractions.Fraction` (or ``int``).  Elements of
Q(zeta_m) are :class:`Cyclotomic`; arithmetic between cyclotomics collapses to a
``Fraction`` whenever the result is rational, so purely rational computations
never pay for the extension.  :class:`ParamScalar` is a reduced quotient of
polynomials in named symbols (``c``, ``c1``, ``t``, ...) whose coefficients are
rationals or cyclotomics.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "Cyclotomic",
    "ParamScalar",
    "DenominatorVanishes",
    "ScalarParseError",
    "cyclo_reduce",
    "zeta",
    "symbol",
    "param_eval",
    "conj",
    "is_rational",
    "to_fraction",
    "format_scalar",
    "parse_scalar",
    "symbols_of",
]


class DenominatorVanishes(ZeroDivisionError):
    pass


class ScalarParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# cyclotomic polynomials and Q(zeta_m)


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients (ascending) of the m-th cyclotomic polynomial."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _int_poly_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _int_poly_div(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        coef = a[i + len(b) - 1] // b[-1]
        q[i] = coef
        for j, bj in enumerate(b):
            a[i + j] -= coef * bj
    assert all(v == 0 for v in a), "inexact cyclotomic division"
    return q


@lru_cache(maxsize=None)
def _phi(m: int) -> int:
    return len(cyclotomic_poly(m)) - 1


@lru_cache(maxsize=None)
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds zeta_m^k written in the power basis 1, zeta, ..., zeta^(phi-1)."""
    n = _phi(m)
    phi_m = cyclotomic_poly(m)
    rows = []
    cur = [0] * n
    cur[0] = 1
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by zeta and reduce using zeta^n = -sum phi_i zeta^i
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(n):
                cur[i] -= top * phi_m[i]
    return tuple(rows)


@lru_cache(maxsize=None)
def _ramanujan_traces(m: int) -> tuple[Fraction, ...]:
    """Normalised traces Tr(zeta^k)/phi(m) for the basis powers k < phi(m)."""
    n = _phi(m)
    out = []
    for k in range(n):
        # the trace of zeta^k sums zeta^(jk) over the primitive residues j
        s = [0] * n
        for j in range(1, m + 1):
            if gcd(j, m) == 1:
                row = _power_table(m)[(j * k) % m]
                s = [a + b for a, b in zip(s, row)]
        # s is an element equal to the rational trace, so it has only a constant term
        out.append(Fraction(s[0], n))
    return tuple(out)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Cyclotomic:
    """An element of Q(zeta_m) stored as a residue modulo the m-th cyclotomic polynomial."""

    __slots__ = ("m", "coeffs", "_hash")

    def __init__(self, m: int, coeffs):
        n = _phi(m)
        cs = [Fraction(v) for v in coeffs]
        if len(cs) != n:
            raise ValueError(f"expected {n} coefficients for conductor {m}")
        self.m = m
        self.coeffs = tuple(cs)
        self._hash = None

    # construction helpers -------------------------------------------------
    @staticmethod
    def _from_exponents(m: int, terms) -> "Cyclotomic":
        n = _phi(m)
        tab = _power_table(m)
        acc = [Fraction(0)] * n
        for k, v in terms:
            if v:
                row = tab[k % m]
                for i in range(n):
                    if row[i]:
                        acc[i] += v * row[i]
        return Cyclotomic(m, acc)

    def is_rational(self) -> bool:
        return all(v == 0 for v in self.coeffs[1:])

    def simplify(self):
        """Return a ``Fraction`` when the value is rational, else ``self``."""
        if self.is_rational():
            return self.coeffs[0]
        return self

    def embed(self, big: int) -> "Cyclotomic":
        if big % self.m:
            raise ValueError(f"cannot embed conductor {self.m} into {big}")
        step = big // self.m
        return Cyclotomic._from_exponents(big, ((k * step, v) for k, v in enumerate(self.coeffs)))

    # arithmetic ------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.m == self.m:
                return self, other
            big = _lcm(self.m, other.m)
            return self.embed(big), other.embed(big)
        if isinstance(other, (int, Fraction)):
            n = _phi(self.m)
            return self, Cyclotomic(self.m, [other] + [0] * (n - 1))
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic(a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)]).simplify()

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, [-x for x in self.coeffs])

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic(a.m, [x - y for x, y in zip(a.coeffs, b.coeffs)]).simplify()

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Fraction(0)
            return Cyclotomic(self.m, [x * other for x in self.coeffs])
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        terms = {}
        for i, u in enumerate(a.coeffs):
            if u:
                for j, v in enumerate(b.coeffs):
                    if v:
                        terms[i + j] = terms.get(i + j, 0) + u * v
        return Cyclotomic._from_exponents(a.m, terms.items()).simplify()

    __rmul__ = __mul__

    def inverse(self):
        n = _phi(self.m)
        if all(v == 0 for v in self.coeffs):
            raise ZeroDivisionError("inverse of zero")
        # multiplication-by-self matrix; column j is self * zeta^j
        cols = []
        for j in range(n):
            prod = Cyclotomic._from_exponents(self.m, ((i + j, v) for i, v in enumerate(self.coeffs)))
            cols.append(prod.coeffs)
        mat = [[cols[j][i] for j in range(n)] + [Fraction(1 if i == 0 else 0)] for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if mat[r][col] != 0)
            mat[col], mat[piv] = mat[piv], mat[col]
            inv = 1 / mat[col][col]
            mat[col] = [v * inv for v in mat[col]]
            for r in range(n):
                if r != col and mat[r][col] != 0:
                    f = mat[r][col]
                    mat[r] = [a - f * b for a, b in zip(mat[r], mat[col])]
        return Cyclotomic(self.m, [mat[i][n] for i in range(n)]).simplify()

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Cyclotomic(self.m, [x / other for x in self.coeffs])
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Fraction(1)
        base = self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        terms = ((-i, v) for i, v in enumerate(self.coeffs))
        return Cyclotomic._from_exponents(self.m, terms).simplify()

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __bool__(self):
        return any(self.coeffs)

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                # the normalised trace does not depend on the conductor
                tr = sum((v * w for v, w in zip(self.coeffs, _ramanujan_traces(self.m))), Fraction(0))
                self._hash = hash(("cyclo", tr))
        return self._hash

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.m)
        return sum(float(v) * z**k for k, v in enumerate(self.coeffs))

    def __repr__(self):
        return format_scalar(self)


def cyclo_reduce(coeffs, m: int) -> Cyclotomic:
    """Reduce sum_k coeffs[k] * zeta_m^k to its canonical residue modulo Phi_m.

    Negative exponents are not accepted here; use :func:`zeta` for those.
    """
    if m < 1:
        raise ValueError("conductor must be positive")
    return Cyclotomic._from_exponents(m, enumerate(Fraction(v) for v in coeffs))


def zeta(m: int, k: int = 1):
    """zeta_m^k, returned as a ``Fraction`` when it is rational."""
    return Cyclotomic._from_exponents(m, [(k % m, Fraction(1))]).simplify()


def conj(x):
    """Complex conjugate of a scalar (identity on rationals and on the formal symbols)."""
    if isinstance(x, Cyclotomic):
        return x.conjugate()
    if isinstance(x, ParamScalar):
        return ParamScalar._make(
            {k: conj(v) for k, v in x.num.items()}, {k: conj(v) for k, v in x.den.items()}
        )
    return x


def is_rational(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return True
    if isinstance(x, Cyclotomic):
        return x.is_rational()
    return False


def to_fraction(x) -> Fraction:
    if isinstance(x, Cyclotomic):
        if not x.is_rational():
            raise ValueError(f"{x} is not rational")
        return x.coeffs[0]
    if isinstance(x, ParamScalar):
        raise ValueError(f"{x} is not a constant")
    return Fraction(x)


# ---------------------------------------------------------------------------
# multivariate polynomials over the constants (dict monomial -> coefficient)
#
# A monomial is a tuple of (symbol, exponent) pairs sorted by symbol name.

_ONE = ()


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for s, e in b:
        d[s] = d.get(s, 0) + e
    return tuple(sorted(d.items()))


def _mono_div(a, b):
    """a / b when b divides a, else None."""
    d = dict(a)
    for s, e in b:
        have = d.get(s, 0)
        if have < e:
            return None
        if have == e:
            del d[s]
        else:
            d[s] = have - e
    return tuple(sorted(d.items()))


def _mono_key(mono, syms):
    """Graded-lex sort key with respect to the symbol order ``syms``."""
    d = dict(mono)
    exps = tuple(d.get(s, 0) for s in syms)
    return (sum(exps), exps)


def _p_add(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + (v if sign == 1 else -v)
        if w == 0:
            out.pop(k, None)
        else:
            out[k] = w
    return out


def _p_mul(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = _mono_mul(ka, kb)
            w = out.get(k, 0) + va * vb
            if w == 0:
                out.pop(k, None)
            else:
                out[k] = w
    return out


def _p_scale(a, c):
    if c == 0:
        return {}
    return {k: v * c for k, v in a.items()}


def _p_syms(*polys):
    s = set()
    for p in polys:
        for mono in p:
            for name, _ in mono:
                s.add(name)
    return tuple(sorted(s))


def _p_lead(a, syms):
    mono = max(a, key=lambda m: _mono_key(m, syms))
    return mono, a[mono]


def _p_divmod(a, b, syms):
    """Multivariate division by a single divisor in graded-lex order."""
    q, r = {}, {}
    a = dict(a)
    lm_b, lc_b = _p_lead(b, syms)
    while a:
        lm, lc = _p_lead(a, syms)
        quo = _mono_div(lm, lm_b)
        if quo is None:
            r[lm] = lc
            del a[lm]
            continue
        coef = lc / lc_b
        q[quo] = q.get(quo, 0) + coef
        a = _p_add(a, _p_mul({quo: coef}, b), sign=-1)
    return q, r


def _p_divexact(a, b):
    syms = _p_syms(a, b)
    q, r = _p_divmod(a, b, syms)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def _p_is_const(a):
    return not a or (len(a) == 1 and _ONE in a)


def _p_monic(a, syms):
    _, lc = _p_lead(a, syms)
    return _p_scale(a, 1 / lc) if lc != 1 else a


def _p_gcd(a, b):
    if not a:
        return b
    if not b:
        return a
    if _p_is_const(a) or _p_is_const(b):
        return {_ONE: Fraction(1)}
    syms = _p_syms(a, b)
    if len(syms) == 1:
        while b:
            _, r = _p_divmod(a, b, syms)
            a, b = b, r
        return _p_monic(a, syms)
    return _p_gcd_multi(a, b, syms)


def _as_univariate(a, var):
    """Split a polynomial into {power of var: coefficient polynomial in the other symbols}."""
    out = {}
    for mono, v in a.items():
        d = dict(mono)
        e = d.pop(var, 0)
        rest = tuple(sorted(d.items()))
        out.setdefault(e, {})[rest] = v
    return out


def _from_univariate(parts, var):
    out = {}
    for e, coeff in parts.items():
        for mono, v in coeff.items():
            out[_mono_mul(mono, ((var, e),) if e else ())] = v
    return out


def _p_content(a, var):
    g = {}
    for coeff in _as_univariate(a, var).values():
        g = _p_gcd(g, coeff)
        if _p_is_const(g):
            return {_ONE: Fraction(1)}
    return g


def _p_gcd_multi(a, b, syms):
    """Primitive pseudo-remainder sequence in the first symbol, recursing on contents."""
    var = syms[0]
    ca, cb = _p_content(a, var), _p_content(b, var)
    cont = _p_gcd(ca, cb)
    a, b = _p_divexact(a, ca), _p_divexact(b, cb)
    if max(_as_univariate(a, var)) < max(_as_univariate(b, var)):
        a, b = b, a
    while b:
        ua, ub = _as_univariate(a, var), _as_univariate(b, var)
        da, db = max(ua), max(ub)
        if db == 0:
            a = {_ONE: Fraction(1)}
            break
        lcb = ub[db]
        # pseudo-remainder of a by b
        r = dict(a)
        for _ in range(da - db + 1):
            ur = _as_univariate(r, var)
            if not r or max(ur) < db:
                r = _p_mul(r, lcb)
                continue
            dr = max(ur)
            lcr = ur[dr]
            shift = {((var, dr - db),) if dr > db else (): Fraction(1)}
            r = _p_add(_p_mul(r, lcb), _p_mul(_p_mul(lcr, shift), b), sign=-1)
        if r:
            r = _p_divexact(r, _p_content(r, var))
        a, b = b, r
    g = _p_mul(a, cont)
    return _p_monic(g, _p_syms(g) or syms)


def _p_eval(a, assignment):
    """Substitute values for symbols; unassigned symbols stay formal."""
    out = {}
    for mono, v in a.items():
        val = v
        rest = []
        for s, e in mono:
            if s in assignment:
                val = val * _pow(assignment[s], e)
            else:
                rest.append((s, e))
        if isinstance(val, ParamScalar):
            term = _p_mul(val.num, {tuple(rest): Fraction(1)})
            # denominators cannot appear here because assignments are constants or polynomials
            if not _p_is_const(val.den):
                raise TypeError("assignment values must be polynomial")
            term = _p_scale(term, 1 / val.den[_ONE])
            out = _p_add(out, term)
        elif val != 0:
            out = _p_add(out, {tuple(rest): val})
    return out


def _pow(x, e):
    out = Fraction(1)
    for _ in range(e):
        out = out * x
    return out


class ParamScalar:
    """A reduced rational function in named symbols with cyclotomic coefficients.

    Instances are only created for genuinely non-constant values; every
    arithmetic result that turns out constant is returned as a rational or a
    :class:`Cyclotomic`.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den):
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _make(num, den, reduce=True):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return Fraction(0)
        if reduce and not _p_is_const(den):
            g = _p_gcd(num, den)
            if not _p_is_const(g):
                num = _p_divexact(num, g)
                den = _p_divexact(den, g)
        syms = _p_syms(num, den)
        _, lc = _p_lead(den, syms)
        if lc != 1:
            num = _p_scale(num, 1 / lc)
            den = _p_scale(den, 1 / lc)
        if _p_is_const(den) and _p_is_const(num):
            return num[_ONE]
        return ParamScalar(num, den)

    @staticmethod
    def _lift(x):
        if isinstance(x, ParamScalar):
            return x.num, x.den
        if isinstance(x, (int, Fraction, Cyclotomic)):
            return ({_ONE: x} if x != 0 else {}), {_ONE: Fraction(1)}
        return None

    def __add__(self, other):
        o = ParamScalar._lift(other)
        if o is None:
            return NotImplemented
        on, od = o
        if od == self.den:
            return ParamScalar._make(_p_add(self.num, on), self.den)
        if _p_is_const(od):
            return ParamScalar._make(_p_add(self.num, _p_mul(on, _p_scale(self.den, 1 / od[_ONE]))), self.den, reduce=False)
        num = _p_add(_p_mul(self.num, od), _p_mul(on, self.den))
        return ParamScalar._make(num, _p_mul(self.den, od))

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar(_p_scale(self.num, -1), self.den)

    def __sub__(self, other):
        o = ParamScalar._lift(other)
        if o is None:
            return NotImplemented
        return self + ParamScalar._neg_parts(o)

    def __rsub__(self, other):
        return (-self) + other

    @staticmethod
    def _neg_parts(parts):
        num, den = parts
        return ParamScalar._make(_p_scale(num, -1), den, reduce=False) if num else Fraction(0)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            if other == 0:
                return Fraction(0)
            return ParamScalar._make(_p_scale(self.num, other), self.den, reduce=False)
        o = ParamScalar._lift(other)
        if o is None:
            return NotImplemented
        on, od = o
        return ParamScalar._make(_p_mul(self.num, on), _p_mul(self.den, od))

    __rmul__ = __mul__

    def inverse(self):
        return ParamScalar._make(self.den, self.num, reduce=False)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return ParamScalar._make(self.num, _p_scale(self.den, other), reduce=False)
        o = ParamScalar._lift(other)
        if o is None:
            return NotImplemented
        on, od = o
        return ParamScalar._make(_p_mul(self.num, od), _p_mul(self.den, on))

    def __rtruediv__(self, other):
        o = ParamScalar._lift(other)
        if o is None:
            return NotImplemented
        on, od = o
        return ParamScalar._make(_p_mul(on, self.den), _p_mul(od, self.num))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Fraction(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = ParamScalar._lift(other)
        if o is None:
            return NotImplemented
        on, od = o
        return not _p_add(_p_mul(self.num, od), _p_mul(on, self.den), sign=-1)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __bool__(self):
        return bool(self.num)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    @property
    def symbols(self):
        return _p_syms(self.num, self.den)

    def __repr__(self):
        return format_scalar(self)


def symbol(name: str) -> ParamScalar:
    return ParamScalar({((name, 1),): Fraction(1)}, {_ONE: Fraction(1)})


def symbols_of(x) -> tuple[str, ...]:
    return x.symbols if isinstance(x, ParamScalar) else ()


def param_eval(x, assignment: dict):
    """Substitute values for symbols.  Raises DenominatorVanishes when the denominator dies."""
    if not isinstance(x, ParamScalar):
        return x
    num = _p_eval(x.num, assignment)
    den = _p_eval(x.den, assignment)
    if not den:
        raise DenominatorVanishes(f"denominator of {x} vanishes at {assignment}")
    if not num:
        return Fraction(0)
    return ParamScalar._make(num, den)


# ---------------------------------------------------------------------------
# string forms


def _fmt_rational(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _fmt_terms(terms) -> str:
    """Join (coefficient, monomial-string) pairs as a signed sum."""
    parts = []
    for coef, mono in terms:
        coef = Fraction(coef)
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        if mono:
            body = mono if mag == 1 else f"{_fmt_rational(mag)}*{mono}"
        else:
            body = _fmt_rational(mag)
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _fmt_cyclo(x: Cyclotomic) -> str:
    terms = []
    for k, v in enumerate(x.coeffs):
        if v:
            mono = "" if k == 0 else (f"z{x.m}" if k == 1 else f"z{x.m}^{k}")
            terms.append((v, mono))
    return _fmt_terms(terms)


def _fmt_mono(mono) -> str:
    return "*".join(s if e == 1 else f"{s}^{e}" for s, e in mono)


def _fmt_poly(p) -> str:
    syms = _p_syms(p)
    monos = sorted(p, key=lambda m: _mono_key(m, syms), reverse=True)
    chunks = []
    for mono in monos:
        v = p[mono]
        ms = _fmt_mono(mono)
        if isinstance(v, Cyclotomic):
            inner = _fmt_cyclo(v)
            body = f"({inner})" + (f"*{ms}" if ms else "")
            chunks.append(("+", body))
        else:
            v = Fraction(v)
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            if ms:
                body = ms if mag == 1 else f"{_fmt_rational(mag)}*{ms}"
            else:
                body = _fmt_rational(mag)
            chunks.append((sign, body))
    out = ("-" if chunks[0][0] == "-" else "") + chunks[0][1]
    for sign, body in chunks[1:]:
        out += f" {sign} {body}"
    return out


def format_scalar(x) -> str:
    """Canonical string: "a/b", polynomials in z{m}, or "(num)/(den)" in the symbols."""
    if isinstance(x, ParamScalar):
        num = _fmt_poly(x.num)
        if _p_is_const(x.den):
            return num
        return f"({num})/({_fmt_poly(x.den)})"
    if isinstance(x, Cyclotomic):
        return _fmt_cyclo(x)
    return _fmt_rational(Fraction(x))


_TOKEN = re.compile(r"\s*(?:(\d+)|(z\d+|[A-Za-z_][A-Za-z_0-9]*)|(.))")


def parse_scalar(text: str):
    """Parse the output of :func:`format_scalar` (and ordinary arithmetic of the same atoms)."""
    tokens = []
    for num, name, op in _TOKEN.findall(text.strip()):
        if num:
            tokens.append(("num", int(num)))
        elif name:
            tokens.append(("name", name))
        elif op.strip():
            tokens.append(("op", op))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def atom():
        kind, val = take()
        if kind == "num":
            return Fraction(val)
        if kind == "name":
            m = re.fullmatch(r"z(\d+)", val)
            if m:
                return zeta(int(m.group(1)))
            return symbol(val)
        if (kind, val) == ("op", "("):
            v = expr()
            if take() != ("op", ")"):
                raise ScalarParseError(f"unbalanced parentheses in {text!r}")
            return v
        raise ScalarParseError(f"unexpected token {val!r} in {text!r}")

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            sign = 1
            if peek() == ("op", "-"):
                take()
                sign = -1
            kind, e = take()
            if kind != "num":
                raise ScalarParseError(f"bad exponent in {text!r}")
            base = base ** (sign * e)
        return base

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def term():
        v = unary()
        while peek() in (("op", "*"), ("op", "/")):
            _, op = take()
            rhs = unary()
            v = v * rhs if op == "*" else v / rhs
        return v

    def expr():
        v = term()
        while peek() in (("op", "+"), ("op", "-")):
            _, op = take()
            rhs = term()
            v = v + rhs if op == "+" else v - rhs
        return v

    if not tokens:
        raise ScalarParseError("empty scalar")
    try:
        value = expr()
    except ZeroDivisionError as exc:
        raise ScalarParseError(str(exc)) from exc
    if pos != len(tokens):
        raise ScalarParseError(f"trailing input in {text!r}")
    return value
