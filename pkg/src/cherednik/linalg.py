"""Exact linear algebra over the scalar types of :mod:`cherednik.field`.

Vectors are sparse dicts ``key -> scalar`` with no stored zeros.  Elimination
is incremental and keeps the pivot rows fully reduced, so membership tests and
projections are single passes.  Purely rational systems are eliminated with
``gmpy2.mpq`` and converted back to ``Fraction`` on the way out.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2

__all__ = [
    "Echelon",
    "vadd",
    "vscale",
    "vaxpy",
    "rank",
    "kernel",
    "row_basis",
    "is_rational_system",
    "mat_mul",
    "mat_vec",
    "mat_inv",
    "mat_eq",
    "identity",
    "transpose",
    "trace_on_subspace",
    "reduce_by",
]

_mpq = gmpy2.mpq
_MPQ_TYPE = type(_mpq(0))


def vadd(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, x in v.items():
        w = out.get(k, 0) + x
        if w == 0:
            out.pop(k, None)
        else:
            out[k] = w
    return out


def vscale(u: dict, a) -> dict:
    if a == 0:
        return {}
    if a == 1:
        return dict(u)
    return {k: x * a for k, x in u.items()}


def vaxpy(acc: dict, a, v: dict) -> None:
    """acc += a * v, in place."""
    if a == 0:
        return
    for k, x in v.items():
        w = acc.get(k, 0) + a * x
        if w == 0:
            acc.pop(k, None)
        else:
            acc[k] = w


def is_rational_system(vectors) -> bool:
    for v in vectors:
        for x in v.values():
            if not isinstance(x, (int, Fraction, _MPQ_TYPE)):
                return False
    return True


def _to_mpq(v: dict) -> dict:
    return {k: _mpq(x.numerator, x.denominator) if isinstance(x, Fraction) else _mpq(x) for k, x in v.items()}


def _from_mpq(x):
    if isinstance(x, _MPQ_TYPE):
        return Fraction(int(x.numerator), int(x.denominator))
    return x


class Echelon:
    """Incrementally maintained reduced row echelon form.

    ``order`` maps a column key to a sortable rank; the smallest available
    column of a new row becomes its pivot, which makes pivots prefer earlier
    columns (used by :func:`kernel` to put image columns first).
    """

    def __init__(self, order=None, rational: bool = False):
        self.rows: dict = {}  # pivot column -> row (pivot entry 1)
        self.order = order
        self.rational = rational

    def _prep(self, v: dict) -> dict:
        return _to_mpq(v) if self.rational else dict(v)

    def reduce(self, v: dict) -> dict:
        """Residual of ``v`` after subtracting its projection onto the pivot rows."""
        r = self._prep(v)
        hits = [p for p in r if p in self.rows]
        for p in hits:
            a = r.get(p, 0)
            if a != 0:
                vaxpy(r, -a, self.rows[p])
        return r

    def add(self, v: dict) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        piv = min(r, key=self.order) if self.order else min(r)
        lead = r[piv]
        inv = Fraction(1, lead) if isinstance(lead, int) else 1 / lead
        r = {k: x * inv for k, x in r.items()}
        r[piv] = 1 if not self.rational else _mpq(1)
        for q, row in self.rows.items():
            a = row.get(piv, 0)
            if a != 0:
                vaxpy(row, -a, r)
        self.rows[piv] = r
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def __len__(self):
        return len(self.rows)

    def basis(self) -> dict:
        """Pivot column -> reduced row, with scalars converted back to the public types."""
        if not self.rational:
            return {p: dict(r) for p, r in self.rows.items()}
        return {p: {k: _from_mpq(x) for k, x in r.items()} for p, r in self.rows.items()}


def _echelon_for(vectors, order=None) -> Echelon:
    vectors = list(vectors)
    ech = Echelon(order=order, rational=is_rational_system(vectors))
    for v in vectors:
        ech.add(v)
    return ech


def rank(vectors) -> int:
    return len(_echelon_for(vectors))


def row_basis(vectors) -> dict:
    """Reduced basis of the span: pivot key -> vector with 1 at the pivot, 0 at other pivots."""
    return _echelon_for(vectors).basis()


def kernel(columns: list[dict]) -> list[dict]:
    """Basis of {a : sum_i a_i columns[i] = 0}, as sparse dicts over column indices."""
    rational = is_rational_system(columns)
    tag = object()

    def order(key):
        return (1, key[1]) if isinstance(key, tuple) and len(key) == 2 and key[0] is tag else (0, 0)

    ech = Echelon(order=order, rational=rational)
    for i, col in enumerate(columns):
        row = dict(col)
        row[(tag, i)] = 1
        ech.add(row)
    out = []
    for row in ech.rows.values():
        if all(isinstance(k, tuple) and len(k) == 2 and k[0] is tag for k in row):
            out.append({k[1]: _from_mpq(x) for k, x in row.items()})
    return out


def reduce_by(basis: dict, v: dict) -> dict:
    """Residual of v modulo a fully reduced basis (pivot -> row); works for any scalar type."""
    r = dict(v)
    for p in [p for p in r if p in basis]:
        a = r.get(p, 0)
        if a != 0:
            vaxpy(r, -a, basis[p])
    return r


def trace_on_subspace(basis: dict, op) -> object:
    """Trace of ``op`` on the span of a reduced basis (pivot -> row) that op preserves."""
    total = 0
    for p, row in basis.items():
        img = op(row)
        total = total + img.get(p, 0)
    return total


# ---------------------------------------------------------------------------
# small dense matrices (lists of rows)


def identity(n: int):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            s = 0
            for t in range(k):
                x = ai[t]
                if x != 0:
                    y = b[t][j]
                    if y != 0:
                        s = s + x * y
            row.append(s)
        out.append(row)
    return out


def mat_vec(a, v):
    return [sum((a[i][j] * v[j] for j in range(len(v)) if a[i][j] != 0 and v[j] != 0), Fraction(0)) for i in range(len(a))]


def transpose(a):
    return [list(r) for r in zip(*a)] if a else []


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb)) and len(a) == len(b)


def mat_inv(a):
    n = len(a)
    m = [list(a[i]) + [Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        lead = m[col][col]
        inv = Fraction(1, lead) if isinstance(lead, int) else 1 / lead
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]
