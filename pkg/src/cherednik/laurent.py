"""Laurent polynomials in the grading variable q, and graded characters built from them."""

from __future__ import annotations

import re
from fractions import Fraction

__all__ = ["LPoly", "Q", "GradedCharacter", "parse_lpoly"]


class LPoly:
    """Immutable Laurent polynomial with exact (usually integer) coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for e, v in (terms or {}).items():
            if v != 0:
                clean[int(e)] = v
        self.terms = clean

    @staticmethod
    def const(v) -> "LPoly":
        return LPoly({0: v})

    @staticmethod
    def monomial(e: int, v=1) -> "LPoly":
        return LPoly({e: v})

    def _lift(self, other):
        if isinstance(other, LPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LPoly.const(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, v in o.terms.items():
            out[e] = out.get(e, 0) + v
        return LPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LPoly({e: -v for e, v in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = {}
        for e1, v1 in self.terms.items():
            for e2, v2 in o.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return LPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = LPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, e: int):
        return self.terms.get(e, 0)

    def min_degree(self):
        return min(self.terms) if self.terms else None

    def max_degree(self):
        return max(self.terms) if self.terms else None

    def truncate(self, lo=None, hi=None) -> "LPoly":
        return LPoly({e: v for e, v in self.terms.items() if (lo is None or e >= lo) and (hi is None or e <= hi)})

    def shift(self, k: int) -> "LPoly":
        return LPoly({e + k: v for e, v in self.terms.items()})

    def bar(self) -> "LPoly":
        """q -> q^{-1}."""
        return LPoly({-e: v for e, v in self.terms.items()})

    def at_one(self):
        return sum(self.terms.values(), 0)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.terms.values())

    def __str__(self):
        """Ascending powers with explicit signs, e.g. ``1+q^2``, ``-q-q^3``."""
        if not self.terms:
            return "0"
        out = ""
        for e in sorted(self.terms):
            v = self.terms[e]
            sign = "-" if v < 0 else "+"
            mag = abs(v)
            mag_s = str(mag.numerator) if isinstance(mag, Fraction) and mag.denominator == 1 else str(mag)
            if e == 0:
                body = mag_s
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if mag == 1 else f"{mag_s}{mono}"
            if not out:
                out = body if sign == "+" else "-" + body
            else:
                out += sign + body
        return out

    __repr__ = __str__


Q = LPoly.monomial(1)

_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(q(?:\^(-?\d+))?)?")


def parse_lpoly(text: str) -> LPoly:
    text = text.replace(" ", "").replace("*", "")
    if text == "0":
        return LPoly()
    out = LPoly()
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse Laurent polynomial {text!r}")
        sign, mag, mono, exp = m.groups()
        if not mag and not mono:
            raise ValueError(f"cannot parse Laurent polynomial {text!r}")
        v = Fraction(mag) if mag else Fraction(1)
        if v.denominator == 1:
            v = int(v)
        if sign == "-":
            v = -v
        e = (int(exp) if exp else 1) if mono else 0
        out = out + LPoly.monomial(e, v)
        pos = m.end()
    return out


class GradedCharacter:
    """Map irrep label -> Laurent polynomial (graded multiplicities)."""

    __slots__ = ("data",)

    def __init__(self, data=None):
        self.data = {k: v for k, v in (data or {}).items() if v}

    def __getitem__(self, label) -> LPoly:
        return self.data.get(label, LPoly())

    def labels(self):
        return sorted(self.data)

    def __add__(self, other):
        out = dict(self.data)
        for k, v in other.data.items():
            out[k] = out.get(k, LPoly()) + v
        return GradedCharacter(out)

    def __neg__(self):
        return GradedCharacter({k: -v for k, v in self.data.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, p) -> "GradedCharacter":
        return GradedCharacter({k: v * p for k, v in self.data.items()})

    def shift(self, k: int) -> "GradedCharacter":
        return GradedCharacter({lab: v.shift(k) for lab, v in self.data.items()})

    def truncate(self, lo=None, hi=None) -> "GradedCharacter":
        return GradedCharacter({k: v.truncate(lo, hi) for k, v in self.data.items()})

    def __eq__(self, other):
        if not isinstance(other, GradedCharacter):
            return NotImplemented
        return self.data == other.data

    def __bool__(self):
        return bool(self.data)

    def degrees(self):
        ds = set()
        for v in self.data.values():
            ds.update(v.terms)
        return sorted(ds)

    def to_json(self, order=None):
        labels = order if order is not None else self.labels()
        return [{"irrep": k, "poly": str(self[k])} for k in labels if self[k]]

    def __str__(self):
        if not self.data:
            return "0"
        parts = []
        for k in self.labels():
            parts.append(f"({self.data[k]})*{k}")
        return " + ".join(parts)

    __repr__ = __str__
