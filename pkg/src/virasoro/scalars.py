"""Exact scalars: rationals and polynomials in the formal central charge ``c``.

Rationals are plain :class:`fractions.Fraction`.  :class:`CentralScalar` is an
element of Q[c]; every coefficient elsewhere in the package lives there.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Mapping, Union

Rational = Fraction

ScalarLike = Union[int, Fraction, "CentralScalar"]


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, CentralScalar):
        return x.constant_value()
    raise TypeError(f"not an exact rational: {x!r}")


class CentralScalar:
    """Polynomial in ``c`` with rational coefficients, stored sparsely."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        if terms:
            for deg, val in terms.items():
                if deg < 0:
                    raise ValueError("negative power of c")
                q = as_rational(val)
                if q:
                    clean[int(deg)] = q
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "CentralScalar":
        # trusted constructor: int keys, Fraction values, zeros allowed
        obj = cls.__new__(cls)
        obj._terms = {d: v for d, v in terms.items() if v}
        obj._hash = None
        return obj

    @classmethod
    def const(cls, x) -> "CentralScalar":
        return cls({0: x})

    @classmethod
    def c(cls) -> "CentralScalar":
        return cls({1: 1})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def coefficient(self, deg: int) -> Fraction:
        return self._terms.get(deg, Fraction(0))

    def degree(self) -> int:
        return max(self._terms) if self._terms else -1

    def is_constant(self) -> bool:
        return all(d == 0 for d in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} depends on c")
        return self._terms.get(0, Fraction(0))

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for d, v in other._terms.items():
            out[d] = out[d] + v if d in out else v
        return CentralScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return CentralScalar._raw({d: -v for d, v in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 1:
                return self
            return CentralScalar._raw({d: v * other for d, v in self._terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, Fraction] = {}
        for d1, v1 in self._terms.items():
            for d2, v2 in other._terms.items():
                out[d1 + d2] = out.get(d1 + d2, 0) + v1 * v2
        return CentralScalar._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        q = as_rational(other)
        return CentralScalar({d: v / q for d, v in self._terms.items()})

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for d in sorted(self._terms):
            v = self._terms[d]
            if d == 0:
                parts.append(str(v))
                continue
            mon = "c" if d == 1 else f"c^{d}"
            if v == 1:
                parts.append(mon)
            elif v == -1:
                parts.append("-" + mon)
            elif v.denominator == 1:
                parts.append(f"{v}{mon}")
            else:
                parts.append(f"{v.numerator}{mon}/{v.denominator}" if v.numerator != 1
                             else f"{mon}/{v.denominator}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"CentralScalar({str(self)!r})"

    def to_json(self) -> dict[str, str]:
        return {str(d): str(self._terms[d]) for d in sorted(self._terms)}

    @classmethod
    def from_json(cls, data) -> "CentralScalar":
        if isinstance(data, (str, int)):
            return cls.const(Fraction(data))
        return cls({int(k): Fraction(v) for k, v in data.items()})


ZERO = CentralScalar()
ONE = CentralScalar.const(1)
C = CentralScalar.c()


def _coerce(x):
    if isinstance(x, CentralScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return CentralScalar.const(x)
    return NotImplemented


def as_scalar(x: ScalarLike) -> CentralScalar:
    if isinstance(x, CentralScalar):
        return x
    return CentralScalar.const(as_rational(x))
