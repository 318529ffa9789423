"""Univariate Laurent polynomials over Q[c] and the binomial helpers around them."""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Mapping

from .errors import VariableMismatch
from .scalars import CentralScalar, ScalarLike, as_scalar

VARIABLES = ("z", "w", "u")


def gen_binomial(m: int, j: int) -> Fraction:
    """m(m-1)...(m-j+1)/j! for any integer m; 1 when j == 0."""
    if j < 0:
        raise ValueError("j must be non-negative")
    num = 1
    for i in range(j):
        num *= m - i
    return Fraction(num, factorial(j))


def falling(x: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= x - i
    return out


class LaurentPoly:
    """Finite sum of ``coeff * var**exp`` with exponents in Z."""

    __slots__ = ("var", "_coeffs")

    def __init__(self, coeffs: Mapping[int, ScalarLike] | None = None, var: str = "z"):
        if var not in VARIABLES:
            raise ValueError(f"unknown variable tag {var!r}")
        self.var = var
        clean = {}
        for e, v in (coeffs or {}).items():
            s = as_scalar(v)
            if s:
                clean[int(e)] = s
        self._coeffs = clean

    @classmethod
    def monomial(cls, exp: int, coeff: ScalarLike = 1, var: str = "z") -> "LaurentPoly":
        return cls({exp: coeff}, var)

    @classmethod
    def one(cls, var: str = "z") -> "LaurentPoly":
        return cls({0: 1}, var)

    @property
    def coeffs(self) -> dict[int, CentralScalar]:
        return dict(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def coefficient(self, exp: int) -> CentralScalar:
        return self._coeffs.get(exp, CentralScalar())

    def support(self) -> list[int]:
        return sorted(self._coeffs)

    def span(self) -> int:
        """Largest absolute exponent present (0 for the zero polynomial)."""
        return max((abs(e) for e in self._coeffs), default=0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def _check(self, other: "LaurentPoly"):
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"expected LaurentPoly, got {type(other).__name__}")
        if other.var != self.var:
            raise VariableMismatch(f"{self.var} vs {other.var}")

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly({0: other}, self.var)
        self._check(other)
        out = dict(self._coeffs)
        for e, v in other._coeffs.items():
            out[e] = out[e] + v if e in out else v
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._coeffs.items()}, self.var)

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly({0: other}, self.var)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        self._check(other)
        out: dict[int, CentralScalar] = {}
        for e1, v1 in self._coeffs.items():
            for e2, v2 in other._coeffs.items():
                e = e1 + e2
                out[e] = out[e] + v1 * v2 if e in out else v1 * v2
        return LaurentPoly(out, self.var)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, s: ScalarLike) -> "LaurentPoly":
        s = as_scalar(s)
        return LaurentPoly({e: v * s for e, v in self._coeffs.items()}, self.var)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``var**k``."""
        return LaurentPoly({e + k: v for e, v in self._coeffs.items()}, self.var)

    def derivative(self, j: int = 1, divided: bool = False) -> "LaurentPoly":
        if j < 0:
            raise ValueError("derivative order must be non-negative")
        out = {}
        for e, v in self._coeffs.items():
            f = gen_binomial(e, j) if divided else Fraction(falling(e, j))
            if f:
                out[e - j] = v * f
        return LaurentPoly(out, self.var)

    def residue(self) -> CentralScalar:
        return self.coefficient(-1)

    def substitute(self, var: str) -> "LaurentPoly":
        """Same coefficients, new variable tag."""
        return LaurentPoly(self._coeffs, var)

    def truncate(self, bound: int) -> "LaurentPoly":
        return LaurentPoly({e: v for e, v in self._coeffs.items() if abs(e) <= bound}, self.var)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.var == other.var and self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction, CentralScalar)):
            return self._coeffs == LaurentPoly({0: other}, self.var)._coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.var, tuple(sorted(self._coeffs.items()))))

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for e in sorted(self._coeffs, reverse=True):
            v = self._coeffs[e]
            mon = "" if e == 0 else (self.var if e == 1 else f"{self.var}^{e}")
            s = str(v)
            if not mon:
                parts.append(s)
            elif s == "1":
                parts.append(mon)
            elif s == "-1":
                parts.append("-" + mon)
            elif len(v.terms) > 1:
                parts.append(f"({s}){mon}")
            else:
                parts.append(f"{s}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentPoly({str(self)!r}, var={self.var!r})"

    def to_json(self) -> dict:
        return {str(e): self._coeffs[e].to_json() for e in sorted(self._coeffs)}

    @classmethod
    def from_json(cls, data, var: str) -> "LaurentPoly":
        return cls({int(e): CentralScalar.from_json(v) for e, v in data.items()}, var)


def laurent_arithmetic(f: LaurentPoly, g, op: str) -> LaurentPoly:
    """Dispatch for add/sub/mul/scale; ``g`` is a scalar when ``op == 'scale'``."""
    if op == "scale":
        return f.scale(g)
    if not isinstance(g, LaurentPoly):
        raise TypeError("second operand must be a LaurentPoly")
    if f.var != g.var:
        raise VariableMismatch(f"{f.var} vs {g.var}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def derivative(f: LaurentPoly, j: int, divided: bool) -> LaurentPoly:
    return f.derivative(j, divided)


def residue(f: LaurentPoly) -> CentralScalar:
    if f.var not in ("z", "w"):
        raise ValueError("residue is taken in z or w")
    return f.residue()


def taylor_about_w(k: int, order: int) -> list[LaurentPoly]:
    """Coefficients t_i with z**k = sum_i t_i (z - w)**i, t_i a polynomial in w.

    Exact through ``order``; for k >= 0 the series terminates at i = k.
    """
    return [LaurentPoly.monomial(k - i, gen_binomial(k, i), "w") for i in range(order + 1)]
