"""The Witt algebra (as vector fields and in the mode basis) and its central extensions."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Callable, Mapping

from .distributions import as_window
from .errors import UndefinedValue, WindowExhausted
from .laurent import LaurentPoly
from .scalars import CentralScalar, ScalarLike, as_scalar


class VectorField:
    """f(z) d/dz."""

    __slots__ = ("coefficient",)

    def __init__(self, coefficient: LaurentPoly):
        if coefficient.var != "z":
            raise ValueError("vector fields live on the z line")
        self.coefficient = coefficient

    @classmethod
    def basis(cls, n: int, sign: int = -1) -> "VectorField":
        """L_n = -z**(n+1) d/dz (``sign=+1`` gives the unnormalized variant)."""
        return cls(LaurentPoly.monomial(n + 1, sign, "z"))

    def __add__(self, other):
        return VectorField(self.coefficient + other.coefficient)

    def __sub__(self, other):
        return VectorField(self.coefficient - other.coefficient)

    def scale(self, s):
        return VectorField(self.coefficient.scale(s))

    def is_zero(self) -> bool:
        return self.coefficient.is_zero()

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.coefficient == other.coefficient

    def __hash__(self):
        return hash(self.coefficient)

    def __repr__(self):
        return f"VectorField(({self.coefficient}) d/dz)"


def vf_bracket(a: VectorField, b: VectorField) -> VectorField:
    """[f d/dz, g d/dz] = (f g' - g f') d/dz."""
    f, g = a.coefficient, b.coefficient
    return VectorField(f * g.derivative() - g * f.derivative())


class WittElement:
    """sum_n a_n L_n."""

    __slots__ = ("_modes",)

    def __init__(self, modes: Mapping[int, ScalarLike] | None = None):
        clean = {}
        for n, v in (modes or {}).items():
            s = as_scalar(v)
            if s:
                clean[int(n)] = s
        self._modes = clean

    @classmethod
    def basis(cls, n: int) -> "WittElement":
        return cls({n: 1})

    @property
    def modes(self) -> dict[int, CentralScalar]:
        return dict(self._modes)

    def coefficient(self, n: int) -> CentralScalar:
        return self._modes.get(n, CentralScalar())

    def __add__(self, other: "WittElement") -> "WittElement":
        out = dict(self._modes)
        for n, v in other._modes.items():
            out[n] = out[n] + v if n in out else v
        return WittElement(out)

    def __neg__(self):
        return WittElement({n: -v for n, v in self._modes.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "WittElement":
        s = as_scalar(s)
        return WittElement({n: v * s for n, v in self._modes.items()})

    def is_zero(self) -> bool:
        return not self._modes

    def __eq__(self, other):
        return isinstance(other, WittElement) and self._modes == other._modes

    def __hash__(self):
        return hash(tuple(sorted(self._modes.items())))

    def __str__(self):
        if not self._modes:
            return "0"
        parts = []
        for n in sorted(self._modes):
            s = str(self._modes[n])
            coef = "" if s == "1" else ("-" if s == "-1" else (f"({s})*" if " " in s else f"{s}*"))
            parts.append(f"{coef}L_{n}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"WittElement({str(self)!r})"

    def to_vector_field(self, sign: int = -1) -> VectorField:
        out = LaurentPoly(var="z")
        for n, v in self._modes.items():
            out = out + LaurentPoly.monomial(n + 1, v * sign, "z")
        return VectorField(out)


def witt_bracket(x: WittElement, y: WittElement) -> WittElement:
    """[L_m, L_n] = (m - n) L_{m+n}, extended bilinearly."""
    out: dict[int, CentralScalar] = {}
    for m, a in x.modes.items():
        for n, b in y.modes.items():
            if m != n:
                out[m + n] = out.get(m + n, CentralScalar()) + a * b * (m - n)
    return WittElement(out)


class VirasoroElement:
    """X + alpha c with X in the Witt algebra and c the central generator."""

    __slots__ = ("witt", "central")

    def __init__(self, witt: WittElement | None = None, central: ScalarLike = 0):
        self.witt = witt if witt is not None else WittElement()
        self.central = as_scalar(central)

    @classmethod
    def basis(cls, n: int) -> "VirasoroElement":
        return cls(WittElement.basis(n))

    @classmethod
    def central_unit(cls) -> "VirasoroElement":
        return cls(central=1)

    def __add__(self, other):
        return VirasoroElement(self.witt + other.witt, self.central + other.central)

    def __neg__(self):
        return VirasoroElement(-self.witt, -self.central)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return VirasoroElement(self.witt.scale(s), self.central * as_scalar(s))

    def is_zero(self) -> bool:
        return self.witt.is_zero() and not self.central

    def __eq__(self, other):
        return (isinstance(other, VirasoroElement) and self.witt == other.witt
                and self.central == other.central)

    def __hash__(self):
        return hash((self.witt, self.central))

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = [] if self.witt.is_zero() else [str(self.witt)]
        if self.central:
            s = str(self.central)
            parts.append("c" if s == "1" else (f"({s})*c" if " " in s else f"{s}*c"))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"VirasoroElement({str(self)!r})"

    def to_json(self) -> dict:
        return {
            "witt": {str(n): v.to_json() for n, v in sorted(self.witt.modes.items())},
            "central": self.central.to_json(),
        }


class DiagonalCocycle:
    """omega(L_m, L_n) = f(m) delta_{m+n,0}, with f odd (only m > 0 stored).

    ``bound`` is the largest |m| for which f is known; asking beyond it raises.
    """

    __slots__ = ("_f", "bound")

    def __init__(self, f: Mapping[int, ScalarLike], bound: int | None = None):
        if any(m <= 0 for m in f):
            raise ValueError("only positive m are stored")
        self._f = {int(m): as_scalar(v) for m, v in f.items()}
        self.bound = max(self._f, default=0) if bound is None else bound

    @classmethod
    def from_function(cls, fn: Callable[[int], ScalarLike], bound: int) -> "DiagonalCocycle":
        return cls({m: fn(m) for m in range(1, bound + 1)}, bound)

    def f(self, m: int) -> CentralScalar:
        if abs(m) > self.bound:
            raise WindowExhausted(f"f({m}) beyond stored bound {self.bound}")
        if m == 0:
            return CentralScalar()
        v = self._f.get(abs(m), CentralScalar())
        return v if m > 0 else -v

    def __call__(self, m: int, n: int) -> CentralScalar:
        if m + n != 0:
            return CentralScalar()
        return self.f(m)

    def values(self) -> dict[int, CentralScalar]:
        return {m: self.f(m) for m in range(1, self.bound + 1)}

    def __add__(self, other: "DiagonalCocycle") -> "DiagonalCocycle":
        b = min(self.bound, other.bound)
        return DiagonalCocycle({m: self.f(m) + other.f(m) for m in range(1, b + 1)}, b)

    def scale(self, s) -> "DiagonalCocycle":
        return DiagonalCocycle({m: v * as_scalar(s) for m, v in self.values().items()}, self.bound)

    def __eq__(self, other):
        return isinstance(other, DiagonalCocycle) and self.bound == other.bound \
            and self.values() == other.values()

    def __repr__(self):
        vals = ", ".join(f"{m}: {v}" for m, v in self.values().items())
        return f"DiagonalCocycle({{{vals}}})"

    def to_json(self) -> dict:
        return {str(m): v.to_json() for m, v in self.values().items()}


def virasoro_cocycle(bound: int) -> DiagonalCocycle:
    """f(m) = m(m**2 - 1)/12."""
    from fractions import Fraction
    return DiagonalCocycle.from_function(lambda m: Fraction(m * (m * m - 1), 12), bound)


def _omega(omega, m: int, n: int) -> CentralScalar:
    if isinstance(omega, DiagonalCocycle):
        return omega(m, n)
    return omega.value((m, n))


def virasoro_bracket(x: VirasoroElement, y: VirasoroElement, omega) -> VirasoroElement:
    """[X + a c, Y + b c] = [X, Y] + omega(X, Y) c; ``omega`` is a DiagonalCocycle or 2-Cochain."""
    witt = witt_bracket(x.witt, y.witt)
    central = CentralScalar()
    for m, a in x.witt.modes.items():
        for n, b in y.witt.modes.items():
            w = _omega(omega, m, n)
            if w:
                central = central + a * b * w
    return VirasoroElement(witt, central)


def mode_vf_iso_check(window, sign: int = -1) -> bool:
    """vf_bracket of the vector fields sign*z**(n+1) d/dz matches (m-n) L_{m+n} on the window."""
    M = as_window(window).bound
    for m in range(-M, M + 1):
        for n in range(-M, M + 1):
            lhs = vf_bracket(VectorField.basis(m, sign), VectorField.basis(n, sign))
            rhs = witt_bracket(WittElement.basis(m), WittElement.basis(n)).to_vector_field(sign)
            if lhs != rhs:
                return False
    return True


@dataclass
class JacobiResult:
    ok: bool
    checked: int
    skipped: int
    counterexample: tuple[int, int, int] | None = None
    residual: str | None = None

    def __bool__(self):
        return self.ok


def jacobi_check(bracket: Callable, window, basis: Callable[[int], object] = WittElement.basis,
                 stop_at_first: bool = True) -> JacobiResult:
    """[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] = 0 on basis triples with all indices in the window.

    Triples whose pairwise sums leave the window, or that need an undefined
    cochain value, are skipped and counted.
    """
    M = as_window(window).bound
    checked = skipped = 0
    first = None
    residual = None
    triples = sorted(combinations_with_replacement(range(-M, M + 1), 3),
                     key=lambda t: (max(abs(x) for x in t), t))
    for a, b, c in triples:
        if max(abs(a + b), abs(b + c), abs(c + a)) > M:
            skipped += 1
            continue
        X, Y, Z = basis(a), basis(b), basis(c)
        try:
            total = (bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X))
                     + bracket(Z, bracket(X, Y)))
        except UndefinedValue:
            skipped += 1
            continue
        checked += 1
        if not total.is_zero() and first is None:
            first = (a, b, c)
            residual = str(total)
            if stop_at_first:
                break
    return JacobiResult(first is None, checked, skipped, first, residual)
