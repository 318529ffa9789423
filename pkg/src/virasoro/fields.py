"""Fields, operator product expansions and the mode brackets they induce.

A field of conformal weight ``D`` is written ``a(z) = sum_n a_n z**(-n-D)``,
so the energy-momentum tensor is ``T(z) = sum_n L_n z**(-n-2)``.  The
bracket formula for local fields is stated for the weight-one labelling
``z**(-k-1)``; the translation is ``k = n + D - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .distributions import DeltaExpansion
from .laurent import LaurentPoly, falling, gen_binomial, taylor_about_w
from .scalars import C, CentralScalar, ScalarLike, as_scalar


@dataclass(frozen=True)
class FieldSymbol:
    name: str
    weight: int

    def __str__(self):
        return self.name


CONST = FieldSymbol("CONST", 0)
T = FieldSymbol("T", 2)


def mode_label(sym: FieldSymbol) -> str:
    return "L" if sym == T else sym.name


def mode_exponent(sym: FieldSymbol, n: int) -> int:
    """Power of z multiplying the mode a_n."""
    return -n - sym.weight


def h_eigenvalue(sym: FieldSymbol, n: int) -> int:
    """Eigenvalue of H on a_n read off from (D + z d/dz) acting on its monomial."""
    return sym.weight + mode_exponent(sym, n)


@dataclass(frozen=True)
class FieldTerm:
    """``scalar * w**w_exponent * d^derivative_order symbol(w)``."""

    scalar: CentralScalar
    derivative_order: int
    symbol: FieldSymbol
    w_exponent: int


class ModeElement:
    """Finite combination of modes plus a multiple of the identity operator."""

    __slots__ = ("_modes", "central")

    def __init__(self, modes: Mapping[tuple[str, int], ScalarLike] | None = None,
                 central: ScalarLike = 0):
        clean = {}
        for key, v in (modes or {}).items():
            s = as_scalar(v)
            if s:
                clean[(key[0], int(key[1]))] = s
        self._modes = clean
        self.central = as_scalar(central)

    @property
    def modes(self) -> dict:
        return dict(self._modes)

    def __add__(self, other: "ModeElement") -> "ModeElement":
        out = dict(self._modes)
        for k, v in other._modes.items():
            out[k] = out[k] + v if k in out else v
        return ModeElement(out, self.central + other.central)

    def __neg__(self):
        return ModeElement({k: -v for k, v in self._modes.items()}, -self.central)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: ScalarLike) -> "ModeElement":
        s = as_scalar(s)
        return ModeElement({k: v * s for k, v in self._modes.items()}, self.central * s)

    def __bool__(self):
        return bool(self._modes) or bool(self.central)

    def __eq__(self, other):
        if not isinstance(other, ModeElement):
            return NotImplemented
        return self._modes == other._modes and self.central == other.central

    def __hash__(self):
        return hash((tuple(sorted(self._modes.items())), self.central))

    def __str__(self):
        parts = []
        for (name, n), v in sorted(self._modes.items()):
            label = "L" if name == T.name else name
            s = str(v)
            coef = "" if s == "1" else ("-" if s == "-1" else (f"({s})" if len(v.terms) > 1 else s))
            parts.append(f"{coef}{label}_{n}" if coef in ("", "-") else f"{coef}*{label}_{n}")
        if self.central:
            parts.append(str(self.central))
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self):
        return f"ModeElement({str(self)!r})"

    def to_json(self) -> dict:
        return {
            "modes": [[name, n, v.to_json()] for (name, n), v in sorted(self._modes.items())],
            "central": self.central.to_json(),
        }


class FieldPolynomial:
    """Finite sum of :class:`FieldTerm`, linear in the field symbols.

    Derivatives are ordinary (not divided) derivatives in w.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[FieldTerm] = ()):
        acc: dict[tuple, CentralScalar] = {}
        for t in terms:
            if t.symbol == CONST and t.derivative_order:
                continue  # derivative of a constant
            key = (t.symbol, t.derivative_order, t.w_exponent)
            acc[key] = acc[key] + t.scalar if key in acc else as_scalar(t.scalar)
        self._terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def of(cls, sym: FieldSymbol, scalar: ScalarLike = 1, derivative_order: int = 0,
           w_exponent: int = 0) -> "FieldPolynomial":
        return cls([FieldTerm(as_scalar(scalar), derivative_order, sym, w_exponent)])

    @classmethod
    def const(cls, scalar: ScalarLike, w_exponent: int = 0) -> "FieldPolynomial":
        return cls.of(CONST, scalar, 0, w_exponent)

    @classmethod
    def from_laurent(cls, f: LaurentPoly) -> "FieldPolynomial":
        return cls([FieldTerm(v, 0, CONST, e) for e, v in f.coeffs.items()])

    @property
    def terms(self) -> list[FieldTerm]:
        return [FieldTerm(v, k, s, e) for (s, k, e), v in
                sorted(self._terms.items(), key=lambda kv: (kv[0][0].name, kv[0][1], kv[0][2]))]

    def symbols(self) -> set[FieldSymbol]:
        return {s for (s, _, _) in self._terms}

    def is_constant(self) -> bool:
        return all(s == CONST for (s, _, _) in self._terms)

    def as_laurent(self) -> LaurentPoly:
        if not self.is_constant():
            raise ValueError(f"{self} is not a function of w alone")
        return LaurentPoly({e: v for (_, _, e), v in self._terms.items()}, "w")

    def __add__(self, other):
        return FieldPolynomial(self.terms + other.terms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: ScalarLike) -> "FieldPolynomial":
        s = as_scalar(s)
        return FieldPolynomial(FieldTerm(t.scalar * s, t.derivative_order, t.symbol, t.w_exponent)
                               for t in self.terms)

    __rmul__ = scale

    def times_w(self, k: int) -> "FieldPolynomial":
        return FieldPolynomial(FieldTerm(t.scalar, t.derivative_order, t.symbol, t.w_exponent + k)
                               for t in self.terms)

    def times_laurent(self, f: LaurentPoly) -> "FieldPolynomial":
        out = []
        for e, v in f.coeffs.items():
            out += self.scale(v).times_w(e).terms
        return FieldPolynomial(out)

    def derivative(self) -> "FieldPolynomial":
        out = []
        for t in self.terms:
            if t.w_exponent:
                out.append(FieldTerm(t.scalar * t.w_exponent, t.derivative_order, t.symbol,
                                     t.w_exponent - 1))
            if t.symbol != CONST:
                out.append(FieldTerm(t.scalar, t.derivative_order + 1, t.symbol, t.w_exponent))
        return FieldPolynomial(out)

    def modes_at(self, exponent: int) -> ModeElement:
        """Coefficient of w**exponent, as a combination of modes."""
        modes: dict = {}
        central = CentralScalar()
        for (sym, k, e), s in self._terms.items():
            if sym == CONST:
                if e == exponent:
                    central = central + s
                continue
            # w**e * d^k sum_n X_n w**(-n-D)  has exponent e - n - D - k
            n = e - sym.weight - k - exponent
            f = falling(-n - sym.weight, k)
            if f:
                key = (sym.name, n)
                modes[key] = modes[key] + s * f if key in modes else s * f
        return ModeElement(modes, central)

    def mode_coefficient(self, p: int) -> ModeElement:
        """c_p in the convention c(w) = sum_p c_p w**(-p-1)."""
        return self.modes_at(-p - 1)

    def component(self, sym: FieldSymbol, n: int = 0) -> LaurentPoly:
        """Scalar Laurent polynomial multiplying the mode sym_n (or the identity for CONST)."""
        out: dict[int, CentralScalar] = {}
        for (s, k, e), v in self._terms.items():
            if s != sym:
                continue
            if s == CONST:
                exp, val = e, v
            else:
                exp = e - n - s.weight - k
                val = v * falling(-n - s.weight, k)
            if val:
                out[exp] = out[exp] + val if exp in out else val
        return LaurentPoly(out, "w")

    def expand(self, lo: int, hi: int) -> dict[int, ModeElement]:
        """w-series of the field with exponents in [lo, hi], built mode by mode."""
        series: dict[int, ModeElement] = {}
        for (sym, k, e), s in self._terms.items():
            if sym == CONST:
                if lo <= e <= hi:
                    series[e] = series.get(e, ModeElement()) + ModeElement(central=s)
                continue
            shift = e - sym.weight - k
            for n in range(shift - hi, shift - lo + 1):
                f = falling(-n - sym.weight, k)
                if f:
                    series[shift - n] = series.get(shift - n, ModeElement()) + \
                        ModeElement({(sym.name, n): s * f})
        return series

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, FieldPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for t in self.terms:
            body = "" if t.symbol == CONST else \
                ("∂" * t.derivative_order if t.derivative_order <= 3 else f"∂^{t.derivative_order}") \
                + f"{t.symbol.name}(w)"
            wpart = "" if t.w_exponent == 0 else ("w" if t.w_exponent == 1 else f"w^{t.w_exponent}")
            s = str(t.scalar)
            if len(t.scalar.terms) > 1:
                s = f"({s})"
            if not body and not wpart:
                parts.append(s)
                continue
            coef = "" if s == "1" else ("-" if s == "-1" else s)
            parts.append(coef + wpart + body)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"FieldPolynomial({str(self)!r})"


def weight_of(entity, pole: int | None = None) -> int:
    """Conformal weight of a field term, or of the OPE summand c/(z-w)**(pole+1).

    w has weight -1 and each derivative adds one; CONST has weight zero.
    """
    if isinstance(entity, FieldPolynomial):
        ws = {weight_of(t) for t in entity.terms}
        if len(ws) != 1:
            raise ValueError(f"{entity} is not homogeneous (weights {sorted(ws)})")
        w = ws.pop()
    elif isinstance(entity, FieldTerm):
        w = entity.symbol.weight + entity.derivative_order - entity.w_exponent
    else:
        raise TypeError(f"no weight for {type(entity).__name__}")
    return w if pole is None else w + pole + 1


@dataclass
class OpeData:
    """Singular part a(z)b(w) ~ sum_j c^j(w) / (z-w)**(j+1)."""

    left: FieldSymbol
    right: FieldSymbol
    singular: dict[int, FieldPolynomial] = field(default_factory=dict)
    strict: bool = True

    def __post_init__(self):
        self.singular = {int(j): c for j, c in self.singular.items() if c}
        for j in self.singular:
            if j < 0:
                raise ValueError("pole index must be non-negative")
        if self.strict:
            bad = self.weight_violations()
            if bad:
                raise ValueError(f"summands off weight {self.total_weight}: {bad}")

    @property
    def order(self) -> int:
        return 1 + max(self.singular, default=-1)

    @property
    def total_weight(self) -> int:
        return self.left.weight + self.right.weight

    def weight_violations(self) -> list[tuple[int, str, int]]:
        out = []
        for j, cj in sorted(self.singular.items()):
            for t in cj.terms:
                w = weight_of(t, pole=j)
                if w != self.total_weight:
                    out.append((j, str(FieldPolynomial([t])), w))
        return out

    def coefficient(self, j: int) -> FieldPolynomial:
        return self.singular.get(j, FieldPolynomial())

    def display(self) -> str:
        parts = []
        for j in sorted(self.singular, reverse=True):
            num = str(self.singular[j])
            if " " in num:
                num = f"({num})"
            den = "(z-w)" if j == 0 else f"(z-w)^{j + 1}"
            parts.append(f"{num}/{den}")
        return " + ".join(parts) if parts else "0"


def tt_ope(c1: FieldPolynomial | None = None, central: ScalarLike = C / 2) -> OpeData:
    """T(z)T(w) ~ central/(z-w)^4 + 2 c1(w)/(z-w)^2 + d c1(w)/(z-w); c1 defaults to T."""
    if c1 is None:
        c1 = FieldPolynomial.of(T)
    sing = {3: FieldPolynomial.const(central), 1: c1.scale(2), 0: c1.derivative()}
    try:
        return OpeData(T, T, sing)
    except ValueError:
        return OpeData(T, T, sing, strict=False)


def ope_to_distribution(ope: OpeData) -> DeltaExpansion:
    """[a(z), b(w)] = sum_j d_w^(j) delta(z-w) c^j(w), coefficients verbatim."""
    return DeltaExpansion(ope.singular)


def _weight_one_index(sym: FieldSymbol, n: int) -> int:
    return n + sym.weight - 1


def mode_bracket_from_ope(ope: OpeData, m: int, n: int) -> ModeElement:
    """[a_m, b_n] = sum_j binom(M, j) c^j_{M+N-j} with M, N the weight-one indices."""
    M = _weight_one_index(ope.left, m)
    N = _weight_one_index(ope.right, n)
    out = ModeElement()
    for j, cj in ope.singular.items():
        b = gen_binomial(M, j)
        if b:
            out = out + cj.mode_coefficient(M + N - j).scale(b)
    return out


def mode_field_bracket(ope: OpeData, m: int) -> FieldPolynomial:
    """[a_m, b(w)] = sum_j binom(M, j) c^j(w) w**(M-j)."""
    M = _weight_one_index(ope.left, m)
    out = FieldPolynomial()
    for j, cj in ope.singular.items():
        b = gen_binomial(M, j)
        if b:
            out = out + cj.scale(b).times_w(M - j)
    return out


def residue_pairing_bracket(ope: OpeData, m: int, n: int) -> ModeElement:
    """[a_m, b_n] by the contour argument.

    z**(M) is Taylor-expanded about w, the order-j term is paired with
    c^j(w)/(z-w)**(j+1) to leave a simple pole, the residue in z is the
    product t_j(w) c^j(w), and the residue in w of that times w**(N) gives
    the bracket (M = m + D - 1, N = n + D' - 1).
    """
    M = m + ope.left.weight - 1
    N = n + ope.right.weight - 1
    taylor = taylor_about_w(M, max(ope.order - 1, 0))
    out = ModeElement()
    for j, cj in ope.singular.items():
        tj = taylor[j]
        if tj.is_zero():
            continue
        # residue in z leaves t_j(w) c^j(w); multiply by w**N and read w**-1
        for e, v in tj.coeffs.items():
            target = -1 - e - N
            series = cj.expand(target, target)
            if target in series:
                out = out + series[target].scale(v)
    return out


def weight_bound_check(ope: OpeData) -> bool:
    """If the top coefficient is a nonzero constant, D + D' must be at least N."""
    if not ope.singular:
        return True
    top = ope.singular[ope.order - 1]
    if top.is_constant() and top.as_laurent().support() == [0]:
        return ope.total_weight >= ope.order
    return True
