"""Bivariate formal distributions: delta functions, expansions, the projector pi.

Two representations are used.  :class:`DeltaExpansion` is the exact finite
form ``sum_j c^j(w) d_w^(j) delta(z - w)``.  :class:`BiSeries` is a
window-truncated double Laurent series whose coefficients are guaranteed
exact for every exponent pair with ``|z-exp|, |w-exp| <= window.bound``.
Identities between infinite objects are checked on BiSeries, and every
operation that loses exactness near the window edge shrinks the bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import WindowExhausted
from .laurent import LaurentPoly, gen_binomial
from .scalars import CentralScalar, ScalarLike, as_scalar


@dataclass(frozen=True, order=True)
class Window:
    bound: int

    def __post_init__(self):
        if self.bound < 0:
            raise WindowExhausted(f"window bound {self.bound} is empty")

    def shrink(self, n: int) -> "Window":
        if self.bound - n < 0:
            raise WindowExhausted(f"cannot shrink window {self.bound} by {n}")
        return Window(self.bound - n)

    def contains(self, *exps: int) -> bool:
        return all(abs(e) <= self.bound for e in exps)

    def range(self) -> range:
        return range(-self.bound, self.bound + 1)


def as_window(w) -> Window:
    return w if isinstance(w, Window) else Window(int(w))


class BiSeries:
    """Coefficients of ``z**i w**k`` on a square window."""

    __slots__ = ("window", "_coeffs")

    def __init__(self, coeffs: Mapping[tuple[int, int], ScalarLike] | None, window):
        self.window = as_window(window)
        M = self.window.bound
        clean = {}
        for (i, k), v in (coeffs or {}).items():
            if abs(i) <= M and abs(k) <= M:
                s = as_scalar(v)
                if s:
                    clean[(i, k)] = s
        self._coeffs = clean

    @classmethod
    def from_laurent(cls, f: LaurentPoly, window) -> "BiSeries":
        if f.var == "z":
            return cls({(e, 0): v for e, v in f.coeffs.items()}, window)
        if f.var == "w":
            return cls({(0, e): v for e, v in f.coeffs.items()}, window)
        raise ValueError("BiSeries lives in z and w")

    def coefficient(self, i: int, k: int) -> CentralScalar:
        if not self.window.contains(i, k):
            raise WindowExhausted(f"({i}, {k}) outside window {self.window.bound}")
        return self._coeffs.get((i, k), CentralScalar())

    def items(self) -> Iterator:
        return iter(sorted(self._coeffs.items()))

    def support(self) -> list[tuple[int, int]]:
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def restrict(self, window) -> "BiSeries":
        window = as_window(window)
        if window.bound > self.window.bound:
            raise WindowExhausted("cannot widen a window")
        return BiSeries(self._coeffs, window)

    def _common(self, other: "BiSeries") -> Window:
        return min(self.window, other.window)

    def __add__(self, other: "BiSeries") -> "BiSeries":
        win = self._common(other)
        out = dict(self._coeffs)
        for key, v in other._coeffs.items():
            out[key] = out[key] + v if key in out else v
        return BiSeries(out, win)

    def __neg__(self):
        return BiSeries({k: -v for k, v in self._coeffs.items()}, self.window)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: ScalarLike) -> "BiSeries":
        s = as_scalar(s)
        return BiSeries({k: v * s for k, v in self._coeffs.items()}, self.window)

    def mul_laurent(self, f: LaurentPoly) -> "BiSeries":
        """Multiply by a Laurent polynomial in z or w; shrinks by its span."""
        win = self.window.shrink(f.span())
        out: dict = {}
        for (i, k), v in self._coeffs.items():
            for e, fv in f.coeffs.items():
                key = (i + e, k) if f.var == "z" else (i, k + e)
                out[key] = out[key] + v * fv if key in out else v * fv
        return BiSeries(out, win)

    def mul_zw(self, N: int = 1) -> "BiSeries":
        """Multiply by (z - w)**N; each factor shrinks the window by one."""
        a = self
        for _ in range(N):
            win = a.window.shrink(1)
            out: dict = {}
            for (i, k), v in a._coeffs.items():
                out[(i + 1, k)] = out[(i + 1, k)] + v if (i + 1, k) in out else v
                out[(i, k + 1)] = out[(i, k + 1)] - v if (i, k + 1) in out else -v
            a = BiSeries(out, win)
        return a

    def dz(self) -> "BiSeries":
        win = self.window.shrink(1)
        return BiSeries({(i - 1, k): v * i for (i, k), v in self._coeffs.items()}, win)

    def dw(self) -> "BiSeries":
        win = self.window.shrink(1)
        return BiSeries({(i, k - 1): v * k for (i, k), v in self._coeffs.items()}, win)

    def swap(self) -> "BiSeries":
        """Exchange the roles of z and w."""
        return BiSeries({(k, i): v for (i, k), v in self._coeffs.items()}, self.window)

    def residue_z(self) -> LaurentPoly:
        """Coefficient of z**-1 as a polynomial in w, exact for |w-exp| <= bound."""
        if self.window.bound < 1:
            raise WindowExhausted("z**-1 is outside the window")
        return LaurentPoly({k: v for (i, k), v in self._coeffs.items() if i == -1}, "w")

    def has_negative_z(self) -> bool:
        return any(i < 0 for i, _ in self._coeffs)

    def agrees(self, other: "BiSeries") -> bool:
        """Equality on the intersection of the two guaranteed windows."""
        win = self._common(other)
        a = self.restrict(win)._coeffs
        b = other.restrict(win)._coeffs
        return a == b

    def __repr__(self):
        return f"BiSeries({len(self._coeffs)} terms, window={self.window.bound})"

    def to_json(self) -> dict:
        return {
            "window": self.window.bound,
            "coefficients": {f"{i},{k}": v.to_json() for (i, k), v in sorted(self._coeffs.items())},
        }

    @classmethod
    def from_json(cls, data) -> "BiSeries":
        coeffs = {}
        for key, v in data["coefficients"].items():
            i, k = (int(x) for x in key.split(","))
            coeffs[(i, k)] = CentralScalar.from_json(v)
        return cls(coeffs, data["window"])


class DeltaExpansion:
    """Exact ``sum_j c^j(w) d_w^(j) delta(z - w)``.

    Coefficients are usually :class:`LaurentPoly` in w.  Any object with
    ``+``, truthiness and equality also works (the operator product code
    stores field polynomials here); realize/coefficient_formula need
    LaurentPoly coefficients.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        for j, c in (terms or {}).items():
            if j < 0:
                raise ValueError("delta derivative order must be non-negative")
            if isinstance(c, LaurentPoly) and c.var != "w":
                raise ValueError("DeltaExpansion coefficients are functions of w")
            if c:
                clean[int(j)] = c
        self._terms = clean

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __getitem__(self, j):
        return self._terms[j]

    def get(self, j, default=None):
        return self._terms.get(j, default)

    def orders(self) -> list[int]:
        return sorted(self._terms)

    def max_order(self) -> int:
        return max(self._terms, default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other: "DeltaExpansion") -> "DeltaExpansion":
        out = dict(self._terms)
        for j, c in other._terms.items():
            out[j] = out[j] + c if j in out else c
        return DeltaExpansion(out)

    def __eq__(self, other):
        if not isinstance(other, DeltaExpansion):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(sorted(self._terms.items(), key=lambda t: t[0])))

    def __repr__(self):
        inner = ", ".join(f"{j}: {self._terms[j]}" for j in sorted(self._terms))
        return f"DeltaExpansion({{{inner}}})"

    def to_json(self) -> dict:
        return {str(j): self._terms[j].to_json() for j in sorted(self._terms)}

    @classmethod
    def from_json(cls, data) -> "DeltaExpansion":
        return cls({int(j): LaurentPoly.from_json(v, "w") for j, v in data.items()})


def delta_derivative(j: int, window) -> BiSeries:
    """d_w^(j) delta(z - w) = sum_m binom(m, j) z**(-m-1) w**(m-j), windowed."""
    window = as_window(window)
    M = window.bound
    coeffs = {}
    # z-exponent -m-1 in [-M, M]  <=>  m in [-M-1, M-1]
    for m in range(-M - 1, M):
        if abs(m - j) <= M:
            b = gen_binomial(m, j)
            if b:
                coeffs[(-m - 1, m - j)] = b
    return BiSeries(coeffs, window)


def expand_izw(j: int, side: str, window) -> BiSeries:
    """Expansion of 1/(z-w)**(j+1) in |z| > |w| (side 'zw') or |w| > |z| ('wz')."""
    window = as_window(window)
    M = window.bound
    coeffs = {}
    for m in range(-M - 1, M):
        if abs(m - j) > M:
            continue
        if side == "zw" and m >= 0:
            coeffs[(-m - 1, m - j)] = gen_binomial(m, j)
        elif side == "wz" and m < 0:
            coeffs[(-m - 1, m - j)] = -gen_binomial(m, j)
        elif side not in ("zw", "wz"):
            raise ValueError(f"side must be 'zw' or 'wz', got {side!r}")
    return BiSeries(coeffs, window)


def mul_zw_power(a, N: int):
    """Multiply a DeltaExpansion or BiSeries by (z - w)**N.

    On a DeltaExpansion this is the exact reindexing j -> j - N (terms with
    j < N are annihilated).  On a BiSeries the window shrinks by N.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    if isinstance(a, DeltaExpansion):
        return DeltaExpansion({j - N: c for j, c in a.terms.items() if j >= N})
    if isinstance(a, BiSeries):
        return a.mul_zw(N)
    raise TypeError(f"cannot multiply {type(a).__name__} by (z-w)**N")


def res_z_field(f: LaurentPoly, window) -> LaurentPoly:
    """Res_z f(z) delta(z - w), computed by expanding the product.

    The result is f(w) on the window; the direct substitution is used as a
    consistency check and disagreement raises AssertionError.
    """
    if f.var != "z":
        raise ValueError("expected a Laurent polynomial in z")
    window = as_window(window)
    wide = Window(window.bound + f.span())
    product = delta_derivative(0, wide).mul_laurent(f)
    res = product.residue_z().truncate(window.bound)
    direct = f.substitute("w").truncate(window.bound)
    if res != direct:
        raise AssertionError(f"Res_z f(z)delta(z-w) = {res} but f(w) = {direct}")
    return res


def realize(d: DeltaExpansion, window) -> BiSeries:
    """Exact BiSeries of sum_j c^j(w) d_w^(j) delta(z - w) on ``window``."""
    window = as_window(window)
    M = window.bound
    out: dict = {}
    for j, cj in d.terms.items():
        for e, v in cj.coeffs.items():
            # term v * w**e * z**(-m-1) w**(m-j)
            for m in range(-M - 1, M):
                k = m - j + e
                if abs(k) > M:
                    continue
                b = gen_binomial(m, j)
                if b:
                    key = (-m - 1, k)
                    val = v * b
                    out[key] = out[key] + val if key in out else val
    return BiSeries(out, window)


def project_pi(a: BiSeries, max_j: int | None = None) -> DeltaExpansion:
    """pi a = sum_j Res_z(a (z-w)**j) d_w^(j) delta.

    c^j is exact only for |w-exp| <= bound - j and is truncated there.
    ``max_j`` defaults to the largest order the window supports.
    """
    M = a.window.bound
    if max_j is None:
        max_j = M - 1
    if max_j > M - 1:
        raise WindowExhausted(f"order {max_j} needs window > {max_j}, have {M}")
    terms = {}
    cur = a
    for j in range(max_j + 1):
        if j:
            cur = cur.mul_zw(1)
        cj = cur.residue_z().truncate(M - j)
        if cj:
            terms[j] = cj
    return DeltaExpansion(terms)


def coefficient_formula(d: DeltaExpansion, m: int, n: int) -> CentralScalar:
    """Coefficient of z**(-m-1) w**(-n-1) in the realized expansion.

    Uses a_{m,n} = sum_j binom(m, j) c^j_{m+n-j} with c^j(w) = sum_p c^j_p w**(-p-1).
    """
    total = CentralScalar()
    for j, cj in d.terms.items():
        p = m + n - j
        coeff = cj.coefficient(-p - 1)
        if coeff:
            total = total + coeff * gen_binomial(m, j)
    return total


def is_local(a, N: int) -> bool:
    """Whether (z - w)**N a vanishes (on the shrunk window for BiSeries)."""
    if N < 1:
        raise ValueError("N must be positive")
    if isinstance(a, DeltaExpansion):
        return a.max_order() < N
    if a.window.bound <= N:
        raise WindowExhausted(f"window {a.window.bound} too small for N={N}")
    return a.mul_zw(N).is_zero()
