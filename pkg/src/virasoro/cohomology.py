"""Chevalley-Eilenberg cochains on a window of the Witt basis {L_n : |n| <= M}.

A k-cochain stores its values on strictly increasing index tuples.  Values
that would need a bracket L_{a+b} with |a+b| > M are *undefined*, not zero:
the coboundary marks them and every consumer either skips them or raises
:class:`UndefinedValue`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from random import Random
from typing import Callable, Iterable, Mapping

from . import linalg
from .distributions import as_window
from .errors import NotACocycle, UnderdeterminedWindow, UndefinedValue, UnsupportedDegree
from .lie import (DiagonalCocycle, JacobiResult, VirasoroElement, WittElement,
                  jacobi_check, virasoro_bracket)
from .scalars import CentralScalar, ScalarLike, as_scalar

MAX_DEGREE = 3
_ZERO = CentralScalar()


def _sort_with_sign(idx: tuple[int, ...]) -> tuple[tuple[int, ...] | None, int]:
    """Sorted tuple and permutation sign; (None, 0) when an index repeats."""
    n = len(idx)
    inversions = 0
    for i in range(n):
        for j in range(i + 1, n):
            if idx[i] == idx[j]:
                return None, 0
            if idx[i] > idx[j]:
                inversions += 1
    if not inversions:
        return idx, 1
    return tuple(sorted(idx)), -1 if inversions % 2 else 1


class Cochain:
    """Alternating k-linear form on the windowed Witt basis."""

    __slots__ = ("degree", "window", "_values", "undefined")

    def __init__(self, degree: int, window, values: Mapping[tuple, ScalarLike] | None = None,
                 undefined: Iterable[tuple] = ()):
        if not 0 <= degree <= MAX_DEGREE:
            raise UnsupportedDegree(f"degree {degree} not in 0..{MAX_DEGREE}")
        self.degree = degree
        self.window = as_window(window)
        M = self.window.bound
        clean = {}
        for idx, v in (values or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"tuple {idx} has wrong length for degree {degree}")
            if any(abs(n) > M for n in idx):
                raise ValueError(f"tuple {idx} outside window {M}")
            key, sign = _sort_with_sign(idx)
            if key is None:
                continue
            s = as_scalar(v)
            if sign == -1:
                s = -s
            if s:
                clean[key] = clean[key] + s if key in clean else s
        self._values = {k: v for k, v in clean.items() if v}
        self.undefined = frozenset(_sort_with_sign(tuple(u))[0] for u in undefined) - {None}

    @classmethod
    def _trusted(cls, degree: int, window, values: dict, undefined: set) -> "Cochain":
        # values keyed by increasing in-window tuples, no zeros; skips validation
        obj = cls.__new__(cls)
        obj.degree = degree
        obj.window = as_window(window)
        obj._values = values
        obj.undefined = frozenset(undefined)
        return obj

    @classmethod
    def zero(cls, degree: int, window) -> "Cochain":
        return cls(degree, window)

    @classmethod
    def from_diagonal(cls, f: DiagonalCocycle, window) -> "Cochain":
        M = as_window(window).bound
        return cls(2, M, {(-m, m): f.f(-m) for m in range(1, M + 1)})

    @classmethod
    def from_function(cls, degree: int, window, fn: Callable[..., ScalarLike]) -> "Cochain":
        M = as_window(window).bound
        return cls(degree, M, {idx: fn(*idx) for idx in combinations(range(-M, M + 1), degree)})

    @classmethod
    def random(cls, degree: int, window, rng: Random, lo: int = -3, hi: int = 3,
               density: float = 1.0) -> "Cochain":
        M = as_window(window).bound
        vals = {}
        for idx in combinations(range(-M, M + 1), degree):
            if rng.random() < density:
                vals[idx] = rng.randint(lo, hi)
        return cls(degree, M, vals)

    def tuples(self) -> list[tuple[int, ...]]:
        M = self.window.bound
        return list(combinations(range(-M, M + 1), self.degree))

    def defined_tuples(self) -> list[tuple[int, ...]]:
        return [t for t in self.tuples() if t not in self.undefined]

    @property
    def values(self) -> dict[tuple, CentralScalar]:
        return dict(self._values)

    def value(self, idx) -> CentralScalar:
        idx = tuple(idx)
        if len(idx) != self.degree:
            raise ValueError(f"expected {self.degree} indices, got {len(idx)}")
        if idx and (max(idx) > self.window.bound or min(idx) < -self.window.bound):
            raise UndefinedValue(idx)
        key, sign = _sort_with_sign(idx)
        if key is None:
            return _ZERO
        if key in self.undefined:
            raise UndefinedValue(idx)
        v = self._values.get(key)
        if v is None:
            return _ZERO
        return v if sign == 1 else -v

    def is_defined(self, idx) -> bool:
        try:
            self.value(idx)
        except UndefinedValue:
            return False
        return True

    def __call__(self, *elements: WittElement) -> CentralScalar:
        """Multilinear extension to arbitrary Witt elements."""
        if len(elements) != self.degree:
            raise ValueError(f"expected {self.degree} arguments")
        total = CentralScalar()

        def rec(i, idx, coeff):
            nonlocal total
            if i == len(elements):
                total = total + self.value(tuple(idx)) * coeff
                return
            for n, a in elements[i].modes.items():
                rec(i + 1, idx + [n], coeff * a)

        rec(0, [], CentralScalar.const(1))
        return total

    def _binary(self, other: "Cochain", sign: int) -> "Cochain":
        if self.degree != other.degree:
            raise ValueError("degrees differ")
        win = min(self.window, other.window)
        M = win.bound
        vals = {k: v for k, v in self._values.items() if all(abs(n) <= M for n in k)}
        for k, v in other._values.items():
            if all(abs(n) <= M for n in k):
                vals[k] = vals[k] + v * sign if k in vals else v * sign
        und = {u for u in self.undefined | other.undefined if all(abs(n) <= M for n in u)}
        return Cochain(self.degree, win, vals, und)

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def scale(self, s) -> "Cochain":
        s = as_scalar(s)
        return Cochain(self.degree, self.window, {k: v * s for k, v in self._values.items()},
                       self.undefined)

    def __neg__(self):
        return self.scale(-1)

    def is_zero(self) -> bool:
        """Zero on every defined tuple."""
        return not any(k not in self.undefined for k in self._values)

    def agrees(self, other: "Cochain") -> bool:
        diff = self - other
        return diff.is_zero()

    def __repr__(self):
        return (f"Cochain(degree={self.degree}, window={self.window.bound}, "
                f"{len(self._values)} values, {len(self.undefined)} undefined)")

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "window": self.window.bound,
            "values": [[list(k), v.to_json()] for k, v in sorted(self._values.items())],
            "undefined": sorted(list(u) for u in self.undefined),
        }


def basis_one_cochain(n: int, window) -> Cochain:
    return Cochain(1, window, {(n,): 1})


def coboundary(omega: Cochain) -> Cochain:
    """d omega(X_1..X_{k+1}) = sum_{i<j} (-1)**(i+j) omega([X_i, X_j], X_1, ^i, ^j, ...)."""
    k = omega.degree
    if k > 2:
        raise UnsupportedDegree("coboundary is implemented for degree <= 2")
    M = omega.window.bound
    if k == 0:
        return Cochain(1, M)
    vals, undefined = {}, set()
    pairs = [(i, j) for i in range(k + 1) for j in range(i + 1, k + 1)]
    for idx in combinations(range(-M, M + 1), k + 1):
        acc: dict[int, Fraction] = {}
        ok = True
        for i, j in pairs:
            a, b = idx[i], idx[j]
            if abs(a + b) > M:
                ok = False
                break
            rest = [idx[t] for t in range(k + 1) if t not in (i, j)]
            try:
                val = omega.value((a + b, *rest))
            except UndefinedValue:
                ok = False
                break
            # 1-based exponent (i+1)+(j+1) has the parity of i+j
            coef = (a - b) if (i + j) % 2 == 0 else (b - a)
            for d, v in val.terms.items():
                # integer-valued cochains are the common case: stay in int arithmetic
                x = v.numerator * coef if v.denominator == 1 else v * coef
                acc[d] = acc.get(d, 0) + x
        if ok:
            if any(acc.values()):
                vals[idx] = CentralScalar._raw({d: Fraction(x) for d, x in acc.items()})
        else:
            undefined.add(idx)
    return Cochain._trusted(k + 1, omega.window, vals, undefined)


def wedge(eta: Cochain, theta: Cochain) -> Cochain:
    """Shuffle product with unit coefficients: (a ^ b)(X, Y) = a(X)b(Y) - a(Y)b(X)."""
    p, q = eta.degree, theta.degree
    if p + q > MAX_DEGREE:
        raise UnsupportedDegree(f"wedge of degrees {p} and {q} exceeds {MAX_DEGREE}")
    win = min(eta.window, theta.window)
    M = win.bound
    vals, undefined = {}, set()
    for idx in combinations(range(-M, M + 1), p + q):
        total = CentralScalar()
        ok = True
        for pos in combinations(range(p + q), p):
            rest = [t for t in range(p + q) if t not in pos]
            sign = -1 if (sum(pos) - p * (p - 1) // 2) % 2 else 1
            try:
                a = eta.value(tuple(idx[t] for t in pos))
                b = theta.value(tuple(idx[t] for t in rest))
            except UndefinedValue:
                ok = False
                break
            if a and b:
                total = total + a * b * sign
        if ok:
            vals[idx] = total
        else:
            undefined.add(idx)
    return Cochain(p + q, win, vals, undefined)


@dataclass
class CocycleCheck:
    ok: bool
    checked: int
    skipped: int
    counterexample: tuple[int, int, int] | None = None
    residual: CentralScalar | None = None

    def __bool__(self):
        return self.ok


def _small_first(tuples):
    """Order index tuples so that counterexamples come out as small as possible."""
    return sorted(tuples, key=lambda t: (max(abs(x) for x in t), t))


def _as_cochain(omega, window=None) -> Cochain:
    if isinstance(omega, Cochain):
        return omega
    if isinstance(omega, DiagonalCocycle):
        return Cochain.from_diagonal(omega, omega.bound if window is None else window)
    raise TypeError(f"expected a 2-cochain, got {type(omega).__name__}")


def is_cocycle(omega, window=None) -> CocycleCheck:
    """omega([X,Y],Z) + omega([Y,Z],X) + omega([Z,X],Y) = 0 on all in-window triples."""
    omega = _as_cochain(omega, window)
    if omega.degree != 2:
        raise ValueError("cocycle test is for 2-cochains")
    M = omega.window.bound
    checked = skipped = 0
    for a, b, c in _small_first(combinations(range(-M, M + 1), 3)):
        if max(abs(a + b), abs(b + c), abs(c + a)) > M:
            skipped += 1
            continue
        try:
            total = (omega.value((a + b, c)) * (a - b) + omega.value((b + c, a)) * (b - c)
                     + omega.value((c + a, b)) * (c - a))
        except UndefinedValue:
            skipped += 1
            continue
        checked += 1
        if total:
            return CocycleCheck(False, checked, skipped, (a, b, c), total)
    return CocycleCheck(True, checked, skipped)


def is_coboundary(omega, window=None) -> Cochain | None:
    """A 1-cochain mu with d mu = omega on the defined pairs, or None."""
    omega = _as_cochain(omega, window)
    if not is_cocycle(omega):
        return None
    M = omega.window.bound
    cols = {n: i for i, n in enumerate(range(-M, M + 1))}
    rows, rhs = [], []
    for a, b in combinations(range(-M, M + 1), 2):
        if abs(a + b) > M or (a, b) in omega.undefined:
            continue
        row = [Fraction(0)] * len(cols)
        row[cols[a + b]] = Fraction(-(a - b))
        rows.append(row)
        rhs.append(omega.value((a, b)))
    x = linalg.solve(rows, len(cols), rhs, zero=CentralScalar())
    if x is None:
        return None
    return Cochain(1, M, {(n,): x[i] for n, i in cols.items()})


@dataclass
class CocycleSolveReport:
    window: int
    solution_dimension: int
    basis: list[DiagonalCocycle]
    coboundary_dimension: int
    quotient_dimension: int
    normalized_representative: DiagonalCocycle | None
    scope: str = "within diagonal ansatz omega(L_m, L_n) = f(m) delta_{m+n,0}"

    def to_json(self) -> dict:
        return {
            "window": self.window,
            "scope": self.scope,
            "solution_dimension": self.solution_dimension,
            "coboundary_dimension": self.coboundary_dimension,
            "quotient_dimension": self.quotient_dimension,
            "basis": [b.to_json() for b in self.basis],
            "normalized_representative": (None if self.normalized_representative is None
                                          else self.normalized_representative.to_json()),
        }


def _diagonal_row(a: int, b: int, c: int, M: int) -> list[Fraction]:
    """Cyclic-sum coefficients on f(1..M) for the triple (a, b, c), f odd."""
    row = [Fraction(0)] * M
    for (x, y), z in (((a, b), c), ((b, c), a), ((c, a), b)):
        s = x + y
        if s + z != 0 or s == 0:
            continue
        # (x - y) * omega(L_s, L_z) = (x - y) f(s)
        row[abs(s) - 1] += (x - y) * (1 if s > 0 else -1)
    return row


def diagonal_cocycle_solve(window) -> CocycleSolveReport:
    M = as_window(window).bound
    if M < 4:
        raise UnderdeterminedWindow(f"window {M} < 4 leaves the solution space too large")
    rows = []
    for a, b, c in combinations(range(-M, M + 1), 3):
        if a + b + c == 0 and max(abs(a + b), abs(b + c), abs(c + a)) <= M:
            r = _diagonal_row(a, b, c, M)
            if any(r):
                rows.append(r)
    null = linalg.nullspace(rows, M)
    basis = [DiagonalCocycle({m: v[m - 1] for m in range(1, M + 1)}, M) for v in null]

    # coboundaries that are diagonal: combinations of d e_k with no off-diagonal part
    ks = list(range(-M, M + 1))
    images = [coboundary(basis_one_cochain(k, M)) for k in ks]
    pairs = [p for p in combinations(range(-M, M + 1), 2) if abs(p[0] + p[1]) <= M]
    off = [[img.value(p).constant_value() for img in images] for p in pairs if p[0] + p[1] != 0]
    combos = linalg.nullspace(off, len(ks))
    diag_vecs = []
    for cmb in combos:
        vec = [Fraction(0)] * M
        for coef, img in zip(cmb, images):
            if coef:
                for m in range(1, M + 1):
                    vec[m - 1] += coef * -img.value((-m, m)).constant_value()
        diag_vecs.append(vec)
    cob_dim = linalg.rank(diag_vecs, M) if diag_vecs else 0

    rep = None
    quotient = len(null) - cob_dim
    if quotient == 1:
        cob_red, cob_piv, _ = linalg.rref(diag_vecs, M)
        for v in null:
            if linalg.rank(cob_red + [v], M) > cob_dim:
                v = list(v)
                for row, pc in zip(cob_red, cob_piv):
                    if pc == 0 and v[0]:
                        v = [x - v[0] * r for x, r in zip(v, row)]
                if v[1]:
                    scale = Fraction(1, 2) / v[1]
                    rep = DiagonalCocycle({m: v[m - 1] * scale for m in range(1, M + 1)}, M)
                break
    return CocycleSolveReport(M, len(null), basis, cob_dim, quotient, rep)


@dataclass
class ExtensionTable:
    window: int
    omega: object
    table: dict[tuple[int, int], VirasoroElement] = field(default_factory=dict)
    jacobi: JacobiResult | None = None

    def relabel(self, mu: Cochain) -> dict[tuple[int, int], VirasoroElement]:
        """Rewrite every entry in the basis L'_n = L_n + mu(L_n) c.

        The result is the bracket table of omega + d(mu) in the primed basis.
        """
        out = {}
        for key, el in self.table.items():
            shift = CentralScalar()
            for n, a in el.witt.modes.items():
                shift = shift + a * mu.value((n,))
            out[key] = VirasoroElement(el.witt, el.central - shift)
        return out

    def to_json(self) -> dict:
        return {
            "window": self.window,
            "table": [[m, n, el.to_json()] for (m, n), el in sorted(self.table.items())],
            "jacobi": None if self.jacobi is None else {
                "ok": self.jacobi.ok, "checked": self.jacobi.checked,
                "skipped": self.jacobi.skipped,
                "counterexample": self.jacobi.counterexample},
        }


def build_central_extension(omega, window=None) -> ExtensionTable:
    """Bracket table of g + Cc for a 2-cocycle, plus its Jacobi check."""
    check = is_cocycle(omega, window)
    if not check:
        raise NotACocycle(check.counterexample)
    if isinstance(omega, DiagonalCocycle):
        M = omega.bound if window is None else min(as_window(window).bound, omega.bound)
    else:
        M = omega.window.bound if window is None else as_window(window).bound
    bracket = lambda x, y: virasoro_bracket(x, y, omega)  # noqa: E731
    table = {}
    for m in range(-M, M + 1):
        for n in range(-M, M + 1):
            if abs(m + n) <= M:
                table[(m, n)] = bracket(VirasoroElement.basis(m), VirasoroElement.basis(n))
    jac = jacobi_check(bracket, M, basis=VirasoroElement.basis)
    return ExtensionTable(M, omega, table, jac)
