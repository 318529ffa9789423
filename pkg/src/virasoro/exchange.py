"""Constraints on a self-OPE from exchanging z and w.

For a(z)a(w) ~ sum_{j<N} c^j(w)/(z-w)**(j+1), swapping the arguments and
Taylor-expanding c^j(z) about w gives, order by order in (z-w)**(-k-1),

    (1 + (-1)**k) c^k = sum_{j>k} (-1)**(j+1) d^(j-k) c^j        (divided d)

Even k determine c^k from the higher coefficients; odd k give conditions
on them.  The relations are solved symbolically by back substitution and
then cross-checked against the exact linear system on the window
coefficients of the unknown functions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Mapping

from . import linalg
from .distributions import Window, as_window
from .fields import (T, FieldPolynomial, OpeData, mode_field_bracket, tt_ope)
from .laurent import LaurentPoly, gen_binomial
from .scalars import C, CentralScalar, as_scalar


class DiffExpr:
    """sum_j sum_i a_{j,i} d^(i) c^j(w) + known(w), with d^(i) divided derivatives."""

    __slots__ = ("ops", "known")

    def __init__(self, ops: Mapping[int, Mapping[int, Fraction]] | None = None,
                 known: LaurentPoly | None = None):
        clean = {}
        for j, d in (ops or {}).items():
            dd = {i: Fraction(v) for i, v in d.items() if v}
            if dd:
                clean[j] = dd
        self.ops = clean
        self.known = known if known is not None else LaurentPoly(var="w")

    @classmethod
    def unknown(cls, j: int) -> "DiffExpr":
        return cls({j: {0: 1}})

    @classmethod
    def constant(cls, f: LaurentPoly) -> "DiffExpr":
        return cls(known=f)

    def __add__(self, other: "DiffExpr") -> "DiffExpr":
        ops = {j: dict(d) for j, d in self.ops.items()}
        for j, d in other.ops.items():
            tgt = ops.setdefault(j, {})
            for i, v in d.items():
                tgt[i] = tgt.get(i, 0) + v
        return DiffExpr(ops, self.known + other.known)

    def scale(self, s) -> "DiffExpr":
        s = Fraction(s)
        return DiffExpr({j: {i: v * s for i, v in d.items()} for j, d in self.ops.items()},
                        self.known.scale(s))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def divided_derivative(self, i: int) -> "DiffExpr":
        # d^(i) d^(i') = binom(i + i', i) d^(i + i')
        ops = {j: {i + ii: v * gen_binomial(i + ii, i) for ii, v in d.items()}
               for j, d in self.ops.items()}
        return DiffExpr(ops, self.known.derivative(i, divided=True))

    def is_zero(self) -> bool:
        return not self.ops and self.known.is_zero()

    def has_unknowns(self) -> bool:
        return bool(self.ops)

    def apply(self, assignment: Mapping[int, FieldPolynomial]) -> FieldPolynomial:
        out = FieldPolynomial.from_laurent(self.known)
        for j, d in self.ops.items():
            for i, v in d.items():
                f = assignment[j]
                for _ in range(i):
                    f = f.derivative()
                out = out + f.scale(v / factorial(i))
        return out

    def __eq__(self, other):
        if not isinstance(other, DiffExpr):
            return NotImplemented
        return self.ops == other.ops and self.known == other.known

    def __str__(self):
        parts = []
        for j in sorted(self.ops, reverse=True):
            for i in sorted(self.ops[j]):
                # show ordinary derivatives: a d^(i) = (a / i!) d^i
                v = self.ops[j][i] / factorial(i)
                dpart = "" if i == 0 else ("∂" if i == 1 else f"∂^{i}")
                coef = "" if v == 1 else ("-" if v == -1 else f"{v} ")
                parts.append(f"{coef}{dpart}c^{j}(w)")
        if self.known:
            parts.append(str(self.known))
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def to_json(self) -> dict:
        return {
            "terms": [[j, i, str(self.ops[j][i])] for j in sorted(self.ops) for i in sorted(self.ops[j])],
            "known": self.known.to_json(),
        }


@dataclass
class ExchangeSolution:
    order: int
    fixed: dict[int, LaurentPoly]
    window: int
    free: list[int] = field(default_factory=list)
    relations: dict[int, DiffExpr] = field(default_factory=dict)
    conditions: list[tuple[int, DiffExpr]] = field(default_factory=list)
    contradictions: list[tuple[int, LaurentPoly]] = field(default_factory=list)
    window_unknowns: int = 0
    window_equations: int = 0
    window_rank: int = 0
    window_consistent: bool = True
    window_solution_dimension: int | None = None
    relations_hold_on_window: bool | None = None

    @property
    def satisfiable(self) -> bool:
        return not self.contradictions and self.window_consistent

    def lines(self) -> list[str]:
        out = [f"order N = {self.order}, window = {self.window}"]
        for j in sorted(self.fixed, reverse=True):
            out.append(f"fixed: c^{j}(w) = {self.fixed[j]}")
        for j in sorted(self.relations, reverse=True):
            out.append(f"solved: c^{j}(w) = {self.relations[j]}")
        if self.free:
            out.append("free: " + ", ".join(f"c^{j}(w)" for j in self.free))
        for k, cond in self.conditions:
            out.append(f"condition at order {k}: {cond} = 0")
        for k, res in self.contradictions:
            out.append(f"contradiction at order {k}: {res} = 0")
        out.append(f"window system: {self.window_unknowns} unknowns, {self.window_equations} "
                   f"equations, rank {self.window_rank}, "
                   + ("consistent" if self.window_consistent else "inconsistent"))
        out.append("satisfiable" if self.satisfiable else "unsatisfiable")
        return out

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "window": self.window,
            "fixed": {str(j): self.fixed[j].to_json() for j in sorted(self.fixed)},
            "free": list(self.free),
            "relations": {str(j): {"display": str(self.relations[j]), **self.relations[j].to_json()}
                          for j in sorted(self.relations)},
            "conditions": [{"order": k, "display": str(c), **c.to_json()} for k, c in self.conditions],
            "contradictions": [{"order": k, "residual": r.to_json(), "display": str(r)}
                               for k, r in self.contradictions],
            "window_system": {
                "unknowns": self.window_unknowns,
                "equations": self.window_equations,
                "rank": self.window_rank,
                "consistent": self.window_consistent,
                "solution_dimension": self.window_solution_dimension,
                "relations_hold": self.relations_hold_on_window,
            },
            "satisfiable": self.satisfiable,
        }


def _as_poly(v) -> LaurentPoly:
    if isinstance(v, LaurentPoly):
        if v.var != "w":
            raise ValueError("fixed coefficients are functions of w")
        return v
    if isinstance(v, FieldPolynomial):
        return v.as_laurent()
    return LaurentPoly({0: as_scalar(v)}, "w")


def solve_exchange_constraints(N: int, fixed: Mapping[int, object] | None = None,
                               window=8) -> ExchangeSolution:
    if N < 1:
        raise ValueError("N must be positive")
    window = as_window(window)
    fixed_p = {int(j): _as_poly(v) for j, v in (fixed or {}).items()}
    if any(not 0 <= j < N for j in fixed_p):
        raise ValueError("fixed coefficient index outside 0..N-1")

    sol = ExchangeSolution(order=N, fixed=fixed_p, window=window.bound)
    expr: dict[int, DiffExpr] = {}
    for k in range(N - 1, -1, -1):
        rhs = DiffExpr()
        for j in range(k + 1, N):
            rhs = rhs + expr[j].divided_derivative(j - k).scale((-1) ** (j + 1))
        if k % 2 == 0:
            if k in fixed_p:
                expr[k] = DiffExpr.constant(fixed_p[k])
                residual = expr[k] - rhs.scale(Fraction(1, 2))
            else:
                expr[k] = rhs.scale(Fraction(1, 2))
                sol.relations[k] = expr[k]
                residual = DiffExpr()
        else:
            expr[k] = DiffExpr.constant(fixed_p[k]) if k in fixed_p else DiffExpr.unknown(k)
            if k not in fixed_p:
                sol.free.append(k)
            residual = -rhs
        if residual.is_zero():
            continue
        if residual.has_unknowns():
            sol.conditions.append((k, residual))
        else:
            sol.contradictions.append((k, residual.known))
    sol.free.sort()

    _window_system(sol, window)
    return sol


def _window_system(sol: ExchangeSolution, window: Window) -> None:
    N, M = sol.order, window.bound
    fixed = sol.fixed
    unknown_js = [j for j in range(N) if j not in fixed]
    index = {}
    for j in unknown_js:
        for e in range(-M, M + 1):
            index[(j, e)] = len(index)
    rows, rhs, eqs = [], [], []
    for k in range(N):
        for E in range(-M, M - (N - 1 - k) + 1):
            row = [Fraction(0)] * len(index)
            const = CentralScalar()
            # (1 + (-1)^k) [c^k]_E - sum_{j>k} (-1)^(j+1) binom(E+j-k, j-k) [c^j]_{E+j-k}
            contribs = [(k, E, Fraction(1 + (-1) ** k))]
            for j in range(k + 1, N):
                contribs.append((j, E + j - k, -(-1) ** (j + 1) * gen_binomial(E + j - k, j - k)))
            for j, e, a in contribs:
                if not a:
                    continue
                if j in fixed:
                    const = const + fixed[j].coefficient(e) * a
                else:
                    row[index[(j, e)]] += a
            if not any(row) and not const:
                continue
            rows.append(row)
            rhs.append(-const)
            eqs.append((k, E))
    sol.window_unknowns = len(index)
    sol.window_equations = len(rows)
    red, pivots, b = linalg.rref(rows, len(index), rhs)
    sol.window_rank = len(pivots)
    sol.window_consistent = not any(b[i] for i in range(len(pivots), len(b)))
    if not sol.window_consistent:
        sol.window_solution_dimension = None
        sol.relations_hold_on_window = None
        return
    sol.window_solution_dimension = len(index) - len(pivots)
    particular = [CentralScalar()] * len(index)
    for i, pc in enumerate(pivots):
        particular[pc] = b[i]
    null = linalg.nullspace(red, len(index))
    candidates = [(particular, True)] + [([as_scalar(x) for x in v], False) for v in null]
    # a relation at order k is derived from equations with E <= M - (N-1-k)
    checks = [(k, DiffExpr.unknown(k) - rel) for k, rel in sol.relations.items()]
    checks += sol.conditions
    ok = True
    for vec, affine in candidates:
        for k, diff in checks:
            if not affine:
                diff = DiffExpr(diff.ops)
            for E in range(-M, M - (N - 1 - k) + 1):
                val = diff.known.coefficient(E) if affine else CentralScalar()
                for j, d in diff.ops.items():
                    for i, a in d.items():
                        val = val + vec[index[(j, E + i)]] * (a * gen_binomial(E + i, i))
                if val:
                    ok = False
    sol.relations_hold_on_window = ok


# --- identification of c^1 with T -------------------------------------------------

_WEIGHT_TWO_ANSATZ = [
    FieldPolynomial.of(T),
    FieldPolynomial.of(T, 1, 1, 1),
    FieldPolynomial.of(T, 1, 2, 2),
    FieldPolynomial.const(1, -2),
    FieldPolynomial.const(1),
]


def _bracket_relations(ope: OpeData):
    """The two mode/field relations used to pin down T, as (lhs, rhs) pairs."""
    t = FieldPolynomial.of(T)
    return [
        (mode_field_bracket(ope, -1), t.derivative()),
        (mode_field_bracket(ope, 0), t.derivative().times_w(1) + t.scale(2)),
    ]


def verify_t_identification(ope: OpeData) -> bool:
    """Check [c, T] = 0, [L_-1, T] = dT and [L_0, T] = (w d + 2) T against the OPE.

    The central charge is a scalar of the coefficient ring, so [c, T(z)] = 0
    holds identically; the other two are computed from the OPE.
    """
    if ope.left != T or ope.right != T:
        return False
    return all(lhs == rhs for lhs, rhs in _bracket_relations(ope))


def t_identification_report(ope: OpeData) -> list[dict]:
    """Both computed relations with their two sides, for diagnostics."""
    names = ["[L_-1, T(w)] = dT(w)", "[L_0, T(w)] = (w d + 2) T(w)"]
    return [{"relation": nm, "lhs": str(lhs), "rhs": str(rhs), "holds": lhs == rhs}
            for nm, (lhs, rhs) in zip(names, _bracket_relations(ope))]


def identify_c1(sol: ExchangeSolution) -> FieldPolynomial | None:
    """Solve the bracket relations for the free c^1 over a weight-two ansatz.

    Returns the field c^1 should be (2T for the standard normalization) or
    None when no combination satisfies the relations.
    """
    if sol.free != [1] or not sol.satisfiable:
        return None
    fixed_fields = {j: FieldPolynomial.from_laurent(p) for j, p in sol.fixed.items()}

    def build(c1: FieldPolynomial) -> OpeData:
        assign = dict(fixed_fields)
        assign[1] = c1
        sing = dict(assign)
        for j, rel in sol.relations.items():
            sing[j] = rel.apply(assign)
        return OpeData(T, T, sing, strict=False)

    # relations are affine in the ansatz coefficients
    base = [lhs for lhs, _ in _bracket_relations(build(FieldPolynomial()))]
    targets = [rhs for _, rhs in _bracket_relations(build(FieldPolynomial()))]
    columns = []
    for b in _WEIGHT_TWO_ANSATZ:
        lhs = [l for l, _ in _bracket_relations(build(b))]
        columns.append([l - b0 for l, b0 in zip(lhs, base)])
    keys = set()
    for col in columns:
        for fp in col:
            keys |= {(t.symbol, t.derivative_order, t.w_exponent) for t in fp.terms}
    for i in range(len(targets)):
        for fp in (targets[i], base[i]):
            keys |= {(t.symbol, t.derivative_order, t.w_exponent) for t in fp.terms}
    keys = sorted(keys, key=lambda k: (k[0].name, k[1], k[2]))

    def coeff(fp: FieldPolynomial, key):
        for t in fp.terms:
            if (t.symbol, t.derivative_order, t.w_exponent) == key:
                return t.scalar
        return CentralScalar()

    rows, rhs = [], []
    for r in range(len(targets)):
        for key in keys:
            row = []
            for col in columns:
                v = coeff(col[r], key)
                if not v.is_constant():
                    return None
                row.append(v.constant_value())
            rows.append(row)
            rhs.append(coeff(targets[r], key) - coeff(base[r], key))
    x = linalg.solve(rows, len(columns), rhs, zero=CentralScalar())
    if x is None:
        return None
    out = FieldPolynomial()
    for coef, b in zip(x, _WEIGHT_TWO_ANSATZ):
        out = out + b.scale(coef)
    return out


@dataclass
class TTDerivation:
    solution: ExchangeSolution
    c1: FieldPolynomial | None
    ope: OpeData | None
    identified: bool


def derive_tt(window=8, central=C / 2) -> TTDerivation:
    """Exchange constraints with c^3 fixed, then pin c^1 via the bracket relations."""
    sol = solve_exchange_constraints(4, {3: central}, window)
    c1 = identify_c1(sol)
    if c1 is None:
        return TTDerivation(sol, None, None, False)
    ope = OpeData(T, T, {3: FieldPolynomial.const(central), 1: c1,
                         **{j: rel.apply({1: c1, 3: FieldPolynomial.const(central)})
                            for j, rel in sol.relations.items()}})
    return TTDerivation(sol, c1, ope, verify_t_identification(ope))


__all__ = [
    "DiffExpr", "ExchangeSolution", "TTDerivation", "derive_tt", "identify_c1",
    "solve_exchange_constraints", "t_identification_report", "tt_ope",
    "verify_t_identification",
]
