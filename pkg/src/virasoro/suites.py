"""Verification suites run by ``virasoro verify``.

Each suite is a function ``(window, rng) -> list[Check]`` registered with
the smallest window on which its checks are meaningful.  Below that window
the suite is reported as window-exhausted instead of being run.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .cohomology import (Cochain, build_central_extension, coboundary,
                         diagonal_cocycle_solve, is_coboundary, is_cocycle, wedge)
from .distributions import (BiSeries, DeltaExpansion, delta_derivative, expand_izw,
                            coefficient_formula, mul_zw_power, project_pi, realize, res_z_field)
from .errors import WindowExhausted
from .exchange import derive_tt
from .fields import (FieldSymbol, T, mode_bracket_from_ope, residue_pairing_bracket, tt_ope,
                     weight_bound_check)
from .laurent import LaurentPoly
from .lie import (DiagonalCocycle, VirasoroElement, WittElement, jacobi_check,
                  mode_vf_iso_check, virasoro_bracket, virasoro_cocycle, witt_bracket)
from .scalars import CentralScalar
from .words import field_series, split_series, verify_normal_order_identity

PASS, FAIL, EXHAUSTED = "pass", "fail", "window-exhausted"


@dataclass
class Check:
    name: str
    status: str
    counterexample: object = None
    detail: str = ""
    timing: float | None = None

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "counterexample": self.counterexample,
                "detail": self.detail, "timing": self.timing}


def check(name: str, ok: bool, counterexample=None, detail: str = "") -> Check:
    if ok:
        return Check(name, PASS, None, detail)
    if counterexample is None:
        counterexample = {"detail": detail or "no structured counterexample"}
    return Check(name, FAIL, counterexample, detail)


@dataclass
class Suite:
    name: str
    min_window: int
    run: Callable[[int, random.Random], list[Check]]
    default: bool = True
    description: str = ""


@dataclass
class SuiteResult:
    name: str
    status: str
    min_window: int
    checks: list[Check] = field(default_factory=list)
    timing: float | None = None

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "min_window": self.min_window,
                "checks": [c.to_json() for c in self.checks], "timing": self.timing}


REGISTRY: dict[str, Suite] = {}


def suite(name: str, min_window: int, default: bool = True):
    def deco(fn):
        REGISTRY[name] = Suite(name, min_window, fn, default, (fn.__doc__ or "").strip())
        return fn
    return deco


def default_suites() -> list[str]:
    return [s.name for s in REGISTRY.values() if s.default]


def run_suite(name: str, window: int, seed: int = 0, timing: bool = False) -> SuiteResult:
    s = REGISTRY[name]
    if window < s.min_window:
        return SuiteResult(name, EXHAUSTED, s.min_window, [Check(
            name, EXHAUSTED, None, f"needs window >= {s.min_window}, have {window}")])
    rng = random.Random(f"{seed}:{name}")
    start = time.perf_counter()
    try:
        checks = s.run(window, rng)
    except WindowExhausted as exc:
        return SuiteResult(name, EXHAUSTED, s.min_window, [Check(name, EXHAUSTED, None, str(exc))])
    elapsed = time.perf_counter() - start
    status = FAIL if any(c.status == FAIL for c in checks) else PASS
    return SuiteResult(name, status, s.min_window, checks, round(elapsed, 4) if timing else None)


# random generators shared by several suites

def random_laurent(rng: random.Random, max_exp: int = 3, terms: int = 3, var: str = "w",
                   allow_c: bool = False) -> LaurentPoly:
    coeffs = {}
    for _ in range(rng.randint(1, terms)):
        e = rng.randint(-max_exp, max_exp)
        v = CentralScalar({0: rng.randint(-5, 5), 1: rng.randint(-2, 2) if allow_c else 0})
        coeffs[e] = coeffs[e] + v if e in coeffs else v
    return LaurentPoly(coeffs, var)


def random_delta_expansion(rng: random.Random, max_j: int = 3, max_exp: int = 3) -> DeltaExpansion:
    return DeltaExpansion({j: random_laurent(rng, max_exp) for j in range(max_j + 1)
                           if rng.random() < 0.7})


def random_holomorphic(rng: random.Random, window: int, max_exp: int = 3) -> BiSeries:
    coeffs = {}
    for _ in range(rng.randint(0, 4)):
        coeffs[(rng.randint(0, max_exp), rng.randint(-max_exp, max_exp))] = rng.randint(-5, 5)
    return BiSeries(coeffs, window)


@suite("delta", 6)
def _delta(M: int, rng) -> list[Check]:
    """Delta-function identities: residue, symmetry, derivatives, (z-w) reindexing."""
    out = []
    bad = None
    for f in [LaurentPoly.monomial(e, 1, "z") for e in range(-3, 4)] + [random_laurent(rng, 3, 3, "z")
                                                                    for _ in range(5)]:
        try:
            res_z_field(f, M)
        except AssertionError as exc:
            bad = {"f": str(f), "detail": str(exc)}
            break
    out.append(check("res_z f(z)delta(z-w) = f(w)", bad is None, bad))

    d0 = delta_derivative(0, M)
    out.append(check("delta(z-w) symmetric under z<->w", d0.swap().agrees(d0)))
    out.append(check("d_z delta = -d_w delta", d0.dz().agrees(d0.dw().scale(-1))))
    izw = expand_izw(0, "zw", M) - expand_izw(0, "wz", M)
    out.append(check("i_zw - i_wz = delta", izw.agrees(d0)))

    bad4 = bad5 = None
    for j in range(5):
        dj = delta_derivative(j, M)
        if j + 1 <= 4 and not delta_derivative(j + 1, M).mul_zw(1).agrees(dj):
            bad4 = bad4 or {"j": j}
        if j + 1 < M and not dj.mul_zw(j + 1).is_zero():
            bad5 = bad5 or {"j": j}
        dexp = DeltaExpansion({j + 1: LaurentPoly.one("w")})
        if mul_zw_power(dexp, 1) != DeltaExpansion({j: LaurentPoly.one("w")}):
            bad4 = bad4 or {"j": j, "level": "DeltaExpansion"}
        if mul_zw_power(DeltaExpansion({j: LaurentPoly.one("w")}), j + 1):
            bad5 = bad5 or {"j": j, "level": "DeltaExpansion"}
    out.append(check("(z-w) d^(j+1) delta = d^(j) delta, j <= 3", bad4 is None, bad4))
    out.append(check("(z-w)^(j+1) d^(j) delta = 0, j <= 4", bad5 is None, bad5))
    return out


@suite("projector", 7)
def _projector(M: int, rng) -> list[Check]:
    """pi is a projector with kernel the series holomorphic in z; coefficient formula."""
    idem = kern = rt = coef = None
    for trial in range(100):
        d = random_delta_expansion(rng)
        a = realize(d, M) + random_holomorphic(rng, M)
        pa = project_pi(a, 3)
        if pa != d and rt is None:
            rt = {"trial": trial, "expected": d.to_json(), "got": pa.to_json()}
        if project_pi(realize(pa, M), 3) != pa and idem is None:
            idem = {"trial": trial, "pi(a)": pa.to_json()}
        rest = a - realize(pa, M)
        if rest.has_negative_z() and kern is None:
            kern = {"trial": trial, "residual_support": rest.support()[:5]}
        if project_pi(random_holomorphic(rng, M), 3) and kern is None:
            kern = {"trial": trial, "detail": "pi of a holomorphic series is nonzero"}
    out = [
        check("pi(realize(d) + h) = d", rt is None, rt),
        check("pi o pi = pi", idem is None, idem),
        check("ker pi = series holomorphic in z", kern is None, kern),
    ]
    for trial in range(100):
        d = random_delta_expansion(rng)
        a = realize(d, M)
        for m in range(-M - 1, M):
            for n in range(-M - 1, M):
                if a.coefficient(-m - 1, -n - 1) != coefficient_formula(d, m, n):
                    coef = {"trial": trial, "m": m, "n": n, "d": d.to_json()}
                    break
            if coef:
                break
        if coef:
            break
    out.append(check("a_{m,n} = sum_j binom(m,j) c^j_{m+n-j}", coef is None, coef))
    return out


@suite("normal-order", 1)
def _normal_order(M: int, rng) -> list[Check]:
    """Normal-ordering rearrangements in the free word algebra."""
    a, b = FieldSymbol("a", 1), FieldSymbol("b", 1)
    out = []
    for x, y in ((T, T), (a, b), (b, a)):
        out.append(check(f"a(z)b(w) and b(w)a(z) via :{x}{y}:",
                         verify_normal_order_identity(x, y, M), {"pair": [x.name, y.name]}))
    s = field_series(a, M)
    neg, pos = split_series(s)
    dneg, dpos = split_series(s.dz())
    out.append(check("(d a)_+- = d(a_+-)", dneg == neg.dz() and dpos == pos.dz()))
    return out


@suite("witt-jacobi", 1)
def _witt_jacobi(M: int, rng) -> list[Check]:
    """Jacobi identity for [L_m, L_n] = (m-n) L_{m+n}."""
    r = jacobi_check(witt_bracket, M)
    anti = next(((m, n) for m in range(-M, M + 1) for n in range(-M, M + 1)
                 if witt_bracket(WittElement.basis(m), WittElement.basis(n))
                 != -witt_bracket(WittElement.basis(n), WittElement.basis(m))), None)
    return [
        check("antisymmetry", anti is None, {"pair": anti}),
        check(f"Jacobi ({r.checked} triples, {r.skipped} skipped)", r.ok,
              {"triple": r.counterexample, "residual": r.residual}),
    ]


@suite("vf-iso", 1)
def _vf_iso(M: int, rng) -> list[Check]:
    """L_n = -z^(n+1) d/dz reproduces the mode bracket."""
    return [
        check("vector fields -z^(n+1) d/dz", mode_vf_iso_check(M)),
        check("unnormalized z^(n+1) d/dz is not a match", not mode_vf_iso_check(M, sign=1)),
    ]


@suite("virasoro-jacobi", 2)
def _virasoro_jacobi(M: int, rng) -> list[Check]:
    """Jacobi identity for the extension by m(m^2-1)/12."""
    omega = virasoro_cocycle(M)
    r = jacobi_check(lambda x, y: virasoro_bracket(x, y, omega), M, basis=VirasoroElement.basis)
    return [check(f"Jacobi with central terms ({r.checked} triples)", r.ok,
                  {"triple": r.counterexample, "residual": r.residual})]


@suite("coboundary", 4)
def _coboundary(M: int, rng) -> list[Check]:
    """d o d = 0, the Leibniz rule, B^2 in Z^2 and coboundary witnesses."""
    sq = leib = closed = None
    for trial in range(50):
        for deg in (0, 1):
            x = Cochain.random(deg, M, rng)
            if not coboundary(coboundary(x)).is_zero() and sq is None:
                sq = {"trial": trial, "degree": deg}
        if trial < 10:
            mu = Cochain.random(1, M, rng)
            chk = is_cocycle(coboundary(mu))
            if not chk and closed is None:
                closed = {"trial": trial, "triple": chk.counterexample}
    for p, q in ((0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 0)):
        for trial in range(2):
            eta, theta = Cochain.random(p, M, rng), Cochain.random(q, M, rng)
            lhs = coboundary(wedge(eta, theta))
            rhs = wedge(coboundary(eta), theta) + wedge(eta, coboundary(theta)).scale((-1) ** p)
            if not lhs.agrees(rhs) and leib is None:
                leib = {"p": p, "q": q, "trial": trial}
    f1 = DiagonalCocycle.from_function(lambda m: m, M)
    f3 = DiagonalCocycle.from_function(lambda m: m ** 3, M)
    witness = is_coboundary(f1)
    ok_witness = witness is not None and coboundary(witness).agrees(Cochain.from_diagonal(f1, M))
    return [
        check("d o d = 0 (degrees 0->2, 1->3)", sq is None, sq),
        check("Leibniz rule, p + q <= 2", leib is None, leib),
        check("every d(mu) is a cocycle", closed is None, closed),
        check("f(m) = m is a coboundary", ok_witness,
              None if witness is None else {"mu": witness.to_json()}),
        check("f(m) = m^3 is not a coboundary", is_coboundary(f3) is None),
    ]


def mode_to_virasoro(el) -> VirasoroElement:
    """Read a ModeElement of the TT OPE as X + alpha c (identity coefficient alpha*c)."""
    central = el.central
    if any(d != 1 for d in central.terms):
        raise ValueError(f"central part {central} is not a multiple of c")
    witt = WittElement({n: v for (name, n), v in el.modes.items()})
    if any(name != "T" for name, _ in el.modes):
        raise ValueError("only T modes map to the Witt algebra")
    return VirasoroElement(witt, central.coefficient(1))


@suite("cross-oracle", 4)
def _cross_oracle(M: int, rng) -> list[Check]:
    """OPE routes, the central extension table and the basis change agree."""
    ope = tt_ope()
    omega = virasoro_cocycle(M)
    ext = build_central_extension(omega, M)
    routes = table = None
    for m in range(-M, M + 1):
        for n in range(-M, M + 1):
            a = mode_bracket_from_ope(ope, m, n)
            b = residue_pairing_bracket(ope, m, n)
            if a != b and routes is None:
                routes = {"m": m, "n": n, "delta_route": str(a), "residue_route": str(b)}
            if (m, n) in ext.table and mode_to_virasoro(a) != ext.table[(m, n)] and table is None:
                table = {"m": m, "n": n, "ope": str(a), "extension": str(ext.table[(m, n)])}
    mu = Cochain.random(1, M, rng)
    shifted = build_central_extension(Cochain.from_diagonal(omega, M) + coboundary(mu))
    relabeled = ext.relabel(mu)
    bc = next(({"m": k[0], "n": k[1]} for k in shifted.table
               if relabeled[k] != shifted.table[k]), None)
    anti = next(({"m": m, "n": n} for m in range(-M, M + 1) for n in range(-M, M + 1)
                 if residue_pairing_bracket(ope, m, n) != -residue_pairing_bracket(ope, n, m)), None)
    return [
        check("delta route = residue route", routes is None, routes),
        check("extension table = OPE bracket", table is None, table),
        check("omega + d(mu) table = basis change of omega table", bc is None, bc),
        check("OPE bracket antisymmetric", anti is None, anti),
        check("extension passes Jacobi", ext.jacobi.ok, {"triple": ext.jacobi.counterexample}),
    ]


@suite("h2", 4)
def _h2(M: int, rng) -> list[Check]:
    """Diagonal cocycles modulo coboundaries."""
    r = diagonal_cocycle_solve(M)
    dims = (r.solution_dimension, r.coboundary_dimension, r.quotient_dimension)
    rep = r.normalized_representative
    return [
        check("dimensions (cocycles, coboundaries, quotient) = (2, 1, 1)", dims == (2, 1, 1),
              {"dimensions": list(dims)}),
        check("representative f(m) = m(m^2-1)/12", rep == virasoro_cocycle(M),
              {"representative": None if rep is None else rep.to_json()}),
    ]


@suite("tt-ope", 4)
def _tt_ope(M: int, rng) -> list[Check]:
    """Exchange constraints at N = 4 and the identification c^1 = 2T."""
    d = derive_tt(M)
    rel = {j: str(e) for j, e in d.solution.relations.items()}
    return [
        check("c^2 = 0, c^0 = 1/2 dc^1, c^1 free",
              rel == {2: "0", 0: "1/2 ∂c^1(w)"} and d.solution.free == [1]
              and d.solution.satisfiable, {"relations": rel, "free": d.solution.free}),
        check("c^1 = 2T satisfies the bracket relations", d.identified,
              {"c1": None if d.c1 is None else str(d.c1)}),
        check("weight bound", d.ope is not None and weight_bound_check(d.ope)),
        check("display", d.ope is not None and d.ope.display() == tt_ope().display(),
              {"display": None if d.ope is None else d.ope.display()}),
    ]


@suite("corrupted-cocycle", 3, default=False)
def _corrupted(M: int, rng) -> list[Check]:
    """Deliberately broken: f(m) = m^5 must be rejected (this suite is expected to fail)."""
    bad = DiagonalCocycle.from_function(lambda m: m ** 5, M)
    chk = is_cocycle(bad)
    return [check("f(m) = m^5 is a cocycle", chk.ok,
                  {"triple": chk.counterexample,
                   "residual": None if chk.residual is None else str(chk.residual)})]


__all__ = ["Check", "Suite", "SuiteResult", "REGISTRY", "default_suites", "run_suite",
           "PASS", "FAIL", "EXHAUSTED", "mode_to_virasoro"]
