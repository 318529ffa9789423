"""Command line driver: ``virasoro verify | ope derive-tt | cocycle solve | bracket M N``.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error, 3 window
exhausted (and nothing failed).
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from . import __version__
from .cohomology import diagonal_cocycle_solve
from .errors import UnderdeterminedWindow, WindowExhausted
from .exchange import (derive_tt, solve_exchange_constraints, t_identification_report,
                       verify_t_identification)
from .fields import T, residue_pairing_bracket, tt_ope, weight_bound_check
from .lie import VirasoroElement, WittElement, virasoro_bracket, virasoro_cocycle, witt_bracket
from .serialize import FormatError, canonical_dumps, load_ope, parse_expression
from .suites import (EXHAUSTED, FAIL, PASS, REGISTRY, Check, SuiteResult, check,
                     default_suites, mode_to_virasoro, run_suite)

SCHEMA_VERSION = "1.0"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_WINDOW = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    window: int = 8
    suites: list[str] = field(default_factory=list)
    format: str = "text"
    seed: int = 0
    timing: bool = False

    def echo(self) -> dict:
        return {"window": self.window, "suites": list(self.suites), "seed": self.seed}


@dataclass
class Report:
    command: str
    config: RunConfig
    suites: list[SuiteResult] = field(default_factory=list)
    result: dict | None = None
    text: list[str] = field(default_factory=list)

    def counts(self) -> dict:
        checks = [c for s in self.suites for c in s.checks]
        return {
            "passed": sum(c.status == PASS for c in checks),
            "failed": sum(c.status == FAIL for c in checks),
            "window_exhausted": sum(c.status == EXHAUSTED for c in checks),
        }

    @property
    def status(self) -> str:
        n = self.counts()
        if n["failed"]:
            return FAIL
        if n["window_exhausted"]:
            return EXHAUSTED
        return PASS

    @property
    def exit_code(self) -> int:
        return {PASS: EXIT_OK, FAIL: EXIT_FAIL, EXHAUSTED: EXIT_WINDOW}[self.status]

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            "command": self.command,
            "config": self.config.echo(),
            "suites": [s.to_json() for s in self.suites],
            "result": self.result,
            "summary": {**self.counts(), "status": self.status},
        }

    def render_text(self) -> str:
        lines = list(self.text)
        for s in self.suites:
            lines.append(f"[{s.status.upper()}] {s.name}")
            for c in s.checks:
                lines.append(f"  {c.status:>16}  {c.name}")
                if c.status == FAIL:
                    lines.append(f"  {'':>16}  counterexample: {c.counterexample}")
                elif c.status == EXHAUSTED and c.detail:
                    lines.append(f"  {'':>16}  {c.detail}")
        n = self.counts()
        lines.append(f"summary: {n['passed']} passed, {n['failed']} failed, "
                     f"{n['window_exhausted']} window-exhausted -> {self.status}")
        return "\n".join(lines) + "\n"

    def render(self) -> str:
        return canonical_dumps(self.to_json()) if self.config.format == "json" else self.render_text()


def _single(name: str, checks: list[Check], timing: float | None = None) -> SuiteResult:
    status = FAIL if any(c.status == FAIL for c in checks) else (
        EXHAUSTED if any(c.status == EXHAUSTED for c in checks) else PASS)
    return SuiteResult(name, status, 0, checks, timing)


def cmd_verify(config: RunConfig) -> Report:
    names = config.suites or default_suites()
    unknown = [n for n in names if n not in REGISTRY]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; "
                         f"available: {', '.join(REGISTRY)}")
    report = Report("verify", config)
    for name in names:
        report.suites.append(run_suite(name, config.window, config.seed, config.timing))
    return report


def _derive_default(config: RunConfig) -> Report:
    report = Report("ope derive-tt", config)
    d = derive_tt(config.window)
    report.text += d.solution.lines()
    checks = [
        check("exchange constraints satisfiable", d.solution.satisfiable),
        check("c^1 identified via bracket relations", d.c1 is not None),
        check("verify_t_identification", d.identified),
    ]
    if d.ope is not None:
        report.text += [f"c^1(w) = {d.c1}", f"T(z)T(w) ~ {d.ope.display()}"]
        checks.append(check("weight bound", weight_bound_check(d.ope)))
    report.suites.append(_single("derive-tt", checks))
    report.result = {
        "constraints": d.solution.to_json(),
        "c1": None if d.c1 is None else str(d.c1),
        "ope": None if d.ope is None else d.ope.display(),
    }
    return report


def _derive_monomial(config: RunConfig, top: str | None, order: int) -> Report:
    if order < 1:
        raise UsageError("--order must be positive")
    fixed = {}
    if top is not None:
        try:
            fixed[order - 1] = parse_expression(top)
        except FormatError as exc:
            raise UsageError(str(exc)) from None
    sol = solve_exchange_constraints(order, fixed, config.window)
    report = Report("ope derive-tt", config, result={"constraints": sol.to_json()})
    report.text += sol.lines()
    contra = None if sol.satisfiable else {
        "contradictions": [{"order": k, "residual": str(r)} for k, r in sol.contradictions],
        "window_consistent": sol.window_consistent}
    report.suites.append(_single(f"exchange-N{order}", [
        check("constraint system consistent", sol.satisfiable, contra)]))
    return report


def _derive_check_fixture(config: RunConfig, path: str | None) -> Report:
    report = Report("ope derive-tt", config)
    derived = derive_tt(config.window)
    if path is None:
        ope = derived.ope
        source = "derived"
    else:
        try:
            ope = load_ope(path, strict=False)
        except (FormatError, OSError) as exc:
            raise UsageError(str(exc)) from None
        source = path
    expected = derived.ope if derived.ope is not None else tt_ope()
    checks = [
        check("fixture matches the derived OPE", ope is not None and ope.singular == expected.singular
              and ope.left == T and ope.right == T,
              {"fixture": None if ope is None else ope.display(), "expected": expected.display()}),
        check("weights consistent", ope is not None and not ope.weight_violations(),
              {"violations": None if ope is None else [list(v) for v in ope.weight_violations()]}),
        check("verify_t_identification", ope is not None and verify_t_identification(ope),
              {"relations": None if ope is None or (ope.left, ope.right) != (T, T)
               else t_identification_report(ope)}),
    ]
    report.suites.append(_single("check-ope", checks))
    report.result = {"source": source, "ope": None if ope is None else ope.display()}
    return report


def cmd_ope_derive_tt(config: RunConfig, monomial_top: str | None = None,
                      order: int | None = None, check_only: bool = False,
                      ope_file: str | None = None) -> Report:
    if check_only or ope_file is not None:
        if monomial_top is not None or order is not None:
            raise UsageError("--check-only/--ope cannot be combined with --monomial-top/--order")
        return _derive_check_fixture(config, ope_file)
    if monomial_top is not None or order is not None:
        return _derive_monomial(config, monomial_top, 4 if order is None else order)
    return _derive_default(config)


def cmd_cocycle_solve(config: RunConfig) -> Report:
    r = diagonal_cocycle_solve(config.window)
    rep = r.normalized_representative
    report = Report("cocycle solve", config, result=r.to_json())
    report.suites.append(_single("cocycle-solve", [
        check("quotient dimension 1", r.quotient_dimension == 1,
              {"dimensions": [r.solution_dimension, r.coboundary_dimension, r.quotient_dimension]}),
        check("representative f(m) = m(m^2-1)/12", rep == virasoro_cocycle(config.window),
              {"representative": None if rep is None else rep.to_json()}),
    ]))
    report.text += [
        f"window M = {r.window} ({r.scope})",
        f"cocycle space dimension: {r.solution_dimension}",
        f"coboundary subspace dimension: {r.coboundary_dimension}",
        f"quotient dimension: {r.quotient_dimension}",
    ]
    if rep is not None:
        vals = ", ".join(f"f({m}) = {v}" for m, v in rep.values().items())
        report.text.append(f"normalized representative: {vals}")
    return report


def cmd_bracket(m: int, n: int, config: RunConfig) -> Report:
    M = config.window
    if max(abs(m), abs(n), abs(m + n)) > M:
        raise UsageError(f"indices ({m}, {n}) need |m|, |n|, |m+n| <= window {M}")
    witt = witt_bracket(WittElement.basis(m), WittElement.basis(n))
    vir = virasoro_bracket(VirasoroElement.basis(m), VirasoroElement.basis(n), virasoro_cocycle(M))
    ope_el = residue_pairing_bracket(tt_ope(), m, n)
    ope = mode_to_virasoro(ope_el)
    report = Report("bracket", config, result={
        "m": m, "n": n, "witt": str(witt), "virasoro": vir.to_json(),
        "virasoro_display": str(vir), "residue_pairing": str(ope_el)})
    report.text += [
        f"[L_{m}, L_{n}]",
        f"  witt:            {witt}",
        f"  virasoro:        {vir}",
        f"  residue pairing: {ope_el}",
    ]
    report.suites.append(_single("bracket", [
        check("virasoro = residue pairing", vir == ope, {"virasoro": str(vir), "ope": str(ope_el)}),
        check("witt part agrees", vir.witt == witt, {"witt": str(witt), "virasoro": str(vir)}),
    ]))
    return report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", type=int, default=8, metavar="M",
                        help="mode/exponent window bound (default 8)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized cases")
    common.add_argument("--timing", action="store_true",
                        help="record wall-clock timings (makes reports non-reproducible)")

    parser = argparse.ArgumentParser(prog="virasoro", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", action="append", default=[], metavar="NAME",
                   help=f"suite to run (repeatable): {', '.join(REGISTRY)}")

    ope = sub.add_parser("ope", help="operator product expansions")
    ope_sub = ope.add_subparsers(dest="ope_command", required=True)
    p = ope_sub.add_parser("derive-tt", parents=[common], help="derive the TT OPE")
    p.add_argument("--monomial-top", metavar="EXPR", help="top coefficient c^(N-1)(w), e.g. 'w'")
    p.add_argument("--order", type=int, metavar="N", help="pole order N")
    p.add_argument("--check-only", action="store_true", help="only check an OPE against the derivation")
    p.add_argument("--ope", metavar="FILE", help="OPE declaration (JSON) to check")

    coc = sub.add_parser("cocycle", help="2-cocycles of the Witt algebra")
    coc_sub = coc.add_subparsers(dest="cocycle_command", required=True)
    coc_sub.add_parser("solve", parents=[common], help="solve for diagonal 2-cocycles")

    p = sub.add_parser("bracket", parents=[common], help="compute [L_m, L_n] three ways")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    return parser


def run(argv: list[str] | None = None) -> tuple[int, str, str]:
    """Run the CLI and return (exit code, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), "", ""
    config = RunConfig(window=args.window, suites=list(getattr(args, "suite", []) or []),
                       format=args.format, seed=args.seed, timing=args.timing)
    try:
        if config.window < 1:
            raise UsageError("--window must be positive")
        if args.command == "verify":
            report = cmd_verify(config)
        elif args.command == "ope":
            report = cmd_ope_derive_tt(config, args.monomial_top, args.order,
                                       args.check_only, args.ope)
        elif args.command == "cocycle":
            report = cmd_cocycle_solve(config)
        else:
            report = cmd_bracket(args.m, args.n, config)
    except UsageError as exc:
        return EXIT_USAGE, "", f"virasoro: error: {exc}\n"
    except UnderdeterminedWindow as exc:
        return EXIT_WINDOW, "", f"virasoro: under-determined window: {exc}\n"
    except WindowExhausted as exc:
        return EXIT_WINDOW, "", f"virasoro: window exhausted: {exc}\n"
    return report.exit_code, report.render(), ""


def main(argv: list[str] | None = None) -> int:
    code, out, err = run(argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
