"""Command-line driver: ``cidade COMMAND PROBLEM [options]``.

Exit codes: 0 success or consistent verdict, 2 counterexample-candidate,
1 any error (including bad arguments).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict, dataclass

from .complexes import DEFAULT_DEGREE_BOUND, minimize, resolve
from .eisenbud import check_cone, ci_operators, cone_resolution, lift_complex
from .errors import CidadeError, ParseError
from .groebner import DEFAULT_DEGREE_CAP
from .problem import ProblemFile, parse_problem
from .report import betti_diagram, dump_json, format_matrix, write_json
from .vanishing import VERSION, dade_check, ext, tor

COMMANDS = ("resolve", "tor", "ext", "ci-ops", "cone", "dade-check")

EXIT_OK, EXIT_ERROR, EXIT_COUNTEREXAMPLE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    n_max: int = 10
    degree_bound: int = DEFAULT_DEGREE_BOUND
    window: int = 4
    field_ext: int = 1
    strategy: str = "linear"
    seed: int = 0
    degree_cap: int = DEFAULT_DEGREE_CAP
    functor: str = "tor"

    def __post_init__(self):
        for name in ("n_max", "degree_bound", "window", "field_ext", "degree_cap"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.strategy not in ("linear", "perturbed"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.functor not in ("tor", "ext"):
            raise ValueError(f"unknown functor {self.functor!r}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class CommandResult:
    report: dict
    text: str
    exit_code: int = EXIT_OK


def _rows_from_betti(table: dict) -> list:
    return [table[n] for n in sorted(table)]


def _pick_module(problem: ProblemFile, name: str | None):
    if name is not None:
        if name not in problem.modules:
            raise ParseError(f"unknown module {name!r}")
        return problem.modules[name]
    if problem.pairs:
        return problem.modules[problem.pairs[0][0]]
    if not problem.modules:
        raise ParseError("the problem declares no modules")
    return next(iter(problem.modules.values()))


def _header(cmd: str, problem: ProblemFile, config: RunConfig) -> dict:
    return {"engine_version": VERSION, "command": cmd, "ring": problem.tower.describe(),
            "config": config.to_dict()}


def cmd_resolve(problem, config, module=None, pair=None) -> CommandResult:
    M = _pick_module(problem, module)
    F = resolve(M, problem.tower.R, config.n_max, config.degree_cap)
    rows = _rows_from_betti(F.betti_table())
    report = {**_header("resolve", problem, config), "module": M.describe(),
              "betti": {"totals": F.ranks(), "by_degree": [{str(d): v for d, v in sorted(r.items())} for r in rows]},
              "complete": F.complete}
    text = f"minimal resolution of {M.name} over R, n <= {config.n_max}\n" + betti_diagram(rows)
    return CommandResult(report, text)


def _functor(kind):
    def run(problem, config, module=None, pair=None) -> CommandResult:
        M, N = problem.pair(pair)
        fn = tor if kind == "tor" else ext
        table = fn(M, N, problem.tower.R, config.n_max, config.degree_bound)
        report = {**_header(kind, problem, config), "table": table.to_dict()}
        title = "Tor" if kind == "tor" else "Ext"
        text = (f"{title} over R of ({M.name}, {N.name}), internal degrees <= {config.degree_bound}\n"
                + betti_diagram(table.rows, shift=(kind == "tor")))
        return CommandResult(report, text)
    return run


def cmd_ci_ops(problem, config, module=None, pair=None) -> CommandResult:
    tower = problem.tower
    M = _pick_module(problem, module)
    F = resolve(M, tower.R, config.n_max, config.degree_cap)
    L = lift_complex(F, tower.S)
    ops = ci_operators(L, tower.gens)
    certificate = ops.certificate_holds()
    commutes = [ops.commutes_over_complement(i) for i in range(ops.c)]
    for i in range(ops.c):
        ops.chain_map(i)  # raises CommutationFailure over R
    operators = []
    lines = [f"CI operators for {M.name} over R (resolution ranks {F.ranks()})",
             f"certificate d~ o d~ = sum f_i t~_i: {'ok' if certificate else 'FAILED'}"]
    for i, g in enumerate(ops.gens):
        where = "S" if ops.c == 1 else f"S/({', '.join(str(h) for j, h in enumerate(ops.gens) if j != i)})"
        lines.append(f"t_{i + 1} for f_{i + 1} = {g}; commutes over {where}: {commutes[i]}")
        mats = {}
        for n in range(2, F.length + 1):
            strings = ops.t(i, n).over(tower.R).to_strings()
            mats[str(n)] = strings
            lines.append(f" n = {n}: F_{n} -> F_{n - 2}")
            lines.append(format_matrix(strings))
        operators.append({"f": str(g), "commutes_over_complement": commutes[i], "matrices": mats})
    report = {**_header("ci-ops", problem, config), "module": M.describe(),
              "ranks": F.ranks(), "certificate": certificate, "operators": operators}
    code = EXIT_OK if certificate and all(commutes) else EXIT_ERROR
    return CommandResult(report, "\n".join(lines), code)


def cmd_cone(problem, config, module=None, pair=None) -> CommandResult:
    tower = problem.tower
    M = _pick_module(problem, module)
    base = tower.intermediate(tower.gens[:-1])
    f = tower.gens[-1]
    F = resolve(M, tower.R, config.n_max, config.degree_cap)
    ops = ci_operators(lift_complex(F, base), [f])
    cone = cone_resolution(F, ops)
    checks = check_cone(cone, min(8, config.n_max), config.degree_bound)
    small = minimize(cone.complex)
    direct = resolve(M, base, config.n_max, config.degree_cap)
    top = cone.complex.length if cone.complete else cone.complex.length - 1
    cmp_to = min(top, direct.length)
    ranks_min = small.ranks()
    pad = lambda r, k: (r + [0] * (k + 1))[: k + 1]
    agree = pad(ranks_min, cmp_to) == pad(direct.ranks(), cmp_to)
    report = {**_header("cone", problem, config), "module": M.describe(), "f": str(f),
              "over": [str(g) for g in tower.gens[:-1]], "cone_ranks": cone.complex.ranks(),
              "checks": checks, "minimized_ranks": ranks_min, "direct_ranks": direct.ranks(),
              "compared_through": cmp_to, "agree": agree}
    text = "\n".join([
        f"cone over S/({', '.join(str(g) for g in tower.gens[:-1])}) with f = {f}" if tower.c > 1
        else f"cone over S with f = {f}",
        f"cone ranks:       {cone.complex.ranks()}",
        f"complex, H_0 = {M.name}, exact through index {checks['exact_through']}",
        f"minimized ranks:  {ranks_min}",
        f"direct ranks:     {direct.ranks()}",
        f"agree through index {cmp_to}: {agree}",
    ])
    return CommandResult(report, text, EXIT_OK if agree else EXIT_ERROR)


def cmd_dade_check(problem, config, module=None, pair=None) -> CommandResult:
    M, N = problem.pair(pair)
    rep = dade_check(M, N, problem.tower, n_max=config.n_max, w=config.window,
                     field_ext=config.field_ext, strategy=config.strategy, seed=config.seed,
                     kind=config.functor, bound=config.degree_bound)
    report = rep.to_dict()
    report["config"] = config.to_dict()
    title = "Tor" if config.functor == "tor" else "Ext"
    lines = [f"{title} vanishing check for ({M.name}, {N.name}), field extension degree {config.field_ext}",
             f"over R: totals {rep.over_R.totals} -> {rep.over_R_window.verdict}"]
    for sec, tab, win, les in rep.sections:
        les_txt = "" if les is None else f", LES {'exact' if les.exact else 'NOT exact'}"
        lines.append(f"  f = {sec.f}: totals {tab.totals} -> {win.verdict}{les_txt}")
    lines.append(f"verdict: {rep.verdict}")
    code = EXIT_COUNTEREXAMPLE if rep.verdict == "counterexample-candidate" else EXIT_OK
    return CommandResult(report, "\n".join(lines), code)


HANDLERS = {
    "resolve": cmd_resolve,
    "tor": _functor("tor"),
    "ext": _functor("ext"),
    "ci-ops": cmd_ci_ops,
    "cone": cmd_cone,
    "dade-check": cmd_dade_check,
}


def run_command(cmd: str, problem: ProblemFile, config: RunConfig, module: str | None = None,
                pair: str | None = None) -> CommandResult:
    if cmd not in HANDLERS:
        raise ValueError(f"unknown command {cmd!r}")
    return HANDLERS[cmd](problem, config, module=module, pair=pair)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cidade", description="Graded complete-intersection homological algebra.")
    p.add_argument("--version", action="version", version=VERSION)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("problem", help="problem file")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE_BOUND,
                   help="largest internal degree examined")
    p.add_argument("--window", type=int, default=4, help="width of the vanishing window")
    p.add_argument("--field-ext", type=int, default=1, help="extend GF(q) to GF(q^e)")
    p.add_argument("--strategy", choices=("linear", "perturbed"), default="linear")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP)
    p.add_argument("--functor", choices=("tor", "ext"), default="tor")
    p.add_argument("--pair", help="M,N: module names for tor, ext and dade-check")
    p.add_argument("--module", help="module name for resolve, ci-ops and cone")
    p.add_argument("--json", metavar="PATH", help="write the machine report here")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(args.n_max, args.degree_bound, args.window, args.field_ext,
                           args.strategy, args.seed, args.degree_cap, args.functor)
        problem = parse_problem(args.problem)
        result = run_command(args.command, problem, config, args.module, args.pair)
        if args.json:
            write_json(result.report, args.json)
    except (CidadeError, ValueError, OSError) as exc:
        print(f"cidade: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(result.text)
    return result.exit_code


__all__ = ["RunConfig", "CommandResult", "run_command", "main", "dump_json"]
