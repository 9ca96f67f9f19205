"""Problem files: one text file describing a ring tower, modules and pairs.

Grammar (one directive per line, ``#`` starts a comment)::

    field GF(9)                      # GF(p), GF(p^e), GF(q) or QQ
    vars x y                         # variable names
    weights 1 1                      # optional, positive integers
    ideal x^2, y^2                   # the regular sequence f_1..f_c
    module M = coker [x, y; y, x] twists 0 0
    module k = residue               # the residue field
    module Q = quotient x            # R / (x)
    module F = free twists 0 1       # a free module
    pair M,k

Module entries are polynomials in the variables; ``a`` denotes the field
generator of GF(p^e).  ``twists`` gives the degrees of the generators (the
row degrees of the matrix, default 0).  Column degrees are inferred.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .errors import NotHomogeneous, ParseError
from .fields import GF, QQ, Field
from .modules import PresentedModule, vector_degree
from .poly import PolyRing, format_polynomial, parse_matrix, parse_polynomial_list
from .rings import RingTower


@dataclass
class ProblemFile:
    field: Field
    ring: PolyRing
    tower: RingTower
    modules: dict
    pairs: list
    directives: list = dc_field(default_factory=list)

    def pair(self, desc: str | None = None) -> tuple:
        if desc is None:
            if not self.pairs:
                raise ParseError("no pair declared and none given")
            a, b = self.pairs[0]
        else:
            parts = [p.strip() for p in desc.split(",")]
            if len(parts) != 2:
                raise ParseError(f"pair must look like M,N: {desc!r}")
            a, b = parts
        for nm in (a, b):
            if nm not in self.modules:
                raise ParseError(f"unknown module {nm!r}")
        return self.modules[a], self.modules[b]

    def serialize(self) -> str:
        """Canonical text that parses back to the same problem."""
        lines = [f"field {_field_text(self.field)}", "vars " + " ".join(self.ring.names)]
        if set(self.ring.weights) != {1}:
            lines.append("weights " + " ".join(map(str, self.ring.weights)))
        lines.append("ideal " + ", ".join(str(g) for g in self.tower.gens))
        for name, M in self.modules.items():
            tw = " ".join(map(str, M.twists))
            if not M.columns:
                lines.append(f"module {name} = free twists {tw}")
                continue
            rows = [[{} for _ in M.columns] for _ in M.twists]
            for j, col in enumerate(M.columns):
                for (i, mon), c in col.items():
                    rows[i][j][mon] = c
            body = "; ".join(", ".join(format_polynomial(self.ring, e) for e in row) for row in rows)
            lines.append(f"module {name} = coker [{body}] twists {tw}")
        for a, b in self.pairs:
            lines.append(f"pair {a},{b}")
        return "\n".join(lines) + "\n"


def _field_text(F: Field) -> str:
    if F is QQ or not F.is_finite:
        return "QQ"
    return f"GF({F.order})"


_FIELD = re.compile(r"^(?:GF\(\s*(\d+)(?:\s*\^\s*(\d+))?\s*\)|QQ)$")


def parse_field(text: str, line: int | None = None) -> Field:
    m = _FIELD.match(text.strip())
    if not m:
        raise ParseError(f"unknown field {text.strip()!r}", line, 1)
    if text.strip() == "QQ":
        return QQ
    q = int(m.group(1)) ** (int(m.group(2)) if m.group(2) else 1)
    try:
        return GF(q)
    except ValueError as exc:
        raise ParseError(str(exc), line, 1) from exc


def parse_problem_text(text: str) -> ProblemFile:
    field = names = weights = None
    ring = tower = None
    ideal_line = None
    module_lines = []
    pairs = []
    directives = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        indent = len(body) - len(body.lstrip())
        key, _, rest = body.strip().partition(" ")
        offset = indent + len(key) + 1
        directives.append((lineno, key, rest))
        if key == "field":
            field = parse_field(rest, lineno)
        elif key == "vars":
            names = rest.replace(",", " ").split()
        elif key == "weights":
            try:
                weights = [int(w) for w in rest.replace(",", " ").split()]
            except ValueError as exc:
                raise ParseError("weights must be integers", lineno, offset + 1) from exc
        elif key == "ideal":
            ideal_line = (lineno, rest, offset)
        elif key == "module":
            module_lines.append((lineno, rest, offset))
        elif key == "pair":
            parts = [p.strip() for p in rest.split(",")]
            if len(parts) != 2 or not all(parts):
                raise ParseError("pair must look like M,N", lineno, offset + 1)
            pairs.append(tuple(parts))
        else:
            raise ParseError(f"unknown directive {key!r}", lineno, indent + 1)
    if field is None:
        raise ParseError("missing 'field' line")
    if not names:
        raise ParseError("missing 'vars' line")
    if ideal_line is None:
        raise ParseError("missing 'ideal' line")
    try:
        ring = PolyRing(field, names, weights)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    lineno, rest, offset = ideal_line
    gens = parse_polynomial_list(ring, rest, lineno, offset)
    tower = RingTower(ring, gens)
    modules = {}
    for lineno, rest, offset in module_lines:
        name, M = _parse_module(tower, rest, lineno, offset)
        if name in modules:
            raise ParseError(f"module {name!r} declared twice", lineno, offset + 1)
        modules[name] = M
    for a, b in pairs:
        for nm in (a, b):
            if nm not in modules:
                raise ParseError(f"pair refers to unknown module {nm!r}")
    return ProblemFile(field, ring, tower, modules, pairs, directives)


_MODULE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(\w+)\s*(.*)$")


def _parse_module(tower: RingTower, rest: str, lineno: int, offset: int):
    m = _MODULE.match(rest)
    if not m:
        raise ParseError("expected 'module NAME = KIND ...'", lineno, offset + 1)
    name, kind, tail = m.group(1), m.group(2), m.group(3)
    tail_offset = offset + m.start(3)
    R = tower.R
    ring = tower.base
    twists = None
    if "twists" in tail.split():
        idx = tail.rfind("twists")
        try:
            twists = [int(t) for t in tail[idx + len("twists"):].split()]
        except ValueError as exc:
            raise ParseError("twists must be integers", lineno, tail_offset + idx + 1) from exc
        tail = tail[:idx]
    if kind == "residue":
        return name, PresentedModule.residue_field(R, name)
    if kind == "free":
        tw = twists if twists is not None else [0] * int(tail.strip() or 1)
        return name, PresentedModule.free(R, tw, name)
    if kind == "quotient":
        polys = parse_polynomial_list(ring, tail, lineno, tail_offset)
        for p in polys:
            if not p.is_homogeneous():
                raise NotHomogeneous(f"line {lineno}: {p} is not homogeneous")
        return name, PresentedModule.cyclic(R, polys, name)
    if kind == "coker":
        rows = parse_matrix(ring, tail.strip(), lineno, tail_offset + len(tail) - len(tail.lstrip()))
        nrows = len(rows)
        tw = twists if twists is not None else [0] * nrows
        if len(tw) != nrows:
            raise ParseError(f"{len(tw)} twists for {nrows} rows", lineno, tail_offset + 1)
        cols = []
        for j in range(len(rows[0]) if rows else 0):
            col = {(i, mon): c for i in range(nrows) for mon, c in rows[i][j].d.items()}
            if col and vector_degree(R, tw, col) is None:
                raise NotHomogeneous(f"line {lineno}: column {j + 1} is not homogeneous for twists {tw}")
            cols.append(col)
        return name, PresentedModule(R, tw, cols, name)
    raise ParseError(f"unknown module kind {kind!r}", lineno, tail_offset + 1)


def parse_problem(path) -> ProblemFile:
    with open(path, encoding="utf-8") as fh:
        return parse_problem_text(fh.read())
