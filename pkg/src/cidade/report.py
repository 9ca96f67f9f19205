"""Human-readable tables and deterministic machine reports."""

from __future__ import annotations

import json


def betti_diagram(rows, shift: bool = True) -> str:
    """Macaulay2-style table from rows[n] = {internal degree: multiplicity}.

    With ``shift`` the row label is degree - n (the usual Betti layout);
    otherwise rows are labelled by the internal degree itself.
    """
    cells: dict = {}
    for n, row in enumerate(rows):
        for d, v in row.items():
            if v:
                label = d - n if shift else d
                cells[(label, n)] = cells.get((label, n), 0) + v
    totals = [sum(r.values()) for r in rows]
    cols = list(range(len(rows)))
    labels = sorted({lab for lab, _ in cells})
    body = [[""] + [str(n) for n in cols], ["total:"] + [str(t) for t in totals]]
    for lab in labels:
        body.append([f"{lab}:"] + [str(cells[(lab, n)]) if (lab, n) in cells else "." for n in cols])
    widths = [max(len(r[i]) for r in body) for i in range(len(body[0]))]
    return "\n".join(" ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in body)


def dump_json(report: dict) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(report: dict, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dump_json(report))


def format_matrix(strings) -> str:
    if not strings:
        return "  (empty)"
    width = max((len(s) for row in strings for s in row), default=1)
    return "\n".join("  [ " + "  ".join(s.rjust(width) for s in row) + " ]" for row in strings)
