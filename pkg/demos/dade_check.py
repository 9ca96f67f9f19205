"""Vanishing of Tor over R against vanishing over hypersurface sections.

Run: python3 demos/dade_check.py
The same checks are available as `cidade dade-check demos/problems/<file>`.
"""

from pathlib import Path

from cidade import dade_check, parse_problem
from cidade.cli import RunConfig, run_command

here = Path(__file__).parent / "problems"

# R/(x) and R/(y) over F9[x,y]/(x^2, y^2): Tor vanishes above 0 over R,
# and over each of the ten sections S/(a x^2 + b y^2) it vanishes above 1
P = parse_problem(here / "cyclic_f9.txt")
M, N = P.pair("M,N")
rep = dade_check(M, N, P.tower, n_max=8)
print("over R:", rep.over_R.totals, rep.over_R_window.verdict)
for sec, table, window, les in rep.sections:
    print(f"  {str(sec.f):>22}  {table.totals}  LES exact: {les.exact}, s bijective at {les.bijective_s}")
print("verdict:", rep.verdict)

# k with itself never vanishes, on either side
k = P.modules["k"]
print("\nk, k:", dade_check(k, k, P.tower, n_max=6).verdict)

# over F3 the projective line has only four points and all of them miss the
# two sections where Tor survives; extending to F9 finds them
P3 = parse_problem(here / "small_field_f3.txt")
for e in (1, 2):
    res = run_command("dade-check", P3, RunConfig(n_max=8, field_ext=e))
    print(f"\nfield extension degree {e}, exit code {res.exit_code}")
    print(res.text)
