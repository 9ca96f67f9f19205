"""CI operators for a codimension-two complete intersection and their linearity.

Run: python3 demos/ci_operators.py
"""

from cidade import GF, PolyRing, PresentedModule, RingTower, ci_operators, lift_complex, resolve, verify_linearity
from cidade.report import format_matrix

S = PolyRing(GF(9), ["x", "y"])
f1, f2 = S("x^2"), S("y^2")
tower = RingTower(S, [f1, f2])
k = PresentedModule.residue_field(tower.R, "k")

F = resolve(k, tower.R, n_max=5)
L = lift_complex(F, S)
ops = ci_operators(L, [f1, f2])
print("resolution ranks:", F.ranks())
print("d~ o d~ = f1 t~1 + f2 t~2 in every degree:", ops.certificate_holds())

for i in range(2):
    print(f"\nt_{i + 1}: F_4 -> F_2 over R")
    print(format_matrix(ops.t(i, 4).over(tower.R).to_strings()))

# for each nonzero alpha the operator of f1 over S/(alpha f1 + f2) equals t_1 - alpha t_2
print("\nlinearity in alpha over all of F9*:",
      all(verify_linearity(L, f1, f2, a) for a in tower.field.nonzero_elements()))

# with three relations the operators only commute with d~ modulo the other relations
S3 = PolyRing(GF(5), ["x", "y", "z"])
T3 = RingTower(S3, [S3("x^2"), S3("y^3"), S3("z^2")])
M = PresentedModule.cyclic(T3.R, [S3("x*y")], "M")
ops3 = ci_operators(lift_complex(resolve(M, T3.R, 6), S3), T3.gens)
for i in range(3):
    print(f"f_{i + 1}: commutes over S {ops3.commutes_over_lift(i)}, "
          f"over S modulo the other relations {ops3.commutes_over_complement(i)}")
