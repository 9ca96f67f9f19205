"""Over a hypersurface ring the residue field has a periodic resolution.

Run: python3 demos/periodicity.py
"""

from cidade import GF, PolyRing, PresentedModule, QuotientRing, ci_operators, lift_complex, resolve
from cidade.report import betti_diagram

S = PolyRing(GF(7), ["x"])
f = S("x^2")
R = QuotientRing(S, [f])
k = PresentedModule.residue_field(R, "k")

# every differential of the minimal resolution is multiplication by x
F = resolve(k, R, n_max=8)
print(betti_diagram([F.betti_table()[n] for n in range(F.length + 1)]))
print("d_1 .. d_8:", [F.d(n).to_strings()[0][0] for n in range(1, 9)])

# lift the differentials to S: d~ o d~ = x^2 = f * 1, so the operator t is the identity
ops = ci_operators(lift_complex(F), [f])
print("certificate d~ o d~ = f t~ holds:", ops.certificate_holds())
t = ops.chain_map(0)
print("t_n for n = 2..8:", [t[n].to_strings()[0][0] for n in range(2, 9)])

# over two variables the resolution of k grows linearly instead
S2 = PolyRing(GF(7), ["x", "y"])
R2 = QuotientRing(S2, [S2("x^2"), S2("y^2")])
F2 = resolve(PresentedModule.residue_field(R2), R2, n_max=6)
print("Betti numbers of k over F7[x,y]/(x^2, y^2):", F2.betti_numbers())
