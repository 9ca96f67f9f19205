"""From a periodic resolution over R = S/(f) to a finite resolution over S.

Run: python3 demos/cone.py
"""

from cidade import (GF, PolyRing, PresentedModule, RingTower, check_cone, ci_operators, cone_resolution,
                    lift_complex, minimize, resolve)

S = PolyRing(GF(7), ["x", "y"])
f = S("x^2")
tower = RingTower(S, [f])
k = PresentedModule.residue_field(tower.R, "k")

F = resolve(k, tower.R, n_max=8)
ops = ci_operators(lift_complex(F), [f])
cone = cone_resolution(F, ops)

# C_n = F~_n + F~_{n-1}; the differential carries f in its corner block
print("cone ranks:", cone.complex.ranks())
print("d_1 of the cone:", cone.complex.d(1).to_strings())
print(check_cone(cone, n_max=6, bound=10))

# the cone is far from minimal; cancelling units recovers the Koszul complex on x, y
small = minimize(cone.complex)
print("minimized ranks:", small.ranks()[:4])
print("direct resolution over S:", resolve(PresentedModule.residue_field(tower.S, "k"), tower.S).ranks())
