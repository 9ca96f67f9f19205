"""Small instances shared by several test files."""

import random

from cidade import GF, GradedMatrix, PolyRing, PresentedModule, QuotientRing, RingTower
from cidade.problem import parse_problem_text


def tower(q, names, ideal):
    S = PolyRing(GF(q), names)
    return RingTower(S, [S(g) for g in ideal])


def module(T, desc, name="M"):
    """'k', 'free', a polynomial list 'x, y' (cyclic quotient) or a matrix '[..]'."""
    if desc == "k":
        return PresentedModule.residue_field(T.R, name)
    if desc == "free":
        return PresentedModule.free(T.R, (0,), name)
    if desc.startswith("["):
        text = (f"field GF({T.field.order})\nvars {' '.join(T.base.names)}\n"
                f"ideal {', '.join(map(str, T.gens))}\nmodule {name} = coker {desc}\n")
        return parse_problem_text(text).modules[name]
    return PresentedModule.cyclic(T.R, [T.base(p) for p in desc.split(",")], name)


# (q, variables, ideal, module) with c in {1, 2, 3}
OPERATOR_CORPUS = [
    (7, ["x"], ["x^2"], "k"),
    (7, ["x", "y"], ["x^2"], "k"),
    (7, ["x", "y"], ["x^2", "y^2"], "k"),
    (7, ["x", "y"], ["x^2", "y^2"], "x + y"),
    (7, ["x", "y"], ["x*y", "x^2 + y^2"], "k"),
    (3, ["x", "y"], ["x^2", "y^2"], "[x, y; y, x + 2*y]"),
    (7, ["x", "y", "z"], ["x^2", "y^2", "z^2"], "k"),
    (7, ["x", "y", "z"], ["x^2", "y^2", "z^2"], "x + y"),
    (5, ["x", "y", "z"], ["x^2", "y^3", "z^2"], "x*y"),
]

# (q, variables, f, module) hypersurfaces for the cone
CONE_CORPUS = [
    (7, ["x"], "x^2", "k"),
    (7, ["x"], "x^2", "free"),
    (7, ["x", "y"], "x^2", "k"),
    (7, ["x", "y"], "x*y", "x"),
    (7, ["x", "y"], "x^2 + y^2", "[x, y; -y, x]"),
    (5, ["x", "y"], "x^3", "x^2, y"),
]


def random_three_term(rng: random.Random, S: PolyRing):
    """A complex X -> Y -> Z of free S-modules: Z = S, Y -> Z a random row of
    forms, X -> Y random combinations of (some of) its syzygies."""
    from cidade.modules import syzygies
    F = S.field
    R = QuotientRing(S)
    m = rng.randint(1, 3)
    degs = [rng.randint(1, 2) for _ in range(m)]
    row = []
    for d in degs:
        mons = S.monomials(d)
        row.append({mon: F.from_int(rng.randrange(7)) for mon in rng.sample(mons, rng.randint(1, len(mons)))})
        row[-1] = {k: v for k, v in row[-1].items() if v}
    B = GradedMatrix(R, (0,), degs, [row])
    K = syzygies(B)
    cols = K.columns()
    mode = rng.choice(["full", "subset", "multiple"])
    if mode == "subset" and len(cols) > 1:
        keep = sorted(rng.sample(range(len(cols)), len(cols) - 1))
        cols = [cols[j] for j in keep]
        src = [K.source[j] for j in keep]
    elif mode == "multiple":
        x = S.var(0).d
        cols = [{(i, tuple(a + b for a, b in zip(mon, next(iter(x))))): c for (i, mon), c in v.items()}
                for v in cols]
        src = [s + 1 for s in K.source]
    else:
        src = list(K.source)
    A = GradedMatrix.from_columns(R, tuple(degs), src, cols)
    return B, A
