"""Lifting complexes from a complete intersection to its polynomial ring,
CI operators, and the mapping-cone resolution over a hypersurface.

Indexing: a complex F over R has ``d(n): F_n -> F_{n-1}``.  The operator
``t[i][n]`` maps F_n to F_{n-2}; with the twists of F it has internal
degree ``-deg f_i``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .complexes import ChainComplex, FreeResolution, FunctorComplex, homology_dims, induced_rank
from .errors import CommutationFailure, NotAResolution, NotDivisible, NotInIdeal
from .groebner import IdealMembership
from .modules import GradedMatrix, PresentedModule, reduce_vector, same_submodule
from .poly import Polynomial, exact_divide, padd, pmul
from .rings import QuotientRing


@dataclass
class LiftedComplex:
    """A complex over a quotient together with matrices over a ring ``lift_ring``
    (a quotient of the same base by fewer relations) reducing to it."""

    base: ChainComplex
    lift_ring: QuotientRing
    maps: dict

    def d(self, n: int) -> GradedMatrix:
        if n in self.maps:
            return self.maps[n]
        return GradedMatrix.zero(self.lift_ring, self.base.module_twists(n - 1), self.base.module_twists(n))

    @property
    def length(self) -> int:
        return self.base.length

    def square(self, n: int) -> GradedMatrix:
        """The composite d(n-1) o d(n): F_n -> F_{n-2} over the lifting ring."""
        return self.d(n - 1) @ self.d(n)

    def over(self, ring: QuotientRing) -> "LiftedComplex":
        return LiftedComplex(self.base, ring, {n: m.over(ring) for n, m in self.maps.items()})

    def reduces_to_base(self) -> bool:
        return all(m.over(self.base.ring) == self.base.maps[n] for n, m in self.maps.items())


def lift_complex(C: ChainComplex, ring=None) -> LiftedComplex:
    """Canonical lift: every entry is its own normal-form representative.

    ``ring`` is a QuotientRing or a bare PolyRing (the default is the
    polynomial ring under C's ring).
    """
    if ring is None:
        ring = QuotientRing(C.ring.base)
    elif not isinstance(ring, QuotientRing):
        ring = QuotientRing(ring)
    return LiftedComplex(C, ring, {n: m.over(ring) for n, m in C.maps.items()})


def perturbed_lift(C: ChainComplex, f, rng: random.Random, max_degree: int = 2,
                   homogeneous: bool = False) -> LiftedComplex:
    """A lift over the polynomial ring whose entries differ from the canonical
    ones by random multiples of f.

    With ``homogeneous`` the multiplier has the degree that keeps the entry
    homogeneous (skipped where that degree is negative); otherwise it is a
    random polynomial of degree <= max_degree, so entries may become
    inhomogeneous.
    """
    S = QuotientRing(C.ring.base)
    base = S.base
    F = base.field
    f = base(f)
    df = f.homogeneous_degree()
    elems = list(F.elements())
    maps = {}
    for n, m in C.maps.items():
        rows = []
        for i, row in enumerate(m.entries):
            out = []
            for j, e in enumerate(row):
                if homogeneous:
                    dd = m.source[j] + m.degree - m.target[i] - df
                    degs = [dd] if dd >= 0 else []
                else:
                    degs = list(range(max_degree + 1))
                r: dict = {}
                for dd in degs:
                    for mon in base.monomials(dd):
                        c = rng.choice(elems)
                        if c != F.zero:
                            r[mon] = c
                out.append(padd(F, e, pmul(F, r, f.d)) if r else dict(e))
            rows.append(out)
        maps[n] = GradedMatrix(S, m.target, m.source, rows, m.degree, check=homogeneous, reduce=False)
    return LiftedComplex(C, S, maps)


class CIOperatorSet:
    """Operators t~_i with d~ o d~ = sum_i f_i t~_i over the lifting ring."""

    def __init__(self, lifted: LiftedComplex, gens, operators: dict):
        self.lifted = lifted
        self.gens = [lifted.lift_ring.base(g) for g in gens]
        self.operators = operators  # operators[i][n]: F_n -> F_{n-2}

    @property
    def c(self) -> int:
        return len(self.gens)

    def t(self, i: int, n: int) -> GradedMatrix:
        got = self.operators[i].get(n)
        if got is None:
            tw = self.lifted.base.module_twists
            deg = -self.gens[i].homogeneous_degree() if self.gens[i].is_homogeneous() else 0
            return GradedMatrix.zero(self.lifted.lift_ring, tw(n - 2), tw(n), deg)
        return got

    def certificate_holds(self) -> bool:
        """Recompose sum_i f_i t~_i and compare with d~ o d~ entry by entry."""
        ring = self.lifted.lift_ring
        F = ring.field
        for n in range(2, self.lifted.length + 1):
            sq = self.lifted.square(n)
            for r in range(sq.shape[0]):
                for s in range(sq.shape[1]):
                    acc: dict = {}
                    for i, g in enumerate(self.gens):
                        e = self.t(i, n).entries[r][s]
                        if e:
                            acc = padd(F, acc, pmul(F, g.d, e))
                    if ring.reduce(acc) != sq.entries[r][s]:
                        return False
        return True

    def commutes_over_lift(self, i: int, n_max: int | None = None) -> bool:
        """d~ t~_i = t~_i d~ over the lifting ring, on all sources up to n_max."""
        top = self.lifted.length if n_max is None else min(n_max, self.lifted.length)
        for n in range(3, top + 1):
            lhs = self.lifted.d(n - 2) @ self.t(i, n)
            rhs = self.t(i, n - 1) @ self.lifted.d(n)
            if lhs != rhs:
                return False
        return True

    def complement_ring(self, i: int) -> QuotientRing:
        """The lifting ring modulo every generator except f_i.

        f_i is a non-zerodivisor there, so the hypersurface argument forces
        exact commutation of t~_i with d~ after reduction to this ring.
        """
        ring = self.lifted.lift_ring
        others = [g for j, g in enumerate(self.gens) if j != i]
        return ring.with_relations(others) if others else ring

    def commutes_over_complement(self, i: int, n_max: int | None = None) -> bool:
        """d~ t~_i = t~_i d~ after reduction to :meth:`complement_ring`."""
        T = self.complement_ring(i)
        top = self.lifted.length if n_max is None else min(n_max, self.lifted.length)
        for n in range(3, top + 1):
            lhs = self.lifted.d(n - 2).over(T) @ self.t(i, n).over(T)
            rhs = self.t(i, n - 1).over(T) @ self.lifted.d(n).over(T)
            if lhs != rhs:
                return False
        return True

    def chain_map(self, i: int, check: bool = True) -> dict:
        """t_i = t~_i reduced to the base ring, {n: F_n -> F_{n-2}}."""
        R = self.lifted.base.ring
        out = {n: m.over(R) for n, m in self.operators[i].items()}
        if check:
            C = self.lifted.base
            for n in range(3, C.length + 1):
                lhs = C.d(n - 2) @ _get(out, n, C, R, self.t(i, n).degree)
                rhs = _get(out, n - 1, C, R, self.t(i, n).degree) @ C.d(n)
                if lhs != rhs:
                    raise CommutationFailure(f"operator {i + 1} does not commute with the differential at index {n}")
        return out


def _get(ops, n, C, R, degree):
    got = ops.get(n)
    if got is None:
        return GradedMatrix.zero(R, C.module_twists(n - 2), C.module_twists(n), degree)
    return got


def ci_operators(L: LiftedComplex, gens) -> CIOperatorSet:
    """Extract t~_i from d~ o d~.

    With one generator the quotient is unique and computed by exact
    division.  With several, cofactors come from :class:`IdealMembership`
    (generators tried in the given order).  When the lifting ring is itself a
    quotient, its relations are divided out too and only the cofactors of
    ``gens`` are kept.
    """
    ring = L.lift_ring
    base = ring.base
    gens = [base(g) for g in gens]
    homog = all(m.homogeneous for m in L.maps.values())
    membership = None
    if len(gens) > 1 or not ring.is_polynomial_ring:
        membership = IdealMembership(base, list(ring.relations) + gens)
    ops = {i: {} for i in range(len(gens))}
    nrel = len(ring.relations)
    for n in range(2, L.length + 1):
        sq = L.square(n)
        tw_t, tw_s = sq.target, sq.source
        mats = [[[{} for _ in tw_s] for _ in tw_t] for _ in gens]
        for r in range(len(tw_t)):
            for s in range(len(tw_s)):
                e = sq.entries[r][s]
                if not e:
                    continue
                p = Polynomial(base, e)
                if membership is None:
                    try:
                        mats[0][r][s] = exact_divide(p, gens[0]).d
                    except NotDivisible as exc:
                        raise NotInIdeal(str(exc)) from exc
                else:
                    hs = membership.express(p)
                    for i in range(len(gens)):
                        mats[i][r][s] = ring.reduce(hs[nrel + i].d)
        for i, g in enumerate(gens):
            deg = -g.homogeneous_degree() if (homog and g.is_homogeneous()) else 0
            ops[i][n] = GradedMatrix(ring, tw_t, tw_s, mats[i], deg, check=homog, reduce=False)
    out = CIOperatorSet(L, gens, ops)
    if not out.certificate_holds():
        raise NotInIdeal("recomposed operators do not reproduce the square of the lift")
    return out


def operator_chain_map(ops: CIOperatorSet, i: int) -> dict:
    return ops.chain_map(i, check=True)


# -- linearity of operators over hypersurface rings ------------------------------------------

def hypersurface_operator(L: LiftedComplex, hyper, f, n: int) -> GradedMatrix:
    """t(S/(hyper), f) on F_n: the quotient of d^ o d^ by f inside S/(hyper),
    reduced to the ring of the base complex."""
    base = L.lift_ring.base
    R = L.base.ring
    mem = IdealMembership(base, [base(hyper), base(f)])
    sq = L.square(n)
    rows = [[R.reduce(mem.express(Polynomial(base, e))[1].d) if e else {} for e in row]
            for row in sq.entries]
    deg = -base(f).homogeneous_degree()
    return GradedMatrix(R, sq.target, sq.source, rows, deg, check=False, reduce=False)


def verify_linearity(L: LiftedComplex, f1, f2, alpha, n_max: int | None = None) -> bool:
    """t(T_a, f1) == t(T_1, f1) - a t(T_2, f2) with T_1 = S/(f2),
    T_2 = S/(f1), T_a = S/(a f1 + f2), all from the same lift."""
    base = L.lift_ring.base
    F = base.field
    f1, f2 = base(f1), base(f2)
    g_alpha = f1.scale(alpha) + f2
    top = L.length if n_max is None else min(n_max, L.length)
    for n in range(2, top + 1):
        ta = hypersurface_operator(L, g_alpha, f1, n)
        t1 = hypersurface_operator(L, f2, f1, n)
        t2 = hypersurface_operator(L, f1, f2, n)
        if ta != t1 - t2.scale(alpha):
            return False
    return True


# -- the mapping cone over S ---------------------------------------------------------------

@dataclass
class ConeResolution:
    complex: ChainComplex
    f: Polynomial
    module: PresentedModule
    complete: bool
    resolution: FreeResolution


def cone_resolution(F: FreeResolution, ops: CIOperatorSet) -> ConeResolution:
    """C_n = F~_n + F~_{n-1}(shifted by deg f) with differential
    [[-d~_n, -f], [t~_n, d~_{n-1}]] and C_0 = F~_0, d_1 = [-d~_1, -f].

    When F is a complete finite resolution the cone gets one more term.
    """
    if ops.c != 1:
        raise ValueError("the cone needs a single hypersurface equation")
    L = ops.lifted
    S = L.lift_ring
    f = ops.gens[0]
    df = f.homogeneous_degree()
    L_len = F.length
    top = L_len + 1 if F.complete else L_len
    tw = F.module_twists
    twists = [tw(0)]
    for n in range(1, top + 1):
        twists.append(tw(n) + tuple(a + df for a in tw(n - 1)))
    maps = {}
    shift = lambda t: tuple(a + df for a in t)
    for n in range(1, top + 1):
        blocks = [[-L.d(n), _scalar_identity(S, tw(n - 1), f.d, -1)]]
        col_sizes = [tw(n), shift(tw(n - 1))]
        row_sizes = [tw(n - 1)]
        if n >= 2:
            tn = ops.t(0, n).with_twists(shift(tw(n - 2)), tw(n), 0)
            dn1 = L.d(n - 1).with_twists(shift(tw(n - 2)), shift(tw(n - 1)))
            blocks.append([tn, dn1])
            row_sizes.append(shift(tw(n - 2)))
        maps[n] = _assemble(S, row_sizes, col_sizes, blocks)
    C = ChainComplex(S, twists, maps)
    return ConeResolution(C, f, F.module, F.complete, F)


def _scalar_identity(S, twists, p: dict, sign: int) -> GradedMatrix:
    """sign * p * identity from twists shifted by deg p to twists."""
    F = S.field
    c = F.one if sign > 0 else F.neg(F.one)
    d = S.base.wdeg(next(iter(p)))
    e = {m: F.mul(c, x) for m, x in p.items()}
    return GradedMatrix(S, twists, tuple(a + d for a in twists),
                        [[dict(e) if i == j else {} for j in range(len(twists))] for i in range(len(twists))],
                        reduce=False)


def _assemble(S, row_sizes, col_sizes, blocks) -> GradedMatrix:
    entries = []
    for r, rt in enumerate(row_sizes):
        for i in range(len(rt)):
            row = []
            for c, ct in enumerate(col_sizes):
                b = blocks[r][c]
                row.extend(b.entries[i] if b is not None and b.shape[1] else [{}] * len(ct))
            entries.append(row)
    return GradedMatrix(S, sum(row_sizes, ()), sum(col_sizes, ()), entries, reduce=False)


def check_cone(cone: "ConeResolution", n_max: int = 8, bound: int = 12) -> dict:
    """Complex, H_0 and exactness checks; raises NotAResolution on failure."""
    from .complexes import verify_complex
    C = cone.complex
    S = C.ring
    if not verify_complex(C):
        raise NotAResolution("cone differentials do not compose to zero")
    F = cone.resolution
    tw0 = C.module_twists(0)
    expected = [v for v in F.d(1).lift().columns()] if F.length else []
    expected += [{(k, m): c for m, c in cone.f.d.items()} for k in range(len(tw0))]
    d1 = C.d(1).columns() if C.length else []
    if not same_submodule(S, tw0, d1, expected):
        raise NotAResolution("H_0 of the cone is not F~_0 / (im d~_1 + f F~_0)")
    h0 = PresentedModule(S, tw0, d1)
    if h0.hilbert_series() != cone.module.hilbert_series():
        raise NotAResolution("H_0 of the cone has the wrong Hilbert series")
    top = min(n_max, C.length if cone.complete else C.length - 1)
    for n in range(1, top + 1):
        tw = C.module_twists(n)
        if not tw:
            continue
        h = homology_dims(C, n, degrees=range(min(tw), bound + 1))
        if any(h.values()):
            raise NotAResolution(f"cone has homology at index {n}: {h}")
    return {"complex": True, "h0": True, "exact_through": top}


# -- homotopy invariance ---------------------------------------------------------------------------

def induced_operator_maps(C: ChainComplex, t: dict, N: PresentedModule, kind: str = "tor",
                          n_max: int | None = None) -> dict:
    """{n: matrix of Tor(t, N): H_n -> H_{n-2}} in total mode (all degrees)."""
    from .complexes import induced_matrix
    fc = FunctorComplex(C, N, kind, total=True)
    top = C.length - 1 if n_max is None else min(n_max, C.length - 1)
    out = {}
    for n in range(2, top + 1):
        out[n] = induced_matrix(fc, fc, t[n], n, n - 2, None)
    return out


def homotopy_invariance_check(C: ChainComplex, t_a: dict, t_b: dict, N: PresentedModule,
                              n_max: int = 6) -> bool:
    """Two degree -2 chain maps induce the same maps on Tor_n(-, N) for n <= n_max."""
    fc = FunctorComplex(C, N, "tor", total=True)
    top = min(n_max, C.length - 1)
    for n in range(2, top + 1):
        if induced_rank(fc, fc, t_a[n] - t_b[n], n, n - 2, None):
            return False
    return True

