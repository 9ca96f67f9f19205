"""Chain complexes of graded free modules, resolutions and degreewise homology."""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .errors import IndexOutOfWindow, NotAResolution, RingMismatch
from .groebner import DEFAULT_DEGREE_CAP
from .linalg import coordinates, matmul, nullspace, rank
from .modules import (GradedMatrix, PresentedModule, minimal_columns, minimal_presentation,
                      reduce_vector, syzygies, vector_degree)
from .poly import pmul, pscale, psub
from .rings import QuotientRing

DEFAULT_DEGREE_BOUND = 12


class ChainComplex:
    """F_0 <- F_1 <- ... <- F_L with ``maps[n]: F_n -> F_{n-1}`` for 1 <= n <= L."""

    def __init__(self, ring: QuotientRing, twists, maps, check: bool = True):
        self.ring = ring
        self.twists = [tuple(t) for t in twists]
        self.maps = {}
        maps = dict(maps) if isinstance(maps, dict) else {n + 1: m for n, m in enumerate(maps)}
        for n, m in maps.items():
            if m.ring != ring:
                raise RingMismatch(f"differential {n} lives over another ring")
            if check and (m.source != self.twists[n] or m.target != self.twists[n - 1]):
                raise ValueError(f"differential {n} does not match the module twists")
            self.maps[n] = m

    @property
    def length(self) -> int:
        return len(self.twists) - 1

    def rank(self, n: int) -> int:
        return len(self.twists[n]) if 0 <= n < len(self.twists) else 0

    def ranks(self) -> list:
        return [len(t) for t in self.twists]

    def module_twists(self, n: int) -> tuple:
        return self.twists[n] if 0 <= n < len(self.twists) else ()

    def d(self, n: int) -> GradedMatrix:
        if n in self.maps:
            return self.maps[n]
        return GradedMatrix.zero(self.ring, self.module_twists(n - 1), self.module_twists(n))

    def over(self, ring: QuotientRing) -> "ChainComplex":
        return ChainComplex(ring, self.twists, {n: m.over(ring) for n, m in self.maps.items()})

    def betti_table(self) -> dict:
        """{n: {twist: multiplicity}}."""
        out = {}
        for n, tw in enumerate(self.twists):
            row: dict = {}
            for a in tw:
                row[a] = row.get(a, 0) + 1
            out[n] = row
        return out

    def __repr__(self):
        return f"ChainComplex(ranks={self.ranks()})"


def verify_complex(C: ChainComplex) -> bool:
    """True iff every composite of consecutive differentials is exactly zero."""
    for n in range(2, C.length + 1):
        if n in C.maps and n - 1 in C.maps and not (C.maps[n - 1] @ C.maps[n]).is_zero():
            return False
    return True


class FreeResolution(ChainComplex):
    """A free resolution window of ``module``; ``complete`` means F_{L+1} = 0."""

    def __init__(self, ring, twists, maps, module: PresentedModule, minimal: bool, complete: bool):
        super().__init__(ring, twists, maps)
        self.module = module
        self.minimal = minimal
        self.complete = complete

    def betti_numbers(self) -> list:
        return self.ranks()


def reduce_mod(C: ChainComplex, f) -> ChainComplex:
    """Entrywise normal form of a complex over S/(J + (f))."""
    return C.over(C.ring.with_relations([f]))


def resolve(M: PresentedModule, ring: QuotientRing | None = None, n_max: int = 10,
            degree_cap: int = DEFAULT_DEGREE_CAP) -> FreeResolution:
    """Minimal free resolution of M over ``ring`` up to homological index n_max."""
    ring = ring or M.ring
    if ring.base != M.base:
        raise RingMismatch("module and ring have different base rings")
    if not M.annihilated_by(ring):
        raise RingMismatch(f"{M!r} is not a module over {ring!r}")
    P = M.presentation(ring)
    twists, cols = minimal_presentation(ring, P.target, P.columns())
    all_twists = [twists]
    maps = []
    complete = False
    if not cols:
        complete = True
    else:
        degs = [vector_degree(ring, twists, c) for c in cols]
        d = GradedMatrix.from_columns(ring, twists, degs, cols, reduce=False)
        n = 1
        while True:
            if n > n_max:
                break
            maps.append(d)
            all_twists.append(d.source)
            if n == n_max and not ring.is_polynomial_ring:
                break
            nxt = syzygies(d, degree_cap)
            if not nxt.source:
                complete = True
                break
            d = nxt
            n += 1
        if ring.is_polynomial_ring and not complete and n_max >= ring.base.nvars:
            raise NotAResolution("resolution over the polynomial ring did not terminate by the number of variables")
    if not twists:
        complete = True
    return FreeResolution(ring, all_twists, maps, M, minimal=True, complete=complete)


def minimize(C: ChainComplex) -> ChainComplex:
    """Cancel unit entries of the differentials (Gaussian elimination of
    trivial summands), giving a homotopy equivalent complex with no unit
    entries."""
    ring = C.ring
    F = ring.field
    unit = ring.base.unit_mon
    twists = [list(t) for t in C.twists]
    ent = {n: [[dict(e) for e in row] for row in m.entries] for n, m in C.maps.items()}
    deg = {n: m.degree for n, m in C.maps.items()}
    changed = True
    while changed:
        changed = False
        for n in sorted(ent):
            D = ent[n]
            hit = next(((i, j) for i, row in enumerate(D) for j, e in enumerate(row)
                        if len(e) == 1 and unit in e), None)
            if hit is None:
                continue
            i, j = hit
            u_inv = F.inv(D[i][j][unit])
            col = [D[r][j] for r in range(len(D))]
            row = D[i]
            newD = []
            for r in range(len(D)):
                if r == i:
                    continue
                out = []
                for s in range(len(row)):
                    if s == j:
                        continue
                    e = D[r][s]
                    if col[r] and row[s]:
                        e = ring.reduce(psub(F, e, pscale(F, u_inv, pmul(F, col[r], row[s]))))
                    out.append(e)
                newD.append(out)
            ent[n] = newD
            if n - 1 in ent:
                ent[n - 1] = [[e for s, e in enumerate(r) if s != i] for r in ent[n - 1]]
            if n + 1 in ent:
                ent[n + 1] = [r for s, r in enumerate(ent[n + 1]) if s != j]
            del twists[n - 1][i]
            del twists[n][j]
            changed = True
            break
    maps = {n: GradedMatrix(ring, twists[n - 1], twists[n], ent[n], deg[n], reduce=False) for n in ent}
    while len(twists) > 1 and not twists[-1]:
        maps.pop(len(twists) - 1, None)
        twists.pop()
    return ChainComplex(ring, twists, maps)


# -- functors applied to free complexes, degreewise ------------------------------------

class FunctorSpaces:
    """Degree pieces of F (x) N (``kind='tor'``) or Hom(F, N) (``kind='ext'``)
    for free modules F with given twists and a presented module N.

    In tensor mode the summand of generator j in degree d is N_{d - a_j};
    in Hom mode it is N_{d + a_j}.  ``d=None`` means all degrees at once,
    which is used for inhomogeneous maps over finite-length N.
    """

    def __init__(self, N: PresentedModule, kind: str, bound: int | None = None):
        if kind not in ("tor", "ext"):
            raise ValueError("kind must be 'tor' or 'ext'")
        self.N = N
        self.kind = kind
        self.sign = -1 if kind == "tor" else 1
        self.bound = bound
        self._cache: dict = {}

    @cached_property
    def _all_n(self):
        return self.N.total_basis(self.bound)

    def keys(self, twists, d):
        key = (tuple(twists), d)
        got = self._cache.get(key)
        if got is None:
            if d is None:
                got = [(j, b) for j in range(len(twists)) for b in self._all_n]
            else:
                got = [(j, b) for j, a in enumerate(twists) for b in self.N.basis(d + self.sign * a)]
            got = (got, {k: n for n, k in enumerate(got)})
            self._cache[key] = got
        return got

    def dim(self, twists, d) -> int:
        return len(self.keys(twists, d)[0])

    def degree_range(self, twists):
        """Degrees d where the piece can be nonzero (for infinite N cut by the bound)."""
        degs = self.N.degrees(self.bound)
        if not degs or not twists:
            return []
        lo, hi = degs[0], degs[-1]
        if self.kind == "tor":
            return list(range(lo + min(twists), hi + max(twists) + 1))
        return list(range(lo - max(twists), hi - min(twists) + 1))

    def apply(self, m: GradedMatrix, d):
        """Matrix (rows = source basis) of the induced k-linear map.

        Tensor mode: F_src (x) N in degree d -> F_tgt (x) N in degree d + deg m.
        Hom mode: Hom(F_tgt, N) in degree d -> Hom(F_src, N) in degree d + deg m.
        """
        F = self.N.field
        shift = None if d is None else d + m.degree
        if self.kind == "tor":
            src, sidx = self.keys(m.source, d)
            tgt, tidx = self.keys(m.target, shift)
        else:
            src, sidx = self.keys(m.target, d)
            tgt, tidx = self.keys(m.source, shift)
        out = F.zeros((len(src), len(tgt)))
        if not src or not tgt:
            return out
        for r, (j, b) in enumerate(src):
            if self.kind == "tor":
                entries = ((i, m.entries[i][j]) for i in range(len(m.target)))
            else:
                entries = ((i, m.entries[j][i]) for i in range(len(m.source)))
            for i, p in entries:
                if not p:
                    continue
                for k, c in self.N.act(p, b).items():
                    col = tidx.get((i, k))
                    if col is None:
                        raise ValueError("image outside the target piece; inconsistent degrees")
                    out[r, col] = F.add(out[r, col], c) if F.dtype is object else F.add(int(out[r, col]), c)
        return out


class FunctorComplex:
    """Homology of F (x) N or Hom(F, N) for a chain complex F of free modules."""

    def __init__(self, C: ChainComplex, N: PresentedModule, kind: str = "tor",
                 bound: int | None = DEFAULT_DEGREE_BOUND, total: bool = False):
        self.C = C
        self.N = N
        self.kind = kind
        self.total = total
        self.spaces = FunctorSpaces(N, kind, bound)
        self.field = N.field

    def twists(self, n):
        return self.C.module_twists(n)

    def dim(self, n, d) -> int:
        return self.spaces.dim(self.twists(n), d)

    def outgoing(self, n, d):
        """Differential leaving position n (to n-1 for Tor, n+1 for Ext)."""
        m = self.C.d(n) if self.kind == "tor" else self.C.d(n + 1)
        return self.spaces.apply(m, d)

    def incoming(self, n, d):
        """Differential arriving at position n (rows = basis of its source)."""
        if self.kind == "tor":
            m = self.C.d(n + 1)
        else:
            m = self.C.d(n)
        src_d = d if d is None else d - m.degree
        return self.spaces.apply(m, src_d)

    def cycles(self, n, d):
        """Basis (rows) of the cycles at position n."""
        dim = self.dim(n, d)
        if not dim:
            return self.field.zeros((0, 0))
        A = self.outgoing(n, d)
        if not A.shape[1]:
            return _identity(self.field, dim)
        return nullspace(self.field, A.T)

    def boundaries(self, n, d):
        return self.incoming(n, d)

    def homology_dim(self, n, d) -> int:
        dim = self.dim(n, d)
        if not dim:
            return 0
        return dim - rank(self.field, self.outgoing(n, d)) - rank(self.field, self.incoming(n, d))

    def degrees(self, n):
        if self.total:
            return [None]
        return self.spaces.degree_range(self.twists(n))

    def homology(self, n) -> dict:
        """{internal degree: dim H_n} over the nonzero degrees."""
        out = {}
        for d in self.degrees(n):
            h = self.homology_dim(n, d)
            if h:
                out[d] = h
        return out

    def total_dim(self, n) -> int:
        return sum(self.homology(n).values())


def _identity(F, n):
    out = F.zeros((n, n))
    for i in range(n):
        out[i, i] = F.one
    return out


def homology_dims(C: ChainComplex, n: int, degrees=None, bound: int = DEFAULT_DEGREE_BOUND) -> dict:
    """dim_k H_n(C) per internal degree.

    By default the degrees run over [min twist, min twist + bound] of F_n
    (the whole support when the ring is Artinian).
    """
    if n < 0 or n > C.length:
        raise IndexOutOfWindow(f"index {n} outside the window [0, {C.length}]")
    if n + 1 > C.length and n + 1 not in C.maps and C.length and n != C.length:
        raise IndexOutOfWindow(f"index {n + 1} outside the window")
    A = PresentedModule.free(C.ring)
    fc = FunctorComplex(C, A, "tor", bound)
    if degrees is None:
        tw = C.module_twists(n)
        if not tw:
            return {}
        lo = min(tw)
        top = C.ring.top_degree()
        hi = max(tw) + top if top is not None else lo + bound
        degrees = range(lo, hi + 1)
    return {d: fc.homology_dim(n, d) for d in degrees}


# -- induced maps on homology -----------------------------------------------------------

def induced_rank(source: FunctorComplex, target: FunctorComplex, phi: GradedMatrix, n: int,
                 m: int, d) -> int:
    """Rank of the map H_n(source) -> H_m(target) induced by the chain map
    component ``phi`` (applied through the functor) in source degree d."""
    F = source.field
    Z = source.cycles(n, d)
    d2 = None if d is None else d + phi.degree
    if not Z.shape[0]:
        return 0
    images = matmul(F, Z, source.spaces.apply(phi, d))
    B = target.boundaries(m, d2)
    rb = rank(F, B) if B.size else 0
    both = np.vstack([images, B]) if B.size else images
    return rank(F, both) - rb


def homology_basis(fc: FunctorComplex, n: int, d):
    """(representative cycles, boundaries) with the representatives a basis of H."""
    F = fc.field
    Z = fc.cycles(n, d)
    B = fc.boundaries(n, d)
    reps = []
    cur = B if B.size else F.zeros((0, fc.dim(n, d)))
    r0 = rank(F, cur) if cur.shape[0] else 0
    for z in Z:
        trial = np.vstack([cur, z[None, :]])
        r1 = rank(F, trial)
        if r1 > r0:
            reps.append(z)
            cur, r0 = trial, r1
    return (np.array(reps, dtype=F.dtype).reshape(len(reps), fc.dim(n, d)), B)


def induced_matrix(source: FunctorComplex, target: FunctorComplex, phi: GradedMatrix,
                   n: int, m: int, d=None):
    """Matrix of the induced map on homology bases (rows = source basis)."""
    F = source.field
    reps_s, _ = homology_basis(source, n, d)
    d2 = None if d is None else d + phi.degree
    reps_t, B_t = homology_basis(target, m, d2)
    k_s, k_t = reps_s.shape[0], reps_t.shape[0]
    out = F.zeros((k_s, k_t))
    if not k_s or not k_t:
        return out
    img = matmul(F, reps_s, source.spaces.apply(phi, d))
    basis = np.vstack([reps_t, B_t]) if B_t.size else reps_t
    full = row_independent(F, basis)
    for r in range(k_s):
        c = coordinates(F, full, img[r])
        if c is None:
            raise ValueError("image is not a cycle of the target")
        out[r] = c[:k_t]
    return out


def row_independent(F, A):
    keep = []
    cur = None
    r0 = 0
    for row in A:
        trial = row[None, :] if cur is None else np.vstack([cur, row[None, :]])
        r1 = rank(F, trial)
        if r1 > r0:
            cur, r0 = trial, r1
            keep.append(row)
    return np.array(keep, dtype=F.dtype).reshape(len(keep), A.shape[1])
