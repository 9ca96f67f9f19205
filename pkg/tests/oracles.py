"""Brute-force linear algebra oracles, independent of the Gröbner machinery.

Everything here works one graded piece at a time: a homogeneous ideal or
submodule in degree d is the span of monomial multiples of its generators.
"""

import numpy as np

from cidade.linalg import nullspace, rank


def monomial_index(ring, d):
    return {m: i for i, m in enumerate(ring.monomials(d))}


def coeff_row(ring, p_dict, d):
    idx = monomial_index(ring, d)
    row = ring.field.zeros(len(idx))
    for m, c in p_dict.items():
        row[idx[m]] = c
    return row


def multiples(ring, polys, d):
    """Rows: all m*g with deg(m*g) = d."""
    F = ring.field
    rows = []
    for g in polys:
        if g.is_zero():
            continue
        e = d - g.homogeneous_degree()
        for m in ring.monomials(e):
            rows.append(coeff_row(ring, (ring({m: F.one}) * g).d, d))
    return F.array(rows, len(ring.monomials(d)))


def ideal_dim(ring, polys, d):
    return rank(ring.field, multiples(ring, polys, d))


def quotient_dim(ring, polys, d):
    return len(ring.monomials(d)) - ideal_dim(ring, polys, d)


def in_ideal(ring, polys, p):
    d = p.homogeneous_degree()
    A = multiples(ring, polys, d)
    v = coeff_row(ring, p.d, d)
    F = ring.field
    return rank(F, np.vstack([A, v[None, :]])) == rank(F, A)


def module_piece(ring, twists, vectors, d):
    """Rows spanning the degree-d part of the submodule generated by vectors
    ({(comp, mon): c}) in the free module with the given twists."""
    F = ring.field
    keys = [(i, m) for i, a in enumerate(twists) for m in ring.monomials(d - a)]
    idx = {k: j for j, k in enumerate(keys)}
    rows = []
    for v in vectors:
        if not v:
            continue
        i, m0 = next(iter(v))
        deg = twists[i] + ring.wdeg(m0)
        for m in ring.monomials(d - deg):
            row = F.zeros(len(keys))
            for (c, mon), x in v.items():
                prod = tuple(a + b for a, b in zip(mon, m))
                row[idx[(c, prod)]] = F.add(row[idx[(c, prod)]], x)
            rows.append(row)
    return F.array(rows, len(keys)), keys


def _multiply(ring, v, m):
    F = ring.field
    out = {}
    for (c, mon), x in v.items():
        k = (c, tuple(a + b for a, b in zip(mon, m)))
        out[k] = F.add(out.get(k, F.zero), x)
    return out


def kernel_dim_of_columns(ring, target_twists, columns, column_degrees, d, relations=()):
    """dim of {a in S^r_d : sum a_j col_j in J*S^m} by direct linear algebra."""
    F = ring.field
    keys = [(i, m) for i, a in enumerate(target_twists) for m in ring.monomials(d - a)]
    idx = {k: j for j, k in enumerate(keys)}
    rows = []
    for col, e in zip(columns, column_degrees):
        for m in ring.monomials(d - e):
            row = F.zeros(len(keys))
            for k, x in _multiply(ring, col, m).items():
                row[idx[k]] = x
            rows.append(row)
    src_dim = len(rows)
    jvecs = [{(k, m): c for m, c in r.d.items()} for r in relations for k in range(len(target_twists))]
    jrows, _ = module_piece(ring, target_twists, jvecs, d)
    stacked = np.vstack([F.array(rows, len(keys)), jrows])
    if stacked.shape[0] == 0:
        return 0
    K = nullspace(F, stacked.T)
    return rank(F, K[:, :src_dim]) if K.shape[0] else 0


# -- minimal resolutions over a monomial Artin algebra, by plain linear algebra -----

class MonomialAlgebra:
    """k[x_1..x_n]/(monomial ideal) with multiplication done combinatorially.

    The ideal must contain a power of every variable.  Products are the
    exponent sum when it is not divisible by a generator, else zero.
    """

    def __init__(self, field, nvars, generators):
        self.F = field
        self.nvars = nvars
        self.gens = [tuple(g) for g in generators]
        bound = [max(g[i] for g in self.gens if sum(g) == g[i]) for i in range(nvars)]
        import itertools
        self.basis = [m for m in itertools.product(*[range(b) for b in bound]) if self.standard(m)]
        self.index = {m: i for i, m in enumerate(self.basis)}
        self.dim = len(self.basis)

    def standard(self, m):
        return not any(all(a >= b for a, b in zip(m, g)) for g in self.gens)

    def times_monomial(self, u, v):
        """u (a monomial) times v (a vector in A^r, length r*dim)."""
        out = self.F.zeros(len(v))
        for pos in np.flatnonzero(v != 0):
            j, i = divmod(int(pos), self.dim)
            prod = tuple(a + b for a, b in zip(u, self.basis[i]))
            if self.standard(prod):
                out[j * self.dim + self.index[prod]] = v[pos]
        return out

    def in_ideal(self, m, J):
        return any(all(a >= b for a, b in zip(m, g)) for g in J)

    def resolve_cyclic(self, J, n_max):
        """Minimal resolution of A/(J), J a list of monomial exponents.

        Returns (betti, maps) where maps[n] lists the images in A^{b_{n-1}}
        of the basis vectors of A^{b_n}, each a flat vector of length
        b_{n-1} * dim.
        """
        F = self.F
        J = [tuple(g) for g in J]
        # kernel of A -> A/J: spanned by the basis monomials lying in J
        inside = [m for m in self.basis if self.in_ideal(m, J)]
        K = F.zeros((len(inside), self.dim))
        for r, m in enumerate(inside):
            K[r, self.index[m]] = F.one
        betti, maps = [1], [None]
        variables = [tuple(1 if i == k else 0 for i in range(self.nvars)) for k in range(self.nvars)]
        while len(betti) <= n_max:
            width = K.shape[1]
            if K.shape[0] == 0:
                betti.append(0)
                maps.append([])
                K = F.zeros((0, 0))
                continue
            mK = F.array([self.times_monomial(x, v) for v in K for x in variables], width)
            r = rank(F, mK) if mK.shape[0] else 0
            gens, cur = [], mK
            for v in K:
                trial = np.vstack([cur, v[None, :]])
                if rank(F, trial) > r:
                    gens.append(v)
                    cur, r = trial, r + 1
            betti.append(len(gens))
            maps.append(gens)
            rows = [self.times_monomial(u, g) for g in gens for u in self.basis]
            K = nullspace(F, F.array(rows, width).T) if rows else F.zeros((0, 0))
        return betti, maps

    def betti_of_residue_field(self, n_max):
        """Ranks b_0..b_n_max of the minimal resolution of k."""
        unit = [tuple(1 if i == k else 0 for i in range(self.nvars)) for k in range(self.nvars)]
        return self.resolve_cyclic(unit, n_max)[0]

    def tor_cyclic(self, J1, J2, n_max):
        """dim Tor_n(A/J1, A/J2) for n <= n_max: the resolution of A/J1
        tensored with A/J2, whose basis is the standard monomials outside J2."""
        F = self.F
        betti, maps = self.resolve_cyclic(J1, n_max + 1)
        keep = [i for i, m in enumerate(self.basis) if not self.in_ideal(m, J2)]
        q = len(keep)

        def matrix(n):
            # (A/J2)^{b_n} -> (A/J2)^{b_{n-1}}, one row per source basis vector
            rows = []
            for g in maps[n]:
                for i in keep:
                    v = self.times_monomial(self.basis[i], g)
                    rows.append([v[j * self.dim + k] for j in range(betti[n - 1]) for k in keep])
            return F.array(rows, betti[n - 1] * q) if rows else F.zeros((0, betti[n - 1] * q))

        ranks = [0] + [rank(F, matrix(n)) if betti[n] and betti[n - 1] else 0 for n in range(1, n_max + 2)]
        return [betti[n] * q - ranks[n] - ranks[n + 1] for n in range(n_max + 1)]
