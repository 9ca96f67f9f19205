"""Gröbner bases of submodules of graded free modules over a polynomial ring.

A module element ("vector") is a dict ``{(component, monomial): coefficient}``.
Ideals are rank-one modules living in component 0.  The order on module
monomials is degree first (generator twist plus weighted monomial degree),
then an optional block number, then weighted grevlex on the monomial, then
position with lower components larger.  Block numbers turn the order into
an elimination order, which is how syzygies and cofactor tracking are
obtained from one Buchberger implementation.

Only homogeneous input is accepted by :func:`buchberger`; pairs are
processed degree by degree so a degree cap is meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import DegreeCapExceeded, NotHomogeneous, NotInIdeal, RingMismatch
from .poly import (PolyRing, Polynomial, mon_div, mon_divides, mon_lcm,
                   padd, pmul, pmul_term, psub)

DEFAULT_DEGREE_CAP = 24


class ModuleOrder:
    """Term order on monomials of a graded free module of given twists."""

    def __init__(self, ring: PolyRing, twists, blocks=None):
        self.ring = ring
        self.twists = tuple(twists)
        self.blocks = tuple(blocks) if blocks is not None else (0,) * len(self.twists)
        if len(self.blocks) != len(self.twists):
            raise ValueError("one block number per component")
        self._cache: dict = {}

    def degree(self, comp, mon) -> int:
        return self.twists[comp] + self.ring.wdeg(mon)

    def key(self, t):
        k = self._cache.get(t)
        if k is None:
            comp, mon = t
            k = (self.twists[comp] + self.ring.wdeg(mon), self.blocks[comp], self.ring.key(mon), -comp)
            self._cache[t] = k
        return k

    def lead(self, v: dict):
        return max(v, key=self.key)

    def vec_degree(self, v: dict) -> int:
        degs = {self.degree(c, m) for c, m in v}
        if len(degs) != 1:
            raise NotHomogeneous("module element is not homogeneous")
        return degs.pop()


# -- raw vector helpers --------------------------------------------------------

def vsub_scaled(F, v: dict, c, mon, g: dict) -> None:
    """In place: v -= c * mon * g."""
    zero = F.zero
    for (comp, m), x in g.items():
        t = (comp, tuple(a + b for a, b in zip(m, mon)))
        val = F.sub(v.get(t, zero), F.mul(c, x))
        if val == zero:
            v.pop(t, None)
        else:
            v[t] = val


def vscale(F, c, v: dict) -> dict:
    return {t: F.mul(c, x) for t, x in v.items()}


def vadd(F, a: dict, b: dict) -> dict:
    out = dict(a)
    for t, x in b.items():
        val = F.add(out.get(t, F.zero), x)
        if val == F.zero:
            out.pop(t, None)
        else:
            out[t] = val
    return out


def poly_times_vec(F, p: dict, v: dict) -> dict:
    out: dict = {}
    for mon, c in p.items():
        for (comp, m), x in v.items():
            t = (comp, tuple(a + b for a, b in zip(m, mon)))
            val = F.add(out.get(t, F.zero), F.mul(c, x))
            if val == F.zero:
                out.pop(t, None)
            else:
                out[t] = val
    return out


def poly_to_vec(p: dict, comp: int = 0) -> dict:
    return {(comp, m): c for m, c in p.items()}


def vec_component(v: dict, comp: int) -> dict:
    return {m: c for (k, m), c in v.items() if k == comp}


# -- Gröbner bases -----------------------------------------------------------------

@dataclass
class GroebnerBasis:
    ring: PolyRing
    order: ModuleOrder
    elements: list
    reduced: bool = True
    leads: list = dc_field(default_factory=list)

    def __post_init__(self):
        self.leads = [self.order.lead(g) for g in self.elements]
        self._by_comp: dict = {}
        for i, (comp, _) in enumerate(self.leads):
            self._by_comp.setdefault(comp, []).append(i)

    def __len__(self):
        return len(self.elements)

    def divisor(self, t, allowed=None):
        comp, mon = t
        for i in self._by_comp.get(comp, ()):
            if (allowed is None or i in allowed) and mon_divides(self.leads[i][1], mon):
                return i
        return None

    def normal_form(self, v: dict, record: bool = False):
        """Fully reduced remainder of v; with ``record`` also the cofactor
        polynomials so that v = sum(q_i * g_i) + remainder."""
        F = self.ring.field
        v = dict(v)
        rem: dict = {}
        quots = [dict() for _ in self.elements] if record else None
        key = self.order.key
        while v:
            t = max(v, key=key)
            i = self.divisor(t)
            if i is None:
                rem[t] = v.pop(t)
                continue
            g = self.elements[i]
            lt = self.leads[i]
            c = F.div(v[t], g[lt])
            qm = mon_div(t[1], lt[1])
            vsub_scaled(F, v, c, qm, g)
            if record:
                q = quots[i]
                val = F.add(q.get(qm, F.zero), c)
                if val == F.zero:
                    q.pop(qm, None)
                else:
                    q[qm] = val
        return (rem, quots) if record else rem

    def reduces_to_zero(self, v: dict) -> bool:
        return not self.normal_form(v)

    def is_standard(self, t) -> bool:
        return self.divisor(t) is None

    def lead_monomials(self) -> dict:
        """Component -> list of lead monomials."""
        out: dict = {}
        for comp, mon in self.leads:
            out.setdefault(comp, []).append(mon)
        return out

    def polynomials(self) -> list:
        """Generators of an ideal basis as Polynomials (component 0)."""
        return [Polynomial(self.ring, vec_component(g, 0)) for g in self.elements]


def _check_homogeneous(order: ModuleOrder, gens):
    degs = []
    for g in gens:
        degs.append(order.vec_degree(g))
    return degs


def buchberger(ring: PolyRing, gens, order: ModuleOrder, degree_cap: int = DEFAULT_DEGREE_CAP) -> GroebnerBasis:
    """Reduced Gröbner basis of the submodule generated by ``gens``.

    Degree-by-degree Buchberger with the Gebauer-Möller criteria (without the
    product criterion, which is unsound for modules).  Deterministic for a
    fixed input order.
    """
    F = ring.field
    gens = [dict(g) for g in gens if g]
    gdeg = _check_homogeneous(order, gens)
    pending = sorted(range(len(gens)), key=lambda i: (gdeg[i], i))
    G: list = []
    leads: list = []
    degs: list = []
    by_comp: dict = {}
    pairs: dict = {}  # (i, j) -> (degree, lcm)
    key = order.key

    def reduce_top(v):
        while v:
            t = max(v, key=key)
            for i in by_comp.get(t[0], ()):
                if mon_divides(leads[i][1], t[1]):
                    g = G[i]
                    vsub_scaled(F, v, v[t], mon_div(t[1], leads[i][1]), g)
                    break
            else:
                return t
        return None

    def add(v, lt):
        c = F.inv(v[lt])
        v = vscale(F, c, v)
        k = len(G)
        comp, mh = lt
        new = {}
        for i in by_comp.get(comp, ()):
            new[i] = mon_lcm(leads[i][1], mh)
        # criterion M
        drop = set()
        for i, li in new.items():
            for j, lj in new.items():
                if j != i and lj != li and mon_divides(lj, li):
                    drop.add(i)
                    break
        # criterion F: equal lcms keep one
        seen = {}
        for i in sorted(new):
            if i in drop:
                continue
            if new[i] in seen:
                drop.add(i)
            else:
                seen[new[i]] = i
        # criterion B on old pairs
        for (i, j), (_, lij) in list(pairs.items()):
            if leads[i][0] != comp or not mon_divides(mh, lij):
                continue
            if mon_lcm(leads[i][1], mh) != lij and mon_lcm(leads[j][1], mh) != lij:
                del pairs[(i, j)]
        for i, li in new.items():
            if i not in drop:
                pairs[(i, k)] = (order.degree(comp, li), li)
        G.append(v)
        leads.append(lt)
        degs.append(order.degree(*lt))
        by_comp.setdefault(comp, []).append(k)

    while pending or pairs:
        cands = [p[0] for p in pairs.values()]
        if pending:
            cands.append(gdeg[pending[0]])
        d = min(cands)
        if d > degree_cap:
            raise DegreeCapExceeded(d, degree_cap)
        while pending and gdeg[pending[0]] == d:
            v = dict(gens[pending.pop(0)])
            lt = reduce_top(v)
            if lt is not None:
                add(v, lt)
        while True:
            batch = [ij for ij, (dd, _) in pairs.items() if dd == d]
            if not batch:
                break
            i, j = min(batch)
            _, L = pairs.pop((i, j))
            gi, gj = G[i], G[j]
            comp = leads[i][0]
            v = {}
            vsub_scaled(F, v, F.neg(F.one), mon_div(L, leads[i][1]), gi)
            vsub_scaled(F, v, F.one, mon_div(L, leads[j][1]), gj)
            lt = reduce_top(v)
            if lt is not None:
                add(v, lt)
    return GroebnerBasis(ring, order, interreduce(ring, order, G), reduced=True)


def interreduce(ring: PolyRing, order: ModuleOrder, G: list) -> list:
    """Minimal, tail-reduced, monic basis sorted by increasing lead term."""
    F = ring.field
    items = [(order.lead(g), g) for g in G if g]
    items.sort(key=lambda it: order.key(it[0]))
    minimal = []
    for lt, g in items:
        if any(l2[0] == lt[0] and mon_divides(l2[1], lt[1]) for l2, _ in minimal):
            continue
        minimal.append((lt, g))
    basis = GroebnerBasis(ring, order, [g for _, g in minimal], reduced=False)
    out = []
    for idx, (lt, g) in enumerate(minimal):
        others = set(range(len(minimal))) - {idx}
        v = dict(g)
        rem = {lt: v.pop(lt)}
        while v:
            t = max(v, key=order.key)
            i = basis.divisor(t, others)
            if i is None:
                rem[t] = v.pop(t)
                continue
            h = basis.elements[i]
            hl = basis.leads[i]
            vsub_scaled(F, v, F.div(v[t], h[hl]), mon_div(t[1], hl[1]), h)
        out.append(vscale(F, F.inv(rem[lt]), rem))
    return out


# -- ideals -------------------------------------------------------------------------

def ideal_order(ring: PolyRing) -> ModuleOrder:
    return ModuleOrder(ring, (0,))


def ideal_gb(ring: PolyRing, polys, degree_cap: int = DEFAULT_DEGREE_CAP) -> GroebnerBasis:
    vecs = []
    for p in polys:
        p = ring(p)
        if not p.is_homogeneous():
            raise NotHomogeneous(f"{p} is not homogeneous")
        vecs.append(poly_to_vec(p.d))
    return buchberger(ring, vecs, ideal_order(ring), degree_cap)


def normal_form(p: Polynomial, gb: GroebnerBasis):
    """Remainder and cofactors of a polynomial against an ideal basis."""
    if p.ring != gb.ring:
        raise RingMismatch("polynomial and basis live in different rings")
    rem, quots = gb.normal_form(poly_to_vec(p.d), record=True)
    return (Polynomial(p.ring, vec_component(rem, 0)),
            [Polynomial(p.ring, q) for q in quots])


class IdealMembership:
    """Cofactor extraction against a fixed generator list f_1..f_c.

    A Gröbner basis of the graph module {(sum a_i f_i, a)} is computed with
    the polynomial component eliminating the cofactor components.  Basis
    elements led by the polynomial component carry, in their cofactor part,
    an expression of their polynomial part in the original generators.
    """

    def __init__(self, ring: PolyRing, gens, degree_cap: int = DEFAULT_DEGREE_CAP):
        self.ring = ring
        self.gens = [ring(g) for g in gens]
        degs = []
        for g in self.gens:
            if g.is_zero():
                raise ValueError("zero generator")
            degs.append(g.homogeneous_degree())
        self.degrees = degs
        c = len(self.gens)
        order = ModuleOrder(ring, (0,) + tuple(degs), (1,) + (0,) * c)
        graph = []
        for i, g in enumerate(self.gens):
            v = poly_to_vec(g.d)
            v[(i + 1, ring.unit_mon)] = ring.field.one
            graph.append(v)
        gb = buchberger(ring, graph, order, degree_cap)
        self.basis = []
        self.cofactors = []
        for g in gb.elements:
            if gb.order.lead(g)[0] == 0:
                self.basis.append(vec_component(g, 0))
                self.cofactors.append([vec_component(g, i + 1) for i in range(c)])
        self._gb = GroebnerBasis(ring, ideal_order(ring), [poly_to_vec(b) for b in self.basis], reduced=False)

    def remainder(self, p: Polynomial) -> Polynomial:
        return Polynomial(self.ring, vec_component(self._gb.normal_form(poly_to_vec(p.d)), 0))

    def express(self, p: Polynomial) -> list:
        """h_1..h_c with p = sum h_i f_i exactly."""
        p = self.ring(p)
        F = self.ring.field
        rem, quots = self._gb.normal_form(poly_to_vec(p.d), record=True)
        if rem:
            raise NotInIdeal(f"{p} is not in the ideal {[str(g) for g in self.gens]}")
        hs = [dict() for _ in self.gens]
        for q, cof in zip(quots, self.cofactors):
            if not q:
                continue
            for i, a in enumerate(cof):
                if a:
                    hs[i] = padd(F, hs[i], pmul(F, q, a))
        return [Polynomial(self.ring, h) for h in hs]


def express_in_ideal(p: Polynomial, gens) -> list:
    """Coefficients (h_1..h_c) with p = sum h_i * gens[i]."""
    return IdealMembership(p.ring, gens).express(p)


# -- syzygies -------------------------------------------------------------------------

def syzygy_vectors(ring: PolyRing, target_twists, columns, column_degrees, relations=(),
                   degree_cap: int = DEFAULT_DEGREE_CAP) -> list:
    """Generators of {a in S^r : sum a_j columns[j] in J * S^m}, J = (relations).

    Columns are vectors in the free module with ``target_twists``; the result
    lives in S^r with twists ``column_degrees`` and is neither reduced modulo
    J nor minimal.
    """
    m, r = len(target_twists), len(columns)
    order = ModuleOrder(ring, tuple(target_twists) + tuple(column_degrees), (1,) * m + (0,) * r)
    gens = []
    for j, col in enumerate(columns):
        v = dict(col)
        v[(m + j, ring.unit_mon)] = ring.field.one
        gens.append(v)
    for p in relations:
        pd = p.d if isinstance(p, Polynomial) else p
        for k in range(m):
            gens.append(poly_to_vec(pd, k))
    gb = buchberger(ring, gens, order, degree_cap)
    out = []
    for g in gb.elements:
        if gb.order.lead(g)[0] >= m:
            out.append({(c - m, mon): x for (c, mon), x in g.items()})
    return out


# -- Hilbert series -------------------------------------------------------------------------

def _poly_t_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _minimalize(mons):
    mons = sorted(set(mons), key=lambda m: (sum(m), m))
    out = []
    for m in mons:
        if not any(mon_divides(n, m) for n in out):
            out.append(m)
    return out


def _monomial_numerator(ring: PolyRing, mons, memo) -> dict:
    """Numerator N with HS(S/(mons)) = N / prod(1 - t^w)."""
    gens = tuple(_minimalize(mons))
    got = memo.get(gens)
    if got is not None:
        return got
    if not gens:
        res = {0: 1}
    elif all(sum(1 for e in m if e) == 1 for m in gens):
        # pure powers of distinct variables (after minimalization they are distinct)
        res = {0: 1}
        for m in gens:
            res = _poly_t_mul(res, {0: 1, ring.wdeg(m): -1})
    else:
        *rest, last = gens
        colon = [mon_div(mon_lcm(m, last), last) for m in rest]
        a = _monomial_numerator(ring, rest, memo)
        b = _monomial_numerator(ring, colon, memo)
        res = dict(a)
        shift = ring.wdeg(last)
        for k, v in b.items():
            res[k + shift] = res.get(k + shift, 0) - v
        res = {k: v for k, v in res.items() if v}
    memo[gens] = res
    return res


@dataclass(frozen=True)
class HilbertSeries:
    """numerator(t) / prod_j (1 - t^{w_j}); numerator exponents may be negative."""

    numerator: tuple  # sorted ((exponent, coefficient), ...)
    weights: tuple

    @classmethod
    def make(cls, num: dict, weights) -> "HilbertSeries":
        return cls(tuple(sorted((k, v) for k, v in num.items() if v)), tuple(weights))

    def coefficients(self, lo: int, hi: int) -> dict:
        """Expansion coefficients for degrees lo..hi."""
        if hi < lo:
            return {}
        num = dict(self.numerator)
        start = min(num) if num else 0
        series = [0] * (hi - start + 1)
        for k, v in num.items():
            if k <= hi:
                series[k - start] += v
        for w in self.weights:
            for i in range(w, len(series)):
                series[i] += series[i - w]
        return {d: series[d - start] if d >= start else 0 for d in range(lo, hi + 1)}

    def numerator_dict(self) -> dict:
        return dict(self.numerator)

    def __str__(self):
        def fmt(num):
            parts = []
            for k, v in num:
                mon = "1" if k == 0 else ("t" if k == 1 else f"t^{k}")
                coef = "" if abs(v) == 1 and k != 0 else str(abs(v))
                body = (coef + ("*" if coef and mon != "1" else "") + (mon if mon != "1" or not coef else "")) or "1"
                parts.append(("-" if v < 0 else "+", body))
            if not parts:
                return "0"
            s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
            for sign, body in parts[1:]:
                s += f" {sign} {body}"
            return s
        den = "".join(f"(1-t^{w})" if w != 1 else "(1-t)" for w in self.weights)
        return f"({fmt(self.numerator)}) / {den}"


def hilbert_series_of_leads(ring: PolyRing, twists, lead_monomials: dict) -> HilbertSeries:
    """Series of a quotient of the free module with ``twists`` by a
    submodule with the given leading monomials (component -> list)."""
    memo: dict = {}
    total: dict = {}
    for comp, a in enumerate(twists):
        num = _monomial_numerator(ring, lead_monomials.get(comp, []), memo)
        for k, v in num.items():
            total[k + a] = total.get(k + a, 0) + v
    return HilbertSeries.make(total, ring.weights)


def hilbert_series(ring: PolyRing, polys) -> HilbertSeries:
    """Hilbert series of S/(polys)."""
    gb = ideal_gb(ring, polys)
    return hilbert_series_of_leads(ring, (0,), gb.lead_monomials())


def is_regular_sequence(polys, ring: PolyRing | None = None) -> bool:
    """Graded Koszul criterion: HS(S/I) == prod(1 - t^{d_i}) / prod(1 - t^{w_j})."""
    polys = list(polys)
    if ring is None:
        ring = polys[0].ring
    polys = [ring(p) for p in polys]
    degs = []
    for p in polys:
        if p.is_zero():
            return False
        if not p.is_homogeneous():
            raise NotHomogeneous(f"{p} is not homogeneous")
        d = p.homogeneous_degree()
        if d == 0:
            return False
        degs.append(d)
    expected = {0: 1}
    for d in degs:
        expected = _poly_t_mul(expected, {0: 1, d: -1})
    return hilbert_series(ring, polys) == HilbertSeries.make(expected, ring.weights)
