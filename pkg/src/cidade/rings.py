"""Quotients S/J of a graded polynomial ring and the ring tower S -> R = S/I."""

from __future__ import annotations

from .errors import NotHomogeneous, NotRegularSequence, RingMismatch
from .fields import Field, FieldEmbedding
from .groebner import (DEFAULT_DEGREE_CAP, HilbertSeries, hilbert_series_of_leads,
                       ideal_gb, is_regular_sequence, poly_to_vec, vec_component)
from .poly import PolyRing, Polynomial, padd, pscale


class QuotientRing:
    """S/J with J generated by homogeneous ``relations`` (J = 0 allowed)."""

    def __init__(self, base: PolyRing, relations=(), degree_cap: int = DEFAULT_DEGREE_CAP):
        rels = []
        for r in relations:
            r = base(r)
            if r.ring != base:
                raise RingMismatch("relation lives in a different ring")
            if r.is_zero():
                continue
            if not r.is_homogeneous():
                raise NotHomogeneous(f"relation {r} is not homogeneous")
            rels.append(r)
        self.base = base
        self.relations = tuple(rels)
        self.gb = ideal_gb(base, rels, degree_cap) if rels else None
        self._gb_key = tuple(sorted(tuple(sorted(g.items())) for g in self.gb.elements)) if self.gb else ()
        self._nf: dict = {}
        self._basis: dict = {}
        self._top = "unset"

    @property
    def field(self) -> Field:
        return self.base.field

    @property
    def is_polynomial_ring(self) -> bool:
        return self.gb is None

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.base == other.base and self._gb_key == other._gb_key

    def __hash__(self):
        return hash((self.base, self._gb_key))

    def __repr__(self):
        if not self.relations:
            return repr(self.base)
        return f"{self.base!r}/({', '.join(str(r) for r in self.relations)})"

    def is_standard(self, mon) -> bool:
        return self.gb is None or self.gb.is_standard((0, mon))

    def _nf_mon(self, mon) -> dict:
        got = self._nf.get(mon)
        if got is None:
            if self.is_standard(mon):
                got = {mon: self.field.one}
            else:
                got = vec_component(self.gb.normal_form({(0, mon): self.field.one}), 0)
            self._nf[mon] = got
        return got

    def reduce(self, p) -> dict:
        """Normal form of a polynomial (Polynomial or raw dict) as a raw dict."""
        d = p.d if isinstance(p, Polynomial) else p
        if self.gb is None:
            return dict(d)
        F = self.field
        out: dict = {}
        for mon, c in d.items():
            nf = self._nf_mon(mon)
            if len(nf) == 1 and mon in nf:
                val = F.add(out.get(mon, F.zero), F.mul(c, nf[mon]))
                if val == F.zero:
                    out.pop(mon, None)
                else:
                    out[mon] = val
            else:
                out = padd(F, out, pscale(F, c, nf))
        return out

    def element(self, p) -> Polynomial:
        return Polynomial(self.base, self.reduce(self.base(p) if not isinstance(p, dict) else p))

    def contains(self, p) -> bool:
        """True if p lies in J."""
        return not self.reduce(p)

    def basis(self, d: int) -> tuple:
        """Standard monomials of degree d, largest first."""
        got = self._basis.get(d)
        if got is None:
            got = tuple(m for m in self.base.monomials(d) if self.is_standard(m))
            self._basis[d] = got
        return got

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def lead_monomials(self) -> list:
        return self.gb.lead_monomials().get(0, []) if self.gb else []

    def top_degree(self):
        """Largest degree with a nonzero piece, or None if S/J is infinite-dimensional."""
        if self._top != "unset":
            return self._top
        self._top = _top_degree(self.base, self.lead_monomials(), 0)
        return self._top

    def is_artinian(self) -> bool:
        return self.top_degree() is not None

    def hilbert_series(self) -> HilbertSeries:
        return hilbert_series_of_leads(self.base, (0,), {0: self.lead_monomials()})

    def with_relations(self, extra) -> "QuotientRing":
        return QuotientRing(self.base, list(self.relations) + [self.base(e) for e in extra])

    def is_quotient_of(self, other: "QuotientRing") -> bool:
        """True if other's relations vanish here, i.e. this ring is other / (more)."""
        return self.base == other.base and all(self.contains(r) for r in other.relations)

    def base_change(self, emb: FieldEmbedding) -> "QuotientRing":
        base2 = self.base.with_field(emb.target)
        return QuotientRing(base2, [r.map_coefficients(base2, emb) for r in self.relations])

    def describe(self) -> dict:
        return {"field": self.field.describe(), "variables": list(self.base.names),
                "weights": list(self.base.weights), "relations": [str(r) for r in self.relations]}


def _top_degree(base: PolyRing, leads, twist: int):
    """Top degree of S(-twist)/(monomial ideal) or None when infinite."""
    n = base.nvars
    pure = [None] * n
    for m in leads:
        nz = [i for i, e in enumerate(m) if e]
        if len(nz) == 1:
            i = nz[0]
            pure[i] = m[i] if pure[i] is None else min(pure[i], m[i])
        elif not nz:
            return -10**9  # the unit ideal: no nonzero degree at all
    if any(p is None for p in pure):
        return None
    bound = sum(w * (e - 1) for w, e in zip(base.weights, pure))
    for d in range(bound, -1, -1):
        for mon in base.monomials(d):
            if not any(all(a >= b for a, b in zip(mon, l)) for l in leads):
                return d + twist
    return -10**9


class RingTower:
    """S, a homogeneous regular sequence f_1..f_c in S, and R = S/(f_1..f_c)."""

    def __init__(self, base: PolyRing, ideal_gens, check: bool = True):
        gens = [base(g) for g in ideal_gens]
        if not gens:
            raise NotRegularSequence("a tower needs at least one ideal generator")
        for g in gens:
            if g.is_zero():
                raise NotRegularSequence("zero generator")
            if not g.is_homogeneous():
                raise NotHomogeneous(f"generator {g} is not homogeneous")
            if g.homogeneous_degree() < 2:
                raise NotRegularSequence(f"generator {g} must have degree at least 2")
        if check and not is_regular_sequence(gens, base):
            raise NotRegularSequence(f"({', '.join(map(str, gens))}) is not a regular sequence")
        self.base = base
        self.gens = tuple(gens)
        self.S = QuotientRing(base)
        self.R = QuotientRing(base, gens)

    @property
    def c(self) -> int:
        return len(self.gens)

    @property
    def field(self) -> Field:
        return self.base.field

    @property
    def degrees(self) -> tuple:
        return tuple(g.homogeneous_degree() for g in self.gens)

    def hypersurface(self, f) -> QuotientRing:
        return QuotientRing(self.base, [self.base(f)])

    def intermediate(self, polys) -> QuotientRing:
        return QuotientRing(self.base, [self.base(p) for p in polys])

    def base_change(self, emb: FieldEmbedding) -> "RingTower":
        base2 = self.base.with_field(emb.target)
        return RingTower(base2, [g.map_coefficients(base2, emb) for g in self.gens], check=False)

    def describe(self) -> dict:
        d = self.R.describe()
        d.pop("relations")
        d["ideal"] = [str(g) for g in self.gens]
        return d

    def __repr__(self):
        return f"RingTower({self.R!r})"


def to_vec(p: Polynomial, comp: int = 0) -> dict:
    return poly_to_vec(p.d, comp)
