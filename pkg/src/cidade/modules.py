"""Graded free modules, homogeneous matrices and finitely presented modules.

Matrix entries are raw polynomial dicts already in normal form for the
matrix's ring.  A map of degree ``delta`` has entry (i, j) homogeneous of
degree ``source[j] + delta - target[i]``; maps built from inhomogeneous lifts
skip that check and are flagged ``homogeneous = False``.
"""

from __future__ import annotations

import numpy as np

from .errors import NotHomogeneous, RingMismatch
from .fields import FieldEmbedding
from .groebner import (DEFAULT_DEGREE_CAP, HilbertSeries, ModuleOrder, buchberger,
                       hilbert_series_of_leads, poly_to_vec, syzygy_vectors)
from .linalg import rank
from .poly import Polynomial, format_polynomial, padd, pmul, pscale, psub
from .rings import QuotientRing, _top_degree


class GradedFreeModule:
    """A free module over ``ring`` with generators in degrees ``twists``."""

    __slots__ = ("ring", "twists")

    def __init__(self, ring: QuotientRing, twists):
        self.ring = ring
        self.twists = tuple(int(t) for t in twists)

    @property
    def rank(self) -> int:
        return len(self.twists)

    def __eq__(self, other):
        return isinstance(other, GradedFreeModule) and self.ring == other.ring and self.twists == other.twists

    def __hash__(self):
        return hash((self.ring, self.twists))

    def __repr__(self):
        return f"GradedFreeModule(rank={self.rank}, twists={list(self.twists)})"


def _entry_degree(d: dict, ring):
    degs = {ring.base.wdeg(m) for m in d}
    return degs.pop() if len(degs) == 1 else None


class GradedMatrix:
    """Homogeneous map ``source -> target`` between graded free modules."""

    __slots__ = ("ring", "target", "source", "entries", "degree", "homogeneous")

    def __init__(self, ring: QuotientRing, target, source, entries, degree: int = 0,
                 check: bool = True, reduce: bool = True):
        self.ring = ring
        self.target = tuple(target)
        self.source = tuple(source)
        self.degree = int(degree)
        rows = []
        for row in entries:
            row = [e.d if isinstance(e, Polynomial) else e for e in row]
            if reduce:
                row = [ring.reduce(e) for e in row]
            rows.append(tuple(row))
        if len(rows) != len(self.target) or any(len(r) != len(self.source) for r in rows):
            raise ValueError(f"entries do not match a {len(self.target)}x{len(self.source)} shape")
        self.entries = tuple(rows)
        homog = True
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if not e:
                    continue
                want = self.source[j] + self.degree - self.target[i]
                if _entry_degree(e, ring) != want:
                    if check:
                        raise NotHomogeneous(
                            f"entry ({i},{j}) = {format_polynomial(ring.base, e)} should be homogeneous of degree {want}")
                    homog = False
        self.homogeneous = homog

    # -- constructors ------------------------------------------------------------
    @classmethod
    def from_columns(cls, ring, target, source, columns, degree=0, check=True, reduce=True):
        entries = [[{} for _ in columns] for _ in target]
        for j, col in enumerate(columns):
            for (i, mon), c in col.items():
                entries[i][j][mon] = c
        return cls(ring, target, source, entries, degree, check, reduce)

    @classmethod
    def zero(cls, ring, target, source, degree=0):
        return cls(ring, target, source, [[{} for _ in source] for _ in target], degree, reduce=False)

    @classmethod
    def identity(cls, ring, twists):
        one = {ring.base.unit_mon: ring.field.one}
        return cls(ring, twists, twists, [[dict(one) if i == j else {} for j in range(len(twists))]
                                          for i in range(len(twists))], reduce=False)

    @classmethod
    def block(cls, ring, blocks, degree=0, check=True):
        """Assemble a block matrix from a 2-d list of GradedMatrix (None = zero)."""
        heights = []
        for r, brow in enumerate(blocks):
            h = next((b.target for b in brow if b is not None), None)
            if h is None:
                raise ValueError(f"block row {r} is entirely zero")
            heights.append(h)
        widths = []
        for c in range(len(blocks[0])):
            w = next((brow[c].source for brow in blocks if brow[c] is not None), None)
            if w is None:
                raise ValueError(f"block column {c} is entirely zero")
            widths.append(w)
        target = sum(heights, ())
        source = sum(widths, ())
        entries = []
        for r, brow in enumerate(blocks):
            for i in range(len(heights[r])):
                row = []
                for c, b in enumerate(brow):
                    row.extend(b.entries[i] if b is not None else [{}] * len(widths[c]))
                entries.append(row)
        return cls(ring, target, source, entries, degree, check, reduce=False)

    # -- accessors ----------------------------------------------------------------
    @property
    def shape(self):
        return (len(self.target), len(self.source))

    def entry(self, i, j) -> Polynomial:
        return Polynomial(self.ring.base, self.entries[i][j])

    def column(self, j) -> dict:
        return {(i, m): c for i, row in enumerate(self.entries) for m, c in row[j].items()}

    def columns(self) -> list:
        return [self.column(j) for j in range(len(self.source))]

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def unit_positions(self):
        """(row, col) of entries that are nonzero constants, in row-major order."""
        u = self.ring.base.unit_mon
        return [(i, j) for i, row in enumerate(self.entries) for j, e in enumerate(row)
                if len(e) == 1 and u in e]

    def is_minimal(self) -> bool:
        """No entry has a nonzero constant term."""
        u = self.ring.base.unit_mon
        return all(u not in e for row in self.entries for e in row)

    # -- arithmetic -----------------------------------------------------------------
    def _same(self, other):
        if self.ring != other.ring:
            raise RingMismatch("matrices over different rings")
        if self.shape != other.shape:
            raise ValueError("matrix shapes differ")

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        """Composition ``self o other``."""
        if self.ring != other.ring:
            raise RingMismatch("matrices over different rings")
        if len(self.source) != len(other.target):
            raise ValueError("incompatible shapes for composition")
        F = self.ring.field
        out = []
        for i in range(len(self.target)):
            row = []
            for j in range(len(other.source)):
                acc: dict = {}
                for k in range(len(self.source)):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = padd(F, acc, pmul(F, a, b))
                row.append(acc)
            out.append(row)
        homog = self.homogeneous and other.homogeneous and self.source == other.target
        return GradedMatrix(self.ring, self.target, other.source, out, self.degree + other.degree,
                            check=homog)

    def _combine(self, other, op):
        self._same(other)
        F = self.ring.field
        rows = [[op(F, a, b) for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)]
        return GradedMatrix(self.ring, self.target, self.source, rows, self.degree,
                            check=self.homogeneous and other.homogeneous, reduce=False)

    def __add__(self, other):
        return self._combine(other, padd)

    def __sub__(self, other):
        return self._combine(other, psub)

    def __neg__(self):
        F = self.ring.field
        return self.scale(F.neg(F.one))

    def scale(self, c) -> "GradedMatrix":
        F = self.ring.field
        rows = [[pscale(F, c, e) for e in row] for row in self.entries]
        return GradedMatrix(self.ring, self.target, self.source, rows, self.degree,
                            check=self.homogeneous, reduce=False)

    def times(self, p) -> "GradedMatrix":
        """Multiply every entry by a polynomial (degree grows by deg p)."""
        p = self.ring.base(p)
        F = self.ring.field
        rows = [[pmul(F, e, p.d) for e in row] for row in self.entries]
        deg = p.homogeneous_degree()
        return GradedMatrix(self.ring, self.target, self.source, rows,
                            self.degree + (deg or 0), check=self.homogeneous and deg is not None)

    def __eq__(self, other):
        return (isinstance(other, GradedMatrix) and self.ring == other.ring
                and self.shape == other.shape and self.entries == other.entries)

    def __hash__(self):
        return hash((self.shape, tuple(tuple(tuple(sorted(e.items())) for e in r) for r in self.entries)))

    # -- ring changes -------------------------------------------------------------------
    def over(self, ring: QuotientRing, check: bool | None = None) -> "GradedMatrix":
        """Entrywise normal form in another quotient of the same base ring."""
        if ring.base != self.ring.base:
            raise RingMismatch("different base rings")
        return GradedMatrix(ring, self.target, self.source, self.entries, self.degree,
                            check=self.homogeneous if check is None else check)

    def lift(self) -> "GradedMatrix":
        """The same entries viewed over the polynomial ring (canonical lift)."""
        return GradedMatrix(QuotientRing(self.ring.base), self.target, self.source, self.entries,
                            self.degree, check=self.homogeneous, reduce=False)

    def submatrix(self, rows, cols) -> "GradedMatrix":
        rows, cols = list(rows), list(cols)
        return GradedMatrix(self.ring, [self.target[i] for i in rows], [self.source[j] for j in cols],
                            [[self.entries[i][j] for j in cols] for i in rows], self.degree,
                            check=self.homogeneous, reduce=False)

    def with_twists(self, target, source, degree=None) -> "GradedMatrix":
        return GradedMatrix(self.ring, target, source, self.entries,
                            self.degree if degree is None else degree, check=self.homogeneous, reduce=False)

    def base_change(self, ring: QuotientRing, emb: FieldEmbedding) -> "GradedMatrix":
        rows = [[{m: emb(c) for m, c in e.items()} for e in row] for row in self.entries]
        return GradedMatrix(ring, self.target, self.source, rows, self.degree, check=self.homogeneous)

    def to_strings(self) -> list:
        return [[format_polynomial(self.ring.base, e) for e in row] for row in self.entries]

    def __repr__(self):
        body = "; ".join(", ".join(r) for r in self.to_strings())
        return f"GradedMatrix({len(self.target)}x{len(self.source)}, [{body}])"


# -- degreewise linear algebra on free modules -------------------------------------------

def free_basis(ring: QuotientRing, twists, d: int) -> list:
    """Basis keys (component, monomial) of the degree-d piece of a free module."""
    return [(i, m) for i, a in enumerate(twists) for m in ring.basis(d - a)]


def vector_degree(ring: QuotientRing, twists, v: dict):
    degs = {twists[i] + ring.base.wdeg(m) for i, m in v}
    return degs.pop() if len(degs) == 1 else None


def reduce_vector(ring: QuotientRing, v: dict) -> dict:
    comps: dict = {}
    for (i, m), c in v.items():
        comps.setdefault(i, {})[m] = c
    out = {}
    for i, p in comps.items():
        for m, c in ring.reduce(p).items():
            out[(i, m)] = c
    return out


def minimal_columns(ring: QuotientRing, twists, columns) -> list:
    """Indices of a minimal homogeneous generating subset of the columns.

    Columns are scanned by increasing degree (stable); a column is kept when
    it is not in the degree-d span of ring multiples of the kept ones.
    """
    F = ring.field
    degs = []
    for v in columns:
        degs.append(vector_degree(ring, twists, v) if v else None)
    order = sorted((j for j, v in enumerate(columns) if v), key=lambda j: (degs[j], j))
    kept: list = []
    spans: dict = {}  # degree -> (index, rows)
    for j in order:
        d = degs[j]
        if d not in spans:
            basis = free_basis(ring, twists, d)
            idx = {k: n for n, k in enumerate(basis)}
            rows = []
            for k in kept:
                for u in ring.basis(d - degs[k]):
                    rows.append(_coords(ring, idx, _mon_times(ring, u, columns[k])))
            spans[d] = (idx, rows)
        idx, rows = spans[d]
        vec = _coords(ring, idx, columns[j])
        before = rank(F, np.array(rows, dtype=F.dtype)) if rows else 0
        after = rank(F, np.array(rows + [vec], dtype=F.dtype))
        if after > before:
            kept.append(j)
            rows.append(vec)
            # higher degrees cached later must see this column too
            for e in list(spans):
                if e > d:
                    del spans[e]
    return sorted(kept)


def _mon_times(ring: QuotientRing, u, v: dict) -> dict:
    prod = {}
    for (i, m), c in v.items():
        prod.setdefault(i, {})[tuple(a + b for a, b in zip(u, m))] = c
    out = {}
    for i, p in prod.items():
        for m, c in ring.reduce(p).items():
            out[(i, m)] = c
    return out


def _coords(ring: QuotientRing, idx: dict, v: dict) -> list:
    F = ring.field
    row = [F.zero] * len(idx)
    for k, c in v.items():
        row[idx[k]] = c
    return row


def syzygies(m: GradedMatrix, degree_cap: int = DEFAULT_DEGREE_CAP, minimal: bool = True) -> GradedMatrix:
    """A matrix whose columns generate the kernel of ``m`` (minimally by default)."""
    ring = m.ring
    if not m.homogeneous:
        raise NotHomogeneous("syzygies need a homogeneous matrix")
    vecs = syzygy_vectors(ring.base, m.target, m.columns(), [s + m.degree for s in m.source],
                          ring.relations, degree_cap)
    vecs = [reduce_vector(ring, v) for v in vecs]
    vecs = [v for v in vecs if v]
    if minimal:
        keep = minimal_columns(ring, m.source, vecs)
        vecs = [vecs[j] for j in keep]
    vecs.sort(key=lambda v: vector_degree(ring, m.source, v))
    degs = [vector_degree(ring, m.source, v) for v in vecs]
    return GradedMatrix.from_columns(ring, m.source, degs, vecs, reduce=False)


def minimal_presentation(ring: QuotientRing, twists, columns):
    """Cancel unit entries and prune redundant relations.

    Returns (twists, columns) of an isomorphic cokernel presentation whose
    generators are minimal and whose relation columns are minimal.
    """
    F = ring.field
    unit = ring.base.unit_mon
    twists = list(twists)
    cols = [reduce_vector(ring, c) for c in columns]
    cols = [c for c in cols if c]
    while True:
        hit = None
        for j, col in enumerate(cols):
            for (i, m), c in col.items():
                if m == unit:
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            break
        i, j = hit
        pivot = cols[j]
        u = pivot[(i, unit)]
        new_cols = []
        for k, col in enumerate(cols):
            if k == j:
                continue
            coef = {m: c for (r, m), c in col.items() if r == i}
            if coef:
                scale = pscale(F, F.neg(F.inv(u)), coef)
                col = dict(col)
                for (r, m2), c2 in pivot.items():
                    for m1, c1 in scale.items():
                        key = (r, tuple(a + b for a, b in zip(m1, m2)))
                        val = F.add(col.get(key, F.zero), F.mul(c1, c2))
                        if val == F.zero:
                            col.pop(key, None)
                        else:
                            col[key] = val
            col = {(r - (r > i), m): c for (r, m), c in col.items() if r != i}
            col = reduce_vector(ring, col)
            if col:
                new_cols.append(col)
        cols = new_cols
        del twists[i]
    keep = minimal_columns(ring, twists, cols)
    cols = [cols[j] for j in keep]
    cols.sort(key=lambda v: vector_degree(ring, twists, v))
    return tuple(twists), cols


# -- finitely presented modules -------------------------------------------------------------

class PresentedModule:
    """coker(P) for a homogeneous matrix P over a quotient ring A = S/J.

    Internally the module is S^m / U with U = im(P) + J*S^m, and a Gröbner
    basis of U gives k-bases of every graded piece.  The same object serves
    as a module over any ring S/J' with J' contained in the annihilator, see
    :meth:`over`.
    """

    def __init__(self, ring: QuotientRing, twists, columns=(), name: str | None = None,
                 degree_cap: int = DEFAULT_DEGREE_CAP):
        self.ring = ring
        self.base = ring.base
        self.twists = tuple(int(t) for t in twists)
        self.columns = [reduce_vector(ring, dict(c)) for c in columns]
        self.columns = [c for c in self.columns if c]
        for c in self.columns:
            if vector_degree(ring, self.twists, c) is None:
                raise NotHomogeneous("presentation columns must be homogeneous")
        self.name = name
        gens = list(self.columns)
        for r in ring.relations:
            for k in range(len(self.twists)):
                gens.append(poly_to_vec(r.d, k))
        self.gb = buchberger(self.base, gens, ModuleOrder(self.base, self.twists), degree_cap)
        self._nf: dict = {}
        self._basis: dict = {}
        self._top = "unset"

    # -- constructors -----------------------------------------------------------------
    @classmethod
    def coker(cls, m: GradedMatrix, name=None) -> "PresentedModule":
        return cls(m.ring, m.target, m.columns(), name)

    @classmethod
    def free(cls, ring: QuotientRing, twists=(0,), name=None) -> "PresentedModule":
        return cls(ring, twists, (), name)

    @classmethod
    def cyclic(cls, ring: QuotientRing, polys, name=None) -> "PresentedModule":
        """ring / (polys)."""
        cols = [poly_to_vec(ring.base(p).d, 0) for p in polys]
        return cls(ring, (0,), cols, name)

    @classmethod
    def residue_field(cls, ring: QuotientRing, name="k") -> "PresentedModule":
        return cls.cyclic(ring, ring.base.gens(), name)

    # -- structure ---------------------------------------------------------------------
    @property
    def field(self):
        return self.base.field

    @property
    def rank(self) -> int:
        return len(self.twists)

    def leads(self) -> dict:
        return self.gb.lead_monomials()

    def is_zero(self) -> bool:
        leads = self.leads()
        u = self.base.unit_mon
        return all(u in leads.get(i, []) for i in range(self.rank))

    def top_degree(self):
        """Top nonzero degree, None if of infinite length."""
        if self._top != "unset":
            return self._top
        leads = self.leads()
        tops = []
        for i, a in enumerate(self.twists):
            t = _top_degree(self.base, leads.get(i, []), a)
            if t is None:
                self._top = None
                return None
            tops.append(t)
        self._top = max(tops) if tops else -10**9
        return self._top

    def is_finite_length(self) -> bool:
        return self.top_degree() is not None

    def low_degree(self):
        """Smallest degree with a nonzero piece (None for the zero module)."""
        if self.is_zero():
            return None
        d = min(self.twists)
        while not self.basis(d):
            d += 1
        return d

    def basis(self, d: int) -> tuple:
        got = self._basis.get(d)
        if got is None:
            got = tuple((i, m) for i, a in enumerate(self.twists) for m in self.base.monomials(d - a)
                        if self.gb.is_standard((i, m)))
            self._basis[d] = got
        return got

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def degrees(self, bound: int | None = None) -> list:
        """Degrees with nonzero pieces; infinite modules are cut at low + bound."""
        low = self.low_degree()
        if low is None:
            return []
        top = self.top_degree()
        if top is None:
            if bound is None:
                raise ValueError("module has infinite length; a degree bound is required")
            top = low + bound
        return [d for d in range(low, top + 1) if self.basis(d)]

    def total_basis(self, bound: int | None = None) -> list:
        return [k for d in self.degrees(bound) for k in self.basis(d)]

    def hilbert_series(self) -> HilbertSeries:
        return hilbert_series_of_leads(self.base, self.twists, self.leads())

    # -- arithmetic in the module ------------------------------------------------------------
    def nf_term(self, comp: int, mon) -> dict:
        key = (comp, mon)
        got = self._nf.get(key)
        if got is None:
            if self.gb.is_standard(key):
                got = {key: self.field.one}
            else:
                got = self.gb.normal_form({key: self.field.one})
            self._nf[key] = got
        return got

    def normal_form(self, v: dict) -> dict:
        F = self.field
        out: dict = {}
        for (i, m), c in v.items():
            for k, x in self.nf_term(i, m).items():
                val = F.add(out.get(k, F.zero), F.mul(c, x))
                if val == F.zero:
                    out.pop(k, None)
                else:
                    out[k] = val
        return out

    def act(self, p: dict, key) -> dict:
        """p * (basis element ``key``), in normal form."""
        F = self.field
        comp, mon = key
        out: dict = {}
        for m, c in p.items():
            for k, x in self.nf_term(comp, tuple(a + b for a, b in zip(m, mon))).items():
                val = F.add(out.get(k, F.zero), F.mul(c, x))
                if val == F.zero:
                    out.pop(k, None)
                else:
                    out[k] = val
        return out

    def annihilated_by(self, ring: QuotientRing) -> bool:
        return all(not self.normal_form(poly_to_vec(r.d, k))
                   for r in ring.relations for k in range(self.rank))

    def over(self, ring: QuotientRing) -> "PresentedModule":
        """The same module regarded over another quotient of the base ring."""
        if ring.base != self.base:
            raise RingMismatch("different base rings")
        if not self.annihilated_by(ring):
            raise RingMismatch(f"module is not a module over {ring!r}")
        return PresentedModule(ring, self.twists, self.relation_vectors(), self.name)

    def relation_vectors(self) -> list:
        """Generators of U as S-vectors: presentation columns plus J times the basis."""
        out = [dict(c) for c in self.columns]
        for r in self.ring.relations:
            for k in range(self.rank):
                out.append(poly_to_vec(r.d, k))
        return out

    def presentation(self, ring: QuotientRing | None = None) -> GradedMatrix:
        """A presentation matrix over ``ring`` (default: the module's ring)."""
        ring = ring or self.ring
        cols = [reduce_vector(ring, v) for v in self.relation_vectors()]
        cols = [c for c in cols if c]
        degs = [vector_degree(ring, self.twists, c) for c in cols]
        return GradedMatrix.from_columns(ring, self.twists, degs, cols, reduce=False)

    def base_change(self, ring: QuotientRing, emb: FieldEmbedding) -> "PresentedModule":
        cols = [{k: emb(c) for k, c in v.items()} for v in self.columns]
        return PresentedModule(ring, self.twists, cols, self.name)

    def describe(self) -> dict:
        P = self.presentation()
        return {"name": self.name, "twists": list(self.twists), "presentation": P.to_strings()}

    def __repr__(self):
        return f"PresentedModule({self.name or ''} rank={self.rank}, relations={len(self.columns)})"


def same_submodule(ring: QuotientRing, twists, cols_a, cols_b) -> bool:
    """Equality of the submodules of S^m generated by the two column sets
    together with J*S^m, decided by reduced Gröbner bases."""
    base = ring.base
    extra = [poly_to_vec(r.d, k) for r in ring.relations for k in range(len(twists))]
    order = ModuleOrder(base, twists)
    ga = buchberger(base, list(cols_a) + extra, order)
    gb = buchberger(base, list(cols_b) + extra, ModuleOrder(base, twists))
    norm = lambda g: sorted(tuple(sorted(v.items())) for v in g.elements)
    return norm(ga) == norm(gb)
