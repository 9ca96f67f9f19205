import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from cidade import GF, GradedMatrix, PolyRing, PresentedModule, QuotientRing, RingTower, syzygies
from cidade.errors import NotHomogeneous, NotRegularSequence, RingMismatch
from cidade.linalg import rank
from cidade.modules import minimal_columns, minimal_presentation, same_submodule, vector_degree

from oracles import ideal_dim, kernel_dim_of_columns, module_piece, quotient_dim
from strategies import polynomials

S2 = PolyRing(GF(3), ["x", "y"])
R2 = QuotientRing(S2, [S2("x^2"), S2("y^2")])
S7 = PolyRing(GF(7), ["x", "y"])


def module_dim_oracle(ring, twists, columns, d):
    rel_vecs = list(columns) + [{(k, m): c for m, c in r.d.items()} for r in ring.relations
                                for k in range(len(twists))]
    rows, keys = module_piece(ring.base, twists, rel_vecs, d)
    return len(keys) - rank(ring.field, rows)


def homogeneous_matrices(ring, max_rows=2, max_cols=3):
    """Matrices with row twists 0 and column degrees in {1, 2}."""
    @st.composite
    def build(draw):
        m = draw(st.integers(1, max_rows))
        n = draw(st.integers(1, max_cols))
        degs = [draw(st.integers(1, 2)) for _ in range(n)]
        cols = []
        for d in degs:
            col = {}
            for i in range(m):
                p = draw(polynomials(ring.base, homogeneous_degree=d, max_terms=3))
                for mon, c in p.d.items():
                    col[(i, mon)] = c
            cols.append(col)
        return GradedMatrix.from_columns(ring, (0,) * m, degs, cols)
    return build()


@pytest.mark.parametrize("rels", [["x^2", "y^2"], ["x*y"], ["x^3 - y^3", "x*y^2"], []])
def test_quotient_ring_dimensions(rels):
    R = QuotientRing(S7, [S7(r) for r in rels])
    for d in range(7):
        assert R.dim(d) == quotient_dim(S7, [S7(r) for r in rels], d)


def test_top_degree():
    assert R2.top_degree() == 2 and R2.is_artinian()
    assert QuotientRing(S2, [S2("x^2")]).top_degree() is None
    assert QuotientRing(S2, [S2("x^2"), S2("x*y"), S2("y^3")]).top_degree() == 2


def test_ring_tower_validation():
    with pytest.raises(NotRegularSequence):
        RingTower(S7, [S7("x^2"), S7("x*y")])
    with pytest.raises(NotRegularSequence):
        RingTower(S7, [S7("x"), S7("x*y")])
    with pytest.raises(NotHomogeneous):
        RingTower(S7, [S7("x^2 + y")])
    T = RingTower(S7, [S7("x^2"), S7("y^2")])
    assert T.c == 2 and T.degrees == (2, 2) and T.R.top_degree() == 2


def test_matrix_homogeneity_checked():
    x = S7("x")
    R = QuotientRing(S7)
    with pytest.raises(NotHomogeneous):
        GradedMatrix(R, (0,), (2,), [[x]])
    m = GradedMatrix(R, (0,), (1,), [[x]])
    assert m.homogeneous


@given(homogeneous_matrices(R2))
def test_syzygies_compose_to_zero_and_are_complete(m):
    K = syzygies(m)
    assert (m @ K).is_zero()
    degs = [s + m.degree for s in m.source]
    base = R2.base
    for d in range(1, 5):
        ker_s = kernel_dim_of_columns(base, m.target, m.columns(), degs, d, R2.relations)
        trivial = sum(ideal_dim(base, list(R2.relations), d - e) for e in degs)
        rows, _ = module_piece(base, tuple(degs), K.columns(), d)
        jrows, _ = module_piece(base, tuple(degs), [{(k, mm): c for mm, c in r.d.items()}
                                                    for r in R2.relations for k in range(len(degs))], d)
        both = np.vstack([rows, jrows]) if rows.shape[0] else jrows
        got = rank(R2.field, both) - rank(R2.field, jrows) if both.shape[0] else 0
        assert got == ker_s - trivial


@given(homogeneous_matrices(R2, max_cols=4))
def test_minimal_columns_preserve_span(m):
    cols = [c for c in m.columns() if c]
    assume(cols)
    keep = minimal_columns(R2, m.target, cols)
    kept = [cols[j] for j in keep]
    for d in range(1, 4):
        assert module_dim_oracle(R2, m.target, kept, d) == module_dim_oracle(R2, m.target, cols, d)
    for j in range(len(kept)):
        others = kept[:j] + kept[j + 1:]
        dj = vector_degree(R2, m.target, kept[j])
        assert module_dim_oracle(R2, m.target, others, dj) > module_dim_oracle(R2, m.target, kept, dj)


@given(homogeneous_matrices(R2))
def test_presented_module_dimensions(m):
    M = PresentedModule.coker(m)
    for d in range(0, 4):
        assert M.dim(d) == module_dim_oracle(R2, m.target, m.columns(), d)
    hs = M.hilbert_series().coefficients(0, 3)
    assert [hs[d] for d in range(4)] == [M.dim(d) for d in range(4)]


def test_minimal_presentation_cancels_units():
    R = QuotientRing(S7, [S7("x^2"), S7("y^2")])
    x, y = S7.gens()
    # generator 1 is killed by a unit, leaving coker of [x] in one generator
    cols = [{(0, (1, 0)): 1, (1, (0, 0)): 1}, {(1, (0, 1)): 1}]
    tw, new = minimal_presentation(R, (0, 1), cols)
    assert tw == (0,)
    M0 = PresentedModule(R, (0, 1), cols)
    M1 = PresentedModule(R, tw, new)
    assert M0.hilbert_series() == M1.hilbert_series()


def test_action_is_associative():
    M = PresentedModule.residue_field(R2)
    k = M.basis(0)[0]
    assert M.act(S2("x").d, k) == {}
    F2 = PresentedModule.free(R2, (0,))
    e = F2.basis(0)[0]
    xe = F2.act(S2("x").d, e)
    key = next(iter(xe))
    assert F2.act(S2("y").d, key) == F2.act(S2("x*y").d, e)
    assert F2.act(S2("x").d, key) == {}


def test_module_over_another_ring():
    S = QuotientRing(S2)
    M = PresentedModule.cyclic(R2, [S2("x")])
    MS = M.over(S)
    for d in range(4):
        assert MS.dim(d) == M.dim(d)
    with pytest.raises(RingMismatch):
        PresentedModule.cyclic(S, [S2("x")]).over(R2)


def test_same_submodule():
    S = QuotientRing(S7)
    a = [{(0, (1, 0)): 1}, {(0, (0, 1)): 1}]
    b = [{(0, (1, 0)): 1, (0, (0, 1)): 1}, {(0, (0, 1)): 1}]
    assert same_submodule(S, (0,), a, b)
    assert not same_submodule(S, (0,), a[:1], b[:1])


def test_presentation_round_trip():
    M = PresentedModule.cyclic(R2, [S2("x + y")])
    P = M.presentation()
    assert PresentedModule.coker(P).hilbert_series() == M.hilbert_series()
