"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from cidade import Polynomial


def polynomials(ring, max_exp=3, max_terms=5, homogeneous_degree=None):
    F = ring.field
    coeffs = st.sampled_from(F.nonzero_elements())
    if homogeneous_degree is not None:
        mons = ring.monomials(homogeneous_degree)
        mon = st.sampled_from(mons) if mons else st.nothing()
    else:
        mon = st.tuples(*[st.integers(0, max_exp)] * ring.nvars)
    return st.dictionaries(mon, coeffs, max_size=max_terms).map(lambda d: Polynomial(ring, d))


def evaluate(p, point):
    """Value of p at a point of F^n, computed term by term."""
    F = p.ring.field
    acc = F.zero
    for mon, c in p.d.items():
        t = c
        for x, e in zip(point, mon):
            t = F.mul(t, F.pow(x, e))
        acc = F.add(acc, t)
    return acc
