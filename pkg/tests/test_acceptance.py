"""The eleven acceptance criteria, each at exact equality.

Every test logs one PASS/FAIL line; they are collected in the pytest
summary, or printed directly by ``python tests/test_acceptance.py``.
"""

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cidade import (GF, ChainComplex, PolyRing, PresentedModule, QuotientRing, check_cone, ci_operators,
                    cone_resolution, dade_check, homology_dims, homotopy_invariance_check, lift_complex,
                    minimize, parse_problem, parse_problem_text, perturbed_lift, reduce_mod, resolve, tor,
                    verify_complex, verify_linearity)
from cidade.cli import main
from cidade.linalg import rank

from acceptance_log import criterion
from corpus import CONE_CORPUS, OPERATOR_CORPUS, module, random_three_term, tower
from oracles import MonomialAlgebra, kernel_dim_of_columns, module_piece


@criterion(1, "hypersurface periodicity over F7[x]/(x^2)", 1.0)
def test_criterion_1_periodicity():
    F7 = GF(7)
    # oracle: on the basis {1, x} multiplication by x has kernel = image = <x>
    mult_x = F7.array([[0, 1], [0, 0]], 2)  # row i = x * (basis i)
    r = rank(F7, mult_x)
    assert (2 - r, r) == (1, 1)
    S = PolyRing(F7, ["x"])
    R = QuotientRing(S, [S("x^2")])
    F = resolve(PresentedModule.residue_field(R), R, 20)
    assert F.betti_numbers() == [1] * 21
    assert all(F.d(n).to_strings() == [["x"]] for n in range(1, 21))
    ops = ci_operators(lift_complex(F), [S("x^2")])
    t = ops.chain_map(0)
    assert all(t[n].to_strings() == [["1"]] for n in range(2, 21))


@criterion(2, "dim Tor_n(k,k) = n + 1 over F7[x,y]/(x^2,y^2), n <= 10", 30.0)
def test_criterion_2_ci_betti_growth():
    S = PolyRing(GF(7), ["x", "y"])
    R = QuotientRing(S, [S("x^2"), S("y^2")])
    k = PresentedModule.residue_field(R)
    got = tor(k, k, R, 10).totals
    oracle = MonomialAlgebra(GF(7), 2, [(2, 0), (0, 2)]).betti_of_residue_field(10)
    assert got == oracle == [n + 1 for n in range(11)]


@criterion(3, "CI operators commute with the lifted differential, n <= 8", 120.0)
def test_criterion_3_operators_commute():
    literal_failures = []
    for q, names, ideal, desc in OPERATOR_CORPUS:
        T = tower(q, names, ideal)
        F = resolve(module(T, desc), T.R, 8)
        ops = ci_operators(lift_complex(F, T.S), T.gens)
        assert ops.certificate_holds()
        for i in range(ops.c):
            # f_i is a non-zerodivisor over S/(f_j : j != i); for c = 1 that ring is S
            assert ops.commutes_over_complement(i), (ideal, desc, i)
            ops.chain_map(i)
            if ops.c == 1:
                assert ops.commutes_over_lift(i)
            elif not ops.commutes_over_lift(i):
                literal_failures.append((tuple(ideal), desc, i + 1))
    assert len(OPERATOR_CORPUS) >= 6
    return (f"[{len(OPERATOR_CORPUS)} instances, c in {{1,2,3}}; identity over S itself for c >= 2 "
            f"fails for {literal_failures}, see test_c_ge_2_commutation_over_s]")


@pytest.mark.xfail(strict=True, reason="for c >= 2 the decomposition of d~d~ is not unique and the "
                                       "chosen operators commute with d~ only modulo the other f_j")
def test_c_ge_2_commutation_over_s():
    T = tower(5, ["x", "y", "z"], ["x^2", "y^3", "z^2"])
    F = resolve(module(T, "x*y"), T.R, 8)
    ops = ci_operators(lift_complex(F, T.S), T.gens)
    assert all(ops.commutes_over_lift(i) for i in range(3))


@criterion(4, "t_alpha = t_1 - alpha t_2 over F9[x,y]/(x^2,y^2), all 8 alpha, n <= 8", 60.0)
def test_criterion_4_linearity():
    T = tower(9, ["x", "y"], ["x^2", "y^2"])
    F = resolve(module(T, "k"), T.R, 8)
    L = lift_complex(F, T.S)
    f1, f2 = T.gens
    alphas = T.field.nonzero_elements()
    assert len(alphas) == 8
    assert all(verify_linearity(L, f1, f2, a) for a in alphas)


@criterion(5, "cone over S is a resolution and minimizes to the direct one", 120.0)
def test_criterion_5_cone():
    assert len(CONE_CORPUS) >= 4
    for q, names, f, desc in CONE_CORPUS:
        T = tower(q, names, [f])
        M = module(T, desc)
        F = resolve(M, T.R, 10)
        cone = cone_resolution(F, ci_operators(lift_complex(F, T.S), T.gens))
        checks = check_cone(cone, n_max=8, bound=12)
        assert checks["complex"] and checks["h0"]
        if not cone.complete:
            assert checks["exact_through"] == 8
        direct = resolve(M, T.S)
        assert direct.complete
        small = minimize(cone.complex).ranks()
        assert (small + [0] * 12)[:9] == (direct.ranks() + [0] * 12)[:9], (f, desc)


@criterion(6, "reduction mod x^2 detects exactness, 50 random complexes, degrees <= 10", 60.0)
def test_criterion_6_reduction_property():
    S = PolyRing(GF(7), ["x", "y"])
    D = 10
    outcomes = {}
    for seed in range(50):
        B, A = random_three_term(random.Random(seed), S)
        C = ChainComplex(QuotientRing(S), [B.target, B.source, A.source], [B, A])
        assert verify_complex(C)
        reduced = homology_dims(reduce_mod(C, S("x^2")), 1, degrees=range(D + 1))
        original = homology_dims(C, 1, degrees=range(D + 1))
        for d in range(D + 1):
            ker = kernel_dim_of_columns(S, B.target, B.columns(), B.source, d)
            rows, _ = module_piece(S, B.source, A.columns(), d)
            assert original[d] == ker - (rank(S.field, rows) if rows.shape[0] else 0)
        key = (not any(reduced.values()), not any(original.values()))
        outcomes[key] = outcomes.get(key, 0) + 1
        if key[0]:
            assert key[1], seed
    assert outcomes.get((True, True), 0) > 0
    return f"[reduced exact: {outcomes.get((True, True), 0)}, reduced not exact: " \
           f"{sum(v for k, v in outcomes.items() if not k[0])}]"


def _f9():
    return tower(9, ["x", "y"], ["x^2", "y^2"])


_REPORTS = {}


def _dade(kind, case):
    if (kind, case) not in _REPORTS:
        T = _f9()
        if case == "cyclic":
            M, N = module(T, "x", "M"), module(T, "y", "N")
        else:
            M, N = module(T, "k", "k"), module(T, "k", "k")
        _REPORTS[kind, case] = dade_check(M, N, T, n_max=10, w=4, kind=kind)
    return _REPORTS[kind, case]


@criterion(7, "Dade consistency for Tor over F9[x,y]/(x^2,y^2)", 180.0)
def test_criterion_7_dade_tor():
    A = MonomialAlgebra(GF(9), 2, [(2, 0), (0, 2)])
    cyc = _dade("tor", "cyclic")
    assert cyc.over_R.totals == A.tor_cyclic([(1, 0)], [(0, 1)], 10) == [1] + [0] * 10
    assert cyc.over_R_window.vanishes
    assert len(cyc.sections) == 10
    for sec, tab, win, les in cyc.sections:
        # over S/(f): R/(x) has the resolution 0 -> T --x--> T and R/(y) is killed by y
        assert tab.totals == [1, 1] + [0] * 9
        assert win.vanishes and les.matches_independent
    assert cyc.verdict == "consistent-with-theorem"
    kk = _dade("tor", "k")
    assert kk.over_R.totals == A.betti_of_residue_field(10)
    assert not kk.over_R_window.vanishes
    for sec, tab, win, les in kk.sections:
        # a hypersurface section resolves k with Betti numbers 1, 2, 2, 2, ...
        assert tab.totals == [1] + [2] * 10
        assert not win.vanishes
    assert kk.verdict == "consistent-with-theorem"


@criterion(8, "Ext mirror gives the same window verdicts", 180.0)
def test_criterion_8_ext_mirror():
    for case in ("cyclic", "k"):
        t, e = _dade("tor", case), _dade("ext", case)
        assert e.over_R_window.verdict == t.over_R_window.verdict
        assert [w.verdict for _, _, w, _ in e.sections] == [w.verdict for _, _, w, _ in t.sections]
        assert e.verdict == t.verdict == "consistent-with-theorem"


@criterion(9, "long exact sequences exact for 2 <= n <= 8, s bijective where Tor over the section vanishes", 180.0)
def test_criterion_9_les():
    checked = 0
    for kind in ("tor", "ext"):
        for case in ("cyclic", "k"):
            for sec, tab, win, les in _dade(kind, case).sections:
                assert les.exact and les.matches_independent
                assert [p["n"] for p in les.positions] == list(range(2, 9))
                vanishing = [n for n in range(2, 9) if tab.totals[n] == 0 and tab.totals[n + 1] == 0]
                assert les.bijective_s == vanishing
                checked += 1
    return f"[{checked} sequences]"


@criterion(10, "10 perturbed lifts induce the same maps on Tor_n(k,k), n <= 6", 30.0)
def test_criterion_10_lifting_independence():
    S = PolyRing(GF(7), ["x"])
    f = S("x^2")
    R = QuotientRing(S, [f])
    k = PresentedModule.residue_field(R)
    F = resolve(k, R, 7)
    canonical = ci_operators(lift_complex(F), [f]).chain_map(0)
    differs = 0
    for seed in range(10):
        L = perturbed_lift(F, f, random.Random(seed))
        assert L.reduces_to_base()
        differs += any(L.d(n) != lift_complex(F).d(n) for n in range(1, F.length + 1))
        t = ci_operators(L, [f]).chain_map(0)
        assert homotopy_invariance_check(F, canonical, t, k, n_max=6)
    assert differs == 10


CYCLIC = """\
field GF(9)
vars x y
ideal x^2, y^2
module M = quotient x
module N = quotient y
pair M,N
"""

SMALL_FIELD = """\
field GF(3)
vars x y
ideal x^2, y^2
module M = coker [x, y; y, x + 2*y]
module k = residue
pair M,k
"""


@criterion(11, "CLI round trip, byte-identical reports, exit codes 0 and 2", 60.0)
def test_criterion_11_cli(tmp_path):
    codes = []
    for name, text, expected in [("pass", CYCLIC, 0), ("fail", SMALL_FIELD, 2)]:
        src = tmp_path / f"{name}.txt"
        src.write_text(text)
        P = parse_problem(src)
        again = tmp_path / f"{name}-again.txt"
        again.write_text(P.serialize())
        assert parse_problem(again).serialize() == P.serialize()
        outs = []
        for run in range(2):
            out = tmp_path / f"{name}-{run}.json"
            code = main(["dade-check", str(again), "--strategy", "perturbed", "--seed", "3",
                         "--n-max", "8", "--json", str(out)])
            assert code == expected
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]
        codes.append(code)
    assert codes == [0, 2]


if __name__ == "__main__":
    import inspect
    import tempfile
    failures = 0
    tests = [fn for name, fn in globals().items() if name.startswith("test_criterion_")]
    for fn in sorted(tests, key=lambda f: int(f.__name__.split("_")[2])):
        try:
            if "tmp_path" in inspect.signature(fn).parameters:
                with tempfile.TemporaryDirectory() as d:
                    fn(Path(d))
            else:
                fn()
        except Exception:
            failures += 1
    sys.exit(1 if failures else 0)
