import itertools
import random
from collections import Counter
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from cocharpairs import (
    CocharacterPair,
    CuspidalLine,
    EvalResult,
    FormalRep,
    GaloisTerm,
    GroupSpec,
    basic_class,
    bracket,
    branch_minuscule,
    build_root_datum,
    check_harris,
    decompose,
    enumerate_B,
    evaluate_M,
    find_class,
    fixtures,
    galois_apply,
    induct,
    irreducible,
    jacquet,
    kottwitz_expected,
    ll_ss,
    shin_identity,
    supercuspidal,
)
from cocharpairs.groth import _canon, block_omega, harris_right, levi_label, levi_omega, shuffles, structural_twists
from cocharpairs.pair_poset import down_set, top_pair
from cocharpairs.sweeps import (
    check_harris_sweep,
    check_kottwitz,
    check_shin_random,
    check_twist_transitivity,
    random_regular_rep,
    split_cases,
    sweep_cases,
)

GL3 = build_root_datum(GroupSpec.gl(3))
GL4 = build_root_datum(GroupSpec.gl(4))
MU = (1, 1, 0, 0)
RHO = fixtures.lines()
PAIR = ((fixtures.LINE_ID, 0, 1), (fixtures.LINE_ID, 0, 1))


def P(S, mu):
    return CocharacterPair(frozenset(S), tuple(mu))


def names(res):
    return Counter({(fixtures.name_of(lab), t.tate): c for (lab, t), c in res.items()})


# -- dictionary -----------------------------------------------------------------


def test_omega_table_partitions_orderings():
    labs = fixtures.omega_labels()
    assert len(labs) == 8
    for name, words in fixtures.OMEGA.items():
        assert sorted(block_omega(labs[name][0])) == sorted(fixtures.parse_ordering(w) for w in words)


def test_omega_binary_names_follow_linked_pairs():
    # bit k (left to right) says rho(3-k) comes before rho(2-k)
    for name, lab in fixtures.omega_labels().items():
        (_, before), = lab
        bits = []
        for k in (3, 2, 1):
            bits.append("1" if (RHO[k], RHO[k - 1]) in before else "0")
        assert "".join(bits) == name


def test_unlinked_lines_give_full_shuffle_class():
    a, b = CuspidalLine("a"), CuspidalLine("b", 5)
    gl2 = build_root_datum(GroupSpec.gl(2))
    rep = irreducible(gl2, gl2.roots, (a, b))
    assert set(rep.vector()) == {(a, b), (b, a)}


# -- Jacquet modules and induction -------------------------------------------------


def test_jacquet_of_top_class_is_one_ordering():
    rep = jacquet(GL4, fixtures.rep("111"), frozenset())
    assert rep.vector() == {fixtures.parse_ordering("3210"): 1}


def test_jacquet_of_101_has_five_orderings():
    rep = jacquet(GL4, fixtures.rep("101"), frozenset())
    assert len(rep.vector()) == 5


def test_jacquet_to_middle_levi_decomposes():
    S = frozenset({1})
    rep = jacquet(GL4, fixtures.rep("010"), S)
    total = Counter()
    for lab, c in decompose(GL4, rep).items():
        for o in levi_omega(GL4, S, lab):
            total[o] += c
    assert dict(total) == rep.vector() == {o: 1 for o in map(fixtures.parse_ordering, fixtures.OMEGA["010"])}


def test_jacquet_rejects_bigger_levi():
    rep = irreducible(GL4, frozenset({0}), fixtures.parse_ordering("3210"))
    with pytest.raises(ValueError):
        jacquet(GL4, rep, GL4.roots)


def test_supercuspidal_jacquet_gl3():
    a, b = CuspidalLine("a"), CuspidalLine("b")
    rho = supercuspidal(GL3, frozenset({1}), [a, b])
    out = jacquet(GL3, rho, frozenset({0}))
    # the size-two line must land inside the GL_2 block, so one placement survives
    assert out == Counter({(((CuspidalLine("b", 0, 2), 0),), ((a, 0),)): 1})


def test_supercuspidal_jacquet_to_itself_and_torus():
    rho = supercuspidal(GL4, frozenset({0, 2}), [CuspidalLine("a"), CuspidalLine("b")])
    assert sum(jacquet(GL4, rho, frozenset({0, 2})).values()) == 2
    assert not jacquet(GL4, rho, frozenset())


def test_shuffles():
    assert shuffles([(1, 2), (3,)]) == [(1, 2, 3), (1, 3, 2), (3, 1, 2)]
    assert shuffles([(1,), (2,), (3,)]) == sorted(itertools.permutations((1, 2, 3)))


def test_induct_from_torus_is_everything():
    o = fixtures.parse_ordering("0123")
    rep = induct(GL4, FormalRep.regular(frozenset(), {o: 1}))
    assert len(rep.vector()) == 24 and set(rep.vector().values()) == {1}
    lines = tuple(CuspidalLine(x) for x in "abc")
    assert len(induct(GL3, FormalRep.regular(frozenset(), {lines: 1})).vector()) == 6


def test_induct_identity_levi():
    rep = fixtures.rep("101")
    assert induct(GL4, rep) == rep


@pytest.mark.parametrize("S", [frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 2}), frozenset({0, 1})])
@pytest.mark.parametrize("word", ["3210", "0123", "2031", "1302"])
def test_induct_matches_coset_oracle(S, word):
    rep = irreducible(GL4, S, fixtures.parse_ordering(word))
    got = induct(GL4, rep).vector()
    assert got == oracles.induced_vector(4, S, rep.vector())
    assert sum(got.values()) == oracles.coset_count(4, S) * len(rep.vector())


def test_induct_then_jacquet_is_geometric_lemma():
    rep = irreducible(GL4, frozenset({0, 2}), fixtures.parse_ordering("3210"))
    up = induct(GL4, rep)
    assert jacquet(GL4, up, frozenset()).vector() == oracles.induced_vector(4, frozenset({0, 2}), rep.vector())


def test_decompose_errors():
    o = fixtures.parse_ordering("3210")
    with pytest.raises(ValueError):
        decompose(GL4, FormalRep.regular(GL4.roots, {o: 1, fixtures.parse_ordering("2310"): 1}))
    bad = (RHO[0], RHO[0], RHO[1], RHO[2])
    with pytest.raises(ValueError):
        decompose(GL4, FormalRep.regular(GL4.roots, {bad: 1}))
    res = build_root_datum(GroupSpec(((2, 1),)))
    with pytest.raises(NotImplementedError):
        decompose(res, FormalRep.regular(frozenset(), {(CuspidalLine("a"), CuspidalLine("b")): 1}))


def test_ll_ss():
    assert ll_ss(GL4, fixtures.rep("111")) == Counter(RHO)
    rho = supercuspidal(GL4, GL4.roots, [CuspidalLine("s")])
    assert ll_ss(GL4, rho) == Counter({CuspidalLine("s", 0, 4): 1})
    rho = supercuspidal(GL4, frozenset({0, 2}), [CuspidalLine("a"), CuspidalLine("b")])
    assert ll_ss(GL4, rho) == Counter({CuspidalLine("a", 0, 2): 1, CuspidalLine("b", 0, 2): 1})


# -- Galois side ---------------------------------------------------------------


def test_galois_apply_exterior_square():
    out = galois_apply(GL4, GL4.roots, MU, [[(l, 0) for l in RHO]])
    tates = sorted(t.tate for t, m in out.items() for _ in range(m))
    # -<rho_G, mu> = -2 is already included
    assert [x + 2 for x in tates] == [-5, -4, -3, -3, -2, -1]
    want = oracles.gl_exterior(RHO, 2)
    got = Counter()
    for t, m in out.items():
        got[t.tate + 2] += m
    assert dict(got) == {tw: c for (_, tw), c in want.items()}


def test_galois_apply_trivial_and_single():
    out = galois_apply(GL4, GL4.roots, (0, 0, 0, 0), [[(l, 0) for l in RHO]])
    assert list(out) == [GaloisTerm((), Q(0), ((0, 1, 2, 3),))]
    gl1 = build_root_datum(GroupSpec.gl(1))
    (term,) = galois_apply(gl1, frozenset(), (1,), [[(CuspidalLine("r", 3), 0)]])
    assert term.tate == -3 and term.factor == (("r", 0, 1),)


@given(st.integers(1, 5), st.data())
def test_galois_apply_matches_subsets(n, data):
    rd = build_root_datum(GroupSpec.gl(n))
    k = data.draw(st.integers(0, n))
    twists = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    ls = [CuspidalLine(data.draw(st.sampled_from("xy")), Q(t)) for t in twists]
    mu = (1,) * k + (0,) * (n - k)
    out = galois_apply(rd, rd.roots, mu, [[(l, 0) for l in ls]])
    base = -rd.rho_pairing(mu)
    got = Counter()
    for t, m in out.items():
        ids = tuple(sorted(i for i, _, kk in t.factor for _ in range(kk)))
        got[(ids, t.tate - base)] += m
    assert dict(got) == oracles.gl_exterior(ls, k)


def test_galois_apply_errors():
    with pytest.raises(ValueError):
        galois_apply(GL4, GL4.roots, MU, [[(RHO[0], 0)]])
    with pytest.raises(ValueError):
        galois_apply(GL4, GL4.roots, MU, [])
    with pytest.raises(NotImplementedError):
        galois_apply(GL3, GL3.roots, (2, 0, 0), [[(l, 0) for l in RHO[:3]]])


def test_schur_symbol_for_non_minuscule():
    big = CuspidalLine("s", Q(1), 3)
    (term,) = galois_apply(GL3, GL3.roots, (2, 0, 0), [[(big, 0)]])
    assert term.factor == (("s", 0, (2, 0, 0)),)
    assert term.tate == -GL3.rho_pairing((2, 0, 0)) - 2


def test_canonical_factor_order_mixes_tags():
    assert _canon([("a", 0, (2, 0)), ("a", 0, 1)]) == (("a", 0, 1), ("a", 0, (2, 0)))


# -- brackets -----------------------------------------------------------------


def test_bracket_top_pair_on_111():
    res = bracket(GL4, P(GL4.roots, MU), fixtures.rep("111"), MU)
    assert names(res) == Counter({("111", -3): 1, ("111", -4): 1, ("111", -5): 2, ("111", -6): 1, ("111", -7): 1})


def test_bracket_middle_pair_matches_hand_transitivity():
    S = frozenset({1})
    res = bracket(GL4, P(S, MU), fixtures.rep("111"), MU)
    # the only ordering is (3210); inside GL_2 the lines 2,1 stay linked
    induced = oracles.induced_vector(4, S, {fixtures.parse_ordering("3210"): 1})
    coef = {}
    for o, c in induced.items():
        coef[fixtures.name_of(levi_label(GL4, GL4.roots, o))] = c
    # Lambda^1 on (3), Lambda^1 on {2,1}, nothing on (0): twists -5, -4
    # rho pieces: -<rho_M, mu> = -1/2 and -<rho_G - rho_M, mu> = -3/2
    want = Counter()
    for nm, c in coef.items():
        for t in (-7, -6):
            want[(nm, t)] += c
    assert res and names(res) == want


def test_bracket_supercuspidal_needs_full_levi():
    rho = supercuspidal(GL4, GL4.roots, [CuspidalLine("s")])
    assert not bracket(GL4, P({0, 1}, MU), rho, MU)
    assert bracket(GL4, P(GL4.roots, MU), rho, MU)


def test_bracket_rejects_non_conjugate():
    with pytest.raises(ValueError):
        bracket(GL4, P(set(), (1, 0, 0, 0)), fixtures.rep(), MU)


@pytest.mark.parametrize("case", sweep_cases(5), ids=str)
def test_structural_twists_add_up(case):
    rd, mu = case.rd, case.mu
    for p in down_set(rd, top_pair(rd, mu)).nodes:
        assert sum(structural_twists(rd, p.S, p.mu, mu)) == -rd.rho_pairing(mu)


def test_twist_transitivity():
    assert check_twist_transitivity(sweep_cases(5)) == []


def tensor_results(r1, r2):
    out = {}
    for (l1, t1), c1 in r1.items():
        for (l2, t2), c2 in r2.items():
            lab = ("ind",) + tuple(sorted(l1[1:] + l2[1:]))
            term = GaloisTerm(_canon(t1.factor + t2.factor), t1.tate + t2.tate, ((0, 1, 2, 3, 4),))
            out[(lab, term)] = out.get((lab, term), 0) + c1 * c2
    return EvalResult(out)


def test_product_brackets_tensor():
    g = build_root_datum(GroupSpec(((1, 2), (1, 3))))
    g1, g2 = build_root_datum(GroupSpec.gl(2)), build_root_datum(GroupSpec.gl(3))
    a, b = CuspidalLine("a", Q(1, 2)), CuspidalLine("b", Q(-1))
    for mu1 in [(1, 0), (1, 1)]:
        for mu2 in [(1, 0, 0), (1, 1, 0)]:
            mu = mu1 + mu2
            rho = supercuspidal(g, g.roots, [a, b])
            whole = bracket(g, top_pair(g, mu), rho, mu)
            left = bracket(g1, top_pair(g1, mu1), supercuspidal(g1, g1.roots, [a]), mu1)
            right = bracket(g2, top_pair(g2, mu2), supercuspidal(g2, g2.roots, [b]), mu2)
            assert whole == tensor_results(left, right)


# -- evaluation ----------------------------------------------------------------


def test_appendix_a_proposition():
    basic = basic_class(GL4, MU)
    res = evaluate_M(GL4, basic, MU, fixtures.rep("111"))
    assert res == fixtures.expected_answer()
    present = {fixtures.name_of(lab) for (lab, _), _ in res.items()}
    assert present.isdisjoint({"101", "100", "001"})
    assert all(t.factor == PAIR for (_, t), _ in res.items())


def test_appendix_a_render():
    res = evaluate_M(GL4, basic_class(GL4, MU), MU, fixtures.rep("111"))
    assert fixtures.render(res) == "-1 [000]{-7} +1 [010]{-6} -1 [110]{-5} -1 [011]{-5} +1 [111]{-3} +1 [111]{-4}"


def test_kottwitz_case_examples():
    rho = supercuspidal(GL4, GL4.roots, [CuspidalLine("s", Q(1, 2))])
    for b in enumerate_B(GL4, MU):
        got = evaluate_M(GL4, b, MU, rho)
        if b.levi == GL4.roots:
            assert got == kottwitz_expected(GL4, MU, rho)
            ((_, term), c), = got.items()
            assert c == 1 and term.tate == -2 - 2 * Q(1, 2)
            assert term.factor == (("s", 0, 2),)
        else:
            assert not got


def test_kottwitz_sweep():
    assert check_kottwitz(sweep_cases(5)) == []


def test_kottwitz_expected_rejects_induced():
    rho = supercuspidal(GL4, frozenset({0}), [CuspidalLine("a"), CuspidalLine("b"), CuspidalLine("c")])
    with pytest.raises(ValueError):
        kottwitz_expected(GL4, MU, rho)


def test_res_orbits_fold():
    rd = build_root_datum(GroupSpec(((2, 2),)))
    mu = (1, 0, 1, 0)
    rho = supercuspidal(rd, rd.roots, [CuspidalLine("s")])
    got = evaluate_M(rd, basic_class(rd, mu), mu, rho)
    assert got == kottwitz_expected(rd, mu, rho)
    ((_, term), c), = got.items()
    assert term.factor == (("s", 0, 1), ("s", 1, 1)) and len(term.field) == 2


# -- Harris --------------------------------------------------------------------


def test_harris_gl3_example():
    mu = (1, 1, 0)
    b = find_class(GL3, mu, (1, Q(1, 2), Q(1, 2)))
    S = b.levi
    rho = supercuspidal(GL3, S, [CuspidalLine("r1"), CuspidalLine("r2")])
    ((_, term), c), = harris_right(GL3, S, b, mu, rho).items()
    assert c == 1 and term.tate == -1
    assert term.factor == (("r1", 0, 1), ("r2", 0, 1))
    assert check_harris(GL3, S, b, mu, rho)


def test_harris_gl4_basic_middle_levi():
    basic = basic_class(GL4, MU)
    S = frozenset({0, 2})
    rho = supercuspidal(GL4, S, [CuspidalLine("a"), CuspidalLine("b", Q(1, 3))])
    ((_, term), c), = harris_right(GL4, S, basic, MU, rho).items()
    assert term.factor == (("a", 0, 1), ("b", 0, 1))
    assert check_harris(GL4, S, basic, MU, rho)


def test_harris_full_levi_is_kottwitz():
    basic = basic_class(GL4, MU)
    rho = supercuspidal(GL4, GL4.roots, [CuspidalLine("s")])
    assert harris_right(GL4, GL4.roots, basic, MU, rho) == kottwitz_expected(GL4, MU, rho)
    assert check_harris(GL4, GL4.roots, basic, MU, rho)


def test_harris_errors():
    b = find_class(GL4, MU, MU)
    rho = supercuspidal(GL4, GL4.roots, [CuspidalLine("s")])
    with pytest.raises(ValueError):
        check_harris(GL4, GL4.roots, b, MU, rho)
    res = build_root_datum(GroupSpec(((2, 2),)))
    bb = basic_class(res, (1, 0, 1, 0))
    with pytest.raises(NotImplementedError):
        check_harris(res, res.roots, bb, (1, 0, 1, 0), supercuspidal(res, res.roots, [CuspidalLine("s")]))


def test_harris_sweep():
    assert check_harris_sweep(5) == []


def test_harris_sweep_with_repeated_lines():
    assert check_harris_sweep(4, lines=lambda k: [CuspidalLine("s")] * k) == []


# -- the sum over B ------------------------------------------------------------


def test_shin_identity_appendix_a():
    for name in fixtures.OMEGA:
        left, right = shin_identity(GL4, MU, fixtures.rep(name))
        assert left == right


def test_shin_identity_random():
    assert check_shin_random(20, 4, seed=1) == []


@settings(max_examples=15)
@given(st.integers(1, 4), st.integers(0, 10**6))
def test_shin_identity_property(n, seed):
    rd = build_root_datum(GroupSpec.gl(n))
    rng = random.Random(seed)
    mu = rd.dominant_rep(rd.roots, tuple(rng.randint(0, 1) for _ in range(n)))
    rep = random_regular_rep(rd, rng)
    left, right = shin_identity(rd, mu, rep)
    assert left == right


def test_branch_minuscule():
    got = {p.mu for p in branch_minuscule(GL4, frozenset({0, 2}), MU)}
    assert got == {(1, 1, 0, 0), (1, 0, 1, 0), (0, 0, 1, 1)}
    assert branch_minuscule(GL4, GL4.roots, MU) == (P(GL4.roots, MU),)
    assert len(branch_minuscule(GL3, frozenset(), (1, 0, 0))) == 3
    with pytest.raises(ValueError):
        branch_minuscule(GL3, frozenset(), (2, 0, 0))
