"""Exhaustive and randomized verification drivers.

Each ``check_*`` function takes an iterable of cases and returns a list of
failure descriptions (empty when everything holds).
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .groth import (
    CuspidalLine,
    FormalRep,
    check_harris,
    evaluate_M,
    kottwitz_expected,
    levi_label,
    levi_omega,
    shin_identity,
    supercuspidal,
)
from .kottwitz import enumerate_B, test_open_question
from .mant_sum import (
    cube_cancellation,
    verify_I_transitivity,
    verify_induction_formula,
    verify_sum_formula,
    verify_sumrel_bijection,
)
from .pair_poset import down_set, top_pair
from .root_datum import DiagramDatum, GroupSpec, act, build_root_datum, compose, identity

Q = Fraction


@dataclass(frozen=True)
class Case:
    spec: GroupSpec
    mu: tuple

    @property
    def rd(self):
        return build_root_datum(self.spec)

    def __str__(self):
        fs = "x".join(f"Res{d}GL{n}" if d > 1 else f"GL{n}" for d, n in self.spec.factors)
        return f"{fs} mu={self.mu}"


def dominant_vectors(rd, values):
    """All dominant cocharacters with entries drawn from ``values``."""
    out = set()
    for v in itertools.product(values, repeat=rd.rank):
        out.add(rd.dominant_rep(rd.roots, v))
    return sorted(out)


def cases_for(spec, values=(0, 1)):
    rd = build_root_datum(spec)
    return [Case(spec, mu) for mu in dominant_vectors(rd, values)]


def sweep_cases(max_rank=6):
    """The standard sweep class.

    Minuscule on GL_n (n <= max_rank), entries in {0,1,2} on GL_n (n <= 4),
    minuscule on Res_d GL_n (d in {2,3}, n <= 3) and on two-factor products
    of total rank <= max_rank.
    """
    out = []
    for n in range(1, max_rank + 1):
        out += cases_for(GroupSpec.gl(n))
    for n in range(1, min(4, max_rank) + 1):
        out += [c for c in cases_for(GroupSpec.gl(n), (0, 1, 2)) if max(c.mu) == 2]
    for d in (2, 3):
        for n in range(1, min(3, max_rank) + 1):
            out += cases_for(GroupSpec(((d, n),)))
    factors = [(d, n) for d in (1, 2) for n in range(1, max_rank + 1) if d * n < max_rank]
    for f1, f2 in itertools.combinations_with_replacement(factors, 2):
        if f1[0] * f1[1] + f2[0] * f2[1] <= max_rank:
            out += cases_for(GroupSpec((f1, f2)))
    return out


def split_cases(max_rank):
    return [c for n in range(1, max_rank + 1) for c in cases_for(GroupSpec.gl(n))]


# -- pair-level identities ---------------------------------------------------


def check_sum(cases, with_cubes=True):
    bad = []
    for c in cases:
        rd = c.rd
        ok, residual = verify_sum_formula(rd, c.mu)
        if not ok:
            bad.append(f"{c}: residual {residual}")
        elif with_cubes:
            bad += [f"{c}: cube cancellation fails at {q.key()}" for q in cube_cancellation(rd, c.mu)]
    return bad


def check_induction(cases):
    bad = []
    for c in cases:
        rd = c.rd
        for b in enumerate_B(rd, c.mu):
            above = [S for S in rd.levis if b.levi <= S]
            for S in above:
                if not verify_induction_formula(rd, S, b, c.mu):
                    bad.append(f"{c}: induction formula fails for b={_vecs([b])} S={sorted(S)}")
    return bad


def check_itrans(cases):
    bad = []
    for c in cases:
        rd = c.rd
        for b in enumerate_B(rd, c.mu):
            above = [S for S in rd.levis if b.levi <= S]
            for S2, S1 in itertools.product(above, repeat=2):
                if S2 <= S1 and not verify_I_transitivity(rd, S2, S1, b, c.mu):
                    bad.append(f"{c}: I-transitivity fails b={_vecs([b])} {sorted(S2)} < {sorted(S1)}")
    return bad


def check_sumrel(cases):
    bad = []
    for c in cases:
        rd = c.rd
        for S in rd.levis:
            if not verify_sumrel_bijection(rd, S, c.mu):
                bad.append(f"{c}: sumrel bijection fails for S={sorted(S)}")
    return bad


def _vecs(classes):
    return "[" + " ".join("(" + ",".join(str(x) for x in b.newton) + ")" for b in classes) + "]"


def check_question(cases):
    """T(SD_mu) = B(G, mu); failures list the uncovered and stray classes."""
    bad = []
    for c in cases:
        equal, uncovered, stray = test_open_question(c.rd, c.mu)
        if not equal:
            bad.append(f"{c}: uncovered {_vecs(uncovered)} stray {_vecs(stray)}")
    return bad


# -- representation-level identities ------------------------------------------


def _sc_top(rd, tag="pi", twist=Q(1, 2)):
    return supercuspidal(rd, rd.roots, [CuspidalLine(f"{tag}{k}", twist) for k in range(len(rd.block_orbits()))])


def check_kottwitz(cases):
    bad = []
    for c in cases:
        rd = c.rd
        rho = _sc_top(rd)
        for b in enumerate_B(rd, c.mu):
            got = evaluate_M(rd, b, c.mu, rho)
            want = kottwitz_expected(rd, c.mu, rho) if b.levi == rd.roots else type(got)()
            if got != want:
                bad.append(f"{c}: b={_vecs([b])} gives {got}")
    return bad


def check_harris_sweep(max_rank=5, lines=None):
    bad = []
    for c in split_cases(max_rank):
        rd = c.rd
        for b in enumerate_B(rd, c.mu):
            for S in rd.levis:
                if not S <= b.levi:
                    continue
                k = len(rd.blocks(S))
                ls = lines(k) if lines else [CuspidalLine(f"s{i}", Q(i, 3)) for i in range(k)]
                rho = supercuspidal(rd, S, ls)
                if not check_harris(rd, S, b, c.mu, rho):
                    bad.append(f"{c}: b={_vecs([b])} S={sorted(S)}")
    return bad


def random_regular_rep(rd, rng, terms=3):
    """A random Z-combination of irreducibles with regular support.

    Lines share one id with consecutive integer twists so that many pairs
    are linked, plus an occasional unlinked line.
    """
    n = rd.rank
    ids = [rng.choice("ab") for _ in range(n)]
    twists = {}
    ls = []
    for i in ids:
        t = twists.get(i, rng.randint(-2, 2))
        twists[i] = t + rng.choice((1, 1, 2))
        ls.append(CuspidalLine(i, Q(t)))
    vec = {}
    for _ in range(terms):
        o = tuple(rng.sample(ls, n))
        coef = rng.choice((-2, -1, 1, 1, 2, 3))
        for o2 in levi_omega(rd, rd.roots, levi_label(rd, rd.roots, o)):
            vec[o2] = vec.get(o2, 0) + coef
    return FormalRep.regular(rd.roots, vec)


def check_shin_random(count=20, max_rank=4, seed=0):
    rng = random.Random(seed)
    bad = []
    for k in range(count):
        n = rng.randint(1, max_rank)
        rd = build_root_datum(GroupSpec.gl(n))
        mu = rd.dominant_rep(rd.roots, tuple(rng.randint(0, 1) for _ in range(n)))
        rep = random_regular_rep(rd, rng)
        left, right = shin_identity(rd, mu, rep)
        if left != right:
            bad.append(f"sample {k}: GL{n} mu={mu} rep={rep.data}")
    return bad


def check_twist_transitivity(cases):
    """<rho_{G-M_S1}, .> takes the same value on M_S1-conjugate cocharacters."""
    bad = []
    for c in cases:
        rd = c.rd
        for p in down_set(rd, top_pair(rd, c.mu)).nodes:
            for S1 in rd.levis:
                if p.S <= S1:
                    q = rd.dominant_rep(S1, p.mu)
                    if rd.rho_outside(S1, p.mu) != rd.rho_outside(S1, q):
                        bad.append(f"{c}: {p.key()} inside {sorted(S1)}")
    return bad


# -- relative root system checks ----------------------------------------------


def _orbit_coroot(rd, p):
    v = [0] * rd.rank
    for q in rd.orbit_of_root(p):
        v[q] += 1
        v[q + 1] -= 1
    return tuple(v)


def check_relative_reflections(rd, rng, samples=20):
    bad = []
    e = identity(rd.rank)
    for p in sorted(rd.roots):
        w = rd.relative_reflection(p)
        if compose(w, w) != e:
            bad.append(f"sigma_{p} is not an involution")
        if any(compose(g, w) != compose(w, g) for g in rd.group):
            bad.append(f"sigma_{p} does not commute with the diagram group")
        v = _orbit_coroot(rd, p)
        if act(w, v) != tuple(-x for x in v):
            bad.append(f"sigma_{p} does not negate its coroot")
        for _ in range(samples):
            x = rd.gamma_average(tuple(rng.randint(-3, 3) for _ in range(rd.rank)))
            y = act(w, x)
            c = rd.pairing(x, p)
            if y != tuple(a - c * b for a, b in zip(x, v)):
                bad.append(f"sigma_{p} is not the relative reflection on {x}")
                break
    return bad


def check_weight_restrictions(rd):
    """Coefficients are 1 for mutually orthogonal orbits, 2 for an adjacent pair."""
    dd, order = rd.diagram
    bad = []
    for k, p in enumerate(order):
        c = rd.fundamental_weight_restriction(p)
        orb = dd.orbit(k)
        adjacent = any(dd.cartan[i][j] for i, j in itertools.combinations(orb, 2))
        if c not in (1, 2) or c != (2 if adjacent else 1):
            bad.append(f"root {p}: coefficient {c}")
    return bad


def reference_diagrams():
    """Generic Cartan data with a diagram flip, exercising both cases."""

    def a(n):
        return tuple(
            tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)) for i in range(n)
        )

    out = []
    for n in (2, 3, 4, 5):
        flip = tuple(n - 1 - i for i in range(n))
        out.append(DiagramDatum(a(n), (flip,)))
    return out


def check_reference_diagrams():
    bad = []
    for dd in reference_diagrams():
        for k in range(dd.n):
            orb = dd.orbit(k)
            adjacent = any(dd.cartan[i][j] for i, j in itertools.combinations(orb, 2))
            c = dd.fundamental_weight_restriction(k)
            if c != (2 if adjacent else 1):
                bad.append(f"A_{dd.n} node {k}: coefficient {c}")
    return bad


def random_dominated_pair(rd, rng):
    """(mu, mu') with mu - mu' a non-negative combination of absolute coroots."""
    mu = [rng.randint(-3, 3) for _ in range(rd.rank)]
    lower = list(mu)
    for p in rd.roots:
        k = rng.randint(0, 2)
        lower[p] -= k
        lower[p + 1] += k
    return tuple(mu), tuple(lower)


def check_posres(rd, rng, samples=100):
    bad = []
    for _ in range(samples):
        mu, lower = random_dominated_pair(rd, rng)
        if not rd.preceq(lower, mu, "absolute"):
            bad.append(f"sample not dominated: {mu} {lower}")
            continue
        if not rd.preceq(rd.gamma_average(lower), rd.gamma_average(mu), "relative"):
            bad.append(f"averages not ordered: {mu} {lower}")
    return bad


def appendix_b_groups():
    return [GroupSpec(((d, n),)) for d in (2, 3) for n in range(1, 5)]


def check_appendix_b(specs=None, samples=100, seed=0):
    rng = random.Random(seed)
    bad = check_reference_diagrams()
    for spec in specs or appendix_b_groups():
        rd = build_root_datum(spec)
        tag = f"{spec.factors}"
        bad += [f"{tag}: {m}" for m in check_relative_reflections(rd, rng)]
        bad += [f"{tag}: {m}" for m in check_weight_restrictions(rd)]
        bad += [f"{tag}: {m}" for m in check_posres(rd, rng, samples)]
    return bad


VERIFIERS = {
    "sum": lambda max_rank, **kw: check_sum(sweep_cases(max_rank)),
    "induction": lambda max_rank, **kw: check_induction(sweep_cases(max_rank)),
    "itrans": lambda max_rank, **kw: check_itrans(sweep_cases(max_rank)),
    "sumrel": lambda max_rank, **kw: check_sumrel(sweep_cases(max_rank)),
    "question": lambda max_rank, **kw: check_question(sweep_cases(max_rank)),
    "appendixB": lambda max_rank, specs=None, samples=100, **kw: check_appendix_b(specs, samples),
}
