"""Brute-force reference implementations.

These recompute things from first definitions, deliberately avoiding the
shortcuts used by the package (block means, partial sums, BFS, shuffles).
"""

import itertools
from fractions import Fraction
from math import factorial

import sympy

Q = Fraction


def blocks(rank, S):
    out, cur = [], [0]
    for i in range(1, rank):
        if i - 1 in S:
            cur.append(i)
        else:
            out.append(tuple(cur))
            cur = [i]
    out.append(tuple(cur))
    return out


def levi_weyl_elements(rank, S):
    """Every permutation preserving each block of M_S."""
    bl = blocks(rank, S)
    for perms in itertools.product(*(itertools.permutations(b) for b in bl)):
        w = list(range(rank))
        for b, p in zip(bl, perms):
            for i, j in zip(b, p):
                w[i] = j
        yield tuple(w)


def act(w, x):
    out = [None] * len(x)
    for i, v in enumerate(x):
        out[w[i]] = v
    return tuple(out)


def diagram_group(rd):
    """Close the generators under composition from scratch."""
    e = tuple(range(rd.rank))
    grp = {e}
    while True:
        new = {tuple(g[h[i]] for i in range(rd.rank)) for g in rd.gamma for h in grp} | grp
        if new == grp:
            return grp
        grp = new


def theta(rd, S, mu):
    """Average over the diagram group, then over the whole Weyl group of M_S."""
    grp = diagram_group(rd)
    avg = [Q(0)] * rd.rank
    for g in grp:
        for i, v in enumerate(act(g, mu)):
            avg[i] += Q(v, len(grp))
    tot = [Q(0)] * rd.rank
    ws = list(levi_weyl_elements(rd.rank, S))
    for w in ws:
        for i, v in enumerate(act(w, avg)):
            tot[i] += v
    return tuple(t / len(ws) for t in tot)


def preceq(rd, x, y, relative=False):
    """Solve y - x = sum c_a a^vee exactly and check c >= 0 (orbit sums when relative)."""
    n = rd.rank
    if relative:
        gens = []
        for orb in rd.root_orbits:
            v = [0] * n
            for p in orb:
                v[p] += 1
                v[p + 1] -= 1
            gens.append(v)
    else:
        gens = []
        for p in sorted(rd.roots):
            v = [0] * n
            v[p], v[p + 1] = 1, -1
            gens.append(v)
    diff = sympy.Matrix([sympy.Rational(Q(b) - Q(a)) for a, b in zip(x, y)])
    if not gens:
        return all(d == 0 for d in diff)
    A = sympy.Matrix(gens).T
    try:
        sol, params = A.gauss_jordan_solve(diff)
    except ValueError:
        return False
    if params.shape[0]:
        raise AssertionError("coroots are independent; no free parameters expected")
    return all(c >= 0 for c in sol)


def rho_pairing(rank, S, mu):
    """Half the sum over positive roots e_i - e_j of M_S."""
    tot = Q(0)
    for b in blocks(rank, S):
        for i, j in itertools.combinations(b, 2):
            tot += Q(mu[i] - mu[j], 2)
    return tot


def all_pairs(rd, mu):
    """Every pair (S, mu_S) with S stable and mu_S a dominant G-conjugate of mu."""
    conj = {act(w, mu) for w in levi_weyl_elements(rd.rank, rd.roots)}
    out = set()
    for S in rd.levis:
        for v in conj:
            if all(v[p] >= v[p + 1] for p in S):
                out.add((S, v))
    return out


def dominant(rank, S, mu):
    out = list(mu)
    for b in blocks(rank, S):
        for i, v in zip(b, sorted((mu[i] for i in b), reverse=True)):
            out[i] = v
    return tuple(out)


def covers(rd, lower, upper):
    (S2, m2), (S1, m1) = lower, upper
    if not S2 < S1:
        return False
    if S1 - S2 not in rd.root_orbits:
        return False
    same = all(sorted(m2[i] for i in b) == sorted(m1[i] for i in b) for b in blocks(rd.rank, S1))
    if not same:
        return False
    t1, t2 = theta(rd, S1, m1), theta(rd, S2, m2)
    return t1 != t2 and preceq(rd, t1, t2, relative=True)


def down_set(rd, mu):
    """Transitive closure of covers over all candidate pairs."""
    top = (rd.roots, dominant(rd.rank, rd.roots, mu))
    cand = all_pairs(rd, mu)
    edges = {(u, l) for u in cand for l in cand if covers(rd, l, u)}
    seen = {top}
    frontier = [top]
    while frontier:
        nxt = []
        for u in frontier:
            for a, l in edges:
                if a == u and l not in seen:
                    seen.add(l)
                    nxt.append(l)
        frontier = nxt
    return seen, {(u, l) for u, l in edges if u in seen}


def newton_points(n, mu, max_den=None):
    """Split GL_n: all dominant rational slope vectors nu with nu <= mu,
    equal total, and integral breakpoints, scanning denominators up to n."""
    max_den = max_den or n
    lo, hi = min(mu), max(mu)
    cands = sorted({Q(a, d) for d in range(1, max_den + 1) for a in range(lo * d, hi * d + 1)}, reverse=True)
    out = []

    def ok(nu):
        if sum(nu) != sum(mu):
            return False
        ps, pm = Q(0), 0
        for a, b in zip(nu, mu):
            ps += a
            pm += b
            if ps > pm:
                return False
        # each run of equal slopes must have an integral total
        for _, grp in itertools.groupby(nu):
            g = list(grp)
            if sum(g).denominator != 1:
                return False
        return True

    for nu in itertools.combinations_with_replacement(cands, n):
        if ok(nu):
            out.append(tuple(nu))
    return sorted(set(out))


def gl_exterior(lines, k):
    """Lambda^k of a sum of one-dimensional duals: subsets of size k."""
    out = {}
    for sub in itertools.combinations(range(len(lines)), k):
        key = (tuple(sorted(lines[i].id for i in sub)), -sum(lines[i].twist for i in sub))
        out[key] = out.get(key, 0) + 1
    return out


def induced_vector(rank, S, ordering_vector):
    """Borel vector of an induced class from minimal coset representatives.

    A permutation w increasing on each block of M_S moves the ordering o to
    w(o); summing over those w gives the geometric-lemma formula.
    """
    bl = blocks(rank, S)
    out = {}
    for w in itertools.permutations(range(rank)):
        if not all(w[b[k]] < w[b[k + 1]] for b in bl for k in range(len(b) - 1)):
            continue
        for o, c in ordering_vector.items():
            new = act(w, o)
            out[new] = out.get(new, 0) + c
    return out


def coset_count(rank, S):
    sizes = [len(b) for b in blocks(rank, S)]
    den = 1
    for s in sizes:
        den *= factorial(s)
    return factorial(rank) // den


def newton_set(rd, mu):
    """B(G, mu) by scanning Gamma-fixed slope vectors.

    Each factor orbit contributes one copy's slopes (replicated to the other
    copies); denominators run up to the orbit size.  A vector is kept when it
    is dominant, every run of equal slopes has integral total over its orbit,
    it lies below the averaged mu, and the orbit totals agree with mu.
    """
    avg = [Q(0)] * rd.rank
    grp = diagram_group(rd)
    for g in grp:
        for i, v in enumerate(act(g, mu)):
            avg[i] += Q(v, len(grp))
    per_orbit = []
    for orb in rd.block_orbits():
        first = orb[0]
        size = sum(len(b) for b in orb)
        lo, hi = min(mu[i] for b in orb for i in b), max(mu[i] for b in orb for i in b)
        vals = sorted({Q(a, k) for k in range(1, size + 1) for a in range(lo * k, hi * k + 1)}, reverse=True)
        opts = []
        for slopes in itertools.combinations_with_replacement(vals, len(first)):
            runs = [list(g) for _, g in itertools.groupby(slopes)]
            if any((sum(r) * len(orb)).denominator != 1 for r in runs):
                continue
            if sum(slopes) * len(orb) != sum(mu[i] for b in orb for i in b):
                continue
            opts.append(slopes)
        per_orbit.append((orb, opts))
    out = set()
    for choice in itertools.product(*(o for _, o in per_orbit)):
        nu = [None] * rd.rank
        for (orb, _), slopes in zip(per_orbit, choice):
            for b in orb:
                for i, s in zip(b, slopes):
                    nu[i] = s
        if preceq(rd, tuple(nu), tuple(avg), relative=True):
            out.add(tuple(nu))
    return out
