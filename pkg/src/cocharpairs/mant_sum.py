"""Signed sums of cocharacter pairs and the identities they satisfy.

Covers the sums M_{G,b,mu} over the sets R_{G,b,mu}, the sum and induction
formulas, I-sets, Rel sets, the Weyl coset sets W^{M,N} and W_b, and the
Galois orbit structure on sets of pairs.
"""

import itertools
from collections import namedtuple
from functools import lru_cache
from math import gcd

from .kottwitz import (
    b_transfer,
    enumerate_B,
    fiber_T,
    in_B,
    make_class,
    T_map,
)
from .pair_poset import (
    CocharacterPair,
    _below,
    cube,
    down_set,
    is_strictly_decreasing,
    levi_conjugates,
    top_pair,
)
from .root_datum import act, build_root_datum, factor_ranges, inverse


class SignedPairSum:
    """Finite Z-linear combination of cocharacter pairs."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        for p, k in dict(coeffs or {}).items():
            if k:
                c[p] = c.get(p, 0) + k
        self._c = {p: k for p, k in c.items() if k}

    @classmethod
    def single(cls, p, k=1):
        return cls({p: k})

    def items(self):
        return sorted(self._c.items(), key=lambda t: t[0].key())

    def __getitem__(self, p):
        return self._c.get(p, 0)

    def __iter__(self):
        return iter(sorted(self._c, key=lambda p: p.key()))

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, SignedPairSum):
            return self._c == other._c
        return NotImplemented

    def __add__(self, other):
        c = dict(self._c)
        for p, k in other._c.items():
            c[p] = c.get(p, 0) + k
        return SignedPairSum(c)

    def __neg__(self):
        return SignedPairSum({p: -k for p, k in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __repr__(self):
        return "SignedPairSum(" + ", ".join(f"{k:+d}*{p.key()}" for p, k in self.items()) + ")"


def sign(rd, S, S_b):
    """(-1)^L where L counts relative simple roots in S_b but not in S."""
    return -1 if rd.relative_count(frozenset(S_b)) - rd.relative_count(frozenset(S)) & 1 else 1


@lru_cache(maxsize=None)
def R_set(rd, b, mu):
    mu = tuple(mu)
    out = set()
    for p in fiber_T(rd, b, mu):
        out |= _below(rd, p)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def M_sum(rd, b, mu):
    return SignedPairSum({p: sign(rd, p.S, b.levi) for p in R_set(rd, b, tuple(mu))})


def sum_over_B(rd, mu):
    mu = rd.dominant_rep(rd.roots, tuple(mu))
    total = SignedPairSum()
    for b in enumerate_B(rd, mu):
        total = total + M_sum(rd, b, mu)
    return total


def verify_sum_formula(rd, mu):
    """Returns (holds, residual) for sum_b M_{G,b,mu} = (G, mu)."""
    residual = sum_over_B(rd, mu) - SignedPairSum.single(top_pair(rd, mu))
    return not residual, residual


def cube_cancellation(rd, mu):
    """Check the cancellation behind the sum formula pair by pair.

    Y(q) is the set of classes b with q in R_{G,b,mu}.  For every pair q
    below (G, mu) other than the top, the signs over Y(q) cancel.  When q is
    strictly decreasing, Y(q) is the image under T of the cube above q;
    otherwise the signed counts over the cube of q cancel as a whole.
    Returns the offending pairs.
    """
    mu = rd.dominant_rep(rd.roots, tuple(mu))
    top = top_pair(rd, mu)
    holders = {}
    for b in enumerate_B(rd, mu):
        for q in R_set(rd, b, mu):
            holders.setdefault(q, set()).add(b)

    def signed(q):
        return sum(sign(rd, q.S, b.levi) for b in holders.get(q, ()))

    bad = []
    for q in down_set(rd, top).nodes:
        if q == top:
            continue
        ok = signed(q) == 0
        X = cube(rd, q).nodes
        if is_strictly_decreasing(rd, q):
            ok = ok and holders.get(q, set()) == {T_map(rd, c) for c in X}
        else:
            ok = ok and sum(signed(c) for c in X) == 0
        if not ok:
            bad.append(q)
    return bad


# -- induction ---------------------------------------------------------------


@lru_cache(maxsize=None)
def I_set(rd, S, b, mu):
    S = frozenset(S)
    if not b.levi <= S:
        raise ValueError("the Levi must contain the centralizer of the Newton point")
    m = rd.levi(S)
    bS = b_transfer(rd, b, S)
    mu = rd.dominant_rep(rd.roots, tuple(mu))
    return tuple(CocharacterPair(S, v) for v in levi_conjugates(rd, S, mu) if in_B(m, bS, v))


def induced_sum(rd, S, b, mu):
    """The left side of the induction formula: inner sums computed inside M_S."""
    S = frozenset(S)
    m = rd.levi(S)
    bS = b_transfer(rd, b, S)
    total = SignedPairSum()
    for q in I_set(rd, S, b, mu):
        total = total + M_sum(m, bS, q.mu)
    return total


def verify_induction_formula(rd, S, b, mu):
    mu = rd.dominant_rep(rd.roots, tuple(mu))
    return induced_sum(rd, S, b, mu) == M_sum(rd, b, mu)


def verify_I_transitivity(rd, S2, S1, b, mu):
    S1, S2 = frozenset(S1), frozenset(S2)
    if not b.levi <= S2 <= S1:
        raise ValueError("need S_b inside S2 inside S1")
    m1 = rd.levi(S1)
    b1 = b_transfer(rd, b, S1)
    parts = []
    for q in I_set(rd, S1, b, mu):
        parts.extend(I_set(m1, S2, b1, q.mu))
    return len(parts) == len(set(parts)) and set(parts) == set(I_set(rd, S2, b, mu))


# -- products ----------------------------------------------------------------


def _restrict_pair(p, rng):
    off, end = rng.start, rng.stop
    S = frozenset(x - off for x in p.S if off <= x < end - 1)
    return CocharacterPair(S, p.mu[off:end])


def product_decompose(spec, s):
    """Split a signed sum on a product group into a tensor product of sums.

    Returns a list of (factor datum, sum) pairs; raises ValueError when the
    input is not a pure tensor.
    """
    rngs = factor_ranges(spec)
    datums = [build_root_datum(((d, n),)) for d, n in spec.factors]
    if not s:
        raise ValueError("zero sum has no factorization")
    p0, c0 = s.items()[0]
    parts0 = [_restrict_pair(p0, r) for r in rngs]
    factors = []
    for k, rng in enumerate(rngs):
        f = {}
        for p, c in s.items():
            parts = [_restrict_pair(p, r) for r in rngs]
            if all(parts[j] == parts0[j] for j in range(len(rngs)) if j != k):
                f[parts[k]] = c
        factors.append(f)
    # normalize so the recombination has the right scale
    scaled = []
    for k, f in enumerate(factors):
        g = 0
        for v in f.values():
            g = gcd(g, v)
        lead = f[parts0[k]]
        g = g if lead > 0 else -g
        scaled.append({p: v // g for p, v in f.items()})
    prod0 = 1
    for k, f in enumerate(scaled):
        prod0 *= f[parts0[k]]
    if c0 % prod0:
        raise ValueError("sum is not a tensor product")
    first = {p: v * (c0 // prod0) for p, v in scaled[0].items()}
    scaled[0] = first
    out = [(dat, SignedPairSum(f)) for dat, f in zip(datums, scaled)]
    if tensor(spec, [x[1] for x in out]) != s:
        raise ValueError("sum is not a tensor product")
    return out


def tensor(spec, sums):
    rngs = factor_ranges(spec)
    total = {}
    for combo in itertools.product(*[s.items() for s in sums]):
        S, mu, c = set(), [], 1
        for rng, (p, k) in zip(rngs, combo):
            S |= {x + rng.start for x in p.S}
            mu.extend(p.mu)
            c *= k
        q = CocharacterPair(frozenset(S), tuple(mu))
        total[q] = total.get(q, 0) + c
    return SignedPairSum(total)


# -- Rel sets and Weyl cosets --------------------------------------------------


@lru_cache(maxsize=None)
def rel_set(rd, S, b, mu):
    S = frozenset(S)
    if not S <= b.levi:
        raise ValueError("rel sets need a Levi inside the centralizer of the Newton point")
    mu = rd.dominant_rep(rd.roots, tuple(mu))
    out = set()
    for f in fiber_T(rd, b, mu):
        th = rd.theta(f.S, f.mu)
        for v in levi_conjugates(rd, S, f.mu, b.levi):
            if rd.theta(S, v) == th:
                out.add(CocharacterPair(S, v))
    return tuple(sorted(out))


WeylCosets = namedtuple("WeylCosets", "W_M W_MN W_b")


def _increasing_on(w, blocks):
    return all(w[b[k]] < w[b[k + 1]] for b in blocks for k in range(len(b) - 1))


def _maps_into(w, small, big_index):
    return all(len({big_index[w[i]] for i in b}) == 1 for b in small)


@lru_cache(maxsize=None)
def weyl_cosets(rd, S, N):
    """W^{M_S}, W^{M_S,N} and the elements of the latter carrying M_S into N."""
    sb, nb = rd.blocks(frozenset(S)), rd.blocks(frozenset(N))
    nidx = rd.block_of(frozenset(N))
    wm, wmn, wb = [], [], []
    for w in rd.relative_weyl:
        if not _increasing_on(w, sb):
            continue
        wm.append(w)
        if not _increasing_on(inverse(w), nb):
            continue
        wmn.append(w)
        if _maps_into(w, sb, nidx):
            wb.append(w)
    return WeylCosets(tuple(wm), tuple(wmn), tuple(wb))


def image_levi(rd, w, S):
    """w(S) when w carries M_S onto a standard Levi."""
    S = frozenset(S)
    out = set()
    for b in rd.blocks(S):
        img = sorted(w[i] for i in b)
        if img != list(range(img[0], img[0] + len(img))):
            raise ValueError("image of the Levi is not standard")
        out.update(img[:-1])
    return frozenset(out)


def unique_transfer(rd, p, mu):
    mu = rd.dominant_rep(rd.roots, tuple(mu))
    if not rd.is_conjugate_in_levi(rd.roots, p.mu, mu):
        raise ValueError("pair is not conjugate to mu in G")
    th = rd.theta(p.S, p.mu)
    w = list(range(rd.rank))
    for blk in rd.blocks():
        order = sorted(blk, key=lambda i: (-th[i], i))
        for tgt, src in zip(blk, order):
            w[src] = tgt
    w = tuple(w)
    b = make_class(rd, act(w, th))
    return b, w


def verify_sumrel_bijection(rd, S, mu):
    S = frozenset(S)
    mu = rd.dominant_rep(rd.roots, tuple(mu))
    source = [CocharacterPair(S, v) for v in levi_conjugates(rd, S, mu)]
    target = set()
    for b in enumerate_B(rd, mu):
        for w in weyl_cosets(rd, S, b.levi).W_b:
            S2 = image_levi(rd, w, S)
            for q in rel_set(rd, S2, b, mu):
                target.add((b, w, q))
    images = []
    for p in source:
        b, w = unique_transfer(rd, p, mu)
        q = CocharacterPair(image_levi(rd, w, S), act(w, p.mu))
        images.append((b, w, q))
    if any(x not in target for x in images):
        return False
    return len(set(images)) == len(images) == len(target)


# -- Galois orbits -------------------------------------------------------------


def reflex_group(rd, mu):
    """Diagram elements fixing the dominant cocharacter mu."""
    mu = tuple(mu)
    return tuple(g for g in rd.group if act(g, mu) == mu)


def _move(g, p):
    return CocharacterPair(frozenset(g[i] for i in p.S), act(g, p.mu))


def galois_orbit_partition(rd, pairs, mu=None):
    """Orbits of the diagram action (restricted to the reflex group of mu).

    Returns a list of (orbit, stabilizer) with both as sorted tuples.
    """
    grp = rd.group if mu is None else reflex_group(rd, rd.dominant_rep(rd.roots, tuple(mu)))
    pool = set(pairs)
    seen, out = set(), []
    for p in sorted(pool):
        if p in seen:
            continue
        orb = {_move(g, p) for g in grp}
        if not orb <= pool:
            raise ValueError("set of pairs is not stable under the diagram action")
        seen |= orb
        stab = tuple(g for g in grp if _move(g, p) == p)
        out.append((tuple(sorted(orb)), stab))
    return out
