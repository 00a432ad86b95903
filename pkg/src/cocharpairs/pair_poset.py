"""Cocharacter pairs and the partial order generated by cover steps."""

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class CocharacterPair:
    S: frozenset
    mu: tuple

    def __post_init__(self):
        object.__setattr__(self, "S", frozenset(self.S))
        object.__setattr__(self, "mu", tuple(int(x) for x in self.mu))

    def key(self):
        return (tuple(sorted(self.S)), self.mu)

    def __lt__(self, other):
        return self.key() < other.key()


@dataclass(frozen=True)
class PairPoset:
    top: CocharacterPair
    nodes: tuple
    edges: tuple  # (upper, lower)

    def __contains__(self, p):
        return p in self.nodes


def make_pair(rd, S, mu):
    """A validated pair: S must be a diagram-stable Levi and mu M_S-dominant."""
    S = frozenset(S)
    if len(mu) != rd.rank:
        raise ValueError(f"cocharacter has length {len(mu)}, expected {rd.rank}")
    if not S <= rd.roots or not rd.is_stable(S):
        raise ValueError(f"{sorted(S)} is not a rational standard Levi")
    if not rd.is_dominant(S, mu):
        raise ValueError(f"{tuple(mu)} is not dominant for the Levi {sorted(S)}")
    return CocharacterPair(S, mu)


def top_pair(rd, mu):
    return CocharacterPair(rd.roots, rd.dominant_rep(rd.roots, tuple(mu)))


def theta_of(rd, p):
    return rd.theta(p.S, p.mu)


# -- conjugates --------------------------------------------------------------


def distributions(values, sizes):
    """Ways to split a multiset into ordered groups of the given sizes.

    Each group is returned sorted in descending order.
    """
    if not sizes:
        return [()] if not values else []
    first, rest = sizes[0], sizes[1:]
    out = []
    for head in sorted(set(itertools.combinations(sorted(values, reverse=True), first))):
        remaining = list(values)
        for v in head:
            remaining.remove(v)
        for tail in distributions(remaining, rest):
            out.append((head,) + tail)
    return out


@lru_cache(maxsize=None)
def levi_conjugates(rd, S, mu, within=None):
    """All M_S-dominant conjugates of mu under the Weyl group of M_within."""
    within = rd.roots if within is None else frozenset(within)
    S = frozenset(S)
    per_block = []
    for blk in rd.blocks(within):
        subs = [b for b in rd.blocks(S) if b[0] in blk]
        vals = [mu[i] for i in blk]
        opts = distributions(vals, [len(b) for b in subs])
        per_block.append([(subs, o) for o in opts])
    out = []
    for choice in itertools.product(*per_block):
        v = list(mu)
        for subs, groups in choice:
            for b, g in zip(subs, groups):
                for i, x in zip(b, g):
                    v[i] = x
        out.append(tuple(v))
    return tuple(sorted(set(out)))


# -- order -------------------------------------------------------------------


def covers(rd, lower, upper):
    """True when ``upper`` is one cover step above ``lower``."""
    diff = upper.S - lower.S
    if not lower.S < upper.S or diff not in rd.root_orbits:
        return False
    if not rd.is_conjugate_in_levi(upper.S, lower.mu, upper.mu):
        return False
    return rd.strictly_below(theta_of(rd, upper), theta_of(rd, lower))


@lru_cache(maxsize=None)
def children(rd, p):
    """Pairs covered by p."""
    out = []
    th = theta_of(rd, p)
    for orb in rd.root_orbits:
        if not orb <= p.S:
            continue
        S2 = p.S - orb
        for mu2 in levi_conjugates(rd, S2, p.mu, p.S):
            if rd.strictly_below(th, rd.theta(S2, mu2)):
                out.append(CocharacterPair(S2, mu2))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def down_set(rd, top):
    seen = {top}
    edges = []
    queue = deque([top])
    while queue:
        p = queue.popleft()
        for c in children(rd, p):
            edges.append((p, c))
            if c not in seen:
                seen.add(c)
                queue.append(c)
    return PairPoset(top, tuple(sorted(seen)), tuple(sorted(edges)))


@lru_cache(maxsize=None)
def _below(rd, top):
    return frozenset(down_set(rd, top).nodes)


def leq(rd, p2, p1):
    return p2 in _below(rd, p1)


def is_strictly_decreasing(rd, p, relative_to=None):
    rel = rd.roots if relative_to is None else frozenset(relative_to)
    if not p.S <= rel:
        raise ValueError("the Levi of the pair is not contained in the reference Levi")
    th = theta_of(rd, p)
    return all(rd.pairing(th, a) > 0 for a in rel - p.S)


def extension(rd, p, S):
    S = frozenset(S)
    if not is_strictly_decreasing(rd, p, S):
        raise ValueError("pair is not strictly decreasing relative to the target Levi")
    return CocharacterPair(S, rd.dominant_rep(S, p.mu))


def cube(rd, p):
    th = theta_of(rd, p)
    pos = [o for o in rd.root_orbits if not o & p.S and rd.pairing(th, min(o)) > 0]
    nodes = []
    for r in range(len(pos) + 1):
        for combo in itertools.combinations(pos, r):
            nodes.append(extension(rd, p, p.S.union(*combo)))
    nodes.sort()
    edges = [(u, l) for u in nodes for l in nodes if covers(rd, l, u)]
    top = extension(rd, p, p.S.union(*pos))
    return PairPoset(top, tuple(nodes), tuple(sorted(edges)))


@lru_cache(maxsize=None)
def sd_set(rd, mu):
    top = top_pair(rd, mu)
    return tuple(p for p in down_set(rd, top).nodes if is_strictly_decreasing(rd, p))


# -- rendering ---------------------------------------------------------------


def levi_name(rd, S):
    return "x".join(f"GL_{len(b)}" for b in rd.blocks(S))


def pair_label(rd, p):
    vec = "".join("(" + ",".join(str(p.mu[i]) for i in b) + ")" for b in rd.blocks(p.S))
    return f"({levi_name(rd, p.S)}, {vec})"


def hasse_dot(rd, poset):
    ids = {p: f"n{k}" for k, p in enumerate(poset.nodes)}
    lines = ["digraph pairs {", "  rankdir=TB;"]
    for p in poset.nodes:
        lines.append(f'  {ids[p]} [label="{pair_label(rd, p)}"];')
    for u, l in poset.edges:
        lines.append(f"  {ids[u]} -> {ids[l]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
