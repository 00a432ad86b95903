"""Based root data for products of restrictions of scalars of GL_n.

Coordinates are ordered factor by factor and, inside a factor of degree d
and rank n, copy by copy: the d blocks of n coordinates are permuted
cyclically by the Frobenius.  A simple root e_p - e_{p+1} is named by its
position p, so a Levi is just a frozenset of positions.

Weyl elements are coordinate permutations ``w`` with ``w(e_i) = e_{w[i]}``.
"""

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

Q = Fraction


def as_fractions(v):
    return tuple(Q(x) for x in v)


def act(w, x):
    """Apply the coordinate permutation ``w`` to the vector ``x``."""
    out = [None] * len(x)
    for i, xi in enumerate(x):
        out[w[i]] = xi
    return tuple(out)


def compose(u, v):
    """u after v."""
    return tuple(u[v[i]] for i in range(len(v)))


def inverse(w):
    out = [0] * len(w)
    for i, wi in enumerate(w):
        out[wi] = i
    return tuple(out)


def identity(n):
    return tuple(range(n))


def runs(n, roots):
    """Maximal runs of coordinates joined by the roots in ``roots``."""
    blocks, cur = [], [0] if n else []
    for p in range(n - 1):
        if p in roots:
            cur.append(p + 1)
        else:
            blocks.append(tuple(cur))
            cur = [p + 1]
    if cur:
        blocks.append(tuple(cur))
    return tuple(blocks)


@dataclass(frozen=True)
class GroupSpec:
    factors: tuple  # ((degree, rank), ...)

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a group needs at least one factor")
        for d, n in self.factors:
            if int(d) < 1 or int(n) < 1:
                raise ValueError(f"bad factor (degree={d}, rank={n})")

    @classmethod
    def from_dict(cls, data):
        try:
            fs = tuple((int(f["degree"]), int(f["rank"])) for f in data["factors"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed group document: {exc}") from None
        return cls(fs)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_dict(self):
        return {"factors": [{"degree": d, "rank": n} for d, n in self.factors]}

    @classmethod
    def gl(cls, n):
        return cls(((1, n),))


@dataclass(frozen=True)
class RootDatum:
    """Type A root datum on ``rank`` coordinates.

    ``roots`` holds the simple roots (by position), ``gamma`` the generators
    of the diagram group as coordinate permutations.  Levi subgroups are
    again RootDatum instances on the same coordinates (see ``levi``).
    """

    rank: int
    roots: frozenset
    gamma: tuple = ()
    _hash: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.rank, self.roots, self.gamma)))
        for g in self.gamma:
            if sorted(g) != list(range(self.rank)):
                raise ValueError("diagram generator is not a permutation")
            for p in self.roots:
                if g[p + 1] != g[p] + 1 or g[p] not in self.roots:
                    raise ValueError("diagram generator does not preserve the simple roots")

    def __hash__(self):
        return self._hash

    # -- structure -------------------------------------------------------

    @cached_property
    def group(self):
        """All elements of the diagram group."""
        e = identity(self.rank)
        elems, frontier = {e}, [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.gamma:
                    y = compose(g, x)
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(elems))

    @cached_property
    def is_split(self):
        return len(self.group) == 1

    def blocks(self, S=None):
        """Levi blocks of M_S (S defaults to all simple roots)."""
        return _blocks(self.rank, self.roots if S is None else frozenset(S))

    def block_of(self, S=None):
        idx = {}
        for k, b in enumerate(self.blocks(S)):
            for i in b:
                idx[i] = k
        return idx

    @cached_property
    def root_orbits(self):
        """Diagram orbits of simple roots, i.e. the relative simple roots."""
        seen, out = set(), []
        for p in sorted(self.roots):
            if p in seen:
                continue
            orb = frozenset(g[p] for g in self.group)
            seen |= orb
            out.append(orb)
        return tuple(out)

    def orbit_of_root(self, p):
        for o in self.root_orbits:
            if p in o:
                return o
        raise ValueError(f"{p} is not a simple root")

    def relative_count(self, S):
        """Number of relative simple roots in a diagram-stable set of roots."""
        return sum(1 for o in self.root_orbits if o <= S)

    def is_stable(self, S):
        return all(frozenset(g[p] for p in S) == S for g in self.gamma)

    @cached_property
    def levis(self):
        """All diagram-stable subsets of the simple roots (standard rational Levis)."""
        orbs = self.root_orbits
        out = []
        for r in range(len(orbs) + 1):
            for combo in itertools.combinations(orbs, r):
                out.append(frozenset().union(*combo))
        return tuple(sorted(out, key=lambda s: (len(s), sorted(s))))

    def levi(self, S):
        """The Levi M_S as a root datum in its own right."""
        S = frozenset(S)
        if not S <= self.roots:
            raise ValueError("Levi roots must be simple roots of the ambient group")
        if not self.is_stable(S):
            raise ValueError("Levi is not stable under the diagram group")
        return _levi_datum(self, S)

    def block_orbits(self, S=None):
        """Diagram orbits of the Levi blocks of M_S, as tuples of blocks."""
        blocks = self.blocks(S)
        where = {b[0]: b for b in blocks}
        seen, out = set(), []
        for b in blocks:
            if b in seen:
                continue
            orb = []
            for g in self.group:
                c = where[g[b[0]]]
                if c not in orb:
                    orb.append(c)
            orb.sort()
            seen.update(orb)
            out.append(tuple(orb))
        return tuple(out)

    def copy_index(self):
        """Position of each coordinate's block inside its diagram orbit."""
        out = {}
        for orb in self.block_orbits():
            for j, b in enumerate(orb):
                for i in b:
                    out[i] = j
        return out

    # -- vectors ---------------------------------------------------------

    def pairing(self, x, p):
        """<x, alpha_p> for the simple root at position p."""
        return x[p] - x[p + 1]

    def gamma_average(self, mu):
        grp = self.group
        if len(grp) == 1:
            return as_fractions(mu)
        tot = [Q(0)] * self.rank
        for g in grp:
            for i, v in enumerate(act(g, mu)):
                tot[i] += v
        return tuple(t / len(grp) for t in tot)

    def is_gamma_fixed(self, x):
        return all(act(g, x) == tuple(x) for g in self.gamma)

    def theta(self, S, mu):
        """Average of mu over the diagram group, then over the Weyl group of M_S."""
        return _theta(self, frozenset(S), tuple(mu))

    def dominant_rep(self, S, mu):
        out = list(mu)
        for b in self.blocks(S):
            vals = sorted((mu[i] for i in b), reverse=True)
            for i, v in zip(b, vals):
                out[i] = v
        return tuple(out)

    def is_dominant(self, S, mu):
        return all(mu[p] >= mu[p + 1] for p in S)

    def is_conjugate_in_levi(self, S, mu, nu):
        return self.dominant_rep(S, mu) == self.dominant_rep(S, nu)

    def coroot_coefficients(self, x, y):
        """Coefficients of y - x on the simple coroots, or None if not in their span."""
        d = [Q(b) - Q(a) for a, b in zip(x, y)]
        coef = {}
        for blk in self.blocks():
            s = Q(0)
            for i in blk[:-1]:
                s += d[i]
                coef[i] = s
            if s + d[blk[-1]] != 0:
                return None
        return coef

    def preceq(self, x, y, mode="absolute"):
        """x is below y: y - x is a non-negative combination of simple coroots.

        In relative mode both vectors must be diagram-fixed and the relative
        simple coroots (orbit sums of absolute ones) are used.
        """
        coef = self.coroot_coefficients(x, y)
        if coef is None:
            return False
        if mode == "relative":
            if not (self.is_gamma_fixed(x) and self.is_gamma_fixed(y)):
                raise ValueError("relative dominance needs diagram-fixed vectors")
            for orb in self.root_orbits:
                if len({coef[p] for p in orb}) != 1:
                    return False
        elif mode != "absolute":
            raise ValueError(f"unknown mode {mode!r}")
        return all(c >= 0 for c in coef.values())

    def strictly_below(self, x, y, mode="relative"):
        return tuple(x) != tuple(y) and self.preceq(x, y, mode)

    def rho_pairing(self, mu, S=None):
        """<rho_{M_S}, mu>, the half sum of positive roots of M_S paired with mu."""
        tot = Q(0)
        for b in self.blocks(S):
            m = len(b)
            for k, i in enumerate(b):
                tot += Q(m - 1 - 2 * k, 2) * mu[i]
        return tot

    @cached_property
    def rho(self):
        out = [Q(0)] * self.rank
        for b in self.blocks():
            m = len(b)
            for k, i in enumerate(b):
                out[i] = Q(m - 1 - 2 * k, 2)
        return tuple(out)

    def rho_outside(self, S, mu):
        """<rho_G - rho_{M_S}, mu> summed root by root: roots of G not in M_S."""
        inner = self.block_of(S)
        tot = Q(0)
        for b in self.blocks():
            for i, j in itertools.combinations(b, 2):
                if inner[i] != inner[j]:
                    tot += Q(mu[i] - mu[j], 2)
        return tot

    # -- Weyl groups -----------------------------------------------------

    @cached_property
    def relative_weyl(self):
        """W^rel: for every factor orbit, one permutation applied to all its copies."""
        pieces = []
        for orb in self.block_orbits():
            n = len(orb[0])
            pieces.append([(orb, s) for s in itertools.permutations(range(n))])
        out = []
        for choice in itertools.product(*pieces):
            w = list(range(self.rank))
            for orb, s in choice:
                for blk in orb:
                    for k, i in enumerate(blk):
                        w[i] = blk[s[k]]
            out.append(tuple(w))
        return tuple(sorted(out))

    def levi_weyl(self, S):
        """W^rel of M_S inside this datum."""
        return self.levi(S).relative_weyl

    def simple_reflection(self, p):
        w = list(range(self.rank))
        w[p], w[p + 1] = p + 1, p
        return tuple(w)

    @cached_property
    def diagram(self):
        """The semisimple part as a Cartan matrix plus diagram permutation."""
        order = sorted(self.roots)
        pos = {p: k for k, p in enumerate(order)}
        n = len(order)
        cartan = [[0] * n for _ in range(n)]
        for a in range(n):
            cartan[a][a] = 2
            for b in range(n):
                if abs(order[a] - order[b]) == 1:
                    cartan[a][b] = -1
        perms = tuple(tuple(pos[g[p]] for p in order) for g in self.gamma)
        return DiagramDatum(tuple(map(tuple, cartan)), perms), order

    def relative_reflection(self, p):
        """The diagram-invariant longest element of the orbit of sigma_p."""
        dd, order = self.diagram
        word = dd.relative_reflection_word(order.index(p))
        w = identity(self.rank)
        for k in word:
            w = compose(w, self.simple_reflection(order[k]))
        return w

    def fundamental_weight_restriction(self, p):
        dd, order = self.diagram
        return dd.fundamental_weight_restriction(order.index(p))


@lru_cache(maxsize=None)
def _blocks(n, roots):
    return runs(n, roots)


_LEVI_CACHE = {}


def _levi_datum(rd, S):
    key = (rd, S)
    got = _LEVI_CACHE.get(key)
    if got is None:
        got = RootDatum(rd.rank, S, rd.gamma)
        _LEVI_CACHE[key] = got
    return got


_THETA_CACHE = {}


def _theta(rd, S, mu):
    key = (rd.rank, rd.gamma, S, mu)
    got = _THETA_CACHE.get(key)
    if got is not None:
        return got
    avg = rd.gamma_average(mu)
    out = list(avg)
    for b in _blocks(rd.rank, S):
        m = sum(avg[i] for i in b) / len(b)
        for i in b:
            out[i] = m
    got = tuple(out)
    _THETA_CACHE[key] = got
    return got


def build_root_datum(spec):
    if not isinstance(spec, GroupSpec):
        spec = GroupSpec(tuple(spec))
    roots, gen, off = set(), [], 0
    for d, n in spec.factors:
        for j in range(d):
            base = off + j * n
            roots.update(range(base, base + n - 1))
            for k in range(n):
                gen.append(off + ((j + 1) % d) * n + k)
        off += d * n
    gen = tuple(gen)
    gamma = () if gen == identity(off) else (gen,)
    return RootDatum(off, frozenset(roots), gamma)


def factor_ranges(spec):
    """Coordinate ranges of the factors of a GroupSpec."""
    out, off = [], 0
    for d, n in spec.factors:
        out.append(range(off, off + d * n))
        off += d * n
    return out


# -- generic Cartan data (Appendix B machinery) ------------------------------


def _solve(mat, rhs):
    """Exact Gaussian elimination for a square nonsingular system."""
    n = len(mat)
    a = [[Q(x) for x in row] + [Q(r)] for row, r in zip(mat, rhs)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return tuple(a[i][n] / a[i][i] for i in range(n))


@dataclass(frozen=True)
class DiagramDatum:
    """A semisimple based root system given by its Cartan matrix, with
    diagram automorphisms given as permutations of the simple roots.

    ``cartan[i][j] = <alpha_i^vee, alpha_j>``.  Weights are written in the
    basis of simple roots.
    """

    cartan: tuple
    perms: tuple = ()

    @property
    def n(self):
        return len(self.cartan)

    @cached_property
    def group(self):
        e = tuple(range(self.n))
        elems, frontier = {e}, [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.perms:
                    y = tuple(g[x[i]] for i in range(self.n))
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(elems))

    def orbit(self, a):
        return tuple(sorted({g[a] for g in self.group}))

    @cached_property
    def orbits(self):
        seen, out = set(), []
        for a in range(self.n):
            if a not in seen:
                o = self.orbit(a)
                seen.update(o)
                out.append(o)
        return tuple(out)

    def components(self):
        """Connected components of the Dynkin diagram."""
        comp = list(range(self.n))

        def find(x):
            while comp[x] != x:
                x = comp[x]
            return x

        for i in range(self.n):
            for j in range(self.n):
                if i != j and self.cartan[i][j] != 0:
                    comp[find(i)] = find(j)
        return [find(i) for i in range(self.n)]

    def reflect(self, i, x):
        """s_i applied to a weight written in simple-root coordinates."""
        pair = sum(self.cartan[i][j] * x[j] for j in range(self.n))
        out = list(x)
        out[i] -= pair
        return tuple(out)

    def apply_word(self, word, x):
        for i in reversed(word):
            x = self.reflect(i, x)
        return x

    def relative_reflection_word(self, a):
        """Longest element of the group generated by the orbit of s_a.

        Supported orbit shapes per connected component: pairwise orthogonal
        nodes, or exactly two nodes joined by a single bond.
        """
        orb = self.orbit(a)
        comp = self.components()
        word = []
        for c in sorted({comp[i] for i in orb}):
            nodes = [i for i in orb if comp[i] == c]
            joined = [
                (i, j) for i, j in itertools.combinations(nodes, 2) if self.cartan[i][j] != 0
            ]
            if not joined:
                word.extend(nodes)
            elif len(nodes) == 2 and self.cartan[nodes[0]][nodes[1]] == -1 == self.cartan[nodes[1]][nodes[0]]:
                x, y = nodes
                word.extend([y, x, y])
            else:
                raise ValueError(f"unsupported orbit configuration {nodes}")
        return tuple(word)

    def fundamental_weight(self, a):
        return _solve(self.cartan, [1 if i == a else 0 for i in range(self.n)])

    def restrict(self, x):
        """Restriction to the relative torus: sum coefficients over orbits."""
        return {o: sum(x[i] for i in o) for o in self.orbits}

    def fundamental_weight_restriction(self, a):
        """c with res(delta_a) = c * delta_{res(a)}."""
        delta = self.fundamental_weight(a)
        moved = self.apply_word(self.relative_reflection_word(a), delta)
        drop = self.restrict(tuple(u - v for u, v in zip(delta, moved)))
        orb = self.orbit(a)
        if any(v != 0 for o, v in drop.items() if o != orb):
            raise ArithmeticError("relative reflection moved other orbits")
        c = drop[orb]
        if c.denominator != 1:
            raise ArithmeticError(f"non-integral restriction coefficient {c}")
        return int(c)
