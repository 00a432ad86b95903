"""Isocrystal classes: B(G), B(G, mu), and the map T from strictly decreasing pairs.

A class is stored as (Levi, Newton point, Kottwitz point).  Because the
lattices involved are torsion free, the Newton point alone pins the class
down; the other two fields are carried for convenience and checked.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .pair_poset import is_strictly_decreasing, sd_set, theta_of
from .snf import smith_normal_form

Q = Fraction


class TorsionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class IsocrystalClass:
    levi: frozenset
    newton: tuple
    kappa: tuple

    def __post_init__(self):
        object.__setattr__(self, "levi", frozenset(self.levi))
        object.__setattr__(self, "newton", tuple(Q(x) for x in self.newton))
        object.__setattr__(self, "kappa", tuple(int(x) for x in self.kappa))

    def key(self):
        return (-len(self.levi), self.newton)

    def __lt__(self, other):
        return self.key() < other.key()


@dataclass(frozen=True)
class CenterLattice:
    levi: frozenset
    basis: tuple  # rows: integer functionals on X_*(T)
    map_to_A: tuple  # columns: image in the rational cocharacter space

    def project(self, mu):
        return tuple(sum(c * x for c, x in zip(row, mu)) for row in self.basis)

    def to_A(self, chi):
        n = len(self.map_to_A[0]) if self.map_to_A else 0
        out = [Q(0)] * n
        for k, col in zip(chi, self.map_to_A):
            for i, c in enumerate(col):
                out[i] += k * c
        return tuple(out)


def _rank(mat):
    if not mat or not mat[0]:
        return 0, []
    _, d, _ = smith_normal_form(mat)
    diag = [d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i]]
    return len(diag), diag


@lru_cache(maxsize=None)
def center_character_lattice(rd, S):
    """X_*(T) modulo coroots of M_S, taken as diagram coinvariants.

    The presentation is checked with an integer normal form: torsion is
    rejected, and the orbit-sum functionals are confirmed to identify the
    quotient with Z^r.
    """
    S = frozenset(S)
    n = rd.rank
    cols = []
    for p in sorted(S):
        c = [0] * n
        c[p], c[p + 1] = 1, -1
        cols.append(c)
    for g in rd.gamma:
        for i in range(n):
            c = [0] * n
            c[g[i]] += 1
            c[i] -= 1
            if any(c):
                cols.append(c)
    rel = [[col[i] for col in cols] for i in range(n)] if cols else [[0] for _ in range(n)]
    r, diag = _rank(rel)
    if any(x != 1 for x in diag):
        raise TorsionError(f"coinvariant lattice for {sorted(S)} has torsion {diag}")
    orbits = rd.block_orbits(S)
    basis = []
    for orb in orbits:
        coords = {i for b in orb for i in b}
        basis.append(tuple(int(i in coords) for i in range(n)))
    if len(basis) != n - r:
        raise ArithmeticError("orbit sums do not match the rank of the quotient")
    for col in cols:
        if any(sum(a * b for a, b in zip(row, col)) for row in basis):
            raise ArithmeticError("orbit sums do not kill the relations")
    to_a = []
    for row in basis:
        size = sum(row)
        to_a.append(tuple(Q(x, size) for x in row))
    return CenterLattice(S, tuple(basis), tuple(to_a))


def kappa_at(rd, S, mu):
    return center_character_lattice(rd, frozenset(S)).project(mu)


def class_kappa(rd, newton):
    """Kottwitz point of the class with the given Newton point."""
    out = []
    for orb in rd.block_orbits():
        s = sum(Q(newton[i]) for b in orb for i in b)
        if s.denominator != 1:
            raise ValueError(f"Newton point {newton} is not integral on {orb}")
        out.append(int(s))
    return tuple(out)


def levi_of_newton(rd, newton):
    return frozenset(p for p in rd.roots if newton[p] == newton[p + 1])


def make_class(rd, newton):
    newton = tuple(Q(x) for x in newton)
    return IsocrystalClass(levi_of_newton(rd, newton), newton, class_kappa(rd, newton))


def is_valid_class(rd, b):
    nu = b.newton
    if not rd.is_gamma_fixed(nu):
        return False
    if any(rd.pairing(nu, p) != 0 for p in b.levi):
        return False
    if any(rd.pairing(nu, p) <= 0 for p in rd.roots - b.levi):
        return False
    chi = center_character_lattice(rd, b.levi)
    k = [sum(r * x for r, x in zip(row, nu)) for row in chi.basis]
    if any(Q(x).denominator != 1 for x in k) or chi.to_A(k) != nu:
        return False
    return b.kappa == class_kappa(rd, nu)


def in_B(rd, b, mu):
    """Membership of b in B(G, mu), mu dominant."""
    if not is_valid_class(rd, b):
        return False
    if not rd.preceq(b.newton, rd.gamma_average(mu), "relative"):
        return False
    return b.kappa == kappa_at(rd, rd.roots, mu)


def _compositions(n):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def _factor_newtons(hodge, d):
    """Newton polygons of one factor orbit (d copies, one copy's Hodge vector)."""
    n = len(hodge)
    lo, hi = min(hodge), max(hodge)
    partial = [Q(0)]
    for h in hodge:
        partial.append(partial[-1] + h)
    out = []

    def rec(parts, start, prev, acc, slopes):
        if start == n:
            if acc == partial[n]:
                out.append((parts, slopes))
            return
        for m in range(1, n - start + 1):
            size = m * d
            for chi in range(-((-size * lo.numerator) // lo.denominator), (size * hi.numerator) // hi.denominator + 1):
                s = Q(chi, size)
                if prev is not None and s >= prev:
                    continue
                if any(acc + s * (k + 1) > partial[start + k + 1] for k in range(m)):
                    continue
                rec(parts + (m,), start + m, s, acc + s * m, slopes + (s,) * m)

    rec((), 0, None, Q(0), ())
    return out


@lru_cache(maxsize=None)
def enumerate_B(rd, mu):
    mu = tuple(mu)
    if not rd.is_dominant(rd.roots, mu):
        raise ValueError(f"{mu} is not dominant")
    avg = rd.gamma_average(mu)
    per_factor = []
    for orb in rd.block_orbits():
        hodge = [avg[i] for i in orb[0]]
        opts = []
        for parts, slopes in _factor_newtons(hodge, len(orb)):
            cut = set()
            k = 0
            for m in parts:
                cut.update(range(k, k + m - 1))
                k += m
            opts.append((orb, slopes, cut))
        per_factor.append(opts)
    out = []
    for choice in itertools.product(*per_factor):
        nu = [Q(0)] * rd.rank
        levi = set()
        for orb, slopes, cut in choice:
            for blk in orb:
                for k, i in enumerate(blk):
                    nu[i] = slopes[k]
                levi.update(blk[k] for k in cut)
        nu = tuple(nu)
        b = IsocrystalClass(frozenset(levi), nu, class_kappa(rd, nu))
        out.append(b)
    return tuple(sorted(set(out)))


def basic_class(rd, mu):
    return next(b for b in enumerate_B(rd, tuple(mu)) if b.levi == rd.roots)


def find_class(rd, mu, newton):
    newton = tuple(Q(x) for x in newton)
    for b in enumerate_B(rd, tuple(mu)):
        if b.newton == newton:
            return b
    return None


def T_map(rd, p):
    if not is_strictly_decreasing(rd, p):
        raise ValueError("T is only defined on strictly decreasing pairs")
    nu = theta_of(rd, p)
    return IsocrystalClass(p.S, nu, kappa_at(rd, rd.roots, p.mu))


@lru_cache(maxsize=None)
def fiber_T(rd, b, mu):
    return tuple(p for p in sd_set(rd, tuple(mu)) if T_map(rd, p) == b)


def b_transfer(rd, b, S):
    """The class b viewed inside the Levi M_S (S must contain the Levi of b)."""
    S = frozenset(S)
    if not b.levi <= S:
        raise ValueError("the Levi must contain the centralizer of the Newton point")
    m = rd.levi(S)
    return IsocrystalClass(b.levi, b.newton, class_kappa(m, b.newton))


def test_open_question(rd, mu):
    """Compare T(SD_mu) with B(G, mu); returns (equal, uncovered, stray)."""
    mu = rd.dominant_rep(rd.roots, tuple(mu))
    image = {T_map(rd, p) for p in sd_set(rd, mu)}
    target = set(enumerate_B(rd, mu))
    return image == target, tuple(sorted(target - image)), tuple(sorted(image - target))


test_open_question.__test__ = False
