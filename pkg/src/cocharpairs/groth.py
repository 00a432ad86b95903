"""Symbolic Grothendieck-group layer.

Two kinds of admissible input are modelled.

* Regular principal series (split groups only): a class is stored through
  its Borel-Jacquet vector, a Z-combination of orderings of a fixed set of
  pairwise distinct GL_1 lines.  Irreducible subquotients are labelled by an
  orientation of every linked pair of lines (same id, twists one apart); the
  Jacquet module of an irreducible is the set of orderings compatible with
  its orientations.
* Induced from a supercuspidal of a Levi: one line per Levi block; the class
  [I^G_{M_S}(rho)] is labelled by its cuspidal support.

Galois-side objects are symbols: a multiset of (line id, copy, k) meaning
the k-th exterior power of the dual of LL(line) on that copy, together with
a Tate exponent of |.|.
"""

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .kottwitz import b_transfer, enumerate_B
from .mant_sum import M_sum, I_set, galois_orbit_partition, reflex_group, rel_set, weyl_cosets
from .pair_poset import CocharacterPair, levi_conjugates, top_pair
from .root_datum import act

Q = Fraction

REGULAR = "regular"
SUPERCUSPIDAL = "supercuspidal"


@dataclass(frozen=True, order=True)
class CuspidalLine:
    id: str
    twist: Fraction = Q(0)
    size: int = 1

    def __post_init__(self):
        object.__setattr__(self, "twist", Q(self.twist))

    def __str__(self):
        t = self.twist
        return f"{self.id}({t})" if self.size == 1 else f"{self.id}[{self.size}]({t})"


def linked(a, b):
    return a.size == b.size == 1 and a.id == b.id and abs(a.twist - b.twist) == 1


# -- regular regime: irreducible dictionary -----------------------------------


def block_label(seg):
    """Label of the irreducible of GL_m whose Jacquet module contains ``seg``."""
    pos = {l: k for k, l in enumerate(seg)}
    support = tuple(sorted(seg))
    before = []
    for x, y in itertools.combinations(support, 2):
        if linked(x, y):
            before.append((x, y) if pos[x] < pos[y] else (y, x))
    return support, tuple(sorted(before))


@lru_cache(maxsize=None)
def block_omega(label):
    """All orderings in the Jacquet module of the block irreducible ``label``."""
    support, before = label
    out = []
    for perm in itertools.permutations(support):
        pos = {l: k for k, l in enumerate(perm)}
        if all(pos[x] < pos[y] for x, y in before):
            out.append(perm)
    return tuple(out)


def levi_label(rd, S, ordering):
    return tuple(block_label(tuple(ordering[i] for i in b)) for b in rd.blocks(S))


def levi_omega(rd, S, label):
    blocks = rd.blocks(S)
    out = []
    for parts in itertools.product(*(block_omega(l) for l in label)):
        o = [None] * rd.rank
        for b, seg in zip(blocks, parts):
            for i, x in zip(b, seg):
                o[i] = x
        out.append(tuple(o))
    return out


@dataclass(frozen=True)
class FormalRep:
    """A Grothendieck-group class at the Levi ``levi``.

    Regular regime: ``data`` is a sorted tuple of (ordering, coefficient).
    Supercuspidal regime: ``data`` is one line per Levi block (coordinate
    order), and the object stands for the class induced from that
    supercuspidal up to the ambient group.
    """

    regime: str
    levi: frozenset
    data: tuple

    @classmethod
    def regular(cls, levi, vector):
        vec = {}
        for o, c in dict(vector).items():
            vec[tuple(o)] = vec.get(tuple(o), 0) + c
        items = tuple(sorted((o, c) for o, c in vec.items() if c))
        return cls(REGULAR, frozenset(levi), items)

    def vector(self):
        if self.regime != REGULAR:
            raise ValueError("only regular classes have a Borel-Jacquet vector")
        return dict(self.data)


def irreducible(rd, S, ordering):
    """The irreducible class at Levi S containing the given ordering."""
    lab = levi_label(rd, S, ordering)
    return FormalRep.regular(S, {o: 1 for o in levi_omega(rd, S, lab)})


def supercuspidal(rd, S, lines):
    """rho on M_S with one line per diagram orbit of Levi blocks."""
    S = frozenset(S)
    orbits = rd.block_orbits(S)
    if len(lines) != len(orbits):
        raise ValueError(f"need {len(orbits)} lines, got {len(lines)}")
    per_block = {}
    for orb, l in zip(orbits, lines):
        l = CuspidalLine(l.id, l.twist, len(orb[0]))
        for blk in orb:
            per_block[blk] = l
    return FormalRep(SUPERCUSPIDAL, S, tuple(per_block[b] for b in rd.blocks(S)))


def _check_regular(rd, rep):
    if not rd.is_split:
        raise NotImplementedError("regular principal series are modelled on split groups only")
    lines = None
    for o, _ in rep.data:
        if len(o) != rd.rank:
            raise ValueError("ordering length does not match the rank")
        if len(set(o)) != len(o):
            raise ValueError("regular support needs pairwise distinct lines")
        s = tuple(sorted(o))
        if lines is None:
            lines = s
        elif s != lines:
            raise ValueError("orderings of different supports")


def decompose(rd, rep):
    """Coefficients of a regular class on the irreducibles at its Levi.

    Raises ValueError when the vector is not a combination of irreducibles.
    """
    _check_regular(rd, rep)
    vec = rep.vector()
    out = {}
    for o, c in vec.items():
        lab = levi_label(rd, rep.levi, o)
        if lab in out:
            continue
        for o2 in levi_omega(rd, rep.levi, lab):
            if vec.get(o2, 0) != c:
                raise ValueError("vector is not a combination of irreducibles")
        out[lab] = c
    return out


def ll_ss(rd, rep):
    """Cuspidal support as a Counter of lines."""
    if rep.regime == REGULAR:
        supports = {tuple(sorted(o)) for o, _ in rep.data}
        if len(supports) != 1:
            raise ValueError("class has no single cuspidal support")
        return Counter(supports.pop())
    out = Counter()
    for orb in rd.block_orbits(rep.levi):
        out[rep.data[rd.blocks(rep.levi).index(orb[0])]] += 1
    return out


# -- Jacquet modules and induction ---------------------------------------------


def _sc_label(rd, S, lines):
    """Cuspidal support label [(line, copy), ...] of an induced class."""
    copy = rd.copy_index()
    return ("ind",) + tuple(sorted((l, copy[b[0]]) for l, b in zip(lines, rd.blocks(S))))


def jacquet(rd, rep, S):
    """Normalized Jacquet module to M_S.

    Regular regime: a FormalRep at S (same Borel-Jacquet vector, checked to
    decompose).  Supercuspidal regime: a Counter of M_S-level labels, one
    per Weyl element placing the cuspidal blocks inside blocks of M_S.
    """
    S = frozenset(S)
    if rep.regime == REGULAR:
        if not S <= rep.levi:
            raise ValueError("can only restrict to a smaller Levi")
        out = FormalRep(REGULAR, S, rep.data)
        decompose(rd, out)
        return out
    copy = rd.copy_index()
    out = Counter()
    sblocks = rd.blocks(rep.levi)
    for w in weyl_cosets(rd, rep.levi, S).W_b:
        contents = []
        for tb in rd.blocks(S):
            inside = sorted(
                (l, copy[b[0]]) for l, b in zip(rep.data, sblocks) if w[b[0]] in tb
            )
            contents.append(tuple(inside))
        out[tuple(contents)] += 1
    return out


def shuffles(segments):
    """All interleavings of the given sequences, preserving each one's order."""
    tags = [k for k, seg in enumerate(segments) for _ in seg]
    out = []
    for arr in set(itertools.permutations(tags)):
        pos = [0] * len(segments)
        word = []
        for k in arr:
            word.append(segments[k][pos[k]])
            pos[k] += 1
        out.append(tuple(word))
    return sorted(out)


def induct(rd, rep, S_big=None):
    """Parabolic induction of a regular class from its Levi to M_{S_big}."""
    big = rd.roots if S_big is None else frozenset(S_big)
    if rep.regime != REGULAR:
        raise ValueError("supercuspidal classes are already induced")
    small = rep.levi
    if not small <= big:
        raise ValueError("can only induce to a larger Levi")
    sub = rd.blocks(small)
    out = {}
    for o, c in rep.data:
        per_block = []
        for blk in rd.blocks(big):
            segs = [tuple(o[i] for i in b) for b in sub if b[0] in blk]
            per_block.append((blk, shuffles(segs)))
        for choice in itertools.product(*(ws for _, ws in per_block)):
            new = [None] * rd.rank
            for (blk, _), word in zip(per_block, choice):
                for i, x in zip(blk, word):
                    new[i] = x
            new = tuple(new)
            out[new] = out.get(new, 0) + c
    return FormalRep.regular(big, out)


# -- Galois symbols -----------------------------------------------------------


@dataclass(frozen=True, order=True)
class GaloisTerm:
    factor: tuple  # sorted ((line id, copy, k), ...)
    tate: Fraction
    field: tuple = ()  # stabilizer subgroup, as sorted permutations
    orbit: int = 1

    def shifted(self, t):
        return GaloisTerm(self.factor, self.tate + t, self.field, self.orbit)

    def __str__(self):
        body = "*".join(f"L{k}({i}{'@' + str(c) if c else ''})^" for i, c, k in self.factor) or "1"
        tag = "" if self.orbit == 1 else f"[orbit {self.orbit}]"
        return f"{body}({self.tate}){tag}"


def _exterior(entries, k):
    """Lambda^k of a sum of duals: yields (factor entries, twist) per summand."""
    if k == 0:
        yield (), Q(0)
        return
    if not entries:
        return
    (line, copy), rest = entries[0], entries[1:]
    for j in range(min(k, line.size) + 1):
        for fac, t in _exterior(rest, k - j):
            head = ((line.id, copy, j),) if j else ()
            yield head + fac, t - j * line.twist


def _canon(entries):
    return tuple(sorted(entries, key=lambda e: (e[0], e[1], isinstance(e[2], tuple), e[2])))


def schur_entry(line, copy, vals):
    """r of highest weight ``vals`` applied to the dual of one irreducible line.

    Returns (factor entries, twist).  Exterior powers are recorded by their
    degree k, other weights by the full dominant weight.
    """
    lam = tuple(sorted(vals, reverse=True))
    if not any(lam):
        return (), Q(0)
    k = sum(lam)
    tag = k if all(v in (0, 1) for v in lam) else lam
    return ((line.id, copy, tag),), -k * line.twist


def galois_apply(rd, S, mu_S, supports, acting=None):
    """r_{-mu_S} composed with LL, as a Counter of GaloisTerms.

    ``supports`` gives, for each block of M_S, the list of (line, copy)
    entries of the cuspidal support sitting in that block.  The Tate
    exponent includes -<rho_{M_S}, mu_S>.
    """
    S = frozenset(S)
    blocks = rd.blocks(S)
    if len(supports) != len(blocks):
        raise ValueError("one support per Levi block is required")
    per_block = []
    for blk, sup in zip(blocks, supports):
        vals = [mu_S[i] for i in blk]
        if sum(l.size for l, _ in sup) != len(blk):
            raise ValueError("support does not fill the block")
        if all(v in (0, 1) for v in vals):
            per_block.append(list(_exterior(list(sup), sum(vals))))
        elif len(sup) == 1:
            (line, copy), = sup
            per_block.append([schur_entry(line, copy, vals)])
        else:
            raise NotImplementedError("non-minuscule weights need a single line per block")
    grp = rd.group if acting is None else acting
    field = tuple(g for g in grp if act(g, mu_S) == tuple(mu_S))
    base = -rd.rho_pairing(mu_S, S)
    out = Counter()
    for choice in itertools.product(*per_block):
        fac = _canon(e for f, _ in choice for e in f)
        t = sum((t for _, t in choice), Q(0))
        out[GaloisTerm(fac, base + t, field)] += 1
    return out


# -- evaluation ----------------------------------------------------------------


class EvalResult:
    """Z-combination of (admissible label, GaloisTerm)."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        self._c = {k: v for k, v in dict(coeffs or {}).items() if v}

    def items(self):
        return sorted(self._c.items(), key=lambda kv: repr(kv[0]))

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, EvalResult):
            return self._c == other._c
        return NotImplemented

    def __add__(self, other):
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return EvalResult(c)

    def __neg__(self):
        return EvalResult({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, s):
        return EvalResult({k: s * v for k, v in self._c.items()})

    def map_terms(self, f):
        out = {}
        for (lab, term), v in self._c.items():
            key = (lab, f(term))
            out[key] = out.get(key, 0) + v
        return EvalResult(out)

    def __repr__(self):
        return "EvalResult(" + ", ".join(f"{v:+d}*{k}" for k, v in self.items()) + ")"


def structural_twists(rd, S, mu_S, mu):
    """The three structural exponents attached to a pair; they sum to -<rho_G, mu>."""
    a = rd.rho_pairing(mu_S) - rd.rho_pairing(mu)
    b = -rd.rho_pairing(mu_S, S)
    c = -rd.rho_outside(S, mu_S)
    return a, b, c


def bracket(rd, p, rep, mu):
    """[M_S, mu_S] applied to rep: induction of [mu_S] of the Jacquet module."""
    mu = rd.dominant_rep(rd.roots, tuple(mu))
    if not rd.is_conjugate_in_levi(rd.roots, p.mu, mu):
        raise ValueError("the pair is not conjugate to mu in G")
    a, b, c = structural_twists(rd, p.S, p.mu, mu)
    if a + b + c != -rd.rho_pairing(mu):
        raise ArithmeticError("structural twists do not add up")
    acting = reflex_group(rd, mu)
    out = {}
    blocks = rd.blocks(p.S)
    if rep.regime == REGULAR:
        if rep.levi != rd.roots:
            raise ValueError("bracket acts on classes of the ambient group")
        for lab, coef in decompose(rd, jacquet(rd, rep, p.S)).items():
            sup = [[(l, 0) for l in seg_support] for seg_support, _ in lab]
            terms = galois_apply(rd, p.S, p.mu, sup, acting)
            tau = FormalRep.regular(p.S, {o: 1 for o in levi_omega(rd, p.S, lab)})
            up = decompose(rd, induct(rd, tau))
            for g, cg in up.items():
                for term, m in terms.items():
                    key = (g, term.shifted(a + c))
                    out[key] = out.get(key, 0) + coef * cg * m
        return EvalResult(out)
    label = _sc_label(rd, rep.levi, rep.data)
    for contents, mult in jacquet(rd, rep, p.S).items():
        if any(sum(l.size for l, _ in c_) != len(b_) for c_, b_ in zip(contents, blocks)):
            continue
        terms = galois_apply(rd, p.S, p.mu, [list(c_) for c_ in contents], acting)
        for term, m in terms.items():
            key = (label, term.shifted(a + c))
            out[key] = out.get(key, 0) + mult * m
    return EvalResult(out)


def evaluate_M(rd, b, mu, rep):
    """[M_{G,b,mu}](rep), with diagram orbits of pairs folded into one term."""
    mu = rd.dominant_rep(rd.roots, tuple(mu))
    total = EvalResult()
    msum = M_sum(rd, b, mu)
    if not msum:
        return total
    for orbit, _stab in galois_orbit_partition(rd, list(msum), mu):
        p = orbit[0]
        size = len(orbit)
        res = bracket(rd, p, rep, mu)
        if size > 1:
            res = res.map_terms(lambda t: GaloisTerm(t.factor, t.tate, t.field, size))
        total = total + res.scaled(msum[p])
    return total


def kottwitz_expected(rd, mu, rep):
    """[rho] tensored with r_{-mu} of LL(rho) for rho supercuspidal on G."""
    mu = rd.dominant_rep(rd.roots, tuple(mu))
    if rep.regime != SUPERCUSPIDAL or rep.levi != rd.roots:
        raise ValueError("expects a supercuspidal representation of the whole group")
    copy = rd.copy_index()
    fac, tate = [], -rd.rho_pairing(mu)
    for line, blk in zip(rep.data, rd.blocks()):
        f, t = schur_entry(line, copy[blk[0]], [mu[i] for i in blk])
        fac.extend(f)
        tate += t
    field = reflex_group(rd, mu)
    term = GaloisTerm(_canon(fac), tate, field)
    return EvalResult({(_sc_label(rd, rep.levi, rep.data), term): 1})


def harris_left(rd, S, b, mu, rho):
    """Left side of Harris's identity, assembled from evaluations inside M_b.

    For each mu_b in the I-set of b at M_b, evaluate the basic-class sum of
    M_b on the class induced from rho to M_b, then induce to G and move the
    Tate exponent from -<rho_{M_b}, mu_b> to -<rho_G, mu>.
    """
    mu = rd.dominant_rep(rd.roots, tuple(mu))
    m = rd.levi(b.levi)
    b_inner = b_transfer(rd, b, b.levi)
    total = EvalResult()
    for q in I_set(rd, b.levi, b, mu):
        inner = evaluate_M(m, b_inner, q.mu, rho)
        shift = rd.rho_pairing(q.mu, b.levi) - rd.rho_pairing(mu)
        total = total + inner.map_terms(lambda t: t.shifted(shift))
    return total


def harris_right(rd, S, b, mu, rho):
    mu = rd.dominant_rep(rd.roots, tuple(mu))
    label = _sc_label(rd, rho.levi, rho.data)
    base = -rd.rho_pairing(mu)
    out = {}
    for q in rel_set(rd, S, b, mu):
        fac, tate = [], base
        for line, blk in zip(rho.data, rd.blocks(S)):
            k = sum(q.mu[i] for i in blk)
            if k:
                fac.append((line.id, 0, k))
                tate -= k * line.twist
        field = tuple(g for g in rd.group if act(g, q.mu) == q.mu)
        key = (label, GaloisTerm(_canon(fac), tate, field))
        out[key] = out.get(key, 0) + 1
    return EvalResult(out)


def check_harris(rd, S, b, mu, rho):
    S = frozenset(S)
    if not S <= b.levi:
        raise ValueError("need S inside the centralizer of the Newton point")
    if not rd.is_split:
        raise NotImplementedError("Harris check is modelled on split groups")
    if rho.regime != SUPERCUSPIDAL or rho.levi != S:
        raise ValueError("expects a supercuspidal representation of M_S")
    return harris_left(rd, S, b, mu, rho) == harris_right(rd, S, b, mu, rho)


def branch_minuscule(rd, S, mu):
    mu = tuple(mu)
    if any(x not in (0, 1) for x in mu):
        raise ValueError("branching is implemented for minuscule cocharacters")
    return tuple(CocharacterPair(frozenset(S), v) for v in levi_conjugates(rd, frozenset(S), mu))


def shin_identity(rd, mu, rep):
    """Both sides of sum_b [M_{G,b,mu}](rep) = [G, mu](rep)."""
    mu = rd.dominant_rep(rd.roots, tuple(mu))
    left = EvalResult()
    for b in enumerate_B(rd, mu):
        left = left + evaluate_M(rd, b, mu, rep)
    return left, bracket(rd, top_pair(rd, mu), rep, mu)
