"""Read-only GL_4 reference data: the pair diagram under (GL_4, (1,1,0,0)),
the eight Jacquet-module classes of the regular principal series with
lines rho(0..3), and the evaluation of the basic-class sum on [111].

Everything is validated when first loaded.
"""

import itertools
from fractions import Fraction
from functools import lru_cache

from .groth import CuspidalLine, EvalResult, FormalRep, GaloisTerm, decompose, levi_label
from .pair_poset import CocharacterPair
from .root_datum import GroupSpec, build_root_datum

LINE_ID = "rho"

# binary name -> orderings, each written as the twists at coordinates 0..3
OMEGA = {
    "111": ["3210"],
    "011": ["2310", "2130", "2103"],
    "101": ["3120", "1320", "1302", "3102", "1032"],
    "110": ["3201", "3021", "0321"],
    "001": ["1203", "1023", "1230"],
    "010": ["2013", "2031", "0213", "0231", "2301"],
    "100": ["3012", "0312", "0132"],
    "000": ["0123"],
}

# (Levi as 0-based simple roots, mu), in the order of the reference diagram rows
DIAGRAM_NODES = [
    ((0, 1, 2), (1, 1, 0, 0)),
    ((0, 1), (1, 1, 0, 0)),
    ((0, 2), (1, 1, 0, 0)),
    ((1, 2), (1, 1, 0, 0)),
    ((0,), (1, 1, 0, 0)),
    ((1,), (1, 1, 0, 0)),
    ((2,), (1, 1, 0, 0)),
    ((), (1, 1, 0, 0)),
]
DIAGRAM_EDGES = [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (3, 5), (3, 6), (5, 7)]

# name -> list of line-twist exponents; every factor is the square of the dual line
ANSWER = {"111": (1, [-4, -3]), "110": (-1, [-5]), "011": (-1, [-5]), "010": (1, [-6]), "000": (-1, [-7])}

MU = (1, 1, 0, 0)


def gl4():
    return build_root_datum(GroupSpec.gl(4))


def lines():
    return tuple(CuspidalLine(LINE_ID, Fraction(k)) for k in range(4))


def parse_ordering(word):
    ls = lines()
    return tuple(ls[int(c)] for c in word)


def diagram():
    nodes = [CocharacterPair(frozenset(S), mu) for S, mu in DIAGRAM_NODES]
    edges = {(nodes[u], nodes[l]) for u, l in DIAGRAM_EDGES}
    return nodes, edges


@lru_cache(maxsize=None)
def omega_labels():
    """name -> irreducible label, after checking the table is a partition."""
    rd = gl4()
    seen = []
    out = {}
    for name, words in OMEGA.items():
        ords = [parse_ordering(w) for w in words]
        labs = {levi_label(rd, rd.roots, o) for o in ords}
        if len(labs) != 1:
            raise AssertionError(f"orderings of [{name}] are not one class")
        lab = labs.pop()
        rep = FormalRep.regular(rd.roots, {o: 1 for o in ords})
        if decompose(rd, rep) != {lab: 1}:
            raise AssertionError(f"[{name}] is not a full Jacquet class")
        out[name] = lab
        seen.extend(ords)
    full = set(itertools.permutations(lines()))
    if len(seen) != 24 or set(seen) != full:
        raise AssertionError("the table does not partition the 24 orderings")
    if len(set(out.values())) != 8:
        raise AssertionError("two names share a class")
    return out


def name_of(label):
    for name, lab in omega_labels().items():
        if lab == label:
            return name
    return None


def rep(name="111"):
    rd = gl4()
    return FormalRep.regular(rd.roots, {parse_ordering(w): 1 for w in OMEGA[name]})


def expected_answer():
    """The evaluation of the basic-class sum on [111] as an EvalResult."""
    rd = gl4()
    labs = omega_labels()
    field = tuple(g for g in rd.group)
    factor = ((LINE_ID, 0, 1), (LINE_ID, 0, 1))
    out = {}
    for name, (coef, twists) in ANSWER.items():
        for t in twists:
            key = (labs[name], GaloisTerm(factor, Fraction(t), field))
            out[key] = out.get(key, 0) + coef
    return EvalResult(out)


def render(result):
    """Human-readable form using the binary names."""
    parts = []
    for (lab, term), c in result.items():
        nm = name_of(lab)
        nm = f"[{nm}]" if nm else str(lab)
        parts.append(f"{c:+d} {nm}{{{term.tate}}}")
    return " ".join(parts)
