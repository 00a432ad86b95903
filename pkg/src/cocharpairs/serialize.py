"""JSON documents for groups, pairs, classes, representations and results.

Rationals are written as "p/q" strings (or "p" when integral).
"""

import json
from fractions import Fraction

from .groth import (
    REGULAR,
    SUPERCUSPIDAL,
    CuspidalLine,
    EvalResult,
    FormalRep,
    GaloisTerm,
    levi_label,
    levi_omega,
    supercuspidal,
)
from .kottwitz import IsocrystalClass
from .pair_poset import CocharacterPair


def q_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def q_parse(s):
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, float):
        raise ValueError("floats are not accepted; write rationals as 'p/q'")
    return Fraction(str(s).strip())


def parse_csv_ints(text):
    text = text.strip()
    return tuple(int(x) for x in text.split(",")) if text else ()


def parse_csv_rationals(text):
    text = text.strip()
    return tuple(q_parse(x) for x in text.split(",")) if text else ()


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=True)


# -- simple objects ------------------------------------------------------------


def pair_to_dict(p):
    return {"levi": sorted(p.S), "mu": list(p.mu)}


def pair_from_dict(d):
    return CocharacterPair(frozenset(d["levi"]), tuple(d["mu"]))


def class_to_dict(b):
    return {"levi": sorted(b.levi), "newton": [q_str(x) for x in b.newton], "kappa": list(b.kappa)}


def class_from_dict(d):
    return IsocrystalClass(frozenset(d["levi"]), tuple(q_parse(x) for x in d["newton"]), tuple(d["kappa"]))


def line_to_dict(l):
    d = {"id": l.id, "twist": q_str(l.twist)}
    if l.size != 1:
        d["size"] = l.size
    return d


def line_from_dict(d):
    return CuspidalLine(str(d["id"]), q_parse(d.get("twist", 0)), int(d.get("size", 1)))


def signed_sum_to_list(s):
    return [{"coef": c, **pair_to_dict(p)} for p, c in s.items()]


# -- representations -----------------------------------------------------------


def rep_from_dict(rd, d):
    """Build a FormalRep from its document.

    Regular regime: {"regime": "regular", "lines": [...], "terms":
    [{"ordering": [line indices], "coef": int}, ...], "irreducible": bool}
    or {"regime": "regular", "fixture": "appendixA", "name": "111"}.
    Supercuspidal regime: {"regime": "supercuspidal", "levi": [roots],
    "lines": [one per diagram orbit of blocks]}.
    """
    regime = d.get("regime")
    if regime == REGULAR:
        if "fixture" in d:
            from . import fixtures

            if d["fixture"] != "appendixA":
                raise ValueError(f"unknown fixture {d['fixture']!r}")
            return fixtures.rep(str(d.get("name", "111")))
        lines = [line_from_dict(x) for x in d["lines"]]
        levi = frozenset(d.get("levi", rd.roots))
        vec = {}
        for t in d["terms"]:
            o = tuple(lines[i] for i in t["ordering"])
            coef = int(t.get("coef", 1))
            orders = levi_omega(rd, levi, levi_label(rd, levi, o)) if d.get("irreducible") else [o]
            for o2 in orders:
                vec[o2] = vec.get(o2, 0) + coef
        return FormalRep.regular(levi, vec)
    if regime == SUPERCUSPIDAL:
        levi = frozenset(d.get("levi", rd.roots))
        return supercuspidal(rd, levi, [line_from_dict(x) for x in d["lines"]])
    raise ValueError(f"unknown regime {regime!r}")


def rep_to_dict(rd, rep):
    if rep.regime == REGULAR:
        lines = sorted({l for o, _ in rep.data for l in o})
        idx = {l: k for k, l in enumerate(lines)}
        return {
            "regime": REGULAR,
            "levi": sorted(rep.levi),
            "lines": [line_to_dict(l) for l in lines],
            "terms": [{"ordering": [idx[l] for l in o], "coef": c} for o, c in rep.data],
        }
    first = [orb[0] for orb in rd.block_orbits(rep.levi)]
    blocks = rd.blocks(rep.levi)
    lines = [rep.data[blocks.index(b)] for b in first]
    return {
        "regime": SUPERCUSPIDAL,
        "levi": sorted(rep.levi),
        "lines": [{"id": l.id, "twist": q_str(l.twist)} for l in lines],
    }


# -- results -------------------------------------------------------------------


def label_to_dict(label):
    if label and label[0] == "ind":
        return {"kind": "induced", "support": [{**line_to_dict(l), "copy": c} for l, c in label[1:]]}
    blocks = []
    for support, before in label:
        blocks.append(
            {
                "support": [line_to_dict(l) for l in support],
                "before": [[support.index(x), support.index(y)] for x, y in before],
            }
        )
    return {"kind": "regular", "blocks": blocks}


def label_from_dict(d):
    if d["kind"] == "induced":
        return ("ind",) + tuple((line_from_dict(x), int(x["copy"])) for x in d["support"])
    out = []
    for blk in d["blocks"]:
        support = tuple(line_from_dict(x) for x in blk["support"])
        before = tuple(sorted((support[i], support[j]) for i, j in blk["before"]))
        out.append((support, before))
    return tuple(out)


def _tag_to_json(k):
    return list(k) if isinstance(k, tuple) else k


def _tag_from_json(k):
    return tuple(k) if isinstance(k, list) else int(k)


def term_to_dict(t):
    return {
        "factor": [[i, c, _tag_to_json(k)] for i, c, k in t.factor],
        "tate": q_str(t.tate),
        "field": [list(g) for g in t.field],
        "orbit": t.orbit,
    }


def term_from_dict(d):
    return GaloisTerm(
        tuple((str(i), int(c), _tag_from_json(k)) for i, c, k in d["factor"]),
        q_parse(d["tate"]),
        tuple(tuple(g) for g in d["field"]),
        int(d.get("orbit", 1)),
    )


def eval_to_list(res):
    return [{"coef": c, "rep": label_to_dict(lab), "galois": term_to_dict(t)} for (lab, t), c in res.items()]


def eval_from_list(items):
    out = {}
    for x in items:
        key = (label_from_dict(x["rep"]), term_from_dict(x["galois"]))
        out[key] = out.get(key, 0) + int(x["coef"])
    return EvalResult(out)
