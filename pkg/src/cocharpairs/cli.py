"""Command line driver: poset | bset | mant | rel | verify."""

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import fixtures, serialize, sweeps
from .groth import CuspidalLine, evaluate_M, levi_omega, supercuspidal
from .kottwitz import enumerate_B, find_class
from .mant_sum import I_set, M_sum, rel_set
from .pair_poset import down_set, hasse_dot, levi_name, pair_label, top_pair
from .root_datum import GroupSpec, build_root_datum


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    group: GroupSpec
    mu: tuple
    b: tuple = None
    levi: frozenset = None
    rep: str = None
    format: str = "text"


def load_group(arg):
    if arg is None:
        raise InputError("--group is required")
    text = arg if arg.lstrip().startswith("{") else None
    if text is None:
        path = Path(arg)
        if not path.exists():
            raise InputError(f"group file {arg} not found")
        text = path.read_text()
    try:
        return GroupSpec.from_json(text)
    except (ValueError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from None


def make_config(args):
    spec = load_group(args.group)
    rd = build_root_datum(spec)
    try:
        mu = serialize.parse_csv_ints(args.mu or "")
        b = serialize.parse_csv_rationals(args.b) if getattr(args, "b", None) else None
        levi = frozenset(serialize.parse_csv_ints(args.levi)) if getattr(args, "levi", None) is not None else None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if len(mu) != rd.rank:
        raise InputError(f"mu has length {len(mu)}, the group has rank {rd.rank}")
    if b is not None and len(b) != rd.rank:
        raise InputError(f"Newton point has length {len(b)}, the group has rank {rd.rank}")
    if levi is not None and (not levi <= rd.roots or not rd.is_stable(levi)):
        raise InputError(f"{sorted(levi)} is not a diagram-stable set of simple roots")
    return RunConfig(args.command, spec, mu, b, levi, getattr(args, "rep", None), args.format)


def load_rep(rd, arg):
    if arg is None:
        return None
    if arg.startswith("appendixA"):
        name = arg.partition(":")[2] or "111"
        if rd != fixtures.gl4() or name not in fixtures.OMEGA:
            raise InputError("the appendixA fixture lives on GL_4 with names like 111")
        return fixtures.rep(name)
    if arg == "supercuspidal":
        lines = [CuspidalLine(f"pi{k}") for k in range(len(rd.block_orbits()))]
        return supercuspidal(rd, rd.roots, lines)
    path = Path(arg)
    if not path.exists():
        raise InputError(f"rep file {arg} not found")
    try:
        return serialize.rep_from_dict(rd, json.loads(path.read_text()))
    except (KeyError, ValueError, IndexError) as exc:
        raise InputError(f"bad rep document: {exc}") from None


def label_text(rd, lab):
    if lab and lab[0] == "ind":
        return "I(" + ", ".join(str(l) + (f"@{c}" if c else "") for l, c in lab[1:]) + ")"
    if rd == fixtures.gl4():
        name = fixtures.name_of(lab)
        if name:
            return f"[{name}]"
    o = levi_omega(rd, rd.roots, lab)[0]
    return "<" + " ".join(str(l) for l in o) + ">"


def render_eval(rd, res):
    if not res:
        return "0"
    return "\n".join(f"{c:+d} {label_text(rd, lab)} (x) {t}" for (lab, t), c in res.items())


# -- commands ------------------------------------------------------------------


def cmd_poset(cfg, out):
    rd = build_root_datum(cfg.group)
    poset = down_set(rd, top_pair(rd, cfg.mu))
    if cfg.format == "dot":
        out.write(hasse_dot(rd, poset))
    elif cfg.format == "json":
        out.write(
            serialize.dumps(
                {
                    "nodes": [serialize.pair_to_dict(p) for p in poset.nodes],
                    "edges": [[poset.nodes.index(u), poset.nodes.index(l)] for u, l in poset.edges],
                }
            )
            + "\n"
        )
    else:
        for p in poset.nodes:
            out.write(pair_label(rd, p) + "\n")
        for u, l in poset.edges:
            out.write(f"{pair_label(rd, u)} > {pair_label(rd, l)}\n")
    return 0


def _classes(rd, cfg):
    mu = rd.dominant_rep(rd.roots, cfg.mu)
    if cfg.b is None:
        return list(enumerate_B(rd, mu))
    b = find_class(rd, mu, cfg.b)
    return [b] if b else []


def cmd_bset(cfg, out):
    rd = build_root_datum(cfg.group)
    rows = enumerate_B(rd, rd.dominant_rep(rd.roots, cfg.mu))
    if cfg.format == "json":
        out.write(serialize.dumps([serialize.class_to_dict(b) for b in rows]) + "\n")
        return 0
    for b in rows:
        nu = ",".join(serialize.q_str(x) for x in b.newton)
        out.write(f"nu=({nu})  kappa={b.kappa}  M_b={levi_name(rd, b.levi)}\n")
    return 0


def cmd_mant(cfg, out):
    rd = build_root_datum(cfg.group)
    mu = rd.dominant_rep(rd.roots, cfg.mu)
    rep = load_rep(rd, cfg.rep)
    docs = []
    for b in _classes(rd, cfg):
        s = M_sum(rd, b, mu)
        res = evaluate_M(rd, b, mu, rep) if rep is not None else None
        if cfg.format == "json":
            d = {"b": serialize.class_to_dict(b), "sum": serialize.signed_sum_to_list(s)}
            if res is not None:
                d["eval"] = serialize.eval_to_list(res)
            docs.append(d)
            continue
        nu = ",".join(serialize.q_str(x) for x in b.newton)
        out.write(f"b: nu=({nu})\n")
        for p, c in s.items():
            out.write(f"  {c:+d} {pair_label(rd, p)}\n")
        if res is not None:
            out.write("  evaluation:\n")
            if rd == fixtures.gl4() and rep.regime == "regular":
                out.write("    " + (fixtures.render(res) or "0") + "\n")
            else:
                for line in render_eval(rd, res).splitlines():
                    out.write("    " + line + "\n")
    if cfg.format == "json":
        out.write(serialize.dumps(docs) + "\n")
    return 0


def cmd_rel(cfg, out):
    rd = build_root_datum(cfg.group)
    mu = rd.dominant_rep(rd.roots, cfg.mu)
    docs = []
    for b in _classes(rd, cfg):
        S = b.levi if cfg.levi is None else cfg.levi
        if not S <= b.levi:
            if cfg.b is not None:
                raise InputError("the Levi must lie inside the centralizer of the Newton point")
            continue
        rel = rel_set(rd, S, b, mu)
        ind = I_set(rd, b.levi, b, mu)
        if cfg.format == "json":
            docs.append(
                {
                    "b": serialize.class_to_dict(b),
                    "levi": sorted(S),
                    "rel": [serialize.pair_to_dict(p) for p in rel],
                    "I": [serialize.pair_to_dict(p) for p in ind],
                }
            )
            continue
        nu = ",".join(serialize.q_str(x) for x in b.newton)
        out.write(f"b: nu=({nu})  S={levi_name(rd, S)}\n")
        for p in rel:
            out.write(f"  rel {pair_label(rd, p)}\n")
        for p in ind:
            out.write(f"  I   {pair_label(rd, p)}\n")
    if cfg.format == "json":
        out.write(serialize.dumps(docs) + "\n")
    return 0


VERIFY_NAMES = ("sum", "induction", "itrans", "sumrel", "question", "appendixB", "kottwitz", "harris", "shin")


def cmd_verify(args, out):
    name = args.what
    if name == "appendixB":
        specs = [load_group(args.group)] if args.group else None
        bad = sweeps.check_appendix_b(specs, args.samples)
    elif name == "kottwitz":
        bad = sweeps.check_kottwitz(sweeps.sweep_cases(args.max_rank))
    elif name == "harris":
        bad = sweeps.check_harris_sweep(min(args.max_rank, 5))
    elif name == "shin":
        bad = sweeps.check_shin_random(args.samples, min(args.max_rank, 4))
    else:
        bad = sweeps.VERIFIERS[name](args.max_rank)
    if args.format == "json":
        out.write(serialize.dumps({"check": name, "pass": not bad, "failures": bad}) + "\n")
    else:
        for line in bad:
            out.write(f"FAIL {line}\n")
        out.write(f"{name}: {'pass' if not bad else f'fail ({len(bad)})'}\n")
    return 0 if not bad else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="cocharpairs", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json")):
        p.add_argument("--group", help="group JSON file (or inline JSON)")
        p.add_argument("--mu", help="cocharacter as comma separated integers")
        p.add_argument("--format", choices=formats, default="text")

    common(sub.add_parser("poset", help="pairs below (G, mu)"), ("text", "json", "dot"))
    common(sub.add_parser("bset", help="the classes B(G, mu)"))
    p = sub.add_parser("mant", help="signed sums and their evaluation")
    common(p)
    p.add_argument("--b", help="Newton point as comma separated rationals")
    p.add_argument("--rep", help="rep file, appendixA[:name] or supercuspidal")
    p = sub.add_parser("rel", help="Rel and I sets")
    common(p)
    p.add_argument("--b", help="Newton point as comma separated rationals")
    p.add_argument("--levi", help="simple roots (0-based) of the Levi")
    p = sub.add_parser("verify", help="verification sweeps")
    p.add_argument("what", choices=VERIFY_NAMES)
    p.add_argument("--group", help="group file for appendixB")
    p.add_argument("--max-rank", type=int, default=6)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--format", choices=("text", "json"), default="text")
    return ap


COMMANDS = {"poset": cmd_poset, "bset": cmd_bset, "mant": cmd_mant, "rel": cmd_rel}


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args, out)
        cfg = make_config(args)
        return COMMANDS[cfg.command](cfg, out)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
