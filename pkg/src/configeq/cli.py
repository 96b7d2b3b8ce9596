"""Batch command-line front end.

Every subcommand prints one JSON result document.  Exit status: 0 when a
verdict was computed (whatever it is), 1 on bad input, 2 when a budget is
exceeded, 3 under ``--assert`` when the verdict is negative.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .configurations import configuration_set_ball, configuration_set_finite
from .errors import BudgetExceeded, ConfigEqError, ParseError
from .golden import (
    dinf_partition, free_block_absorption_check, free_group_partition, verify_block_predicates,
    verify_golden_implication, verify_translation_relations, znf_sigma_candidate,
)
from .groups import GeneratingTuple, center, derived_series, find_isomorphism, inn_order
from .io import digest, dumps, load_group, load_partition, parse_gens, read_text
from .localhom import (
    DEFAULT_BUDGET, build_pair_sets, check_group_law, inner_separation_witness, is_bounded_epimorphism,
    is_local_homomorphism, parse_law, tau_relation,
)
from .search import (
    Certificate, configuration_contained, strong_contained_finite, verify_certificate,
)
from .words import (
    commutator_pair, concat, derivation_form_pairs, evaluate, format_pair, free_reduce, inverse_pair,
    is_first_derivation_form, is_reduced, parse_pair,
)

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_NEGATIVE = 0, 1, 2, 3


def _finite(G, what):
    if not G.finite:
        raise ParseError(f"{what} must be a finite group")
    return G


# -- subcommands -----------------------------------------------------------------
# each returns (document, positive verdict?)


def cmd_con(args):
    G = load_group(args.group)
    part = load_partition(G, args.partition)
    gens = parse_gens(G, args.gens)
    if G.finite:
        if args.radius is not None:
            raise ParseError("--radius applies only to infinite groups")
        cs = configuration_set_finite(G, gens, part)
    else:
        cs = configuration_set_ball(G, gens, part, 8 if args.radius is None else args.radius, args.window)
    return {"gens": gens.format(), **cs.to_document()}, True


def _contain_doc(args, relation):
    G = _finite(load_group(args.G), "G")
    H = _finite(load_group(args.H), "H")
    if args.verify:
        doc = json.loads(Path(args.verify).read_text())
        certs = [doc["forward"], doc["backward"]] if "forward" in doc else [doc]
        problems = []
        for i, d in enumerate(certs):
            A, B = (G, H) if i == 0 else (H, G)
            problems += [f"{'forward' if i == 0 else 'backward'}: {p}" if len(certs) > 1 else p
                         for p in verify_certificate(Certificate.from_document(d, A, B))]
        return {"verified": args.verify and digest(read_text(args.verify)), "valid": not problems,
                "problems": problems}, not problems
    if relation == "configuration":
        forward = configuration_contained(G, H, args.max_n, args.max_m, args.threads, args.budget)
        if not args.both:
            return forward.to_document(), forward.contained
        backward = configuration_contained(H, G, args.max_n, args.max_m, args.threads, args.budget)
    else:
        gg = parse_gens(G, args.gens_g)
        if args.match_isomorphism:
            iso = find_isomorphism(G, H, gg.elements)
            if iso is None:
                raise ParseError("no isomorphism extends the given generating tuple")
            gh = GeneratingTuple(H, tuple(iso[g] for g in gg))
        else:
            gh = parse_gens(H, args.gens_h)
        forward = strong_contained_finite(G, H, gg, gh, args.max_m, args.threads)
        if not args.both:
            return forward.to_document(), forward.contained
        backward = strong_contained_finite(H, G, gh, gg, args.max_m, args.threads)
    ok = forward.contained and backward.contained
    verdict = "equivalent-within-bounds" if ok else "not-equivalent"
    return {"relation": f"{relation}-equivalence", "verdict": verdict,
            "forward": forward.to_document(), "backward": backward.to_document()}, ok


def cmd_contain(args):
    args.both = False
    return _contain_doc(args, "configuration")


def cmd_equiv(args):
    args.both = True
    return _contain_doc(args, "configuration")


def cmd_strong(args):
    args.both = not args.one_way
    return _contain_doc(args, "strong")


def _candidate(args):
    if args.family == "free-first-letter":
        return free_group_partition(args.rank or 2)
    if args.family == "dinf-five-block":
        return dinf_partition()
    F = _finite(load_group(args.finite), "--finite")
    return znf_sigma_candidate(args.rank or 1, F)


DEFAULT_CHECKS = {
    "free-first-letter": ("translation", "absorption", "blocks"),
    "dinf-five-block": ("blocks", "configurations"),
    "znf-sign-atoms": ("configurations",),
}


def cmd_golden(args):
    c = _candidate(args)
    checks = args.check or list(DEFAULT_CHECKS[args.family])
    if args.rival and "implication" not in checks:
        checks.append("implication")
    doc = {"family": args.family, "params": c.params, "reports": []}
    ok = True
    for check in checks:
        if check == "translation":
            rep = verify_translation_relations(c, args.radius)
        elif check == "absorption":
            rep = free_block_absorption_check(c.group.rank, args.max_len)
        elif check == "blocks":
            rep = verify_block_predicates(c, args.radius)
        elif check == "implication":
            if not args.rival:
                raise ParseError("the implication check needs --rival")
            rival = load_partition(c.group, args.rival)
            rival_gens = parse_gens(c.group, args.rival_gens)
            rep = verify_golden_implication(c, rival_gens, rival, args.max_len, args.radius)
        else:  # configurations
            cs = configuration_set_ball(c.group, c.gens, c.part, args.radius, args.window)
            doc["configurations"] = cs.to_document()
            continue
        ok = ok and rep.ok
        doc["reports"].append(rep.to_document())
    return doc, ok


def cmd_words(args):
    n = args.n
    G = None
    if args.group:
        G = load_group(args.group)
        gens = parse_gens(G, args.gens)
        n = n or len(gens)
    pairs = [parse_pair(t, n or _infer_n(args.pairs)) for t in args.pairs]
    p = pairs[0]
    doc = {"action": args.action, "pairs": [format_pair(q) for q in pairs]}
    if args.action == "eval":
        if G is None:
            G = load_group(f"free:{p.n}")
            gens = G.standard_generators()
        doc["value"] = G.format(evaluate(p, gens))
    elif args.action == "reduce":
        doc["result"] = format_pair(free_reduce(p))
        doc["reduced"] = is_reduced(p)
    elif args.action == "inverse":
        doc["result"] = format_pair(inverse_pair(p))
    elif args.action in ("concat", "commutator"):
        if len(pairs) != 2:
            raise ParseError(f"{args.action} takes two pairs")
        op = concat if args.action == "concat" else commutator_pair
        doc["result"] = format_pair(op(*pairs))
    else:  # derivation-check
        doc["first_derivation_form"] = is_first_derivation_form(p)
    return doc, True


def _infer_n(texts):
    idx = [int(t[1:]) for s in texts for t in s.replace(",", " ").split() if t != "e" and t[1:].isdigit()]
    return max(idx, default=1)


def cmd_derived(args):
    if args.action == "gen":
        count = 10 if args.budget is None else args.budget
        doc = {"n": args.n, "k": args.k, "budget": count, "pairs": []}
        G = None
        if args.group:
            G = _finite(load_group(args.group), "--group")
            gens = parse_gens(G, args.gens)
            if len(gens) != args.n:
                raise ParseError("--gens must have n elements")
            level = derived_series(G, args.k).level(args.k)
        ok = True
        for p in derivation_form_pairs(args.n, args.k, count):
            entry = {"pair": format_pair(p), "first_derivation_form": is_first_derivation_form(p)}
            if G is not None:
                entry["in_derived_subgroup"] = evaluate(p, gens) in level
                ok = ok and entry["in_derived_subgroup"]
            ok = ok and entry["first_derivation_form"]
            doc["pairs"].append(entry)
        return doc, ok
    G = _finite(load_group(args.group), "the group")
    rep = derived_series(G, args.k)
    return {"group": G.name, "k": args.k, "orders": list(rep.orders)}, True


def cmd_inn(args):
    G = _finite(load_group(args.group), "the group")
    return {"group": G.name, "order": G.order, "center_order": len(center(G)),
            "inn_order": inn_order(G)}, True


def _law_domain(text: str, seed):
    kind, _, rest = text.partition(":")
    if kind == "all" and not rest:
        return "all"
    if kind == "ball" and rest.isdigit():
        return ("ball", int(rest))
    if kind == "sample" and rest.isdigit():
        return ("sample", int(rest), 0 if seed is None else seed)
    raise ParseError(f"bad law domain {text!r}; expected all, ball:R or sample:K")


def cmd_law(args):
    G = load_group(args.group)
    law = parse_law(args.law)
    domain = _law_domain(args.domain, args.seed)
    res = check_group_law(G, law, domain)
    doc = {"law": law.name or format_pair(law.word), "word": format_pair(law.word), "group": G.name if G.finite else repr(G),
           "domain": args.domain, "seed": args.seed if isinstance(domain, tuple) and domain[0] == "sample" else None,
           "verdict": res.verdict, "checked": res.checked,
           "witness": None if res.witness is None else [G.format(x) for x in res.witness]}
    return doc, res.ok


def cmd_localhom(args):
    budget = DEFAULT_BUDGET if args.budget is None else args.budget
    if args.action == "pairsets":
        ps = build_pair_sets(args.n, args.n0, budget)
        return {"n": args.n, "n0": args.n0, "sizes": {"S0": len(ps.S0), "S1": len(ps.S1), "S2": len(ps.S2)}}, True
    if args.action == "separate":
        G = load_group(args.G)
        gens = parse_gens(G, args.gens_g)
        p1, p2 = parse_pair(args.p1, len(gens)), parse_pair(args.p2, len(gens))
        w = inner_separation_witness(G, gens, p1, p2, args.max_len)
        return {"p1": format_pair(p1), "p2": format_pair(p2), "max_len": args.max_len,
                "witness": None if w is None else format_pair(w)}, w is not None
    G, H = load_group(args.G), load_group(args.H)
    gg, gh = parse_gens(G, args.gens_g), parse_gens(H, args.gens_h)
    if args.action == "epi":
        res = is_bounded_epimorphism(gg, gh, args.max_len, budget)
        return {"max_len": args.max_len, "verdict": res.verdict, "checked": res.checked,
                "witness": None if res.witness is None else format_pair(res.witness)}, res.ok
    ps = build_pair_sets(len(gg), args.n0, budget)
    rel = tau_relation(gg, gh, ps.S0)
    base = [evaluate(p, gg) for p in ps.S2]
    res = is_local_homomorphism(rel, base)
    return {"n0": args.n0, "pairs": len(ps.S0), "base": sorted({G.format(x) for x in base}),
            "verdict": res.verdict, "witness": res.witness}, res.ok


# -- parser --------------------------------------------------------------------------


def _global_flags(p, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--threads", type=int, default=d(1), help="worker threads for searches")
    p.add_argument("--seed", type=int, default=d(None), help="seed for sampled domains")
    p.add_argument("--budget", type=int, default=d(None), help="work cap (pairs or configuration pairs)")
    p.add_argument("--out", default=d(None), help="write the result document here instead of stdout")
    p.add_argument("--manifest", default=d(None), help="write a run manifest (with wall time) here")
    p.add_argument("--assert", dest="assert_", action="store_true", default=d(False),
                   help="exit 3 when the verdict is negative")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="configeq", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    _global_flags(ap, suppress=False)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        p = sub.add_parser(name, help=help)
        _global_flags(p, suppress=True)
        p.set_defaults(fn=fn)
        return p

    p = add("con", cmd_con, "configuration set of (gens, partition)")
    p.add_argument("group")
    p.add_argument("partition")
    p.add_argument("--gens", help="';'-separated generator names (default: standard tuple)")
    p.add_argument("--radius", type=int, help="ball radius cap (infinite groups)")
    p.add_argument("--window", type=int, default=2, help="stability window")

    for name, fn, help in (("contain", cmd_contain, "bounded configuration containment G <= H"),
                           ("equiv", cmd_equiv, "bounded configuration equivalence")):
        p = add(name, fn, help)
        p.add_argument("G")
        p.add_argument("H")
        p.add_argument("--max-n", type=int, default=2)
        p.add_argument("--max-m", type=int, default=3)
        p.add_argument("--verify", help="re-check a certificate document instead of searching")

    p = add("strong", cmd_strong, "strong configuration equivalence with fixed generating tuples")
    p.add_argument("G")
    p.add_argument("H")
    p.add_argument("--gens-g")
    p.add_argument("--gens-h")
    p.add_argument("--match-isomorphism", action="store_true",
                   help="take H's tuple as the image of G's under an isomorphism")
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--one-way", action="store_true", help="only check G into H")
    p.add_argument("--verify")

    p = add("golden", cmd_golden, "checks on a golden configuration pair family")
    p.add_argument("--family", required=True, choices=tuple(DEFAULT_CHECKS))
    p.add_argument("--rank", type=int)
    p.add_argument("--finite", default="corpus:Z2", help="finite factor for znf-sign-atoms")
    p.add_argument("--check", action="append",
                   choices=("translation", "absorption", "blocks", "configurations", "implication"))
    p.add_argument("--radius", type=int, default=8)
    p.add_argument("--window", type=int, default=2)
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--rival", help="rival partition (file or inline) for the implication check")
    p.add_argument("--rival-gens")

    p = add("words", cmd_words, "representative pair calculus")
    p.add_argument("action", choices=("eval", "reduce", "inverse", "concat", "commutator", "derivation-check"))
    p.add_argument("pairs", nargs="+")
    p.add_argument("--n", type=int, help="ambient generator count")
    p.add_argument("--group")
    p.add_argument("--gens")

    p = add("derived", cmd_derived, "derivation-form pairs and derived series")
    p.add_argument("action", choices=("gen", "series"))
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--group")
    p.add_argument("--gens")

    p = add("inn", cmd_inn, "order of the inner automorphism group")
    p.add_argument("group")

    p = add("law", cmd_law, "check a group law")
    p.add_argument("law", help="named law (abelian, exponent2, ...) or signed-index word")
    p.add_argument("group")
    p.add_argument("--domain", default="all", help="all, ball:R or sample:K")

    p = add("localhom", cmd_localhom, "tau relation, local homomorphisms, epimorphisms, separation")
    p.add_argument("action", choices=("pairsets", "check", "epi", "separate"))
    p.add_argument("G", nargs="?")
    p.add_argument("H", nargs="?")
    p.add_argument("--gens-g")
    p.add_argument("--gens-h")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--n0", type=int, default=1)
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--p1", default="e")
    p.add_argument("--p2", default="e")
    return ap


def _manifest(args, argv, elapsed):
    inputs = {}
    for key in ("group", "partition", "G", "H", "verify", "rival", "finite"):
        src = getattr(args, key, None)
        if src:
            inputs[src] = digest(read_text(src))
    bounds = {k: v for k, v in sorted(vars(args).items())
              if k not in ("fn", "command", "out", "manifest", "assert_") and v is not None}
    return {"subcommand": args.command, "argv": list(argv), "inputs": inputs, "bounds": bounds,
            "version": __version__, "wall_time": round(elapsed, 6)}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        if args.threads < 1:
            raise ParseError("--threads must be at least 1")
        doc, ok = args.fn(args)
    except BudgetExceeded as exc:
        sys.stderr.write(dumps({"error": "budget-exceeded", "message": str(exc)}))
        return EXIT_BUDGET
    except (ConfigEqError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        sys.stderr.write(dumps({"error": type(exc).__name__, "message": str(msg)}))
        return EXIT_INPUT
    text = dumps(doc)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.manifest:
        Path(args.manifest).write_text(dumps(_manifest(args, argv, time.perf_counter() - t0)))
    return EXIT_NEGATIVE if args.assert_ and not ok else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
