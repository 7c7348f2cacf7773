"""Command line entry point: ``p6mwis <command> ...``."""

from __future__ import annotations

import argparse
import sys
import time

from .audit import audit_atoms, audit_lemmas
from .cliquesep import atom_decomposition
from .fileio import InstanceError, dumps, emit_instance, envelope, read_instance
from .generators import GenerationError, GenSpec, family_names, generate
from .graph import component_masks
from .harness import run_fuzz
from .modular import md_tree
from .patterns import is_free, parse_patterns
from .result import ClassViolation, SizeCapExceeded
from .solvers import LAYERS, clear_caches, solve_layer

EX_OK, EX_NOT_FREE, EX_CLASS, EX_CAP = 0, 1, 2, 3
EX_DATAERR, EX_USAGE = 65, 64


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="p6mwis", description="Exact maximum weight independent sets in (P6, banner)-free graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("file")
    s.add_argument("--layer", default="auto", choices=["auto", *LAYERS])
    s.add_argument("--mode", default="strict", choices=["strict", "permissive"])
    s.add_argument("--json", action="store_true")
    s.add_argument("--timing", action="store_true", help="include wall time in the output")

    c = sub.add_parser("check", help="test an instance for induced patterns")
    c.add_argument("file")
    c.add_argument("--patterns", required=True, help="comma separated, e.g. p6,banner")
    c.add_argument("--sampled", action="store_true", help="random probing only (does not certify)")
    c.add_argument("--json", action="store_true")

    d = sub.add_parser("decompose", help="modular or clique-separator decomposition")
    d.add_argument("file")
    d.add_argument("--what", required=True, choices=["modular", "atoms"])
    d.add_argument("--json", action="store_true")

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("--family", required=True, choices=family_names())
    g.add_argument("-n", type=int, required=True)
    g.add_argument("--p", type=float, default=0.3)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--wmin", type=int, default=0)
    g.add_argument("--wmax", type=int, default=100)
    g.add_argument("-o", "--output")

    f = sub.add_parser("fuzz", help="compare a layer against the oracle on random in-class graphs")
    f.add_argument("--layer", required=True, choices=[k for k in LAYERS if k != "oracle"])
    f.add_argument("--trials", type=int, required=True)
    f.add_argument("--nmax", type=int, required=True)
    f.add_argument("--seed", type=int, required=True)
    f.add_argument("--out", default="fuzz-counterexample.mwis", help="where to write a failing instance")

    a = sub.add_parser("audit", help="check the structural lemmas and claims on an instance")
    a.add_argument("file")
    a.add_argument("--pivot", type=int, help="restrict claim audits to this (1-based) vertex")
    a.add_argument("--limit", type=int, help="stop each claim audit after this many embeddings")
    a.add_argument("--json", action="store_true")

    b = sub.add_parser("bench", help="time the main solver on generated instances")
    b.add_argument("--family", required=True, choices=family_names())
    b.add_argument("--sizes", required=True, help="comma separated vertex counts")
    b.add_argument("--seed", type=int, required=True)
    b.add_argument("--layer", default="l4", choices=list(LAYERS))
    b.add_argument("--p", type=float, default=0.3)
    return p


def _cmd_solve(args: argparse.Namespace) -> int:
    G = read_instance(args.file)
    start = time.perf_counter()
    try:
        res = solve_layer(G, args.layer, args.mode)
    except ClassViolation as e:
        print(f"class violation: {e}", file=sys.stderr)
        return EX_CLASS
    except SizeCapExceeded as e:
        print(f"size cap: {e}", file=sys.stderr)
        return EX_CAP
    elapsed = time.perf_counter() - start
    env = envelope(G, res, elapsed if args.timing else None)
    if args.json:
        print(dumps(env))
    else:
        print(f"weight {env['weight']}")
        print("chosen " + " ".join(map(str, env["chosen"])))
        print(f"layer {env['layer']} certified {env['certified']}")
        if args.timing:
            print(f"time {elapsed:.3f}s")
    return EX_OK


def _cmd_check(args: argparse.Namespace) -> int:
    G = read_instance(args.file)
    report = is_free(G, parse_patterns(args.patterns), sampled=True if args.sampled else None)
    if args.json:
        print(dumps(report.to_dict(G)))
    else:
        print("free" if report.free else "not free")
        if not report.certified:
            print("(sampled check: absence of a witness is not a certificate)")
        for name, w in sorted(report.witnesses.items()):
            print(f"{name}: {' '.join(str(G.labels[x]) for x in w.mapping)}")
    return EX_OK if report.free else EX_NOT_FREE


def _cmd_decompose(args: argparse.Namespace) -> int:
    G = read_instance(args.file)
    if args.what == "modular":
        tree = md_tree(G).to_dict(G) if G.n else None
        if args.json:
            print(dumps(tree))
        else:
            _print_md(tree, 0)
        return EX_OK
    out = []
    for comp in component_masks(G):
        out.append(atom_decomposition(G.induced_mask(comp)).to_dict())
    if args.json:
        print(dumps({"components": out}))
    else:
        for i, comp in enumerate(out):
            for a in comp["atoms"]:
                print(f"component {i}: atom {a['vertices']} separator {a['separator']}")
    return EX_OK


def _print_md(node: dict | None, depth: int) -> None:
    if node is None:
        return
    pad = "  " * depth
    if node["kind"] == "leaf":
        print(f"{pad}leaf {node['vertex']}")
        return
    print(f"{pad}{node['kind']} {node['vertices']}")
    for c in node["children"]:
        _print_md(c, depth + 1)


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = GenSpec(args.family, args.n, args.p, args.seed, args.wmin, args.wmax)
    try:
        G = generate(spec)
    except GenerationError as e:
        print(f"generation failed: {e}", file=sys.stderr)
        return EX_DATAERR
    text = emit_instance(G, [f"family={args.family} n={args.n} p={args.p} seed={args.seed}"])
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EX_OK


def _cmd_fuzz(args: argparse.Namespace) -> int:
    out = run_fuzz(args.layer, args.trials, args.nmax, args.seed, counterexample=args.out)
    if out.ok:
        print(f"{args.layer}: {out.trials} trials agree with the oracle ({out.seconds:.1f}s)")
        for k, v in sorted(out.stats.items()):
            if "fallback" in k:
                print(f"  {k} = {v}")
        return EX_OK
    t, G, problem = out.failures[0]
    print(f"{args.layer}: trial {t} (n={G.n}) failed: {problem}; instance written to {args.out}", file=sys.stderr)
    return 1


def _cmd_audit(args: argparse.Namespace) -> int:
    G = read_instance(args.file)
    pivot = None if args.pivot is None else G.index_of(args.pivot)
    lemmas = audit_lemmas(G)
    result = {"lemmas": lemmas.to_dict(G)}
    ok = lemmas.passed
    for kind in ("house", "c5"):
        au = audit_atoms(G, kind, pivot, args.limit)
        ok = ok and au.passed
        entry = {
            "atoms": au.atoms,
            f"atoms_nearly_{kind}_free": au.nearly_ok,
            "claims": au.claims.to_dict(G),
        }
        if au.counterexample is not None:
            i, v, w = au.counterexample
            entry["counterexample"] = {"atom": i, "pivot": G.labels[v], "witness": w.to_dict(G)}
        if au.claims.checked == 0:
            entry["note"] = f"no pivot with an induced {kind} outside its closed neighbourhood"
        result[kind] = entry
    if args.json:
        print(dumps(result))
    else:
        print(f"prime: {lemmas.prime}")
        for c in lemmas.checks:
            state = "n/a" if not c.applicable else ("holds" if c.holds else "FAILS")
            print(f"lemma [{c.name}]: {state} {c.reason}".rstrip())
        for kind in ("house", "c5"):
            e = result[kind]
            claims = e["claims"]
            print(
                f"{kind}: {e['atoms']} atoms, nearly {kind}-free: {e[f'atoms_nearly_{kind}_free']}; "
                f"claims checked on {claims['checked']} (pivot, embedding) pairs: "
                f"{'pass' if claims['passed'] else 'FAIL'}"
            )
            if "note" in e:
                print(f"  {e['note']}")
            for f in claims["failures"][:3]:
                for c in f["claims"]:
                    if not c["passed"]:
                        print(f"  pivot {f['pivot']} H {f['H']}: {c['claim']} fails ({c['detail']} {c['witness']})")
                for note in f["notes"]:
                    print(f"    {note}")
    return EX_OK if ok else 1


def _cmd_bench(args: argparse.Namespace) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    print(f"{'n':>6} {'m':>8} {'seconds':>10} {'weight':>10}  layer")
    for n in sizes:
        G = generate(GenSpec(args.family, n, args.p, args.seed))
        clear_caches()
        start = time.perf_counter()
        res = solve_layer(G, args.layer, "permissive")
        elapsed = time.perf_counter() - start
        print(f"{G.n:>6} {G.m:>8} {elapsed:>10.3f} {res.weight:>10}  {res.layer}")
    return EX_OK


COMMANDS = {
    "solve": _cmd_solve,
    "check": _cmd_check,
    "decompose": _cmd_decompose,
    "gen": _cmd_gen,
    "fuzz": _cmd_fuzz,
    "audit": _cmd_audit,
    "bench": _cmd_bench,
}


def run_cli(argv: list[str] | None = None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (InstanceError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EX_DATAERR


def main() -> None:
    raise SystemExit(run_cli())
