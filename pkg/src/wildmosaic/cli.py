"""wildmosaic command line.

Exit status: 0 ok, 1 check failure or nothing found, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from . import generate, moves, realize, tree
from .grid import Kind, classify, format_mosaic, knot_inject, parse_mosaic, tangle_inject, violations
from .transforms import D4Element, EmbedError, EmbedSpec, UnsupportedArity, boundary_adjust, d4_act, embed, zoom


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _is_tree(text: str) -> bool:
    for line in text.splitlines():
        word = line.split("#", 1)[0].split()
        if word:
            return word[0] == "tree"
    return False


def _mosaic(path: str):
    try:
        return parse_mosaic(_read(path))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _tree(path: str) -> tree.TreeMosaic:
    _read(path)
    try:
        return tree.read_tree(path)
    except (ValueError, OSError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _pos(text: str) -> tuple[int, int]:
    try:
        a, b = text.strip("()@").split(",")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j, got {text!r}") from None


def _sigma(text: str) -> D4Element:
    try:
        return D4Element.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_tree(args, tm: tree.TreeMosaic) -> None:
    if not args.output:
        raise UsageError("tree output needs -o FILE (mosaic files are written next to it)")
    tree.write_tree(tm, args.output)


# -- commands ------------------------------------------------------------


def cmd_validate(args) -> int:
    text = _read(args.file)
    if _is_tree(text):
        problems = [str(v) for v in tree.validate(_tree(args.file))]
    else:
        M, kind = _mosaic(args.file)
        problems = violations(M, kind)
    for p in problems:
        print(p, file=sys.stderr)
    print("ok" if not problems else f"{len(problems)} violation(s)")
    return 1 if problems else 0


def cmd_classify(args) -> int:
    M, _ = _mosaic(args.file)
    print(classify(M).value)
    return 0


def cmd_inject(args) -> int:
    M, _ = _mosaic(args.file)
    out = knot_inject(M) if M.kind in (Kind.KNOT, Kind.RVKNOT) else tangle_inject(M)
    _emit(args, format_mosaic(out))
    return 0


def cmd_zoom(args) -> int:
    M, _ = _mosaic(args.file)
    _emit(args, format_mosaic(zoom(args.p, M)))
    return 0


def cmd_d4(args) -> int:
    M, kind = _mosaic(args.file)
    _emit(args, format_mosaic(d4_act(args.sigma, M), kind))
    return 0


def cmd_embed(args) -> int:
    child, _ = _mosaic(args.child)
    parent, _ = _mosaic(args.parent)
    out = embed(child, parent, EmbedSpec(args.at[0], args.at[1], args.sigma))
    _emit(args, format_mosaic(out))
    return 0


def cmd_adjust(args) -> int:
    M, _ = _mosaic(args.file)
    res = boundary_adjust(M, args.min_dim)
    _emit(args, format_mosaic(res.mosaic))
    return 0


def cmd_moves_apply(args) -> int:
    M, _ = _mosaic(args.file)
    try:
        rule = moves.get_rule(args.rule)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, format_mosaic(moves.apply(M, rule, args.at, args.direction)))
    return 0


def cmd_moves_scan(args) -> int:
    M, _ = _mosaic(args.file)
    fams = args.families.split(",") if args.families else None
    sites = moves.scan(M, fams)
    for s in sites:
        print(f"{s.direction} {s.rule} @({s.pos[0]},{s.pos[1]})")
    return 0 if sites else 1


def cmd_moves_search(args) -> int:
    A, _ = _mosaic(args.a)
    B, _ = _mosaic(args.b)
    fams = args.families.split(",") if args.families else None
    t0 = time.perf_counter()
    res = moves.search_equiv(
        A, B, max_dim=args.max_dim, max_steps=args.max_steps, families=fams,
        injections=not args.no_inject, max_states=args.max_states,
    )
    print(f"# {res.status}, {res.states} states, {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    if not res.found:
        print(res.status)
        return 1
    _emit(args, str(res.certificate))
    return 0


def cmd_moves_replay(args) -> int:
    A, _ = _mosaic(args.a)
    try:
        cert = moves.MoveCertificate.parse(_read(args.certificate))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = moves.replay(A, cert)
    if args.b:
        B, _ = _mosaic(args.b)
        ok = out == B
        print("ok" if ok else "certificate does not reach the target")
        return 0 if ok else 1
    _emit(args, format_mosaic(out))
    return 0


def cmd_moves_lint(args) -> int:
    problems = moves.lint_catalog()
    for p in problems:
        print(p)
    if not problems:
        print(f"ok: {len(moves.base_rules())} base rules, {len(moves.catalog())} after closure")
    return 1 if problems else 0


def cmd_tree_contract(args) -> int:
    tm = _tree(args.tree)
    S = args.vertices.split(",") if args.vertices else tm.vertices
    _emit_tree(args, tree.contract(tm, S))
    return 0


def cmd_tree_star(args) -> int:
    res = tree.star_reduce(_tree(args.tree))
    print(f"divergence depth {res.divergence_depth}", file=sys.stderr)
    _emit_tree(args, res.tree)
    return 0


def cmd_tree_unroll(args) -> int:
    tm = _tree(args.tree)
    name = args.ray or (tm.rays[0].name if tm.rays else None)
    if name is None:
        raise UsageError("tree has no rays")
    try:
        _emit_tree(args, tree.unroll(tm, name, args.k))
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    return 0


def cmd_tree_vstar(args) -> int:
    tm = _tree(args.tree)
    _emit_tree(args, tree.tree_move_vstar(tm, args.child, args.sigma))
    return 0


def cmd_tree_viii(args) -> int:
    tm = _tree(args.tree)
    _emit_tree(args, tree.tree_move_viii(tm, args.vertex, args.at, args.variant))
    return 0


def cmd_tree_equiv(args) -> int:
    t1, t2 = _tree(args.a), _tree(args.b)
    S1 = args.contract_a.split(",") if args.contract_a else None
    S2 = args.contract_b.split(",") if args.contract_b else None
    try:
        res = tree.tree_equiv(t1, t2, S1, S2, max_steps=args.max_steps)
    except tree.StructuralMismatch as exc:
        print(f"not comparable: {exc}")
        return 1
    if res.status != "found":
        print(f"not-found at {res.failed}")
        return 1
    for where, cert in res.certificates.items():
        print(f"# {where}")
        sys.stdout.write(str(cert))
    return 0


def cmd_realize(args) -> int:
    text = _read(args.file)
    if _is_tree(text):
        tm = _tree(args.file)
        if tm.rays and args.depth is None and args.ray_steps is None:
            raise UsageError("an infinite tree needs -d DEPTH or --ray-steps")
        R = realize.realize_tree(tm, args.depth, args.ray_steps)
        size = tm.mosaics[tm.root].dim
    else:
        M, _ = _mosaic(args.file)
        R = realize.realize_mosaic(M, args.mode)
        size = M.dim
    out = realize.export(R, args.format, size)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out.decode())
    return 0


def cmd_bounds(args) -> int:
    tm = _tree(args.tree)
    problems = tree.validate(tm)
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return 1
    checks = realize.check_bounds(tm, args.depth)
    for c in checks:
        print(f"{'pass' if c.ok else 'FAIL'} {c.name}" + (f": {c.detail}" if c.detail and not c.ok else ""))
    for r in tm.rays:
        lp = realize.limit_point(tm, r.name)
        print(f"limit {r.name} " + " ".join(str(c) for c in lp))
        print(f"hint {r.name} {realize.ray_tameness_hint(tm, r.name)}")
    return 0 if all(c.ok for c in checks) else 1


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    if args.what == "tree":
        _emit_tree(args, generate.random_tree(rng, args.vertices, rays=args.rays, max_product=args.max_product))
        return 0
    M = generate.random_kind(rng, args.what, args.dim)
    _emit(args, format_mosaic(M))
    return 0


# -- parser --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wildmosaic", description="Knot mosaics, tree mosaics and their realizations.")
    sub = p.add_subparsers(dest="command", required=True)

    def out(sp):
        sp.add_argument("-o", "--output", help="write here instead of stdout")

    sp = sub.add_parser("validate", help="check a mosaic or tree file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("classify", help="print the most specific mosaic kind")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("inject", help="grow by one row and column")
    sp.add_argument("file")
    out(sp)
    sp.set_defaults(func=cmd_inject)

    sp = sub.add_parser("zoom", help="p-zoom with odd p")
    sp.add_argument("file")
    sp.add_argument("-p", type=int, required=True)
    out(sp)
    sp.set_defaults(func=cmd_zoom)

    sp = sub.add_parser("d4", help="act by a symmetry of the square")
    sp.add_argument("file")
    sp.add_argument("-s", "--sigma", type=_sigma, required=True, help="one of e r r2 r3 f rf r2f r3f")
    out(sp)
    sp.set_defaults(func=cmd_d4)

    sp = sub.add_parser("embed", help="insert a child tangle into a T-inf tile")
    sp.add_argument("child")
    sp.add_argument("parent")
    sp.add_argument("-at", "--at", type=_pos, required=True, metavar="A,B")
    sp.add_argument("-s", "--sigma", type=_sigma, default=D4Element())
    out(sp)
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("adjust", help="move boundary points to side centres")
    sp.add_argument("file")
    sp.add_argument("--min-dim", type=int)
    out(sp)
    sp.set_defaults(func=cmd_adjust)

    mp = sub.add_parser("moves", help="rewrite moves").add_subparsers(dest="action", required=True)
    sp = mp.add_parser("apply")
    sp.add_argument("file")
    sp.add_argument("--rule", required=True)
    sp.add_argument("--at", type=_pos, required=True, metavar="I,J")
    sp.add_argument("--direction", choices=("LR", "RL"), default="LR")
    out(sp)
    sp.set_defaults(func=cmd_moves_apply)
    sp = mp.add_parser("scan")
    sp.add_argument("file")
    sp.add_argument("--families")
    sp.set_defaults(func=cmd_moves_scan)
    sp = mp.add_parser("search")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--max-dim", type=int)
    sp.add_argument("--max-steps", type=int, default=6)
    sp.add_argument("--max-states", type=int, default=200_000)
    sp.add_argument("--families")
    sp.add_argument("--no-inject", action="store_true")
    out(sp)
    sp.set_defaults(func=cmd_moves_search)
    sp = mp.add_parser("replay")
    sp.add_argument("a")
    sp.add_argument("certificate")
    sp.add_argument("b", nargs="?")
    out(sp)
    sp.set_defaults(func=cmd_moves_replay)
    sp = mp.add_parser("lint")
    sp.set_defaults(func=cmd_moves_lint)

    tp = sub.add_parser("tree", help="tree mosaic operations").add_subparsers(dest="action", required=True)
    sp = tp.add_parser("contract")
    sp.add_argument("tree")
    sp.add_argument("--vertices", help="comma separated; default all core vertices")
    out(sp)
    sp.set_defaults(func=cmd_tree_contract)
    sp = tp.add_parser("star")
    sp.add_argument("tree")
    out(sp)
    sp.set_defaults(func=cmd_tree_star)
    sp = tp.add_parser("unroll")
    sp.add_argument("tree")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--ray")
    out(sp)
    sp.set_defaults(func=cmd_tree_unroll)
    sp = tp.add_parser("move-vstar")
    sp.add_argument("tree")
    sp.add_argument("--child", required=True)
    sp.add_argument("-s", "--sigma", type=_sigma, required=True)
    out(sp)
    sp.set_defaults(func=cmd_tree_vstar)
    sp = tp.add_parser("move-viii")
    sp.add_argument("tree")
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--at", type=_pos, required=True, metavar="I,J")
    sp.add_argument("--variant", choices=("a", "b"), default="a")
    out(sp)
    sp.set_defaults(func=cmd_tree_viii)
    sp = tp.add_parser("equiv")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--contract-a")
    sp.add_argument("--contract-b")
    sp.add_argument("--max-steps", type=int, default=4)
    sp.set_defaults(func=cmd_tree_equiv)

    sp = sub.add_parser("realize", help="export a realization as svg or seg")
    sp.add_argument("file")
    sp.add_argument("-d", "--depth", type=int)
    sp.add_argument("--ray-steps", type=int)
    sp.add_argument("--format", choices=("svg", "seg"), default="seg")
    sp.add_argument("--mode", choices=("tame", "full"), default="tame")
    out(sp)
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("bounds", help="run every quantitative check on a tree")
    sp.add_argument("tree")
    sp.add_argument("-d", "--depth", type=int, default=6)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("gen", help="random test data")
    sp.add_argument("what", choices=("knot", "tangle", "rvknot", "rvtangle", "tree"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--dim", type=int, default=5)
    sp.add_argument("--vertices", type=int, default=4)
    sp.add_argument("--rays", type=int, default=0)
    sp.add_argument("--max-product", type=int, default=2025)
    out(sp)
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"wildmosaic: {exc}", file=sys.stderr)
        return 2
    except (EmbedError, UnsupportedArity, moves.NotApplicable, tree.ContractionError, tree.TreeMoveError) as exc:
        print(f"wildmosaic: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"wildmosaic: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
