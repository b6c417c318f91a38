"""Command-line front end.

Exit codes: 0 on success (and on verification "passed"), 1 when a
requested verification fails (the report goes to stdout), 2 on usage or
input errors.  Every written file carries provenance comments (tool
version, exact command line, RNG seed) sufficient to reproduce it
byte-for-byte; all randomness flows through the single --rng-seed flag.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__, construct, seeds
from .array import (
    Array,
    is_difference_scheme,
    is_nested,
    is_resolvable,
    is_sliced,
    p3_ratio,
    read_array,
    strength_at_least,
    write_array,
)
from .errors import OakronError, UnknownSeed
from .gf import field_new, format_tables
from .kron import ArrayStack, generalized_kronecker_sum, kronecker_sum, scalar_mul
from .project import apply as project_apply, read_projection


def _provenance(args_ns, argv) -> list[str]:
    comments = [f"oakron {__version__}", "command: oakron " + " ".join(argv)]
    if getattr(args_ns, "randomize", False):
        comments.append(f"rng-seed: {args_ns.rng_seed}")
    return comments


def _emit(d: Array, t: int, args, argv) -> None:
    comments = _provenance(args, argv)
    if args.out:
        write_array(d, args.out, t=t, comments=comments)
    else:
        write_array(d, sys.stdout, t=t, comments=comments)


def _read(path: str) -> tuple[Array, int]:
    return read_array(path)


# ---------------------------------------------------------------------------
# subcommand handlers (return exit status)
# ---------------------------------------------------------------------------


def _cmd_gf(args, argv) -> int:
    print(format_tables(field_new(args.order)))
    return 0


def _cmd_kron(args, argv) -> int:
    if args.op == "scale":
        if args.alpha is None:
            raise OakronError("kron --op scale needs --alpha")
        d, _ = _read(args.inputs[0])
        _emit(scalar_mul(args.alpha, d), 0, args, argv)
        return 0
    if len(args.inputs) != 2:
        raise OakronError(f"kron --op {args.op} needs two input files")
    a, _ = _read(args.inputs[0])
    b, _ = _read(args.inputs[1])
    if args.op == "sum":
        _emit(kronecker_sum(a, b), 0, args, argv)
    else:
        _emit(generalized_kronecker_sum(a, ArrayStack.from_stacked(b, a.n)), 0, args, argv)
    return 0


def _cmd_project(args, argv) -> int:
    delta = read_projection(args.proj)
    d, _ = _read(args.input)
    _emit(project_apply(delta, d), 0, args, argv)
    return 0


def _cmd_verify(args, argv) -> int:
    d, header_t = _read(args.input)
    reports = []
    t = args.strength if args.strength is not None else (header_t if header_t >= 1 else None)
    if t is not None:
        reports.append(strength_at_least(d, t))
    if args.alpha is not None:
        reports.append(is_resolvable(d, args.alpha))
    if args.slices is not None:
        if not args.proj:
            raise OakronError("--slices needs --proj")
        reports.append(is_sliced(d, args.slices, read_projection(args.proj), balanced=args.balanced))
    if args.nested is not None:
        if not args.proj:
            raise OakronError("--nested needs --proj")
        reports.append(is_nested(d, args.nested, read_projection(args.proj)))
    if args.difference_scheme:
        reports.append(is_difference_scheme(d))
    if not reports:
        raise OakronError("nothing to verify: give --strength (or a typed header) or a structure flag")
    for rep in reports:
        print(rep)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_metrics(args, argv) -> int:
    d, _ = _read(args.input)
    print(p3_ratio(d))
    return 0


def _cmd_seeds(args, argv) -> int:
    if args.action == "list":
        for desc in seeds.catalog():
            note = f"  ({desc.notes})" if desc.notes else ""
            print(f"{desc.id:22s} {desc.oa_class:18s} {desc.origin}{note}")
        print("virtual ids: xi_S, ff_S_K, rh_S_K, bush_S (generated on demand)")
        return 0
    if not args.id:
        raise OakronError("seeds emit needs --id")
    d, t = _virtual_or_bundled(args.id)
    _emit(d, t, args, argv)
    return 0


def _virtual_or_bundled(seed_id: str) -> tuple[Array, int]:
    parts = seed_id.split("_")
    try:
        if parts[0] == "xi" and len(parts) == 2:
            return seeds.xi_column(int(parts[1])), 1
        if parts[0] == "ff" and len(parts) == 3:
            k = int(parts[2])
            return seeds.full_factorial(int(parts[1]), k), k
        if parts[0] == "rh" and len(parts) == 3:
            return seeds.rao_hamming(int(parts[1]), int(parts[2])), 2
        if parts[0] == "bush" and len(parts) == 2:
            return seeds.bush_strength3(int(parts[1])), 3
    except ValueError as e:
        raise UnknownSeed(f"malformed virtual seed id {seed_id!r}") from e
    return seeds.load_bundled(seed_id), seeds.claimed_strength(seed_id)


def _cmd_permute(args, argv) -> int:
    d, t = _read(args.input)
    cols = [int(x) - 1 for x in args.cols.replace(",", " ").split()]
    _emit(d.select_columns(cols), 0, args, argv)
    return 0


def _read_perm_file(path: str, m2: int) -> tuple[tuple[int, ...], ...]:
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    perms = tuple(tuple(int(x) - 1 for x in ln.split()) for ln in lines)
    for p in perms:
        if sorted(p) != list(range(m2)):
            raise OakronError(f"permutation line {p} is not a 1-indexed bijection on 1..{m2}")
    return perms


def _recipe_from_args(args) -> construct.Recipe:
    a, _ = _read(args.a)
    if args.b_repeat:
        block, _ = _read(args.b_repeat)
        stack = ArrayStack.repeat(block, a.n)
    elif args.b:
        stack = ArrayStack([_read(p)[0] for p in args.b])
    else:
        raise OakronError("construct needs --b FILE... or --b-repeat FILE")
    perms = _read_perm_file(args.perm, stack.m2) if args.perm else None
    return construct.Recipe(a, stack, perms)


def _cmd_construct(args, argv) -> int:
    mode = args.mode
    if mode == "catalog":
        rows = [
            r
            for r in construct.CATALOG
            if (args.s is None or r.s == args.s)
            and (args.n is None or r.n == args.n)
            and (args.n1 is None or r.n1 == args.n1)
        ]
        if args.list:
            for r in rows:
                print(r)
            return 0
        if not rows:
            raise OakronError("no catalog row matches the given filters")
        design = construct.catalog_build(rows[0])
    elif mode == "tower":
        if not args.b_repeat:
            raise OakronError("construct tower needs --b-repeat SEED")
        seed_arr, _ = _read(args.b_repeat)
        design = construct.build_strength3_tower(
            seed_arr, args.k, g=args.g, g2=args.g2,
            rng_seed=args.rng_seed if args.randomize else None,
        )
    else:
        recipe = _recipe_from_args(args)
        if mode == "e":
            design = construct.build_e(recipe)
        elif mode == "s3":
            design = construct.build_strength3_pair(recipe, args.g, args.g2)
        elif mode == "near3":
            design = construct.build_near3(recipe, args.drop)
            print(f"closed-form p3 = {design.p3_closed_form} "
                  f"~ {float(design.p3_closed_form):.5f}", file=sys.stderr)
        elif mode == "roa":
            design = construct.build_roa(recipe, alpha=args.alpha)
        elif mode == "bsoa":
            if not args.proj or args.slices is None:
                raise OakronError("construct bsoa needs --proj and --slices")
            design = construct.build_bsoa(recipe, args.slices, read_projection(args.proj))
        elif mode == "noa":
            if not args.proj or args.nested is None:
                raise OakronError("construct noa needs --proj and --nested")
            design = construct.build_noa(recipe, args.nested, read_projection(args.proj))
        else:  # pragma: no cover
            raise OakronError(f"unknown construct mode {mode!r}")
    _emit(design.array, design.claimed.t, args, argv)
    print(str(design), file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="oakron", description=__doc__)
    top.add_argument("--version", action="version", version=f"oakron {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gf", help="field utilities")
    gsub = p.add_subparsers(dest="gf_command", required=True)
    pt = gsub.add_parser("tables", help="print addition/multiplication tables")
    pt.add_argument("--order", type=int, required=True)
    pt.set_defaults(handler=_cmd_gf)

    p = sub.add_parser("kron", help="Kronecker-sum operators")
    p.add_argument("--op", choices=["sum", "gsum", "scale"], required=True)
    p.add_argument("--alpha", type=int, help="scalar for --op scale")
    p.add_argument("--out")
    p.add_argument("inputs", nargs="+")
    p.set_defaults(handler=_cmd_kron)

    for name in ("project", "collapse"):
        p = sub.add_parser(name, help="apply a level-collapsing projection")
        p.add_argument("--proj", required=True)
        p.add_argument("--out")
        p.add_argument("input")
        p.set_defaults(handler=_cmd_project)

    p = sub.add_parser("verify", help="verify claimed structure; exit 1 on failure")
    p.add_argument("--strength", type=int)
    p.add_argument("--alpha", type=int, help="check alpha-resolvability")
    p.add_argument("--slices", type=int, help="check the sliced property (needs --proj)")
    p.add_argument("--balanced", action="store_true", help="slices must stay balanced at s levels")
    p.add_argument("--nested", type=int, help="check the nested property (needs --proj)")
    p.add_argument("--proj")
    p.add_argument("--difference-scheme", action="store_true")
    p.add_argument("input")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("metrics", help="design metrics")
    msub = p.add_subparsers(dest="metric", required=True)
    mp = msub.add_parser("p3", help="fraction of 3-orthogonal column triples")
    mp.add_argument("input")
    mp.set_defaults(handler=_cmd_metrics)

    p = sub.add_parser("seeds", help="list or emit seed arrays")
    p.add_argument("action", choices=["list", "emit"])
    p.add_argument("--id")
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_seeds)

    p = sub.add_parser("permute", help="reorder / select columns (1-indexed list)")
    p.add_argument("--cols", required=True)
    p.add_argument("--out")
    p.add_argument("input")
    p.set_defaults(handler=_cmd_permute)

    p = sub.add_parser("construct", help="run a construction recipe")
    p.add_argument("mode", choices=["e", "s3", "near3", "roa", "bsoa", "noa", "tower", "catalog"])
    p.add_argument("--a", help="file for A")
    p.add_argument("--b", action="append", help="one block file per row of A (repeatable)")
    p.add_argument("--b-repeat", help="single block file used for every row of A")
    p.add_argument("--perm", help="file of 1-indexed column orders, one line per block")
    p.add_argument("--proj")
    p.add_argument("--drop", type=int, choices=[1, 2], default=1)
    p.add_argument("--g", type=int, default=1)
    p.add_argument("--g2", type=int, default=2)
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--slices", type=int)
    p.add_argument("--nested", type=int)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--s", type=int, help="catalog filter")
    p.add_argument("--n", type=int, help="catalog filter")
    p.add_argument("--n1", type=int, help="catalog filter")
    p.add_argument("--list", action="store_true", help="list matching catalog rows")
    p.add_argument("--randomize", action="store_true",
                   help="tower: draw per-block column permutations from --rng-seed")
    p.add_argument("--rng-seed", type=int, default=20240901,
                   help="seed for randomized permutation pools")
    p.add_argument("--out")
    p.set_defaults(handler=_cmd_construct)

    return top


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args, argv)
    except OakronError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
