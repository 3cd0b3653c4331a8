"""Command-line interface.

Exit codes: 0 success, 1 negative result (property fails, certificate not
produced or not verified), 2 bad input or usage, 3 a checked guarantee was
violated (the message names it).
"""
from __future__ import annotations

import argparse
import logging
import os
import statistics
import sys
import time
from pathlib import Path

from . import io
from .errors import (
    ConstructionIncomplete,
    GenerationError,
    InvariantViolation,
    PQPierceError,
    PreconditionError,
)
from .instance import check_43, generate_cluster, generate_random_43
from .oracle import min_piercing
from .pierce943 import MODES, pierce_all
from .render import render_svg

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3


def parse_seeds(text: str) -> list[int]:
    """``"7"``, ``"1..100"`` (inclusive) or ``"1,5,9"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(s) for s in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from None


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _generate(args):
    if args.generator == "cluster":
        return generate_cluster(args.k, args.n, seed=args.seed, vertex_budget=args.vertices)
    return generate_random_43(args.n, vertex_budget=args.vertices, seed=args.seed)


def cmd_generate(args) -> int:
    fam = _generate(args)
    _emit(io.dumps(io.instance_doc(fam)), args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    fam = io.load_instance(args.input)
    rep = check_43(fam)
    if rep.satisfies_43:
        print(f"{fam.name or args.input}: (4,3)-property holds ({rep.checked_quadruples} quadruples)")
        return EXIT_OK
    print(f"{fam.name or args.input}: (4,3)-property fails; violating quadruple {list(rep.violating_quadruple)}")
    return EXIT_NEGATIVE


def cmd_pierce(args) -> int:
    fam = io.load_instance(args.input)
    try:
        cert = pierce_all(fam, mode=args.mode, max_depth=args.max_depth)
    except ConstructionIncomplete as e:
        print(f"no constructive certificate: {e}", file=sys.stderr)
        return EXIT_NEGATIVE
    doc = io.certificate_doc(cert)
    _emit(io.dumps(doc), args.output)
    if args.render:
        Path(args.render).write_text(render_svg(cert=cert))
    print(f"{fam.name or args.input}: {len(cert.points)} points via {cert.path}"
          f"{'' if cert.constructive else ' (oracle fallback)'}", file=sys.stderr)
    return EXIT_OK if cert.verified and len(cert.points) <= 9 else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    ok = io.verify_certificate_doc(io.read_json(args.input))
    print("certificate verified" if ok else "certificate does NOT pierce the family")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_oracle(args) -> int:
    fam = io.load_instance(args.input)
    sol = min_piercing(fam)
    print(f"tau = {sol.tau}")
    for p in sol.points:
        print(f"  ({p.x}, {p.y})")
    return EXIT_OK


def cmd_render(args) -> int:
    fam = io.load_instance(args.input)
    cert = pierce_all(fam, mode=args.mode, max_depth=args.max_depth) if args.solve else None
    _emit(render_svg(fam, cert), args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    rows = []
    gens = ["cluster", "random"] if args.generator == "mixed" else [args.generator]
    header = f"{'seed':>5} {'generator':<9} {'n':>3} {'path':<8} {'size':>4} {'tau':>3} {'constr':>6} {'secs':>7}"
    print(header)
    for seed in args.seeds:
        for g in gens:
            if g == "cluster":
                fam = generate_cluster(1 + seed % 3, args.n, seed=seed, vertex_budget=args.vertices)
            else:
                fam = generate_random_43(args.n, vertex_budget=args.vertices, seed=seed)
            t0 = time.perf_counter()
            cert = pierce_all(fam, mode=args.mode, max_depth=args.max_depth)
            dt = time.perf_counter() - t0
            tau = min_piercing(fam).tau
            rows.append((seed, g, len(fam), cert.path, len(cert.points), tau, cert.constructive, dt))
            print(f"{seed:>5} {g:<9} {len(fam):>3} {cert.path:<8} {len(cert.points):>4} {tau:>3} "
                  f"{'yes' if cert.constructive else 'no':>6} {dt:>7.3f}")
    sizes = [r[4] for r in rows]
    print(f"instances {len(rows)}  max size {max(sizes)}  max tau {max(r[5] for r in rows)}  "
          f"constructive {sum(r[6] for r in rows)}/{len(rows)}  "
          f"median secs {statistics.median(r[7] for r in rows):.3f}")
    return EXIT_OK if max(sizes) <= 9 else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pqpierce", description="Pierce (4,3)-families of convex polygons by nine points.")
    sub = p.add_subparsers(dest="command", required=True)

    def solver_flags(sp):
        sp.add_argument("--mode", choices=MODES, default="hybrid")
        sp.add_argument("--max-depth", type=int, default=3)

    g = sub.add_parser("generate", help="write a random (4,3)-family")
    g.add_argument("--generator", choices=("cluster", "random"), default="cluster")
    g.add_argument("--n", type=int, default=8)
    g.add_argument("--k", type=int, default=2, help="number of clusters (cluster generator)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--vertices", type=int, default=8)
    g.add_argument("--output")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("check", help="decide the (4,3)-property")
    c.add_argument("--input", required=True)
    c.set_defaults(func=cmd_check)

    pc = sub.add_parser("pierce", help="compute a certificate of at most nine points")
    pc.add_argument("--input", required=True)
    pc.add_argument("--output")
    pc.add_argument("--render", help="also write an SVG drawing here")
    solver_flags(pc)
    pc.set_defaults(func=cmd_pierce)

    v = sub.add_parser("verify", help="re-check a certificate file on its own")
    v.add_argument("--input", required=True)
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact piercing number")
    o.add_argument("--input", required=True)
    o.set_defaults(func=cmd_oracle)

    r = sub.add_parser("render", help="draw a family as SVG")
    r.add_argument("--input", required=True)
    r.add_argument("--output")
    r.add_argument("--solve", action="store_true", help="overlay a certificate")
    solver_flags(r)
    r.set_defaults(func=cmd_render)

    b = sub.add_parser("bench", help="corpus statistics")
    b.add_argument("--seeds", type=parse_seeds, default=parse_seeds("1..20"))
    b.add_argument("--n", type=int, default=8)
    b.add_argument("--generator", choices=("cluster", "random", "mixed"), default="mixed")
    b.add_argument("--vertices", type=int, default=8)
    solver_flags(b)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    level = os.environ.get("PQPIERCE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as e:
        print(f"invariant violated: {e.lemma}: {e.message}", file=sys.stderr)
        return EXIT_INVARIANT
    except (PreconditionError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (GenerationError, PQPierceError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
