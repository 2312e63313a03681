"""Command line entry point.

Exit codes: 0 success, 1 input error, 2 mathematical finding (target missed,
invalid witness, infeasible labeling, failed decomposition).
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .generators import (RandomModel, expected_minor_probability, fix_antitriangles, gen_dipole_graph,
                         gen_petersen_complement, gen_random_dense, gen_v8_complement,
                         monte_carlo_fixed_partition)
from .graph import GraphParseError, antitriangle, parse_graph, write_graph
from .labeling import (LabelingError, clique_cover_labeling, complement_3coloring_cliques, format_aacw,
                       format_labeling, labeling_certificate, parse_labeling, refine_labeling,
                       solve_2sat_labeling)
from .strategies import best_minor, format_report
from .structure import (DecompositionError, DecompositionFailure, TARGETS, dipole_decompose, k33_three_twist,
                        parse_t_spec, recognize_blownup, t_graph_labeling, t_graph_left)
from .witness import format_witness, parse_witness, verify_minor

OK, INPUT_ERROR, FINDING = 0, 1, 2

SWEEP_STRATEGIES = ("clique", "conflict-graph", "cutset", "good-matching:2sat", "good-matching:cor1",
                    "good-matching:cor2", "good-matching:cover", "p3-packing")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INPUT_ERROR, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    inp: Optional[str] = None
    out: Optional[str] = None
    seed: int = 0
    trials: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise UsageError("--trials must be at least 1")
        for path in (self.inp, self.out):
            if path is not None and not path:
                raise UsageError("file paths must be non-empty")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _load_graph(path: str):
    return parse_graph(_read(path))


def _t_spec(args):
    if args.t in (None, "k33-3twist"):
        return k33_three_twist(args.poles, args.enlarged)
    return parse_t_spec(_read(args.t))


def cmd_generate(args) -> int:
    if args.family == "petersen":
        g = gen_petersen_complement(args.sizes or [1] * 10)
    elif args.family == "v8":
        g = gen_v8_complement(args.sizes or [1] * 8)
    elif args.family == "dipole":
        g = gen_dipole_graph(_t_spec(args))
    else:
        if args.n is None:
            raise UsageError("random graphs need --n")
        g = gen_random_dense(RandomModel(args.n, args.c, args.alpha, args.seed))
        if args.fix_antitriangles:
            g = fix_antitriangles(g, args.seed)
    _write(args.out, write_graph(g))
    free = antitriangle(g) is None
    print(f"n {g.n} m {g.m} antitriangle-free {'yes' if free else 'no'}", file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return OK


def cmd_analyze(args) -> int:
    g = _load_graph(args.inp)
    rep = best_minor(g, oracle=args.oracle, strategies=args.strategy)
    sys.stdout.write(format_report(rep))
    if args.out and rep.best:
        _write(args.out, format_witness(rep.best.witness))
    if rep.size >= rep.target or rep.gap == 0:
        return OK
    return FINDING


def cmd_verify(args) -> int:
    g = _load_graph(args.inp)
    w = parse_witness(_read(args.witness))
    verdict = verify_minor(g, w)
    if verdict:
        print(f"valid K{w.size} minor")
        return OK
    print(f"invalid: {verdict.reason}")
    return FINDING


def cmd_label(args) -> int:
    g = _load_graph(args.inp)
    if args.method == "2sat":
        lab = solve_2sat_labeling(g)
        if lab is None:
            cert = labeling_certificate(g)
            print("no good/bad labeling exists")
            if cert is not None:
                sys.stdout.write(format_aacw(cert))
            return FINDING
    elif args.method == "cover":
        cliques = complement_3coloring_cliques(g)
        if cliques is None:
            print("complement is not 3-colourable")
            return FINDING
        lab = clique_cover_labeling(g, cliques)
    else:
        try:
            lab = refine_labeling(g, args.method)
        except LabelingError as exc:
            print(str(exc))
            return FINDING
    _write(args.out, format_labeling(lab))
    return OK


def cmd_decompose(args) -> int:
    if args.target:
        g = _load_graph(args.inp)
        mapping = recognize_blownup(g, args.target)
        if mapping is None:
            print(f"not a blown-up {args.target}")
            return FINDING
        for cls, v in sorted(mapping.items(), key=lambda kv: kv[1]):
            print(f"{v}: {' '.join(map(str, cls))}")
        return OK
    if args.inp:
        g = _load_graph(args.inp)
        if not args.labeling or args.left is None:
            raise UsageError("decompose needs --labeling and --left with --in")
        lab = parse_labeling(g, _read(args.labeling))
        left = args.left
    else:
        spec = _t_spec(args)
        g = gen_dipole_graph(spec)
        lab = t_graph_labeling(spec)
        left = t_graph_left(spec)
    res = dipole_decompose(g, lab, left)
    if isinstance(res, DecompositionFailure):
        print(f"failure: {res.reason} {res.where}")
        return FINDING
    for side, dipoles in (("L", res.left_dipoles), ("R", res.right_dipoles)):
        for i, d in enumerate(dipoles):
            print(f"{side}{i} top {list(d.top)} bottom {list(d.bottom)}")
    for row in res.matrix:
        print("".join(row))
    return OK


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(sorted(rows))
    return buf.getvalue()


def cmd_experiment(args) -> int:
    if args.kind == "mc-probability":
        rows = []
        for n in args.n or [5]:
            for p in args.p or [0.9]:
                mean, sigma = monte_carlo_fixed_partition(n, p, args.trials, args.seed)
                exact, _ = expected_minor_probability(n, p)
                rows.append((n, p, args.trials, f"{mean:.6f}", f"{exact:.6f}", f"{sigma:.6f}"))
        _write(args.out, _csv(rows, ("n", "p", "trials", "empirical", "exact", "sigma")))
        return OK
    rows = []
    for n in args.n or [40]:
        for i in range(args.seeds):
            seed = args.seed + i
            model = RandomModel(n, args.c, args.alpha, seed)
            g = fix_antitriangles(gen_random_dense(model), seed)
            rep = best_minor(g, oracle=False)
            sizes = {r.strategy: r.size for r in rep.reports}
            for name in SWEEP_STRATEGIES:
                rows.append((seed, n, args.alpha, args.c, name, sizes.get(name, 0), rep.target))
    _write(args.out, _csv(rows, ("seed", "n", "alpha", "c", "strategy", "size", "target")))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cliqueminor", description="Complete minors in graphs without antitriangles.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write a graph from a named family")
    p.add_argument("family", choices=["petersen", "v8", "dipole", "random"])
    p.add_argument("--sizes", type=_int_list, help="class sizes for petersen/v8")
    p.add_argument("--t", help="T-graph spec file, or k33-3twist")
    p.add_argument("--poles", type=int, default=1)
    p.add_argument("--enlarged", action="store_true", help="enlarge one left and one right pole")
    p.add_argument("--n", type=int)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fix-antitriangles", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", help="run all strategies on a graph")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--strategy", action="append", help="restrict to strategies with this name prefix")
    p.add_argument("--oracle", action=argparse.BooleanOptionalAction, default=None,
                   help="exhaustive search (default: only for n <= 10)")
    p.add_argument("--out", help="write the best witness here")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="check a witness against a graph")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--witness", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("label", help="compute an edge labeling")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--method", choices=["2sat", "cover", "cor1", "cor2"], default="2sat")
    p.add_argument("--out")
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("decompose", help="dipole decomposition or blown-up recognition")
    p.add_argument("--in", dest="inp")
    p.add_argument("--labeling")
    p.add_argument("--left", type=_int_list)
    p.add_argument("--t", help="decompose a generated T-graph (spec file or k33-3twist)")
    p.add_argument("--poles", type=int, default=1)
    p.add_argument("--enlarged", action="store_true")
    p.add_argument("--target", choices=sorted(TARGETS))
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("experiment", help="write experiment results as CSV")
    p.add_argument("kind", choices=["mc-probability", "sweep-minor-sizes"])
    p.add_argument("--n", type=_int_list)
    p.add_argument("--p", type=_float_list)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--out")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help exits 0, usage errors exit 1
        return exc.code if isinstance(exc.code, int) else INPUT_ERROR
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        RunConfig(args.command, getattr(args, "inp", None), getattr(args, "out", None),
                  getattr(args, "seed", 0), getattr(args, "trials", 1))
        return args.func(args)
    except (UsageError, GraphParseError, DecompositionError, ValueError) as exc:
        print(f"cliqueminor {args.command}: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
