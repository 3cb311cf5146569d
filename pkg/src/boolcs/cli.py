"""``boolcs`` command line.

Exit codes: 0 success, 1 unsatisfiable under ``verify --expect-sat``,
2 verification failure, 64 usage error, 65 parse error.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
import warnings
from pathlib import Path

from . import __version__
from .analysis import (
    BRUTE_FORCE_LIMIT,
    SolutionSet,
    enumerate_solutions,
    predict,
    prem,
    verify_decomposition,
)
from .anf import AnfError, format_anf, format_stats, format_tree, format_trisets, parse_trisets, read_anf
from .generators import LfsrSpec, augment_with_negation, companion_matrix, gen_lfsr_filter, gen_matrix_ab, gen_matrix_ba, gen_random
from .poly import BoolPoly
from .solver import BranchOrder, SolverConfig, bcs
from .triset import ChooseStrategy, PolySystem

EXIT_OK = 0
EXIT_UNSAT = 1
EXIT_VERIFY = 2
EXIT_USAGE = 64
EXIT_PARSE = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _threshold(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        t = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'inf', got {text!r}") from None
    if t < 1:
        raise argparse.ArgumentTypeError("threshold must be at least 1")
    return t


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="ANF system file")
    p.add_argument("--choose", choices=[c.value for c in ChooseStrategy], default=ChooseStrategy.INDEX_LEX.value)
    p.add_argument("--threshold", type=_threshold, default=4, help="monic count triggering AddReduce, or 'inf'")
    p.add_argument("--order", choices=[o.value for o in BranchOrder], default=BranchOrder.LIFO.value)
    p.add_argument("--branch-limit", type=_positive, default=None)
    p.add_argument("--time-limit", type=float, default=None, metavar="SECONDS", help="stop after this much wall time")
    p.add_argument("--backend", choices=["auto", "compiled", "python"], default="auto")
    p.add_argument("--debug", action="store_true", help="assert the termination index (Python kernel)")
    p.add_argument("--threads", type=_positive, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="boolcs", description="Characteristic-set solver for Boolean polynomial systems.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="decompose into monic triangular sets")
    _solver_flags(p)
    p.add_argument("--stats", metavar="OUT", help="write key = value statistics")
    p.add_argument("--tree", metavar="OUT", help="write the zero decomposition tree")
    p.add_argument("--trisets", metavar="OUT", help="write the triangular sets")
    p.add_argument("--enumerate", action="store_true", help="print every solution as an n-bit string")
    p.add_argument("--count", action="store_true", help="print the number of solutions")

    p = sub.add_parser("verify", help="solve, then check against brute force")
    _solver_flags(p)
    p.add_argument("--force", action="store_true", help=f"allow more than {BRUTE_FORCE_LIMIT} variables")
    p.add_argument("--expect-sat", action="store_true", help="exit 1 when the system has no solution")

    p = sub.add_parser("predict", help="estimate branch count and running time")
    _solver_flags(p)
    p.add_argument("--samples", type=_positive, default=500)
    p.add_argument("--full", action="store_true", help="also solve completely and report N_r, T_r")

    p = sub.add_parser("prem", help="pseudo-remainders of a system by triangular sets")
    p.add_argument("--input", required=True, help="ANF file of polynomials to reduce")
    p.add_argument("--against", required=True, help="triangular-set file (solve --trisets)")

    p = sub.add_parser("gen", help="generate an instance")
    gsub = p.add_subparsers(dest="family", required=True, parser_class=_Parser)
    g = gsub.add_parser("random")
    g.add_argument("--n", type=_positive, required=True)
    g.add_argument("--m", type=_positive, required=True)
    g.add_argument("--d", type=_positive, default=2)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--output", "-o")
    g = gsub.add_parser("lfsr")
    g.add_argument("--n", type=_positive, required=True)
    g.add_argument("--taps", type=_positive, nargs="+", required=True, help="feedback taps; must include 1")
    g.add_argument("--filter", required=True, help="ANF file holding one filter polynomial")
    g.add_argument("--len", type=_positive, required=True, help="keystream length m")
    g.add_argument("--plant", action="store_true", help="plant a secret state (else z_i = 0)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--output", "-o")
    g = gsub.add_parser("matrix")
    g.add_argument("--k", type=_positive, required=True)
    g.add_argument("--with-ba", metavar="OUT", help="also write the BA = I polynomials to OUT")
    g.add_argument("--negate-index", type=_positive, metavar="I", help="add g_I + 1 for the I-th BA = I polynomial")
    g.add_argument("--output", "-o")
    return ap


def _load(path: str):
    try:
        return read_anf(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _config(args, **over) -> SolverConfig:
    kw = dict(
        choose=ChooseStrategy(args.choose),
        threshold=args.threshold,
        branch_order=BranchOrder(args.order),
        branch_limit=args.branch_limit,
        time_limit=args.time_limit,
        backend=None if args.backend == "auto" else args.backend,
        threads=getattr(args, "threads", 1),
        debug=args.debug,
    )
    kw.update(over)
    return SolverConfig(**kw)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _cmd_solve(args) -> int:
    doc = _load(args.input)
    report = bcs(PolySystem(doc.n, doc.polys), _config(args, record_tree=args.tree is not None))
    if args.stats:
        _write(args.stats, format_stats(report, count=args.count))
    if args.tree:
        _write(args.tree, format_tree(report))
    if args.trisets:
        _write(args.trisets, format_trisets(doc.n, report.trisets))
    if report.partial:
        print(f"warning: stopped after {report.branch_count} branches; output is partial", file=sys.stderr)
    if args.enumerate:
        masks = set()
        for a in report.trisets:
            masks |= enumerate_solutions(a, doc.n).masks
        for bits in SolutionSet.from_masks(doc.n, masks).bitstrings():
            print(bits)
    if args.count:
        print(f"solutions: {report.solution_count}")
    if not (args.enumerate or args.count or args.trisets == "-"):
        sys.stdout.write(format_trisets(doc.n, report.trisets))
    return EXIT_OK


def _cmd_verify(args) -> int:
    doc = _load(args.input)
    if doc.n > BRUTE_FORCE_LIMIT and not args.force:
        raise UsageError(f"{doc.n} variables exceed the brute-force limit {BRUTE_FORCE_LIMIT}; pass --force")
    s = PolySystem(doc.n, doc.polys)
    report = bcs(s, _config(args))
    if report.partial:
        raise UsageError("verify needs a complete solve; drop --branch-limit")
    res = verify_decomposition(s, report.trisets, force=args.force)
    if not res.ok:
        witness = "" if res.witness is None else " witness " + "".join(map(str, res.witness))
        print(f"FAIL {res.check}{witness}: {res.detail}")
        return EXIT_VERIFY
    print(f"ok: {res.detail}")
    if args.expect_sat and report.solution_count == 0:
        print("unsatisfiable", file=sys.stderr)
        return EXIT_UNSAT
    return EXIT_OK


def _cmd_predict(args) -> int:
    doc = _load(args.input)
    cfg = _config(args, threads=1)
    pred = predict(PolySystem(doc.n, doc.polys), cfg, samples=args.samples, full=args.full)
    print("\n".join(pred.lines()))
    return EXIT_OK


def _cmd_prem(args) -> int:
    doc = _load(args.input)
    try:
        text = Path(args.against).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.against}: {exc.strerror}") from None
    n, trisets = parse_trisets(text)
    if n != doc.n:
        raise UsageError(f"{args.input} has {doc.n} variables but {args.against} has {n}")
    nonzero = 0
    for j, a in enumerate(trisets, 1):
        for i, g in enumerate(doc.polys, 1):
            r = prem(g, a)
            if not r.is_zero:
                nonzero += 1
                print(f"poly {i} triset {j}: {r}")
    print(f"checked = {len(doc.polys) * len(trisets)}")
    print(f"nonzero = {nonzero}")
    return EXIT_OK if nonzero == 0 else EXIT_VERIFY


def _cmd_gen(args) -> int:
    if args.family == "random":
        s = gen_random(args.n, args.m, args.d, args.seed)
        notes = [f"random n={args.n} m={args.m} d={args.d} seed={args.seed}"]
    elif args.family == "lfsr":
        fdoc = _load(args.filter)
        if len(fdoc.polys) != 1:
            raise UsageError(f"{args.filter} must hold exactly one filter polynomial")
        if fdoc.n > args.n:
            raise UsageError(f"filter uses {fdoc.n} variables but the LFSR has {args.n}")
        f = BoolPoly(args.n, fdoc.polys[0].termset)
        try:
            spec = LfsrSpec(args.n, companion_matrix(args.n, args.taps), f, args.len, plant=args.plant)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        s, secret = gen_lfsr_filter(spec, args.seed)
        notes = [
            f"lfsr n={args.n} taps={','.join(map(str, args.taps))} len={args.len} "
            f"plant={int(args.plant)} seed={args.seed}",
            f"filter: {f}",
        ]
        if args.plant:
            notes.append("secret: " + "".join(map(str, secret)))
    else:
        s = gen_matrix_ab(args.k)
        ba = gen_matrix_ba(args.k)
        notes = [f"matrix AB=I k={args.k}"]
        if args.negate_index is not None:
            if args.negate_index > len(ba):
                raise UsageError(f"--negate-index must be in 1..{len(ba)}")
            g = ba[args.negate_index - 1]
            s = augment_with_negation(s, g)
            notes.append(f"negated BA=I polynomial {args.negate_index}: {g}")
        if args.with_ba:
            _write(args.with_ba, format_anf(s.n, ba, [f"matrix BA=I k={args.k}"]))
    _write(args.output, format_anf(s.n, s.polys, notes))
    return EXIT_OK


_COMMANDS = {
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "predict": _cmd_predict,
    "prem": _cmd_prem,
    "gen": _cmd_gen,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        warnings.showwarning = lambda msg, *a, **k: print(f"warning: {msg}", file=sys.stderr)
        try:
            return _COMMANDS[args.cmd](args)
        except AnfError as exc:
            print(f"parse error: {exc}", file=sys.stderr)
            return EXIT_PARSE
        except (UsageError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
