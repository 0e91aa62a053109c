"""Command line entry point.

Exit codes: 0 success, 1 invalid input, 2 not distillable under
``--require-distill``, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import pipeline
from .classical import TERNARY_HEADER, parse_classical
from .distill import profile
from .enumerators import (
    DEFAULT_MEM_CAP,
    complete_wenum,
    format_wenum,
    macwilliams,
    parse_wenum,
    simple_wenum_css_fast,
    simple_wenum_naive,
)
from .errors import InvalidInputError, MSDError, ResourceLimitError
from .oracle import run_oracle, verify_phase_point_pattern
from .stabilizer import (
    STABILIZER_HEADER,
    StabilizerCode,
    css_from_classical,
    format_stabilizer,
    parse_stabilizer,
    shorten_all,
)

EXIT_OK, EXIT_INVALID, EXIT_NOT_DISTILLABLE, EXIT_RESOURCE = 0, 1, 2, 3

log = logging.getLogger("strange_msd")


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc


def _emit(text: str, out) -> None:
    if out:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise InvalidInputError(f"cannot write {out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def load_code(path):
    """Parse a TERNARY-CODE or STABILIZER-CODE file, chosen by its header."""
    text = _read(path)
    head = pipeline._first_content_line(text)
    if head == TERNARY_HEADER:
        return parse_classical(text, source=str(path))
    if head == STABILIZER_HEADER:
        return parse_stabilizer(text, source=str(path))
    raise InvalidInputError(f"{path}: unrecognised header {head!r}")


def _stabilizer_of(code) -> StabilizerCode:
    return code if isinstance(code, StabilizerCode) else css_from_classical(code)


def cmd_wenum(args) -> int:
    code = load_code(args.code_file)
    if args.complete:
        terms = complete_wenum(_stabilizer_of(code))
        names = [f"y{i}{j}" for i in range(3) for j in range(3)]
        lines = []
        for key in sorted(terms):
            mono = " ".join(f"{nm}^{e}" for nm, e in zip(names, key) if e)
            lines.append(f"{terms[key]} {mono}")
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK
    if args.method == "fast":
        if isinstance(code, StabilizerCode):
            raise InvalidInputError("the fast method needs a TERNARY-CODE input")
        a = simple_wenum_css_fast(code, mem_cap=args.mem_cap)
    else:
        a = simple_wenum_naive(_stabilizer_of(code))
    _emit(format_wenum(a), args.out)
    return EXIT_OK


def cmd_macwilliams(args) -> int:
    a = parse_wenum(_read(args.wenum_file), source=args.wenum_file)
    if a.k is None:
        raise InvalidInputError("enumerator file must declare k")
    k = -a.k if a.kind == "B" else a.k
    _emit(format_wenum(macwilliams(a, a.n, k)), args.out)
    return EXIT_OK


def cmd_css(args) -> int:
    code = parse_classical(_read(args.code_file), source=args.code_file)
    _emit(format_stabilizer(css_from_classical(code)), args.out)
    return EXIT_OK


def cmd_shorten(args) -> int:
    state = parse_stabilizer(_read(args.code_file), source=args.code_file)
    coords = [args.coord] if args.coord else None
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    ok = 0
    for coord, rot, result in shorten_all(state, coords, args.all_rotations):
        if isinstance(result, Exception):
            print(f"coord={coord} rotation={rot} degenerate: {result}")
            continue
        ok += 1
        text = format_stabilizer(result)
        if out_dir:
            (out_dir / f"{result.id}.txt").write_text(text)
            print(f"coord={coord} rotation={rot} -> {out_dir / (result.id + '.txt')}")
        else:
            print(f"coord={coord} rotation={rot}")
            sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_distill(args) -> int:
    if args.enumerator:
        a = parse_wenum(_read(args.enumerator), source=args.enumerator)
        code_id = Path(args.enumerator).stem
        rec = pipeline.screen_enumerator(a, code_id, k=1 if a.k is None else a.k)
        b = macwilliams(a, a.n, rec.k)
    elif args.code_file:
        code = load_code(args.code_file)
        rec = pipeline.screen(code, mem_cap=args.mem_cap)
        a = pipeline.enumerator_for(code, args.mem_cap)
        b = macwilliams(a, a.n, 1)
    else:
        raise InvalidInputError("give a code file or --enumerator")
    prof = profile(a, b, rec.k)
    if args.json:
        payload = rec.to_json()
        payload["map"] = {"num": [str(c) for c in prof.map.num],
                          "den": [str(c) for c in prof.map.den]}
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        c = prof.conditions
        print(f"id:               {rec.id}")
        print(f"n, k, d:          {rec.n}, {rec.k}, {rec.distance}")
        print(f"A(-1/2), B(-1/2): {c.a_at}, {c.b_at}")
        print(f"3A'+B' = 0:       {c.order1}")
        print(f"3A''+B'' = 0:     {c.order2}")
        print(f"classification:   {rec.classification}")
        if rec.delta is not None:
            print(f"eps' ~ ({rec.leading}) eps^{rec.delta}")
        print(f"threshold:        {rec.threshold:.9f}")
        print(f"success at eps=0: {rec.success_at_zero}")
    if args.require_distill and not rec.distills:
        return EXIT_NOT_DISTILLABLE
    return EXIT_OK


def cmd_search(args) -> int:
    report, resource = pipeline.search(
        args.dir, jobs=args.jobs, mem_cap=args.mem_cap, shorten=args.shorten,
        all_rotations=args.all_rotations, omit_timing=args.omit_timing)
    if args.report:
        pipeline.write_report(report, args.report, args.format)
    elif args.format == "json":
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        sys.stdout.write(pipeline.report_csv(report))
    for err in report.errors:
        log.warning("%s", err)
    log.info("%d records, %d distinct enumerators, %s", len(report.records),
             report.distinct_enumerators, report.summary)
    if resource:
        return EXIT_RESOURCE
    if args.require_distill and not any(r.distills for r in report.records):
        return EXIT_NOT_DISTILLABLE
    return EXIT_OK


def _n_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        values = list(range(int(lo), int(hi) + 1)) if sep else [int(lo)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from None
    if not values or min(values) < 1 or max(values) > 4:
        raise argparse.ArgumentTypeError("qudit counts must lie in 1..4")
    return values


def cmd_oracle(args) -> int:
    summary = run_oracle(args.n, args.trials, args.seed, args.tol)
    print(f"trace-identity trials: {summary.trials}, max residual {summary.max_residual:.3e}, "
          f"failures {summary.failures}")
    print(f"phase-point pattern on trial codes: {'ok' if summary.pattern_ok else 'FAILED'}")
    for path in args.codes or ():
        rep = verify_phase_point_pattern(_stabilizer_of(load_code(path)), args.tol)
        print(f"phase-point pattern {path}: {'ok' if rep.ok else 'FAILED'} "
              f"({rep.in_dual}/{rep.points} in dual, max error {rep.max_error:.2e})")
        summary.pattern_ok &= rep.ok
    return EXIT_OK if summary.failures == 0 and summary.pattern_ok else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strange-msd",
        description="Screen qutrit stabilizer codes for strange-state distillation.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wenum", help="simple or complete weight enumerator of a code")
    p.add_argument("code_file")
    p.add_argument("--method", choices=("naive", "fast"), default="naive")
    p.add_argument("--complete", action="store_true")
    p.add_argument("--out")
    p.add_argument("--mem-cap", type=int, default=DEFAULT_MEM_CAP)
    p.set_defaults(func=cmd_wenum)

    p = sub.add_parser("macwilliams", help="transform A(z) to B(z) (or back)")
    p.add_argument("wenum_file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_macwilliams)

    p = sub.add_parser("css", help="CSS stabilizer code from a self-orthogonal ternary code")
    p.add_argument("code_file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_css)

    p = sub.add_parser("shorten", help="shorten an [[n,0]] state to [[n-1,1]] codes")
    p.add_argument("code_file")
    p.add_argument("--coord", type=int)
    p.add_argument("--all-rotations", action="store_true")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_shorten)

    p = sub.add_parser("distill", help="distillation profile of one code or enumerator")
    p.add_argument("code_file", nargs="?")
    p.add_argument("--enumerator")
    p.add_argument("--json", action="store_true")
    p.add_argument("--require-distill", action="store_true")
    p.add_argument("--mem-cap", type=int, default=DEFAULT_MEM_CAP)
    p.set_defaults(func=cmd_distill)

    p = sub.add_parser("search", help="screen every code under a directory")
    p.add_argument("dir")
    p.add_argument("--report")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--mem-cap", type=int, default=DEFAULT_MEM_CAP)
    p.add_argument("--shorten", action="store_true",
                   help="treat inputs as [[n,0]] states and screen their shortenings")
    p.add_argument("--all-rotations", action="store_true")
    p.add_argument("--omit-timing", action="store_true",
                   help="write wall_time_ms as 0 so reports are byte-reproducible")
    p.add_argument("--require-distill", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("oracle", help="dense-matrix checks at small n")
    p.add_argument("--n", type=_n_range, default=[2, 3])
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--codes", nargs="*", help="code files for the exhaustive phase-point check")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except MSDError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
