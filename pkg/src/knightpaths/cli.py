"""Command line entry point: ``knightpaths <command> ...``.

Exit codes: 0 success, 1 bad input, 2 verification failure, 3 combination
not traversable (``check`` only).
"""
import argparse
import sys
from typing import List, Optional

from .classify import CountingMode, catalog_index, check_combination, classify, six_catalog
from .geometry import LOTTO_SIDE, BoardSpec, to_lotto
from .harness import (
    AppendixBError,
    ReproductionError,
    extend_sequence,
    load_checkpoint,
    parse_rows,
    regenerate_appendix_a,
    render_board,
    reproduce,
    save_checkpoint,
    verify_appendix_b,
)
from .search import SearchConfig, enumerate_cycles_mitm, enumerate_cycles_oracle

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_NO = 0, 1, 2, 3
FORMATS = ("lotto", "cells", "ascii")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fits_lotto(cells) -> bool:
    return all(r < LOTTO_SIDE and c < LOTTO_SIDE for r, c in cells)


def format_classes(classes, fmt: Optional[str], board_size: int, mode: CountingMode) -> str:
    if fmt is None:
        fmt = "lotto" if all(_fits_lotto(c.cells) for c in classes) else "cells"
    lines = [f"classes: {len(classes)}"]
    if fmt == "lotto":
        if not all(_fits_lotto(c.cells) for c in classes):
            raise UsageError(f"lotto format needs every representative inside the {LOTTO_SIDE}x{LOTTO_SIDE} grid")
        ordered = sorted(classes, key=lambda c: to_lotto(c.cells))
        for i, cls in enumerate(ordered, start=1):
            lines.append(f"{i}: " + " ".join(map(str, cls.lotto())))
    elif fmt == "cells":
        for i, cls in enumerate(classes, start=1):
            cells = cls.representative if mode is CountingMode.CYCLE else cls.cells
            lines.append(f"{i}: " + " ".join(f"({r},{c})" for r, c in cells))
    else:
        blocks = [render_board(cls.cells, board_size) for cls in classes]
        return "\n".join(lines) + "\n" + "\n\n".join(blocks) + ("\n" if blocks else "")
    return "\n".join(lines) + "\n"


def cmd_enumerate(args) -> int:
    if args.length < 3:
        raise UsageError(f"--length must be >= 3, got {args.length}")
    size = args.board_size if args.board_size is not None else args.length + 1
    try:
        board = BoardSpec(size)
        cfg = SearchConfig(args.length, board, args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cycles = enumerate_cycles_mitm(cfg)
    if args.verify and cycles != enumerate_cycles_oracle(cfg):
        print("error: enumerators disagree", file=sys.stderr)
        return EXIT_FAIL
    mode = CountingMode(args.mode)
    classes = classify(cycles, mode, board)
    sys.stdout.write(format_classes(classes, args.format, size, mode))
    return EXIT_OK


def parse_numbers(text: str) -> List[int]:
    tokens = [t.strip() for t in text.split(",")]
    numbers = []
    for tok in tokens:
        try:
            x = int(tok)
        except ValueError:
            raise UsageError(f"bad token {tok!r}: not an integer") from None
        if not 1 <= x <= LOTTO_SIDE * LOTTO_SIDE:
            raise UsageError(f"bad token {tok!r}: outside 1..{LOTTO_SIDE * LOTTO_SIDE}")
        if x in numbers:
            raise UsageError(f"bad token {tok!r}: duplicate number")
        numbers.append(x)
    if len(numbers) != 6:
        raise UsageError(f"expected 6 numbers, got {len(numbers)}")
    return numbers


def cmd_check(args) -> int:
    numbers = parse_numbers(args.numbers)
    ok, cls = check_combination(numbers)
    if not ok:
        print("traversable: no")
        return EXIT_NO
    print("traversable: yes")
    print(f"class: {catalog_index(cls.key, six_catalog())}")
    return EXIT_OK


def cmd_catalog(args) -> int:
    sys.stdout.write(format_classes(list(six_catalog()), "lotto", LOTTO_SIDE, CountingMode.COMBINATION))
    return EXIT_OK


def cmd_render(args) -> int:
    diagrams = regenerate_appendix_a()
    print(f"classes: {len(diagrams)}")
    print("\n\n".join(diagrams))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    try:
        report = reproduce(args.length, workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    checks = []
    for n in (4, 6, 8):
        try:
            rep = reproduce(n, workers=args.workers)
            ok = rep.ok
            detail = (f"combination={rep.combination_class_count} cycle={rep.cycle_class_count} "
                      f"target={rep.published_count} oracle={'agree' if rep.oracle_agreement else 'DISAGREE'}")
        except ReproductionError as exc:
            ok, detail = False, str(exc)
        checks.append((f"reproduce({n})", ok, detail))
    rows = None
    if args.fixture:
        with open(args.fixture) as fh:
            rows = parse_rows(fh.read())
    try:
        res = verify_appendix_b(rows)
        checks.append(("appendix_b", res.bijection_ok,
                       f"rows={res.rows_matched_as_classes} exact_representatives={'yes' if res.exact_representative_match else 'no'}"))
    except (AppendixBError, ValueError) as exc:
        checks.append(("appendix_b", False, str(exc)))
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return EXIT_OK if all(ok for _, ok, _ in checks) else EXIT_FAIL


def cmd_extend(args) -> int:
    cp = load_checkpoint(args.checkpoint) if args.resume else None
    try:
        res = extend_sequence(args.length, args.budget, cp, workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(res.to_text())
    if hasattr(res, "checkpoint"):
        if args.checkpoint:
            save_checkpoint(res.checkpoint, args.checkpoint)
            print(f"checkpoint: {args.checkpoint}")
        return EXIT_OK
    return EXIT_OK if res.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="knightpaths", description="Closed knight paths up to translation and board symmetry.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("enumerate", help="list equivalence classes of closed paths")
    e.add_argument("--length", type=int, required=True)
    e.add_argument("--board-size", type=int)
    e.add_argument("--mode", choices=[m.value for m in CountingMode], default="combination")
    e.add_argument("--format", choices=FORMATS, help="default: lotto when every class fits 7x7, else cells")
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--verify", action="store_true", help="cross-check against the depth-first oracle")
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("check", help="test whether six lotto numbers form a closed knight path")
    c.add_argument("--numbers", required=True, help="comma-separated, e.g. 1,2,10,11,15,16")
    c.set_defaults(func=cmd_check)

    sub.add_parser("catalog", help="print the length-6 catalog in lotto form").set_defaults(func=cmd_catalog)
    sub.add_parser("render", help="draw the length-4 classes on a 5x5 board").set_defaults(func=cmd_render)

    r = sub.add_parser("reproduce", help="report counts for one length")
    r.add_argument("--length", type=int, required=True)
    r.add_argument("--workers", type=int, default=1)
    r.set_defaults(func=cmd_reproduce)

    v = sub.add_parser("verify", help="rerun the published counts and the appendix check")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--fixture", help="alternate appendix file, one 'id: numbers' row per line")
    v.set_defaults(func=cmd_verify)

    x = sub.add_parser("extend", help="count classes for lengths beyond 8 under a time budget")
    x.add_argument("--length", type=int, required=True)
    x.add_argument("--budget", type=float, required=True, help="seconds")
    x.add_argument("--workers", type=int, default=1)
    x.add_argument("--checkpoint", help="file to write on timeout (and read with --resume)")
    x.add_argument("--resume", action="store_true")
    x.set_defaults(func=cmd_extend)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "resume", False) and not args.checkpoint:
        print("error: --resume needs --checkpoint", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
