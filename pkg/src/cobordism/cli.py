"""Command-line interface: ``cobordism <command> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .chain import split_triad
from .forms import LagrangianError, wall_triad_signature
from .polyarith import RootOfUnity, SignCertificationError, primitive_roots
from .seifert import alexander, alexander_determinant, lt_invariants, mk_check
from .suites import SUITES, run_suite
from .textio import (
    ParseError,
    format_profile,
    parse_chain_triad,
    parse_complex,
    parse_lagrangian_triad,
    parse_mk_instance,
    parse_seifert,
    profile_rows,
    read_text,
)

EXIT_FAILED = 1
EXIT_INPUT = 2


class _InputError(Exception):
    pass


def _load(path: str, parser):
    try:
        text = read_text(path)
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror}") from None
    try:
        return parser(text)
    except (ParseError, LagrangianError) as exc:
        raise _InputError(f"{path}: {exc}") from None


def _root(text: str) -> RootOfUnity:
    try:
        return RootOfUnity.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _bool(b: bool) -> str:
    return "true" if b else "false"


def cmd_alexander(args) -> int:
    print(alexander(_load(args.file, parse_seifert).form))
    return 0


def cmd_lt_sig(args) -> int:
    s = _load(args.file, parse_seifert).form
    r = lt_invariants(s, args.xi)
    print(f"xi: {r.xi}")
    print(f"nullity: {r.nullity}")
    print(f"signature: {r.signature}")
    print(f"delta_zero: {_bool(r.alexander_value_is_zero)}")
    return 0


def cmd_lt_profile(args) -> int:
    s = _load(args.file, parse_seifert).form
    if args.denominator_max < 2:
        raise _InputError("--denominator-max must be at least 2")
    d = alexander_determinant(s)
    rows = profile_rows([lt_invariants(s, xi, d) for xi in primitive_roots(args.denominator_max)])
    text = format_profile(rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_wall(args) -> int:
    print(wall_triad_signature(_load(args.file, parse_lagrangian_triad)))
    return 0


def _homology_line(C) -> str:
    if C.is_zero():
        return "H_* = 0"
    return ", ".join(f"H_{r} = {C.homology(r)}" for r in C.degrees)


def cmd_chain_homology(args) -> int:
    print(_homology_line(_load(args.file, parse_complex)))
    return 0


def cmd_triad_split(args) -> int:
    split = split_triad(_load(args.file, parse_chain_triad))
    for name, C in (("C''", split.c_dprime), ("B''", split.b_dprime), ("W-", split.w_minus), ("W+", split.w_plus)):
        print(f"{name}: {_homology_line(C)}")
    certs = split.certificates()
    for name, ok in certs.items():
        print(f"certificate {name}: {'quasi-isomorphism' if ok else 'FAILED'}")
    return 0 if all(certs.values()) else EXIT_FAILED


def cmd_mk_check(args) -> int:
    rep = mk_check(_load(args.file, parse_mk_instance))
    print(f"lhs: {rep.lhs}")
    print(f"rhs: {rep.rhs}")
    print(f"holds: {_bool(rep.holds)}")
    print(f"slack: {rep.slack}")
    return 0 if rep.holds else EXIT_FAILED


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        result = run_suite(name, args.cases, args.seed)
        print(result.report())
        ok = ok and result.passed
    return 0 if ok else EXIT_FAILED


def _corpus_rows(directory: Path) -> list[tuple[str, str, int, int]]:
    entries = []
    for path in sorted(p for p in directory.iterdir() if p.is_file()):
        try:
            sf = parse_seifert(read_text(path))
        except (ParseError, UnicodeDecodeError) as exc:
            print(f"skipped {path.name}: {exc}", file=sys.stderr)
            continue
        entries.append((sf.label or path.stem, path.name, sf.form))
    counts: dict[str, int] = {}
    for label, _, _ in entries:
        counts[label] = counts.get(label, 0) + 1
    seen: dict[str, int] = {}
    rows = []
    for label, name, form in entries:
        if counts[label] > 1:
            seen[label] = seen.get(label, 0) + 1
            if seen[label] == 1:
                print(f"warning: label '{label}' appears {counts[label]} times; suffixes added", file=sys.stderr)
            label = f"{label}#{seen[label]}"
        r = lt_invariants(form, RootOfUnity(1, 2))
        rows.append((label, str(alexander(form)), r.signature, r.nullity))
    return sorted(rows, key=lambda row: row[0])


def cmd_corpus(args) -> int:
    directory = Path(args.dir)
    if not directory.is_dir():
        raise _InputError(f"{directory}: not a directory")
    rows = _corpus_rows(directory)
    header = ("label", "alexander", "sigma(-1)", "nullity(-1)")
    if args.report == "csv":
        print(",".join(header))
        for row in rows:
            print(",".join(f'"{x}"' if isinstance(x, str) and "," in x else str(x) for x in row))
        return 0
    table = [header] + [tuple(str(x) for x in row) for row in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cobordism", description="Exact invariants of forms, Seifert forms and chain complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("alexander", help="normalized Alexander polynomial of a Seifert file")
    p.add_argument("file")
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("lt-sig", help="nullity and signature at one root of unity")
    p.add_argument("file")
    p.add_argument("--xi", required=True, type=_root, help="root of unity written p/q (q >= 2 after reduction)")
    p.set_defaults(func=cmd_lt_sig)

    p = sub.add_parser("lt-profile", help="CSV of nullity and signature at every p/q with q <= Q")
    p.add_argument("file")
    p.add_argument("--denominator-max", required=True, type=int, metavar="Q")
    p.add_argument("--out", help="write the CSV here instead of stdout")
    p.set_defaults(func=cmd_lt_profile)

    p = sub.add_parser("wall", help="Wall non-additivity signature of three lagrangians")
    p.add_argument("file")
    p.set_defaults(func=cmd_wall)

    p = sub.add_parser("chain-homology", help="homology of a chain complex file")
    p.add_argument("file")
    p.set_defaults(func=cmd_chain_homology)

    p = sub.add_parser("triad-split", help="split a chain triad and certify the four identities")
    p.add_argument("file")
    p.set_defaults(func=cmd_triad_split)

    p = sub.add_parser("mk-check", help="evaluate the Murasugi-Kawauchi inequality")
    p.add_argument("file")
    p.set_defaults(func=cmd_mk_check)

    p = sub.add_parser("verify", help="run a randomized property suite")
    p.add_argument("suite", choices=[*SUITES, "all"])
    p.add_argument("--cases", type=int, default=None, help="number of cases (default depends on the suite)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", help="tabulate invariants of every Seifert file in a directory")
    p.add_argument("dir")
    p.add_argument("--report", choices=["table", "csv"], default="table")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SignCertificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
