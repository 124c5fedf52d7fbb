"""Command-line interface.

Exit codes: 0 affirmative / success, 1 negative verdict, 2 bad input or
usage, 3 a ``--verify`` cross-check disagreed with the brute-force oracle.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .construction import IllDefinedStep, realize_flow, realize_hh
from .core import KDigraph, MarkSequence, NotRealizable, ValidationError, compute_marks, parse_sequence, sequence_from_lines
from .decomposition import decompose_digraph, decompose_sequence, is_uniquely_realizable
from .oracle import TooLarge, count_realizations, min_arc_count_bruteforce, realizable_set_bruteforce, state_space
from .realizability import check_oriented_marks, check_realizable, check_tournament_marks
from .transform import is_transitive, minimize_arcs

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2, 3

# --verify only consults the oracle when enumeration stays interactive
VERIFY_LIMIT = 1_000_000

METHODS = {"hh24": "THM24", "hh25": "THM25"}


class VerifyMismatch(Exception):
    pass


def _out(text: str = "") -> None:
    sys.stdout.write(text + "\n")


def _note(text: str) -> None:
    sys.stderr.write(text + "\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_sequence(args, k: Optional[int] = None) -> MarkSequence:
    k = args.k if k is None else k
    if getattr(args, "input", None):
        seq = sequence_from_lines(_read_text(args.input).splitlines(), k)
    elif args.sequence is not None:
        seq = parse_sequence(args.sequence, k)
    else:
        raise ValidationError("BadDimensions", None, "no sequence given (inline or via -i FILE)")
    if seq.sort_applied:
        _note(f"note: input reordered to non-decreasing order: {seq}")
    return seq


def _load_digraph(path: str) -> KDigraph:
    text = _read_text(path)
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError("BadDimensions", None, f"invalid JSON: {exc}") from None
        return KDigraph.from_json(obj)
    return KDigraph.from_matrix_text(text)


def _render(d: KDigraph, fmt: str) -> str:
    if fmt == "json":
        return d.dumps()
    if fmt == "dot":
        return d.to_dot().rstrip("\n")
    return d.to_matrix_text().rstrip("\n")


def _csv(values) -> str:
    return ",".join(str(x) for x in values)


def _oracle_allows(n: int, k: int) -> bool:
    return state_space(n, k) <= VERIFY_LIMIT


# -- subcommands ----------------------------------------------------------


def cmd_check(args) -> int:
    if args.kind == "oriented":
        seq = _load_sequence(args, k=1)
        ok = check_oriented_marks(seq)
        rep = check_realizable(seq)
        if args.json:
            _out(json.dumps({"oriented": ok, **rep.to_json()}))
        else:
            _out(f"sequence: {seq} (oriented graph scores, n={seq.n})")
            _out(f"oriented-graph score sequence: {'yes' if ok else 'no'}")
            if not ok:
                _out(f"reason: {rep.failure_reason}")
        return EXIT_OK if ok else EXIT_NO

    if args.kind == "tournament":
        # tournament marks are the marks of a single-arc 2-digraph
        seq = _load_sequence(args, k=2)
        trep = check_tournament_marks(seq)
        if args.json:
            _out(json.dumps(trep.to_json()))
        else:
            _out(f"sequence: {seq} (tournament marks p = 2s + n - 1, n={seq.n})")
            _out(f"tournament: {'yes' if trep.is_tournament_sequence else 'no'}")
            if trep.scores is not None:
                _out(f"scores: [{', '.join(map(str, trep.scores))}]")
            else:
                _out(f"reason: {trep.failure_reason.value}: {trep.detail}")
        return EXIT_OK if trep.is_tournament_sequence else EXIT_NO

    seq = _load_sequence(args)
    rep = check_realizable(seq)
    if args.verify and _oracle_allows(seq.n, seq.k):
        truth = seq.entries in realizable_set_bruteforce(seq.n, seq.k, jobs=args.jobs)
        if truth != rep.realizable:
            raise VerifyMismatch(f"prefix test says {rep.realizable}, enumeration says {truth} for {seq}")
    if args.json:
        _out(json.dumps({"sequence": list(seq.entries), **rep.to_json()}))
    else:
        _out(f"sequence: {seq} (k={seq.k}, n={seq.n})")
        _out(f"realizable: {'yes' if rep.realizable else 'no'}")
        _out("equality points: " + (", ".join(map(str, sorted(rep.equality_points))) or "none"))
        if not rep.realizable:
            _out(f"failing prefix: t={rep.failing_prefix} ({rep.failure_reason})")
        _out("   t  prefix   bound")
        for t, (s, b) in enumerate(zip(rep.prefix_sums, rep.bound_values), start=1):
            flag = "=" if s == b else (">" if s > b else "<")
            _out(f"{t:4d} {s:7d} {flag} {b:6d}")
    return EXIT_OK if rep.realizable else EXIT_NO


def cmd_realize(args) -> int:
    seq = _load_sequence(args)
    rep = check_realizable(seq)
    if not rep.realizable:
        _note(f"not realizable: {rep.failure_reason}")
        return EXIT_NO
    if args.method == "flow":
        d = realize_flow(seq)
    else:
        try:
            d = realize_hh(seq, METHODS[args.method], verify=args.verify)
        except (IllDefinedStep, NotRealizable) as exc:
            # the prefix test already accepted seq, so the reduction rule is
            # what failed, not the sequence
            if args.strict:
                _note(f"error: {args.method} failed on a realizable sequence ({type(exc).__name__}: {exc})")
                return EXIT_NO
            _note(f"notice: {args.method} cannot realize {seq} ({type(exc).__name__}: {exc}); falling back to flow")
            d = realize_flow(seq)
    if compute_marks(d) != seq:
        raise VerifyMismatch(f"constructed digraph has marks {compute_marks(d)}, expected {seq}")
    _out(_render(d, args.format))
    return EXIT_OK


def cmd_marks(args) -> int:
    d = _load_digraph(args.file)
    seq = compute_marks(d)
    if args.json:
        _out(json.dumps({"k": d.k, "marks": list(seq.entries), "vertex_marks": d.vertex_marks()}))
    else:
        _out(_csv(seq.entries))
    return EXIT_OK


def cmd_minimize(args) -> int:
    d = _load_digraph(args.file)
    result, trace = minimize_arcs(d)
    if args.trace:
        for mv in trace:
            _note(str(mv))
    if args.verify and _oracle_allows(d.n, d.k):
        best = min_arc_count_bruteforce(compute_marks(d))
        if result.arc_count() != best or not is_transitive(result):
            raise VerifyMismatch(
                f"minimized digraph has {result.arc_count()} arcs (oracle minimum {best}), "
                f"transitive={is_transitive(result)}"
            )
    _out(_render(result, args.format))
    return EXIT_OK


def cmd_decompose(args) -> int:
    if args.digraph:
        d = _load_digraph(args.digraph)
        parts = decompose_digraph(d)
        if args.json:
            _out(json.dumps([p.to_json() for p in parts]))
        else:
            for i, p in enumerate(parts, start=1):
                _out(f"component {i}: n={p.n} sequence={compute_marks(p)}")
        return EXIT_NO if args.require_irreducible and len(parts) > 1 else EXIT_OK

    seq = _load_sequence(args)
    rep = check_realizable(seq)
    if not rep.realizable:
        _note(f"not realizable: {rep.failure_reason}")
        return EXIT_NO
    dec = decompose_sequence(seq)
    if args.verify:
        if dec.reassemble() != seq:
            raise VerifyMismatch(f"components do not reassemble to {seq}")
        got = [list(compute_marks(p).entries) for p in decompose_digraph(realize_flow(seq))]
        if got != dec.sequences:
            raise VerifyMismatch(f"digraph components {got} differ from sequence components {dec.sequences}")
    if args.json:
        _out(json.dumps(dec.to_json()))
    else:
        for c in dec.components:
            _out(c.describe())
    return EXIT_NO if args.require_irreducible and len(dec.components) > 1 else EXIT_OK


def cmd_unique(args) -> int:
    seq = _load_sequence(args)
    rep = check_realizable(seq)
    if not rep.realizable:
        _note(f"not realizable: {rep.failure_reason}")
        return EXIT_NO
    ur = is_uniquely_realizable(seq)
    if args.verify and seq.n <= 8 and _oracle_allows(seq.n, seq.k):
        classes = count_realizations(seq).iso_classes
        if (classes == 1) != ur.unique:
            raise VerifyMismatch(f"component test says unique={ur.unique}, oracle finds {classes} classes")
    if args.json:
        _out(json.dumps(ur.to_json()))
    else:
        _out(f"sequence: {seq} (k={seq.k})")
        _out(f"uniquely realizable: {'yes' if ur.unique else 'no'}")
        for c in ur.components.components:
            _out("  " + c.describe())
        if ur.witness_component is not None:
            _out(f"witness component: {ur.witness_component.sequence}")
    return EXIT_OK if ur.unique else EXIT_NO


def cmd_oracle(args) -> int:
    if args.oracle_cmd == "sequences":
        found = sorted(realizable_set_bruteforce(args.n, args.k, jobs=args.jobs))
        if args.json:
            _out(json.dumps({"n": args.n, "k": args.k, "sequences": [list(s) for s in found]}))
        else:
            for s in found:
                _out(_csv(s))
        return EXIT_OK
    seq = _load_sequence(args)
    if args.oracle_cmd == "count":
        cnt = count_realizations(seq)
        if args.json:
            _out(json.dumps({"sequence": list(seq.entries), "k": seq.k, **cnt.to_json()}))
        else:
            _out(f"labeled: {cnt.labeled}")
            _out(f"iso_classes: {cnt.iso_classes}")
        return EXIT_OK if cnt.labeled else EXIT_NO
    try:
        best = min_arc_count_bruteforce(seq)
    except NotRealizable as exc:
        _note(f"not realizable: {exc}")
        return EXIT_NO
    _out(json.dumps({"sequence": list(seq.entries), "k": seq.k, "min_arcs": best}) if args.json else str(best))
    return EXIT_OK


def cmd_convert(args) -> int:
    _out(_render(_load_digraph(args.file), args.format))
    return EXIT_OK


# -- parser ---------------------------------------------------------------


def _add_sequence_args(p: argparse.ArgumentParser, need_k: bool = True) -> None:
    if need_k:
        p.add_argument("-k", type=int, required=True, help="arc bound per vertex pair")
    p.add_argument("sequence", nargs="?", help='marks, e.g. "1,3,9,12,15,20"')
    p.add_argument("-i", "--input", help="read the sequence from FILE, one integer per line ('-' for stdin)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="markseq", description="Mark sequences of k-digraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide whether a sequence is a mark sequence")
    p.add_argument("-k", type=int, default=None, help="arc bound (required unless --kind is oriented or tournament)")
    p.add_argument("sequence", nargs="?")
    p.add_argument("-i", "--input")
    p.add_argument("--kind", choices=["general", "tournament", "oriented"], default="general")
    p.add_argument("--json", action="store_true")
    p.add_argument("--verify", action="store_true", help="cross-check against brute-force enumeration")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("realize", help="construct a k-digraph with the given marks")
    _add_sequence_args(p)
    p.add_argument("--method", choices=["flow", "hh24", "hh25"], default="flow")
    p.add_argument("--format", choices=["json", "dot", "matrix"], default="json")
    p.add_argument("--strict", action="store_true", help="do not fall back to flow when a reduction rule fails")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("marks", help="print the mark sequence of a digraph file")
    p.add_argument("file", nargs="?", default="-", help="digraph JSON or matrix file ('-' for stdin)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_marks)

    p = sub.add_parser("minimize", help="reduce a digraph to a transitive realization with fewest arcs")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--trace", action="store_true", help="list applied moves on stderr")
    p.add_argument("--format", choices=["json", "dot", "matrix"], default="json")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("decompose", help="split into irreducible components")
    p.add_argument("-k", type=int, default=None)
    p.add_argument("sequence", nargs="?")
    p.add_argument("-i", "--input")
    p.add_argument("--digraph", help="decompose a digraph file instead of a sequence")
    p.add_argument("--require-irreducible", action="store_true", help="exit 1 when there is more than one component")
    p.add_argument("--json", action="store_true")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("unique", help="decide unique realizability")
    _add_sequence_args(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_unique)

    p = sub.add_parser("oracle", help="brute-force enumeration at small size")
    osub = p.add_subparsers(dest="oracle_cmd", required=True)
    q = osub.add_parser("sequences", help="all realizable sequences for n, k")
    q.add_argument("-n", type=int, required=True)
    q.add_argument("-k", type=int, required=True)
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--json", action="store_true")
    for name, helptext in (("count", "count realizations (labeled and up to isomorphism)"),
                           ("minarcs", "fewest arcs over all realizations")):
        q = osub.add_parser(name, help=helptext)
        _add_sequence_args(q)
        q.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("convert", help="re-emit a digraph file in another format")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--format", choices=["json", "dot", "matrix"], default="dot")
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("check", "decompose") and args.k is None:
        needs_k = not (args.command == "check" and args.kind in ("oriented", "tournament")) and not getattr(args, "digraph", None)
        if needs_k:
            parser.error(f"{args.command}: -k is required when reading a sequence")
    try:
        return args.func(args)
    except ValidationError as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE
    except TooLarge as exc:
        _note(f"error: TooLarge: {exc}")
        return EXIT_USAGE
    except NotRealizable as exc:
        _note(f"not realizable: {exc}")
        return EXIT_NO
    except VerifyMismatch as exc:
        _note(f"VERIFY FAILED: {exc}")
        return EXIT_DISAGREE
    except OSError as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
