"""Command-line interface.

Exit codes: 0 ok, 1 a check failed, 2 usage or input error, 3 corrupt state.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import amalgam, checks, engine, statefile
from .autos import specialize
from .graphs import ball_dot
from .words import Word, exponent_sums, free_reduce

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CORRUPT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _word(text: str) -> Word:
    try:
        return Word.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load(path: str):
    if not Path(path).is_file():
        raise UsageError(f"no such state file: {path}")
    return statefile.load(path)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_build(args) -> int:
    if args.stages < 0:
        raise UsageError("--stages must be nonnegative")
    c = _word(args.c)
    if not free_reduce(c):
        raise UsageError(f"c={args.c!r} is freely trivial")
    state = engine.run(c, args.stages, seed=args.seed)
    statefile.save(state, args.out)
    print(f"wrote {args.out}: c={state.c} stages={state.stages} witnesses={len(state.witnesses)} "
          f"alpha_edges={len(state.alpha)} sigma_edges={len(state.sigma)} "
          f"folner_blocks={len(state.folner_blocks)} movers={len(state.movers)}")
    return EXIT_OK


def cmd_act(args) -> int:
    state = _load(args.state)
    try:
        w = amalgam.AmalgamWord.parse(args.word)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(amalgam.act(state, w, args.point))
    return EXIT_OK


def cmd_verify(args) -> int:
    state = _load(args.state)
    results = checks.verify(state, args.level)
    for r in results:
        print(r.line())
    ok = all(r.ok for r in results)
    print("OK" if ok else "FAILED")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_folner(args) -> int:
    state = _load(args.state)
    print("lo\thi\tsize\talpha_ratio\tbeta_ratio\tepsilon\treserved\tin_fix_c")
    ok = True
    for b in state.folner_blocks:
        ra, rb = engine.folner_ratios(state, b)
        inside = all(x in state.fixc for x in b.points())
        ok &= inside and ra <= b.epsilon and rb <= b.epsilon
        print(f"{b.lo}\t{b.hi}\t{len(b)}\t{ra}\t{rb}\t{b.epsilon}\t{int(b.reserved)}\t{int(inside)}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_witnesses(args) -> int:
    state = _load(args.state)
    if args.amalgam:
        try:
            rows = amalgam.faithfulness_report(state, args.max_syllables, args.max_letters)
        except amalgam.ReportIncomplete as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_FAIL
        lines = ["word\twitness\timage"] + [f"{k}\t{x}\t{y}" for k, x, y in rows]
        if args.save:
            statefile.save(state, args.save)
    else:
        lines = ["word\tx\twx\tused\tvalid"]
        for t in state.witnesses:
            if args.word and str(t.word) != args.word:
                continue
            lines.append(f"{t.word}\t{t.x}\t{t.wx}\t{int(t.used)}\t{int(engine.check_triple(state, t))}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_transitivity(args) -> int:
    if args.n < 1 or args.m < 1:
        raise UsageError("--n and --m must be positive")
    state = _load(args.state)
    processed = (args.n, args.m) in state.transitivity
    ok = engine.reaches_all_classes(state, args.n, args.m)
    print(f"n={args.n} m={args.m} processed={int(processed)} reaches_all_classes={int(ok)}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_specialize(args) -> int:
    w = _word(args.word)
    try:
        auto, c = specialize(w)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    m = auto.matrix
    print(f"input\t{Word(w)}\t{tuple(exponent_sums(w))}")
    print(f"moves\t{auto}")
    print(f"matrix\t{m.p} {m.q}; {m.t} {m.r}")
    print(f"special\t{c}\t{tuple(exponent_sums(c))}")
    return EXIT_OK


def cmd_export_dot(args) -> int:
    if args.radius < 0:
        raise UsageError("--radius must be nonnegative")
    state = _load(args.state)
    _emit(ball_dot(state.alpha, args.center, args.radius), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="f2double", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="run the scheduler and write a state file")
    b.add_argument("--c", required=True, help="the amalgamating word, e.g. aBAb")
    b.add_argument("--stages", type=int, required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--seed", type=int, default=None, help="shuffle requirements within each stage")
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("act", help="evaluate an amalgam word at a point")
    a.add_argument("state")
    a.add_argument("--word", required=True, help="letters a A b B (factor 1), x X y Y (factor 2)")
    a.add_argument("--point", type=int, required=True)
    a.set_defaults(func=cmd_act)

    v = sub.add_parser("verify", help="re-check every recorded fact")
    v.add_argument("state")
    v.add_argument("--level", choices=("quick", "full"), default="quick")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("folner", help="list Folner blocks with exact ratios")
    f.add_argument("state")
    f.set_defaults(func=cmd_folner)

    w = sub.add_parser("witnesses", help="list witness triples or the amalgam faithfulness report")
    w.add_argument("state")
    w.add_argument("--word", default=None)
    w.add_argument("--amalgam", action="store_true")
    w.add_argument("--max-syllables", type=int, default=2)
    w.add_argument("--max-letters", type=int, default=2)
    w.add_argument("--out", default=None)
    w.add_argument("--save", default=None, help="write the state, including new movers")
    w.set_defaults(func=cmd_witnesses)

    t = sub.add_parser("transitivity", help="check <a^n, b^m> joins all classes mod m")
    t.add_argument("state")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--m", type=int, required=True)
    t.set_defaults(func=cmd_transitivity)

    s = sub.add_parser("specialize", help="Nielsen-transform a word to a special one")
    s.add_argument("word")
    s.set_defaults(func=cmd_specialize)

    d = sub.add_parser("export-dot", help="DOT of a ball in the Schreier graph")
    d.add_argument("state")
    d.add_argument("--center", type=int, default=0)
    d.add_argument("--radius", type=int, default=2)
    d.add_argument("--out", default=None)
    d.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except statefile.StateFormatError as exc:
        print(f"corrupt state: {exc}", file=sys.stderr)
        return EXIT_CORRUPT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
