"""Command-line front end.

Exit codes: 0 success (or "distinguished" for ``compare``), 1 for an
indistinguishable pair or a failed self-check, 2 for unparseable input or a
bad configuration, 3 when the pipeline itself fails.  Errors go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import surface_group as sgm
from .braid_words import (AmbientMismatch, BraidWord, IndexRangeError, WordSyntaxError, format_word,
                          parse_word, resolve_singular)
from .diagram_algebra import (DEFAULT_N, UElem, format_uelem, graded_part, u_any, u_linear,
                              uelem_to_json)

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_PIPELINE = 0, 1, 2, 3
MAX_N = 4


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    n: int = 2
    g: int = 1
    N: int = DEFAULT_N
    fuel: int = sgm.DEFAULT_FUEL
    output: str = "text"
    verify: bool = False

    def __post_init__(self):
        if self.n < 1 or self.g < 1 or self.fuel < 1:
            raise InputError("n, g and fuel must be positive")
        if not 0 <= self.N <= MAX_N:
            raise InputError("N must lie in 0..%d" % MAX_N)
        if self.output not in ("json", "text"):
            raise InputError("unknown output format %r" % self.output)


def read_word(text: str, config: RunConfig) -> BraidWord:
    if text == "-":
        text = sys.stdin.read()
    try:
        return parse_word(text, config.n, config.g)
    except (WordSyntaxError, IndexRangeError, AmbientMismatch) as exc:
        raise InputError(str(exc)) from exc


def render(x: UElem, config: RunConfig) -> str:
    if config.output == "json":
        return json.dumps(uelem_to_json(x))
    return format_uelem(x, "text")


def first_difference(x: UElem, y: UElem, N: int) -> int | None:
    for d in range(N + 1):
        if graded_part(x, d) != graded_part(y, d):
            return d
    return None


# -- commands ---------------------------------------------------------------------

def cmd_eval(word: str, config: RunConfig) -> tuple[int, str]:
    w = read_word(word, config)
    return EXIT_OK, render(u_any(w, config.N, config.verify), config)


def cmd_compare(word1: str, word2: str, config: RunConfig) -> tuple[int, str]:
    w1, w2 = read_word(word1, config), read_word(word2, config)
    d = first_difference(u_any(w1, config.N, config.verify), u_any(w2, config.N, config.verify), config.N)
    if config.output == "json":
        text = json.dumps({"distinguished": d is not None, "degree": d, "N": config.N})
    elif d is None:
        text = "indistinguishable up to %d" % config.N
    else:
        text = "distinguished at degree %d" % d
    return (EXIT_NEGATIVE if d is None else EXIT_OK), text


def cmd_resolve(word: str, config: RunConfig, with_invariant: bool) -> tuple[int, str]:
    w = read_word(word, config)
    signed = resolve_singular(w)
    if config.output == "json":
        data: dict = {"resolutions": [{"coeff": c, "word": format_word(x)} for c, x in signed]}
        if with_invariant:
            data["u"] = uelem_to_json(u_linear(signed, config.N, config.g, config.verify))
        return EXIT_OK, json.dumps(data)
    lines = ["%+d %s" % (c, format_word(x)) for c, x in signed]
    if with_invariant:
        lines.append("u:")
        lines.append(format_uelem(u_linear(signed, config.N, config.g, config.verify), "text"))
    return EXIT_OK, "\n".join(lines)


def cmd_selfcheck(config: RunConfig, corrupt: bool = False, quick: bool = False) -> tuple[int, str]:
    import contextlib

    from .selfcheck import corrupted_rules, run_all

    guard = corrupted_rules(config.n, config.g) if corrupt else contextlib.nullcontext()
    with guard:
        results = run_all(config.n, config.g, config.N, config.verify, quick)
    if config.output == "json":
        text = json.dumps([{"suite": r.name, "passed": r.passed, "total": r.total,
                            "failures": r.failures[:10]} for r in results])
    else:
        lines = [r.line() for r in results]
        for r in results:
            lines.extend("  %s: %s" % (r.name, f) for f in r.failures[:5])
        text = "\n".join(lines)
    return (EXIT_OK if all(r.ok for r in results) else EXIT_NEGATIVE), text


# -- argument handling ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=int, default=2, help="number of strands")
    common.add_argument("-g", type=int, default=1, help="genus of the surface")
    common.add_argument("-N", type=int, default=None, help="truncation degree (default %d)" % DEFAULT_N)
    common.add_argument("--fuel", type=int, default=sgm.DEFAULT_FUEL, help="budget for face filling")
    common.add_argument("--format", choices=("json", "text"), default="text", dest="output")
    common.add_argument("--verify-oracles", action="store_true", dest="verify",
                        help="run the exact expansion checks inside the pipeline")

    parser = argparse.ArgumentParser(prog="surfbraid",
                                     description="Universal Vassiliev invariant of surface braids.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("eval", parents=[common], help="print the truncated invariant of a word")
    p.add_argument("word", help="braid word, or - for stdin")
    p = sub.add_parser("compare", parents=[common], help="lowest degree separating two words")
    p.add_argument("word1")
    p.add_argument("word2")
    p = sub.add_parser("resolve", parents=[common], help="list the signed resolutions of a singular word")
    p.add_argument("word")
    p = sub.add_parser("selfcheck", parents=[common], help="run the internal consistency suites")
    p.add_argument("--quick", action="store_true", help="smaller random samples")
    p.add_argument("--corrupt-rules", action="store_true", help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(args.n, args.g, DEFAULT_N if args.N is None else args.N,
                           args.fuel, args.output, args.verify)
        sgm.set_fuel(config.fuel)
        if args.command == "eval":
            code, text = cmd_eval(args.word, config)
        elif args.command == "compare":
            code, text = cmd_compare(args.word1, args.word2, config)
        elif args.command == "resolve":
            code, text = cmd_resolve(args.word, config, with_invariant=args.N is not None)
        else:
            code, text = cmd_selfcheck(config, args.corrupt_rules, args.quick)
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # anything raised inside the pipeline
        print("pipeline error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return EXIT_PIPELINE
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
