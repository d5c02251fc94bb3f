"""Command-line interface: ``subreg <command> ...``.

Exit status is 0 on success or a positive verdict, 1 on a negative verdict
(not a member, not equivalent, not onward), and 2 on usage, parse, or
domain errors.
"""

import argparse
import sys

from . import classes, formats, machines, views
from .core import Tier, show, token_of, word
from .decompose import decompose
from .errors import SubregError
from .sfst import distinguishing_suffix, equivalent, make_onward, minimize, onward_violation, run_trace, state_token, transduce

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


def _read_machine(args):
    if getattr(args, "builtin", None):
        return machines.builtin(args.builtin)
    src = getattr(args, "machine", None)
    if src is None:
        raise SubregError("no machine given; pass a file, '-' for stdin, or --builtin NAME")
    if src == "-":
        return formats.parse(sys.stdin.read())
    return formats.load(src)


def _emit(text, out=None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _plain(x):
    return " ".join(token_of(s) for s in x)


def _input(tokens):
    return word(" ".join(tokens))


def _tier(args, F, cls):
    if cls == "tssl":
        alphabet = sorted(views.actions_of_function(F), key=token_of)
    else:
        alphabet = sorted(set(F.input_alphabet) | set(F.output_alphabet))
    if args.tier_file:
        with open(args.tier_file, encoding="utf-8") as fh:
            tokens = [ln.split("#", 1)[0].strip() for ln in fh]
        tokens = [t for t in tokens if t]
    elif args.tier is None or args.tier.upper() == "ALL":
        return Tier.full(alphabet)
    elif args.tier.upper() == "NONE" or args.tier == "":
        return Tier.empty(alphabet)
    else:
        tokens = [t for t in args.tier.split(",") if t]
    return Tier(alphabet, formats.parse_tier_tokens(tokens, alphabet, F.output_alphabet))


def _params(args):
    return classes.LocalityParams(i=args.i, j=args.j)


def cmd_builtin(args):
    _emit(formats.serialize(machines.builtin(args.name)), args.output)


def cmd_apply(args):
    T = _read_machine(args)
    print(_plain(transduce(T, _input(args.input))))


def cmd_trace(args):
    T = _read_machine(args)
    print(" ".join(f"({a})" for a in run_trace(T, _input(args.input))) or "λ")


def cmd_onward(args):
    T = _read_machine(args)
    if args.check:
        bad = onward_violation(T)
        if bad is None:
            print("onward")
            return EXIT_OK
        print(f"not onward: state {state_token(bad[0])} has common prefix {show(bad[1])}")
        return EXIT_NEGATIVE
    _emit(formats.serialize(make_onward(T)), args.output)


def cmd_minimize(args):
    _emit(formats.serialize(minimize(_read_machine(args))), args.output)


def cmd_equiv(args):
    T1, T2 = formats.load(args.first), formats.load(args.second)
    if equivalent(T1, T2):
        print("equivalent")
        return EXIT_OK
    y = distinguishing_suffix(T1, T1.start, T2, T2.start)
    print(f"not equivalent: differ on {show(y)}")
    return EXIT_NEGATIVE


def cmd_dot(args):
    _emit(formats.to_dot(_read_machine(args)), args.output)


def cmd_ftop(args):
    print(_plain(views.f_top(views.FunctionHandle(_read_machine(args)), _input(args.input))))


def cmd_run(args):
    run = views.run_of(views.FunctionHandle(_read_machine(args)), _input(args.input))
    print(" ".join(f"({a})" for a in run) or "λ")


def cmd_actions(args):
    acts = views.actions_of_function(views.FunctionHandle(_read_machine(args)))
    for act in sorted(acts, key=token_of):
        print(act.token)


def cmd_check(args):
    F = views.FunctionHandle(_read_machine(args))
    t = _tier(args, F, args.cls)
    if args.cls == "tssl":
        verdict = classes.check_tssl(F, args.k, t)
    else:
        verdict = classes.check_tiosl(F, _params(args), t)
    print(verdict.describe())
    print(verdict.line())
    return EXIT_OK if verdict.member else EXIT_NEGATIVE


def cmd_search(args):
    F = views.FunctionHandle(_read_machine(args))
    report = classes.search_tiers(F, args.cls, max_k=args.max_k, max_i=args.max_i, max_j=args.max_j)
    for tier, params, verdict in report.results:
        on = ",".join(sorted(map(token_of, tier.on_tier))) or "∅"
        print(f"{{{on}}} {classes._show_params(params)}: {'member' if verdict.member else 'no'}")
    print(report.summary())
    return EXIT_OK if report.members() else EXIT_NEGATIVE


def cmd_build(args):
    F = views.FunctionHandle(_read_machine(args))
    t = _tier(args, F, args.cls)
    if args.cls == "tssl":
        T = classes.build_canonical_tssl(F, args.k, t, full=args.full)
    else:
        T = classes.build_canonical_tiosl(F, _params(args), t, full=args.full)
    _emit(formats.serialize(T), args.output)


def cmd_decompose(args):
    outs = args.output or []
    if len(outs) != 2:
        raise SubregError("decompose needs two outputs: -o g.sfst -o h.hom")
    g, h = decompose(_read_machine(args))
    _emit(formats.serialize(g), outs[0])
    _emit(formats.serialize_hom(h.mapping), outs[1])


def cmd_transliterate(args):
    with open(args.classes, encoding="utf-8") as fh:
        seg = machines.SegmentClasses.from_text(fh.read())
    with open(args.words, encoding="utf-8") as fh:
        words = formats.parse_word_list(fh.read())
    for w in words:
        print(_plain(machines.transliterate(seg, w)))


def build_parser():
    parser = argparse.ArgumentParser(prog="subreg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def machine_args(p, positional=True):
        if positional:
            p.add_argument("machine", nargs="?", help="machine file, or '-' for stdin")
        p.add_argument("--builtin", choices=machines.NAMES, help="use a bundled machine")

    def tier_args(p):
        p.add_argument("--class", dest="cls", choices=("tiosl", "tssl"), required=True)
        p.add_argument("--i", type=int, default=1, help="input window (tiosl)")
        p.add_argument("--j", type=int, default=1, help="output window (tiosl)")
        p.add_argument("--k", type=int, default=1, help="run window (tssl)")
        p.add_argument("--tier", help="comma-separated on-tier tokens, ALL, or NONE (default ALL)")
        p.add_argument("--tier-file", help="file with one on-tier token per line")

    p = sub.add_parser("builtin", help="print a bundled machine")
    p.add_argument("name", choices=machines.NAMES)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_builtin)

    for name, func, text in (("apply", cmd_apply, "transduce an input"),
                             ("trace", cmd_trace, "show the run's transition labels"),
                             ("ftop", cmd_ftop, "output guaranteed after reading the input"),
                             ("run", cmd_run, "run of the minimal machine")):
        p = sub.add_parser(name, help=text)
        machine_args(p)
        p.add_argument("input", nargs="*", help="input tokens (one quoted string or several args)")
        p.set_defaults(func=func)

    p = sub.add_parser("actions", help="action alphabet of the function")
    machine_args(p)
    p.set_defaults(func=cmd_actions)

    p = sub.add_parser("onward", help="onwardize a machine, or test onwardness with --check")
    machine_args(p)
    p.add_argument("--check", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_onward)

    p = sub.add_parser("minimize", help="minimal onward machine")
    machine_args(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("equiv", help="decide whether two machines compute the same function")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("dot", help="Graphviz export")
    machine_args(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("check", help="decide TIOSL or TSSL membership on one tier")
    machine_args(p)
    tier_args(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search-tiers", help="check every tier up to the parameter bounds")
    machine_args(p)
    p.add_argument("--class", dest="cls", choices=("tiosl", "tssl"), required=True)
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--max-i", type=int)
    p.add_argument("--max-j", type=int)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("build", help="canonical TIOSL or TSSL machine")
    machine_args(p)
    tier_args(p)
    p.add_argument("--full", action="store_true", help="materialize the whole tuple state set")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("decompose", help="split into a 2-TOSL machine and a homomorphism")
    machine_args(p)
    p.add_argument("-o", "--output", action="append", help="give twice: g machine file, then h file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("transliterate", help="map word-list segments to C/V/@ classes")
    p.add_argument("--classes", required=True, help="CLASS segment : C|V file")
    p.add_argument("--words", required=True, help="one word per line")
    p.set_defaults(func=cmd_transliterate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "builtin", None) and getattr(args, "machine", None) is not None and hasattr(args, "input"):
        # with --builtin, the optional positional is really the first input token
        args.input = [args.machine] + args.input
        args.machine = None
    try:
        status = args.func(args)
    except SubregError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, KeyError) as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK if status is None else status


if __name__ == "__main__":
    sys.exit(main())
