"""Command-line front end.

Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import codings, constructions, games, machines, membership, selfcheck
from .words import UPWord, WordError, format_finite, format_up, parse_word

PREF_GADGETS = {"prefTheta": codings.THETA, "prefHK": codings.HK, "prefh": codings.H,
                "prefPhi": codings.PHI, "prefH": "H"}


class DomainError(Exception):
    pass


def _base(text: str) -> tuple:
    letters = tuple(a for a in text.replace(",", " ").split() if a)
    if not letters:
        raise DomainError("empty base alphabet")
    return letters


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_machine(path: str) -> machines.CounterMachine:
    return machines.check_machine(machines.parse_machine(_read(path)))


def _limits(args) -> membership.SearchLimits:
    return membership.SearchLimits(args.max_steps, args.max_counter, args.max_lambda)


def _up(text: str, alphabet=None) -> UPWord:
    w = parse_word(text, alphabet)
    if not isinstance(w, UPWord):
        raise DomainError(f"expected an ultimately periodic word u(v), got {text!r}")
    return w


# ---------------------------------------------------------------- commands

def cmd_validate(args, out):
    m = machines.parse_machine(_read(args.machine))
    problems = machines.validate_machine(m)
    for p in problems:
        out.append(p)
    if problems:
        raise DomainError(f"{len(problems)} problem(s) in {args.machine}")
    out.append(f"OK {m.name}: {len(m.states)} states, {m.counter_count} counters, "
               f"{len(m.transitions)} transitions, real-time={'yes' if machines.is_real_time(m) else 'no'}")


def cmd_encode(args, out):
    spec = codings.CodingSpec(args.coding, args.param, _base(args.base))
    x = _up(args.word, spec.base)
    if args.rules:
        if args.coding != codings.H:
            raise DomainError("--rules only applies to the h coding")
        w = codings.encode_h_by_rules(args.param, x, spec.base)
    else:
        w = codings.encode(spec, x)
    out.append(format_finite(w.prefix(args.prefix)))


def cmd_classify(args, out):
    base = _base(args.base)
    if args.gadget in PREF_GADGETS:
        kind = PREF_GADGETS[args.gadget]
        if kind != "H" and args.param is None:
            raise DomainError(f"{args.gadget} needs --param")
        w = parse_word(args.word)
        if isinstance(w, UPWord):
            raise DomainError("prefix classifiers take a finite word")
        target = "H" if kind == "H" else codings.CodingSpec(kind, args.param, base)
        ok = codings.in_pref(target, w, base=base)
    else:
        if args.gadget in ("Lprime", "Lsecond") and args.param is None:
            raise DomainError(f"{args.gadget} needs --param")
        ok = codings.gadget_predicate(args.gadget, args.param, base)(_up(args.word))
    out.append("YES" if ok else "NO")


def cmd_gadget(args, out):
    m = codings.build_gadget(args.kind, args.param, _base(args.base))
    _write(machines.dump_machine(m), args.out)


def cmd_combine(args, out):
    left = _load_machine(args.left)
    right = _load_machine(args.right)
    if args.op == "union":
        m = constructions.union_machines(left, right)
    else:
        m = constructions.intersect_with_buchi(left, right)
    _write(machines.dump_machine(m), args.out)


def cmd_member(args, out):
    m = _load_machine(args.machine)
    w = _up(args.word, m.alphabet)
    v = membership.accepts_up_bounded(m, w, _limits(args))
    out.append(v.label)
    if isinstance(v, membership.Accept) and not args.quiet:
        c = v.certificate
        out.append(f"stem {len(c.stem)} steps, loop {len(c.loop)} steps through {c.accepting_witness}")
    elif isinstance(v, membership.Unknown) and not args.quiet:
        out.append(f"reason {v.reason}")


def _load_strategy(path: str, player: int, game: str, base):
    sf = games.parse_strategy(_read(path))
    if sf.lift is None:
        return sf.transducer
    lift_game, reduction, param, lift_player = sf.lift
    if lift_game != game or lift_player != player:
        raise DomainError(f"{path} is a lifted strategy for player {lift_player} in a {lift_game} game")
    spec = codings.CodingSpec(reduction, param, base)
    if game == "gs":
        return games.lift_gs(spec, player, sf.transducer)
    return games.lift_wadge(spec, spec, player, sf.transducer)


def _winner_text(w) -> str:
    return f"winner {w}"


def cmd_play(args, out):
    winset = _load_machine(args.winset)
    lim = _limits(args)
    base = winset.alphabet
    s1 = _load_strategy(args.p1, 1, args.game, base)
    s2 = _load_strategy(args.p2, 2, args.game, base)
    if args.game == "gs":
        if isinstance(s1, games.TransducerStrategy) and isinstance(s2, games.TransducerStrategy):
            play = games.play_gs_transducers(s1, s2, base)
        else:
            play = games.play_gs(s1, s2, args.horizon, base)
        word = play.word
        out.append(f"play {format_up(word) if isinstance(word, UPWord) else format_finite(word)}")
        out.append(_winner_text(games.gs_winner(play, winset, lim)))
        return
    winset2 = _load_machine(args.winset2) if args.winset2 else winset
    o = games.play_wadge(s1, s2, winset, winset2, args.horizon, lim,
                         alphabet1=base, alphabet2=winset2.alphabet)

    def fmt(w):
        return format_up(w) if isinstance(w, UPWord) else format_finite(w) or "-"

    out.append(f"a {fmt(o.a)}")
    out.append(f"moves2 {fmt(o.moves2)}")
    out.append(f"b {fmt(o.b)} infinite={o.b_infinite}")
    out.append(_winner_text(o.winner))


def cmd_lift(args, out):
    sf = games.parse_strategy(_read(args.strategy))
    if sf.lift is not None:
        raise DomainError("the strategy file is already a lifted strategy")
    if args.game == "gs":
        spec = codings.CodingSpec(args.reduction, args.param)
        if not codings.writer_parity_ok(spec):
            raise DomainError(f"{spec} needs an even parameter for Gale-Stewart lifts")
    elif args.reduction == codings.H:
        raise DomainError("Wadge lifts use theta, hk or phi")
    header = [f"lift {args.game} {args.reduction} {args.param} {args.player}"]
    _write(games.dump_strategy(sf.transducer, header), args.out)


def cmd_selfcheck(args, out):
    results = selfcheck.run_selfcheck(args.seed, args.budget)
    text = selfcheck.format_report(results)
    if not args.quiet:
        out.extend(text.splitlines())
    failed = [r.name for r in results if r.failures]
    if failed:
        raise DomainError("failing suites: " + ", ".join(failed))


# ------------------------------------------------------------------ parser

def _add_limits(p):
    p.add_argument("--max-steps", type=int, default=200_000)
    p.add_argument("--max-counter", type=int, default=64)
    p.add_argument("--max-lambda", type=int, default=16)


def build_parser() -> argparse.ArgumentParser:
    # global flags work before or after the subcommand; the subcommand copies
    # suppress their defaults so they never overwrite a value given earlier
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized commands")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="print only the result line")

    parser = argparse.ArgumentParser(prog="cbgames", description="Counter-machine games toolkit")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    parser.add_argument("--quiet", action="store_true", help="print only the result line")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a machine file")
    p.add_argument("--machine", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("encode", parents=[common], help="prefix of a coded word")
    p.add_argument("--coding", required=True, choices=codings.KINDS)
    p.add_argument("--param", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--prefix", type=int, required=True)
    p.add_argument("--base", default="a,b")
    p.add_argument("--rules", action="store_true", help="h coding through the rewrite rules")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("classify", parents=[common], help="prefix or gadget membership")
    p.add_argument("--gadget", required=True, choices=sorted(PREF_GADGETS) + list(codings.GADGET_KINDS))
    p.add_argument("--param", type=int)
    p.add_argument("--word", required=True)
    p.add_argument("--base", default="a,b")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("gadget", parents=[common], help="emit a gadget machine")
    p.add_argument("--kind", required=True, choices=codings.GADGET_KINDS)
    p.add_argument("--param", type=int)
    p.add_argument("--base", default="a,b")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("combine", parents=[common], help="union or Büchi intersection")
    p.add_argument("--op", required=True, choices=("union", "intersect"))
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("member", parents=[common], help="membership of a UP word")
    p.add_argument("--machine", required=True)
    p.add_argument("--word", required=True)
    _add_limits(p)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("play", parents=[common], help="play a Gale-Stewart or Wadge game")
    p.add_argument("--game", required=True, choices=("gs", "wadge"))
    p.add_argument("--winset", required=True)
    p.add_argument("--winset2", help="Player 2's set in a Wadge game (default: --winset)")
    p.add_argument("--p1", required=True)
    p.add_argument("--p2", required=True)
    p.add_argument("--horizon", type=int, default=50)
    _add_limits(p)
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("lift", parents=[common], help="lift a coded-game strategy")
    p.add_argument("--game", choices=("gs", "wadge"), default="gs")
    p.add_argument("--reduction", required=True, choices=codings.KINDS)
    p.add_argument("--param", type=int, required=True)
    p.add_argument("--player", type=int, required=True, choices=(1, 2))
    p.add_argument("--strategy", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("selfcheck", parents=[common], help="run the invariant suites")
    p.add_argument("--budget", type=int, default=20)
    p.set_defaults(func=cmd_selfcheck)
    return parser


DOMAIN_ERRORS = (DomainError, machines.MachineError, WordError, codings.CodingError,
                 games.StrategyError, games.StrategyEscape, games.HorizonExceeded,
                 membership.AlphabetMismatch, ValueError)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    random.seed(args.seed)
    out: list = []
    try:
        args.func(args, out)
    except DOMAIN_ERRORS as exc:
        for line in out:
            print(line)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for line in out:
        print(line)
    return 0


def main() -> None:
    sys.exit(run())
