"""Command-line front end: ``geowom <command> ...``.

Exit status: 0 success, 2 bad input, 3 unwritable message, 4 block erasure
required, 5 verification mismatch. Text and CSV output starts with a
``# geowom <command> v1`` line; JSON output carries a ``format`` key.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from . import __version__
from .analysis import format_rate_table, rate_table, rate_table_csv
from .concat import (
    ClassicalFlash,
    WomRepetition,
    adversarial_writes,
    failure_pattern,
    hamming7_times_rep3,
    inject_errors,
    random_injection_trials,
    symbol_repetition,
)
from .geo_wom import eg_code, pg22_code, tabulate, verify_write_count
from .multilevel import BlockErasureRequired, LiftedCode, lifted_trace
from .rm_codes import DecodeError
from .simulate import CODES, SIM_STRATEGIES, SimConfig, monte_carlo, sweep_csv
from .wom_core import (
    TableWomCode,
    UnwritableError,
    WomCode,
    WomError,
    code_from_json,
    encode_sequence,
    parse_state,
    rivest_shamir,
    state_string,
)

FORMAT_VERSION = 1
DEFAULT_SEED = 7
EXIT_PARSE, EXIT_UNWRITABLE, EXIT_ERASURE, EXIT_MISMATCH = 2, 3, 4, 5

CODE_CHOICES = ("rs", "pg22", "eg3", "eg4", "eg5")


class CliError(Exception):
    def __init__(self, msg: str, status: int = EXIT_PARSE):
        super().__init__(msg)
        self.status = status


def header(command: str, **extra) -> str:
    tail = "".join(f" {k}={v}" for k, v in extra.items())
    return f"# geowom {command} v{FORMAT_VERSION}{tail}\n"


def base_code(name: str) -> WomCode:
    if name == "rs":
        return rivest_shamir()
    if name == "pg22":
        return pg22_code()
    if name in ("eg3", "eg4", "eg5"):
        return eg_code(int(name[2]))
    raise CliError(f"unknown code {name!r}")


def family_code(family: str, m: Optional[int]) -> WomCode:
    if family == "rs":
        return rivest_shamir()
    if family == "pg":
        if m not in (None, 2):
            raise CliError("only PG(2,2) is constructed")
        return pg22_code()
    if family == "eg":
        if m is None or not 3 <= m <= 5:
            raise CliError("--m must be 3, 4 or 5 for the eg family")
        return eg_code(m)
    raise CliError(f"unknown family {family!r}")


def parse_q_range(text: str) -> List[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            qs = list(range(int(lo), int(hi) + 1))
        else:
            qs = [int(x) for x in text.split(",")]
    except ValueError:
        raise CliError(f"bad q range {text!r}") from None
    if not qs or min(qs) < 2:
        raise CliError("q values must be >= 2")
    return qs


def write_out(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    code = family_code(args.family, args.m)
    table = code if isinstance(code, TableWomCode) else tabulate(code)
    desc = {"format": f"geowom-code/{FORMAT_VERSION}", **table.to_json()}
    write_out(json.dumps(desc, indent=2) + "\n", args.out)
    return 0


def _messages(code: WomCode, text: str) -> List[int]:
    return [code.parse_message(x) for x in text.split(",") if x.strip()]


def cmd_encode(args) -> int:
    base = base_code(args.code)
    try:
        if args.q == 2 and args.strategy is None:
            code: WomCode = base
            trace = encode_sequence(base, _messages(base, args.messages))
        else:
            code = LiftedCode(base, args.q, args.strategy or "a")
            trace = lifted_trace(code, _messages(code, args.messages))
    except WomError as exc:
        if isinstance(exc, (UnwritableError,)) and exc.representable:
            labels = ",".join(base.label(x) for x in exc.representable)
            sys.stderr.write(f"representable: {labels}\n")
        raise
    out = header("encode", code=code.name) + trace.to_csv()
    write_out(out, args.out)
    return 0


def cmd_decode(args) -> int:
    if args.table:
        with open(args.table) as fh:
            desc = json.load(fh)
        code = code_from_json(desc)
        lines = [header("decode", code=code.name).rstrip("\n"), "state,message"]
        for col in desc["table"]:
            for label, states in col.items():
                for st in states:
                    got = code.label(code.decode(parse_state(st)))
                    lines.append(f"{st},{got}")
        write_out("\n".join(lines) + "\n", args.out)
        return 0
    if not args.state:
        raise CliError("give --state or --table")
    base = base_code(args.code)
    state = parse_state(args.state)
    if args.q == 2 and args.strategy is None:
        if any(x > 1 for x in state):
            raise CliError("binary code state has levels above 1")
        msg = base.decode(state)
    else:
        msg = LiftedCode(base, args.q, args.strategy or "a").decode(state, args.cycle)
    write_out(base.label(msg) + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    code = base_code(args.code)
    rep = verify_write_count(code)
    write_out(header("verify", code=code.name) + rep.summary() + "\n", args.out)
    return 0 if rep.matches else EXIT_MISMATCH


def cmd_rates(args) -> int:
    rows = rate_table(verify=args.verify)
    text = rate_table_csv(rows) if args.csv else format_rate_table(rows)
    write_out(header("rates") + text, args.out)
    return 0


def _concat_code(outer: str, inner: str, q: int):
    if not inner.startswith("rep") or not inner[3:].isdigit():
        raise CliError("--inner must be repN with N odd")
    m = int(inner[3:])
    if outer == "hamming7":
        if m != 3:
            from .concat import ClassicalRepetition
            from .rm_codes import hamming_code

            return ClassicalRepetition(hamming_code(3), m, q)
        return hamming7_times_rep3(q)
    if outer in ("rs", "pg22"):
        return WomRepetition(base_code(outer), m, q)
    if outer == "gf4rep3":
        return ClassicalFlash(symbol_repetition(3, 4), WomRepetition(rivest_shamir(), m, q))
    raise CliError(f"unknown outer code {outer!r}")


def cmd_concat(args) -> int:
    try:
        code = _concat_code(args.outer, args.inner, args.q)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    rep = code.report()
    lines = [header("concat", seed=args.seed).rstrip("\n")]
    lines += [f"{k}: {v}" for k, v in rep.items()]
    writes = max(1, min(code.guaranteed_writes, 2))
    cap = code.capability
    if cap > 0 and args.trials > 0:
        fails = random_injection_trials(code, cap, args.trials, args.seed, writes=1)
        lines.append(f"random {cap}-error injection: {fails} failures in {args.trials} trials")
        s = code.encode(1, code.zero_state(), 1 % code.num_messages)
        pat = failure_pattern(code, s)
        try:
            ok = code.decode(inject_errors(s, pat, code.q)) == 1 % code.num_messages
        except DecodeError:
            ok = False
        lines.append(f"structured {pat.weight}-error pattern at {list(pat.positions)}: {'decoded' if ok else 'decode failure'}")
    if args.adversarial and isinstance(code, WomRepetition) and code.q >= 3:
        lines.append(f"adversarial single-error writes: {adversarial_writes(code)}")
    write_out("\n".join(lines) + "\n", args.out)
    return 0


def cmd_simulate(args) -> int:
    qs = parse_q_range(args.q)
    strategies = [s.strip().lower() for s in args.strategies.split(",") if s.strip()]
    for s in strategies:
        if s not in SIM_STRATEGIES:
            raise CliError(f"unknown strategy {s!r}")
    results = [
        monte_carlo(SimConfig(args.code, s, q, args.trials, args.seed, args.workers))
        for s in strategies
        for q in qs
    ]
    write_out(header("simulate", seed=args.seed) + sweep_csv(results), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="geowom", description="Geometric WOM and flash codes.")
    p.add_argument("--version", action="version", version=f"geowom {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="emit a code table as JSON")
    c.add_argument("--family", choices=("eg", "pg", "rs"), required=True)
    c.add_argument("--m", type=int)
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    e = sub.add_parser("encode", help="encode a message sequence, print the trace as CSV")
    e.add_argument("--code", choices=CODE_CHOICES, required=True)
    e.add_argument("--q", type=int, default=2)
    e.add_argument("--strategy", choices=("a", "b", "complement"))
    e.add_argument("--messages", required=True)
    e.add_argument("--out")
    e.set_defaults(func=cmd_encode)

    d = sub.add_parser("decode", help="decode a state, or every state of a JSON table")
    d.add_argument("--code", choices=CODE_CHOICES, default="rs")
    d.add_argument("--q", type=int, default=2)
    d.add_argument("--strategy", choices=("a", "b", "complement"))
    d.add_argument("--cycle", type=int)
    d.add_argument("--state")
    d.add_argument("--table")
    d.add_argument("--out")
    d.set_defaults(func=cmd_decode)

    v = sub.add_parser("verify", help="guaranteed messages per write by exhaustive search")
    v.add_argument("--code", choices=("rs", "pg22", "eg3", "eg4"), required=True)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("rates", help="rate table of the geometric codes")
    r.add_argument("--csv", action="store_true")
    r.add_argument("--verify", action="store_true", help="add rates of the verified lists")
    r.add_argument("--out")
    r.set_defaults(func=cmd_rates)

    k = sub.add_parser("concat", help="parameters and error experiments of a concatenated code")
    k.add_argument("--outer", choices=("hamming7", "rs", "pg22", "gf4rep3"), required=True)
    k.add_argument("--inner", default="rep3")
    k.add_argument("--q", type=int, default=2)
    k.add_argument("--trials", type=int, default=1000)
    k.add_argument("--seed", type=int, default=DEFAULT_SEED)
    k.add_argument("--adversarial", action="store_true", help="exact worst case under single errors")
    k.add_argument("--out")
    k.set_defaults(func=cmd_concat)

    s = sub.add_parser("simulate", help="Monte Carlo average write counts, as CSV")
    s.add_argument("--code", choices=CODES, default="rs")
    s.add_argument("--q", default="2..8")
    s.add_argument("--strategies", default="complement,a,b")
    s.add_argument("--trials", type=int, default=100_000)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(func=cmd_simulate)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BlockErasureRequired as exc:
        sys.stderr.write(f"block erasure required: {exc}\n")
        return EXIT_ERASURE
    except UnwritableError as exc:
        sys.stderr.write(f"unwritable: {exc}\n")
        return EXIT_UNWRITABLE
    except (CliError,) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.status
    except (DecodeError, WomError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
