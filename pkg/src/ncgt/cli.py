"""Command line interface.

Exit status: 0 success, 1 verification mismatch or law violation,
2 usage or parse error, 3 budget (node cap) exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Sequence

from . import laws, nim, tables
from .games import DEFAULT_NODE_CAP, GameStore, ResourceError
from .notation import (NotationError, Value, looks_compact, parse_compact, parse_expr,
                       print_game, print_partizan)
from .outcomes import outcome
from .partizan import PartizanStore, compare, outcome_str, parse_player

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Context:
    def __init__(self, args):
        self.args = args
        self.n = args.players
        if self.n < 2:
            raise UsageError("--players must be at least 2")
        budget = getattr(args, "budget", None)
        self.store = GameStore(node_cap=budget or DEFAULT_NODE_CAP)
        self.ps = PartizanStore(self.n, self.store)
        self.fmt = args.format
        self.out = sys.stdout

    def parse(self, text: str) -> Value:
        mode = getattr(self.args, "notation", "auto")
        try:
            if mode == "compact" or (mode == "auto" and looks_compact(text)):
                return Value(parse_compact(self.store, text))
            return parse_expr(text, self.store, self.ps)
        except (NotationError, ValueError) as exc:
            raise UsageError(str(exc)) from exc

    def show(self, v: Value) -> str:
        return print_partizan(self.ps, v.id) if v.partizan else print_game(self.store, v.id)

    def emit(self, text: str = "", record: dict | None = None, rows=None):
        if self.fmt == "json" and record is not None:
            print(json.dumps(record), file=self.out)
        elif self.fmt == "csv" and rows is not None:
            w = csv.writer(self.out, lineterminator="\n")
            w.writerows(rows)
        else:
            print(text, file=self.out)


# -- subcommands -------------------------------------------------------------------

def cmd_outcome(ctx: Context) -> int:
    v = ctx.parse(ctx.args.expr)
    if v.partizan:
        o = outcome_str(ctx.ps.outcome(v.id))
    else:
        o = str(outcome(ctx.store, v.id, ctx.n))
    ctx.emit(o, {"expr": ctx.args.expr, "players": ctx.n, "outcome": o},
             [["expr", "players", "outcome"], [ctx.args.expr, ctx.n, o]])
    return EXIT_OK


def cmd_nim(ctx: Context) -> int:
    heaps = nim.position(ctx.args.heaps)
    args, n = ctx.args, ctx.n
    closed = None
    if args.closed_form or args.cross_check:
        if n == 3:
            closed = nim.closed3(heaps)
        elif len(heaps) <= 2 and n > 2:
            closed = nim.two_heap(*([0] * (2 - len(heaps)) + list(heaps)), n)
        elif args.closed_form:
            raise UsageError("closed forms cover three players, or at most two heaps")
    if args.closed_form and not args.cross_check:
        result = closed
    else:
        result = nim.engine(ctx.store, heaps, n)
    status = EXIT_OK
    record = {"expr": " ".join(map(str, heaps)), "players": n, "outcome": str(result)}
    text = str(result)
    if args.cross_check and closed is not None:
        agree = closed == result
        record["closed_form"] = str(closed)
        record["agree"] = agree
        text += f" (closed form {closed}, {'agrees' if agree else 'MISMATCH'})"
        status = EXIT_OK if agree else EXIT_MISMATCH
    ctx.emit(text, record, [list(record), list(record.values())])
    return status


def cmd_nim_quotient(ctx: Context) -> int:
    q = nim.quotient_build()
    rows = q.csv_rows()
    if ctx.fmt == "json":
        ctx.emit(record={"elements": [e.name for e in q.elements],
                         "table": [[x.name for x in r] for r in q.table],
                         "pi": [str(o) for o in q.pi], "classes": q.classes})
    elif ctx.fmt == "csv":
        ctx.emit(rows=rows)
    else:
        ctx.emit("elements: " + " ".join(e.name for e in q.elements))
        w = csv.writer(ctx.out, lineterminator="\n")
        w.writerows(rows[:-1])
        ctx.emit("Pi: " + " ".join(f"{e.name}={o}" for e, o in zip(q.elements, q.pi)))
    return EXIT_OK


def cmd_verify(ctx: Context) -> int:
    rep = tables.verify(ctx.args.table, ctx.store)
    summary = (f"{rep.table}: {rep.count('ok')} ok, {len(rep.mismatches)} mismatches, "
               f"{rep.count('skip')} skipped")
    if ctx.fmt == "csv":
        ctx.emit(rows=[["cell", "expected", "got", "status"]]
                 + [[c.key, c.expected, c.got, c.status] for c in rep.cells])
    elif ctx.fmt == "json":
        for c in rep.cells:
            ctx.emit(record={"table": rep.table, "cell": c.key, "expected": c.expected,
                             "got": c.got, "status": c.status})
    else:
        for c in rep.mismatches:
            ctx.emit(f"MISMATCH {c.key}: expected {c.expected}, got {c.got}")
        ctx.emit(summary)
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def cmd_compare(ctx: Context) -> int:
    try:
        p = parse_player(ctx.args.player, ctx.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    g, h = (ctx.parse(t) for t in (ctx.args.g, ctx.args.h))
    gid, hid = (v.id if v.partizan else ctx.ps.embed(v.id) for v in (g, h))
    v = compare(ctx.ps, gid, hid, p)
    if v.kind == "REFUTED":
        text = f"REFUTED({print_partizan(ctx.ps, v.witness)},{v.order})"
    elif v.kind == "PROVEN":
        text = f"PROVEN({v.rule})"
    else:
        text = f"UNKNOWN(budget={v.budget})"
    record = {"expr": f"{ctx.args.g} <= {ctx.args.h}", "players": ctx.n,
              "player": ctx.args.player, "verdict": v.kind, "rule": v.rule,
              "order": v.order,
              "witness": print_partizan(ctx.ps, v.witness) if v.witness is not None else None}
    ctx.emit(text, record, [list(record), list(record.values())])
    return EXIT_OK


def cmd_absorbing(ctx: Context) -> int:
    if ctx.n <= 2:
        raise UsageError("absorbing games need more than two players")
    v = ctx.parse(ctx.args.expr)
    if v.partizan:
        raise UsageError("absorbing applies to impartial games")
    truncated = False
    if laws.absorbing_certify(ctx.store, v.id, ctx.n):
        verdict = laws.AbsorbingVerdict("CERTIFIED")
    else:
        pool = laws.default_pool(ctx.store, ctx.n)
        truncated = pool.truncated
        verdict = laws.absorbing_verdict(ctx.store, v.id, pool, ctx.n)
    if verdict.kind == "REFUTED":
        text = f"REFUTED({print_game(ctx.store, verdict.witness)})"
    elif verdict.kind == "UNKNOWN":
        text = f"UNKNOWN(pool={verdict.budget})"
    else:
        text = "CERTIFIED"
    record = {"expr": ctx.args.expr, "players": ctx.n, "verdict": verdict.kind,
              "witness": print_game(ctx.store, verdict.witness)
              if verdict.witness is not None else None}
    ctx.emit(text, record, [list(record), list(record.values())])
    if verdict.kind == "UNKNOWN" and truncated:
        print("budget exceeded: the refutation pool was truncated", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def _law_runs(ctx: Context, name: str | None, birthday: int):
    st, n = ctx.store, ctx.n
    if birthday == 3:
        pool = laws.base_pool(st, n)
    else:
        pool = laws.wrap_closure(st, laws.games_by_birthday(st, birthday))
    small = laws.small_pool(st) if birthday == 3 else pool
    names = [name] if name else list(laws.LAWS) + ["depth_additivity", "no_previous"]
    for law in names:
        if law == "other_procreation":
            for k in (2, 3):
                for m in (0, 1):
                    if n > k * m:
                        yield f"{law}(k={k},m={m})", laws.check_law(
                            st, law, small if k == 3 else pool, n, k=k, m=m)
        elif law == "revert_inclusion":
            pairs = [(h, g) for h in small for g in small
                     if h != g and laws.revertible(st, h, g, n)]
            pairs.append((st.copies(st.star, 3), st.zero))
            yield law, laws.check_law(st, law, small, n, pairs=pairs)
        elif law == "depth_additivity":
            yield law, laws.check_depth_additivity(st, pool, n)
        elif law == "no_previous":
            yield law, laws.check_no_previous(st, small, n)
        else:
            yield law, laws.check_law(st, law, pool, n)


def cmd_laws(ctx: Context) -> int:
    birthday = ctx.args.max_birthday
    if not 0 <= birthday <= 3:
        raise UsageError("--max-birthday must be between 0 and 3")
    if ctx.args.law and ctx.args.law in ("other_procreation",) and ctx.n <= 1:
        raise UsageError("other_procreation needs more players")
    total = 0
    for label, violations in _law_runs(ctx, ctx.args.law, birthday):
        total += len(violations)
        for v in violations:
            if ctx.fmt == "json":
                ctx.emit(record=v.as_json())
            else:
                ctx.emit(f"VIOLATION {label} {v.games}: expected {v.expected}, got {v.got}")
        if ctx.fmt != "json":
            ctx.emit(f"{label}: {len(violations)} violations")
    return EXIT_MISMATCH if total else EXIT_OK


def cmd_search(ctx: Context) -> int:
    q, st, n = ctx.args.question, ctx.store, ctx.n
    if q == "trebling":
        if n != 3:
            raise UsageError("the trebling search is for three players")
        rep = laws.search_trebling(st, laws.default_pool(st, 3))
        found = [print_game(st, g) for g in rep.found]
        text = (f"trebling: examined {rep.examined} games, found {len(found)}"
                + (": " + ", ".join(found) if found else "") + f" ({rep.note})")
        record = {"question": q, "examined": rep.examined, "found": found}
    elif q == "nim-periodicity":
        if n <= 2:
            raise UsageError("periodicity search needs more than two players")
        size = ctx.args.max_size or n + 2
        fails = nim.search_periodicity(st, n, 3, size)
        count = len(nim.positions_within(3, size))
        text = (f"nim-periodicity: {count} positions (<= 3 heaps of size <= {size}) "
                f"verified to horizon {2 * n}; failures: {len(fails)}")
        record = {"question": q, "players": n, "examined": count, "horizon": 2 * n,
                  "failures": [list(h) for h, _ in fails]}
    else:
        if n <= 2:
            raise UsageError("the quotient search needs more than two players")
        size = ctx.args.max_size or n + 1
        rep = nim.search_quotient_absorbing(st, n, 2, size)
        text = "; ".join(f"{k}: {len(v)} Nim contexts (<= 2 heaps of size <= {size}) "
                         f"with a determined sum" for k, v in rep.items())
        text += " (evidence within the caps only)"
        record = {"question": q, "players": n,
                  "determined": {k: [list(x) for x in v] for k, v in rep.items()}}
    ctx.emit(text, record, [list(record), [json.dumps(x) for x in record.values()]])
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--players", "-N", type=int, default=3, help="player count (default 3)")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    notation = argparse.ArgumentParser(add_help=False)
    grp = notation.add_mutually_exclusive_group()
    grp.add_argument("--compact", dest="notation", action="store_const", const="compact",
                     help="read games in compact notation")
    grp.add_argument("--verbose", dest="notation", action="store_const", const="verbose",
                     help="read games as verbose expressions")
    notation.set_defaults(notation="auto")
    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--budget", type=int, default=None,
                        help="node cap for the game store (exit 3 when exceeded)")

    parser = argparse.ArgumentParser(prog="ncgt", parents=[common],
                                     description="N-player normal play game engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("outcome", parents=[common, notation], help="outcome of a game")
    p.add_argument("expr")
    p.set_defaults(func=cmd_outcome)

    p = sub.add_parser("nim", parents=[common], help="outcome of a Nim position")
    p.add_argument("heaps", nargs="*", type=int)
    p.add_argument("--closed-form", action="store_true")
    p.add_argument("--cross-check", action="store_true")
    p.set_defaults(func=cmd_nim)

    p = sub.add_parser("nim-quotient", parents=[common], help="three-player Nim quotient")
    p.set_defaults(func=cmd_nim_quotient)

    p = sub.add_parser("verify", parents=[common], help="check a golden table")
    p.add_argument("--table", required=True, choices=tables.TABLE_IDS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", parents=[common, notation, budget],
                       help="semidecide G <=_P H")
    p.add_argument("--player", required=True)
    p.add_argument("g")
    p.add_argument("h")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("absorbing", parents=[common, notation, budget],
                       help="certify or refute that a game is absorbing")
    p.add_argument("expr")
    p.set_defaults(func=cmd_absorbing)

    p = sub.add_parser("laws", parents=[common, budget], help="check the sum laws")
    p.add_argument("--law", choices=list(laws.LAWS) + ["depth_additivity", "no_previous"])
    p.add_argument("--max-birthday", type=int, default=3)
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("search", parents=[common, budget], help="bounded open-question searches")
    p.add_argument("--question", required=True,
                   choices=("trebling", "nim-periodicity", "quotient-absorbing"))
    p.add_argument("--max-size", type=int, default=None, help="largest heap examined")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ctx = Context(args)
        return args.func(ctx)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
