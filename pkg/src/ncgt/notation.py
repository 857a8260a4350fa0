"""Text forms of games.

Two input languages are supported.

Compact notation (input only) writes ``*`` followed by option elements:
``*21`` is ``{*2, *}``, ``_#`` wraps, ``_d`` adds ``*d`` and parentheses
either group a single element or build an option set from several.

The verbose expression language is also what :func:`print_game` emits::

    0   *   *12   {a, b}   {a | b | c}   a + b
    sum(a, b, ...)  copies(k, e)  wrap(e)  one(P)  int(k, P)
    conj(e)  negsum(e)  embed(e)

where ``P`` is one of ``L``, ``C1`` ... ``C{N-2}``, ``R``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .games import GameId, GameStore
from .partizan import PartizanStore, parse_player, player_name


class NotationError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}" + (f" in {text!r}" if text else ""))
        self.pos = pos


# -- compact notation ------------------------------------------------------------

class _Compact:
    def __init__(self, store: GameStore, text: str):
        self.store = store
        self.text = text
        self.s = "".join(text.split())
        self.i = 0

    def fail(self, msg: str):
        raise NotationError(msg, self.text, self.i)

    def peek(self) -> str:
        return self.s[self.i] if self.i < len(self.s) else ""

    def game(self) -> GameId:
        if self.s == "0":
            return self.store.zero
        if self.peek() != "*":
            self.fail("expected '0' or '*'")
        self.i += 1
        if self.i == len(self.s):
            return self.store.star
        elems = self.elems(top=True)
        if self.i != len(self.s):
            self.fail("unexpected character")
        return elems[0] if len(elems) == 1 else self.store.intern(elems)

    def elems(self, top: bool) -> list[GameId]:
        out = []
        while self.peek() and (self.peek().isdigit() or self.peek() == "("):
            out.append(self.elem())
        if not out:
            self.fail("expected a digit or '('")
        if not top and self.peek() != ")":
            self.fail("expected ')'")
        return out

    def elem(self) -> GameId:
        st = self.store
        c = self.peek()
        if c.isdigit():
            self.i += 1
            g = st.nim_heap(int(c))
        else:
            self.i += 1
            inner = self.elems(top=False)
            self.i += 1
            g = inner[0] if len(inner) == 1 else st.intern(inner)
        while self.peek() == "_":
            self.i += 1
            if self.peek() == "{":
                self.i += 1
                start = self.i
                while self.peek() and self.peek() != "}":
                    g = self.subchar(g)
                if self.peek() != "}":
                    self.fail("unterminated subscript")
                if self.i == start:
                    self.fail("empty subscript")
                self.i += 1
            else:
                g = self.subchar(g)
        return g

    def subchar(self, g: GameId) -> GameId:
        c = self.peek()
        if c == "#":
            g = self.store.wrap(g)
        elif c.isdigit():
            g = self.store.add(g, self.store.nim_heap(int(c)))
        else:
            self.fail("expected '#' or a digit in subscript")
        self.i += 1
        return g


def parse_compact(store: GameStore, text: str) -> GameId:
    """Parse a game in the appendix compact notation."""
    return _Compact(store, text).game()


# -- verbose expressions -----------------------------------------------------------

@dataclass(frozen=True)
class Value:
    """A parsed game: ``partizan`` tells which store ``id`` lives in."""
    id: int
    partizan: bool = False


_TOKENS = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")
_FUNCS = {"sum", "copies", "wrap", "one", "int", "conj", "negsum", "embed"}


class _Expr:
    def __init__(self, text: str, games: GameStore, ps: PartizanStore | None):
        self.text = text
        self.games = games
        self.ps = ps
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKENS.match(text, pos)
            if not m or m.end() == pos:
                break
            if m.group(1):
                self.toks.append(("num", m.group(1), m.start(1)))
            elif m.group(2):
                self.toks.append(("name", m.group(2), m.start(2)))
            elif m.group(3):
                self.toks.append(("sym", m.group(3), m.start(3)))
            pos = m.end()
        self.k = 0

    def fail(self, msg: str):
        pos = self.toks[self.k][2] if self.k < len(self.toks) else len(self.text)
        raise NotationError(msg, self.text, pos)

    def peek(self) -> str:
        return self.toks[self.k][1] if self.k < len(self.toks) else ""

    def take(self, expected: str | None = None) -> tuple[str, str, int]:
        if self.k >= len(self.toks):
            self.fail(f"expected {expected!r}" if expected else "unexpected end")
        tok = self.toks[self.k]
        if expected is not None and tok[1] != expected:
            self.fail(f"expected {expected!r}")
        self.k += 1
        return tok

    def need_ps(self) -> PartizanStore:
        if self.ps is None:
            self.fail("partizan expressions need a partizan store")
        return self.ps

    def parse(self) -> Value:
        v = self.expr()
        if self.k != len(self.toks):
            self.fail("unexpected token")
        return v

    def expr(self) -> Value:
        v = self.term()
        while self.peek() == "+":
            self.take()
            v = self.add(v, self.term())
        return v

    def add(self, a: Value, b: Value) -> Value:
        if a.partizan or b.partizan:
            ps = self.need_ps()
            return Value(ps.add(self.lift(a), self.lift(b)), True)
        return Value(self.games.add(a.id, b.id))

    def lift(self, v: Value) -> int:
        return v.id if v.partizan else self.need_ps().embed(v.id)

    def integer(self) -> int:
        kind, text, _ = self.take()
        if kind != "num":
            self.k -= 1
            self.fail("expected a number")
        return int(text)

    def player(self) -> int:
        ps = self.need_ps()
        kind, text, _ = self.take()
        try:
            return parse_player(text, ps.n)
        except ValueError:
            self.k -= 1
            self.fail(f"unknown player token {text!r}")

    def term(self) -> Value:
        kind, text, _ = self.take()
        if kind == "num":
            if text != "0":
                self.k -= 1
                self.fail("only 0 is a game literal")
            return Value(self.games.zero)
        if text == "*":
            if self.peek().isdigit() and self.toks[self.k][0] == "num":
                return Value(self.games.nim_heap(self.integer()))
            return Value(self.games.star)
        if text == "(":
            v = self.expr()
            self.take(")")
            return v
        if text == "{":
            return self.braces()
        if kind == "name" and text in _FUNCS:
            self.take("(")
            v = self.call(text)
            self.take(")")
            return v
        self.k -= 1
        self.fail("unexpected token")

    def arglist(self) -> list[Value]:
        args = [self.expr()]
        while self.peek() == ",":
            self.take()
            args.append(self.expr())
        return args

    def call(self, name: str) -> Value:
        if name == "sum":
            args = self.arglist() if self.peek() != ")" else []
            v = Value(self.games.zero)
            for a in args:
                v = self.add(v, a)
            return v
        if name == "copies":
            k = self.integer()
            self.take(",")
            v = self.expr()
            if v.partizan:
                return Value(self.need_ps().copies(v.id, k), True)
            return Value(self.games.copies(v.id, k))
        if name == "wrap":
            v = self.expr()
            if v.partizan:
                self.fail("wrap applies to impartial games")
            return Value(self.games.wrap(v.id))
        if name == "one":
            p = self.player()
            return Value(self.need_ps().one(p), True)
        if name == "int":
            k = self.integer()
            self.take(",")
            p = self.player()
            return Value(self.need_ps().integer(k, p), True)
        v = self.expr()
        ps = self.need_ps()
        if name == "conj":
            return Value(ps.conjugate(self.lift(v)), True)
        if name == "negsum":
            return Value(ps.conj_sum(self.lift(v)), True)
        return Value(self.lift(v), True)  # embed

    def braces(self) -> Value:
        slots: list[list[Value]] = [[]]
        while True:
            if self.peek() not in (",", "|", "}"):
                slots[-1].append(self.expr())
                while self.peek() == ",":
                    self.take()
                    slots[-1].append(self.expr())
            tok = self.peek()
            if tok == "}":
                self.take()
                break
            if tok != "|":
                self.fail("expected ',', '|' or '}'")
            self.take()
            slots.append([])
        if len(slots) == 1:
            opts = slots[0]
            if any(v.partizan for v in opts):
                ps = self.need_ps()
                return Value(ps.intern([[self.lift(v) for v in opts]] * ps.n), True)
            return Value(self.games.intern(v.id for v in opts))
        ps = self.need_ps()
        if len(slots) != ps.n:
            self.fail(f"expected {ps.n - 1} bars for {ps.n} players, got {len(slots) - 1}")
        return Value(ps.intern([[self.lift(v) for v in s] for s in slots]), True)


def parse_expr(text: str, games: GameStore, ps: PartizanStore | None = None) -> Value:
    """Parse a verbose expression into ``games`` (impartial) or ``ps`` (partizan)."""
    if ps is not None and ps.games is not games:
        raise ValueError("the partizan store must share the impartial store")
    return _Expr(text, games, ps).parse()


# -- printing --------------------------------------------------------------------

def print_game(store: GameStore, g: GameId) -> str:
    """Verbose form of an impartial game; heaps print as ``*n``."""
    memo: dict[int, str] = {}
    for x in store.postorder(g):
        size = store.heap_size(x)
        if size == 0:
            memo[x] = "0"
        elif size == 1:
            memo[x] = "*"
        elif size is not None:
            memo[x] = f"*{size}"
        else:
            kids = sorted(store.children(x), reverse=True)
            memo[x] = "{" + ",".join(memo[c] for c in kids) + "}"
    return memo[g]


def print_partizan(ps: PartizanStore, g: int) -> str:
    """Verbose bar form of a partizan game (always with ``n-1`` bars)."""
    memo: dict[int, str] = {}
    for x in sorted(ps.subpositions(g)):
        if x == ps.zero:
            memo[x] = "0"
            continue
        slots = ps.slots(x)
        memo[x] = "{" + "|".join(
            ",".join(memo[c] for c in sorted(s, reverse=True)) for s in slots) + "}"
    return memo[g]


def print_value(v: Value, games: GameStore, ps: PartizanStore | None = None) -> str:
    if v.partizan:
        if ps is None:
            raise ValueError("printing a partizan value needs its store")
        return print_partizan(ps, v.id)
    return print_game(games, v.id)


def looks_compact(text: str) -> bool:
    """Heuristic used by the CLI: compact strings never contain braces or names."""
    t = text.strip()
    if not t.startswith("*") or len(t) == 1:
        return False
    if any(ch in t for ch in "{},|+") or re.search(r"[A-Za-z]", t):
        return False
    # A bare "*12" is read as a heap; compact strings need a subscript or parens.
    return bool(re.search(r"[_()#]", t))


__all__ = [
    "NotationError", "Value", "parse_compact", "parse_expr", "print_game",
    "print_partizan", "print_value", "looks_compact", "player_name",
]
