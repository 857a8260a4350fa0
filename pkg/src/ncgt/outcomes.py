"""N-player normal-play outcomes of impartial games.

Players are seat-relative: seat 0 is Next, seat ``n-1`` is Previous and seat
``i`` is the player moving ``i`` turns after Next.  An :class:`Outcome` is the
set of seats holding a winning strategy, stored as an ``n``-bit mask.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .games import GameId, GameStore

# Three-player class names, each a set of seats (N=0, O=1, P=2).
CLASS_NAMES_3 = {
    "-": 0b000, "N": 0b001, "O": 0b010, "P": 0b100,
    "NO": 0b011, "OP": 0b110, "PN": 0b101, "NOP": 0b111,
}


@dataclass(frozen=True, order=True)
class Outcome:
    mask: int
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("player count must be at least 2")
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError(f"mask {self.mask:#b} too wide for {self.n} players")

    @classmethod
    def of(cls, seats: Iterable[int], n: int) -> "Outcome":
        mask = 0
        for s in seats:
            if not 0 <= s < n:
                raise ValueError(f"seat {s} out of range for {n} players")
            mask |= 1 << s
        return cls(mask, n)

    @classmethod
    def full(cls, n: int) -> "Outcome":
        return cls((1 << n) - 1, n)

    @classmethod
    def empty(cls, n: int) -> "Outcome":
        return cls(0, n)

    @classmethod
    def all_but(cls, seats: Iterable[int], n: int) -> "Outcome":
        return cls.of(seats, n).complement()

    def __contains__(self, seat: int) -> bool:
        return bool(self.mask >> seat & 1)

    def __iter__(self):
        return (s for s in range(self.n) if self.mask >> s & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def complement(self) -> "Outcome":
        return Outcome(self.mask ^ ((1 << self.n) - 1), self.n)

    def issubset(self, other: "Outcome") -> bool:
        return self.mask & ~other.mask == 0

    def rotate(self, k: int = 1) -> "Outcome":
        """Shift every seat ``k`` places later (cyclically)."""
        k %= self.n
        full = (1 << self.n) - 1
        return Outcome(((self.mask << k) | (self.mask >> (self.n - k))) & full, self.n)

    @property
    def undetermined(self) -> bool:
        return self.mask == 0

    @property
    def proper(self) -> bool:
        return self.mask != (1 << self.n) - 1

    def tokens(self) -> list[str]:
        return [seat_token(s, self.n) for s in self]

    def __str__(self) -> str:
        return "".join(self.tokens()) or "-"

    def __repr__(self) -> str:
        return f"Outcome({self}, n={self.n})"

    @classmethod
    def parse(cls, text: str, n: int) -> "Outcome":
        return parse_outcome(text, n)


def seat_token(seat: int, n: int) -> str:
    if seat == 0:
        return "N"
    if seat == n - 1:
        return "P"
    return "O" if n == 3 else f"O{seat}"


_TOKEN = re.compile(r"N|P|O(\d*)")


def parse_outcome(text: str, n: int) -> Outcome:
    """Parse the comma-free seat token encoding ("NP", "NO1O3P", "-")."""
    s = text.strip().replace("∅", "-")
    if s in ("-", ""):
        return Outcome.empty(n)
    seats = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ValueError(f"bad outcome token at position {pos} in {text!r}")
        tok = m.group(0)
        if tok == "N":
            seats.append(0)
        elif tok == "P":
            seats.append(n - 1)
        elif m.group(1):
            seat = int(m.group(1))
            if not 1 <= seat <= n - 2:
                raise ValueError(f"{tok} is not an Other seat for {n} players")
            seats.append(seat)
        elif n == 3:
            seats.append(1)
        else:
            raise ValueError("bare 'O' is only meaningful for three players")
        pos = m.end()
    return Outcome.of(seats, n)


# -- computation -------------------------------------------------------------

def _masks(store: GameStore, n: int) -> dict[GameId, int]:
    return store.table("outcome", n)


def outcome_mask(store: GameStore, g: GameId, n: int) -> int:
    """Outcome bit mask of ``g``, filled children-first over the DAG."""
    if n < 2:
        raise ValueError("player count must be at least 2")
    memo = _masks(store, n)
    found = memo.get(g)
    if found is not None:
        return found
    full = (1 << n) - 1
    pbit = 1 << (n - 1)
    kids = store._children
    # Iterative post-order DFS restricted to unevaluated nodes.
    stack = [g]
    while stack:
        x = stack[-1]
        if x in memo:
            stack.pop()
            continue
        todo = [c for c in kids[x] if c not in memo]
        if todo:
            stack.extend(todo)
            continue
        every = full
        some_p = 0
        for c in kids[x]:
            m = memo[c]
            every &= m
            some_p |= m & pbit
        memo[x] = ((every << 1) & full) | (1 if some_p else 0)
        stack.pop()
    return memo[g]


def outcome(store: GameStore, g: GameId, n: int) -> Outcome:
    return Outcome(outcome_mask(store, g, n), n)


def outcome_unmemoized(store: GameStore, g: GameId, n: int) -> Outcome:
    """Direct tree recursion on the definition; used only as a cross-check."""
    opts = [outcome_unmemoized(store, c, n) for c in store.children(g)]
    seats = []
    if any(n - 1 in o for o in opts):
        seats.append(0)
    for i in range(1, n):
        if all(i - 1 in o for o in opts):
            seats.append(i)
    return Outcome.of(seats, n)


def wins_moving_ith(store: GameStore, g: GameId, i: int, n: int) -> bool:
    """Whether the player moving ``i``-th (1-based) has a winning strategy."""
    if not 1 <= i <= n:
        raise ValueError(f"move order {i} out of range 1..{n}")
    return bool(outcome_mask(store, g, n) >> (i - 1) & 1)


def outcome_witness(store: GameStore, target: Outcome) -> GameId:
    """A game whose outcome is ``target``.

    Targets containing Next get one option ``m·*`` per losing seat; other
    nonempty targets wrap the witness of the rotated target; the empty target
    uses ``{H, {H}}`` with ``H = {0, *, ..., (n-2)·*}``.
    """
    n = target.n
    if not target.proper:
        raise ValueError("the full player set is never an outcome")
    if n == 2:
        if target.mask == 0b01:
            return store.star
        if target.mask == 0b10:
            return store.zero
        raise ValueError("with two players only N and P outcomes exist")
    if target.undetermined:
        star = store.star
        h = store.intern(store.copies(star, m) for m in range(n - 1))
        return store.intern((h, store.wrap(h)))
    if 0 in target:
        losers = [s for s in range(1, n) if s not in target]
        return store.intern(store.copies(store.star, s - 1) for s in losers)
    return store.wrap(outcome_witness(store, target.rotate(-1)))
