"""Interned impartial game DAGs.

A game is identified by a dense integer id inside a :class:`GameStore`.  The
store keeps one canonical child tuple per id (sorted, deduplicated), so two
ids of the same store are equal exactly when the game trees are isomorphic
with options read as sets.  No game-theoretic simplification is ever applied.
"""

from __future__ import annotations

from typing import Iterable

DEFAULT_NODE_CAP = 10**6

GameId = int


class InvalidHandle(ValueError):
    """An id that does not belong to the store."""


class ResourceError(RuntimeError):
    """A construction would exceed the store's node cap."""


class GameStore:
    """Hash-consing table for impartial games.

    Children of a node are always interned before the node itself, so every
    child id is strictly smaller than its parent id.  Several algorithms rely
    on that ordering.
    """

    def __init__(self, node_cap: int = DEFAULT_NODE_CAP):
        self.node_cap = node_cap
        self._index: dict[tuple[int, ...], int] = {}
        self._children: list[tuple[int, ...]] = []
        self._sum_memo: dict[tuple[int, int], int] = {}
        self._heaps: list[int] = []
        self._heap_of: dict[int, int] = {}
        # Memo tables keyed by (operation name, player count) -> {operands: value}.
        self.memo: dict[tuple, dict] = {}
        self.zero = self.intern(())

    def __len__(self) -> int:
        return len(self._children)

    def __contains__(self, g: object) -> bool:
        return isinstance(g, int) and 0 <= g < len(self._children)

    def check(self, g: GameId) -> GameId:
        if g not in self:
            raise InvalidHandle(f"game id {g!r} does not belong to this store")
        return g

    def table(self, *key) -> dict:
        """Return (creating if needed) the memo table for ``key``."""
        tab = self.memo.get(key)
        if tab is None:
            tab = self.memo[key] = {}
        return tab

    # -- construction -----------------------------------------------------

    def intern(self, options: Iterable[GameId]) -> GameId:
        key = tuple(sorted(set(options)))
        found = self._index.get(key)
        if found is not None:
            return found
        for c in key:
            self.check(c)
        if len(self._children) >= self.node_cap:
            raise ResourceError(
                f"node cap of {self.node_cap} interned games exceeded")
        gid = len(self._children)
        self._children.append(key)
        self._index[key] = gid
        return gid

    def children(self, g: GameId) -> tuple[int, ...]:
        return self._children[self.check(g)]

    def nim_heap(self, n: int) -> GameId:
        if n < 0:
            raise ValueError("heap size must be nonnegative")
        heaps = self._heaps
        while len(heaps) <= n:
            heaps.append(self.intern(heaps))
            self._heap_of[heaps[-1]] = len(heaps) - 1
        return heaps[n]

    @property
    def star(self) -> GameId:
        return self.nim_heap(1)

    def wrap(self, g: GameId) -> GameId:
        """The game ``{g}`` whose only option is ``g``."""
        return self.intern((g,))

    def add(self, g: GameId, h: GameId) -> GameId:
        """Disjunctive sum, memoized; iterative so deep sums do not recurse."""
        self.check(g)
        self.check(h)
        if g > h:
            g, h = h, g
        memo = self._sum_memo
        found = memo.get((g, h))
        if found is not None:
            return found
        kids = self._children
        zero = self.zero
        stack = [(g, h)]
        while stack:
            a, b = stack[-1]
            if (a, b) in memo:
                stack.pop()
                continue
            if a == zero:
                memo[(a, b)] = b
                stack.pop()
                continue
            opts = []
            pending = []
            for x, y in [(a2, b) for a2 in kids[a]] + [(a, b2) for b2 in kids[b]]:
                k = (x, y) if x <= y else (y, x)
                r = memo.get(k)
                if r is None:
                    pending.append(k)
                else:
                    opts.append(r)
            if pending:
                stack.extend(pending)
                continue
            memo[(a, b)] = self.intern(opts)
            stack.pop()
        return memo[(g, h)]

    def sum(self, *games: GameId) -> GameId:
        total = self.zero
        for g in games:
            total = self.add(total, g)
        return total

    def copies(self, g: GameId, k: int) -> GameId:
        """``k`` copies of ``g`` added together (``k·g``)."""
        if k < 0:
            raise ValueError("copy count must be nonnegative")
        total = self.zero
        for _ in range(k):
            total = self.add(total, g)
        return total

    def nim(self, heaps: Iterable[int]) -> GameId:
        """The Nim position with the given heap sizes."""
        return self.sum(*(self.nim_heap(h) for h in heaps))

    # -- queries ----------------------------------------------------------

    def subpositions(self, g: GameId) -> set[GameId]:
        seen = {self.check(g)}
        todo = [g]
        kids = self._children
        while todo:
            for c in kids[todo.pop()]:
                if c not in seen:
                    seen.add(c)
                    todo.append(c)
        return seen

    def postorder(self, g: GameId) -> list[GameId]:
        """Subpositions of ``g``, children before parents."""
        # Child ids are smaller than parent ids, so sorting is a valid order.
        return sorted(self.subpositions(g))

    def height(self, g: GameId) -> int:
        """Length of the longest run (the birthday)."""
        tab = self.table("height")
        for x in self.postorder(g):
            if x not in tab:
                tab[x] = 1 + max((tab[c] for c in self._children[x]), default=-1)
        return tab[g]

    def heap_size(self, g: GameId) -> int | None:
        """``n`` if ``g`` is isomorphic to the nim-heap ``*n``, else None."""
        if g in self._heap_of:
            return self._heap_of[g]
        kids = self.children(g)
        sizes = {self.heap_size(c) for c in kids}
        if None in sizes or sizes != set(range(len(kids))):
            return None
        return len(kids)
