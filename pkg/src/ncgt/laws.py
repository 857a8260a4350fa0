"""Undetermined games, absorbing games and checks of the sum laws over game pools.

Everything quantified over "all games" is semidecided: certification uses a
sufficient condition and refutation searches a finite :class:`GamePool`.  A
failed search means "not refuted within the pool", never equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .games import GameId, GameStore, ResourceError
from .outcomes import Outcome, outcome, outcome_mask

LAWS = ("next_generation", "other_procreation", "mirror", "revert_inclusion")


@dataclass
class GamePool:
    """Deduplicated games in a fixed order plus how they were generated.

    Enumerated pools are in canonical-id order; :func:`default_pool` puts a
    constructed family first.  Searches report the first hit in pool order.
    """
    games: list[GameId]
    params: dict = field(default_factory=dict)
    truncated: bool = False

    def __post_init__(self):
        self.games = list(dict.fromkeys(self.games))

    def __iter__(self) -> Iterator[GameId]:
        return iter(self.games)

    def __len__(self) -> int:
        return len(self.games)

    def __contains__(self, g) -> bool:
        return g in self.games


def games_by_birthday(store: GameStore, max_birthday: int) -> list[GameId]:
    """All games of birthday at most ``max_birthday`` (1, 2, 4, 16 games)."""
    if not 0 <= max_birthday <= 3:
        raise ValueError("max_birthday must be between 0 and 3")
    games = [store.zero]
    for _ in range(max_birthday):
        games = [store.intern(c for k, c in enumerate(games) if mask >> k & 1)
                 for mask in range(1 << len(games))]
    return sorted(set(games))


def enumerate_games(store: GameStore, max_birthday: int = 3,
                    seeds: Iterable[GameId] = (), closure: bool = True,
                    node_cap: int | None = None) -> GamePool:
    """Birthday-bounded games plus seeds, closed under one wrap and pairwise sums.

    ``node_cap`` bounds the store size while closing; hitting it (or the
    store's own cap) stops early and sets ``truncated``.
    """
    base = set(games_by_birthday(store, max_birthday)) | set(seeds)
    params = {"max_birthday": max_birthday, "seeds": len(set(seeds)),
              "closure": closure, "node_cap": node_cap}
    if not closure:
        return GamePool(sorted(base), params)
    cap = store.node_cap if node_cap is None else node_cap
    games = set(base)
    truncated = False
    try:
        for g in sorted(base):
            if len(store) >= cap:
                raise ResourceError("pool node cap reached")
            games.add(store.wrap(g))
        layer = sorted(games)
        for i, g in enumerate(layer):
            for h in layer[i:]:
                if len(store) >= cap:
                    raise ResourceError("pool node cap reached")
                games.add(store.add(g, h))
    except ResourceError:
        truncated = True
    return GamePool(sorted(games), params, truncated)


def wrap_closure(store: GameStore, games: Iterable[GameId]) -> GamePool:
    gs = set(games)
    return GamePool(sorted(gs | {store.wrap(g) for g in gs}), {"closure": "wrap"})


def nim_positions(store: GameStore, max_heaps: int = 4, max_size: int = 4) -> list[GameId]:
    out = []
    for k in range(max_heaps + 1):
        for heaps in itertools.combinations_with_replacement(range(1, max_size + 1), k):
            out.append(store.nim(heaps))
    return out


def appendix_games(store: GameStore) -> list[GameId]:
    from .tables import appendix_games as _appendix
    return _appendix(store)


def star_multiple_sets(store: GameStore, n: int) -> list[GameId]:
    """Games whose options are a set of multiples ``k·*`` with ``k <= n``, in subset order."""
    mults = [store.copies(store.star, k) for k in range(n + 1)]
    return [store.intern(c for i, c in enumerate(mults) if mask >> i & 1)
            for mask in range(1 << (n + 1))]


def witness_family(store: GameStore, n: int) -> list[GameId]:
    """Wraps of :func:`star_multiple_sets`: the shapes used to separate ``k·*`` from 0."""
    return [store.wrap(g) for g in star_multiple_sets(store, n)]


def _seeds(store: GameStore, n: int) -> set[GameId]:
    return (set(games_by_birthday(store, 3)) | set(appendix_games(store))
            | set(nim_positions(store)) | set(star_multiple_sets(store, n)))


def base_pool(store: GameStore, n: int = 3) -> GamePool:
    """Seed games closed under one wrap, without pairwise sums.

    Seeds are the birthday-3 games, the appendix games, Nim positions with at
    most four heaps of size at most four and the star-multiple option sets.
    """
    pool = wrap_closure(store, _seeds(store, n))
    pool.params = {"max_birthday": 3, "seeds": "appendix+nim(4,4)+star-sets",
                   "closure": "wrap", "players": n}
    return pool


def small_pool(store: GameStore) -> GamePool:
    """Birthday-3 games and Nim positions of at most 3 heaps of size at most 3, wrapped once."""
    seeds = set(games_by_birthday(store, 3)) | set(nim_positions(store, 3, 3))
    pool = wrap_closure(store, seeds)
    pool.params = {"max_birthday": 3, "seeds": "nim(3,3)", "closure": "wrap"}
    return pool


def default_pool(store: GameStore, n: int = 3, node_cap: int | None = None) -> GamePool:
    """0, then the witness family, then the seeds closed under one wrap and pairwise sums."""
    closed = enumerate_games(store, 3, _seeds(store, n), closure=True, node_cap=node_cap)
    pool = GamePool([store.zero] + witness_family(store, n) + closed.games,
                    dict(closed.params, players=n, order="witness family first"),
                    closed.truncated)
    return pool


# -- undetermined depth --------------------------------------------------------------

def undetermined_depth(store: GameStore, g: GameId, n: int) -> int:
    """Longest run of undetermined subpositions starting at ``g`` (0 if determined)."""
    tab = store.table("undet", n)
    if g in tab:
        return tab[g]
    outcome_mask(store, g, n)
    masks = store.table("outcome", n)
    for x in store.postorder(g):
        if x in tab:
            continue
        if masks.get(x, None) is None:
            outcome_mask(store, x, n)
        if masks[x]:
            tab[x] = 0
        else:
            tab[x] = 1 + max((tab[c] for c in store.children(x)), default=0)
    return tab[g]


def is_strongly_undetermined(store: GameStore, g: GameId, k: int, n: int) -> bool:
    if k < 2:
        raise ValueError("strong k-undeterminedness needs k >= 2")
    kids = store.children(g)
    return bool(kids) and all(undetermined_depth(store, c, n) >= k - 1 for c in kids)


def _need_many(n: int):
    if n <= 2:
        raise ValueError("absorbing games need more than two players")


def absorbing_certify(store: GameStore, g: GameId, n: int) -> bool:
    """Sufficient test: ``g`` strongly ``(n-1)``-undetermined implies absorbing."""
    _need_many(n)
    return is_strongly_undetermined(store, g, n - 1, n)


def absorbing_refute(store: GameStore, g: GameId, pool: Iterable[GameId], n: int
                     ) -> GameId | None:
    """First pool game ``h`` with ``o(g + h)`` nonempty."""
    for h in pool:
        if outcome_mask(store, store.add(g, h), n):
            return h
    return None


@dataclass(frozen=True)
class AbsorbingVerdict:
    kind: str  # CERTIFIED, REFUTED or UNKNOWN
    witness: GameId | None = None
    budget: int = 0


def absorbing_verdict(store: GameStore, g: GameId, pool: Iterable[GameId], n: int
                      ) -> AbsorbingVerdict:
    if absorbing_certify(store, g, n):
        return AbsorbingVerdict("CERTIFIED")
    pool = list(pool)
    h = absorbing_refute(store, g, pool, n)
    if h is not None:
        return AbsorbingVerdict("REFUTED", h)
    return AbsorbingVerdict("UNKNOWN", budget=len(pool))


def absorbing_from_undetermined(store: GameStore, g: GameId, n: int) -> GameId:
    """A multiple of the undetermined game ``g`` that is certified absorbing."""
    _need_many(n)
    depth = undetermined_depth(store, g, n)
    if depth < 1:
        raise ValueError("the game is not undetermined")
    mult = n // 2 + 2
    if depth < n - 2:
        mult *= n - 2
    return store.copies(g, mult)


# -- revertibility and equality ----------------------------------------------------------

Eq = Callable[[GameId, GameId], bool]


def revertible(store: GameStore, h: GameId, g: GameId, n: int, eq: Eq | None = None) -> bool:
    """Whether ``h`` is revertible to ``g`` under the equality oracle ``eq``.

    ``eq`` must be sound; the default is structural identity.
    """
    eq = eq or (lambda a, b: a == b)
    g_opts = store.children(g)
    h_opts = store.children(h)
    if not all(any(eq(ho, go) for ho in h_opts) for go in g_opts):
        return False
    for ho in h_opts:
        if any(eq(ho, go) for go in g_opts):
            continue
        frontier = {ho}
        for _ in range(n - 1):
            frontier = {c for x in frontier for c in store.children(x)}
        if not any(eq(x, g) for x in frontier):
            return False
    return True


def equal_refute(store: GameStore, g: GameId, h: GameId, pool: Iterable[GameId], n: int
                 ) -> GameId | None:
    """First context ``x`` with ``o(g + x) != o(h + x)``; None means not refuted."""
    for x in pool:
        if outcome_mask(store, store.add(g, x), n) != outcome_mask(store, store.add(h, x), n):
            return x
    return None


# -- law checks ----------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    law: str
    games: tuple[GameId, ...]
    expected: str
    got: str

    def as_json(self) -> dict:
        return {"law": self.law, "tuple": list(self.games),
                "expected": self.expected, "got": self.got}


def check_law(store: GameStore, law: str, pool: Iterable[GameId], n: int,
              k: int = 2, m: int = 1, pairs: Iterable[tuple[GameId, GameId]] = ()
              ) -> list[Violation]:
    """Every counterexample to ``law`` over the pool (expected: none).

    ``other_procreation`` scans multisets of ``k`` pool games and needs
    ``n > k*m``.  ``revert_inclusion`` checks the given ``(h, g)`` pairs with
    ``h`` revertible to ``g`` against every pool context.
    """
    games = list(pool)
    out: list[Violation] = []
    o = lambda x: outcome(store, x, n)
    if law == "next_generation":
        for g in games:
            og = o(g)
            for h in games:
                if 0 in o(h):
                    continue
                s = o(store.add(g, h))
                if not s.issubset(og):
                    out.append(Violation(law, (g, h), f"subset of {og}", str(s)))
    elif law == "other_procreation":
        if n <= k * m:
            raise ValueError(f"needs more than {k * m} players")
        eligible = [g for g in games if m not in o(g)]
        for combo in itertools.combinations_with_replacement(eligible, k):
            s = o(store.sum(*combo))
            if k * m in s:
                out.append(Violation(law, combo, f"seat {k * m} absent", str(s)))
    elif law == "mirror":
        for g in games:
            s = o(store.copies(g, n))
            if 0 in s:
                out.append(Violation(law, (g,), "N absent", str(s)))
    elif law == "revert_inclusion":
        for h, g in pairs:
            if not revertible(store, h, g, n):
                out.append(Violation(law, (h, g), "revertible", "not revertible"))
                continue
            for x in games:
                a, b = o(store.add(h, x)), o(store.add(g, x))
                if not a.issubset(b):
                    out.append(Violation(law, (h, g, x), f"subset of {b}", str(a)))
    else:
        raise ValueError(f"unknown law {law!r}; choose from {', '.join(LAWS)}")
    return out


def check_depth_additivity(store: GameStore, pool: Iterable[GameId], n: int) -> list[Violation]:
    """``depth(g + h) >= depth(g) + depth(h)`` for undetermined pool games."""
    undet = [g for g in pool if undetermined_depth(store, g, n) >= 1]
    out = []
    for g, h in itertools.combinations_with_replacement(undet, 2):
        want = undetermined_depth(store, g, n) + undetermined_depth(store, h, n)
        got = undetermined_depth(store, store.add(g, h), n)
        if got < want:
            out.append(Violation("depth_additivity", (g, h), f">= {want}", str(got)))
    return out


def check_no_previous(store: GameStore, pool: Iterable[GameId], n: int) -> list[Violation]:
    """Deep enough undetermined ``g`` leaves Previous without a strategy in ``g + h``."""
    games = list(pool)
    need = 1 if n == 3 else n - 2
    deep = [g for g in games if undetermined_depth(store, g, n) >= need]
    out = []
    for g in deep:
        for h in games:
            s = outcome(store, store.add(g, h), n)
            if n - 1 in s:
                out.append(Violation("no_previous", (g, h), "P absent", str(s)))
    return out


# -- open question harness -------------------------------------------------------------

@dataclass
class SearchReport:
    question: str
    examined: int
    found: list[GameId]
    note: str = "no conclusion beyond the examined pool"

    def __bool__(self) -> bool:
        return bool(self.found)


def search_trebling(store: GameStore, pool: Iterable[GameId]) -> SearchReport:
    """Pool games with outcome exactly N whose triple gives Previous a strategy."""
    n = 3
    games = list(pool)
    only_next = Outcome.of([0], n)
    found = [g for g in games if outcome(store, g, n) == only_next
             and n - 1 in outcome(store, store.copies(g, 3), n)]
    return SearchReport("trebling", len(games), found)


# -- T2 consistency -----------------------------------------------------------------

def observed_sum_triples(store: GameStore, games: Sequence[GameId], n: int = 3
                         ) -> dict[tuple[int, int, int], tuple[GameId, GameId]]:
    """Map each observed ``(o(g), o(h), o(g+h))`` mask triple to a first witness pair."""
    seen: dict[tuple[int, int, int], tuple[GameId, GameId]] = {}
    masks = [outcome_mask(store, g, n) for g in games]
    for i, g in enumerate(games):
        for j in range(i, len(games)):
            h = games[j]
            key = (masks[i], masks[j], outcome_mask(store, store.add(g, h), n))
            seen.setdefault(key, (g, h))
            rev = (masks[j], masks[i], key[2])
            seen.setdefault(rev, (h, g))
    return seen
