"""Partizan N-player games under normal play.

A partizan game is an interned N-tuple of option sets; slot ``i`` holds the
options of player ``C_i`` (slot 0 is Left, slot ``n-1`` is Right).  Moves
rotate cyclically: Left, Center_1, ..., Right, Left, ...

The per-player preorders quantify over every context and play order, so they
are only semidecided here.  :func:`leq_sufficient` is a sound proof search,
:func:`leq_refute` is a bounded witness search and :func:`compare` combines
them into a :class:`Verdict`.  The zero comparisons are exact.  Neither
simplification theorem preserves outcomes; they preserve ``=_p`` only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .games import GameId, GameStore, InvalidHandle, ResourceError
from .outcomes import Outcome, outcome, outcome_witness

PGameId = int


def player_name(p: int, n: int) -> str:
    if p == 0:
        return "L"
    if p == n - 1:
        return "R"
    return f"C{p}"


def parse_player(token: str, n: int) -> int:
    t = token.strip()
    if t == "L":
        return 0
    if t == "R":
        return n - 1
    if t.startswith("C") and t[1:].isdigit():
        p = int(t[1:])
        if 0 <= p < n:
            return p
    raise ValueError(f"unknown player token {token!r} for {n} players")


class PartizanStore:
    """Interning table for partizan games sharing an impartial store."""

    def __init__(self, n: int, games: GameStore | None = None):
        if n < 2:
            raise ValueError("player count must be at least 2")
        self.n = n
        self.games = games if games is not None else GameStore()
        self._index: dict[tuple, int] = {}
        self._slots: list[tuple[tuple[int, ...], ...]] = []
        self._sum_memo: dict[tuple[int, int], int] = {}
        self._conj_memo: dict[int, int] = {}
        self._rest_memo: dict[tuple[int, int], GameId] = {}
        self._embed_memo: dict[GameId, int] = {}
        self._leq_memo: dict[tuple[int, int, int], bool] = {}
        self.zero = self.intern([()] * n)

    def __len__(self) -> int:
        return len(self._slots)

    def check(self, g: PGameId) -> PGameId:
        if not (isinstance(g, int) and 0 <= g < len(self._slots)):
            raise InvalidHandle(f"partizan id {g!r} does not belong to this store")
        return g

    def intern(self, slots: Sequence[Iterable[PGameId]]) -> PGameId:
        if len(slots) != self.n:
            raise ValueError(f"expected {self.n} option slots, got {len(slots)}")
        key = tuple(tuple(sorted(set(s))) for s in slots)
        found = self._index.get(key)
        if found is not None:
            return found
        for s in key:
            for c in s:
                self.check(c)
        if len(self._slots) >= self.games.node_cap:
            raise ResourceError(f"node cap of {self.games.node_cap} exceeded")
        gid = len(self._slots)
        self._slots.append(key)
        self._index[key] = gid
        return gid

    def slots(self, g: PGameId) -> tuple[tuple[int, ...], ...]:
        return self._slots[self.check(g)]

    def options(self, g: PGameId, p: int) -> tuple[int, ...]:
        return self.slots(g)[p]

    def single(self, p: int, opts: Iterable[PGameId]) -> PGameId:
        """Game whose only options are ``opts`` for player ``p``."""
        slots: list[Iterable[int]] = [()] * self.n
        slots[p] = tuple(opts)
        return self.intern(slots)

    def subpositions(self, g: PGameId) -> set[PGameId]:
        seen = {self.check(g)}
        todo = [g]
        while todo:
            for s in self._slots[todo.pop()]:
                for c in s:
                    if c not in seen:
                        seen.add(c)
                        todo.append(c)
        return seen

    def depth(self, g: PGameId) -> int:
        """Height of the game tree (longest run, ignoring turn order)."""
        memo: dict[int, int] = {}
        for x in sorted(self.subpositions(g)):
            memo[x] = 1 + max((memo[c] for s in self._slots[x] for c in s), default=-1)
        return memo[g]

    # -- builders -----------------------------------------------------------

    def one(self, p: int) -> PGameId:
        return self.single(p, [self.zero])

    def integer(self, k: int, p: int) -> PGameId:
        """``k_p``: player ``p`` may move to any smaller integer of theirs."""
        if k < 0:
            raise ValueError("integers here are nonnegative")
        ints = [self.zero]
        for _ in range(k):
            ints.append(self.single(p, ints))
        return ints[k]

    def ones(self, k: int, p: int) -> PGameId:
        return self.copies(self.one(p), k)

    def embed(self, g: GameId) -> PGameId:
        """Impartial game as a partizan one: every player has the same options."""
        memo = self._embed_memo
        for x in self.games.postorder(g):
            if x not in memo:
                opts = [memo[c] for c in self.games.children(x)]
                memo[x] = self.intern([opts] * self.n)
        return memo[g]

    def add(self, g: PGameId, h: PGameId) -> PGameId:
        self.check(g)
        self.check(h)
        if g > h:
            g, h = h, g
        memo = self._sum_memo
        if (g, h) in memo:
            return memo[(g, h)]
        stack = [(g, h)]
        while stack:
            a, b = stack[-1]
            if (a, b) in memo:
                stack.pop()
                continue
            if a == self.zero:
                memo[(a, b)] = b
                stack.pop()
                continue
            pending = []
            new_slots = []
            for sa, sb in zip(self._slots[a], self._slots[b]):
                opts = []
                for x, y in [(a2, b) for a2 in sa] + [(a, b2) for b2 in sb]:
                    k = (x, y) if x <= y else (y, x)
                    r = memo.get(k)
                    if r is None:
                        pending.append(k)
                    else:
                        opts.append(r)
                new_slots.append(opts)
            if pending:
                stack.extend(pending)
                continue
            memo[(a, b)] = self.intern(new_slots)
            stack.pop()
        return memo[(g, h)]

    def sum(self, *games: PGameId) -> PGameId:
        total = self.zero
        for g in games:
            total = self.add(total, g)
        return total

    def copies(self, g: PGameId, k: int) -> PGameId:
        if k < 0:
            raise ValueError("copy count must be nonnegative")
        total = self.zero
        for _ in range(k):
            total = self.add(total, g)
        return total

    def conjugate(self, g: PGameId, times: int = 1) -> PGameId:
        """Rotate player roles: slot ``i`` of the result holds slot ``i-1``."""
        for _ in range(times % self.n):
            g = self._conj1(g)
        return g

    def _conj1(self, g: PGameId) -> PGameId:
        memo = self._conj_memo
        for x in sorted(self.subpositions(g)):
            if x not in memo:
                s = self._slots[x]
                memo[x] = self.intern(
                    [[memo[c] for c in s[(i - 1) % self.n]] for i in range(self.n)])
        return memo[g]

    def conj_sum(self, g: PGameId) -> PGameId:
        """``G⁻``: the sum of the first ``n-1`` conjugates of ``g``."""
        return self.sum(*(self.conjugate(g, k) for k in range(1, self.n)))

    # -- outcomes -----------------------------------------------------------

    def restriction(self, g: PGameId, first: int) -> GameId:
        """Impartial game obtained by fixing ``first`` as the first mover."""
        memo = self._rest_memo
        if (g, first) in memo:
            return memo[(g, first)]
        n = self.n
        stack = [(g, first)]
        while stack:
            x, p = stack[-1]
            if (x, p) in memo:
                stack.pop()
                continue
            nxt = (p + 1) % n
            todo = [(c, nxt) for c in self._slots[x][p] if (c, nxt) not in memo]
            if todo:
                stack.extend(todo)
                continue
            memo[(x, p)] = self.games.intern(memo[(c, nxt)] for c in self._slots[x][p])
            stack.pop()
        return memo[(g, first)]

    def outcome(self, g: PGameId) -> tuple[Outcome, ...]:
        return tuple(outcome(self.games, self.restriction(g, i), self.n)
                     for i in range(self.n))

    def wins(self, g: PGameId, p: int, order: int) -> bool:
        """Whether player ``p`` moving ``order``-th (1-based) can force a win."""
        n = self.n
        if not 1 <= order <= n:
            raise ValueError(f"move order {order} out of range 1..{n}")
        first = (p - order + 1) % n
        return (order - 1) in outcome(self.games, self.restriction(g, first), n)


def outcome_str(po: Sequence[Outcome]) -> str:
    return "(" + ", ".join(str(o) for o in po) + ")"


def p_outcome_witness(ps: PartizanStore, target: Sequence[Outcome]) -> PGameId:
    """A game whose partizan outcome is ``target``.

    Slot ``i`` holds one option: an impartial witness for component ``i``,
    wrapped ``n-1`` times and embedded, so the ``C_i`` restriction is that
    witness wrapped ``n`` times, which has the same outcome.
    """
    n = ps.n
    if n < 3:
        raise ValueError("partizan outcome witnesses need more than two players")
    if len(target) != n:
        raise ValueError(f"expected {n} components")
    slots = []
    for o in target:
        if o.n != n or not o.proper:
            raise ValueError(f"component {o!r} is not a proper outcome for {n} players")
        g = outcome_witness(ps.games, o)
        for _ in range(n - 1):
            g = ps.games.wrap(g)
        slots.append([ps.embed(g)])
    return ps.intern(slots)


def integer_sum_outcome(coeffs: Sequence[int], first: int) -> Outcome:
    """Outcome of ``sum k_i·1_{C_i}`` with ``C_first`` moving first.

    There is a single line of play; the first player, counting from the first
    mover, whose coefficient is minimal runs out of moves.
    """
    n = len(coeffs)
    kmin = min(coeffs)
    j = next(j for j in range(n) if coeffs[(first + j) % n] == kmin)
    return Outcome.all_but([j], n)


# -- comparisons ---------------------------------------------------------------

def zero_leq(ps: PartizanStore, g: PGameId, p: int) -> bool:
    """Exact test of ``0 ≤_p g``: true iff only ``p`` has options in ``g``."""
    if ps.n == 2:
        raise ValueError("the nonnegativity rule needs more than two players")
    return all(not opts for q, opts in enumerate(ps.slots(g)) if q != p)


def leq_zero(ps: PartizanStore, g: PGameId, p: int) -> bool:
    """Exact test of ``g ≤_p 0``: true iff ``p`` cannot win ``g`` moving first."""
    return 0 not in outcome(ps.games, ps.restriction(g, p), ps.n)


def leq_sufficient(ps: PartizanStore, g: PGameId, h: PGameId, p: int) -> bool:
    """Sound but incomplete proof search for ``g ≤_p h``.

    Obligations are discharged by structural identity, then the exact zero
    rules, then a recursive application of the inequality test: every
    ``p``-option of ``g`` is matched by a ``p``-option of ``h`` above it, and
    every other option of ``h`` is matched by an option of ``g`` of the same
    slot below it.  ``False`` means no proof was found.
    """
    if g == h:
        return True
    if h == ps.zero:
        return leq_zero(ps, g, p)
    if g == ps.zero and ps.n > 2:
        return zero_leq(ps, h, p)
    key = (g, h, p)
    memo = ps._leq_memo
    if key in memo:
        return memo[key]
    memo[key] = False  # cycles cannot occur, but guard re-entry anyway
    gs, hs = ps.slots(g), ps.slots(h)
    ok = all(any(leq_sufficient(ps, gp, hp, p) for hp in hs[p]) for gp in gs[p])
    if ok:
        ok = all(
            all(any(leq_sufficient(ps, gq, hq, p) for gq in gs[q]) for hq in hs[q])
            for q in range(ps.n) if q != p)
    memo[key] = ok
    return ok


def nonnegativity_witness(ps: PartizanStore, g: PGameId, p: int):
    """Context ``(x, order)`` refuting ``0 ≤_p g`` when ``g`` has a non-``p`` option.

    Follows the constructions for a middle player's option and for an option
    of the player just before ``p``, transported to ``p`` by conjugation.
    Returns None when ``0 ≤_p g`` holds.
    """
    n = ps.n
    if n == 2:
        raise ValueError("the nonnegativity rule needs more than two players")
    if zero_leq(ps, g, p):
        return None
    # Work in Left's frame: conjugating by -p moves player p to slot 0.
    back = (-p) % n
    gl = ps.conjugate(g, back)
    m = ps.depth(gl) + 1
    y = ps.copies(ps.conj_sum(ps.one(0)), m)
    slots = ps.slots(gl)
    middle = [i for i in range(1, n - 1) if slots[i]]
    if middle:
        i = middle[0]
        xs: list[list[int]] = [[] for _ in range(n)]
        xs[i] = [ps.zero]
        xs[i + 1] = [y]
        x = ps.intern(xs)
        order = (0 - i) % n + 1  # Center_i moves first
    else:
        xs = [[] for _ in range(n)]
        xs[1] = [y]
        xs[n - 1] = [ps.one(0)]
        x = ps.intern(xs)
        order = 2  # Right moves first, Left second
    return ps.conjugate(x, p), order


@dataclass(frozen=True)
class Verdict:
    """Result of a preorder comparison: PROVEN, REFUTED or UNKNOWN."""
    kind: str
    rule: str = ""
    witness: PGameId | None = None
    order: int | None = None
    budget: int = 0

    def __str__(self) -> str:
        if self.kind == "REFUTED":
            return f"REFUTED({self.witness},{self.order})"
        if self.kind == "PROVEN":
            return f"PROVEN({self.rule})"
        return "UNKNOWN"


def leq_refute(ps: PartizanStore, g: PGameId, h: PGameId, p: int,
               pool: Iterable[PGameId]):
    """First ``(x, order)`` where ``p`` wins ``g+x`` but not ``h+x`` moving ``order``-th."""
    for x in pool:
        gx, hx = ps.add(g, x), ps.add(h, x)
        for order in range(1, ps.n + 1):
            if ps.wins(gx, p, order) and not ps.wins(hx, p, order):
                return x, order
    return None


def compare(ps: PartizanStore, g: PGameId, h: PGameId, p: int,
            pool: Iterable[PGameId] | None = None) -> Verdict:
    """Semidecide ``g ≤_p h``."""
    if g == h:
        return Verdict("PROVEN", "reflexive")
    if h == ps.zero:
        if leq_zero(ps, g, p):
            return Verdict("PROVEN", "nonpositivity")
        return Verdict("REFUTED", "nonpositivity", ps.zero, 1)
    if g == ps.zero and ps.n > 2:
        if zero_leq(ps, h, p):
            return Verdict("PROVEN", "nonnegativity")
        x, order = nonnegativity_witness(ps, h, p)
        return Verdict("REFUTED", "nonnegativity", x, order)
    if leq_sufficient(ps, g, h, p):
        return Verdict("PROVEN", "inequality-test")
    pool = list(refutation_pool(ps, g, h) if pool is None else pool)
    found = leq_refute(ps, g, h, p, pool)
    if found:
        return Verdict("REFUTED", "witness", found[0], found[1])
    return Verdict("UNKNOWN", budget=len(pool))


def equal_for(ps: PartizanStore, g: PGameId, h: PGameId, p: int,
              pool: Iterable[PGameId] | None = None) -> tuple[Verdict, Verdict]:
    pool = None if pool is None else list(pool)
    return compare(ps, g, h, p, pool), compare(ps, h, g, p, pool)


def p_equal_refute(ps: PartizanStore, g: PGameId, h: PGameId,
                   pool: Iterable[PGameId]) -> PGameId | None:
    """First context ``x`` with ``o(g+x) != o(h+x)``, else None."""
    for x in pool:
        if ps.outcome(ps.add(g, x)) != ps.outcome(ps.add(h, x)):
            return x
    return None


def zero_refute(ps: PartizanStore, g: PGameId) -> PGameId | None:
    """Context separating ``g`` from 0; exists for every ``g ≇ 0`` when n > 2."""
    if g == ps.zero:
        return None
    p = next(q for q in range(ps.n) if not zero_leq(ps, g, q))
    x, _ = nonnegativity_witness(ps, g, p)
    return x


# -- simplification ---------------------------------------------------------------

class NotProven(ValueError):
    """A simplification was requested without a proven hypothesis."""


def _proves(ps: PartizanStore, g: PGameId, h: PGameId, p: int) -> bool:
    return compare(ps, g, h, p, pool=()).kind == "PROVEN"


def delete_dominated(ps: PartizanStore, g: PGameId, p: int,
                     keep: PGameId, drop: PGameId) -> PGameId:
    """Remove the ``p``-option ``drop`` of ``g``, given ``drop ≤_p keep``.

    The result is only ``=_p`` to ``g``; its outcome may differ.
    """
    slots = [list(s) for s in ps.slots(g)]
    if keep not in slots[p] or drop not in slots[p] or keep == drop:
        raise ValueError("keep and drop must be distinct options of the player")
    if not _proves(ps, drop, keep, p):
        raise NotProven("dominance of the dropped option is not proven")
    slots[p].remove(drop)
    return ps.intern(slots)


def follow_chain(ps: PartizanStore, g: PGameId, p: int, chain: Sequence[PGameId]) -> PGameId:
    """Check that ``chain`` is a run of ``n`` moves from ``g`` starting with ``p``."""
    if len(chain) != ps.n:
        raise ValueError(f"a reversing chain has exactly {ps.n} moves")
    x = g
    for k, y in enumerate(chain):
        mover = (p + k) % ps.n
        if y not in ps.options(x, mover):
            raise ValueError(f"move {k + 1} of the chain is not an option of "
                             f"{player_name(mover, ps.n)}")
        x = y
    return x


def bypass_reversible(ps: PartizanStore, g: PGameId, p: int,
                      chain: Sequence[PGameId]) -> PGameId:
    """Replace the ``p``-option ``chain[0]`` by the ``p``-options of ``chain[-1]``.

    Requires ``chain[-1] ≤_p g`` to be proven.  The result is only ``=_p``.
    """
    follower = follow_chain(ps, g, p, chain)
    if not _proves(ps, follower, g, p):
        raise NotProven("the reversing follower is not proven to be at most g")
    slots = [list(s) for s in ps.slots(g)]
    slots[p] = [o for o in slots[p] if o != chain[0]] + list(ps.options(follower, p))
    return ps.intern(slots)


# -- pools -----------------------------------------------------------------------

def small_pool(ps: PartizanStore) -> list[PGameId]:
    """Every game whose slot ``p`` is a subset of ``{0, 1_p, *}``."""
    star = ps.embed(ps.games.star)
    choices = []
    for p in range(ps.n):
        atoms = [ps.zero, ps.one(p), star]
        choices.append([[a for k, a in enumerate(atoms) if mask >> k & 1]
                        for mask in range(8)])
    return sorted({ps.intern(slots) for slots in itertools.product(*choices)})


def context_pool(ps: PartizanStore) -> list[PGameId]:
    """Small contexts: each slot ``p`` is one of ``{}``, ``{0}``, ``{1_p}``, ``{0, 1_p}``."""
    choices = [([], [ps.zero], [ps.one(p)], [ps.zero, ps.one(p)]) for p in range(ps.n)]
    return sorted({ps.intern(slots) for slots in itertools.product(*choices)})


def witness_families(ps: PartizanStore, m_max: int) -> list[PGameId]:
    """Contexts built the way the comparison proofs build them, for every player."""
    n = ps.n
    fam: list[PGameId] = []
    ones = [ps.one(p) for p in range(n)]
    for m in range(1, m_max + 1):
        y = ps.copies(ps.conj_sum(ones[0]), m)
        for i in range(1, n - 1):
            xs: list[list[int]] = [[] for _ in range(n)]
            xs[i], xs[i + 1] = [ps.zero], [y]
            fam.append(ps.intern(xs))
        xs = [[] for _ in range(n)]
        xs[1], xs[n - 1] = [y], [ones[0]]
        fam.append(ps.intern(xs))
        fam.append(y)
    for p in range(n):
        fam.append(ps.conj_sum(ones[p]))
        for k in range(1, m_max + 1):
            fam.append(ps.ones(k, p))
            fam.append(ps.conj_sum(ps.ones(k, p)))
    # Claim-4 style contexts separating {k_{C_i}|...|} from {m_{C_i}|...|}.
    for i in range(1, n):
        for m in range(1, m_max + 1):
            fam.append(chain_separator(ps, i, m))
    out: list[PGameId] = []
    seen: set[int] = set()
    for base in list(fam):
        for k in range(n):
            x = ps.conjugate(base, k)
            if x not in seen:
                seen.add(x)
                out.append(x)
    return out


def chain_separator(ps: PartizanStore, i: int, m: int) -> PGameId:
    """Context showing ``{k_{C_i}|...|} ≰_L {m_{C_i}|...|}`` for ``k < m``.

    A single move for ``C_2`` (when ``i == 1``) or ``C_1`` (otherwise) to a sum
    of ones that lets ``C_i`` outlast Left only if ``C_i`` still holds ``m`` moves.
    """
    n = ps.n
    if n < 3:
        raise ValueError("needs more than two players")
    if not 1 <= i < n:
        raise ValueError(f"C{i} is not a non-Left player")
    mover = 2 if i == 1 else 1
    terms = [ps.ones(m - 1, 0), ps.ones(m - 1, mover)]
    terms += [ps.ones(m, j) for j in range(1, n) if j not in (i, mover)]
    return ps.single(mover, [ps.sum(*terms)])


def refutation_pool(ps: PartizanStore, g: PGameId, h: PGameId) -> list[PGameId]:
    m = max(ps.depth(g), ps.depth(h)) + 1
    out = [ps.zero] + context_pool(ps)
    if ps.n > 2:
        out += witness_families(ps, m)
    seen: set[int] = set()
    return [x for x in out if not (x in seen or seen.add(x))]
