"""Nim outcomes for N players.

Three-player Nim is classified completely by the heap profile ``(n1, n2, n3)``
(heaps of size 1, size 2, size at least 3).  One- and two-heap positions have
closed forms for every ``N > 2``.  Periodicity and stability can only be
checked up to a finite horizon; reports say so.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .games import GameId, GameStore
from .outcomes import Outcome, outcome

NimPosition = tuple[int, ...]


def position(heaps: Iterable[int]) -> NimPosition:
    """Normalize to a sorted tuple without empty heaps."""
    hs = [int(h) for h in heaps]
    if any(h < 0 for h in hs):
        raise ValueError("heap sizes must be nonnegative")
    return tuple(sorted(h for h in hs if h))


def profile(heaps: Iterable[int]) -> tuple[int, int, int]:
    p = position(heaps)
    n1 = sum(1 for h in p if h == 1)
    n2 = sum(1 for h in p if h == 2)
    return n1, n2, len(p) - n1 - n2


def engine(store: GameStore, heaps: Iterable[int], n: int) -> Outcome:
    """Brute-force outcome of a Nim position."""
    return outcome(store, store.nim(position(heaps)), n)


# Rows keyed by (n2, n3); columns by number of ones mod 3.
_SMALL_NIM = {
    (0, 0): ("OP", "PN", "NO"),
    (1, 0): ("N", "NO", "PN"),
    (0, 1): ("N", "NO", "N"),
    (2, 0): ("O", "N", "NO"),
    (1, 1): ("-", "N", "NO"),
}


def closed3_profile(n1: int, n2: int, n3: int) -> Outcome:
    row = _SMALL_NIM.get((n2, n3))
    if row is None:
        return Outcome.empty(3)
    return Outcome.parse(row[n1 % 3], 3)


def closed3(heaps: Iterable[int]) -> Outcome:
    """Three-player outcome of a Nim position from its profile alone."""
    return closed3_profile(*profile(heaps))


def one_heap(i: int, n: int) -> Outcome:
    if i < 0:
        raise ValueError("heap size must be nonnegative")
    if i == 0:
        return Outcome.all_but([0], n)
    return Outcome.all_but(range(1, min(i, n - 1) + 1), n)


def two_heap(i: int, j: int, n: int) -> Outcome:
    """Closed form for ``*i + *j`` with ``i <= j`` and ``n > 2``."""
    if n <= 2:
        raise ValueError("the two-heap closed form needs more than two players")
    if not 0 <= i <= j:
        raise ValueError("need 0 <= i <= j")
    if i == 0:
        return one_heap(j, n)
    if i <= n - 2:
        return Outcome.all_but(range(2, min(i + j, n - 1) + 1), n)
    if i == j == n - 1:
        return Outcome.of([1], n)
    return Outcome.empty(n)


# -- periodicity and stability -------------------------------------------------------

@dataclass
class HorizonReport:
    """Finite evidence for a periodicity or stability property.

    Truthy exactly when nothing failed up to ``horizon``.  Evidence never
    establishes the property for all larger values.
    """
    ok: bool
    horizon: int
    sequence: list[Outcome] = field(default_factory=list)
    offending: GameId | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        seq = " ".join(str(o) for o in self.sequence)
        if self.ok:
            return f"verified to horizon {self.horizon}: {seq}"
        return f"failed before horizon {self.horizon}: {self.detail}"


def check_periodicity(store: GameStore, g: GameId, n: int, prefix: int) -> HorizonReport:
    """Check ``o(k·* + g)`` has period ``n`` for ``k <= prefix``.

    Also checks the inductive hypothesis ``o(h) = o(n·* + h)`` on every
    subposition ``h`` of ``g``, which is what makes the finite check meaningful.
    """
    if prefix < 2 * n:
        raise ValueError("prefix must be at least twice the player count")
    shift = store.copies(store.star, n)
    for h in store.postorder(g):
        if outcome(store, h, n) != outcome(store, store.add(h, shift), n):
            return HorizonReport(False, prefix, offending=h,
                                 detail=f"o(h) != o({n}·* + h) for subposition {h}")
    seq = []
    x = g
    for k in range(prefix + 1):
        seq.append(outcome(store, x, n))
        if k >= n and seq[k] != seq[k - n]:
            return HorizonReport(False, prefix, seq[:n], g,
                                 f"o({k}·* + g) differs from o({k - n}·* + g)")
        x = store.add(x, store.star)
    return HorizonReport(True, prefix, seq[:n])


def check_stability(store: GameStore, g: GameId, n: int, horizon: int) -> HorizonReport:
    """Check ``o(g + *m) = o(g + *n)`` for ``n <= m <= horizon``.

    The hypothesis ``o(h + *(n+1)) = o(h + *n)`` is checked on every
    subposition first; a failure names the offending subposition.
    """
    if horizon < n + 2:
        raise ValueError("horizon must be at least the player count plus two")
    hn, hn1 = store.nim_heap(n), store.nim_heap(n + 1)
    for h in store.postorder(g):
        if outcome(store, store.add(h, hn), n) != outcome(store, store.add(h, hn1), n):
            return HorizonReport(False, horizon, offending=h,
                                 detail=f"o(h + *{n + 1}) != o(h + *{n}) for subposition {h}")
    stable = outcome(store, store.add(g, hn), n)
    for m in range(n, horizon + 1):
        if outcome(store, store.add(g, store.nim_heap(m)), n) != stable:
            return HorizonReport(False, horizon, [stable], g, f"o(g + *{m}) differs")
    return HorizonReport(True, horizon, [stable])


def search_periodicity(store: GameStore, n: int, max_heaps: int, max_size: int,
                       prefix: int | None = None) -> list[tuple[NimPosition, HorizonReport]]:
    """Nim positions within the caps whose periodicity check fails (expected: none)."""
    prefix = 2 * n if prefix is None else prefix
    failures = []
    for heaps in positions_within(max_heaps, max_size):
        rep = check_periodicity(store, store.nim(heaps), n, prefix)
        if not rep:
            failures.append((heaps, rep))
    return failures


def positions_within(max_heaps: int, max_size: int) -> list[NimPosition]:
    out = []
    for k in range(max_heaps + 1):
        out.extend(itertools.combinations_with_replacement(range(1, max_size + 1), k))
    return out


def search_quotient_absorbing(store: GameStore, n: int, max_heaps: int, max_size: int
                              ) -> dict[str, list[NimPosition]]:
    """Nim contexts ``X`` making ``o(G + X)`` nonempty for ``G = n·*2`` and ``2·*n``.

    Empty lists are evidence within the caps, nothing more.
    """
    targets = {f"{n}*2": (2,) * n, f"2*{n}": (n, n)}
    report = {}
    for name, heaps in targets.items():
        g = store.nim(heaps)
        report[name] = [x for x in positions_within(max_heaps, max_size)
                        if not outcome(store, store.add(g, store.nim(x)), n).undetermined]
    return report


# -- the three-player quotient ------------------------------------------------------------

@dataclass(frozen=True, order=True)
class QuotientElement:
    """``a^x b^y c^z``, or the absorbing element when ``absorbing`` is set."""
    x: int = 0
    y: int = 0
    z: int = 0
    absorbing: bool = False

    @staticmethod
    def normal(x: int, y: int, z: int) -> "QuotientElement":
        if z >= 2 or y + z >= 3:
            return ABSORBING
        return QuotientElement(x % 3, y, z)

    def __mul__(self, other: "QuotientElement") -> "QuotientElement":
        if self.absorbing or other.absorbing:
            return ABSORBING
        return QuotientElement.normal(self.x + other.x, self.y + other.y, self.z + other.z)

    def __pow__(self, k: int) -> "QuotientElement":
        r = IDENTITY
        for _ in range(k):
            r = r * self
        return r

    @property
    def name(self) -> str:
        if self.absorbing:
            return "c2"
        parts = []
        for sym, e in (("a", self.x), ("b", self.y), ("c", self.z)):
            if e:
                parts.append(sym if e == 1 else f"{sym}{e}")
        return "".join(parts) or "1"

    def representative(self) -> NimPosition:
        if self.absorbing:
            return (3, 3)
        return (1,) * self.x + (2,) * self.y + (3,) * self.z

    def __str__(self) -> str:
        return self.name


ABSORBING = QuotientElement(0, 0, 2, absorbing=True)
IDENTITY = QuotientElement()
A, B, C = QuotientElement(1), QuotientElement(0, 1), QuotientElement(0, 0, 1)

# Ordered as a, b, c exponents with the absorbing element last.
ELEMENTS: tuple[QuotientElement, ...] = tuple(
    [QuotientElement(x, y, z) for y, z in ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1))
     for x in range(3)] + [ABSORBING])


def phi(heaps: Iterable[int]) -> QuotientElement:
    n1, n2, n3 = profile(heaps)
    return QuotientElement.normal(n1, n2, n3)


def pi(q: QuotientElement) -> Outcome:
    """Outcome of any Nim position in the class ``q``."""
    return closed3(q.representative())


class QuotientError(RuntimeError):
    """The rebuilt quotient disagrees with the presentation."""


@dataclass
class Quotient:
    elements: list[QuotientElement]
    table: list[list[QuotientElement]]
    pi: list[Outcome]
    classes: int

    def csv_rows(self) -> list[list[str]]:
        head = [""] + [e.name for e in self.elements]
        rows = [head]
        for e, row in zip(self.elements, self.table):
            rows.append([e.name] + [r.name for r in row])
        rows.append(["Pi"] + [str(o) for o in self.pi])
        return rows


def _signature(p: tuple[int, int, int], contexts: Sequence[tuple[int, int, int]]):
    return tuple(closed3_profile(p[0] + q[0], p[1] + q[1], p[2] + q[2]).mask
                 for q in contexts)


def quotient_build(caps: tuple[int, int, int] = (5, 4, 3)) -> Quotient:
    """Rebuild the quotient by grouping profiles with equal outcomes in every context.

    Profiles and contexts range over ``n1 <= caps[0]``, ``n2 <= caps[1]`` and
    ``n3 <= caps[2]``.  The classes must be exactly the fibers of :func:`phi`
    and the induced product must match the presentation, otherwise
    :class:`QuotientError` names the offending profile or pair.
    """
    profiles = list(itertools.product(*(range(c + 1) for c in caps)))
    classes: dict[tuple, list[tuple[int, int, int]]] = {}
    for p in profiles:
        classes.setdefault(_signature(p, profiles), []).append(p)
    sig_of = {}
    for sig, members in classes.items():
        elems = {QuotientElement.normal(*p) for p in members}
        if len(elems) != 1:
            raise QuotientError(f"profiles {members[:4]} merge distinct elements")
        (e,) = elems
        if e in sig_of.values():
            raise QuotientError(f"element {e} split across classes")
        sig_of[sig] = e
    if set(sig_of.values()) != set(ELEMENTS):
        raise QuotientError("classes do not match the 16 normal forms")
    reps = {e: profile(e.representative()) for e in ELEMENTS}
    table = []
    for e in ELEMENTS:
        row = []
        for f in ELEMENTS:
            p, q = reps[e], reps[f]
            s = (p[0] + q[0], p[1] + q[1], p[2] + q[2])
            got = sig_of.get(_signature(s, profiles))
            if got != e * f:
                raise QuotientError(f"product {e}·{f}: classes give {got}, "
                                    f"presentation gives {e * f}")
            row.append(got)
        table.append(row)
    return Quotient(list(ELEMENTS), table, [pi(e) for e in ELEMENTS], len(classes))


def separating_context(e: QuotientElement, f: QuotientElement,
                       caps: tuple[int, int, int] = (5, 4, 3)) -> tuple[int, int, int] | None:
    """A capped context profile giving different outcomes, else None."""
    p, q = profile(e.representative()), profile(f.representative())
    for x in itertools.product(*(range(c + 1) for c in caps)):
        if (closed3_profile(p[0] + x[0], p[1] + x[1], p[2] + x[2])
                != closed3_profile(q[0] + x[0], q[1] + x[1], q[2] + x[2])):
            return x
    return None
