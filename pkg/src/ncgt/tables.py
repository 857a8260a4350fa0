"""Golden outcome tables and their verifiers.

The fixtures live in ``data/tables.json`` and are pinned by a SHA-256 digest,
so an accidental edit fails loudly instead of silently weakening a check.
Table ids:

* ``T1`` outcomes of forty small Nim positions ``k·* + G``
* ``T2`` the pairwise addition table (allowed outcome subsets)
* ``T3`` Nim outcomes of ``k·* + G`` by ``k mod 3``
* ``T4`` the doubling and trebling constraint tables
* ``T5`` the outcome map on the Nim quotient
* ``T6``/``T7`` doubling and trebling examples in compact notation
* ``T8`` example pairs for every allowed sum outcome
* ``two-heap`` the general two-heap formula against brute force
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .games import GameId, GameStore
from .laws import games_by_birthday, observed_sum_triples, wrap_closure
from .nim import closed3, engine, quotient_build, two_heap
from .notation import parse_compact
from .outcomes import Outcome, outcome, outcome_mask

FIXTURE_SHA256 = "0bb05b773194b18c820f765fe6e136ba04fba1c758cb269277b1503bbefef693"
TABLE_IDS = ("T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "two-heap")


class FixtureError(RuntimeError):
    """The fixture file does not match its pinned digest."""


@lru_cache(maxsize=1)
def load_fixtures() -> dict:
    raw = resources.files("ncgt").joinpath("data/tables.json").read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    if digest != FIXTURE_SHA256:
        raise FixtureError(f"table fixtures changed: digest {digest}")
    return json.loads(raw)


def _o(text: str) -> Outcome:
    return Outcome.parse(text, 3)


@dataclass
class Cell:
    key: str
    expected: str
    got: str
    status: str  # ok, mismatch or skip


@dataclass
class TableReport:
    table: str
    cells: list[Cell] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "mismatch" for c in self.cells)

    @property
    def mismatches(self) -> list[Cell]:
        return [c for c in self.cells if c.status == "mismatch"]

    def count(self, status: str = "ok") -> int:
        return sum(1 for c in self.cells if c.status == status)

    def add(self, key: str, expected, got, skip: bool = False):
        if skip:
            status = "skip"
        else:
            status = "ok" if expected == got else "mismatch"
        self.cells.append(Cell(key, str(expected), str(got), status))


def appendix_games(store: GameStore) -> list[GameId]:
    """Every game written in the compact-notation tables."""
    fx = load_fixtures()
    texts = set()
    for tid in ("T6", "T7"):
        for row in fx[tid]["rows"].values():
            texts.update(t for t in row if t not in ("x", "?"))
    for row in fx["T8"]["rows"]:
        texts.update((row["g"], row["h"]))
    return sorted({parse_compact(store, t) for t in texts})


def verify_t1(store: GameStore) -> TableReport:
    fx = load_fixtures()["T1"]
    rep = TableReport("T1")
    for row in fx["rows"]:
        for k, want in zip(fx["columns_k"], row["outcomes"]):
            got = engine(store, [1] * k + row["heaps"], 3)
            rep.add(f"{k}*+{row['label']}", _o(want), got)
    return rep


def _subset_cells(fx2) -> dict[tuple[int, int], int]:
    cols = fx2["columns"]
    return {(_o(a).mask, _o(b).mask): _o(fx2["rows"][a][j]).mask
            for a in cols for j, b in enumerate(cols)}


def verify_t8(store: GameStore) -> TableReport:
    rep = TableReport("T8")
    for row in load_fixtures()["T8"]["rows"]:
        g, h = parse_compact(store, row["g"]), parse_compact(store, row["h"])
        key = f"{row['g']} + {row['h']}"
        got = (outcome(store, g, 3), outcome(store, h, 3), outcome(store, store.add(g, h), 3))
        want = (_o(row["og"]), _o(row["oh"]), _o(row["osum"]))
        rep.add(key, "/".join(map(str, want)), "/".join(map(str, got)))
    return rep


def t2_pool(store: GameStore) -> list[GameId]:
    return list(wrap_closure(store, games_by_birthday(store, 3) + appendix_games(store)))


def verify_t2(store: GameStore, games: list[GameId] | None = None) -> TableReport:
    """Soundness over a pool plus a witnessing pair for every allowed subset."""
    fx = load_fixtures()
    cells = _subset_cells(fx["T2"])
    rep = TableReport("T2")
    games = t2_pool(store) if games is None else games
    observed = observed_sum_triples(store, games)
    for (a, b, s), (g, h) in sorted(observed.items()):
        allowed = cells[(a, b)]
        if s & ~allowed:
            rep.add(f"pool {g}+{h}", f"within {Outcome(allowed, 3)}", Outcome(s, 3))
    witnessed = {}
    for row in fx["T8"]["rows"]:
        g, h = parse_compact(store, row["g"]), parse_compact(store, row["h"])
        key = (outcome_mask(store, g, 3), outcome_mask(store, h, 3),
               outcome_mask(store, store.add(g, h), 3))
        witnessed[key] = witnessed[(key[1], key[0], key[2])] = (row["g"], row["h"])
    for (a, b), allowed in sorted(cells.items()):
        for s in range(8):
            if s & ~allowed or s == 7:
                continue
            label = f"{Outcome(a, 3)}+{Outcome(b, 3)}={Outcome(s, 3)}"
            pair = witnessed.get((a, b, s))
            rep.add(label, "witnessed", "witnessed" if pair else "missing")
    return rep


_T3_ROWS = {"0": [], "*2": [2], "*m": [3], "*2+*2": [2, 2], "*2+*m": [2, 3]}


def verify_t3(store: GameStore, max_k: int = 8, sizes=(3, 4, 5)) -> TableReport:
    rep = TableReport("T3")
    for row in load_fixtures()["T3"]["rows"]:
        base = _T3_ROWS[row["label"]]
        variants = [base] if 3 not in base else [[s if h == 3 else h for h in base] for s in sizes]
        for heaps in variants:
            for k in range(max_k + 1):
                want = _o(row["outcomes"][k % 3])
                pos = [1] * k + heaps
                rep.add(f"{k}*+{heaps}", want, engine(store, pos, 3))
                rep.add(f"{k}*+{heaps} closed", want, closed3(pos))
    return rep


def _constraint_holds(text: str, o: Outcome) -> bool:
    if text.startswith("<="):
        return o.issubset(_o(text[2:]))
    return o == _o(text.lstrip("="))


def verify_t4(store: GameStore, games: list[GameId] | None = None) -> TableReport:
    """Doubling and trebling constraints hold for every pool game."""
    fx = load_fixtures()["T4"]
    games = t2_pool(store) if games is None else games
    rep = TableReport("T4")
    for name, k in (("doubling", 2), ("trebling", 3)):
        rules = {_o(a).mask: c for a, c in fx[name].items()}
        for g in games:
            og = outcome(store, g, 3)
            got = outcome(store, store.copies(g, k), 3)
            rule = rules[og.mask]
            if not _constraint_holds(rule, got):
                rep.add(f"{name} {g}", f"{og} -> {rule}", got)
        rep.add(f"{name} rules", 7, len(rules))
    return rep


def verify_t5(store: GameStore | None = None) -> TableReport:
    fx = load_fixtures()["T5"]
    q = quotient_build()
    rep = TableReport("T5")
    rep.add("elements", fx["elements"], [e.name for e in q.elements])
    for name, want, got in zip(fx["elements"], fx["pi"], q.pi):
        rep.add(f"Pi({name})", _o(want), got)
    return rep


def _verify_multiple(store: GameStore, tid: str, k: int) -> TableReport:
    fx = load_fixtures()[tid]
    rep = TableReport(tid)
    for row_label, row in fx["rows"].items():
        for col_label, text in zip(fx["columns"], row):
            if text == "x":
                continue
            key = f"{row_label}/{col_label} {text}"
            if text == "?":
                rep.add(key, "?", "?", skip=True)
                continue
            g = parse_compact(store, text)
            got = (outcome(store, g, 3), outcome(store, store.copies(g, k), 3))
            rep.add(key, f"{_o(row_label)}/{_o(col_label)}", "/".join(map(str, got)))
    return rep


def verify_t6(store: GameStore) -> TableReport:
    return _verify_multiple(store, "T6", 2)


def verify_t7(store: GameStore) -> TableReport:
    return _verify_multiple(store, "T7", 3)


def verify_two_heap(store: GameStore, players=(3, 4, 5), extra: int = 3) -> TableReport:
    rep = TableReport("two-heap")
    for n in players:
        for i, j in itertools.combinations_with_replacement(range(n + extra + 1), 2):
            rep.add(f"N={n} *{i}+*{j}", two_heap(i, j, n), engine(store, (i, j), n))
    return rep


def verify(table: str, store: GameStore | None = None) -> TableReport:
    store = store or GameStore()
    fns = {"T1": verify_t1, "T2": verify_t2, "T3": verify_t3, "T4": verify_t4,
           "T5": verify_t5, "T6": verify_t6, "T7": verify_t7, "T8": verify_t8,
           "two-heap": verify_two_heap}
    if table not in fns:
        raise ValueError(f"unknown table {table!r}; choose from {', '.join(TABLE_IDS)}")
    return fns[table](store)
