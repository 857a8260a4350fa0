import itertools

import pytest

from ncgt import laws
from ncgt.games import GameStore
from ncgt.notation import parse_compact
from ncgt.outcomes import Outcome, outcome

O3 = lambda s: Outcome.parse(s, 3)  # noqa: E731


def test_enumeration_by_birthday(store):
    assert set(laws.enumerate_games(store, 1, closure=False)) == {store.zero, store.star}
    assert len(laws.games_by_birthday(store, 3)) == 16
    assert len(laws.enumerate_games(store, 3, closure=False)) == 16


def test_enumeration_with_seeds_and_closure(store):
    seeds = laws.appendix_games(store)
    pool = laws.enumerate_games(store, 2, seeds, closure=False)
    assert parse_compact(store, "*2_#2") in pool
    closed = laws.enumerate_games(store, 2)
    b2 = laws.games_by_birthday(store, 2)
    for g in b2:
        assert store.wrap(g) in closed
        for h in b2:
            assert store.add(g, h) in closed
    assert not closed.truncated


def test_enumeration_truncates_at_cap(store):
    pool = laws.enumerate_games(store, 3, laws.nim_positions(store), node_cap=len(store) + 50)
    assert pool.truncated
    assert len(set(pool.games)) == len(pool.games)


def test_pool_dedup_keeps_order(store):
    pool = laws.GamePool([3, 1, 3, 2, 1])
    assert pool.games == [3, 1, 2]
    assert 2 in pool and 5 not in pool


def test_undetermined_depth_examples(store):
    assert laws.undetermined_depth(store, store.nim([2, 3]), 3) == 1
    assert laws.undetermined_depth(store, parse_compact(store, "*2_#2"), 3) == 1
    assert laws.undetermined_depth(store, store.star, 3) == 0
    for n in range(3, 7):
        g = store.nim([n - 1, 2 * n - 3])
        assert laws.undetermined_depth(store, g, n) == n - 2


def test_strongly_undetermined(store):
    g = store.wrap(parse_compact(store, "*2_#2"))
    assert laws.is_strongly_undetermined(store, g, 2, 3)
    assert laws.is_strongly_undetermined(store, store.nim([3, 3, 3]), 2, 3)
    for n in (3, 4, 5):
        assert not laws.is_strongly_undetermined(store, store.zero, 2, n)
    with pytest.raises(ValueError):
        laws.is_strongly_undetermined(store, g, 1, 3)


def test_certify_examples(store):
    assert laws.absorbing_certify(store, store.wrap(parse_compact(store, "*2_#2")), 3)
    assert not laws.absorbing_certify(store, store.nim([2, 2]), 3)
    for a, b in itertools.combinations_with_replacement(range(2, 6), 2):
        assert laws.absorbing_certify(store, store.nim([2, 2, a, b]), 3)
    with pytest.raises(ValueError):
        laws.absorbing_certify(store, store.zero, 2)


def test_refute_examples(store):
    h2 = store.nim_heap(2)
    assert laws.absorbing_refute(store, h2, [store.zero], 3) == store.zero
    assert outcome(store, h2, 3) == O3("N")
    three = store.copies(store.star, 3)
    assert laws.absorbing_refute(store, three, [store.zero], 3) == store.zero
    assert outcome(store, three, 3) == O3("OP")
    g = store.wrap(parse_compact(store, "*2_#2"))
    assert laws.absorbing_refute(store, g, laws.enumerate_games(store, 3), 3) is None


def test_verdicts(store):
    pool = laws.base_pool(store, 3)
    assert laws.absorbing_verdict(store, store.nim([3, 3, 3]), pool, 3).kind == "CERTIFIED"
    v = laws.absorbing_verdict(store, store.nim([2, 2]), pool, 3)
    assert v.kind == "REFUTED" and v.witness == store.zero
    # {*2,{*2}} is undetermined yet not absorbing: * already separates it.
    v = laws.absorbing_verdict(store, parse_compact(store, "*2_#2"), [], 3)
    assert v.kind == "UNKNOWN"


def test_absorbing_multiples(store):
    g = store.nim([2, 3])
    assert laws.absorbing_from_undetermined(store, g, 3) == store.copies(g, 3)
    assert laws.absorbing_certify(store, store.copies(g, 3), 3)
    g = parse_compact(store, "*2_#2")
    assert laws.absorbing_certify(store, laws.absorbing_from_undetermined(store, g, 3), 3)
    with pytest.raises(ValueError):
        laws.absorbing_from_undetermined(store, store.star, 3)


@pytest.mark.parametrize("n", [4, 5])
def test_absorbing_multiplier_by_depth(n):
    """The cheaper multiple is used exactly when the depth reaches n-2."""
    seen = []

    class Recording(GameStore):
        def copies(self, g, k):
            seen.append(k)
            return g

    store = Recording()
    deep = store.nim([n - 1, 2 * n - 3])
    laws.absorbing_from_undetermined(store, deep, n)
    shallow = store.nim([n - 1, n])
    assert laws.undetermined_depth(store, shallow, n) < n - 2
    laws.absorbing_from_undetermined(store, shallow, n)
    assert seen == [n // 2 + 2, (n // 2 + 2) * (n - 2)]


def test_absorbing_multiple_certified_four_players(store):
    g = store.nim([3, 5])
    big = laws.absorbing_from_undetermined(store, g, 4)
    assert big == store.copies(g, 4)
    assert laws.absorbing_certify(store, big, 4)


def test_revertible(store):
    s = store.star
    for g in (store.zero, s, store.nim([2, 3])):
        assert laws.revertible(store, g, g, 3)
    assert laws.revertible(store, store.copies(s, 3), store.zero, 3)
    assert not laws.revertible(store, s, store.zero, 3)


def test_law_examples(store):
    b3 = laws.games_by_birthday(store, 3)
    assert laws.check_law(store, "next_generation", b3, 3) == []
    assert laws.check_law(store, "mirror", [store.zero, store.star, store.nim_heap(2)], 4) == []
    s = store.star
    x = store.wrap(store.intern([store.zero, store.add(s, s)]))
    three = store.copies(s, 3)
    assert laws.check_law(store, "revert_inclusion", [store.zero, x], 3,
                          pairs=[(three, store.zero)]) == []
    assert outcome(store, store.add(three, x), 3) != outcome(store, x, 3)


def test_law_errors(store):
    with pytest.raises(ValueError):
        laws.check_law(store, "no_such_law", [], 3)
    with pytest.raises(ValueError):
        laws.check_law(store, "other_procreation", [], 3, k=3, m=1)


def test_violation_json():
    v = laws.Violation("mirror", (4,), "N absent", "N")
    assert v.as_json() == {"law": "mirror", "tuple": [4], "expected": "N absent", "got": "N"}


def test_equal_refute_three_players(shared_store, default_pool3):
    st = shared_store
    s = st.star
    three = st.copies(s, 3)
    x = laws.equal_refute(st, three, st.zero, default_pool3, 3)
    assert x == st.wrap(st.intern([st.zero, st.add(s, s)]))
    assert outcome(st, x, 3) == O3("NO")
    assert outcome(st, st.add(three, x), 3) == O3("N")
    assert laws.equal_refute(st, three, three, default_pool3, 3) is None


def test_equal_refute_four_players():
    st = GameStore()
    pool = laws.default_pool(st, 4)
    s = st.star
    x = laws.equal_refute(st, st.copies(s, 4), st.zero, pool, 4)
    assert x == st.wrap(st.intern([st.copies(s, 3), st.zero]))


def test_trebling_search(store):
    b3 = laws.games_by_birthday(store, 3)
    assert not laws.search_trebling(store, b3)
    rep = laws.search_trebling(store, [store.star, store.nim_heap(2)])
    assert rep.found == [] and rep.examined == 2
    # *2 has outcome N but its triple leaves P without a strategy
    h2 = store.nim_heap(2)
    assert outcome(store, h2, 3) == O3("N")
    assert 2 not in outcome(store, store.copies(h2, 3), 3)


# -- pool properties --------------------------------------------------------------

def test_undetermined_sums(base_pool3, shared_store):
    st = shared_store
    undet = [g for g in base_pool3 if laws.undetermined_depth(st, g, 3) >= 1]
    assert undet
    for g, h in itertools.combinations_with_replacement(undet[:60], 2):
        assert outcome(st, st.add(g, h), 3).undetermined


def test_depth_additivity(base_pool3, shared_store):
    assert laws.check_depth_additivity(shared_store, base_pool3, 3) == []


@pytest.mark.parametrize("n", [3, 4])
def test_no_previous(small_pool3, shared_store, n):
    assert laws.check_no_previous(shared_store, small_pool3, n) == []


def test_previous_summands_collapse(base_pool3, shared_store):
    st = shared_store
    ps = [g for g in base_pool3 if outcome(st, g, 3).issubset(O3("P"))]
    for g, h in itertools.combinations_with_replacement(ps, 2):
        assert outcome(st, st.add(g, h), 3).undetermined


def test_certified_never_refuted(base_pool3, shared_store):
    st = shared_store
    certified = [g for g in base_pool3 if laws.absorbing_certify(st, g, 3)]
    assert certified
    for g in certified:
        assert laws.absorbing_refute(st, g, base_pool3, 3) is None
