"""Algebraic laws checked on random small games."""

from hypothesis import assume, given, settings, strategies as st

from ncgt import laws
from ncgt.games import GameStore
from ncgt.outcomes import outcome
from ncgt.partizan import PartizanStore, integer_sum_outcome

trees = st.recursive(st.just(()), lambda kids: st.lists(kids, max_size=3).map(tuple),
                     max_leaves=6)
players = st.integers(3, 5)


def build(store, tree):
    return store.intern(build(store, t) for t in tree)


def pbuild(ps, tree):
    return ps.intern([[pbuild(ps, t) for t in slot] for slot in tree])


def ptrees(n):
    return st.recursive(
        st.just(((),) * n),
        lambda kids: st.tuples(*[st.lists(kids, max_size=2).map(tuple)] * n),
        max_leaves=5)


@settings(max_examples=80, deadline=None)
@given(trees, players)
def test_outcome_is_proper_subset(t, n):
    store = GameStore()
    o = outcome(store, build(store, t), n)
    assert o.proper and len(o) < n


@settings(max_examples=80, deadline=None)
@given(trees, players)
def test_wrap_rotates_outcome(t, n):
    store = GameStore()
    g = build(store, t)
    x, o = g, outcome(store, g, n)
    for _ in range(n):
        x = store.wrap(x)
        o = o.rotate()
        assert outcome(store, x, n) == o
    assert o == outcome(store, g, n)


@settings(max_examples=80, deadline=None)
@given(trees, trees, players)
def test_next_generation(a, b, n):
    store = GameStore()
    g, h = build(store, a), build(store, b)
    assume(0 not in outcome(store, h, n))
    assert outcome(store, store.add(g, h), n).issubset(outcome(store, g, n))


@settings(max_examples=40, deadline=None)
@given(trees)
def test_mirror_copies_never_next(t):
    store = GameStore()
    g = build(store, t)
    assert laws.check_law(store, "mirror", [g], 3) == []


@settings(max_examples=60, deadline=None)
@given(trees, trees, players)
def test_depth_additivity(a, b, n):
    store = GameStore()
    assert laws.check_depth_additivity(store, [build(store, a), build(store, b)], n) == []


@settings(max_examples=60, deadline=None)
@given(st.data(), st.integers(3, 4))
def test_conjugate_rotates_partizan_outcome(data, n):
    ps = PartizanStore(n)
    g = pbuild(ps, data.draw(ptrees(n)))
    o, oc = ps.outcome(g), ps.outcome(ps.conjugate(g))
    assert all(oc[i] == o[i - 1] for i in range(n))
    assert ps.conjugate(g, n) == g


@settings(max_examples=60, deadline=None)
@given(st.data(), st.integers(3, 5))
def test_integer_sum_outcome_matches_play(data, n):
    coeffs = data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    ps = PartizanStore(n)
    g = ps.sum(*(ps.ones(k, p) for p, k in enumerate(coeffs)))
    assert ps.outcome(g) == tuple(integer_sum_outcome(coeffs, f) for f in range(n))
