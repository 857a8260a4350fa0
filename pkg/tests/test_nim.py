import itertools

import pytest

from ncgt import nim
from ncgt.laws import absorbing_certify
from ncgt.nim import A, ABSORBING, B, C, ELEMENTS, IDENTITY, QuotientElement, phi, pi
from ncgt.outcomes import Outcome, outcome

O3 = lambda s: Outcome.parse(s, 3)  # noqa: E731


def test_position_normalizes():
    assert nim.position([3, 0, 1, 2]) == (1, 2, 3)
    assert nim.profile([1, 1, 2, 7, 3]) == (2, 1, 2)
    with pytest.raises(ValueError):
        nim.position([-1])


def test_engine_examples(store):
    assert nim.engine(store, [], 3) == O3("OP")
    assert nim.engine(store, [1, 2, 3], 3) == O3("N")
    assert nim.engine(store, [2, 2, 2], 3) == Outcome.empty(3)


def test_closed_form_examples():
    assert nim.closed3([1, 1, 1, 1]) == O3("PN")
    assert nim.closed3([1, 1, 2]) == O3("PN")
    assert nim.closed3([2, 5]) == Outcome.empty(3)


def test_one_heap():
    assert nim.one_heap(1, 5) == Outcome.all_but([1], 5)
    assert nim.one_heap(3, 5) == Outcome.all_but([1, 2, 3], 5)
    assert nim.one_heap(9, 4) == Outcome.of([0], 4)
    assert nim.one_heap(0, 4) == Outcome.all_but([0], 4)


def test_two_heap():
    assert nim.two_heap(0, 0, 4) == Outcome.all_but([0], 4)
    assert nim.two_heap(2, 3, 4) == Outcome.all_but([2, 3], 4)
    assert nim.two_heap(3, 3, 4) == Outcome.of([1], 4)
    with pytest.raises(ValueError):
        nim.two_heap(1, 2, 2)
    with pytest.raises(ValueError):
        nim.two_heap(3, 2, 4)


def test_closed_form_matches_engine(store):
    for k in range(6):
        for heaps in itertools.combinations_with_replacement(range(1, 7), k):
            assert nim.closed3(heaps) == nim.engine(store, heaps, 3), heaps


@pytest.mark.parametrize("n", [3, 4, 5])
def test_two_heap_matches_engine(store, n):
    for i, j in itertools.combinations_with_replacement(range(n + 4), 2):
        assert nim.two_heap(i, j, n) == nim.engine(store, (i, j), n), (i, j)


def test_one_heap_matches_engine(store):
    for n in (3, 4, 5, 6):
        for i in range(2 * n):
            assert nim.one_heap(i, n) == nim.engine(store, [i], n)


def test_periodicity_of_zero(store):
    rep = nim.check_periodicity(store, store.zero, 3, 9)
    assert rep and rep.sequence == [O3("OP"), O3("PN"), O3("NO")]
    assert rep.summary().startswith("verified to horizon 9")


def test_periodicity_of_two(store):
    rep = nim.check_periodicity(store, store.nim_heap(2), 4, 12)
    assert rep
    assert rep.sequence == [Outcome.all_but(s, 4) for s in ([1, 2], [2, 3], [3], [1])]
    rep = nim.check_periodicity(store, store.nim_heap(2), 3, 9)
    assert rep.sequence == [O3("N"), O3("NO"), O3("PN")]


def test_periodicity_prefix_too_short(store):
    with pytest.raises(ValueError):
        nim.check_periodicity(store, store.zero, 3, 5)


def test_periodicity_detects_failure(store):
    # {{{*},0}} separates 3·* from 0, so it cannot be 3-periodic.
    g = store.wrap(store.intern([store.wrap(store.star), store.zero]))
    rep = nim.check_periodicity(store, g, 3, 6)
    assert not rep and rep.offending is not None
    assert rep.summary().startswith("failed")


def test_stability(store):
    rep = nim.check_stability(store, store.zero, 3, 8)
    assert rep and rep.sequence == [O3("N")]
    assert nim.check_stability(store, store.nim_heap(2), 3, 8)
    rep = nim.check_stability(store, store.nim_heap(3), 4, 8)
    assert rep and rep.sequence == [Outcome.empty(4)]


def test_search_reports(store):
    assert nim.search_periodicity(store, 3, 3, 4) == []
    rep = nim.search_quotient_absorbing(store, 4, 2, 4)
    assert set(rep) == {"4*2", "2*4"}
    assert all(v == [] for v in rep.values())


# -- quotient -------------------------------------------------------------------------

def test_sixteen_elements():
    assert len(ELEMENTS) == len(set(ELEMENTS)) == 16
    names = ["1", "a", "a2", "b", "ab", "a2b", "c", "ac", "a2c", "b2", "ab2", "a2b2",
             "bc", "abc", "a2bc", "c2"]
    assert [e.name for e in ELEMENTS] == names


def test_relations():
    assert A ** 3 == IDENTITY
    block = [B ** 4, B ** 3, B ** 2 * C, B * C ** 2, C ** 2, C ** 3, A * C ** 2, A ** 2 * C ** 2]
    assert all(x == ABSORBING for x in block)
    assert B * B * B == ABSORBING


def test_pi_examples():
    assert pi(IDENTITY) == O3("OP")
    assert pi(B * B * B) == Outcome.empty(3)
    assert pi(A ** 2 * B) == O3("PN")
    assert pi(B ** 2) == O3("O")
    assert pi(B * C) == Outcome.empty(3)
    assert pi(A) == O3("PN")


def test_phi_examples():
    assert phi([1, 2]) == A * B and pi(phi([1, 2])) == O3("NO")
    assert phi([3, 4]) == ABSORBING and pi(phi([3, 4])) == Outcome.empty(3)
    assert phi([]) == IDENTITY
    assert phi([1, 1, 1, 2, 9]) == B * C


def test_quotient_build():
    q = nim.quotient_build()
    assert q.classes == 16
    assert q.elements == list(ELEMENTS)
    for e, row in zip(q.elements, q.table):
        assert row == [e * f for f in q.elements]
    rows = q.csv_rows()
    assert len(rows) == 18 and rows[-1][0] == "Pi"


def test_quotient_caps_too_small_fail():
    with pytest.raises(nim.QuotientError):
        nim.quotient_build((2, 1, 1))


def test_homomorphism_and_factorization():
    positions = [p for k in range(5) for p in itertools.combinations_with_replacement(range(1, 5), k)]
    for p in positions:
        assert pi(phi(p)) == nim.closed3(p)
        for q in positions[:40]:
            assert phi(p + q) == phi(p) * phi(q)


def test_elements_are_distinct():
    for e, f in itertools.combinations(ELEMENTS, 2):
        assert nim.separating_context(e, f) is not None, (e, f)
    assert nim.separating_context(A, A) is None


def test_identity_class_acts_trivially(store):
    caps = [p for k in range(4) for p in itertools.combinations_with_replacement(range(1, 5), k)]
    ids = [p for p in caps if nim.engine(store, p, 3) == O3("OP")]
    assert (1, 1, 1) in ids
    for g in ids:
        for h in caps:
            assert nim.engine(store, g + h, 3) == nim.engine(store, h, 3)


def test_large_heaps_certified(store):
    for heaps in [(3, 3, 3), (3, 4, 5), (1, 3, 3, 3), (2, 2, 2, 2), (2, 2, 3, 4), (1, 2, 2, 2, 2)]:
        assert absorbing_certify(store, store.nim(heaps), 3), heaps


def test_quotient_element_normal_form():
    assert QuotientElement.normal(4, 1, 0) == A * B
    assert QuotientElement.normal(0, 2, 1) == ABSORBING
    assert str(A * A * C) == "a2c"
