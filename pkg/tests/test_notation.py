import random

import pytest

from ncgt.laws import base_pool
from ncgt.notation import (NotationError, looks_compact, parse_compact, parse_expr,
                           print_game, print_partizan)
from ncgt.partizan import PartizanStore


def test_compact_examples(store):
    h2 = store.nim_heap(2)
    assert parse_compact(store, "*2_#2") == store.intern([store.wrap(h2), h2])
    assert parse_compact(store, "*2_{##2}") == store.add(store.wrap(store.wrap(h2)), h2)
    assert parse_compact(store, "*2_{2##}") == store.wrap(store.wrap(store.add(h2, h2)))


def test_compact_digits_are_separate(store):
    assert parse_compact(store, "*21") == store.intern([store.nim_heap(2), store.star])
    assert parse_compact(store, "*2_1") == store.add(store.nim_heap(2), store.star)
    assert parse_compact(store, "*21") != store.nim_heap(21)


def test_compact_basics(store):
    assert parse_compact(store, "0") == store.zero
    assert parse_compact(store, "*") == store.star
    assert parse_compact(store, "*0") == store.zero
    assert parse_compact(store, "*3") == store.nim_heap(3)
    # grouping with one element, option set with several
    assert parse_compact(store, "*(2)") == store.nim_heap(2)
    assert parse_compact(store, "*(21)") == parse_compact(store, "*21")
    assert parse_compact(store, "*(21)0") == store.intern([parse_compact(store, "*21"), store.zero])


@pytest.mark.parametrize("text", ["", "2", "*(", "*2)", "*_", "*2_x", "*2_{}", "*2_{#", "**"])
def test_compact_errors(store, text):
    with pytest.raises(NotationError):
        parse_compact(store, text)


def test_compact_error_position(store):
    with pytest.raises(NotationError) as err:
        parse_compact(store, "*2_x")
    assert err.value.pos == 3


def test_verbose_examples(store):
    assert parse_expr("{0}", store).id == store.star
    assert parse_expr("sum(*2,*3)", store).id == store.nim([2, 3])
    assert parse_expr("*2 + *3", store).id == store.nim([2, 3])
    assert parse_expr("*12", store).id == store.nim_heap(12)
    assert parse_expr("copies(3, *)", store).id == store.copies(store.star, 3)
    assert parse_expr("wrap(wrap(*2))", store).id == store.wrap(store.wrap(store.nim_heap(2)))
    assert parse_expr("sum()", store).id == store.zero


def test_partizan_literal(store):
    ps = PartizanStore(3, store)
    v = parse_expr("{0,*| |0}", store, ps)
    assert v.partizan
    star = ps.embed(store.star)
    assert ps.slots(v.id) == (tuple(sorted([ps.zero, star])), (), (ps.zero,))


def test_partizan_builders(store):
    ps = PartizanStore(4, store)
    assert parse_expr("one(C2)", store, ps).id == ps.one(2)
    assert parse_expr("int(2,L)", store, ps).id == ps.integer(2, 0)
    assert parse_expr("conj(one(L))", store, ps).id == ps.one(1)
    assert parse_expr("negsum(one(C2))", store, ps).id == ps.conj_sum(ps.one(2))
    assert parse_expr("embed(*)", store, ps).id == ps.embed(store.star)
    assert parse_expr("one(L) + *", store, ps).id == ps.add(ps.one(0), ps.embed(store.star))
    assert parse_expr("copies(2, one(R))", store, ps).id == ps.ones(2, 3)


@pytest.mark.parametrize("text", ["{0|0}", "one(C5)", "one(X)", "int(x,L)", "wrap(one(L))",
                                  "sum(*,", "{0,,}", "1", "foo(0)", "*2 *3"])
def test_expr_errors(store, text):
    ps = PartizanStore(3, store)
    with pytest.raises(NotationError):
        parse_expr(text, store, ps)


def test_partizan_needs_store(store):
    with pytest.raises(NotationError):
        parse_expr("one(L)", store)
    with pytest.raises(ValueError):
        parse_expr("0", store, PartizanStore(3))


def test_printing(store):
    assert print_game(store, store.zero) == "0"
    assert print_game(store, store.nim_heap(3)) == "*3"
    g = parse_compact(store, "*2_#2")
    assert print_game(store, g) == "{{*2},*2}"


def _tree_sizes(store, games):
    size = {}
    for g in games:
        for x in store.postorder(g):
            if x not in size:
                size[x] = 1 + sum(size[c] for c in store.children(x))
    return size


def test_round_trip(store):
    # printing expands the DAG into a tree, so keep the trees printable
    pool = list(base_pool(store, 3))
    size = _tree_sizes(store, pool)
    small = [g for g in pool if size[g] <= 300]
    rng = random.Random(0)
    games = rng.sample(small, 120)
    while len(games) < 500:
        g = store.add(rng.choice(small), rng.choice(small))
        if _tree_sizes(store, [g])[g] <= 3000:
            games.append(g)
    for g in games:
        assert parse_expr(print_game(store, g), store).id == g


def test_partizan_round_trip(store):
    ps = PartizanStore(3, store)
    from ncgt.partizan import small_pool
    for g in small_pool(ps)[::7]:
        assert parse_expr(print_partizan(ps, g), store, ps).id == g


def test_compact_detection():
    assert looks_compact("*2_#2") and looks_compact("*(21)0")
    assert not looks_compact("*12") and not looks_compact("*")
    assert not looks_compact("{0,*}") and not looks_compact("*2+*3")
    assert not looks_compact("sum(*2,*3)")
