import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bfmetric.errors import LimitExceeded, SpaceTooLarge
from bfmetric.partial_map import PartialMap
from bfmetric.refine import (
    Rank,
    TOP,
    equiv_at,
    rank_of_pair,
    rank_of_pair_naive,
    refine,
    scott_rank,
    scott_rank_literal,
)
from bfmetric.space import generate, validate_space


def pm(*pairs):
    return PartialMap.from_pairs(pairs)


def test_rank_ordering():
    assert Rank(0) < Rank(1) < TOP
    assert not TOP < TOP
    assert max([Rank(3), TOP, Rank(7)]) == TOP


class TestRefineP3:
    # Expected values confirmed against the independent game-tree solver in
    # test_acceptance: the four listed singletons fail at level 1, and so do
    # the four two-point maps that cannot place a point at distance 2.
    def test_alpha_star(self, p3):
        assert refine(p3).alpha_star == 1

    def test_rank_one_singletons(self, p3):
        t = refine(p3)
        for m in [pm((0, 1)), pm((2, 1)), pm((1, 0)), pm((1, 2))]:
            assert t.rank_of(m) == Rank(1)

    def test_all_rank_one_maps(self, p3):
        t = refine(p3)
        finite = {p for p, r in t.ranks.items() if not r.is_top}
        assert finite == {
            pm((0, 1)), pm((2, 1)), pm((1, 0)), pm((1, 2)),
            pm((0, 1), (1, 0)), pm((0, 1), (1, 2)),
            pm((1, 0), (2, 1)), pm((1, 2), (2, 1)),
        }
        assert all(t.rank_of(p) == Rank(1) for p in finite)

    def test_level_sizes(self, p3):
        assert refine(p3).level_sizes == (22, 14)


def test_refine_two(two):
    t = refine(two)
    assert t.alpha_star == 0
    assert all(r.is_top for r in t.ranks.values())


def test_refine_scalene(sca):
    t = refine(sca)
    assert t.alpha_star == 1
    for a in range(3):
        for b in range(3):
            if a != b:
                assert t.rank_of(pm((a, b))) == Rank(1)


def test_space_too_large():
    s = generate("path", {"n": 4})
    with pytest.raises(SpaceTooLarge):
        refine(s, limit=3)


class TestEquivAt:
    def test_singletons_level0(self, p3):
        assert equiv_at(p3, (0,), (1,), 0)

    def test_level1_fails(self, p3):
        assert not equiv_at(p3, (0,), (1,), 1)

    def test_symmetric_pair_deep(self, p3):
        assert equiv_at(p3, (0,), (2,), 7)


class TestRankOfPair:
    def test_end_to_middle(self, p3):
        assert rank_of_pair(p3, (0,), (1,)) == Rank(1)

    def test_end_to_end(self, p3):
        assert rank_of_pair(p3, (0,), (2,)) == TOP

    def test_distance_mismatch(self, p3):
        assert rank_of_pair(p3, (0, 2), (2, 1)) == Rank(0)

    def test_inconsistent(self, p3):
        assert rank_of_pair(p3, (0, 0), (1, 2)) == Rank(0)


class TestScottRank:
    def test_p3(self, p3):
        assert scott_rank(p3) == (2, pm((0, 1)))

    def test_two(self, two):
        assert scott_rank(two) == (0, None)

    def test_scalene(self, sca):
        value, witness = scott_rank(sca)
        assert value == 2
        assert witness == pm((0, 1))

    def test_literal_sup(self, p3, two):
        assert scott_rank_literal(p3) == 2
        assert scott_rank_literal(two) == 1  # inconsistent pairs exist
        assert scott_rank_literal(validate_space([[0]])) == 0


class TestNaive:
    def test_duplicate_tuples(self, p3):
        assert rank_of_pair_naive(p3, (0, 0), (1, 1), 1) is False
        assert not equiv_at(p3, (0, 0), (1, 1), 1)

    def test_empty_tuples(self, p3):
        assert rank_of_pair_naive(p3, (), (), 1) is True

    def test_two_swap(self, two):
        assert rank_of_pair_naive(two, (0,), (1,), 5) is True

    def test_limits(self, p3):
        with pytest.raises(LimitExceeded):
            rank_of_pair_naive(p3, (0,) * 9, (0,) * 9, 1)
        with pytest.raises(LimitExceeded):
            rank_of_pair_naive(p3, (0,), (0,), 99)


# --- invariants over random spaces ------------------------------------------

spaces = st.builds(
    lambda seed, n: generate("random_graph", {"n": n}, seed),
    seed=st.integers(min_value=0, max_value=10**6),
    n=st.integers(min_value=1, max_value=5),
)


@settings(max_examples=30, deadline=None)
@given(space=spaces)
def test_chain_invariants(space):
    t = refine(space)
    # strictly shrinking levels, stabilization within |E_0| steps
    assert all(a > b for a, b in zip(t.level_sizes, t.level_sizes[1:]))
    assert t.alpha_star <= t.level_sizes[0]
    sr, _ = scott_rank(space)
    assert sr <= t.alpha_star + 1


@settings(max_examples=30, deadline=None)
@given(space=spaces, data=st.data())
def test_rank_symmetries(space, data):
    t = refine(space)
    p = data.draw(st.sampled_from(sorted(t.ranks, key=lambda m: m.pairs)))
    assert t.rank_of(p) == t.rank_of(p.inverse())
    subset = data.draw(st.sets(st.sampled_from(p.pairs)) if p.size else st.just(set()))
    q = PartialMap.from_pairs(subset)
    assert t.rank_of(q) >= t.rank_of(p)


@settings(max_examples=30, deadline=None)
@given(space=spaces)
def test_total_maps_survive(space):
    t = refine(space)
    for p in t.ranks:
        if p.size == space.n:
            assert t.rank_of(p).is_top
