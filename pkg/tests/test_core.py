"""Domain primitives: intervals, profiles, anonymization, rationals."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from intervalvote.core import (
    AnonProfile,
    CannotShrink,
    Interval,
    InvalidAlternative,
    InvalidAlternativeCount,
    MismatchedAlternatives,
    NoSuchVoter,
    NotDisjoint,
    Profile,
    VotingError,
    anonymize,
    canonical_index,
    canonical_intervals,
    combine,
    delete_endpoint,
    parse_rational,
    render_rational,
    replicate,
)

rationals = st.fractions(
    min_value=-1000, max_value=1000, max_denominator=10**6
)


@st.composite
def profiles(draw, m_max=5, n_max=6):
    m = draw(st.integers(2, m_max))
    options = canonical_intervals(m)
    n = draw(st.integers(1, n_max))
    voters = {v: draw(st.sampled_from(options)) for v in range(1, n + 1)}
    return Profile(m, voters)


class TestRationals:
    @given(rationals)
    def test_round_trip(self, x):
        assert parse_rational(render_rational(x)) == x

    def test_parse_forms(self):
        assert parse_rational("3/6") == Fraction(1, 2)
        assert parse_rational("2") == 2
        assert parse_rational(" -1/2 ") == Fraction(-1, 2)
        assert parse_rational(Fraction(5, 7)) == Fraction(5, 7)

    def test_render_lowest_terms(self):
        assert render_rational(Fraction(4, 8)) == "1/2"
        assert render_rational(Fraction(6, 3)) == "2"

    def test_zero_denominator_rejected(self):
        with pytest.raises(VotingError):
            parse_rational("1/0")
        with pytest.raises(VotingError):
            parse_rational("1/-2")


class TestInterval:
    def test_bad_bounds(self):
        with pytest.raises(InvalidAlternative):
            Interval(3, 2)
        with pytest.raises(InvalidAlternative):
            Interval(0, 1)
        with pytest.raises(InvalidAlternative):
            Interval(1, 4).validate(3)

    def test_queries(self):
        iv = Interval(2, 4)
        assert iv.size == 3
        assert not iv.is_singleton()
        assert iv.contains(2) and iv.contains(4) and not iv.contains(5)
        assert list(iv.alternatives()) == [2, 3, 4]
        assert Interval(3, 3).is_singleton()


class TestCanonicalOrder:
    def test_count(self):
        # q = m(m+1)/2
        assert len(canonical_intervals(2)) == 3
        assert len(canonical_intervals(4)) == 10
        assert len(canonical_intervals(8)) == 36

    def test_m_guard(self):
        with pytest.raises(InvalidAlternativeCount):
            canonical_intervals(1)

    def test_sorted_by_left_then_right(self):
        ivs = canonical_intervals(3)
        assert ivs == [
            Interval(1, 1), Interval(1, 2), Interval(1, 3),
            Interval(2, 2), Interval(2, 3), Interval(3, 3),
        ]

    @given(st.integers(2, 8))
    def test_index_is_bijective(self, m):
        ivs = canonical_intervals(m)
        assert [canonical_index(m, iv) for iv in ivs] == list(range(len(ivs)))


class TestProfile:
    def test_json_round_trip(self):
        p = Profile(3, {1: Interval(1, 2), "a": Interval(3, 3)})
        assert Profile.from_json(p.to_json()) == p

    def test_duplicate_id_rejected(self):
        data = {
            "m": 2,
            "voters": [
                {"id": 1, "interval": [1, 1]},
                {"id": 1, "interval": [2, 2]},
            ],
        }
        with pytest.raises(VotingError):
            Profile.from_json(data)

    def test_missing_voter(self):
        p = Profile(2, {1: Interval(1, 1)})
        with pytest.raises(NoSuchVoter):
            p.interval(2)
        with pytest.raises(NoSuchVoter):
            p.with_interval(2, Interval(1, 1))

    def test_support_and_singleton_domain(self):
        p = Profile(4, {1: Interval(1, 2), 2: Interval(4, 4)})
        assert p.support() == {1, 2, 4}
        assert not p.is_singleton_domain()
        assert Profile(4, {1: Interval(2, 2)}).is_singleton_domain()

    def test_empty_rejected(self):
        with pytest.raises(VotingError):
            Profile(3, {})


class TestAnonymize:
    @given(profiles())
    def test_counts_sum_to_n(self, p):
        assert anonymize(p).n == p.n

    @given(profiles(), st.randoms())
    def test_permutation_invariance(self, p, rng):
        ids = list(p.voters)
        shuffled = list(ids)
        rng.shuffle(shuffled)
        q = Profile(p.m, {b: p.voters[a] for a, b in zip(ids, shuffled)})
        assert anonymize(q) == anonymize(p)

    @given(profiles(), profiles())
    def test_additivity(self, p1, p2):
        if p1.m != p2.m:
            return
        relabeled = Profile(
            p2.m, {f"b{v}": iv for v, iv in p2.voters.items()}
        )
        both = combine(p1, relabeled)
        assert anonymize(both) == anonymize(p1) + anonymize(relabeled)

    def test_to_profile_round_trip(self):
        anon = AnonProfile(2, (2, 1, 0))
        p = anon.to_profile()
        assert p.n == 3
        assert anonymize(p) == anon

    def test_add_m_mismatch(self):
        with pytest.raises(MismatchedAlternatives):
            AnonProfile(2, (1, 0, 0)) + AnonProfile(3, (1, 0, 0, 0, 0, 0))


class TestDeleteEndpoint:
    def test_shrinks_one_side(self):
        p = Profile(4, {1: Interval(2, 4)})
        assert delete_endpoint(p, 1, "left").interval(1) == Interval(3, 4)
        assert delete_endpoint(p, 1, "right").interval(1) == Interval(2, 3)

    def test_singleton_rejected(self):
        p = Profile(4, {1: Interval(2, 2)})
        with pytest.raises(CannotShrink):
            delete_endpoint(p, 1, "left")

    def test_bad_side(self):
        p = Profile(4, {1: Interval(2, 4)})
        with pytest.raises(VotingError):
            delete_endpoint(p, 1, "middle")


class TestCombineReplicate:
    def test_combine_disjointness(self):
        p = Profile(2, {1: Interval(1, 1)})
        with pytest.raises(NotDisjoint):
            combine(p, p)
        with pytest.raises(MismatchedAlternatives):
            combine(p, Profile(3, {2: Interval(1, 1)}))

    @given(profiles(), st.integers(1, 4))
    def test_replicate_preserves_multiset(self, p, k):
        big = replicate(p, k)
        assert big.n == k * p.n
        assert anonymize(big).counts == tuple(
            k * c for c in anonymize(p).counts
        )

    def test_replicate_preserves_integer_parity(self):
        p = Profile(2, {1: Interval(1, 1), 2: Interval(2, 2)})
        big = replicate(p, 3)
        # copies of an even-id voter keep even ids, same for odd
        evens = [v for v in big.voters if v % 2 == 0]
        assert len(evens) == 3
        assert all(big.voters[v] == Interval(2, 2) for v in evens)

    def test_replicate_avoids_reserved_ids(self):
        p = Profile(2, {1: Interval(1, 1)})
        big = replicate(p, 5, avoid_ids=[2, 99])
        assert not set(big.voters) & {2, 99}
