import pytest

from mstd import scd
from mstd.family import (
    enumerate_F,
    gen_A,
    gen_R,
    gen_T,
    gen_high_ratio,
    gen_named,
    gen_periodic,
    is_member_F,
    m_block,
    rebuild_member,
)
from mstd.scd import SCD, parse, to_set
from mstd.setcore import MSTD, IntegerSet, classify


class TestMBlock:
    @pytest.mark.parametrize(
        "k,expected",
        [(1, (1, 4, 3)), (2, (1, 4, 4, 3)), (3, (1, 4, 4, 4, 3))],
    )
    def test_shape(self, k, expected):
        assert m_block(k) == expected
        assert len(m_block(k)) == k + 2

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            m_block(0)


class TestGenPeriodic:
    def test_s23(self):
        assert to_set(gen_periodic(2, 3, "S")) == IntegerSet(
            (0, 1, 2, 4, 5, 9, 13, 16, 17, 21, 25, 28, 29, 33, 37, 40, 41, 42, 44, 45)
        )

    def test_sprime32(self):
        assert to_set(gen_periodic(3, 2, "S'")) == IntegerSet(
            (0, 1, 2, 4, 5, 9, 13, 17, 20, 21, 25, 29, 33, 36, 37, 38, 40)
        )

    def test_sdoubleprime32(self):
        assert to_set(gen_periodic(3, 2, "S''")) == IntegerSet(
            (0, 1, 2, 4, 5, 9, 13, 17, 20, 21, 25, 29, 33, 36, 37, 38)
        )

    def test_diameters(self):
        for k in range(1, 6):
            for ell in range(1, 6):
                assert gen_periodic(k, ell, "S").diameter() == 9 + 4 * (k + 1) * ell
                assert gen_periodic(k, ell, "S'").diameter() == 8 + 4 * (k + 1) * ell
                assert gen_periodic(k, ell, "S''").diameter() == 6 + 4 * (k + 1) * ell

    def test_explicit_element_form(self):
        # independent closed form: {0,1,2,4,5}, the in-block 1-mod-4 runs,
        # the block boundary pairs, and the three tail elements
        for k in range(1, 9):
            for ell in range(1, 9):
                expected = {0, 1, 2, 4, 5}
                expected |= {
                    5 + 4 * (j - 1) * (k + 1) + 4 * i
                    for j in range(1, ell + 1)
                    for i in range(1, k + 1)
                }
                expected |= {4 + 4 * i * (k + 1) for i in range(1, ell + 1)}
                expected |= {5 + 4 * i * (k + 1) for i in range(1, ell + 1)}
                m = 4 * ell * (k + 1)
                expected |= {6 + m, 8 + m, 9 + m}
                assert to_set(gen_periodic(k, ell, "S")) == IntegerSet(expected)

    def test_validation(self):
        with pytest.raises(ValueError):
            gen_periodic(0, 1)
        with pytest.raises(ValueError):
            gen_periodic(1, 0)
        with pytest.raises(ValueError):
            gen_periodic(1, 1, "X")


class TestGenA:
    def test_equals_periodic_at_k4(self):
        for ell in range(1, 11):
            assert gen_A(4, ell) == gen_periodic(1, ell, "S")

    def test_k5_gap(self):
        assert classify(to_set(gen_A(5, 1))).gap == 2

    def test_gap_is_two_ell(self):
        for k in range(4, 9):
            for ell in range(1, 4):
                assert classify(to_set(gen_A(k, ell))).gap == 2 * ell

    def test_small_k_rejected(self):
        with pytest.raises(ValueError):
            gen_A(3, 1)


class TestNamedSets:
    def test_s2(self):
        assert gen_named("S2") == IntegerSet((0, 1, 2, 4, 5, 9, 12, 13, 14, 16, 17))

    def test_a4(self):
        assert gen_named("A4") == IntegerSet((0, 1, 2, 4, 5, 9, 12, 13, 14))

    def test_a12_equals_s2(self):
        assert gen_named("A12") == gen_named("S2")

    def test_s4_and_a15(self):
        assert gen_named("S4") == to_set(gen_periodic(1, 2, "S"))
        assert len(gen_named("A15")) == 23

    def test_unknown(self):
        with pytest.raises(ValueError):
            gen_named("Q3")


class TestTAndR:
    def test_t1_primed(self):
        assert gen_T(1, primed=True) == IntegerSet((0, 1, 2, 4, 5, 9, 12, 13, 14, 16))

    def test_t1_unprimed_is_s2(self):
        assert gen_T(1, primed=False) == gen_named("S2")

    def test_t_matches_periodic(self):
        for j in range(1, 11):
            assert gen_T(j, primed=True) == to_set(gen_periodic(1, j, "S'"))
            assert gen_T(j, primed=False) == to_set(gen_periodic(1, j, "S"))
            assert gen_T(j, primed=True).max() == 8 * (j + 1)

    def test_r1(self):
        assert gen_R(1) == IntegerSet((0, 1, 2, 4, 7, 8, 12, 14, 15, 18, 19, 20))

    def test_r_shape(self):
        for j in range(1, 11):
            r = gen_R(j)
            assert 1 in r and 4 in r
            assert r.max() == 12 * j + 8

    def test_all_sources_are_mstd(self):
        for j in range(1, 11):
            assert classify(gen_T(j, primed=True)).kind == MSTD
            assert classify(gen_T(j, primed=False)).kind == MSTD
            assert classify(gen_R(j)).kind == MSTD


class TestHighRatio:
    def test_shape(self):
        s = gen_high_ratio(1, closed=True)
        assert s.diffs == (1, 1, 2, 1, 4, 3, 1, 4, 4, 3, 1, 4, 4, 4, 3,
                           1, 4, 4, 3, 1, 4, 3, 1, 1, 2, 1)

    def test_diameter(self):
        # prefix and suffix sum to 48; each interior block adds 16
        for ell in range(1, 12):
            assert gen_high_ratio(ell, closed=True).diameter() == 49 + 16 * ell
            assert gen_high_ratio(ell, closed=False).diameter() == 48 + 16 * ell

    def test_small_member_is_mstd(self):
        assert classify(to_set(gen_high_ratio(1, closed=True))).kind == MSTD


class TestMembership:
    def test_s2_strict(self):
        m = is_member_F(parse("(0|1,1,2,1,4,3,1,1,2,1)"))
        assert m.member and m.tier == "strict"
        assert m.exponents == (1,) and m.tail == "T1121"

    def test_mixed_exponents(self):
        m = is_member_F(parse("(0|1,1,2,1,4,3,1,4,4,3,1,4,4,4,3,1,1,2,1)"))
        assert m.tier == "strict" and m.exponents == (1, 2, 3) and m.tail == "T1121"

    def test_a15_extended(self):
        m = is_member_F(scd.from_set(gen_named("A15")))
        assert m.member and m.tier == "extended"
        assert m.exponents == (1, 1, 1, 1) and m.group_sizes == (2, 2)
        assert m.tail == "T1121"

    def test_named_sets_membership(self):
        for name in ("S2", "S4", "A4", "A12"):
            assert is_member_F(scd.from_set(gen_named(name))).tier == "strict"

    def test_t_sets_members(self):
        for j in range(1, 6):
            assert is_member_F(scd.from_set(gen_T(j, primed=True))).tier == "strict"
            assert is_member_F(scd.from_set(gen_T(j, primed=False))).tier == "strict"

    def test_r1_does_not_match_the_grammar(self):
        # R_j is claimed to belong to the family, but its differences start
        # 1,1,2,3,... which neither tier accepts; we report, not repair.
        m = is_member_F(scd.from_set(gen_R(1)))
        assert not m.member and m.tier == "none"

    def test_high_ratio_members(self):
        m = is_member_F(gen_high_ratio(3, closed=True))
        assert m.tier == "strict" and m.exponents == (1, 2, 3, 3, 3, 2, 1)

    def test_nonzero_base_rejected(self):
        assert not is_member_F(SCD(1, (1, 1, 2, 1, 4, 3, 1, 1))).member

    def test_junk_rejected(self):
        for text in ("(0|1,1,2)", "(0|1,1,2,1,4)", "(0|1,1,2,1,4,3)",
                     "(0|1,1,2,1,4,3,1)", "(0|1,1,2,1,4,3,1,1,1)",
                     "(0|1,1,2,1,4,2,1,1)", "(0|2,1,2,1,4,3,1,1)"):
            assert not is_member_F(parse(text)).member

    def test_round_trip(self):
        for k in range(1, 5):
            for ell in range(1, 5):
                for variant in ("S", "S'", "S''"):
                    s = gen_periodic(k, ell, variant)
                    m = is_member_F(s)
                    assert m.member and m.exponents == (k,) * ell
                    assert rebuild_member(m) == s
        a15 = scd.from_set(gen_named("A15"))
        assert rebuild_member(is_member_F(a15)) == a15


def brute_force_strict_members(max_diameter):
    """Independent grammar filter: all block-exponent compositions and tails."""
    out = []

    def compositions(total):
        if total == 0:
            yield ()
            return
        for first in range(1, total + 1):
            for rest in compositions(total - first):
                yield (first,) + rest

    for tail in ((1, 1), (1, 1, 2), (1, 1, 2, 1)):
        budget = (max_diameter - 4 - sum(tail)) // 4
        for total in range(1, budget + 1):
            for ks in compositions(total):
                diffs = (1, 1, 2)
                for k in ks:
                    diffs += (1,) + (4,) * k + (3,)
                diffs += tail
                if sum(diffs) <= max_diameter:
                    out.append(SCD(0, diffs))
    return out


class TestEnumerateF:
    def test_empty_below_minimum(self):
        assert list(enumerate_F(13)) == []

    def test_first_member(self):
        assert list(enumerate_F(14)) == [parse("(0|1,1,2,1,4,3,1,1)")]

    def test_count_matches_brute_force(self):
        members = list(enumerate_F(50))
        assert len(members) == 319
        assert set(members) == set(brute_force_strict_members(50))

    def test_order_and_uniqueness(self):
        members = list(enumerate_F(40))
        diameters = [m.diameter() for m in members]
        assert diameters == sorted(diameters)
        assert len(set(members)) == len(members)

    def test_members_parse_back(self):
        for m in enumerate_F(36):
            parsed = is_member_F(m)
            assert parsed.tier == "strict"
            assert rebuild_member(parsed) == m
