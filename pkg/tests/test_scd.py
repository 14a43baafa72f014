import random

import pytest

from mstd import scd
from mstd.scd import SCD, SCDParseError, from_set, parse, run_sums, to_set
from mstd.setcore import IntegerSet, difference_set


class TestParse:
    def test_paper_notation(self):
        s = parse("(2|1,2,4,1)")
        assert s.base == 2 and s.diffs == (1, 2, 4, 1)

    def test_singleton(self):
        assert parse("(0|)") == SCD(0, ())
        assert parse("(7|)") == SCD(7, ())

    def test_whitespace_tolerated(self):
        assert parse(" ( 2 | 1 , 2 ,4, 1 ) ") == SCD(2, (1, 2, 4, 1))

    def test_s2_form(self):
        assert to_set(parse("(0|1,1,2,1,4,3,1,1,2,1)")) == IntegerSet(
            (0, 1, 2, 4, 5, 9, 12, 13, 14, 16, 17)
        )

    @pytest.mark.parametrize(
        "text,offset",
        [
            ("2|1,2)", 0),
            ("(2 1,2)", 3),
            ("(2|1,,2)", 5),
            ("(2|1,2", 6),
            ("(2|1,2) junk", 8),
            ("(|1)", 1),
        ],
    )
    def test_syntax_errors_carry_offsets(self, text, offset):
        with pytest.raises(SCDParseError) as err:
            parse(text)
        assert err.value.offset == offset

    def test_zero_difference_rejected(self):
        with pytest.raises(SCDParseError):
            parse("(2|1,0,2)")
        with pytest.raises(SCDParseError):
            parse("(2|-1)")


class TestFormat:
    def test_canonical(self):
        assert scd.format(SCD(2, (1, 2, 4, 1))) == "(2|1,2,4,1)"
        assert scd.format(SCD(0, ())) == "(0|)"
        assert scd.format(SCD(0, (1, 1, 2, 1))) == "(0|1,1,2,1)"

    def test_round_trip(self):
        rng = random.Random(1234)
        for _ in range(2000):
            s = SCD(rng.randint(0, 30), tuple(rng.randint(1, 9) for _ in range(rng.randint(0, 25))))
            assert parse(scd.format(s)) == s


class TestConversion:
    def test_to_set(self):
        assert to_set(SCD(2, (1, 2, 4, 1))) == IntegerSet((2, 3, 5, 9, 10))
        assert to_set(SCD(0, ())) == IntegerSet((0,))

    def test_from_set_sorts(self):
        assert from_set(IntegerSet({3, 2, 5, 10, 9})) == SCD(2, (1, 2, 4, 1))
        assert from_set(IntegerSet([7])) == SCD(7, ())

    def test_a15(self):
        a15 = IntegerSet(
            (0, 1, 2, 4, 5, 9, 12, 13, 17, 20, 21, 22, 24, 25, 29, 32, 33,
             37, 40, 41, 42, 44, 45)
        )
        assert from_set(a15) == parse("(0|1,1,2,1,4,3,1,4,3,1,1,2,1,4,3,1,4,3,1,1,2,1)")

    def test_from_set_rejects_empty(self):
        with pytest.raises(ValueError):
            from_set(IntegerSet())

    def test_round_trips(self):
        rng = random.Random(77)
        for _ in range(2000):
            s = SCD(rng.randint(0, 20), tuple(rng.randint(1, 8) for _ in range(rng.randint(0, 20))))
            assert from_set(to_set(s)) == s
        for _ in range(500):
            a = IntegerSet(rng.sample(range(100), rng.randint(1, 30)))
            assert to_set(from_set(a)) == a

    def test_cardinality_invariant(self):
        s = SCD(0, (1, 1, 2, 1, 4, 3))
        assert len(to_set(s)) == len(s.diffs) + 1
        assert to_set(s).diameter() == s.diameter() == 12


class TestRunSums:
    def test_notation_example(self):
        # the run 1,2,4 sums to 7
        assert 7 in run_sums(SCD(2, (1, 2, 4, 1)))

    def test_small(self):
        assert run_sums(SCD(0, ())) == IntegerSet()
        assert run_sums(SCD(0, (1, 1))) == IntegerSet((1, 2))

    def test_matches_positive_differences(self):
        rng = random.Random(4242)
        for _ in range(10_000):
            s = SCD(rng.randint(0, 10), tuple(rng.randint(1, 7) for _ in range(rng.randint(0, 18))))
            expected = IntegerSet(difference_set(to_set(s)).positive_part())
            assert run_sums(s) == expected
