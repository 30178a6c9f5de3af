import itertools

import pytest

from words import (
    AlphabetViolation,
    MN1Violation,
    MN2Violation,
    MNWord,
    ShapeMismatch,
    bottom_word,
    count_topless,
    count_words,
    enumerate_words,
    extend,
    format_word,
    join,
    leq,
    lower_covers,
    meet,
    parse_word,
    slice_bounds,
    slice_words,
    top_word,
    validate,
    word_from_json,
    word_stats,
    word_to_json,
)


def w(m, text):
    return parse_word(m, text)


def test_validate_accepts_word():
    assert validate(2, [2, 3, 1]).letters == (2, 3, 1)


def test_validate_rejects_top_letter_first():
    with pytest.raises(MN1Violation):
        validate(2, [3, 0])


def test_validate_reports_mn2_positions():
    with pytest.raises(MN2Violation) as info:
        validate(2, [2, 0, 1])
    assert info.value.earlier == 2
    assert info.value.later == 3
    assert "position 3" in str(info.value)


@pytest.mark.parametrize("letters", [[1.9, 0.5], [1.0], ["1"], [True]])
def test_validate_rejects_non_integer_letters(letters):
    with pytest.raises(AlphabetViolation):
        validate(2, letters)


@pytest.mark.parametrize("m,letters", [(2, [4]), (2, [-1]), (-1, [])])
def test_validate_rejects_alphabet(m, letters):
    with pytest.raises(AlphabetViolation):
        validate(m, letters)


def test_empty_word_is_valid():
    assert MNWord(3, ()).n == 0
    assert enumerate_words(3, 0) == [MNWord(3, ())]


def test_enumerate_w22_lexicographic():
    assert [format_word(x) for x in enumerate_words(2, 2)] == [
        "00", "03", "10", "11", "13", "20", "21", "22", "23",
    ]


@pytest.mark.parametrize("m,n", [(m, n) for m in range(6) for n in range(7)])
def test_count_words_matches_enumeration(m, n):
    assert count_words(m, n) == len(enumerate_words(m, n))


def test_count_words_known_values():
    assert count_words(2, 2) == 9
    assert count_words(2, 3) == 25
    assert count_words(3, 4) == 129
    assert count_words(5, 0) == 1
    assert count_words(4, 1) == 5


def test_enumeration_is_strictly_increasing():
    found = enumerate_words(3, 4)
    assert all(a.letters < b.letters for a, b in zip(found, found[1:]))


@pytest.mark.parametrize("m,n", [(2, 3), (3, 3), (1, 5), (0, 4)])
def test_count_topless(m, n):
    topless = [x for x in enumerate_words(m, n) if m + 1 not in x.letters]
    assert count_topless(m, n) == len(topless)
    assert all(a >= b for x in topless for a, b in zip(x.letters, x.letters[1:]))


def test_meet_normalizes_prefix_minimum():
    assert meet(w(2, "220"), w(2, "130")) == w(2, "110")


def test_meet_keeps_top_letters():
    assert meet(w(2, "233"), w(2, "133")) == w(2, "133")
    assert meet(w(2, "231"), w(2, "033")) == w(2, "030")


def test_meet_and_join_with_bounds():
    top, bottom = top_word(2, 3), bottom_word(2, 3)
    for u in enumerate_words(2, 3):
        assert meet(u, top) == u
        assert meet(u, u) == u
        assert join(u, bottom) == u
        assert join(u, u) == u


def test_join_is_componentwise_max():
    assert join(w(2, "200"), w(2, "030")) == w(2, "230")


def test_meet_is_greatest_lower_bound():
    found = enumerate_words(2, 3)
    for u, v in itertools.product(found, repeat=2):
        lower = [x for x in found if leq(x, u) and leq(x, v)]
        m = meet(u, v)
        assert m in lower
        assert all(leq(x, m) for x in lower)


def test_lattice_axioms_on_all_triples():
    found = enumerate_words(1, 3)
    for a, b, c in itertools.product(found, repeat=3):
        assert join(join(a, b), c) == join(a, join(b, c))
        assert meet(meet(a, b), c) == meet(a, meet(b, c))
    for a, b in itertools.product(found, repeat=2):
        assert meet(a, b) == meet(b, a)
        assert join(a, meet(a, b)) == a
        assert meet(a, join(a, b)) == a


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        leq(w(2, "00"), w(2, "000"))
    with pytest.raises(ShapeMismatch):
        meet(w(2, "00"), w(3, "00"))


def test_lower_covers_w22():
    assert lower_covers(w(2, "23")) == {w(2, "22"), w(2, "13")}
    assert lower_covers(bottom_word(2, 2)) == set()


def test_lower_cover_through_top_letter_uses_prefix_minimum():
    assert lower_covers(w(2, "213")) == {w(2, "211"), w(2, "113"), w(2, "203")}


@pytest.mark.parametrize("m,n", [(2, 3), (3, 3), (1, 4), (0, 4)])
def test_cover_count_is_in_degree(m, n):
    for x in enumerate_words(m, n):
        covers = lower_covers(x)
        assert len(covers) == word_stats(x).in_degree
        assert all(leq(c, x) and c != x for c in covers)


def test_word_stats_worked_example():
    stats = word_stats(w(6, "474337720"))
    assert stats.support == frozenset({2, 3, 4})
    assert stats.top_count == 3
    assert stats.in_degree == 6
    assert stats.min_letter == 0


def test_word_stats_bottom_and_w22():
    assert word_stats(bottom_word(2, 3)).in_degree == 0
    stats = word_stats(w(2, "23"))
    assert (stats.support, stats.top_count, stats.in_degree) == (frozenset({2}), 1, 2)


def test_text_forms():
    assert format_word(w(6, "474337720")) == "474337720"
    big = MNWord(9, (4, 10, 4, 3))
    assert format_word(big) == "4,10,4,3"
    assert parse_word(9, "4,10,4,3") == big
    assert parse_word(2, "2,3,1") == w(2, "231")


def test_json_form():
    x = w(2, "231")
    assert word_to_json(x) == {"m": 2, "letters": [2, 3, 1]}
    assert word_from_json({"m": 2, "letters": [2, 3, 1]}) == x


def test_slices():
    assert len(slice_words(2, 2, 1)) == 5
    assert [format_word(x) for x in slice_words(2, 2, 2)] == ["22", "23"]
    assert slice_words(2, 3, 0) == enumerate_words(2, 3)
    lo, hi = slice_bounds(2, 3, 1)
    assert (format_word(lo), format_word(hi)) == ("111", "233")
    with pytest.raises(AlphabetViolation):
        slice_words(2, 3, 3)


def test_extend_validates():
    assert extend(w(2, "23"), 0) == w(2, "230")
    with pytest.raises(MN2Violation):
        extend(w(2, "03"), 1)
