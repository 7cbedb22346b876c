import pytest
from hypothesis import given, strategies as st

from cowords.errors import MalformedToken, UnknownGenerator
from cowords.words import (
    GeneratorAlphabet,
    GroupWord,
    Letter,
    concat,
    free_reduce,
    invert_word,
    parse_word,
    rotations,
    word_to_text,
)

ABC = GeneratorAlphabet(("s1", "s2", "s3"))


def w(text):
    return parse_word(text, ABC)


class TestAlphabet:
    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            GeneratorAlphabet(("a", "a"))

    def test_rejects_reserved_characters(self):
        for bad in ("a^b", "a-b", "a$", "a#", "a b", ""):
            with pytest.raises(ValueError):
                GeneratorAlphabet((bad,))

    def test_index_roundtrip(self):
        assert ABC.index("s2") == 1
        assert "s2" in ABC
        assert "s4" not in ABC
        with pytest.raises(UnknownGenerator):
            ABC.index("s4")


class TestParse:
    def test_basic(self):
        word = w("s1 s2^-1")
        assert word.letters == (Letter(0, 1), Letter(1, -1))

    def test_empty(self):
        assert w("").letters == ()
        assert w("   ").letters == ()

    def test_unknown_generator(self):
        with pytest.raises(UnknownGenerator):
            w("s4")

    def test_malformed(self):
        for bad in ("s1^1", "s1^-2", "^-1", "s1^--1"):
            with pytest.raises(MalformedToken):
                w(bad)

    def test_roundtrip(self):
        for text in ("", "s1", "s1 s2^-1 s3 s3", "s3^-1 s3^-1"):
            assert word_to_text(w(text)) == " ".join(text.split())


class TestInvert:
    def test_reverses_and_negates(self):
        assert invert_word(w("s1 s2^-1")) == w("s2 s1^-1")

    def test_involution(self):
        word = w("s1 s2 s1^-1")
        assert invert_word(invert_word(word)) == word

    def test_empty(self):
        assert invert_word(w("")) == w("")


class TestFreeReduce:
    def test_adjacent_pair(self):
        assert free_reduce(w("s1 s1^-1")) == w("")
        assert free_reduce(w("s1^-1 s1")) == w("")

    def test_nested(self):
        assert free_reduce(w("s1 s2 s2^-1 s1^-1")) == w("")

    def test_already_reduced(self):
        word = w("s1 s2")
        assert free_reduce(word) == word

    def test_same_sign_not_cancelled(self):
        word = w("s1 s1")
        assert free_reduce(word) == word


class TestRotations:
    def test_two_letter(self):
        assert rotations(w("s1 s2")) == [w("s1 s2"), w("s2 s1")]

    def test_empty(self):
        assert rotations(w("")) == [w("")]

    def test_duplicates_retained(self):
        assert rotations(w("s1 s1")) == [w("s1 s1"), w("s1 s1")]


letters = st.tuples(st.integers(0, 2), st.sampled_from((1, -1))).map(
    lambda t: Letter(*t))
words = st.lists(letters, max_size=12).map(lambda ls: GroupWord(ABC, tuple(ls)))


@given(words)
def test_reduce_idempotent(word):
    once = free_reduce(word)
    assert free_reduce(once) == once
    assert len(once) <= len(word)


@given(words)
def test_inverse_cancels(word):
    assert free_reduce(concat(invert_word(word), word)) == GroupWord(ABC, ())
    assert free_reduce(concat(word, invert_word(word))) == GroupWord(ABC, ())


@given(words)
def test_rotation_count_and_lengths(word):
    rots = rotations(word)
    assert len(rots) == max(1, len(word))
    assert all(len(r) == len(word) for r in rots)


@given(words)
def test_parse_print_roundtrip(word):
    assert parse_word(word_to_text(word), ABC) == word
