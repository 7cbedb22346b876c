import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cowords.errors import InvalidRay, InvalidRayCount, RayCountMismatch
from cowords.houghton import (
    ORIGIN,
    HoughtonElement,
    compose,
    evaluate_word,
    generator_alphabet,
    h2_generators,
    identity,
    inverse,
    is_identity_points,
    pair,
    parse_point,
    s_alphabet,
    shift_generator,
    trace_point,
    word_to_element,
)
from cowords.words import invert_word, parse_word


def w3(text):
    return parse_word(text, s_alphabet(3))


def all_points(n, kmax):
    yield ORIGIN
    for l in range(1, n + 1):
        for k in range(1, kmax + 1):
            yield pair(k, l)


class TestShiftGenerator:
    def test_origin_moves_to_next_ray(self):
        assert shift_generator(1, 3).apply(ORIGIN) == pair(1, 2)

    def test_first_point_of_own_ray_hits_origin(self):
        assert shift_generator(1, 3).apply(pair(1, 1)) == ORIGIN

    def test_far_rays_fixed(self):
        assert shift_generator(1, 3).apply(pair(5, 3)) == pair(5, 3)

    def test_next_ray_pushed_outward(self):
        assert shift_generator(2, 3).apply(pair(3, 3)) == pair(4, 3)

    def test_own_ray_pulled_inward(self):
        assert shift_generator(1, 3).apply(pair(4, 1)) == pair(3, 1)

    def test_wraps_modulo_ray_count(self):
        g = shift_generator(3, 3)
        assert g.apply(ORIGIN) == pair(1, 1)
        assert g.shifts == (1, 0, -1)

    def test_bad_index(self):
        with pytest.raises(InvalidRay):
            shift_generator(0, 3)
        with pytest.raises(InvalidRay):
            shift_generator(4, 3)
        with pytest.raises(InvalidRayCount):
            shift_generator(1, 1)

    def test_bijective_on_ball(self):
        g = shift_generator(2, 4)
        images = [g.apply(p) for p in all_points(4, 10)]
        assert len(set(images)) == len(images)


class TestElementValidation:
    def test_shifts_must_balance(self):
        with pytest.raises(InvalidRay):
            HoughtonElement(3, (1, 0, 0))

    def test_table_must_be_injective(self):
        with pytest.raises(InvalidRay):
            HoughtonElement(2, (0, 0), {pair(1, 1): ORIGIN, pair(2, 1): ORIGIN})

    def test_redundant_entries_dropped(self):
        e = HoughtonElement(2, (0, 0), {pair(1, 1): pair(1, 1)})
        assert e == identity(2)
        assert e.is_identity()

    def test_point_parsing(self):
        assert parse_point("0") == ORIGIN
        assert parse_point("(3,2)") == pair(3, 2)
        with pytest.raises(InvalidRay):
            parse_point("(0,2)")
        with pytest.raises(InvalidRay):
            parse_point("origin")


class TestCompose:
    def test_inverse_cancels(self):
        e = shift_generator(1, 3)
        assert compose(e, inverse(e)).is_identity()
        assert compose(inverse(e), e).is_identity()

    def test_identity_neutral(self):
        e = shift_generator(2, 3)
        assert compose(identity(3), e) == e
        assert compose(e, identity(3)) == e

    def test_s1_squared(self):
        e = compose(shift_generator(1, 3), shift_generator(1, 3))
        assert e.shifts == (-2, 2, 0)
        assert e.table == {
            ORIGIN: pair(2, 2),
            pair(1, 1): pair(1, 2),
            pair(2, 1): ORIGIN,
        }

    def test_ray_count_mismatch(self):
        with pytest.raises(RayCountMismatch):
            compose(shift_generator(1, 2), shift_generator(1, 3))

    def test_matches_pointwise_action(self):
        a = compose(shift_generator(1, 3), shift_generator(2, 3))
        b = inverse(shift_generator(3, 3))
        c = compose(a, b)
        for p in all_points(3, 12):
            assert c.apply(p) == b.apply(a.apply(p))


class TestWordEvaluation:
    def test_cancelling_word_is_identity(self):
        assert word_to_element(w3("s1 s1^-1"), 3).is_identity()

    def test_empty_word(self):
        assert word_to_element(w3(""), 3) == identity(3)

    def test_generator_word(self):
        e = word_to_element(w3("s1"), 3)
        assert e.shifts == (-1, 1, 0)
        assert not e.is_identity()

    def test_two_step_origin_orbit(self):
        assert word_to_element(w3("s1 s1"), 3).apply(ORIGIN) == pair(2, 2)

    def test_commutator_is_the_basepoint_transposition(self):
        # a b a^-1 b^-1 with a = s1, b = s2 swaps the origin with (1,1)
        # and fixes everything else; this pins the action convention.
        e = word_to_element(w3("s1 s2 s1^-1 s2^-1"), 3)
        expected = HoughtonElement(
            3, (0, 0, 0), {ORIGIN: pair(1, 1), pair(1, 1): ORIGIN})
        assert e == expected
        assert not e.is_identity()

    def test_inverse_word_gives_inverse_element(self):
        word = w3("s1 s2 s3^-1 s1")
        assert word_to_element(invert_word(word), 3) == \
            inverse(word_to_element(word, 3))


class TestTrace:
    def test_empty_trace(self):
        assert trace_point(w3(""), ORIGIN, 3) == [ORIGIN]

    def test_single_step(self):
        assert trace_point(w3("s1"), ORIGIN, 3) == [ORIGIN, pair(1, 2)]

    def test_round_trip(self):
        assert trace_point(w3("s1 s1^-1"), pair(2, 1), 3) == \
            [pair(2, 1), pair(1, 1), pair(2, 1)]


class TestRankTwo:
    def test_translation_action(self):
        t = h2_generators()["t"]
        assert t.apply(ORIGIN) == pair(1, 1)
        assert t.apply(pair(1, 2)) == ORIGIN
        assert t.apply(pair(2, 2)) == pair(1, 2)
        assert t.apply(pair(1, 1)) == pair(2, 1)

    def test_transposition_action(self):
        tau = h2_generators()["tau"]
        assert tau.apply(ORIGIN) == pair(1, 1)
        assert tau.apply(pair(1, 1)) == ORIGIN
        assert tau.apply(pair(2, 1)) == pair(2, 1)
        assert compose(tau, tau).is_identity()

    def test_commutator_moves_origin_to_second_ray(self):
        gens = h2_generators()
        word = parse_word("t tau t^-1 tau^-1", generator_alphabet(gens))
        e = evaluate_word(word, gens)
        assert e.apply(ORIGIN) == pair(1, 2)
        assert not e.is_identity()


indices = st.integers(1, 3)
signs = st.sampled_from((1, -1))
s_words = st.lists(st.tuples(indices, signs), max_size=8).map(
    lambda pairs: " ".join(f"s{i}" if e == 1 else f"s{i}^-1" for i, e in pairs))


@given(s_words)
@settings(max_examples=150, deadline=None)
def test_identity_iff_small_ball_fixed(text):
    word = w3(text)
    e = word_to_element(word, 3)
    ball_fixed = all(s == 0 for s in e.shifts) and all(
        e.apply(p) == p for p in all_points(3, len(word) + 1))
    assert e.is_identity() == ball_fixed
    assert is_identity_points(word, 3) == e.is_identity()


@given(s_words, s_words)
@settings(max_examples=60, deadline=None)
def test_evaluation_is_a_homomorphism(t1, t2):
    a = word_to_element(w3(t1), 3)
    b = word_to_element(w3(t2), 3)
    joint = word_to_element(w3(t1 + " " + t2), 3)
    assert joint == compose(a, b)


@given(s_words, s_words, s_words)
@settings(max_examples=40, deadline=None)
def test_associativity_pointwise(t1, t2, t3):
    a, b, c = (word_to_element(w3(t), 3) for t in (t1, t2, t3))
    left = compose(compose(a, b), c)
    right = compose(a, compose(b, c))
    for p in all_points(3, 20):
        assert left.apply(p) == right.apply(p)
    assert left == right


def test_shift_sum_always_zero():
    for word in itertools.product(["s1", "s2^-1", "s3"], repeat=3):
        e = word_to_element(w3(" ".join(word)), 3)
        assert sum(e.shifts) == 0
