import pytest
from hypothesis import given, settings, strategies as st

from cowords.errors import (
    InvalidGenerators,
    MalformedToken,
    ParameterMismatch,
    UnknownGenerator,
)
from cowords.higman import (
    DEFAULT_G21_TABLE,
    PrefixMap,
    PrefixString,
    TestSequence,
    apply_to_sequence,
    compose,
    default_generators,
    enumerate_M,
    format_generator_table,
    generator_alphabet,
    identity,
    inverse,
    is_identity,
    is_identity_sequences,
    is_reduced,
    k_bound,
    parse_generator_table,
    parse_prefix,
    parse_test_sequence,
    reduce_map,
    symmetrized_k,
    validate_barrier,
    word_to_element,
)
from cowords.words import GeneratorAlphabet, invert_word, parse_word

N, R, GENS = default_generators()
ABC = generator_alphabet(GENS)


def p(text):
    return parse_prefix(text, 2, 1)


def ts(text):
    return parse_test_sequence(text, 2, 1)


def wv(text):
    return parse_word(text, ABC)


def ev(text):
    return word_to_element(wv(text), GENS)


class TestPrefixStrings:
    def test_parse(self):
        assert p("q1") == PrefixString(1, ())
        assert p("q1.21") == PrefixString(1, (2, 1))

    def test_parse_errors(self):
        with pytest.raises(MalformedToken):
            p("1.21")
        with pytest.raises(MalformedToken):
            p("q1.")
        with pytest.raises(MalformedToken):
            p("q1.a")
        with pytest.raises(InvalidGenerators):
            p("q2.1")
        with pytest.raises(InvalidGenerators):
            p("q1.3")

    def test_prefix_relation(self):
        assert p("q1").is_prefix_of(p("q1.12"))
        assert p("q1.1").is_prefix_of(p("q1.12"))
        assert not p("q1.2").is_prefix_of(p("q1.12"))
        assert not PrefixString(1).is_prefix_of(PrefixString(2))

    def test_str_roundtrip(self):
        for text in ("q1", "q1.21", "q1.111"):
            assert str(p(text)) == text


class TestBarriers:
    def test_root_barrier(self):
        assert validate_barrier([p("q1")], 2, 1)

    def test_one_level_expansion(self):
        assert validate_barrier([p("q1.1"), p("q1.2")], 2, 1)

    def test_incomplete(self):
        assert not validate_barrier([p("q1.1")], 2, 1)

    def test_prefix_violation(self):
        assert not validate_barrier([p("q1.1"), p("q1.2"), p("q1.21")], 2, 1)

    def test_wrong_weight(self):
        assert not validate_barrier(
            [p("q1.1"), p("q1.21"), p("q1.221")], 2, 1)

    def test_multiple_roots(self):
        elems = [PrefixString(1), PrefixString(2, (1,)), PrefixString(2, (2,))]
        assert validate_barrier(elems, 2, 2)
        assert not validate_barrier(elems, 2, 3)


class TestReduce:
    def test_expanded_identity_collapses(self):
        m = PrefixMap(2, 1, ((p("q1.1"), p("q1.1")), (p("q1.2"), p("q1.2"))))
        assert reduce_map(m) == identity(2, 1)
        assert is_identity(m)

    def test_defaults_already_reduced(self):
        for g in GENS.values():
            assert is_reduced(g)

    def test_cancellation_reduces_to_identity(self):
        for g in GENS.values():
            assert compose(g, inverse(g)) == identity(2, 1)
            assert compose(inverse(g), g) == identity(2, 1)

    def test_deep_merge(self):
        m = PrefixMap(2, 1, (
            (p("q1.11"), p("q1.11")),
            (p("q1.12"), p("q1.12")),
            (p("q1.2"), p("q1.2"))))
        assert reduce_map(m) == identity(2, 1)


class TestValidation:
    def test_non_bijection_rejected(self):
        with pytest.raises(InvalidGenerators):
            PrefixMap(2, 1, ((p("q1.1"), p("q1")), (p("q1.2"), p("q1"))))

    def test_bad_domain_rejected(self):
        with pytest.raises(InvalidGenerators):
            PrefixMap(2, 1, ((p("q1.1"), p("q1")),))

    def test_parameter_mismatch(self):
        with pytest.raises(ParameterMismatch):
            compose(identity(2, 1), identity(2, 2))


class TestCompose:
    def test_identity_neutral(self):
        for g in GENS.values():
            assert compose(identity(2, 1), g) == reduce_map(g)
            assert compose(g, identity(2, 1)) == reduce_map(g)

    def test_matches_sequence_evaluation(self):
        names = list(GENS)
        for na in names:
            for nb in names:
                a, b = GENS[na], GENS[nb]
                c = compose(a, b)
                depth = k_bound(a) + k_bound(b) + 2
                for s in enumerate_M(2, 1, depth):
                    assert apply_to_sequence(c, s) == \
                        apply_to_sequence(b, apply_to_sequence(a, s))

    def test_reduction_preserves_action(self):
        m = PrefixMap(2, 1, (
            (p("q1.11"), p("q1.21")),
            (p("q1.12"), p("q1.22")),
            (p("q1.2"), p("q1.1"))))
        red = reduce_map(m)
        assert red.pairs == ((p("q1.1"), p("q1.2")), (p("q1.2"), p("q1.1")))
        for s in enumerate_M(2, 1, 3):
            assert apply_to_sequence(red, s) == apply_to_sequence(m, s)


class TestSequences:
    def test_canonical_head(self):
        assert ts("q1.21").tail == (2,)
        assert ts("q1.1").tail == ()
        assert str(ts("q1.211")) == "q1.2"

    def test_identity_fixes(self):
        for s in enumerate_M(2, 1, 3):
            assert apply_to_sequence(identity(2, 1), s) == s

    def test_basic_swap(self):
        swap = PrefixMap(2, 1, ((p("q1.1"), p("q1.2")), (p("q1.2"), p("q1.1"))))
        assert apply_to_sequence(swap, ts("q1")) == ts("q1.2")
        assert apply_to_sequence(swap, ts("q1.2")) == ts("q1")

    def test_shift_on_all_ones(self):
        assert apply_to_sequence(GENS["A"], ts("q1.2")) == ts("q1.22")
        assert apply_to_sequence(GENS["C"], ts("q1.22")) == ts("q1")

    def test_prefix_padding(self):
        s = ts("q1.2")
        assert s.prefix(4) == PrefixString(1, (2, 1, 1, 1))
        with pytest.raises(ValueError):
            s.prefix(0)


class TestBounds:
    def test_identity_bound(self):
        assert k_bound(identity(2, 1)) == 0

    def test_one_level(self):
        swap = PrefixMap(2, 1, ((p("q1.1"), p("q1.2")), (p("q1.2"), p("q1.1"))))
        assert k_bound(swap) == 1

    def test_default_set_symmetrized(self):
        assert symmetrized_k(GENS) == 3

    def test_enumerate_M_counts(self):
        assert len(enumerate_M(2, 1, 1)) == 2
        assert len(enumerate_M(3, 2, 0)) == 2
        eight = enumerate_M(2, 1, 3)
        assert len(eight) == 8
        assert len(set(eight)) == 8


class TestWordEvaluation:
    def test_cancelling_word(self):
        assert is_identity(ev("A A^-1"))

    def test_empty_word(self):
        assert ev("") == identity(2, 1)

    def test_generators_nontrivial(self):
        for name in GENS:
            e = ev(name)
            assert not is_identity(e)
            assert not is_identity_sequences(e)

    def test_involutions_and_orders(self):
        assert is_identity(ev("D D"))
        assert is_identity(ev("C C C"))
        assert not is_identity(ev("C C"))

    def test_unknown_generator(self):
        word = parse_word("E", GeneratorAlphabet(("E",)))
        with pytest.raises(UnknownGenerator):
            word_to_element(word, GENS)


class TestTableFormat:
    def test_default_roundtrip(self):
        n, r, gens = parse_generator_table(DEFAULT_G21_TABLE)
        assert (n, r) == (2, 1)
        assert list(gens) == ["A", "B", "C", "D"]
        assert format_generator_table(n, r, gens) == DEFAULT_G21_TABLE

    def test_rejects_bad_header(self):
        with pytest.raises(MalformedToken):
            parse_generator_table("npda n=2 r=1\n")

    def test_rejects_invalid_barrier(self):
        bad = "gnr n=2 r=1\ngen X\nq1.1 -> q1\n"
        with pytest.raises(InvalidGenerators):
            parse_generator_table(bad)

    def test_rejects_duplicate_generator(self):
        bad = "gnr n=2 r=1\ngen X\nq1 -> q1\ngen X\nq1 -> q1\n"
        with pytest.raises(InvalidGenerators):
            parse_generator_table(bad)

    def test_rejects_stray_line(self):
        with pytest.raises(MalformedToken):
            parse_generator_table("gnr n=2 r=1\nq1 -> q1\n")


g_letters = st.sampled_from(
    ["A", "B", "C", "D", "A^-1", "B^-1", "C^-1", "D^-1"])
g_words = st.lists(g_letters, max_size=4).map(" ".join)


@given(g_words)
@settings(max_examples=60, deadline=None)
def test_identity_agrees_with_sequence_oracle(text):
    e = ev(text)
    assert is_identity(e) == is_identity_sequences(e)


@given(g_words)
@settings(max_examples=40, deadline=None)
def test_reduction_invariant_under_sequences(text):
    e = ev(text)
    for s in enumerate_M(2, 1, k_bound(e) + 1):
        assert apply_to_sequence(reduce_map(e), s) == apply_to_sequence(e, s)


@given(g_words, g_words, g_words)
@settings(max_examples=30, deadline=None)
def test_associativity(t1, t2, t3):
    a, b, c = ev(t1), ev(t2), ev(t3)
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(g_words)
@settings(max_examples=40, deadline=None)
def test_inverse_word_gives_inverse_element(text):
    e = ev(text)
    f = word_to_element(invert_word(wv(text)), GENS)
    assert compose(e, f) == identity(2, 1)
    assert compose(f, e) == identity(2, 1)
    assert f == inverse(e)
