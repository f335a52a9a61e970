import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qshuffle.ncpoly import (
    NCPolynomial,
    TensorPolynomial,
    coproduct,
    exp_trunc,
    is_primitive,
    log_trunc,
    pairing,
    parse_poly,
    poly_from_json,
    poly_str,
    poly_to_json,
    product,
)
from qshuffle.words import Word, words_up_to

one = NCPolynomial.one()


def mono(*letters):
    return NCPolynomial.word(Word(letters))


small_words = st.lists(st.integers(1, 4), min_size=0, max_size=4).map(tuple).filter(
    lambda t: sum(t) <= 5
)
word_pairs = st.tuples(small_words, small_words).filter(lambda p: sum(p[0]) + sum(p[1]) <= 6)


# -- independent enumeration oracles ----------------------------------------
# Shuffle: choose the positions occupied by the first word.  Quasi-shuffle:
# choose two position subsets covering every slot; slots hit twice carry the
# sum of the two letters.  Both are structurally unlike the library recursion.

def shuffle_oracle(u: tuple, v: tuple) -> dict:
    total = len(u) + len(v)
    out: dict[tuple, int] = {}
    for positions in itertools.combinations(range(total), len(u)):
        w = [0] * total
        ui = iter(u)
        vi = iter(v)
        pos = set(positions)
        for p in range(total):
            w[p] = next(ui) if p in pos else next(vi)
        key = tuple(w)
        out[key] = out.get(key, 0) + 1
    return out


def stuffle_oracle(u: tuple, v: tuple) -> dict:
    out: dict[tuple, int] = {}
    for length in range(max(len(u), len(v)), len(u) + len(v) + 1):
        for a_pos in itertools.combinations(range(length), len(u)):
            for b_pos in itertools.combinations(range(length), len(v)):
                if set(a_pos) | set(b_pos) != set(range(length)):
                    continue
                w = [0] * length
                for p, letter in zip(a_pos, u):
                    w[p] += letter
                for p, letter in zip(b_pos, v):
                    w[p] += letter
                key = tuple(w)
                out[key] = out.get(key, 0) + 1
    return out


@given(word_pairs)
@settings(max_examples=60)
def test_shuffle_matches_enumeration_oracle(pair):
    u, v = pair
    got = product(mono(*u), mono(*v), "shuffle")
    assert {w.letters: c for w, c in got.terms.items()} == {
        k: Fraction(c) for k, c in shuffle_oracle(u, v).items()
    }


@given(word_pairs)
@settings(max_examples=60)
def test_stuffle_matches_enumeration_oracle(pair):
    u, v = pair
    got = product(mono(*u), mono(*v), "stuffle")
    assert {w.letters: c for w, c in got.terms.items()} == {
        k: Fraction(c) for k, c in stuffle_oracle(u, v).items()
    }


# -- frozen product examples --------------------------------------------------

def test_shuffle_square_of_letter():
    assert mono(1).shuffle(mono(1)) == 2 * mono(1, 1)


def test_stuffle_of_two_letters():
    assert mono(1).stuffle(mono(2)) == mono(1, 2) + mono(2, 1) + mono(3)


def test_stuffle_y2_with_y2y1():
    expected = 2 * mono(2, 2, 1) + mono(2, 1, 2) + mono(4, 1) + mono(2, 3)
    assert mono(2).stuffle(mono(2, 1)) == expected


def test_empty_word_is_the_unit_for_all_products():
    w = mono(3, 1)
    for kind in ("concat", "shuffle", "stuffle"):
        assert product(w, one, kind) == w
        assert product(one, w, kind) == w


def test_unknown_product_kind():
    with pytest.raises(ValueError):
        product(one, one, "cup")


@given(word_pairs)
@settings(max_examples=40)
def test_shuffle_and_stuffle_commute(pair):
    u, v = pair
    for kind in ("shuffle", "stuffle"):
        assert product(mono(*u), mono(*v), kind) == product(mono(*v), mono(*u), kind)


@given(st.tuples(small_words, small_words, small_words).filter(lambda t: sum(map(sum, t)) <= 6))
@settings(max_examples=40)
def test_products_are_associative(triple):
    u, v, w = (mono(*t) for t in triple)
    for kind in ("concat", "shuffle", "stuffle"):
        assert product(product(u, v, kind), w, kind) == product(u, product(v, w, kind), kind)


@given(word_pairs)
@settings(max_examples=40)
def test_products_are_weight_homogeneous(pair):
    u, v = pair
    target = sum(u) + sum(v)
    for kind in ("concat", "shuffle", "stuffle"):
        got = product(mono(*u), mono(*v), kind)
        assert all(w.weight == target for w in got.terms)


# -- coproducts ---------------------------------------------------------------

def tensor(p, q):
    return TensorPolynomial.tensor(p, q)


def test_stuffle_coproduct_of_y2():
    got = coproduct(mono(2), "stuffle")
    assert got == tensor(mono(2), one) + tensor(one, mono(2)) + tensor(mono(1), mono(1))


def test_deconcatenation_of_y1y2():
    got = coproduct(mono(1, 2), "concat")
    assert got == tensor(one, mono(1, 2)) + tensor(mono(1), mono(2)) + tensor(mono(1, 2), one)


def test_plus_coproduct_of_y3():
    got = coproduct(mono(3), "plus")
    assert got == tensor(mono(1), mono(2)) + tensor(mono(2), mono(1))


def test_plus_coproduct_rejects_longer_words():
    with pytest.raises(ValueError):
        coproduct(mono(1, 1), "plus")
    assert coproduct(mono(1), "plus").is_zero()  # no splittings of 1


def test_shuffle_coproduct_of_letters_is_primitive():
    for n in range(1, 5):
        assert is_primitive(mono(n), "shuffle")


@given(small_words)
@settings(max_examples=40)
def test_coproducts_are_coassociative(letters):
    for kind in ("concat", "shuffle", "stuffle"):
        t = coproduct(mono(*letters), kind)
        lhs: dict = {}
        rhs: dict = {}
        for (u, v), c in t.terms.items():
            for (a, b), d in coproduct(NCPolynomial.word(u), kind).terms.items():
                key = (a, b, v)
                lhs[key] = lhs.get(key, Fraction(0)) + c * d
            for (a, b), d in coproduct(NCPolynomial.word(v), kind).terms.items():
                key = (u, a, b)
                rhs[key] = rhs.get(key, Fraction(0)) + c * d
        assert {k: v for k, v in lhs.items() if v} == {k: v for k, v in rhs.items() if v}


@given(small_words)
@settings(max_examples=40)
def test_counit_laws(letters):
    p = mono(*letters)
    for kind in ("concat", "shuffle", "stuffle"):
        t = coproduct(p, kind)
        left = NCPolynomial([(v, c) for (u, v), c in t.terms.items() if len(u) == 0])
        right = NCPolynomial([(u, c) for (u, v), c in t.terms.items() if len(v) == 0])
        assert left == p and right == p


@given(word_pairs)
@settings(max_examples=30)
def test_shuffle_and_stuffle_coproducts_are_concat_morphisms(pair):
    u, v = (mono(*t) for t in pair)
    for kind in ("shuffle", "stuffle"):
        assert coproduct(u * v, kind) == coproduct(u, kind) * coproduct(v, kind)


def test_adjunction_exhaustive_weight_5():
    ws = words_up_to(5)
    for kind in ("shuffle", "stuffle"):
        for w in ws:
            t = coproduct(NCPolynomial.word(w), kind)
            for u in ws:
                for v in ws:
                    if u.weight + v.weight != w.weight:
                        continue
                    lhs = t.coeff(u, v)
                    rhs = product(NCPolynomial.word(u), NCPolynomial.word(v), kind).coeff(w)
                    assert lhs == rhs, (kind, w, u, v)


# -- pairing ------------------------------------------------------------------

def test_pairing_examples():
    assert pairing(mono(1, 2), mono(1, 2)) == 1
    assert pairing(mono(1).shuffle(mono(2)), mono(2, 1)) == 1
    assert pairing(mono(3, 1), NCPolynomial.zero()) == 0


def test_pairing_is_bilinear():
    p = 2 * mono(1) - mono(2)
    q = mono(1) + 3 * mono(2)
    assert pairing(p, q) == 2 * 1 + (-1) * 3


# -- exp / log ----------------------------------------------------------------

def test_exp_of_letter():
    assert exp_trunc(mono(1), 2) == one + mono(1) + mono(1, 1) / 2


def test_log_of_one_plus_letter():
    expected = mono(1) - mono(1, 1) / 2 + mono(1, 1, 1) / 3
    assert log_trunc(one + mono(1), 3) == expected


def test_exp_log_round_trip():
    p = mono(2) + mono(1)
    assert log_trunc(exp_trunc(p, 4), 4) == p


def test_exp_log_preconditions():
    with pytest.raises(ValueError):
        exp_trunc(one + mono(1), 3)
    with pytest.raises(ValueError):
        log_trunc(mono(1), 3)


@settings(max_examples=25)
@given(
    st.lists(
        st.tuples(small_words.filter(lambda t: 0 < sum(t) <= 4), st.integers(-3, 3)),
        min_size=1,
        max_size=4,
    )
)
def test_exp_log_round_trip_random(term_list):
    p = NCPolynomial([(Word(w), c) for w, c in term_list]).truncate(4)
    assert log_trunc(exp_trunc(p, 4), 4) == p
    assert exp_trunc(log_trunc(one + p, 4), 4) == one + p


# -- arithmetic and serialization ----------------------------------------------

def test_polynomial_arithmetic():
    p = mono(1) + mono(2)
    assert p - p == NCPolynomial.zero()
    assert -p + p == NCPolynomial.zero()
    assert (p * 0).is_zero()
    assert p / 2 + p / 2 == p
    assert p.counit() == 0
    assert (one + p).counit() == 1
    assert p.max_weight() == 2
    assert p.coeff((2,)) == 1


def test_canonical_text_form():
    p = one + 2 * mono(1, 1) + mono(2) / 2
    assert poly_str(p) == "1 + 2·[1 1] + 1/2·[2]"
    assert poly_str(NCPolynomial.zero()) == "0"
    assert poly_str(-mono(1) + mono(2)) == "-[1] + [2]"


def test_text_parse_examples():
    assert parse_poly("1 + 2·[1 1] + 1/2·[2]") == one + 2 * mono(1, 1) + mono(2) / 2
    assert parse_poly("-[1] + [2]") == -mono(1) + mono(2)
    assert parse_poly("0").is_zero()


@settings(max_examples=40)
@given(
    st.lists(
        st.tuples(small_words, st.fractions(max_denominator=6)),
        max_size=5,
    )
)
def test_text_and_json_round_trips(term_list):
    p = NCPolynomial([(Word(w), c) for w, c in term_list])
    assert parse_poly(poly_str(p)) == p
    assert poly_from_json(poly_to_json(p)) == p


def test_tensor_polynomial_basics():
    t = tensor(mono(1), mono(2)) + tensor(mono(2), mono(1))
    assert t.coeff((1,), (2,)) == 1
    assert (t - t).is_zero()
    u = tensor(one, one)
    assert t * u == t
    assert 2 * t == t + t
