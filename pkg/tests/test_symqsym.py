import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qshuffle.bases import pi1, r_elements
from qshuffle.ncpoly import NCPolynomial, coproduct, product
from qshuffle.symqsym import (
    QSeries,
    QSymElement,
    SymElement,
    cauchy_check,
    convert,
    decode_M,
    decode_S,
    element_str,
    element_to_json,
    encode_M,
    encode_S,
    hall_littlewood_check,
    hl_product,
    lambda_in_phi_oracle,
    lambda_in_psi_oracle,
    parse_element,
    pairing_ext,
    phi_in_lambda_oracle,
    psi_in_lambda_oracle,
    qsym_coproduct,
    qsym_product,
    specialize_Mq,
    sym_coproduct,
)
from qshuffle.words import Word, compositions_up_to, stats

S = lambda *parts: SymElement.single(tuple(parts), "S")
M = lambda *parts: QSymElement.single(tuple(parts), "M")

compositions = st.lists(st.integers(1, 3), min_size=0, max_size=4).map(tuple).filter(
    lambda c: sum(c) <= 6
)


# -- basis changes ------------------------------------------------------------

def test_psi_2_in_complete_basis():
    got = convert(SymElement.single((2,), "Psi"), "S")
    assert got == 2 * S(2) - S(1, 1)


def test_lambda_2_in_complete_basis():
    got = convert(SymElement.single((2,), "Lambda"), "S")
    assert got == S(1, 1) - S(2)


def test_phi_2_both_directions():
    assert convert(SymElement.single((2,), "Phi"), "S") == 2 * S(2) - S(1, 1)
    got = convert(S(2), "Phi")
    phi = lambda *p: SymElement.single(tuple(p), "Phi")
    assert got == phi(2) / 2 + phi(1, 1) / 2


def test_s11_in_ribbons():
    got = convert(S(1, 1), "Rib")
    rib = lambda *p: SymElement.single(tuple(p), "Rib")
    assert got == rib(1, 1) + rib(2)


def test_lambda_3_in_complete_basis():
    got = convert(SymElement.single((3,), "Lambda"), "S")
    assert got == S(1, 1, 1) - S(1, 2) - S(2, 1) + S(3)


def test_round_trips_weight_5():
    for basis in ("Lambda", "Psi", "Phi", "Rib"):
        for comp in compositions_up_to(5):
            e = SymElement.single(comp, "S")
            assert convert(convert(e, basis), "S") == e, (basis, comp)
            b = SymElement.single(comp, basis)
            assert convert(convert(b, "S"), basis) == b, (basis, comp)
    for comp in compositions_up_to(5):
        e = QSymElement.single(comp, "M")
        assert convert(convert(e, "F"), "M") == e, comp


@settings(max_examples=25)
@given(
    st.lists(st.tuples(compositions, st.fractions(max_denominator=4)), max_size=4),
    st.sampled_from(("Lambda", "Psi", "Phi", "Rib")),
)
def test_round_trips_random_elements(term_list, basis):
    e = SymElement(term_list, "S")
    assert convert(convert(e, basis), "S") == e


def test_degree_one_generators_coincide():
    expected = S(1)
    for basis in ("Lambda", "Psi", "Phi", "Rib"):
        assert convert(SymElement.single((1,), basis), "S") == expected


def test_convert_validates_targets():
    with pytest.raises(ValueError):
        convert(S(1), "M")
    with pytest.raises(ValueError):
        convert(M(1), "S")
    with pytest.raises(ValueError):
        SymElement.single((1,), "Q")


def test_conversions_are_weight_homogeneous():
    for basis in ("Lambda", "Psi", "Phi", "Rib"):
        for comp in compositions_up_to(5, include_empty=False):
            e = convert(SymElement.single(comp, basis), "S")
            assert all(sum(c) == sum(comp) for c in e.terms)


def test_mirror_equivariance_where_it_holds():
    # Lambda, Phi and Rib expansions commute with the mirror map; the first
    # power sums do not (their S-expansion weights the *last* part of each
    # block), so Psi is checked separately below.
    for basis in ("Lambda", "Phi", "Rib"):
        for comp in compositions_up_to(4, include_empty=False):
            e = convert(SymElement.single(comp, basis), "S")
            mirrored = convert(SymElement.single(stats(comp).mirror, basis), "S")
            assert {stats(c).mirror: v for c, v in e.terms.items()} == mirrored.terms, (
                basis,
                comp,
            )


def test_mirror_exchanges_first_power_sums_with_left_seeds():
    from qshuffle.bases import l_elements

    psi3 = convert(SymElement.single((3,), "Psi"), "S")
    mirrored = SymElement({stats(c).mirror: v for c, v in psi3.terms.items()}, "S")
    assert mirrored != psi3  # Psi is *not* mirror-equivariant
    # mirror reversal sends the R-seeded primitives to the L-seeded ones
    for comp in compositions_up_to(4, include_empty=False):
        ls = l_elements(max(comp))
        psi = convert(SymElement.single(comp, "Psi"), "S")
        reversed_l = NCPolynomial.one()
        for part in stats(comp).mirror:
            reversed_l = reversed_l * ls[part - 1]
        got = SymElement({stats(c).mirror: v for c, v in psi.terms.items()}, "S")
        assert got == encode_S(reversed_l), comp


# -- displayed-pair oracles (mirror statistics) --------------------------------

def test_mirror_oracles_match_s_routed_conversions():
    for comp in compositions_up_to(4):
        lam = SymElement.single(comp, "Lambda")
        psi = SymElement.single(comp, "Psi")
        phi = SymElement.single(comp, "Phi")
        assert lambda_in_psi_oracle(comp) == convert(lam, "Psi"), comp
        assert psi_in_lambda_oracle(comp) == convert(psi, "Lambda"), comp
        assert lambda_in_phi_oracle(comp) == convert(lam, "Phi"), comp
        assert phi_in_lambda_oracle(comp) == convert(phi, "Lambda"), comp


def test_literal_printed_sign_fails_at_weight_2():
    lam2 = SymElement.single((2,), "Lambda")
    assert lambda_in_psi_oracle((2,), literal_sign=True) != convert(lam2, "Psi")
    assert lambda_in_phi_oracle((2,), literal_sign=True) != convert(lam2, "Phi")


# -- products -------------------------------------------------------------------

def test_m_star_examples():
    assert qsym_product(M(1), M(1)) == 2 * M(1, 1) + M(2)
    assert qsym_product(M(1), M(2)) == M(1, 2) + M(2, 1) + M(3)
    assert qsym_product(M(1, 2), QSymElement.unit("M")) == M(1, 2)


@settings(max_examples=30)
@given(compositions, compositions)
def test_m_star_is_commutative_and_matches_word_stuffle(a, b):
    lhs = qsym_product(M(*a), M(*b))
    assert lhs == qsym_product(M(*b), M(*a))
    word_side = encode_M(product(NCPolynomial.word(a), NCPolynomial.word(b), "stuffle"))
    assert lhs == word_side


def test_sym_product_is_concatenation_in_multiplicative_bases():
    assert S(2) * S(1, 1) == S(2, 1, 1)
    psi = lambda *p: SymElement.single(tuple(p), "Psi")
    assert psi(2) * psi(1) == psi(2, 1)


def test_ribbon_product_routes_through_s():
    rib = lambda *p: SymElement.single(tuple(p), "Rib")
    # classical multiplication of ribbons: R_1 R_1 = R_11 + R_2
    assert rib(1) * rib(1) == rib(1, 1) + rib(2)


def test_mixed_basis_addition_rejected():
    with pytest.raises(ValueError):
        S(1) + SymElement.single((1,), "Psi")


# -- coproducts -------------------------------------------------------------------

def test_sym_coproduct_of_s2():
    got = sym_coproduct(S(2))
    assert got == {
        ((), (2,)): Fraction(1),
        ((1,), (1,)): Fraction(1),
        ((2,), ()): Fraction(1),
    }


def test_power_sums_are_primitive():
    for basis in ("Psi", "Phi"):
        for n in range(1, 7):
            x = SymElement.single((n,), basis)
            got = sym_coproduct(x)
            xs = convert(x, "S").terms
            expected: dict = {}
            for comp, c in xs.items():
                for key in ((comp, ()), ((), comp)):
                    expected[key] = expected.get(key, Fraction(0)) + c
            assert got == {k: v for k, v in expected.items() if v}, (basis, n)


def test_qsym_coproduct_deconcatenates():
    got = qsym_coproduct(M(1, 2))
    assert got == {
        ((), (1, 2)): Fraction(1),
        ((1,), (2,)): Fraction(1),
        ((1, 2), ()): Fraction(1),
    }


# -- pairing ----------------------------------------------------------------------

def test_pairing_is_kronecker_on_s_and_m():
    assert pairing_ext(S(1, 2), M(1, 2)) == 1
    assert pairing_ext(S(1, 2), M(2, 1)) == 0
    assert pairing_ext(S(), M()) == 1


def test_ribbon_fundamental_duality_weight_5():
    comps = compositions_up_to(5)
    for i in comps:
        rib = SymElement.single(i, "Rib")
        for j in comps:
            f = QSymElement.single(j, "F")
            assert pairing_ext(rib, f) == (1 if i == j else 0), (i, j)


def test_coproduct_product_adjunction_weight_4():
    comps = compositions_up_to(4)
    for k in comps:
        t = sym_coproduct(SymElement.single(k, "S"))
        for i in comps:
            for j in comps:
                if sum(i) + sum(j) != sum(k):
                    continue
                star = qsym_product(M(*i), M(*j))
                assert t.get((i, j), Fraction(0)) == star.coeff(k), (k, i, j)


def test_qsym_coproduct_concat_adjunction_weight_4():
    comps = compositions_up_to(4)
    for k in comps:
        t = qsym_coproduct(QSymElement.single(k, "M"))
        for i in comps:
            for j in comps:
                if sum(i) + sum(j) != sum(k):
                    continue
                lhs = t.get((i, j), Fraction(0))
                rhs = Fraction(1 if i + j == k else 0)
                assert lhs == rhs, (k, i, j)


# -- word encodings -----------------------------------------------------------------

def test_encode_words():
    assert encode_S(Word((2, 1))) == S(2, 1)
    assert encode_M(Word((2, 1))) == M(2, 1)
    assert decode_S(S(2, 1)) == NCPolynomial.word((2, 1))
    assert decode_M(M(2, 1)) == NCPolynomial.word((2, 1))


def test_encode_r2_is_the_first_power_sum():
    r2 = r_elements(2)[1]
    assert encode_S(r2) == convert(SymElement.single((2,), "Psi"), "S")


def test_encode_pi1_y2_is_half_the_second_power_sum():
    got = encode_S(pi1(Word((2,))))
    assert got == convert(SymElement.single((2,), "Phi"), "S") / 2


def test_power_sum_images_weight_5():
    rs = r_elements(5)
    for comp in compositions_up_to(5, include_empty=False):
        r_monomial = NCPolynomial.one()
        pi_monomial = NCPolynomial.one()
        for part in comp:
            r_monomial = r_monomial * rs[part - 1]
            pi_monomial = pi_monomial * pi1(Word((part,)))
        assert encode_S(r_monomial) == convert(SymElement.single(comp, "Psi"), "S"), comp
        expected = convert(SymElement.single(comp, "Phi"), "S") / stats(comp).pi
        assert encode_S(pi_monomial) == expected, comp


def test_encodings_are_hopf_morphisms_weight_4():
    from qshuffle.words import words_up_to

    ws = words_up_to(4)
    for u in ws:
        for v in ws:
            if u.weight + v.weight > 4:
                continue
            pu, pv = NCPolynomial.word(u), NCPolynomial.word(v)
            assert encode_S(pu * pv) == encode_S(pu) * encode_S(pv)
            assert encode_M(product(pu, pv, "stuffle")) == encode_M(pu) * encode_M(pv)
    for u in ws:
        got = sym_coproduct(encode_S(NCPolynomial.word(u)))
        expected: dict = {}
        for (a, b), c in coproduct(NCPolynomial.word(u), "stuffle").terms.items():
            key = (a.letters, b.letters)
            expected[key] = expected.get(key, Fraction(0)) + c
        assert got == {k: v for k, v in expected.items() if v}, u


# -- q-specialization ------------------------------------------------------------------

def specialize_oracle(comp, bound):
    # brute force over decreasing exponent tuples via combinations
    acc = {}
    r = len(comp)
    for exps in itertools.combinations(range(bound), r):
        decreasing = tuple(reversed(exps))
        e = sum(n * i for n, i in zip(decreasing, comp))
        if e < bound:
            acc[e] = acc.get(e, Fraction(0)) + 1
    return acc


def test_specialize_examples():
    got = specialize_Mq((1,), 4)
    assert got.coeffs == {0: 1, 1: 1, 2: 1, 3: 1}
    got = specialize_Mq((1, 1), 4)
    assert got.coeffs == {1: 1, 2: 1, 3: 2}
    assert specialize_Mq((), 4).coeffs == {0: 1}


@settings(max_examples=40)
@given(compositions.filter(lambda c: len(c) <= 3), st.integers(1, 9))
def test_specialize_matches_enumeration_oracle(comp, bound):
    assert specialize_Mq(comp, bound).coeffs == specialize_oracle(comp, bound)


def test_hall_littlewood_checks():
    assert hall_littlewood_check(2, 5)
    assert hall_littlewood_check(3, 8)


def test_hl_product_unit_coefficient():
    table = hl_product(2, 4)
    assert table[()] == QSeries.one(4)


def test_qseries_arithmetic_and_text():
    a = QSeries({0: 1, 2: Fraction(1, 2)}, 5)
    b = QSeries({1: 1}, 5)
    assert (a * b).coeffs == {1: 1, 3: Fraction(1, 2)}
    assert (a + b).coeffs == {0: 1, 1: 1, 2: Fraction(1, 2)}
    assert str(a) == "1 + 1/2·q^2"
    assert str(QSeries({}, 3)) == "0"


# -- Cauchy identity ---------------------------------------------------------------------

def test_cauchy_identity_weight_5():
    assert cauchy_check(5)


# -- text and JSON forms -------------------------------------------------------------------

def test_element_text_form():
    e = convert(SymElement.single((2,), "Lambda"), "S")
    assert element_str(e) == "S:(1,1) - S:(2)"
    assert element_str(SymElement.zero("S")) == "0"
    assert element_str(SymElement.unit("S") / 2) == "1/2"


def test_parse_element_forms():
    e = parse_element("S:(1,1) - S:(2)")
    assert e == convert(SymElement.single((2,), "Lambda"), "S")
    assert parse_element("(2)", default_basis="Psi") == SymElement.single((2,), "Psi")
    assert parse_element("2·M:(1) - 1/2·M:(2)") == 2 * M(1) - M(2) / 2
    with pytest.raises(ValueError):
        parse_element("S:(1) + M:(1)")
    with pytest.raises(ValueError):
        parse_element("(1,2)")  # no basis tag and no default


@settings(max_examples=30)
@given(
    st.lists(st.tuples(compositions, st.fractions(max_denominator=5)), max_size=4),
    st.sampled_from(("S", "Lambda", "Psi", "Phi", "Rib", "M", "F")),
)
def test_element_text_round_trip(term_list, basis):
    cls = SymElement if basis in ("S", "Lambda", "Psi", "Phi", "Rib") else QSymElement
    e = cls(term_list, basis)
    assert parse_element(element_str(e), default_basis=basis) == e


def test_element_json_form():
    e = convert(SymElement.single((2,), "Lambda"), "S")
    obj = element_to_json(e)
    assert obj["basis"] == "S"
    assert obj["terms"] == [
        {"composition": [1, 1], "coeff": "1"},
        {"composition": [2], "coeff": "-1"},
    ]
