import pytest
from hypothesis import given
from hypothesis import strategies as st

from trisectlab.braid import (
    A,
    BraidedSurfaceDescriptor,
    BraidWord,
    LaurentPoly,
    SingularEvent,
    alexander_polynomial,
    closure_component_count,
    event_to_braid,
    exponent_sum,
    identify_closure,
    jones_polynomial,
    linking_matrix,
    total_monodromy,
    underlying_permutation,
)


def B(text, n=None):
    return BraidWord.parse(text, n)


def test_parse_and_print():
    b = B("s1 s2^-1 s1^3")
    assert b.strands == 3
    assert len(b) == 5
    assert str(b) == "s1 s2^-1 s1^3"
    with pytest.raises(ValueError):
        B("t1")
    with pytest.raises(ValueError):
        B("s3", 3)


def test_events_compile_to_powers():
    assert str(event_to_braid(SingularEvent("tangency", 1))) == "s1"
    assert str(event_to_braid(SingularEvent("positive_node", 2))) == "s2^2"
    assert str(event_to_braid(SingularEvent("negative_node", 1))) == "s1^-2"
    assert str(event_to_braid(SingularEvent("cusp", 1))) == "s1^3"
    with pytest.raises(ValueError):
        SingularEvent("swallowtail", 1)


def test_descriptor_monodromy():
    d = BraidedSurfaceDescriptor.from_json(
        {"strands": 3, "sequence": [{"braid": "s2"}, {"event": "cusp", "at": 1}, {"event": "positive_node", "at": 2}]}
    )
    assert str(total_monodromy(d)) == "s2 s1^3 s2^2"
    with pytest.raises(ValueError):
        BraidedSurfaceDescriptor.from_json({"strands": 2, "sequence": [{"event": "cusp", "at": 2}]})


def test_permutation_and_components():
    assert str(underlying_permutation(B("s1 s2"))) == "(1 2 3)"
    assert closure_component_count(B("s1^2")) == 2
    assert closure_component_count(B("s1^3")) == 1
    assert closure_component_count(B("", 3)) == 3
    assert exponent_sum(B("s1^3 s2^-1")) == 2


def test_local_model_identifications():
    assert identify_closure(B("s1")).tag == "unknot"
    assert identify_closure(B("s1^2")).tag == "hopf_link_positive"
    assert identify_closure(B("s1^-2")).tag == "hopf_link_negative"
    assert identify_closure(B("s1^3")).tag == "trefoil_right"
    assert identify_closure(B("s1^-3")).tag == "trefoil_left"
    assert identify_closure(B("s1 s2")).tag == "unknot"


def test_known_alexander_polynomials():
    # standard tabulated values
    assert alexander_polynomial(B("s1^3")).coefficients() == [1, -1, 1]
    assert alexander_polynomial(B("s1^5")).coefficients() == [1, -1, 1, -1, 1]
    assert alexander_polynomial(B("s1 s2^-1 s1 s2^-1")).coefficients() == [1, -3, 1]
    assert alexander_polynomial(B("s1^2")).coefficients() == [1, -1]
    assert alexander_polynomial(B("", 2)).is_zero()  # split link


def test_known_jones_polynomials():
    # right trefoil t + t^3 - t^4 and figure eight t^-2 - t^-1 + 1 - t + t^2, with t = A^-4
    assert jones_polynomial(B("s1^3")) == LaurentPoly({-4: 1, -12: 1, -16: -1})
    assert jones_polynomial(B("s1 s2^-1 s1 s2^-1")) == LaurentPoly({8: 1, 4: -1, 0: 1, -4: -1, -8: 1})
    assert jones_polynomial(B("s1 s2 s3")) == 1


def test_linking_numbers():
    assert linking_matrix(B("s1^2"))[0][1] == 1
    assert linking_matrix(B("s1^-4"))[0][1] == -2
    assert linking_matrix(B("s1^2 s2^2"))[0][1] == 1


def test_size_limit():
    with pytest.raises(ValueError):
        identify_closure(B("s1 s2 s3 s4 s5 s6"))
    with pytest.raises(ValueError):
        identify_closure(B("s1^25"))


def test_laurent_division():
    p = LaurentPoly.from_coeffs([1, 0, 0, -1])  # 1 - t^3
    q = LaurentPoly.from_coeffs([1, -1])
    assert p.exact_divide(q) == LaurentPoly.from_coeffs([1, 1, 1])
    with pytest.raises(ArithmeticError):
        LaurentPoly.from_coeffs([1, 0, 1]).exact_divide(q)


braids = st.integers(2, 4).flatmap(
    lambda n: st.lists(st.tuples(st.integers(1, n - 1), st.sampled_from((1, -1))), max_size=8).map(
        lambda ls: BraidWord(n, tuple(ls))
    )
)


@given(braids, st.data())
def test_jones_skein_relation(b, data):
    """A^4 V(L+) - A^-4 V(L-) = (A^-2 - A^2) V(L0) at one crossing."""
    n = b.strands
    i = data.draw(st.integers(1, n - 1))
    pos = data.draw(st.integers(0, len(b)))
    pre, post = BraidWord(n, b.letters[:pos]), BraidWord(n, b.letters[pos:])
    plus = pre + BraidWord(n, ((i, 1),)) + post
    minus = pre + BraidWord(n, ((i, -1),)) + post
    zero = pre + post
    lhs = A ** 4 * jones_polynomial(plus) - A ** -4 * jones_polynomial(minus)
    assert lhs == (A ** -2 - A ** 2) * jones_polynomial(zero)


@given(braids)
def test_invariants_unchanged_by_conjugation_and_mirror(b):
    n = b.strands
    s = BraidWord(n, ((1, 1),))
    conj = s + b + s.inverse()
    assert alexander_polynomial(conj) == alexander_polynomial(b)
    assert jones_polynomial(conj) == jones_polynomial(b)
    assert jones_polynomial(b.mirror()) == jones_polynomial(b).substitute_inverse()


@given(braids)
def test_markov_stabilisation(b):
    n = b.strands
    up = BraidWord(n + 1, b.letters) + BraidWord(n + 1, ((n, 1),))
    assert alexander_polynomial(up) == alexander_polynomial(b)
    assert jones_polynomial(up) == jones_polynomial(b)


@given(braids)
def test_alexander_symmetric_and_knot_normalised(b):
    d = alexander_polynomial(b)
    if not d.is_zero():
        assert d.substitute_inverse().normalized() == d
    if closure_component_count(b) == 1:
        assert sum(d.coefficients()) in (1, -1)
