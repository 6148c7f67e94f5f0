import pytest
from hypothesis import given
from hypothesis import strategies as st

from nefwci.core import (
    CISpec,
    WeightSystem,
    analyze,
    divisibility_condition,
    divisibility_violations,
    fano_index,
    is_linear_cone,
    is_well_formed_space,
    parse_spec,
    render_spec,
    triple_coprime,
    triple_violation,
)
from nefwci.errors import ParseError, PreconditionError

from oracles import divisibility_brute, well_formed_brute


def test_parse_expands_and_sorts():
    s = parse_spec("P(1^3,2^2,3^2)/6,6")
    assert s.weights.weights == (1, 1, 1, 2, 2, 3, 3)
    assert s.degrees == (6, 6)


def test_parse_codimension_zero():
    s = parse_spec("P(1,1)/")
    assert s.weights.weights == (1, 1) and s.degrees == ()


def test_parse_nonsmooth_family():
    s = parse_spec("P(1^10,6,10,15)/2,3,5,30")
    assert len(s.weights) == 13 and len(s.degrees) == 4


def test_parse_reorders_input():
    s = parse_spec("P(3, 1, 2^2)/ 6,4")
    assert s.weights.weights == (1, 2, 2, 3) and s.degrees == (4, 6)


def test_parse_projective_shorthand():
    assert parse_spec("P^5/3") == parse_spec("P(1^6)/3")


@pytest.mark.parametrize(
    "text, pos",
    [("P(1^^)/", 4), ("P(1,0)/2", 4), ("P(1,1)/-2", 7), ("Q(1)/", 0), ("P(1,1)/2,", 9), ("P(1,1", 5)],
)
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_spec(text)
    assert err.value.position == pos
    assert "^" in err.value.pointer()


def test_parse_rejects_dimension_zero():
    with pytest.raises(ParseError):
        parse_spec("P(1,1)/2")


def test_render_uses_exponents():
    assert render_spec(parse_spec("P(3,1,1,2,1,2,3)/6,6")) == "P(1^3,2^2,3^2)/6,6"


@pytest.mark.parametrize(
    "weights, expected",
    [((1, 1, 1, 2, 2, 3, 3), True), ((1, 2, 2), False), ((2, 3, 5), True), ((6, 10, 15), False),
     ((2, 4), False)],
)
def test_well_formed(weights, expected):
    assert is_well_formed_space(WeightSystem(weights)) is expected
    assert well_formed_brute(weights) is expected


def test_well_formed_needs_two_weights():
    with pytest.raises(PreconditionError):
        is_well_formed_space(WeightSystem((1,)))


@pytest.mark.parametrize(
    "text, expected",
    [("P(1^10,6,10,15)/2,3,5,30", True), ("P(1,2,2)/3", False), ("P(1,1,1)/2", True),
     ("P(1^3,2^2,3^2)/6,6", True), ("P(1^3,2^2,3^2)/6,7", False)],
)
def test_divisibility(text, expected):
    s = parse_spec(text)
    assert divisibility_condition(s) is expected
    assert divisibility_brute(s.weights.weights, s.degrees) is expected


def test_divisibility_witness():
    (idx, delta), *_ = divisibility_violations(parse_spec("P(1,2,2)/3"))
    assert delta == 2 and len(idx) in (1, 2)


@pytest.mark.parametrize(
    "text, index", [("P(1^3,2^2,3^2)/6,6", 1), ("P(1^7)/2,2", 3), ("P(1^10,6,10,15)/2,3,5,30", 1)]
)
def test_fano_index(text, index):
    assert fano_index(parse_spec(text)) == index


@pytest.mark.parametrize(
    "text, cone", [("P(1^5,2)/6", False), ("P(1^5,2)/2", True), ("P(1^3,2^2,3^2)/6,6", False)]
)
def test_linear_cone(text, cone):
    assert is_linear_cone(parse_spec(text)) is cone


@pytest.mark.parametrize(
    "weights, ok", [((1, 1, 6, 10, 15), True), ((2, 4, 6), False), ((6, 15, 70, 7, 17, 17), True)]
)
def test_triple_coprime(weights, ok):
    assert triple_coprime(WeightSystem(weights)) is ok
    assert (triple_violation(WeightSystem(weights)) is None) is ok


def test_analyze_row_one():
    r = analyze(parse_spec("P(1^3,2^2,3^2)/6,6"))
    assert r.well_formed_space and r.divisibility_ok and not r.linear_cone
    assert (r.fano_index, r.dimension, r.unit_count) == (1, 4, 3)
    assert r.favorable


def test_analyze_line_and_family():
    r = analyze(parse_spec("P(1,1)/"))
    assert (r.fano_index, r.dimension) == (2, 1)
    r = analyze(parse_spec("P(1^10,6,10,15)/2,3,5,30"))
    assert r.divisibility_ok and r.fano_index == 1 and r.dimension == 8


# -- properties -------------------------------------------------------------

weights_st = st.lists(st.integers(1, 12), min_size=2, max_size=7)
degrees_st = st.lists(st.integers(1, 30), max_size=3)


@st.composite
def specs(draw):
    w = draw(weights_st)
    d = draw(st.lists(st.integers(1, 30), max_size=len(w) - 2))
    return CISpec.of(w, d)


@given(specs())
def test_render_parse_roundtrip(spec):
    text = render_spec(spec)
    assert parse_spec(text) == spec
    assert render_spec(parse_spec(text)) == text


@given(specs(), st.integers(1, 30))
def test_fano_index_additive(spec, d):
    more_units = CISpec.of(spec.weights.weights + (1,), spec.degrees)
    assert fano_index(more_units) == fano_index(spec) + 1
    more_degrees = CISpec.of(spec.weights.weights + (1,), spec.degrees + (d,))
    assert fano_index(more_degrees) == fano_index(more_units) - d


@given(specs())
def test_divisibility_monotone_under_units(spec):
    more = CISpec.of(spec.weights.weights + (1,), spec.degrees)
    assert divisibility_condition(more) == divisibility_condition(spec)


@given(specs())
def test_divisibility_matches_brute_force(spec):
    assert divisibility_condition(spec) == divisibility_brute(spec.weights.weights, spec.degrees)


@given(weights_st)
def test_well_formed_matches_brute_force(w):
    assert is_well_formed_space(WeightSystem(w)) == well_formed_brute(sorted(w))
