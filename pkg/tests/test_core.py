import pytest
from hypothesis import given, strategies as st

from perisurf.core import (
    ConePair,
    DataSet,
    MarkedDataSet,
    ParseError,
    canonicalize,
    canonicalize_marked,
    classify,
    data_set_from_json,
    data_set_to_json,
    format_data_set,
    genus,
    mod_inverse,
    parse_data_set,
    validate,
)


def ds(text):
    return parse_data_set(text)


# --- mod_inverse -----------------------------------------------------------

def test_mod_inverse_values():
    assert mod_inverse(5, 6) == 5
    assert mod_inverse(3, 5) == 2
    assert mod_inverse(1, 7) == 1
    assert mod_inverse(2, 5) == 3


def test_mod_inverse_rejects_non_coprime():
    with pytest.raises(ValueError):
        mod_inverse(2, 4)


def test_mod_inverse_rejects_tiny_modulus():
    with pytest.raises(ValueError):
        mod_inverse(1, 1)


@given(st.integers(min_value=2, max_value=500), st.integers(min_value=1, max_value=499))
def test_mod_inverse_is_an_inverse(m, c):
    from math import gcd
    if gcd(c, m) != 1:
        with pytest.raises(ValueError):
            mod_inverse(c, m)
    else:
        inv = mod_inverse(c, m)
        assert 1 <= inv <= m - 1
        assert (c * inv) % m == 1


# --- genus -----------------------------------------------------------------

def test_genus_regressions():
    assert genus(ds("(2,0;(1,2),(1,2),(1,2),(1,2))")) == 1
    assert genus(ds("(5,0;(1,5),(3,5),(1,5))")) == 2
    assert genus(ds("(6,0;(1,2),(1,3),(1,6))")) == 1
    assert genus(ds("(6,0;(1,2),(2,3),(5,6))")) == 1
    assert genus(ds("(2,1,1;-)")) == 1
    assert genus(ds("(3,0;(1,3),(1,3),(1,3))")) == 1
    assert genus(ds("(3,1;(1,3),(2,3))")) == 3


def test_genus_of_free_rotation():
    assert genus(DataSet(4, 3, 1)) == 4 * 2 + 1
    assert genus(DataSet(7, 1, 2)) == 1


def test_genus_three_full_cones_of_odd_order():
    # (n,0;(c1,n),(c2,n),(c3,n)) acts on a surface of genus (n-1)/2
    for n, c in [(3, (1, 1, 1)), (5, (1, 3, 1)), (7, (1, 2, 4))]:
        d = DataSet(n, 0, 0, tuple(ConePair(ci, n) for ci in c))
        assert genus(d) == (n - 1) // 2


def test_genus_rejects_impossible_data():
    with pytest.raises(ValueError):
        genus(ds("(2,0,1;-)"))  # would need genus -1
    with pytest.raises(ValueError):
        genus(ds("(4,0;(1,4))"))  # fractional


def test_genus_ignores_residue_conditions():
    # genus depends only on degree, quotient genus and cone orders
    d = ds("(5,0;(3,5),(3,5),(1,5),(2,5))")
    assert not validate(d).valid
    assert genus(d) == 4


# --- validate ---------------------------------------------------------------

def test_validate_accepts_known_good_sets():
    for text in [
        "(2,0;(1,2),(1,2),(1,2),(1,2))",
        "(5,0;(1,5),(3,5),(1,5))",
        "(6,0;(1,2),(1,3),(1,6))",
        "(6,0;(1,2),(2,3),(5,6))",
        "(2,1,1;-)",
        "(3,0;(1,3),(1,3),(1,3))",
        "(3,0;(2,3),(2,3),(2,3))",
        "(3,1;(1,3),(2,3))",
        "(4,1;(1,2),(1,2))",
    ]:
        report = validate(ds(text))
        assert report.valid, (text, report.violations)


def test_validate_lcm_condition():
    report = validate(ds("(6,0;(1,2),(1,2),(1,6))"))
    assert not report.valid
    assert "iv" in report.ids()


def test_validate_residue_sum_condition():
    report = validate(ds("(5,0;(1,5),(1,5),(1,5))"))
    assert not report.valid
    assert report.ids() == ("v",)


def test_validate_rotation_interplay():
    assert "i" in validate(ds("(4,1,2;-)")).ids()      # gcd(2,4) != 1
    assert "i" in validate(ds("(2,1;-)")).ids()        # free action needs r > 0
    assert "i" in validate(ds("(6,0,1;(1,2),(1,3),(1,6))")).ids()
    assert "i" in validate(DataSet(3, 1, 5)).ids()     # r out of range


def test_validate_reports_every_violation():
    report = validate(ds("(6,0,1;(1,4),(3,4))"))
    ids = set(report.ids())
    assert {"i", "ii"} <= ids  # 4 does not divide 6, rotation nonzero


def test_validate_degree_one_has_no_valid_sets():
    assert not validate(DataSet(1, 0, 0)).valid
    assert not validate(DataSet(1, 3, 0)).valid


def test_validate_residue_range():
    report = validate(ds("(4,1;(3,2),(1,2))"))
    assert "iii" in report.ids()
    report = validate(DataSet(4, 1, 0, (ConePair(0, 2), ConePair(1, 2))))
    assert "iii" in report.ids()


def test_validate_marked_sets():
    good = ds("(6_-,0;(1,2),(2,3),(5,6),[3])")
    assert validate(good).valid
    dup = MarkedDataSet(good.base, "-", (1, 1))
    assert "marks" in validate(dup).ids()
    out_of_range = MarkedDataSet(good.base, "-", (7,))
    assert "marks" in validate(out_of_range).ids()
    empty = MarkedDataSet(good.base, "-", ())
    assert "marks" in validate(empty).ids()


# --- classify ---------------------------------------------------------------

def test_classify_free_rotations_are_rotational():
    assert classify(ds("(4,2,1;-)")).label == "rotational"


def test_classify_rotational_pattern():
    assert classify(ds("(3,1;(1,3),(2,3))")).label == "rotational"
    assert classify(ds("(5,0;(2,5),(3,5))")).label == "rotational"
    # at degree 2 only repeated blocks qualify ...
    assert classify(ds("(2,0;(1,2),(1,2),(1,2),(1,2))")).label == "rotational"
    # ... and above degree 2 only a single block does
    assert classify(ds("(5,0;(2,5),(3,5),(2,5),(3,5))")).label == "type2"


def test_classify_small_sphere_rotation_is_not_rotational():
    # the k = 1 block pattern is reserved for degrees above 2
    assert classify(ds("(2,0;(1,2),(1,2))")).label == "type2"


def test_classify_type1():
    assert classify(ds("(6,0;(1,2),(1,3),(1,6))")).label == "type1-irreducible"
    assert classify(ds("(5,0;(1,5),(3,5),(1,5))")).label == "type1-irreducible"
    assert classify(ds("(3,1;(1,3),(1,3),(1,3))")).label == "type1"


def test_classify_type2():
    assert classify(ds("(6,0;(1,2),(1,2),(1,3),(2,3))")).label == "type2"


def test_classify_is_invariant_under_canonicalize():
    d = ds("(6,0;(1,6),(1,2),(1,3))")
    canon, _ = canonicalize(d)
    assert classify(d) == classify(canon)


# --- canonicalize -----------------------------------------------------------

def test_canonicalize_sorts_and_reports_permutation():
    d = ds("(6,0;(1,6),(1,2),(1,3))")
    canon, perm = canonicalize(d)
    assert format_data_set(canon) == "(6,0;(1,2),(1,3),(1,6))"
    assert perm == (2, 3, 1)


def test_canonicalize_is_idempotent():
    d = ds("(5,0;(3,5),(1,5),(1,5))")
    canon, _ = canonicalize(d)
    again, perm = canonicalize(canon)
    assert again == canon
    assert perm == (1, 2, 3)


def test_canonicalize_marked_transports_marks():
    m = ds("(6_+,0;(1,6),(1,2),(1,3),[1,3])")
    canon, _ = canonicalize_marked(m)
    assert format_data_set(canon) == "(6_+,0;(1,2),(1,3),(1,6),[2,3])"


# --- text round trips -------------------------------------------------------

def test_parse_examples():
    d = ds("(6,0;(1,2),(1,3),(1,6))")
    assert d == DataSet(6, 0, 0, (ConePair(1, 2), ConePair(1, 3), ConePair(1, 6)))
    free = ds("(2,1,1;-)")
    assert free == DataSet(2, 1, 1)
    marked = ds("(5_+,0;(1,5),(3,5),(1,5),[1,3])")
    assert isinstance(marked, MarkedDataSet)
    assert marked.sign == "+"
    assert marked.marks == (1, 3)


def test_parse_tolerates_whitespace_and_unicode_dash():
    assert ds(" ( 2 , 1 , 1 ; - ) ") == DataSet(2, 1, 1)
    assert ds("(2,1,1;−)") == DataSet(2, 1, 1)
    assert ds("(6_−,0;(1,2),(1,3),(1,6),[3])") == \
        ds("(6_-,0;(1,2),(1,3),(1,6),[3])")


def test_parse_tolerates_comma_preamble():
    # some sources separate the preamble with a comma instead of a semicolon
    assert ds("(6,0,(1,2),(1,3),(1,6))") == ds("(6,0;(1,2),(1,3),(1,6))")
    assert ds("(6_+,0,(1,2),(1,3),(1,6),[3])") == ds("(6_+,0;(1,2),(1,3),(1,6),[3])")


def test_parse_tolerates_subscript_signs():
    assert ds("(6₊,0,(1,2),(1,3),(1,6),[3])") == \
        ds("(6_+,0;(1,2),(1,3),(1,6),[3])")
    assert ds("(5₋,0;(1,5),(1,5),(3,5),[1,2,3])") == \
        ds("(5_-,0;(1,5),(1,5),(3,5),[1,2,3])")


def test_parse_expands_repetition_shorthand():
    assert ds("(2,0;(1,2)×4)") == ds("(2,0;(1,2),(1,2),(1,2),(1,2))")
    assert ds("(2,0;(1,2)x3,(1,2))") == ds("(2,0;(1,2)×4)")
    with pytest.raises(ParseError):
        ds("(2,0;(1,2)×0)")


def test_parse_errors_carry_positions():
    for bad in ["(bogus", "(5,0;(1,5)", "(5,0;(1,5)))", "5,0;(1,5)", "(5;0)",
                "(5,0;(1,5),)", "(5,0,;(1,5))"]:
        with pytest.raises(ParseError):
            ds(bad)


def test_parse_rejects_half_marked_sets():
    with pytest.raises(ParseError):
        ds("(5_+,0;(1,5),(3,5),(1,5))")  # sign without marks
    with pytest.raises(ParseError):
        ds("(5,0;(1,5),(3,5),(1,5),[1])")  # marks without sign


def test_format_is_canonical_text():
    assert format_data_set(ds(" (6 , 0 ; (1,2) , (1,3), (1,6)) ")) == \
        "(6,0;(1,2),(1,3),(1,6))"
    assert format_data_set(ds("(2,1,1;−)")) == "(2,1,1;-)"


cone_pairs = st.builds(
    ConePair,
    c=st.integers(min_value=0, max_value=12),
    order=st.integers(min_value=1, max_value=12),
)
data_sets = st.builds(
    DataSet,
    degree=st.integers(min_value=1, max_value=30),
    quotient_genus=st.integers(min_value=0, max_value=5),
    rotation=st.integers(min_value=0, max_value=12),
    cone_pairs=st.tuples() | st.lists(cone_pairs, max_size=5).map(tuple),
)
marked_sets = st.builds(
    MarkedDataSet,
    base=data_sets,
    sign=st.sampled_from(["+", "-"]),
    marks=st.lists(st.integers(min_value=1, max_value=9), min_size=1,
                   max_size=4, unique=True).map(tuple),
)


@given(data_sets | marked_sets)
def test_parse_format_roundtrip(d):
    assert parse_data_set(format_data_set(d)) == d


@given(data_sets | marked_sets)
def test_json_roundtrip(d):
    assert data_set_from_json(data_set_to_json(d)) == d


@given(data_sets)
def test_canonicalize_permutation_is_a_permutation(d):
    canon, perm = canonicalize(d)
    assert sorted(perm) == list(range(1, d.num_pairs + 1))
    assert sorted(canon.cone_pairs, key=lambda p: (p.order, p.c)) == \
        list(canon.cone_pairs)
    # the permutation really does map new positions to old pairs
    for new_pos, old_pos in enumerate(perm, 1):
        assert canon.cone_pairs[new_pos - 1] == d.cone_pairs[old_pos - 1]
