import csv
from dataclasses import replace
from fractions import Fraction

import pytest

from perisurf.core import parse_data_set
from perisurf.fillability import (
    FillabilityVerdict,
    binding_symplectic_deviation,
    build_profile,
    classify_assembly,
    classify_irreducible,
    classify_marked,
    classify_positive_word,
    search_profiles,
    verdict_to_json,
    verify_profile,
    write_profile_csv,
)
from perisurf.fillability import _assemble_profile
from perisurf.gluing import Assembly, Ext, build_edge
from perisurf.openbook import BoundaryOrbit, OpenBookDescriptor, page_descriptor


def ds(text):
    return parse_data_set(text)


def held(verdict, name):
    return dict(verdict.hypotheses)[name]


def test_positive_irreducible_is_stein():
    v = classify_irreducible(ds("(6_+,0;(1,2),(1,3),(1,6),[3])"))
    assert v.verdict == "SteinFillable"
    assert v.certificate == "positive-irreducible"
    assert v.notes == ()


def test_positive_irreducible_permuted_orbit_notes_extension():
    v = classify_irreducible(ds("(6_+,0;(1,2),(1,3),(1,6),[2])"))
    assert v.verdict == "SteinFillable"
    assert any("permuted" in n for n in v.notes)


def test_negative_irreducible_resolves_to_overtwisted():
    v = classify_irreducible(ds("(6_-,0;(1,2),(2,3),(5,6),[3])"))
    assert v.verdict == "Overtwisted"
    assert v.certificate == "left-veering-resolution"
    assert "left-veering resolution: 6 negative boundary twists" in v.notes


def test_negative_irreducible_without_resolution_is_unknown():
    v = classify_irreducible(ds("(6_-,0;(1,2),(1,3),(1,6),[2])"))
    assert v.verdict == "Unknown"
    assert v.certificate == "none"
    assert not held(v, "integral resolution")


def test_classify_irreducible_rejects_other_classes():
    with pytest.raises(ValueError):
        classify_irreducible(ds("(2_+,0;(1,2),(1,2),(1,2),(1,2),[1])"))


def test_assembled_positive_pieces_are_stein():
    pieces = (
        ds("(6_+,0;(1,2),(1,3),(1,6),[3])"),
        ds("(6_+,0;(1,3),(5,6),(5,6),[2,3])"),
    )
    v = classify_assembly(
        Assembly(pieces, (build_edge(pieces, (0, 3), (1, 3)),)))
    assert v.verdict == "SteinFillable"
    assert v.certificate == "positive-assembly"

    pieces = (
        ds("(5_+,0;(3,5),(1,5),(3,5),[1,2,3])"),
        ds("(5_+,0;(1,5),(2,5),(1,5),[1,3])"),
    )
    v = classify_assembly(
        Assembly(pieces, (build_edge(pieces, (0, 1), (1, 2)),)))
    assert v.verdict == "SteinFillable"


def test_assembly_with_negative_piece_is_unknown():
    pieces = (
        ds("(6_+,0;(1,2),(1,3),(1,6),[1])"),
        ds("(6_-,0;(1,2),(2,3),(5,6),[1])"),
    )
    v = classify_assembly(
        Assembly(pieces, (build_edge(pieces, (0, 3), (1, 3)),)))
    assert v.verdict == "Unknown"
    assert not held(v, "all pieces positive")
    assert held(v, "no self gluings")


def test_assembly_with_permuted_marks_is_unknown():
    pieces = (
        ds("(6_+,0;(1,2),(1,3),(1,6),[2,3])"),
        ds("(6_+,0;(1,3),(5,6),(5,6),[2])"),
    )
    v = classify_assembly(
        Assembly(pieces, (build_edge(pieces, (0, 3), (1, 3)),)))
    assert v.verdict == "Unknown"
    assert not held(v, "all marked orbits invariant")


def test_assembly_that_consumes_every_mark_is_unknown():
    pieces = (
        ds("(5_+,0;(2,5),(3,5),(1,5),[3])"),
        ds("(5_+,0;(4,5),(3,5),(3,5),[1])"),
    )
    v = classify_assembly(Assembly(
        pieces,
        (build_edge(pieces, (0, 3), (1, 1)),),
        ((0, 1, 2),),
    ))
    assert v.verdict == "Unknown"
    assert not held(v, "no self gluings")
    assert not held(v, "marked boundary remains")
    assert not held(v, "junction keeps a free mark")


def test_positive_word_slopes_in_unit_interval_are_stein():
    v = classify_positive_word(
        page_descriptor(ds("(5_+,0;(1,5),(3,5),(1,5),[1,3])")))
    assert v.verdict == "SteinFillable"
    assert v.certificate == "positive-twist-stein"
    assert v.notes == ()  # two boundary orbits, no strong shortcut

    v = classify_positive_word(
        page_descriptor(ds("(5_+,0;(1,5),(3,5),(1,5),[1])")))
    assert v.certificate == "positive-twist-stein"
    assert any("positive-twist-strong" in n for n in v.notes)


def test_positive_word_requires_positive_word():
    with pytest.raises(ValueError):
        classify_positive_word(
            page_descriptor(ds("(6_-,0;(1,2),(2,3),(5,6),[3])")))


def test_positive_word_integral_slope_is_strong_only():
    d = OpenBookDescriptor(
        1,
        (BoundaryOrbit(1, 1, Fraction(3), Fraction(3), True),),
        (Ext(0),),
        True,
    )
    v = classify_positive_word(d)
    assert v.verdict == "StronglyFillable"
    assert v.certificate == "positive-twist-strong"


def test_positive_word_flat_orbit_is_unknown():
    d = OpenBookDescriptor(
        1,
        (BoundaryOrbit(1, 1, Fraction(0), Fraction(0), True),
         BoundaryOrbit(2, 1, Fraction(1, 2), Fraction(1, 2), True)),
        (Ext(0),),
        True,
    )
    v = classify_positive_word(d)
    assert v.verdict == "Unknown"


def test_classify_marked_merges_rules():
    v = classify_marked(ds("(6_+,0;(1,2),(1,3),(1,6),[3])"))
    assert v.verdict == "SteinFillable"
    assert v.certificate == "positive-irreducible"
    assert any("positive-twist-stein" in n for n in v.notes)

    # rotational class: only the positive-word rule applies
    v = classify_marked(ds("(2_+,0;(1,2),(1,2),(1,2),(1,2),[1])"))
    assert v.verdict == "SteinFillable"
    assert v.certificate == "positive-twist-stein"

    v = classify_marked(ds("(6_-,0;(1,2),(2,3),(5,6),[3])"))
    assert v.verdict == "Overtwisted"

    v = classify_marked(ds("(6_-,0;(1,2),(1,3),(1,6),[2])"))
    assert v.verdict == "Unknown"
    assert v.certificate == "none"


def test_verdict_certificate_pairing_enforced():
    with pytest.raises(ValueError):
        FillabilityVerdict("Unknown", "positive-assembly")
    with pytest.raises(ValueError):
        FillabilityVerdict("SteinFillable", "none")
    with pytest.raises(ValueError):
        FillabilityVerdict("Maybe", "none")


def test_verdict_json():
    v = classify_irreducible(ds("(6_-,0;(1,2),(2,3),(5,6),[3])"))
    j = verdict_to_json(v)
    assert j["verdict"] == "Overtwisted"
    assert ["integral resolution", True] in j["hypotheses"]


# --- profiles ----------------------------------------------------------------


def test_build_profile_defaults():
    pp = build_profile(2, 1)
    assert (pp.K, pp.H) == (2, 5.0)
    assert len(pp.grid) == 1024
    assert pp.f0[0] == 2 * pp.H and pp.g0[0] == 0.0
    assert pp.f0[-1] == -2 - 1 * pp.K
    assert pp.g0[-1] == -1 + 2 * pp.K


def test_positive_slope_profile_verifies():
    report = verify_profile(build_profile(2, 1))
    assert report.ok
    assert report.first_violation is None
    assert report.inconclusive == ()


def test_mixed_sign_slope_profile_verifies():
    pp = build_profile(5, -1)
    assert pp.K == 2
    assert verify_profile(pp).ok


def test_build_profile_argument_errors():
    with pytest.raises(ValueError):
        build_profile(-2, 1)
    with pytest.raises(ValueError):
        build_profile(4, 2)
    with pytest.raises(ValueError, match="pass K explicitly"):
        build_profile(1, -1)


def test_bad_collar_offset_builds_but_fails_verify():
    # building never rejects a shape; the endpoint corner is the verifier's
    # job, and it is exact (no tolerance window)
    pp = build_profile(5, -1, K=10)
    report = verify_profile(pp)
    assert report.contact_ok and not report.symplectic_ok
    assert report.first_violation == (1.0, "corner", 5.0)

    pp = build_profile(1, -1, K=1)  # endpoint exactly on the corner edge
    assert verify_profile(pp).first_violation == (1.0, "corner", 0.0)


def test_binding_arc_matches_closed_form():
    assert binding_symplectic_deviation(build_profile(2, 1)) < 1e-6
    assert binding_symplectic_deviation(build_profile(5, -1)) < 1e-6


def test_verify_needs_enough_samples():
    with pytest.raises(ValueError):
        verify_profile(_assemble_profile(2, 1, 2, 5.0, samples=32))


def test_corrupted_profile_fails_with_located_violation():
    pp = build_profile(2, 1)
    bad = replace(pp, g0=tuple(-g for g in pp.g0))
    report = verify_profile(bad)
    assert not report.ok
    r, condition, value = report.first_violation
    assert condition in ("contact", "symplectic")
    assert value != 0


def test_search_finds_profile_for_positive_p_negative_q():
    pp = search_profiles(5, -1)
    assert pp is not None
    # the shape that passed the coarse search still passes on a fine grid
    fine = _assemble_profile(pp.p, pp.q, pp.K, pp.H, samples=1024)
    assert verify_profile(fine).ok


def test_search_exhausts_for_negative_p():
    assert search_profiles(-1, -2) is None
    assert search_profiles(-2, -1, candidates=300) is None


def test_search_argument_errors():
    with pytest.raises(ValueError):
        search_profiles(0, 1)
    with pytest.raises(ValueError):
        search_profiles(2, 4)


def test_profile_csv_roundtrip(tmp_path):
    pp = build_profile(2, 1, samples=128)
    path = tmp_path / "profile.csv"
    write_profile_csv(pp, str(path))
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["r", "f0", "g0"]
    assert len(rows) == 129
    assert float(rows[1][0]) == pp.grid[0]
    assert float(rows[-1][2]) == pp.g0[-1]
