import dataclasses

import pytest

from perisurf.census import enumerate_irreducible
from perisurf.core import parse_data_set
from perisurf.realization import (
    draw_polygon_svg,
    polygon_realization,
    verify_realization,
)


def ds(text):
    return parse_data_set(text)


def test_ten_gon():
    d = ds("(5,0;(1,5),(3,5),(1,5))")
    p = polygon_realization(d)
    assert p.sides == 10
    assert not p.outside_theorem
    report = verify_realization(p, d)
    assert report.involution_ok
    assert report.equivariance_ok
    assert report.euler_genus == report.rh_genus == 2
    assert report.ok


def test_hexagon_opposite_sides():
    d = ds("(6,0;(1,2),(1,3),(1,6))")
    p = polygon_realization(d)
    assert p.sides == 6
    # q*j = 2*2 = 4, so side i is glued to side i+3: opposite sides
    assert p.pairing == (4, 5, 6, 1, 2, 3)
    report = verify_realization(p, d)
    assert report.ok
    assert report.euler_genus == 1


def test_doubled_hexagon_for_order_three():
    d = ds("(3,0;(1,3),(1,3),(1,3))")
    p = polygon_realization(d)
    assert p.sides == 6
    assert p.outside_theorem  # genus 1 sits outside the main hypotheses
    report = verify_realization(p, d)
    assert report.ok
    assert report.euler_genus == 1


def test_realization_requires_irreducible_type1():
    for text in [
        "(3,1;(1,3),(2,3))",                   # rotational
        "(2,0;(1,2),(1,2),(1,2),(1,2))",       # rotational
        "(3,1;(1,3),(1,3),(1,3))",             # type 1 but quotient genus 1
        "(6,0;(1,2),(1,2),(1,3),(2,3))",       # type 2
    ]:
        with pytest.raises(ValueError):
            polygon_realization(ds(text))


def test_realization_rejects_invalid_input():
    with pytest.raises(ValueError):
        polygon_realization(ds("(5,0;(1,5),(1,5),(1,5))"))  # residue sum fails


def test_corrupted_pairing_is_reported_not_repaired():
    d = ds("(6,0;(1,2),(1,3),(1,6))")
    p = polygon_realization(d)
    broken = dataclasses.replace(p, pairing=(4, 5, 6, 1, 2, 4))
    report = verify_realization(broken, d)
    assert not report.involution_ok
    assert report.euler_genus is None
    assert not report.ok


def test_all_small_irreducible_sets_verify():
    checked = 0
    for n in range(2, 15):
        for d in enumerate_irreducible(n):
            p = polygon_realization(d)
            report = verify_realization(p, d)
            assert report.ok, (str(d), report)
            checked += 1
    assert checked > 20


def test_svg_output(tmp_path):
    d = ds("(5,0;(1,5),(3,5),(1,5))")
    p = polygon_realization(d)
    target = tmp_path / "tengon.svg"
    draw_polygon_svg(p, str(target))
    content = target.read_text()
    assert content.startswith("<svg")
    assert content.count("<path") == 5  # one chord per side pair
