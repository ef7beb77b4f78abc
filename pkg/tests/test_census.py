import pytest

from perisurf.census import (
    CensusQuery,
    CensusRecord,
    census,
    degree_cap,
    enumerate_data_sets,
    enumerate_irreducible,
    enumerate_oracle,
    read_census,
    write_census,
)
from perisurf.core import format_data_set, parse_data_set, validate


def names(records):
    return {format_data_set(d) for d in records}


def test_enumerate_degree_two_genus_one():
    assert names(enumerate_data_sets(2, 1)) == {
        "(2,0;(1,2),(1,2),(1,2),(1,2))",
        "(2,1,1;-)",
    }


def test_enumerate_degree_six_genus_one():
    assert names(enumerate_data_sets(6, 1)) == {
        "(6,0;(1,2),(1,3),(1,6))",
        "(6,0;(1,2),(2,3),(5,6))",
        "(6,1,1;-)",
        "(6,1,5;-)",
    }


def test_enumerate_degree_five_genus_two():
    got = names(enumerate_data_sets(5, 2))
    assert "(5,0;(1,5),(1,5),(3,5))" in got
    assert got == {
        "(5,0;(1,5),(1,5),(3,5))",
        "(5,0;(1,5),(2,5),(2,5))",
        "(5,0;(2,5),(4,5),(4,5))",
        "(5,0;(3,5),(3,5),(4,5))",
    }


def test_enumerate_degree_one_is_empty():
    for g in range(0, 4):
        assert enumerate_data_sets(1, g) == []
        assert enumerate_oracle(1, g) == []


def test_enumerate_rejects_bad_arguments():
    with pytest.raises(ValueError):
        enumerate_data_sets(0, 2)
    with pytest.raises(ValueError):
        enumerate_data_sets(3, -1)


def test_enumerator_matches_oracle_on_small_grid():
    for n in range(1, 9):
        for g in range(0, 4):
            fast = enumerate_data_sets(n, g)
            slow = enumerate_oracle(n, g)
            assert fast == slow, (n, g, names(fast) ^ names(slow))


def test_everything_enumerated_is_valid_and_canonical():
    for n in range(2, 9):
        for d in enumerate_data_sets(n, 2):
            assert validate(d).valid
            assert parse_data_set(format_data_set(d)) == d
            assert sorted(d.cone_pairs, key=lambda p: (p.order, p.c)) == \
                list(d.cone_pairs)


def test_genus_two_degree_window():
    assert enumerate_data_sets(10, 2)
    for n in range(11, 21):
        assert enumerate_data_sets(n, 2) == []


def test_degree_cap():
    assert degree_cap(2) == 84
    assert degree_cap(3) == 168
    with pytest.raises(ValueError):
        degree_cap(1)


def test_enumerate_irreducible():
    got = enumerate_irreducible(6)
    assert names(got) == {
        "(6,0;(1,2),(1,3),(1,6))",
        "(6,0;(1,2),(2,3),(5,6))",
        "(6,0;(1,3),(5,6),(5,6))",
        "(6,0;(2,3),(1,6),(1,6))",
    }
    assert enumerate_irreducible(1) == []
    # agrees with filtering full censuses by class
    from perisurf.core import classify
    for n in (5, 8, 12):
        by_class = set()
        for g in range(0, 8):
            for d in enumerate_data_sets(n, g):
                if classify(d).label == "type1-irreducible":
                    by_class.add(d)
        assert set(enumerate_irreducible(n)) == by_class


def test_census_query_validation():
    with pytest.raises(ValueError):
        CensusQuery()
    with pytest.raises(ValueError):
        CensusQuery(genus=2, max_genus=3)
    with pytest.raises(ValueError):
        census(CensusQuery(genus=1), workers=1)  # unbounded without degrees


def test_census_records():
    records = census(CensusQuery(genus=2, degrees=(2, 3, 5, 6)), workers=1)
    assert names(r.data_set for r in records) >= {
        "(5,0;(1,5),(1,5),(3,5))",
        "(2,0;(1,2),(1,2),(1,2),(1,2),(1,2),(1,2))",
    }
    for r in records:
        assert r.genus == 2
        if r.action_class == "type1-irreducible":
            assert r.polygon_verified is True
        else:
            assert r.polygon_verified is None


def test_census_class_filter():
    records = census(CensusQuery(genus=2, degrees=(2, 3, 4, 5, 6),
                                 action_class="rotational"), workers=1)
    assert records
    assert all(r.action_class == "rotational" for r in records)


def test_census_parallel_matches_serial():
    query = CensusQuery(genus=2, degrees=tuple(range(1, 11)))
    serial = census(query, workers=1)
    parallel = census(query, workers=2)
    assert serial == parallel


def test_census_jsonl_roundtrip(tmp_path):
    records = census(CensusQuery(genus=2, degrees=(5, 6, 8)), workers=1)
    path = tmp_path / "census.jsonl"
    assert write_census(records, path) == len(records)
    assert read_census(path) == records


def test_read_census_reports_line_numbers(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"degree": 5, "quotient_genus": 0, "rotation": 0, '
                    '"cone_pairs": [[1,5],[1,5],[3,5]], "genus": 2, '
                    '"class": "type1-irreducible", "polygon_verified": true}\n'
                    "not json\n")
    with pytest.raises(ValueError, match="line 2"):
        read_census(path)
