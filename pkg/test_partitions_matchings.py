"""Tests for set partitions, the atomic series, Bell matchings and the
path <-> noncrossing partition bijection."""

from math import comb

import pytest

from src.lattice_paths import BicolouredDyckPath, Colour, PathWord, enumerate_dyck, enumerate_grand_dyck, fold, path_weight
from src.partitions_matchings import (
    ColouredPartition,
    PartitionError,
    PowerSeries,
    SetPartition,
    atomic_gf,
    bell_matching_totals,
    bell_numbers,
    bicoloured_from_nc,
    component_intervals,
    components,
    count_bicoloured_partitions,
    count_coloured_nc,
    count_component_bicoloured,
    enumerate_bell_matchings,
    enumerate_bicoloured_matchings,
    enumerate_coloured_partitions,
    is_atomic,
    is_noncrossing,
    nc_from_bicoloured,
    noncrossing_matching,
    partition_summary,
    riordan_t,
    species_identity_holds,
    stirling,
    t_table,
    t_triangle,
)


def test_standard_form():
    p = SetPartition.from_string('31|2')
    assert str(p) == '2|31'
    assert p.n == 3
    assert is_atomic(p)
    assert not is_atomic(SetPartition.from_string('1|32'))
    with pytest.raises(PartitionError):
        SetPartition.from_string('1|3')


def test_wide_partitions_use_commas():
    p = SetPartition(((10, 1),) + tuple((k,) for k in range(2, 10)))
    text = str(p)
    assert text == '2|3|4|5|6|7|8|9|10,1'
    assert SetPartition.from_string(text) == p


def test_components():
    p = SetPartition.from_string('2|43|651|8|97')
    groups = components(p)
    assert len(groups) == 2
    assert groups[0] == ((2,), (4, 3), (6, 5, 1))
    assert groups[1] == ((8,), (9, 7))
    assert component_intervals(p) == [(1, 6), (7, 9)]


def test_noncrossing():
    assert is_noncrossing(SetPartition.from_string('31|2'))
    assert not is_noncrossing(SetPartition.from_string('31|42'))


def test_summary_and_t_table():
    assert partition_summary(3) == {'partitions': 5, 'noncrossing': 5, 'atomic': 2}
    assert t_table(3) == [0, 2, 2, 1]
    bells = bell_numbers(6)
    assert bells == [1, 1, 2, 5, 15, 52, 203]
    for n in range(1, 6):
        row = t_table(n)
        assert row[n] == 1
        assert sum(row) == bells[n]


def test_t_triangle_frame():
    frame = t_triangle(4)
    assert frame.shape == (4, 4)
    assert frame.loc[3, 2] == 2
    assert frame.loc[2, 3] == 0


def test_atomic_series():
    series = atomic_gf(5)
    assert series.coefficients == (0, 1, 1, 2, 6, 22)
    for n in range(1, 7):
        row = t_table(n)
        for k in range(1, n + 1):
            assert riordan_t(n, k) == row[k]
    assert species_identity_holds(12)


def test_reciprocal_needs_unit_constant():
    with pytest.raises(PartitionError):
        PowerSeries((2, 1)).reciprocal()
    assert (PowerSeries((1, 1, 0, 0)).reciprocal()).coefficients == (1, -1, 1, -1)


def test_stirling_numbers():
    assert stirling(4, 2) == 7
    for n in range(1, 8):
        assert stirling(n, n) == 1
        assert stirling(n, 1) == 1
    assert count_bicoloured_partitions(2) == 2 * 1 + 4 * 1


def test_coloured_partitions():
    c = ColouredPartition.from_string('*21|3')
    assert str(c) == '*21|3'
    assert c.colours == (Colour.BLACK, Colour.WHITE)
    assert c.to_dict()['components'] == [[1, 2], [3, 3]]
    # 2|31 is one component, so its blocks must share a colour
    with pytest.raises(PartitionError):
        ColouredPartition.from_string('*2|31')
    assert count_component_bicoloured(2) == 6
    for n in range(1, 6):
        assert count_coloured_nc(n) == comb(2 * n, n)
    assert len(list(enumerate_coloured_partitions(3, noncrossing_only=True))) == 20


def test_bell_matchings():
    assert len(enumerate_bell_matchings(PathWord.from_string('UUDD'))) == 1
    word = PathWord.from_string('UUUDDUDD')
    matchings = enumerate_bell_matchings(word)
    assert len(matchings) == path_weight(word) == 2
    assert [m for m in matchings if m.is_noncrossing] == [noncrossing_matching(word)]
    assert [bell_matching_totals(n) for n in range(1, 6)] == [1, 2, 5, 15, 52]
    with pytest.raises(PartitionError):
        enumerate_bell_matchings(PathWord.from_string('DU'))


def test_matching_weights_agree_with_paths():
    for n in range(1, 6):
        for word in enumerate_dyck(n):
            assert len(enumerate_bell_matchings(word)) == path_weight(word)


def test_bicoloured_matchings_keep_colours():
    path = BicolouredDyckPath.from_string('UDud')
    found = enumerate_bicoloured_matchings(path)
    assert len(found) == 1
    assert found[0].colours == path.colours


def test_path_partition_bijection():
    assert str(nc_from_bicoloured(BicolouredDyckPath.from_string('UDud'))) == '1|*2'
    assert str(nc_from_bicoloured(BicolouredDyckPath.from_string('UUDD'))) == '21'
    for n in range(1, 5):
        images = set()
        for p in enumerate_grand_dyck(n):
            coloured = nc_from_bicoloured(fold(p))
            assert coloured.is_noncrossing
            assert bicoloured_from_nc(coloured) == fold(p)
            images.add(str(coloured))
        assert len(images) == comb(2 * n, n)


def test_crossing_partition_has_no_path():
    with pytest.raises(PartitionError):
        bicoloured_from_nc(ColouredPartition.from_string('31|42'))


def main():
    tests = [(name, fn) for name, fn in globals().items() if name.startswith('test_') and callable(fn)]
    print("=" * 70)
    print("PARTITION AND MATCHING TESTS")
    print("=" * 70)
    failed = 0
    for name, fn in tests:
        try:
            fn()
            print(f"✓ {name}")
        except Exception as exc:
            failed += 1
            print(f"✗ {name}: {exc!r}")
    print("=" * 70)
    print(f"{len(tests) - failed}/{len(tests)} passed")
    return failed


if __name__ == "__main__":
    raise SystemExit(main())
