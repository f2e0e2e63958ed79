"""Tests for Grand-Dyck paths, the fold and the lattice GD_n.

Run directly for a summary, or collect with pytest.
"""

from math import comb, prod
import random

import pytest

from src.lattice_paths import (
    BicolouredDyckPath,
    Colour,
    PathError,
    PathKind,
    PathWord,
    ballot_number,
    bicoloured_leq,
    box_partitions,
    catalan,
    dyck_profile,
    enumerate_dyck,
    enumerate_grand_dyck,
    features,
    fold,
    gd_covers,
    gd_join,
    gd_lattice,
    gd_leq,
    gd_meet,
    gd_rank,
    maximum_path,
    minimum_path,
    parse_path,
    path_weight,
    unfold,
    young_lattice,
    young_partition,
)


def P(text: str) -> PathWord:
    return PathWord.from_string(text)


def test_parse_and_heights():
    path = P('UDDU')
    assert path.heights == (0, 1, 0, -1, 0)
    assert path(3) == -1
    assert path.semilength == 2
    assert path.kind is PathKind.GRAND_DYCK
    assert P('UUDD').is_dyck
    assert str(PathWord.from_heights([0, 1, 2, 1, 0])) == 'UUDD'


def test_parse_rejects_bad_words():
    with pytest.raises(PathError):
        P('UUD')
    with pytest.raises(PathError):
        P('UXD')
    with pytest.raises(PathError):
        PathWord.from_heights([0, 2, 0])
    with pytest.raises(PathError):
        parse_path('DU', kind=PathKind.DYCK)


def test_bicoloured_parsing():
    path = BicolouredDyckPath.from_string('UDud')
    assert path.factor_colours == [((0, 2), Colour.WHITE), ((2, 4), Colour.BLACK)]
    assert str(path) == 'UDud'
    assert isinstance(parse_path('UDud'), BicolouredDyckPath)
    # colour change inside the single factor of UUDD
    with pytest.raises(PathError):
        BicolouredDyckPath.from_string('UuDD')
    # underlying word dips below the axis
    with pytest.raises(PathError):
        BicolouredDyckPath.from_string('UDdu')


def test_features():
    f = features(P('UUDD'))
    assert f.peaks == [(2, 2)]
    assert f.returns == [4]
    assert f.factors == [(0, 4)]
    assert f.area == 4

    f = features(P('UDDU'))
    assert f.returns == [2, 4]
    assert f.factors == [(0, 2), (2, 4)]
    assert f.valleys == [(3, -1)]
    assert f.area == 0

    assert features(P('DDUU')).area == -4
    assert features(P('UUDD')).to_dict()['area'] == 4


def test_enumeration_counts_and_order():
    assert enumerate_grand_dyck(0) == [PathWord(())]
    assert [str(p) for p in enumerate_grand_dyck(1)] == ['UD', 'DU']
    paths = enumerate_grand_dyck(3)
    assert len(paths) == 20
    assert str(paths[0]) == 'UUUDDD'
    assert str(paths[-1]) == 'DDDUUU'
    for n in range(1, 6):
        assert len(enumerate_grand_dyck(n)) == comb(2 * n, n)
        assert len(enumerate_dyck(n)) == catalan(n)


def test_dyck_refinements():
    assert {str(p) for p in enumerate_dyck(3, k_returns=2)} == {'UUDDUD', 'UDUUDD'}
    assert [str(p) for p in enumerate_dyck(3, k_peaks=1)] == ['UUUDDD']


def test_ballot_numbers():
    assert ballot_number(3, 2) == 2
    assert ballot_number(0, 0) == 1
    assert ballot_number(4, 5) == 0
    for n in range(1, 13):
        assert sum((1 << k) * ballot_number(n, k) for k in range(1, n + 1)) == comb(2 * n, n)


def test_fold_and_unfold():
    assert str(fold(P('UDDU'))) == 'UDud'
    assert str(fold(P('UUDD'))) == 'UUDD'
    assert str(fold(P('DDUU'))) == 'uudd'
    for n in range(5):
        for p in enumerate_grand_dyck(n):
            assert unfold(fold(p)) == p


def test_join_meet_and_order():
    assert gd_leq(P('DU'), P('UD'))
    assert gd_leq(P('UDDU'), P('UDUD'))
    assert not gd_leq(P('UDUD'), P('UDDU'))
    assert gd_join(P('DU'), P('UD')) == P('UD')
    assert gd_meet(P('DU'), P('UD')) == P('DU')
    assert gd_join(P('UDDU'), P('DUUD')) == P('UDUD')
    with pytest.raises(PathError):
        gd_leq(P('UD'), P('UDUD'))


def test_join_meet_laws_on_random_triples():
    rng = random.Random(56)
    for n in (5, 6):
        paths = enumerate_grand_dyck(n)
        for _ in range(200):
            p, q, r = rng.sample(paths, 3)
            assert gd_join(p, p) == p and gd_meet(p, p) == p
            assert gd_join(p, q) == gd_join(q, p)
            assert gd_meet(p, q) == gd_meet(q, p)
            assert gd_join(gd_join(p, q), r) == gd_join(p, gd_join(q, r))
            assert gd_meet(gd_meet(p, q), r) == gd_meet(p, gd_meet(q, r))
            assert gd_join(p, gd_meet(p, q)) == p
            assert gd_meet(p, gd_join(p, q)) == p
            assert gd_meet(p, gd_join(q, r)) == gd_join(gd_meet(p, q), gd_meet(p, r))
            assert gd_join(p, gd_meet(q, r)) == gd_meet(gd_join(p, q), gd_join(p, r))
            assert gd_leq(p, gd_join(p, q)) and gd_leq(gd_meet(p, q), q)
            assert gd_leq(p, q) == (gd_join(p, q) == q)


def test_rank_formula():
    assert gd_rank(minimum_path(3)) == 0
    assert gd_rank(maximum_path(3)) == 9
    assert gd_rank(P('UDDU')) == 2
    lattice = gd_lattice(3)
    assert len(lattice) == 20
    assert lattice.whitney_numbers == [1, 1, 2, 3, 3, 3, 3, 2, 1, 1]
    for p in lattice.elements:
        assert lattice.rank_of(p) == gd_rank(p)


def test_covers_are_valley_flips():
    assert gd_covers(P('DU'), P('UD'))
    assert not gd_covers(P('DU'), P('DU'))
    assert not gd_covers(P('DDUU'), P('UUDD'))
    lattice = gd_lattice(3)
    expected = {(p, q) for p in lattice.elements for q in lattice.elements if gd_covers(p, q)}
    assert set(lattice.hasse()) == expected


def test_young_partition():
    assert young_partition(minimum_path(3)) == ()
    assert young_partition(maximum_path(3)) == (3, 3, 3)
    assert young_partition(P('UDDU')) == (1, 1)
    for p in enumerate_grand_dyck(3):
        assert sum(young_partition(p)) == gd_rank(p)
    for n in range(4):
        assert len(box_partitions(n)) == comb(2 * n, n)
    assert len(young_lattice(2)) == 6


def test_path_weight():
    assert path_weight(P('UUDD')) == 1
    assert path_weight(P('UDDU')) == 1
    assert path_weight(P('UUUDDUDD')) == 2
    assert dyck_profile(P('UUUDDUDD')) == [(3, 1), (2, 0)]
    with pytest.raises(PathError):
        dyck_profile(P('DU'))


def test_weight_matches_folded_profile():
    for n in range(1, 7):
        for p in enumerate_grand_dyck(n):
            profile = dyck_profile(fold(p).word)
            assert path_weight(p) == prod(comb(peak - 1, valley) for peak, valley in profile)


def test_bicoloured_order_matches_unfolded_order():
    assert bicoloured_leq(BicolouredDyckPath.from_string('uudd'), BicolouredDyckPath.from_string('UUDD'))
    assert not bicoloured_leq(BicolouredDyckPath.from_string('UUDD'), BicolouredDyckPath.from_string('uudd'))
    paths = enumerate_grand_dyck(3)
    for p in paths:
        for q in paths:
            assert bicoloured_leq(fold(p), fold(q)) == gd_leq(p, q)


def main():
    tests = [(name, fn) for name, fn in globals().items() if name.startswith('test_') and callable(fn)]
    print("=" * 70)
    print("LATTICE PATH TESTS")
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
