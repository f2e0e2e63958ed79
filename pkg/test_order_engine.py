"""Tests for finite posets, lattice analysis, isomorphism and Bruhat order."""

from itertools import permutations

import numpy as np
import pytest

from src.config import ResourceGuardError
from src.lattice_paths import gd_lattice
from src.order_engine import (
    FinitePoset,
    PosetError,
    antichain,
    bruhat_closure_leq,
    bruhat_leq,
    chain,
    count_order_ideals,
    find_isomorphism,
    hasse,
    induced_bruhat_poset,
    is_distributive,
    is_isomorphic,
    is_lattice,
    is_order_isomorphism,
    join_irreducibles,
    poset_from_leq,
    product,
    rank_analysis,
    spectrum,
    to_dot,
    whitney_frame,
)


def pentagon() -> FinitePoset:
    """N5: 0 < a < b < 1 and 0 < c < 1"""
    below = {('0', 'a'), ('0', 'b'), ('0', 'c'), ('0', '1'), ('a', 'b'),
             ('a', '1'), ('b', '1'), ('c', '1')}
    return poset_from_leq(['0', 'a', 'b', 'c', '1'], lambda x, y: x == y or (x, y) in below)


def test_chain_and_antichain():
    c = chain(3)
    assert len(c) == 3
    assert hasse(c) == [(0, 1), (1, 2)]
    assert c == poset_from_leq(range(3), lambda x, y: x <= y)
    assert hasse(antichain(3)) == []
    assert not is_lattice(antichain(2))


def test_validation_witnesses():
    steps = {('a', 'b'), ('b', 'c')}
    with pytest.raises(PosetError) as info:
        poset_from_leq(['a', 'b', 'c'], lambda x, y: x == y or (x, y) in steps)
    assert info.value.witness == ('a', 'b', 'c')

    with pytest.raises(PosetError) as info:
        FinitePoset.from_matrix(['x', 'y'], np.ones((2, 2), dtype=bool))
    assert set(info.value.witness) == {'x', 'y'}

    with pytest.raises(PosetError):
        FinitePoset.from_matrix(['x'], np.zeros((1, 1), dtype=bool))


def test_covers_reclose_to_order():
    lattice = gd_lattice(3)
    assert (lattice.reflexive_transitive_closure_of_covers() == lattice.leq).all()


def test_distributivity():
    assert is_distributive(product(chain(2), chain(2)))
    n5 = pentagon()
    assert is_lattice(n5)
    assert not is_distributive(n5)
    assert rank_analysis(n5).witness is not None


def test_rank_analysis_of_gd3():
    report = rank_analysis(gd_lattice(3))
    assert report.is_lattice and report.is_distributive and report.is_graded
    assert report.is_unimodal
    assert sum(report.whitney_numbers) == 20
    assert len(report.whitney_numbers) == 10
    assert report.join_irreducible_count == 9
    assert report.to_dict()['size'] == 20


def test_join_irreducibles_and_spectrum():
    assert join_irreducibles(chain(4)) == [1, 2, 3]
    assert is_isomorphic(spectrum(gd_lattice(2)), product(chain(2), chain(2)))
    with pytest.raises(PosetError):
        join_irreducibles(antichain(2))


def test_order_ideals():
    assert count_order_ideals(chain(3)) == 4
    assert count_order_ideals(antichain(3)) == 8
    assert count_order_ideals(spectrum(gd_lattice(3))) == 20


def test_isomorphism():
    assert is_isomorphic(product(chain(2), chain(3)), product(chain(3), chain(2)))
    assert not is_isomorphic(chain(3), antichain(3))
    mapping = find_isomorphism(chain(3), poset_from_leq('abc', lambda x, y: x <= y))
    assert mapping == {0: 'a', 1: 'b', 2: 'c'}
    assert is_order_isomorphism(chain(3), poset_from_leq('abc', lambda x, y: x <= y), lambda i: 'abc'[i])
    assert not is_order_isomorphism(chain(3), poset_from_leq('abc', lambda x, y: x <= y), lambda i: 'cba'[i])


def test_isomorphism_guard():
    with pytest.raises(ResourceGuardError):
        is_isomorphic(chain(3), chain(3), max_size=2)


def test_bruhat_dominance():
    identity = (1, 2, 3)
    for w in permutations(identity):
        assert bruhat_leq(identity, w)
    assert bruhat_leq((2, 1, 3), (2, 3, 1))
    assert not bruhat_leq((2, 1, 3), (1, 3, 2))
    assert not bruhat_leq((1, 3, 2), (2, 1, 3))
    with pytest.raises(ValueError):
        bruhat_leq((1, 2), (1, 3))


def test_bruhat_matches_closure_oracle():
    group = list(permutations(range(1, 5)))
    for u in group:
        for v in group:
            assert bruhat_leq(u, v) == bruhat_closure_leq(u, v)


def test_induced_bruhat_poset():
    s3 = induced_bruhat_poset(list(permutations((1, 2, 3))))
    assert len(s3) == 6
    assert s3.whitney_numbers == [1, 2, 2, 1]
    # 213 and 132 have two minimal upper bounds
    assert not is_lattice(s3)


def test_whitney_frame_and_dot():
    frame = whitney_frame({'C3': chain(3), 'B2': product(chain(2), chain(2))})
    assert list(frame.loc['B2']) == [1, 2, 1]
    dot = to_dot(chain(2), name='c2')
    assert 'digraph "c2"' in dot
    assert 'n0 -> n1;' in dot


def main():
    tests = [(name, fn) for name, fn in globals().items() if name.startswith('test_') and callable(fn)]
    print("=" * 70)
    print("ORDER ENGINE TESTS")
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
