#!/usr/bin/env python
"""
Verification command line
Runs the identity registry, converts objects along the bijection chain,
exports Hasse diagrams as DOT and enumerates families

Usage:
    python -m src.verify_cli verify main --n 6
    python -m src.verify_cli verify all --parallel --csv report.csv
    python -m src.verify_cli convert UDud --to partition
    python -m src.verify_cli hasse gd --n 3 --out gd3.dot
    python -m src.verify_cli enumerate bar --n 3
"""

import argparse
import json
import logging
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from math import comb
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from src.config import ResourceGuardError, get_config
from src.eco_engine import (
    conformance,
    eco_bijection,
    eco_bijection_inverse,
    level_records,
    level_sizes,
    omega,
    tree_level,
)
from src.lattice_paths import (
    BicolouredDyckPath,
    PathError,
    PathWord,
    ballot_number,
    central_binomial,
    count_negative_valleys,
    count_peaks,
    count_positive_peaks,
    count_returns,
    dyck_profile,
    enumerate_dyck,
    enumerate_grand_dyck,
    fold,
    gd_covers,
    gd_join,
    gd_lattice,
    gd_meet,
    gd_rank,
    path_weight,
    unfold,
    young_lattice,
    young_partition,
)
from src.order_engine import (
    PosetError,
    bruhat_closure_leq,
    bruhat_leq,
    chain,
    count_order_ideals,
    is_isomorphic,
    is_order_isomorphism,
    join_irreducibles,
    product,
    rank_analysis,
    spectrum,
    to_dot,
)
from src.partitions_matchings import (
    ColouredPartition,
    PartitionError,
    atomic_gf,
    bell_numbers,
    bicoloured_from_nc,
    coloured_row_sum,
    count_coloured_nc,
    enumerate_bell_matchings,
    enumerate_coloured_partitions,
    enumerate_partitions,
    nc_from_bicoloured,
    noncrossing_matching,
    riordan_t,
    species_identity_holds,
    stirling,
    t_table,
)
from src.signed_permutations import (
    HatPermutation,
    PermutationError,
    SignedPermutation,
    a_statistic,
    b_statistic,
    bar_lattice,
    bar_removing,
    bars_inserting,
    count_signed_ltr_maxima,
    count_unsigned_ltr_maxima,
    covering_moves,
    enumerate_avoiders,
    enumerate_bar_class,
    enumerate_max_vectors,
    hat,
    hat_bruhat_poset,
    hat_inversions,
    in_class,
    max_vector,
    maxvec_covers,
    maxvec_leq,
    named_class,
    path_from_perm,
    perm_covers,
    perm_from_path,
    perm_rank,
    reverse_negate,
    reversed_class_poset,
)

logger = logging.getLogger(__name__)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
# every domain error, ResourceGuardError included, derives from ValueError
INPUT_ERRORS = (PathError, PartitionError, PermutationError, PosetError, ResourceGuardError, ValueError)


@dataclass
class IdentityCheck:
    name: str
    n_min: int
    n_max: int
    status: str
    witness: Optional[str] = None
    elapsed: float = 0.0

    def __post_init__(self):
        if self.status == 'fail' and not self.witness:
            raise ValueError(f'failed check {self.name} needs a witness')

    @property
    def passed(self) -> bool:
        return self.status == 'pass'

    def to_dict(self) -> Dict:
        return {
            'name': self.name,
            'range': [self.n_min, self.n_max],
            'status': self.status,
            'witness': self.witness,
            'elapsed': round(self.elapsed, 4),
        }


# Identity checks. Each returns None when everything holds, otherwise a witness.

def check_ballot(n_max: int) -> Optional[str]:
    for n in range(1, n_max + 1):
        total = sum((1 << k) * ballot_number(n, k) for k in range(1, n + 1))
        if total != central_binomial(n):
            return f'n={n}: sum 2^k b(n,k) = {total} != C(2n,n) = {central_binomial(n)}'
    for n in range(1, min(n_max, get_config().max_n) + 1):
        for k in range(1, n + 1):
            found = len(enumerate_dyck(n, k_returns=k))
            if found != ballot_number(n, k):
                return f'n={n}, k={k}: {found} Dyck paths with k returns, ballot number {ballot_number(n, k)}'
    return None


def check_main(n_max: int) -> Optional[str]:
    for n in range(1, n_max + 1):
        left = coloured_row_sum(t_table(n))
        right = sum(path_weight(p) for p in enumerate_grand_dyck(n))
        if left != right:
            return f'n={n}: sum 2^k t(n,k) = {left} != sum of path weights = {right}'
    return None


def check_stirling(n_max: int) -> Optional[str]:
    for n in range(1, n_max + 1):
        coloured_left = coloured_right = 0
        for k in range(1, n + 1):
            paths = enumerate_dyck(n, k_peaks=k)
            weights = sum(path_weight(p) for p in paths)
            if weights != stirling(n, k):
                return f'S({n},{k}) = {stirling(n, k)} but peak-refined weight sum is {weights}'
            for p in paths:
                profile = 1
                for peak, valley in dyck_profile(p):
                    profile *= comb(peak - 1, valley)
                if profile != path_weight(p):
                    return f'{p}: profile product {profile} != path weight {path_weight(p)}'
            coloured_left += stirling(n, k) << k
            coloured_right += weights << k
        if coloured_left != coloured_right:
            return f'n={n}: coloured Stirling sums differ ({coloured_left} vs {coloured_right})'
    return None


def check_riordan(n_max: int) -> Optional[str]:
    series = atomic_gf(12)
    for n in range(1, n_max + 1):
        table = t_table(n)
        for k in range(1, n + 1):
            if riordan_t(n, k) != table[k]:
                return f't({n},{k}): series gives {riordan_t(n, k)}, brute force {table[k]}'
        if series[n] != table[1]:
            return f'atomic count at n={n}: series {series[n]}, brute force {table[1]}'
    prefix = tuple(series[i] for i in range(1, 6))
    if prefix != (1, 1, 2, 6, 22):
        return f'atomic series prefix {prefix}'
    if not species_identity_holds(12):
        return 'B(x) - 1 != B(x)·P(x) to order 12'
    return None


def check_matchings(n_max: int) -> Optional[str]:
    bells = bell_numbers(n_max)
    for n in range(1, n_max + 1):
        total = 0
        for word in enumerate_dyck(n):
            matchings = enumerate_bell_matchings(word)
            if len(matchings) != path_weight(word):
                return f'{word}: {len(matchings)} Bell matchings, weight {path_weight(word)}'
            crossing_free = [m for m in matchings if m.is_noncrossing]
            if crossing_free != [noncrossing_matching(word)]:
                return f'{word}: {len(crossing_free)} crossing-free matchings'
            total += len(matchings)
        if total != bells[n]:
            return f'n={n}: {total} Bell matchings in total, Bell({n}) = {bells[n]}'
    return None


def check_bijections(n_max: int) -> Optional[str]:
    for n in range(1, n_max + 1):
        target = central_binomial(n)
        paths = enumerate_grand_dyck(n)
        images = set()
        for p in paths:
            folded = fold(p)
            if unfold(folded) != p:
                return f'unfold(fold({p})) = {unfold(folded)}'
            coloured = nc_from_bicoloured(folded)
            if not coloured.is_noncrossing or bicoloured_from_nc(coloured) != folded:
                return f'{folded}: noncrossing partition {coloured} does not map back'
            perm = bar_removing(coloured)
            if bars_inserting(perm) != coloured:
                return f'{coloured}: bars_inserting(bar_removing) = {bars_inserting(perm)}'
            eco = eco_bijection(p)
            if eco_bijection_inverse(eco) != p:
                return f'eco bijection does not invert at {p}'
            images.add(perm)
        if len(images) != target:
            return f'n={n}: {len(images)} distinct bar-class images, expected {target}'
        shuffle = enumerate_avoiders(n, named_class('shuffle'))
        bar = enumerate_avoiders(n, named_class('bar'))
        if len(shuffle) != target or len(bar) != target:
            return f'n={n}: |shuffle| = {len(shuffle)}, |bar| = {len(bar)}, C(2n,n) = {target}'
        if bar != enumerate_bar_class(n) or set(bar) != images:
            return f'n={n}: bar class from the filter differs from the partition chain'
        if count_coloured_nc(n) != target:
            return f'n={n}: {count_coloured_nc(n)} coloured noncrossing partitions'
    return None


def check_statistics(n_max: int) -> Optional[str]:
    for n in range(1, n_max + 1):
        for p in enumerate_grand_dyck(n):
            perm = eco_bijection(p)
            if a_statistic(perm) != count_peaks(p):
                return f'{p} -> {perm}: |A| = {a_statistic(perm)}, peaks = {count_peaks(p)}'
            if b_statistic(perm) != count_returns(p):
                return f'{p} -> {perm}: |B| = {b_statistic(perm)}, returns = {count_returns(p)}'
            if n <= 5:
                image = perm_from_path(p)
                if count_unsigned_ltr_maxima(image) != count_positive_peaks(p):
                    return f'{p} -> {image}: unsigned left-to-right maxima vs positive peaks'
                if count_signed_ltr_maxima(image) != count_negative_valleys(p):
                    return f'{p} -> {image}: signed left-to-right maxima vs negative valleys'
    return None


def _cover_pairs(poset) -> set:
    return set(poset.hasse())


def check_rank_path(n_max: int) -> Optional[str]:
    for n in range(1, n_max + 1):
        lattice = gd_lattice(n)
        for p in lattice.elements:
            if lattice.rank_of(p) != gd_rank(p):
                return f'{p}: poset rank {lattice.rank_of(p)}, formula {gd_rank(p)}'
        expected = {(p, q) for p in lattice.elements for q in lattice.elements if gd_covers(p, q)}
        actual = _cover_pairs(lattice)
        if actual != expected:
            pair = next(iter(actual ^ expected))
            return f'GD_{n}: cover relation differs at ({pair[0]}, {pair[1]})'
    return None


def check_rank_perm(n_max: int) -> Optional[str]:
    for n in range(1, n_max + 1):
        lattice = bar_lattice(n)
        for perm in lattice.elements:
            if lattice.rank_of(perm) != perm_rank(perm):
                return f'{perm}: poset rank {lattice.rank_of(perm)}, formula {perm_rank(perm)}'
        expected = {(p, r) for p in lattice.elements for _, r in covering_moves(p) if perm_covers(p, r)}
        actual = _cover_pairs(lattice)
        if actual != expected:
            pair = next(iter(actual ^ expected))
            return f'n={n}: covering moves and lattice covers disagree at ({pair[0]}, {pair[1]})'
        for p, r in actual:
            delta = hat_inversions(r) - hat_inversions(p)
            unsigned_change = sum(1 for v in r if v > 0) - sum(1 for v in p if v > 0)
            if delta != (1 if unsigned_change else 2):
                return f'({p}, {r}): hat inversions change by {delta}'
    return None


def check_lattice(n_max: int) -> Optional[str]:
    for n in range(1, n_max + 1):
        lattice = gd_lattice(n)
        report = rank_analysis(lattice)
        if not (report.is_lattice and report.is_distributive and report.is_graded and report.is_unimodal):
            return f'GD_{n}: {report.to_dict()}'
        if sum(report.whitney_numbers) != len(lattice) or len(report.whitney_numbers) != n * n + 1:
            return f'GD_{n}: Whitney numbers {report.whitney_numbers}'
        if n <= 4:
            for p in lattice.elements:
                for q in lattice.elements:
                    if lattice.join(p, q) != gd_join(p, q) or lattice.meet(p, q) != gd_meet(p, q):
                        return f'GD_{n}: join/meet of {p}, {q} is not coordinatewise'
        irreducibles = join_irreducibles(lattice)
        one_peak = [p for p in lattice.elements if count_peaks(p) == 1]
        if set(irreducibles) != set(one_peak) or len(irreducibles) != n * n:
            return f'GD_{n}: {len(irreducibles)} join-irreducibles, {len(one_peak)} one-peak paths'
    return None


def check_spectrum(n_max: int) -> Optional[str]:
    for n in range(1, n_max + 1):
        spec = spectrum(gd_lattice(n))
        if not is_isomorphic(spec, product(chain(n), chain(n))):
            return f'Spec(GD_{n}) is not isomorphic to C_{n} x C_{n}'
    return None


def check_young(n_max: int) -> Optional[str]:
    for n in range(1, n_max + 1):
        lattice = gd_lattice(n)
        young = young_lattice(n)
        if not is_order_isomorphism(lattice, young, young_partition):
            return f'n={n}: young_partition is not an order isomorphism'
        if not is_isomorphic(lattice, young):
            return f'GD_{n} is not isomorphic to the Young lattice of the {n}x{n} box'
        for p in lattice.elements:
            if sum(young_partition(p)) != gd_rank(p):
                return f'{p}: |lambda| = {sum(young_partition(p))}, rank {gd_rank(p)}'
    return None


def check_birkhoff(n_max: int) -> Optional[str]:
    for n in range(1, n_max + 1):
        for name, lattice in (('GD', gd_lattice(n)), ('bar', bar_lattice(n))):
            ideals = count_order_ideals(spectrum(lattice))
            if ideals != len(lattice):
                return f'{name}_{n}: {ideals} order ideals of the spectrum, {len(lattice)} elements'
    return None


def check_maxvec(n_max: int) -> Optional[str]:
    for n in range(1, n_max + 1):
        lattice = bar_lattice(n)
        vectors = {perm: max_vector(perm) for perm in lattice.elements}
        if set(vectors.values()) != set(enumerate_max_vectors(n)) or len(set(vectors.values())) != len(lattice):
            return f'n={n}: max-vectors of the bar class differ from the characterised set'
        covers = _cover_pairs(lattice)
        for p in lattice.elements:
            for r in lattice.elements:
                if lattice.le(p, r) != maxvec_leq(vectors[p], vectors[r]):
                    return f'{p} vs {r}: order {lattice.le(p, r)}, max-vectors {vectors[p]} {vectors[r]}'
                if ((p, r) in covers) != maxvec_covers(vectors[p], vectors[r]):
                    return f'{p} vs {r}: covering disagrees for {vectors[p]} {vectors[r]}'
    return None


def check_bruhat(n_max: int) -> Optional[str]:
    for n in range(1, n_max + 1):
        lattice = bar_lattice(n)
        bruhat = hat_bruhat_poset(n)
        if not (lattice.leq == bruhat.leq).all():
            pair = np.argwhere(lattice.leq != bruhat.leq)[0]
            p, r = lattice.elements[pair[0]], lattice.elements[pair[1]]
            return f'n={n}: transported order and Bruhat order on hats disagree at ({p}, {r})'
        if not is_isomorphic(lattice, bruhat):
            return f'n={n}: posets not isomorphic'
    return None


def check_corollary(n_max: int) -> Optional[str]:
    for n in range(1, n_max + 1):
        bar = enumerate_bar_class(n)
        reversed_class = enumerate_avoiders(n, named_class('bar-reversed'))
        if sorted(reverse_negate(p) for p in bar) != reversed_class:
            return f'n={n}: reverse_negate does not map the bar class onto its reversed class'
        if not is_order_isomorphism(bar_lattice(n), reversed_class_poset(n), reverse_negate):
            return f'n={n}: reverse_negate is not an order isomorphism onto the signed Bruhat order'
    return None


def check_oracle(n_max: int, samples: int = 500, sample_size: int = 6, seed: int = 7) -> Optional[str]:
    for m in range(1, n_max + 1):
        group = list(permutations(range(1, m + 1)))
        for u in group:
            for v in group:
                if bruhat_leq(u, v) != bruhat_closure_leq(u, v):
                    return f'{u} vs {v}: dominance {bruhat_leq(u, v)}, closure {bruhat_closure_leq(u, v)}'
    rng = random.Random(seed)
    base = list(range(1, sample_size + 1))
    for _ in range(samples):
        u, v = rng.sample(base, len(base)), rng.sample(base, len(base))
        if bruhat_leq(u, v) != bruhat_closure_leq(u, v):
            return f'{u} vs {v}: dominance and closure disagree'
    return None


def check_eco(n_max: int) -> Optional[str]:
    sizes = level_sizes(omega(), n_max)
    for n in range(0, n_max + 1):
        paths, perms = tree_level(n, 'paths'), tree_level(n, 'perms')
        target = central_binomial(n)
        if not (len(paths) == len(perms) == sizes[n] == target):
            return f'level {n}: {len(paths)} paths, {len(perms)} perms, rule {sizes[n]}, C(2n,n) {target}'
        if sorted(x.label for x in paths) != sorted(x.label for x in perms):
            return f'level {n}: label multisets differ'
        if len({x.obj for x in perms}) != target:
            return f'level {n}: duplicate permutations'
        if {x.obj for x in paths} != set(enumerate_grand_dyck(n)):
            return f'level {n}: path tree misses Grand-Dyck paths'
        if not all(in_class(x.obj, 'shuffle') for x in perms):
            return f'level {n}: permutation tree leaves B_{n}(21, -2-1)'
    for family in ('paths', 'perms'):
        if not conformance(n_max, family):
            return f'{family}: a node has fan-out different from its label'
    return None


REGISTRY: Dict[str, Callable[[int], Optional[str]]] = {
    'ballot': check_ballot,
    'main': check_main,
    'stirling': check_stirling,
    'riordan': check_riordan,
    'matchings': check_matchings,
    'bijections': check_bijections,
    'statistics': check_statistics,
    'rank-path': check_rank_path,
    'rank-perm': check_rank_perm,
    'lattice': check_lattice,
    'spectrum': check_spectrum,
    'young': check_young,
    'birkhoff': check_birkhoff,
    'maxvec': check_maxvec,
    'bruhat': check_bruhat,
    'corollary': check_corollary,
    'oracle': check_oracle,
    'eco': check_eco,
}


def run_identity(name: str, n_max: Optional[int] = None) -> IdentityCheck:
    """Run one registry identity up to n_max (its configured bound by default)"""
    if name not in REGISTRY:
        raise ValueError(f'unknown identity {name!r}; known: {", ".join(REGISTRY)}')
    bound = n_max if n_max is not None else get_config().default_bound(name)
    start = time.perf_counter()
    try:
        witness = REGISTRY[name](bound)
    except ResourceGuardError:
        raise
    except INPUT_ERRORS as exc:
        witness = f'{type(exc).__name__}: {exc}'
    elapsed = time.perf_counter() - start
    check = IdentityCheck(name, 1, bound, 'pass' if witness is None else 'fail', witness, elapsed)
    if check.passed:
        logger.info(f'✓ {name} holds for n <= {bound} ({elapsed:.2f}s)')
    else:
        logger.info(f'✗ {name} fails: {witness}')
    return check


def cmd_verify(name: str, n_max: Optional[int] = None, parallel: bool = False) -> List[IdentityCheck]:
    names = list(REGISTRY) if name == 'all' else [name]
    if name != 'all' and name not in REGISTRY:
        raise ValueError(f'unknown identity {name!r}; known: all, {", ".join(REGISTRY)}')
    if parallel and len(names) > 1:
        with ProcessPoolExecutor(max_workers=get_config().workers) as pool:
            return list(pool.map(run_identity, names, [n_max] * len(names)))
    return [run_identity(n, n_max) for n in names]


def report_frame(checks: Sequence[IdentityCheck]) -> pd.DataFrame:
    rows = [c.to_dict() for c in checks]
    frame = pd.DataFrame(rows, columns=['name', 'range', 'status', 'witness', 'elapsed'])
    frame['range'] = frame['range'].map(lambda r: f'{r[0]}..{r[1]}')
    return frame


# Conversion

REPRESENTATIONS = ('gd', 'bicoloured', 'partition', 'perm', 'hat', 'eco')


def _to_path(text: str, rep: str) -> PathWord:
    if rep == 'gd':
        return PathWord.from_string(text)
    if rep == 'bicoloured':
        return unfold(BicolouredDyckPath.from_string(text))
    if rep == 'partition':
        return unfold(bicoloured_from_nc(ColouredPartition.from_string(text)))
    if rep == 'perm':
        return path_from_perm(SignedPermutation.from_string(text))
    if rep == 'hat':
        return path_from_perm(_parse_hat(text).first_half)
    if rep == 'eco':
        return eco_bijection_inverse(SignedPermutation.from_string(text))
    raise ValueError(f'unknown representation {rep!r}')


def _from_path(path: PathWord, rep: str) -> str:
    if rep == 'gd':
        return str(path)
    if rep == 'bicoloured':
        return str(fold(path))
    if rep == 'partition':
        return str(nc_from_bicoloured(fold(path)))
    if rep == 'perm':
        return str(perm_from_path(path))
    if rep == 'hat':
        return str(hat(perm_from_path(path)))
    if rep == 'eco':
        return str(eco_bijection(path))
    raise ValueError(f'unknown representation {rep!r}')


def _parse_hat(text: str) -> HatPermutation:
    try:
        return HatPermutation(tuple(int(t) for t in text.replace(',', ' ').split()))
    except ValueError as exc:
        raise PermutationError(f'cannot parse hat word {text!r}: {exc}') from None


def detect_representation(text: str) -> str:
    text = text.strip()
    if '|' in text or '*' in text:
        return 'partition'
    if text and set(text) <= set('UDud'):
        return 'bicoloured' if any(c in 'ud' for c in text) else 'gd'
    return 'perm'


def cmd_convert(text: str, source: str, target: str) -> str:
    """Map text from one representation to another through the Grand-Dyck path"""
    source = detect_representation(text) if source == 'auto' else source
    if source == target == 'perm':
        return str(SignedPermutation.from_string(text))
    if source == target == 'hat':
        return str(_parse_hat(text))
    if source == 'perm' and target == 'hat':
        return str(hat(SignedPermutation.from_string(text)))
    if source == 'hat' and target == 'perm':
        return str(_parse_hat(text).first_half)
    return _from_path(_to_path(text, source), target)


# Hasse diagrams and enumeration

def hasse_poset(family: str, n: int):
    if family == 'gd':
        return gd_lattice(n), str
    if family == 'perm':
        return bar_lattice(n), str
    if family == 'bruhat':
        return hat_bruhat_poset(n), lambda p: str(hat(p))
    raise ValueError(f'unknown Hasse family {family!r}')


def cmd_hasse(family: str, n: int) -> str:
    poset, label = hasse_poset(family, n)
    return to_dot(poset, name=f'{family}_{n}', label=label)


ENUMERATIONS = ('gd', 'dyck', 'partitions', 'nc', 'shuffle', 'bar', 'maxvec', 'eco-level')


def cmd_enumerate(family: str, n: int) -> List[str]:
    if family == 'gd':
        return [str(p) for p in enumerate_grand_dyck(n)]
    if family == 'dyck':
        return [str(p) for p in enumerate_dyck(n)]
    if family == 'partitions':
        return [str(p) for p in enumerate_partitions(n)]
    if family == 'nc':
        return [str(c) for c in enumerate_coloured_partitions(n, noncrossing_only=True)]
    if family in ('shuffle', 'bar'):
        return [str(p) for p in enumerate_avoiders(n, named_class(family))]
    if family == 'maxvec':
        return [str(v) for v in enumerate_max_vectors(n)]
    if family == 'eco-level':
        return [json.dumps(r) for r in json.loads(level_records(n, 'paths'))]
    raise ValueError(f'unknown family {family!r}')


# Entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='verify_cli',
        description='Grand-Dyck lattices, coloured noncrossing partitions and signed permutations',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"""
Identities: all, {', '.join(REGISTRY)}
Representations: {', '.join(REPRESENTATIONS)}
Enumeration families: {', '.join(ENUMERATIONS)}
        """,
    )
    sub = parser.add_subparsers(dest='command', required=True)

    verify = sub.add_parser('verify', help='Run identity checks')
    verify.add_argument('name', help='Identity name or "all"')
    verify.add_argument('--n', type=int, default=None, help='Largest size checked (default: configured bound)')
    verify.add_argument('--json', action='store_true', help='JSON lines output')
    verify.add_argument('--parallel', action='store_true', help='Run identities in worker processes')
    verify.add_argument('--csv', default=None, help='Write the report to this CSV file')

    convert = sub.add_parser('convert', help='Convert an object along the bijection chain')
    convert.add_argument('object', help='Object in its text form')
    convert.add_argument('--from', dest='source', default='auto', choices=('auto',) + REPRESENTATIONS)
    convert.add_argument('--to', dest='target', required=True, choices=REPRESENTATIONS)

    hasse_cmd = sub.add_parser('hasse', help='Hasse diagram as DOT')
    hasse_cmd.add_argument('family', choices=('gd', 'perm', 'bruhat'))
    hasse_cmd.add_argument('--n', type=int, required=True)
    hasse_cmd.add_argument('--out', default=None, help='Write DOT to this file instead of stdout')

    enum_cmd = sub.add_parser('enumerate', help='List a family of objects')
    enum_cmd.add_argument('family', choices=ENUMERATIONS)
    enum_cmd.add_argument('--n', type=int, required=True)
    enum_cmd.add_argument('--json', action='store_true', help='JSON lines output')
    return parser


def _print_report(checks: Sequence[IdentityCheck], as_json: bool) -> None:
    if as_json:
        for c in checks:
            print(json.dumps(c.to_dict()))
        return
    frame = report_frame(checks)
    passed = sum(c.passed for c in checks)
    print("\n" + "=" * 70)
    print("VERIFICATION REPORT")
    print("=" * 70)
    print(frame.drop(columns=['witness']).to_string(index=False))
    print("=" * 70)
    print(f"{passed}/{len(checks)} identities hold")
    for c in checks:
        if not c.passed:
            print(json.dumps({'name': c.name, 'witness': c.witness}))


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = get_config()

    try:
        if args.command == 'verify':
            checks = cmd_verify(args.name, args.n, parallel=args.parallel or config.parallel)
            _print_report(checks, args.json or config.json_output)
            csv_path = args.csv or config.report_csv
            if csv_path:
                report_frame(checks).to_csv(csv_path, index=False)
                logger.info(f'✓ Report written to {csv_path}')
            return EXIT_PASS if all(c.passed for c in checks) else EXIT_FAIL

        if args.command == 'convert':
            print(cmd_convert(args.object, args.source, args.target))
            return EXIT_PASS

        if args.command == 'hasse':
            dot = cmd_hasse(args.family, args.n)
            if args.out:
                with open(args.out, 'w', encoding='utf-8') as handle:
                    handle.write(dot)
                logger.info(f'✓ Hasse diagram written to {args.out}')
            else:
                sys.stdout.write(dot)
            return EXIT_PASS

        if args.command == 'enumerate':
            items = cmd_enumerate(args.family, args.n)
            for item in items:
                print(json.dumps(item) if args.json and args.family != 'eco-level' else item)
            return EXIT_PASS
    except INPUT_ERRORS as exc:
        print(f'error: {exc}', file=sys.stderr)
        return EXIT_USAGE

    parser.print_help()
    return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
