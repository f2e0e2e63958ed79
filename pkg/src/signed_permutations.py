"""
Signed permutations of the hyperoctahedral group B_n
Pattern avoidance, the bar-removing bijection with coloured noncrossing
partitions, max-vectors, the rank formula, the three covering moves and
the hat embedding into permutations of {-n..-1, 1..n}
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from src.config import get_config, check_size
from src.lattice_paths import PathWord, Colour, fold, gd_leq, height_matrix, unfold
from src.order_engine import FinitePoset, bruhat_leq, induced_bruhat_poset
from src.partitions_matchings import (
    ColouredPartition,
    SetPartition,
    bicoloured_from_nc,
    components,
    enumerate_coloured_partitions,
    nc_from_bicoloured,
)

logger = logging.getLogger(__name__)


class PermutationError(ValueError):
    """Malformed signed permutation, pattern or max-vector"""


class ClassViolationError(PermutationError):
    """Input lies outside the pattern class an operation is defined on"""


_TOKEN = re.compile(r'-?\d')


def _check_signed(values: Tuple[int, ...], what: str) -> None:
    if sorted(abs(v) for v in values) != list(range(1, len(values) + 1)):
        raise PermutationError(f'{what} {values}: absolute values are not a permutation of 1..{len(values)}')


# Types

@dataclass(frozen=True, order=True)
class SignedPermutation:
    """Signed permutation; negative entries are the signed (barred) ones"""

    values: Tuple[int, ...]

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, 'values', values)
        _check_signed(values, 'signed permutation')

    @classmethod
    def from_string(cls, text: str) -> 'SignedPermutation':
        """'2 4 -1 3' (space separated) or the compact token form '24-13'"""
        text = text.strip()
        if re.search(r'[\s,]', text):
            tokens = re.split(r'[\s,]+', text)
            if not all(re.fullmatch(r'-?\d+', t) for t in tokens):
                raise PermutationError(f'cannot parse signed permutation {text!r}')
        elif _TOKEN.sub('', text):
            raise PermutationError(f'cannot parse signed permutation {text!r}')
        else:
            tokens = _TOKEN.findall(text)
        return cls(tuple(int(t) for t in tokens))

    def __str__(self) -> str:
        return ' '.join(str(v) for v in self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __add__(self, other: 'SignedPermutation') -> Tuple[int, ...]:
        """Juxtaposition as a plain word"""
        return self.values + tuple(other)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def absolute(self) -> Tuple[int, ...]:
        return tuple(abs(v) for v in self.values)

    def is_signed(self, i: int) -> bool:
        return self.values[i] < 0


@dataclass(frozen=True)
class SignedPattern:
    values: Tuple[int, ...]

    def __post_init__(self):
        _check_signed(tuple(self.values), 'pattern')

    @classmethod
    def from_string(cls, text: str) -> 'SignedPattern':
        """Tokens are digits, a leading '-' marks a signed letter: '-3-1-2', '2-1'"""
        text = text.strip()
        if not text or _TOKEN.sub('', text):
            raise PermutationError(f'cannot parse pattern {text!r}')
        return cls(tuple(int(t) for t in _TOKEN.findall(text)))

    def __str__(self) -> str:
        return ''.join(str(v) for v in self.values)

    def __len__(self) -> int:
        return len(self.values)


PATTERN_CLASSES: Dict[str, Tuple[str, ...]] = {
    'shuffle': ('21', '-2-1'),
    'bar': ('312', '-3-1-2', '2-1', '-21'),
    'bar-reversed': ('213', '-2-1-3', '1-2', '-12'),
}


def parse_pattern_set(text: str) -> Tuple[SignedPattern, ...]:
    """A class name from PATTERN_CLASSES or comma-separated pattern tokens"""
    tokens = PATTERN_CLASSES.get(text.strip(), None) or tuple(t for t in text.split(',') if t.strip())
    return tuple(SignedPattern.from_string(t) for t in tokens)


@lru_cache(maxsize=None)
def named_class(name: str) -> Tuple[SignedPattern, ...]:
    if name not in PATTERN_CLASSES:
        raise PermutationError(f'unknown pattern class {name!r}; known: {sorted(PATTERN_CLASSES)}')
    return parse_pattern_set(name)


# Pattern containment

def _matches(values: Sequence[int], pattern: SignedPattern) -> bool:
    """values (same length as pattern) is an occurrence of pattern"""
    for v, p in zip(values, pattern.values):
        if (v < 0) != (p < 0):
            return False
    abs_v = [abs(v) for v in values]
    abs_p = [abs(p) for p in pattern.values]
    return all((abs_v[a] < abs_v[b]) == (abs_p[a] < abs_p[b])
               for a, b in combinations(range(len(values)), 2))


def contains_pattern(perm: Sequence[int], pattern: SignedPattern) -> bool:
    """A subsequence with the pattern's signs whose absolute values are order-isomorphic to it"""
    values = tuple(perm)
    return any(_matches([values[i] for i in idx], pattern)
               for idx in combinations(range(len(values)), len(pattern)))


def avoids_all(perm: Sequence[int], patterns: Iterable[SignedPattern]) -> bool:
    return not any(contains_pattern(perm, p) for p in patterns)


def _new_occurrence(prefix: Sequence[int], pattern: SignedPattern) -> bool:
    """An occurrence of pattern that uses the last entry of prefix"""
    m = len(pattern)
    last = len(prefix) - 1
    if m == 0 or last + 1 < m:
        return False
    return any(_matches([prefix[i] for i in idx] + [prefix[last]], pattern)
               for idx in combinations(range(last), m - 1))


def enumerate_avoiders(n: int, patterns: Sequence[SignedPattern]) -> List[SignedPermutation]:
    """Members of B_n avoiding every pattern, in lexicographic order of values.

    Occurrences are checked as entries are appended, so a prefix is dropped
    as soon as it contains a pattern.
    """
    if n < 0:
        raise PermutationError(f'negative size {n}')
    check_size(n, get_config().max_signed_n, 'enumerate_avoiders')
    patterns = tuple(patterns)
    candidates = [-v for v in range(n, 0, -1)] + list(range(1, n + 1))
    found: List[SignedPermutation] = []

    def grow(prefix: List[int], used: set):
        if len(prefix) == n:
            found.append(SignedPermutation(tuple(prefix)))
            return
        for v in candidates:
            if abs(v) in used:
                continue
            prefix.append(v)
            if not any(_new_occurrence(prefix, p) for p in patterns):
                used.add(abs(v))
                grow(prefix, used)
                used.discard(abs(v))
            prefix.pop()

    grow([], set())
    logger.debug(f'B_{n} avoiding {",".join(map(str, patterns))}: {len(found)}')
    return found


def enumerate_signed(n: int) -> List[SignedPermutation]:
    """All 2^n·n! elements of B_n"""
    return enumerate_avoiders(n, ())


def in_class(perm: Sequence[int], name: str) -> bool:
    return avoids_all(perm, named_class(name))


def _require_class(perm: SignedPermutation, name: str) -> None:
    if not in_class(perm, name):
        raise ClassViolationError(f'{perm} is not in the {name} class B_n({",".join(PATTERN_CLASSES[name])})')


# Shuffle-class statistics

def quasi_maximum(perm: SignedPermutation) -> Optional[int]:
    """The larger signed or unsigned entry whose absolute value is not n; None if one kind is absent"""
    _require_class(perm, 'shuffle')
    signed = [v for v in perm if v < 0]
    unsigned = [v for v in perm if v > 0]
    if not signed or not unsigned:
        return None
    top_signed = min(signed)
    top_unsigned = max(unsigned)
    return top_signed if abs(top_signed) != perm.n else top_unsigned


def _abs_max(values: Sequence[int]) -> int:
    return max(values, key=abs)


def a_set(perm: SignedPermutation) -> List[int]:
    """1-based positions i with: π_i unsigned after a prefix whose maximum is signed
    (the empty prefix counts as signed), or π_i signed with π_1..π_i topped by an unsigned entry"""
    positions = []
    for i, v in enumerate(perm.values):
        if v > 0:
            if i == 0 or _abs_max(perm.values[:i]) < 0:
                positions.append(i + 1)
        elif _abs_max(perm.values[:i + 1]) > 0:
            positions.append(i + 1)
    return positions


def b_set(perm: SignedPermutation) -> List[int]:
    """1-based positions i where the two largest entries of π_1..π_i differ in sign; always contains 1"""
    positions = []
    for i in range(len(perm)):
        if i == 0:
            positions.append(1)
            continue
        top = sorted(perm.values[:i + 1], key=abs, reverse=True)[:2]
        if (top[0] < 0) != (top[1] < 0):
            positions.append(i + 1)
    return positions


def a_statistic(perm: SignedPermutation) -> int:
    return len(a_set(perm))


def b_statistic(perm: SignedPermutation) -> int:
    return len(b_set(perm))


def left_to_right_maxima(perm: SignedPermutation) -> List[int]:
    """Entries exceeding every earlier entry in absolute value"""
    maxima = []
    best = 0
    for v in perm:
        if abs(v) > best:
            maxima.append(v)
            best = abs(v)
    return maxima


def count_unsigned_ltr_maxima(perm: SignedPermutation) -> int:
    return sum(1 for v in left_to_right_maxima(perm) if v > 0)


def count_signed_ltr_maxima(perm: SignedPermutation) -> int:
    return sum(1 for v in left_to_right_maxima(perm) if v < 0)


# Bar removal

def bar_removing(coloured: ColouredPartition) -> SignedPermutation:
    """Concatenate the blocks, signing every element of a Black component"""
    if not coloured.is_noncrossing:
        raise ClassViolationError(f'{coloured} is not noncrossing')
    values = []
    for block, colour in zip(coloured.partition.blocks, coloured.block_colours):
        sign = -1 if colour is Colour.BLACK else 1
        values.extend(sign * e for e in block)
    return SignedPermutation(tuple(values))


def bars_inserting(perm: SignedPermutation) -> ColouredPartition:
    """Cut at every rise of |π|; signed blocks are Black"""
    _require_class(perm, 'bar')
    if not perm.n:
        return ColouredPartition(SetPartition(()), ())
    blocks: List[List[int]] = [[perm[0]]]
    for prev, cur in zip(perm.values, perm.values[1:]):
        if abs(prev) < abs(cur):
            blocks.append([cur])
        else:
            blocks[-1].append(cur)
    partition = SetPartition(tuple(tuple(abs(v) for v in b) for b in blocks))
    signed_block = {}
    for block in blocks:
        kinds = {v < 0 for v in block}
        if len(kinds) != 1:
            raise ClassViolationError(f'{perm}: mixed signs inside block {block}')
        signed_block[abs(block[0])] = kinds.pop()
    colours = []
    for group in components(partition):
        flags = {signed_block[block[0]] for block in group}
        if len(flags) != 1:
            raise ClassViolationError(f'{perm}: mixed signs inside one component')
        colours.append(Colour.BLACK if flags.pop() else Colour.WHITE)
    return ColouredPartition(partition, tuple(colours))


def perm_from_path(path: PathWord) -> SignedPermutation:
    """Grand-Dyck path -> bar class, through fold and the noncrossing partition"""
    return bar_removing(nc_from_bicoloured(fold(path)))


def path_from_perm(perm: SignedPermutation) -> PathWord:
    return unfold(bicoloured_from_nc(bars_inserting(perm)))


def enumerate_bar_class(n: int) -> List[SignedPermutation]:
    """B_n(312, -3-1-2, 2-1, -21) through coloured noncrossing partitions"""
    if n == 0:
        return [SignedPermutation(())]
    return sorted(bar_removing(c) for c in enumerate_coloured_partitions(n, noncrossing_only=True))


def transported_leq(perm: SignedPermutation, other: SignedPermutation) -> bool:
    """Order of the bar class carried over from GD_n"""
    return gd_leq(path_from_perm(perm), path_from_perm(other))


# Max-vectors

@dataclass(frozen=True)
class MaxVector:
    """Prefix maxima by absolute value; a negative entry is coloured"""

    entries: Tuple[int, ...]

    def __post_init__(self):
        v = tuple(int(e) for e in self.entries)
        object.__setattr__(self, 'entries', v)
        n = len(v)
        if not n:
            return
        mags = [abs(e) for e in v]
        if 0 in mags or any(a > b for a, b in zip(mags, mags[1:])):
            raise PermutationError(f'max-vector {v}: magnitudes must be positive and weakly increasing')
        if mags[-1] != n or any(mags[i] < i + 1 for i in range(n - 1)):
            raise PermutationError(f'max-vector {v}: needs |v_i| >= i and |v_n| = n')
        for i in range(n - 1):
            if (v[i] < 0) != (v[i + 1] < 0) and mags[i] != i + 1:
                raise PermutationError(f'max-vector {v}: colour changes after position {i + 1} with |v_i| != i')

    def __str__(self) -> str:
        return '(' + ','.join(str(e) for e in self.entries) + ')'

    def __len__(self) -> int:
        return len(self.entries)


def max_vector(perm: SignedPermutation) -> MaxVector:
    entries = []
    best = 0
    for v in perm:
        best = max(best, abs(v))
        entries.append(-best if v < 0 else best)
    return MaxVector(tuple(entries))


def enumerate_max_vectors(n: int) -> List[MaxVector]:
    """All vectors meeting the max-vector conditions for size n"""
    found: List[MaxVector] = []

    def grow(prefix: List[int]):
        i = len(prefix)
        if i == n:
            found.append(MaxVector(tuple(prefix)))
            return
        low = n if i == n - 1 else max(abs(prefix[-1]) if prefix else 1, i + 1)
        for mag in range(low, n + 1):
            for sign in (1, -1):
                if prefix and (prefix[-1] < 0) != (sign < 0) and abs(prefix[-1]) != i:
                    continue
                prefix.append(sign * mag)
                grow(prefix)
                prefix.pop()

    grow([])
    return found


def _check_vectors(v: MaxVector, w: MaxVector) -> None:
    if len(v) != len(w):
        raise PermutationError(f'length mismatch: {v} vs {w}')


def maxvec_leq(v: MaxVector, w: MaxVector) -> bool:
    """Per coordinate: both coloured with |v| >= |w|, both plain with v <= w, or v coloured and w plain"""
    _check_vectors(v, w)
    for a, b in zip(v.entries, w.entries):
        if a < 0 and b < 0:
            if abs(a) < abs(b):
                return False
        elif a > 0 and b > 0:
            if a > b:
                return False
        elif b < 0:
            return False
    return True


def maxvec_covers(v: MaxVector, w: MaxVector) -> bool:
    """w differs from v in one coordinate by one of the three unit moves"""
    _check_vectors(v, w)
    diff = [i for i in range(len(v)) if v.entries[i] != w.entries[i]]
    if len(diff) != 1:
        return False
    a, b = v.entries[diff[0]], w.entries[diff[0]]
    if a < 0 and b < 0:
        return abs(a) == abs(b) + 1
    if a > 0 and b > 0:
        return b == a + 1
    return a < 0 < b and abs(a) == b


# Rank

def inv_unsigned(perm: SignedPermutation) -> int:
    """Inversions among the unsigned entries"""
    plain = [v for v in perm if v > 0]
    return sum(1 for a, b in combinations(plain, 2) if a > b)


def ninv_abs(perm: SignedPermutation) -> int:
    """Non-inversions of |π|"""
    return sum(1 for a, b in combinations(perm.absolute, 2) if a < b)


def count_unsigned(perm: SignedPermutation) -> int:
    return sum(1 for v in perm if v > 0)


def perm_rank(perm: SignedPermutation) -> int:
    """ninv(|π|) + 2·inv(π) + #(π), the rank in the bar-class lattice"""
    return ninv_abs(perm) + 2 * inv_unsigned(perm) + count_unsigned(perm)


def _swap(values: Tuple[int, ...], i: int, j: int) -> Tuple[int, ...]:
    out = list(values)
    out[i], out[j] = out[j], out[i]
    return tuple(out)


def _nothing_between(values: Tuple[int, ...], i: int, j: int) -> bool:
    lo, hi = sorted((abs(values[i]), abs(values[j])))
    return not any(lo < abs(values[k]) < hi for k in range(i + 1, j))


def covering_moves(perm: SignedPermutation) -> List[Tuple[str, SignedPermutation]]:
    """Candidates from the three moves, each tagged 'signed-swap', 'unsigned-swap' or 'unsign'"""
    values = perm.values
    moves: List[Tuple[str, SignedPermutation]] = []
    for i, j in combinations(range(len(values)), 2):
        a, b = values[i], values[j]
        if not _nothing_between(values, i, j):
            continue
        if a < 0 and b < 0 and abs(a) > abs(b):
            moves.append(('signed-swap', SignedPermutation(_swap(values, i, j))))
        elif a > 0 and b > 0 and a < b:
            moves.append(('unsigned-swap', SignedPermutation(_swap(values, i, j))))
    # |perm| framed by 0 in front and n + 1 behind
    mags = (0,) + perm.absolute + (len(values) + 1,)
    for i, v in enumerate(values):
        if v > 0:
            continue
        if mags[i] < mags[i + 1] or mags[i + 1] < mags[i + 2]:
            moves.append(('unsign', SignedPermutation(values[:i] + (-v,) + values[i + 1:])))
    return moves


def perm_covers(perm: SignedPermutation, other: SignedPermutation) -> bool:
    """other covers perm in the bar-class lattice.

    other must come from one of the moves and stay in the class.
    """
    if len(perm) != len(other):
        return False
    if not any(result == other for _, result in covering_moves(perm)):
        return False
    return in_class(other, 'bar')


def upper_covers(perm: SignedPermutation) -> List[SignedPermutation]:
    return sorted({r for _, r in covering_moves(perm) if perm_covers(perm, r)})


# Hat embedding

@dataclass(frozen=True)
class HatPermutation:
    """Centrally antisymmetric word over {-n..-1, 1..n}"""

    values: Tuple[int, ...]

    def __post_init__(self):
        v = tuple(self.values)
        if len(v) % 2:
            raise PermutationError(f'hat word {v} has odd length')
        if any(v[k] != -v[len(v) - 1 - k] for k in range(len(v))):
            raise PermutationError(f'hat word {v} is not centrally antisymmetric')
        _check_signed(v[:len(v) // 2], 'first half of hat word')
        object.__setattr__(self, 'values', v)

    @property
    def first_half(self) -> SignedPermutation:
        return SignedPermutation(self.values[:len(self.values) // 2])

    def __str__(self) -> str:
        return ' '.join(str(v) for v in self.values)

    def __len__(self) -> int:
        return len(self.values)


def reverse_negate(perm: SignedPermutation) -> SignedPermutation:
    return SignedPermutation(tuple(-v for v in reversed(perm.values)))


def hat(perm: SignedPermutation) -> HatPermutation:
    """π followed by π reversed and negated"""
    return HatPermutation(perm + reverse_negate(perm))


def hat_inversions(perm: SignedPermutation) -> int:
    word = hat(perm).values
    return sum(1 for a, b in combinations(word, 2) if a > b)


def signed_bruhat_leq(perm: SignedPermutation, other: SignedPermutation) -> bool:
    """Bruhat order on B_n through the juxtaposition reverse_negate(π) π"""
    return bruhat_leq(reverse_negate(perm) + perm, reverse_negate(other) + other)


# Posets

def bar_lattice(n: int) -> FinitePoset:
    """The bar class under the order transported from GD_n"""
    perms = enumerate_bar_class(n)
    h = height_matrix([path_from_perm(p) for p in perms])
    leq = (h[:, None, :] <= h[None, :, :]).all(axis=2)
    return FinitePoset(perms, leq)


def hat_bruhat_poset(n: int) -> FinitePoset:
    """Bruhat order induced on the hat images of the bar class, labelled by π"""
    perms = enumerate_bar_class(n)
    return induced_bruhat_poset([hat(p).values for p in perms], labels=perms)


def reversed_class_poset(n: int) -> FinitePoset:
    """B_n(213, -2-1-3, 1-2, -12) under signed_bruhat_leq"""
    perms = enumerate_avoiders(n, named_class('bar-reversed'))
    return induced_bruhat_poset([reverse_negate(p) + p for p in perms], labels=perms)
