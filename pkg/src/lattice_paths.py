"""
Grand-Dyck and Dyck paths
Step words, height profiles, path statistics, the fold onto
factor-bicoloured Dyck paths and the coordinatewise lattice GD_n
"""

import json
import logging
from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.config import get_config, check_size
from src.order_engine import FinitePoset, poset_from_leq

logger = logging.getLogger(__name__)


class PathError(ValueError):
    """Malformed or incompatible lattice path"""


class Step(IntEnum):
    UP = 1
    DOWN = -1

    @property
    def letter(self) -> str:
        return 'U' if self is Step.UP else 'D'


class Colour(Enum):
    """Black marks below-axis material: reflected factors, signed elements"""
    WHITE = 'white'
    BLACK = 'black'


class PathKind(Enum):
    GRAND_DYCK = 'grand-dyck'
    DYCK = 'dyck'


@dataclass(frozen=True)
class PathWord:
    """Balanced word of Up/Down steps starting and ending on the x-axis"""

    steps: Tuple[Step, ...]

    def __post_init__(self):
        steps = tuple(Step(s) for s in self.steps)
        object.__setattr__(self, 'steps', steps)
        if sum(steps) != 0:
            raise PathError(f'unbalanced word {self}: does not end on the x-axis')

    @classmethod
    def from_string(cls, text: str) -> 'PathWord':
        text = text.strip()
        bad = set(text) - {'U', 'D'}
        if bad:
            raise PathError(f'invalid steps {sorted(bad)} in {text!r}; expected U or D')
        return cls(tuple(Step.UP if c == 'U' else Step.DOWN for c in text))

    @classmethod
    def from_heights(cls, heights: Sequence[int]) -> 'PathWord':
        diffs = np.diff(np.asarray(heights, dtype=np.int64))
        if len(heights) == 0 or heights[0] != 0 or not np.isin(diffs, (-1, 1)).all():
            raise PathError(f'not a lattice-path height profile: {list(heights)}')
        return cls(tuple(Step(int(d)) for d in diffs))

    def __str__(self) -> str:
        return ''.join(s.letter for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)

    def __call__(self, k: int) -> int:
        """Height P(k) after k steps"""
        return self.heights[k]

    @cached_property
    def heights(self) -> Tuple[int, ...]:
        return (0,) + tuple(int(h) for h in np.cumsum(self.steps, dtype=np.int64))

    @property
    def semilength(self) -> int:
        return len(self.steps) // 2

    @property
    def kind(self) -> PathKind:
        return PathKind.DYCK if min(self.heights) >= 0 else PathKind.GRAND_DYCK

    @property
    def is_dyck(self) -> bool:
        return self.kind is PathKind.DYCK


@dataclass(frozen=True)
class PathFeatures:
    """Statistics of a path; abscissae are step counts, intervals half-open"""

    peaks: List[Tuple[int, int]]
    valleys: List[Tuple[int, int]]
    returns: List[int]
    factors: List[Tuple[int, int]]
    ascents: List[Tuple[int, int]]
    descents: List[Tuple[int, int]]
    area: int

    def to_dict(self) -> Dict:
        return {
            'peaks': [list(p) for p in self.peaks],
            'valleys': [list(v) for v in self.valleys],
            'returns': list(self.returns),
            'factors': [list(f) for f in self.factors],
            'area': self.area,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class BicolouredDyckPath:
    """Dyck path whose steps carry a colour constant on every factor"""

    word: PathWord
    colours: Tuple[Colour, ...]

    def __post_init__(self):
        if not self.word.is_dyck:
            raise PathError(f'{self.word} goes below the x-axis')
        if len(self.colours) != len(self.word):
            raise PathError('one colour per step required')
        for start, end in _factors(self.word):
            if len(set(self.colours[start:end])) > 1:
                raise PathError(f'colour changes inside factor {start}..{end} of {self}')

    @classmethod
    def from_string(cls, text: str) -> 'BicolouredDyckPath':
        text = text.strip()
        if any(c not in 'UDud' for c in text):
            raise PathError(f'invalid bicoloured word {text!r}')
        colours = tuple(Colour.BLACK if c.islower() else Colour.WHITE for c in text)
        return cls(PathWord.from_string(text.upper()), colours)

    @classmethod
    def from_factors(cls, factors: Sequence[Tuple[PathWord, Colour]]) -> 'BicolouredDyckPath':
        steps: List[Step] = []
        colours: List[Colour] = []
        for word, colour in factors:
            steps.extend(word.steps)
            colours.extend([colour] * len(word))
        return cls(PathWord(tuple(steps)), tuple(colours))

    def __str__(self) -> str:
        return ''.join(s.letter.lower() if c is Colour.BLACK else s.letter
                       for s, c in zip(self.word.steps, self.colours))

    def __len__(self) -> int:
        return len(self.word)

    @property
    def factor_colours(self) -> List[Tuple[Tuple[int, int], Colour]]:
        return [((start, end), self.colours[start]) for start, end in _factors(self.word)]

    def coloured_points(self) -> List[bool]:
        """For every abscissa k: strictly above the axis inside a Black factor"""
        marks = [False] * (len(self.word) + 1)
        for (start, end), colour in self.factor_colours:
            if colour is Colour.BLACK:
                for k in range(start + 1, end):
                    marks[k] = True
        return marks


def parse_path(text: str, bicoloured: Optional[bool] = None,
               kind: PathKind = PathKind.GRAND_DYCK) -> Union[PathWord, BicolouredDyckPath]:
    """Parse a step word.

    Args:
        text: word over U/D, or over U/D/u/d for a bicoloured path (lowercase = Black)
        bicoloured: force the bicoloured reading; by default any lowercase letter implies it
        kind: PathKind.DYCK rejects words dipping below the axis

    Returns:
        PathWord or BicolouredDyckPath with every invariant checked
    """
    if bicoloured is None:
        bicoloured = any(c in 'ud' for c in text)
    if bicoloured:
        return BicolouredDyckPath.from_string(text)
    word = PathWord.from_string(text)
    if kind is PathKind.DYCK and not word.is_dyck:
        raise PathError(f'{word} is not a Dyck path')
    return word


# Features

def _factors(word: PathWord) -> List[Tuple[int, int]]:
    zeros = [k for k, h in enumerate(word.heights) if h == 0]
    return list(zip(zeros, zeros[1:]))


def _runs(word: PathWord, step: Step) -> List[Tuple[int, int]]:
    runs = []
    k = 0
    steps = word.steps
    while k < len(steps):
        if steps[k] is step:
            start = k
            while k < len(steps) and steps[k] is step:
                k += 1
            runs.append((start, k))
        else:
            k += 1
    return runs


def features(path: PathWord) -> PathFeatures:
    steps, heights = path.steps, path.heights
    peaks = [(k + 1, heights[k + 1]) for k in range(len(steps) - 1)
             if steps[k] is Step.UP and steps[k + 1] is Step.DOWN]
    valleys = [(k + 1, heights[k + 1]) for k in range(len(steps) - 1)
               if steps[k] is Step.DOWN and steps[k + 1] is Step.UP]
    returns = [k for k in range(1, len(heights)) if heights[k] == 0]
    h = np.asarray(heights, dtype=np.int64)
    area = int((h[:-1] + h[1:]).sum()) // 2
    return PathFeatures(
        peaks=peaks,
        valleys=valleys,
        returns=returns,
        factors=_factors(path),
        ascents=_runs(path, Step.UP),
        descents=_runs(path, Step.DOWN),
        area=area,
    )


def count_peaks(path: PathWord) -> int:
    return len(features(path).peaks)


def count_returns(path: PathWord) -> int:
    return len(features(path).returns)


def count_positive_peaks(path: PathWord) -> int:
    return sum(1 for _, h in features(path).peaks if h > 0)


def count_negative_valleys(path: PathWord) -> int:
    return sum(1 for _, h in features(path).valleys if h < 0)


# Counting and enumeration

def central_binomial(n: int) -> int:
    return comb(2 * n, n)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def ballot_number(n: int, k: int) -> int:
    """Dyck paths of semilength n with exactly k returns: k/(2n-k)·C(2n-k, n)"""
    if n == 0:
        return 1 if k == 0 else 0
    if not 1 <= k <= n:
        return 0
    return k * comb(2 * n - k, n) // (2 * n - k)


def enumerate_grand_dyck(n: int) -> List[PathWord]:
    """All C(2n, n) Grand-Dyck paths of semilength n, lexicographic with U < D"""
    if n < 0:
        raise PathError(f'negative semilength {n}')
    check_size(n, get_config().max_n, 'enumerate_grand_dyck')
    paths = []
    for ups in combinations(range(2 * n), n):
        steps = [Step.DOWN] * (2 * n)
        for i in ups:
            steps[i] = Step.UP
        paths.append(PathWord(tuple(steps)))
    logger.debug(f'GD_{n}: {len(paths)} paths')
    return paths


def enumerate_dyck(n: int, k_returns: Optional[int] = None,
                   k_peaks: Optional[int] = None) -> List[PathWord]:
    paths = [p for p in enumerate_grand_dyck(n) if p.is_dyck]
    if k_returns is not None:
        paths = [p for p in paths if count_returns(p) == k_returns]
    if k_peaks is not None:
        paths = [p for p in paths if count_peaks(p) == k_peaks]
    return paths


def minimum_path(n: int) -> PathWord:
    return PathWord((Step.DOWN,) * n + (Step.UP,) * n)


def maximum_path(n: int) -> PathWord:
    return PathWord((Step.UP,) * n + (Step.DOWN,) * n)


# Fold

def _reflect(word: Sequence[Step]) -> Tuple[Step, ...]:
    return tuple(Step(-s) for s in word)


def fold(path: PathWord) -> BicolouredDyckPath:
    """Reflect every sub-axis factor upward and colour it Black"""
    pieces = []
    for start, end in _factors(path):
        piece = path.steps[start:end]
        if piece[0] is Step.DOWN:
            pieces.append((PathWord(_reflect(piece)), Colour.BLACK))
        else:
            pieces.append((PathWord(piece), Colour.WHITE))
    return BicolouredDyckPath.from_factors(pieces)


def unfold(path: BicolouredDyckPath) -> PathWord:
    steps: List[Step] = []
    for (start, end), colour in path.factor_colours:
        piece = path.word.steps[start:end]
        steps.extend(_reflect(piece) if colour is Colour.BLACK else piece)
    return PathWord(tuple(steps))


# Lattice structure

def _check_lengths(p, q) -> None:
    if len(p) != len(q):
        raise PathError(f'length mismatch: {p} ({len(p)}) vs {q} ({len(q)})')


def gd_leq(p: PathWord, q: PathWord) -> bool:
    """P lies weakly below Q"""
    _check_lengths(p, q)
    return all(a <= b for a, b in zip(p.heights, q.heights))


def gd_join(p: PathWord, q: PathWord) -> PathWord:
    _check_lengths(p, q)
    return PathWord.from_heights(np.maximum(p.heights, q.heights))


def gd_meet(p: PathWord, q: PathWord) -> PathWord:
    _check_lengths(p, q)
    return PathWord.from_heights(np.minimum(p.heights, q.heights))


def gd_rank(path: PathWord) -> int:
    """(A(P) + n²) / 2, the rank of P in GD_n"""
    return (features(path).area + path.semilength ** 2) // 2


def gd_covers(p: PathWord, q: PathWord) -> bool:
    """Q is P with a single valley DU turned into a peak UD"""
    _check_lengths(p, q)
    diff = [k for k in range(len(p)) if p.steps[k] != q.steps[k]]
    return (len(diff) == 2 and diff[1] == diff[0] + 1
            and p.steps[diff[0]] is Step.DOWN and q.steps[diff[0]] is Step.UP)


def height_matrix(paths: Sequence[PathWord]) -> np.ndarray:
    if not paths:
        return np.zeros((0, 1), dtype=np.int64)
    return np.array([p.heights for p in paths], dtype=np.int64)


def gd_lattice(n: int) -> FinitePoset:
    """GD_n ordered by height, as a FinitePoset over PathWord elements"""
    paths = enumerate_grand_dyck(n)
    h = height_matrix(paths)
    leq = (h[:, None, :] <= h[None, :, :]).all(axis=2)
    return FinitePoset(paths, leq)


# Young lattice of the n x n box

def young_partition(path: PathWord) -> Tuple[int, ...]:
    """Ups preceding each Down, largest first; the minimum path gives ()"""
    parts = []
    ups = 0
    for s in path.steps:
        if s is Step.UP:
            ups += 1
        else:
            parts.append(ups)
    return tuple(sorted((p for p in parts if p), reverse=True))


def box_partitions(n: int) -> List[Tuple[int, ...]]:
    """Integer partitions with at most n parts, each at most n"""
    result: List[Tuple[int, ...]] = []

    def extend(prefix: List[int], cap: int):
        result.append(tuple(prefix))
        if len(prefix) == n:
            return
        for part in range(1, cap + 1):
            extend(prefix + [part], part)

    extend([], n)
    return result


def partition_leq(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """Young-diagram containment"""
    if len(lam) > len(mu):
        return False
    return all(a <= b for a, b in zip(lam, mu))


# Weights

def _weight_terms(path: PathWord) -> List[Tuple[int, int]]:
    feats = features(path)
    a_points = sorted([(k, h) for k, h in feats.peaks if h > 0]
                      + [(k, h) for k, h in feats.valleys if h < 0])
    b_dict = {k: h for k, h in feats.peaks if h <= 0}
    b_dict.update({k: h for k, h in feats.valleys if h >= 0})
    b_dict.update({k: 0 for k in feats.returns})
    b_points = sorted(b_dict.items())
    if len(a_points) != len(b_points):
        raise PathError(f'{path}: {len(a_points)} extremal points against {len(b_points)} resting points')
    return [(abs(a[1]), abs(b[1])) for a, b in zip(a_points, b_points)]


def path_weight(path: PathWord) -> int:
    """Product of C(p_i - 1, v_i) over absolute extremal heights p and resting heights v"""
    weight = 1
    for p, v in _weight_terms(path):
        weight *= comb(p - 1, v)
    return weight


def dyck_profile(path: PathWord) -> List[Tuple[int, int]]:
    """Peak heights paired with the height of the following valley (0 after the last peak)"""
    if not path.is_dyck:
        raise PathError(f'{path} is not a Dyck path')
    feats = features(path)
    valleys = [h for _, h in feats.valleys]
    return [(h, valleys[i] if i < len(valleys) else 0) for i, (_, h) in enumerate(feats.peaks)]


def bicoloured_leq(p: BicolouredDyckPath, q: BicolouredDyckPath) -> bool:
    _check_lengths(p, q)
    p_col, q_col = p.coloured_points(), q.coloured_points()
    for k in range(len(p) + 1):
        hp, hq = p.word(k), q.word(k)
        if p_col[k] and q_col[k]:
            if hp < hq:
                return False
        elif not p_col[k] and not q_col[k]:
            if hp > hq:
                return False
        elif q_col[k]:
            return False
    return True


def young_lattice(n: int) -> FinitePoset:
    """Partitions inside the n x n box ordered by containment"""
    return poset_from_leq(box_partitions(n), partition_leq)
