"""
Set partitions and Bell matchings
Standard-form partitions, components, the atomic generating function and
its Riordan array, Bell matchings of Dyck words, and the bijection between
factor-bicoloured Dyck paths and component-bicoloured noncrossing partitions
"""

import json
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import pandas as pd

from src.config import get_config, check_size
from src.lattice_paths import BicolouredDyckPath, Colour, PathWord, Step, enumerate_dyck

logger = logging.getLogger(__name__)

Block = Tuple[int, ...]


class PartitionError(ValueError):
    """Malformed partition, matching or series input"""


# Set partitions

def _standardise(blocks: Sequence[Sequence[int]]) -> Tuple[Block, ...]:
    return tuple(sorted((tuple(sorted(b, reverse=True)) for b in blocks), key=lambda b: b[0]))


def _format_blocks(blocks: Sequence[Block], n: int, marks: Sequence[str] = ()) -> str:
    sep = '' if n <= 9 else ','
    marks = list(marks) or [''] * len(blocks)
    return '|'.join(mark + sep.join(str(e) for e in block) for mark, block in zip(marks, blocks))


def _parse_block(text: str) -> List[int]:
    text = text.strip()
    if not text:
        raise PartitionError('empty block')
    try:
        if ',' in text:
            return [int(e) for e in text.split(',')]
        return [int(c) for c in text]
    except ValueError:
        raise PartitionError(f'invalid block {text!r}') from None


@dataclass(frozen=True)
class SetPartition:
    """Partition of {1..n}; blocks decreasing inside, ordered by increasing maxima"""

    blocks: Tuple[Block, ...]

    def __post_init__(self):
        if any(len(b) == 0 for b in self.blocks):
            raise PartitionError('empty block')
        blocks = _standardise(self.blocks)
        elements = sorted(e for b in blocks for e in b)
        if elements != list(range(1, len(elements) + 1)):
            raise PartitionError(f'blocks {blocks} do not partition {{1..{len(elements)}}}')
        object.__setattr__(self, 'blocks', blocks)

    @classmethod
    def from_string(cls, text: str) -> 'SetPartition':
        if not text.strip():
            return cls(())
        return cls(tuple(tuple(_parse_block(b)) for b in text.split('|')))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __str__(self) -> str:
        return _format_blocks(self.blocks, self.n)

    def __len__(self) -> int:
        return len(self.blocks)


def enumerate_partitions(n: int) -> List[SetPartition]:
    """All Bell(n) partitions of {1..n} by restricted growth strings"""
    check_size(n, get_config().max_partition_n, 'enumerate_partitions')
    result: List[SetPartition] = []

    def grow(blocks: List[List[int]], element: int):
        if element > n:
            result.append(SetPartition(tuple(tuple(b) for b in blocks)))
            return
        for b in blocks:
            b.append(element)
            grow(blocks, element + 1)
            b.pop()
        blocks.append([element])
        grow(blocks, element + 1)
        blocks.pop()

    grow([], 1)
    logger.debug(f'partitions of [{n}]: {len(result)}')
    return result


def component_cuts(partition: SetPartition) -> List[int]:
    """Block indices j such that blocks 1..j cover exactly {1..max of block j}"""
    cuts = []
    covered = 0
    for j, block in enumerate(partition.blocks):
        covered += len(block)
        if covered == block[0]:
            cuts.append(j)
    return cuts


def components(partition: SetPartition) -> List[Tuple[Block, ...]]:
    groups = []
    start = 0
    for cut in component_cuts(partition):
        groups.append(partition.blocks[start:cut + 1])
        start = cut + 1
    return groups


def component_intervals(partition: SetPartition) -> List[Tuple[int, int]]:
    intervals = []
    low = 1
    for group in components(partition):
        high = group[-1][0]
        intervals.append((low, high))
        low = high + 1
    return intervals


def is_atomic(partition: SetPartition) -> bool:
    return len(component_cuts(partition)) == 1


def is_noncrossing(partition: SetPartition) -> bool:
    """No a < b < c < d with a, c in one block and b, d in another"""
    for first, second in combinations(partition.blocks, 2):
        for a, c in combinations(sorted(first), 2):
            inside = any(a < b < c for b in second)
            if inside and any(d < a or d > c for d in second):
                return False
    return True


def t_table(n: int) -> List[int]:
    """t[k] = partitions of {1..n} with exactly k components (brute force)"""
    counts = [0] * (n + 1)
    for p in enumerate_partitions(n):
        counts[len(component_cuts(p))] += 1
    return counts


def t_triangle(n_max: int) -> pd.DataFrame:
    rows = [t_table(n)[1:] + [0] * (n_max - n) for n in range(1, n_max + 1)]
    frame = pd.DataFrame(rows, index=range(1, n_max + 1), columns=range(1, n_max + 1))
    frame.index.name = 'n'
    frame.columns.name = 'k'
    return frame


# Coloured partitions

@dataclass(frozen=True)
class ColouredPartition:
    """Set partition with one colour per component"""

    partition: SetPartition
    colours: Tuple[Colour, ...]

    def __post_init__(self):
        if len(self.colours) != len(component_cuts(self.partition)):
            raise PartitionError(
                f'{len(self.colours)} colours for {len(component_cuts(self.partition))} components of {self.partition}')

    @classmethod
    def from_string(cls, text: str) -> 'ColouredPartition':
        """Parse '*21|3'; a leading '*' marks a Black block"""
        if not text.strip():
            return cls(SetPartition(()), ())
        marked = []
        for raw in text.split('|'):
            raw = raw.strip()
            black = raw.startswith('*')
            marked.append((tuple(_parse_block(raw.lstrip('*'))), black))
        partition = SetPartition(tuple(b for b, _ in marked))
        black_of = {tuple(sorted(b, reverse=True)): black for b, black in marked}
        colours = []
        for group in components(partition):
            flags = {black_of[b] for b in group}
            if len(flags) > 1:
                raise PartitionError(f'colour changes inside component {group} of {text!r}')
            colours.append(Colour.BLACK if flags.pop() else Colour.WHITE)
        return cls(partition, tuple(colours))

    @property
    def block_colours(self) -> List[Colour]:
        result = []
        for group, colour in zip(components(self.partition), self.colours):
            result.extend([colour] * len(group))
        return result

    @property
    def is_noncrossing(self) -> bool:
        return is_noncrossing(self.partition)

    def __str__(self) -> str:
        marks = ['*' if c is Colour.BLACK else '' for c in self.block_colours]
        return _format_blocks(self.partition.blocks, self.partition.n, marks)

    def to_dict(self) -> Dict:
        return {
            'blocks': [list(b) for b in self.partition.blocks],
            'components': [list(iv) for iv in component_intervals(self.partition)],
            'colours': [c.value for c in self.colours],
            'noncrossing': self.is_noncrossing,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def enumerate_coloured_partitions(n: int, noncrossing_only: bool = False) -> Iterator[ColouredPartition]:
    for p in enumerate_partitions(n):
        if noncrossing_only and not is_noncrossing(p):
            continue
        k = len(component_cuts(p))
        for mask in range(1 << k):
            yield ColouredPartition(
                p, tuple(Colour.BLACK if mask >> i & 1 else Colour.WHITE for i in range(k)))


def count_coloured_nc(n: int) -> int:
    return sum(1 << len(component_cuts(p)) for p in enumerate_partitions(n) if is_noncrossing(p))


# Power series

@dataclass(frozen=True)
class PowerSeries:
    """Truncated ordinary power series with exact integer coefficients"""

    coefficients: Tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> int:
        return self.coefficients[n] if 0 <= n < len(self.coefficients) else 0

    def _aligned(self, other: 'PowerSeries') -> int:
        return min(len(self.coefficients), len(other.coefficients))

    def __add__(self, other: 'PowerSeries') -> 'PowerSeries':
        m = self._aligned(other)
        return PowerSeries(tuple(self[i] + other[i] for i in range(m)))

    def __sub__(self, other: 'PowerSeries') -> 'PowerSeries':
        m = self._aligned(other)
        return PowerSeries(tuple(self[i] - other[i] for i in range(m)))

    def __mul__(self, other: 'PowerSeries') -> 'PowerSeries':
        m = self._aligned(other)
        return PowerSeries(tuple(sum(self[i] * other[k - i] for i in range(k + 1)) for k in range(m)))

    def __pow__(self, k: int) -> 'PowerSeries':
        result = PowerSeries.one(self.order)
        for _ in range(k):
            result = result * self
        return result

    @classmethod
    def one(cls, order: int) -> 'PowerSeries':
        return cls((1,) + (0,) * order)

    def reciprocal(self) -> 'PowerSeries':
        c0 = self[0]
        if c0 not in (1, -1):
            raise PartitionError(f'reciprocal needs constant term ±1, got {c0}')
        inv = [c0]
        for n in range(1, len(self.coefficients)):
            inv.append(-c0 * sum(self[i] * inv[n - i] for i in range(1, n + 1)))
        return PowerSeries(tuple(inv))


def bell_numbers(n_max: int) -> List[int]:
    """Bell(0..n_max) by the Bell triangle"""
    bells = [1]
    row = [1]
    for _ in range(n_max):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
        bells.append(row[0])
    return bells


def bell_series(order: int) -> PowerSeries:
    return PowerSeries(tuple(bell_numbers(order)))


def atomic_gf(order: int) -> PowerSeries:
    """P(x) = 1 - 1/B(x), the generating function of atomic partitions"""
    return PowerSeries.one(order) - bell_series(order).reciprocal()


def riordan_t(n: int, k: int) -> int:
    """[x^n] P(x)^k: partitions of {1..n} with k components"""
    return (atomic_gf(n) ** k)[n]


def species_identity_holds(order: int) -> bool:
    """B(x) - 1 = B(x)·P(x) up to x^order"""
    b = bell_series(order)
    return (b - PowerSeries.one(order)) == b * atomic_gf(order)


def coloured_row_sum(row: Sequence[int]) -> int:
    """Σ_k 2^k row[k]"""
    return sum(value << k for k, value in enumerate(row))


def count_component_bicoloured(n: int) -> int:
    return coloured_row_sum(t_table(n))


@lru_cache(maxsize=None)
def stirling(n: int, k: int) -> int:
    """Stirling numbers of the second kind"""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling(n - 1, k) + stirling(n - 1, k - 1)


def count_bicoloured_partitions(n: int) -> int:
    return sum(stirling(n, k) << k for k in range(n + 1))


# Bell matchings

@dataclass(frozen=True)
class BellMatching:
    """Arcs (down index, up index) over the step positions of a Dyck word"""

    word: PathWord
    arcs: Tuple[Tuple[int, int], ...]
    colours: Tuple[Colour, ...] = ()

    def __post_init__(self):
        ups = [u for _, u in self.arcs]
        if len(set(ups)) != len(ups):
            raise PartitionError(f'Up step matched twice in {self.arcs}')
        for d, u in self.arcs:
            if not (u < d and self.word.steps[u] is Step.UP and self.word.steps[d] is Step.DOWN):
                raise PartitionError(f'arc ({d}, {u}) does not join an Up to a later Down')
            if self.colours and self.colours[u] is not self.colours[d]:
                raise PartitionError(f'arc ({d}, {u}) joins steps of different colours')

    @property
    def is_noncrossing(self) -> bool:
        spans = [(u, d) for d, u in self.arcs]
        return not any(a < c < b < e for a, b in spans for c, e in spans)

    def __str__(self) -> str:
        return ' '.join(f'{u}-{d}' for d, u in sorted(self.arcs, key=lambda arc: arc[1]))


def _down_runs(word: PathWord) -> List[Tuple[int, int]]:
    runs = []
    k = 0
    while k < len(word):
        if word.steps[k] is Step.DOWN:
            start = k
            while k < len(word) and word.steps[k] is Step.DOWN:
                k += 1
            runs.append((start, k))
        else:
            k += 1
    return runs


def _require_dyck(word: PathWord) -> None:
    if not word.is_dyck:
        raise PartitionError(f'{word} is not a Dyck word')


def enumerate_bell_matchings(word: PathWord) -> List[BellMatching]:
    """Every matching where each Down-run opens on its adjacent Up and the run's arcs nest"""
    _require_dyck(word)
    runs = _down_runs(word)
    found: List[BellMatching] = []

    def extend(run_index: int, free: List[int], arcs: List[Tuple[int, int]]):
        if run_index == len(runs):
            found.append(BellMatching(word, tuple(arcs)))
            return
        start, end = runs[run_index]
        pending = [u for u in free if u < start]
        adjacent = start - 1
        others = [u for u in pending if u != adjacent]
        for chosen in combinations(sorted(others, reverse=True), end - start - 1):
            targets = [adjacent] + list(chosen)
            taken = set(targets)
            new_arcs = arcs + list(zip(range(start, end), targets))
            extend(run_index + 1, [u for u in free if u not in taken], new_arcs)

    ups = [k for k, s in enumerate(word.steps) if s is Step.UP]
    extend(0, ups, [])
    return found


def noncrossing_matching(word: PathWord) -> BellMatching:
    """The unique crossing-free Bell matching: every Down takes the latest open Up"""
    _require_dyck(word)
    stack: List[int] = []
    arcs = []
    for k, s in enumerate(word.steps):
        if s is Step.UP:
            stack.append(k)
        else:
            arcs.append((k, stack.pop()))
    return BellMatching(word, tuple(arcs))


def enumerate_bicoloured_matchings(path: BicolouredDyckPath) -> List[BellMatching]:
    return [BellMatching(m.word, m.arcs, path.colours) for m in enumerate_bell_matchings(path.word)]


# Paths <-> noncrossing partitions

def nc_from_bicoloured(path: BicolouredDyckPath) -> ColouredPartition:
    """Down-runs of the crossing-free matching become blocks, factors become components"""
    word = path.word
    label = {}
    for k, s in enumerate(word.steps):
        if s is Step.UP:
            label[k] = len(label) + 1
    matched = dict(noncrossing_matching(word).arcs)
    blocks = [tuple(label[matched[d]] for d in range(start, end)) for start, end in _down_runs(word)]
    partition = SetPartition(tuple(blocks))
    colours = tuple(colour for _, colour in path.factor_colours)
    return ColouredPartition(partition, colours)


def bicoloured_from_nc(coloured: ColouredPartition) -> BicolouredDyckPath:
    if not coloured.is_noncrossing:
        raise PartitionError(f'{coloured} is not noncrossing')
    steps: List[Step] = []
    colours: List[Colour] = []
    opened = 0
    for block, colour in zip(coloured.partition.blocks, coloured.block_colours):
        grow = block[0] - opened
        steps.extend([Step.UP] * grow + [Step.DOWN] * len(block))
        colours.extend([colour] * (grow + len(block)))
        opened = block[0]
    return BicolouredDyckPath(PathWord(tuple(steps)), tuple(colours))


def partition_summary(n: int) -> Dict[str, int]:
    """Counts of partitions of {1..n} by kind"""
    parts = enumerate_partitions(n)
    return {
        'partitions': len(parts),
        'noncrossing': sum(1 for p in parts if is_noncrossing(p)),
        'atomic': sum(1 for p in parts if is_atomic(p)),
    }


def bell_matching_totals(n: int, words: Optional[Sequence[PathWord]] = None) -> int:
    words = words if words is not None else enumerate_dyck(n)
    return sum(len(enumerate_bell_matchings(w)) for w in words)
