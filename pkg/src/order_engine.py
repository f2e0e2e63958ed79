"""Finite posets and lattices over boolean order matrices.

Elements are opaque hashable labels; the order lives in a read-only numpy
boolean matrix ``leq`` with ``leq[i, j]`` iff element i <= element j. All
derived structure (covers, joins, meets, ranks) is computed lazily and
cached, so a poset value is immutable once built.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.config import get_config, check_size

logger = logging.getLogger(__name__)


class PosetError(ValueError):
    """Invalid poset or lattice input; ``witness`` holds offending elements"""

    def __init__(self, message: str, witness: Tuple = ()):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class LatticeReport:
    is_lattice: bool
    is_distributive: bool
    is_graded: bool
    whitney_numbers: List[int]
    join_irreducible_count: int
    is_unimodal: bool
    size: int
    witness: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'isLattice': self.is_lattice,
            'isDistributive': self.is_distributive,
            'isGraded': self.is_graded,
            'whitneyNumbers': list(self.whitney_numbers),
            'joinIrreducibleCount': self.join_irreducible_count,
            'isUnimodal': self.is_unimodal,
            'size': self.size,
            'witness': self.witness,
        }


def _freeze(matrix: np.ndarray) -> np.ndarray:
    matrix.flags.writeable = False
    return matrix


class FinitePoset:
    """Immutable finite partial order.

    Conventions:
        - cover[i, j] is True iff element j covers element i
        - lower_covers[j] lists the i covered by j, upper_covers[i] the j covering i
        - lub[i, j] / glb[i, j] are join / meet indices (lattices only)
    """

    def __init__(self, elements: Sequence[Hashable], leq: np.ndarray):
        leq = np.array(leq, dtype=bool)
        n = len(elements)
        if leq.shape != (n, n):
            raise PosetError(f'leq must be {n}x{n}, got {leq.shape}')
        self.elements: Tuple[Hashable, ...] = tuple(elements)
        self.leq = _freeze(leq)
        self._index = {x: i for i, x in enumerate(self.elements)}
        if len(self._index) != n:
            raise PosetError('duplicate elements')

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f'FinitePoset(size={len(self)}, covers={len(self.hasse())})'

    def index(self, x: Hashable) -> int:
        return self._index[x]

    def le(self, x: Hashable, y: Hashable) -> bool:
        return bool(self.leq[self._index[x], self._index[y]])

    # Construction

    @classmethod
    def from_matrix(cls, elements: Sequence[Hashable], leq: np.ndarray) -> 'FinitePoset':
        """Build and validate the partial order axioms"""
        poset = cls(elements, leq)
        poset.validate()
        return poset

    def validate(self) -> None:
        rel = self.leq
        n = len(self)
        diag = np.diag(rel)
        if not diag.all():
            i = int(np.flatnonzero(~diag)[0])
            raise PosetError(f'not reflexive at {self.elements[i]!r}', (self.elements[i],))
        sym = rel & rel.T & ~np.eye(n, dtype=bool)
        if sym.any():
            i, j = (int(v) for v in np.argwhere(sym)[0])
            raise PosetError(
                f'not antisymmetric: {self.elements[i]!r} and {self.elements[j]!r}',
                (self.elements[i], self.elements[j]),
            )
        rel_int = rel.astype(np.int64)
        through = (rel_int @ rel_int) > 0
        broken = through & ~rel
        if broken.any():
            i, k = (int(v) for v in np.argwhere(broken)[0])
            j = int(np.flatnonzero(rel[i] & rel[:, k])[0])
            raise PosetError(
                f'not transitive: {self.elements[i]!r} <= {self.elements[j]!r} <= {self.elements[k]!r}',
                (self.elements[i], self.elements[j], self.elements[k]),
            )

    # Covers

    @cached_property
    def cover(self) -> np.ndarray:
        'nxn boolean matrix. cover[i,j] iff j covers i (transitive reduction)'
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        lt_int = lt.astype(np.int64)
        any_inbetween = (lt_int @ lt_int) > 0
        return _freeze(lt & ~any_inbetween)

    @cached_property
    def lower_covers(self) -> List[List[int]]:
        return [list(np.flatnonzero(self.cover[:, j])) for j in range(len(self))]

    @cached_property
    def upper_covers(self) -> List[List[int]]:
        return [list(np.flatnonzero(self.cover[i, :])) for i in range(len(self))]

    def hasse(self) -> List[Tuple[Hashable, Hashable]]:
        """Cover pairs (x, y) with y covering x"""
        return [(self.elements[i], self.elements[j]) for i, j in np.argwhere(self.cover)]

    def reflexive_transitive_closure_of_covers(self) -> np.ndarray:
        n = len(self)
        closure = self.cover | np.eye(n, dtype=bool)
        while True:
            step = closure | ((closure.astype(np.int64) @ closure.astype(np.int64)) > 0)
            if (step == closure).all():
                return step
            closure = step

    @cached_property
    def toposort(self) -> List[int]:
        n = len(self)
        indeg = [len(self.lower_covers[j]) for j in range(n)]
        queue = deque(i for i in range(n) if indeg[i] == 0)
        order = []
        while queue:
            u = queue.popleft()
            order.append(u)
            for v in self.upper_covers[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    queue.append(v)
        return order

    # Bounds

    @cached_property
    def minimal(self) -> List[int]:
        return [j for j in range(len(self)) if not self.lower_covers[j]]

    @cached_property
    def maximal(self) -> List[int]:
        return [i for i in range(len(self)) if not self.upper_covers[i]]

    @cached_property
    def bottom(self) -> Optional[int]:
        found = np.flatnonzero(self.leq.all(axis=1))
        return int(found[0]) if len(found) else None

    @cached_property
    def top(self) -> Optional[int]:
        found = np.flatnonzero(self.leq.all(axis=0))
        return int(found[0]) if len(found) else None

    # Lattice structure

    def _bound_table(self, rel: np.ndarray) -> Tuple[Optional[np.ndarray], Optional[Tuple[int, int]]]:
        """Least element of every pairwise set of common upper bounds under rel"""
        n = len(self)
        up_size = rel.sum(axis=1)
        table = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            common = rel[i][None, :] & rel
            size = common.sum(axis=1)
            least = common & (up_size[None, :] == size[:, None])
            found = least.sum(axis=1)
            if (found != 1).any():
                j = int(np.flatnonzero(found != 1)[0])
                return None, (i, j)
            table[i] = least.argmax(axis=1)
        return _freeze(table), None

    @cached_property
    def _lub(self):
        return self._bound_table(self.leq)

    @cached_property
    def _glb(self):
        return self._bound_table(self.leq.T)

    @property
    def is_lattice(self) -> bool:
        return len(self) > 0 and self._lub[0] is not None and self._glb[0] is not None

    def _require_lattice(self) -> None:
        if not self.is_lattice:
            pair = self._lub[1] or self._glb[1] or ()
            witness = tuple(self.elements[i] for i in pair)
            raise PosetError(f'not a lattice: no join or meet for {witness!r}', witness)

    @property
    def lub(self) -> np.ndarray:
        self._require_lattice()
        return self._lub[0]

    @property
    def glb(self) -> np.ndarray:
        self._require_lattice()
        return self._glb[0]

    def join(self, x: Hashable, y: Hashable) -> Hashable:
        return self.elements[self.lub[self._index[x], self._index[y]]]

    def meet(self, x: Hashable, y: Hashable) -> Hashable:
        return self.elements[self.glb[self._index[x], self._index[y]]]

    @cached_property
    def distributive_witness(self) -> Optional[Tuple[int, int, int]]:
        'Find i, j, k violating x∧(y∨z) = (x∧y)∨(x∧z). None otherwise'
        lub, glb = self.lub, self.glb
        for i in range(len(self)):
            diff = glb[i, lub] != lub[np.ix_(glb[i, :], glb[i, :])]
            if diff.any():
                j, k = (int(v) for v in np.argwhere(diff)[0])
                return i, j, k
        return None

    @property
    def is_distributive(self) -> bool:
        return self.is_lattice and self.distributive_witness is None

    # Ranks

    @cached_property
    def _chain_lengths(self) -> Tuple[np.ndarray, np.ndarray]:
        n = len(self)
        longest = np.zeros(n, dtype=np.int64)
        shortest = np.zeros(n, dtype=np.int64)
        for j in self.toposort:
            below = self.lower_covers[j]
            if below:
                longest[j] = max(longest[i] for i in below) + 1
                shortest[j] = min(shortest[i] for i in below) + 1
        return longest, shortest

    @property
    def is_graded(self) -> bool:
        longest, shortest = self._chain_lengths
        if not (longest == shortest).all():
            return False
        tops = {int(longest[i]) for i in self.maximal}
        return len(tops) <= 1

    @property
    def rank(self) -> np.ndarray:
        """Length of the longest chain below each element"""
        return self._chain_lengths[0]

    def rank_of(self, x: Hashable) -> int:
        return int(self.rank[self._index[x]])

    @property
    def whitney_numbers(self) -> List[int]:
        if not len(self):
            return []
        return [int(c) for c in np.bincount(self.rank)]

    # Irreducibles

    @cached_property
    def join_irreducible_indices(self) -> List[int]:
        return [j for j in range(len(self)) if len(self.lower_covers[j]) == 1]

    def subposet(self, indices: Sequence[int]) -> 'FinitePoset':
        idx = list(indices)
        return FinitePoset([self.elements[i] for i in idx], self.leq[np.ix_(idx, idx)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinitePoset):
            return NotImplemented
        if set(self.elements) != set(other.elements):
            return False
        perm = [other.index(x) for x in self.elements]
        return bool((self.leq == other.leq[np.ix_(perm, perm)]).all())

    __hash__ = None


# Builders

def poset_from_leq(elements: Sequence[Hashable], comparator: Callable[[Any, Any], bool]) -> FinitePoset:
    """Tabulate comparator over all pairs and validate the axioms"""
    elements = list(elements)
    n = len(elements)
    leq = np.zeros((n, n), dtype=bool)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            leq[i, j] = bool(comparator(x, y))
    return FinitePoset.from_matrix(elements, leq)


def chain(n: int) -> FinitePoset:
    """The chain C_n on 0 < 1 < ... < n-1"""
    idx = np.arange(n)
    return FinitePoset(list(range(n)), idx[:, None] <= idx[None, :])


def antichain(n: int) -> FinitePoset:
    return FinitePoset(list(range(n)), np.eye(n, dtype=bool))


def product(p: FinitePoset, q: FinitePoset) -> FinitePoset:
    """Cartesian product ordered componentwise; elements are pairs"""
    elements = [(x, y) for x in p.elements for y in q.elements]
    leq = np.kron(p.leq.astype(np.int64), q.leq.astype(np.int64)) > 0
    return FinitePoset(elements, leq)


# Lattice analysis

def hasse(poset: FinitePoset) -> List[Tuple[Hashable, Hashable]]:
    return poset.hasse()


def is_lattice(poset: FinitePoset) -> bool:
    return poset.is_lattice


def is_distributive(poset: FinitePoset) -> bool:
    return poset.is_distributive


def _is_unimodal(values: Sequence[int]) -> bool:
    i = 0
    while i + 1 < len(values) and values[i] <= values[i + 1]:
        i += 1
    while i + 1 < len(values) and values[i] >= values[i + 1]:
        i += 1
    return i + 1 >= len(values)


def rank_analysis(poset: FinitePoset) -> LatticeReport:
    lattice = poset.is_lattice
    witness = None
    distributive = False
    if lattice:
        found = poset.distributive_witness
        distributive = found is None
        if found is not None:
            x, y, z = (poset.elements[i] for i in found)
            witness = f'{x} ∧ ({y} ∨ {z}) != ({x} ∧ {y}) ∨ ({x} ∧ {z})'
    else:
        pair = poset._lub[1] or poset._glb[1]
        if pair:
            witness = f'no join or meet for {poset.elements[pair[0]]} and {poset.elements[pair[1]]}'
    graded = poset.is_graded
    whitney = poset.whitney_numbers if graded else []
    report = LatticeReport(
        is_lattice=lattice,
        is_distributive=distributive,
        is_graded=graded,
        whitney_numbers=whitney,
        join_irreducible_count=len(poset.join_irreducible_indices) if lattice else 0,
        is_unimodal=graded and _is_unimodal(whitney),
        size=len(poset),
        witness=witness,
    )
    logger.debug(f'rank analysis: {report.to_dict()}')
    return report


def whitney_frame(posets: Dict[Any, FinitePoset]) -> pd.DataFrame:
    """One row per poset, one column per rank"""
    rows = {key: pd.Series(p.whitney_numbers) for key, p in posets.items()}
    return pd.DataFrame(rows).T.fillna(0).astype(int)


def join_irreducibles(poset: FinitePoset) -> List[Hashable]:
    """Elements covering exactly one element (lattices only)"""
    if not poset.is_lattice:
        poset._require_lattice()
    return [poset.elements[j] for j in poset.join_irreducible_indices]


def spectrum(poset: FinitePoset) -> FinitePoset:
    if not poset.is_lattice:
        poset._require_lattice()
    return poset.subposet(poset.join_irreducible_indices)


def count_order_ideals(poset: FinitePoset) -> int:
    """Number of down-closed subsets"""
    n = len(poset)
    up = [sum(1 << j for j in np.flatnonzero(poset.leq[i])) for i in range(n)]
    down = [sum(1 << i for i in np.flatnonzero(poset.leq[:, j])) for j in range(n)]
    memo: Dict[int, int] = {0: 1}

    def count(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        x = next(i for i in range(n) if mask >> i & 1 and down[i] & mask == 1 << i)
        total = count(mask & ~(1 << x)) + count(mask & ~up[x])
        memo[mask] = total
        return total

    return count((1 << n) - 1)


# Isomorphism

def _signatures(poset: FinitePoset) -> List[Tuple[int, ...]]:
    longest, shortest = poset._chain_lengths
    below = poset.leq.sum(axis=0)
    above = poset.leq.sum(axis=1)
    return [
        (int(longest[i]), int(shortest[i]), len(poset.lower_covers[i]),
         len(poset.upper_covers[i]), int(below[i]), int(above[i]))
        for i in range(len(poset))
    ]


def find_isomorphism(p: FinitePoset, q: FinitePoset, max_size: Optional[int] = None) -> Optional[Dict[Hashable, Hashable]]:
    """Order isomorphism p -> q as an element map, or None.

    Backtracking over a topological order of p, restricted to candidates of
    q with the same (rank, up-degree, down-degree, ...) signature.
    """
    limit = max_size if max_size is not None else get_config().max_poset_elements
    check_size(max(len(p), len(q)), limit, 'is_isomorphic')
    n = len(p)
    if n != len(q):
        return None
    sig_p, sig_q = _signatures(p), _signatures(q)
    if sorted(sig_p) != sorted(sig_q):
        return None
    if n == 0:
        return {}

    candidates = [[j for j in range(n) if sig_q[j] == sig_p[i]] for i in range(n)]
    order = sorted(p.toposort, key=lambda i: (len(candidates[i]), p.rank[i]))
    a, b = p.leq, q.leq
    image = [-1] * n
    used = [False] * n
    placed: List[int] = []

    def consistent(i: int, j: int) -> bool:
        if not placed:
            return True
        src = np.array(placed)
        dst = np.array([image[k] for k in placed])
        return bool((a[i, src] == b[j, dst]).all() and (a[src, i] == b[dst, j]).all())

    def backtrack(pos: int) -> bool:
        if pos == n:
            return True
        i = order[pos]
        for j in candidates[i]:
            if not used[j] and consistent(i, j):
                image[i], used[j] = j, True
                placed.append(i)
                if backtrack(pos + 1):
                    return True
                placed.pop()
                image[i], used[j] = -1, False
        return False

    if not backtrack(0):
        return None
    return {p.elements[i]: q.elements[image[i]] for i in range(n)}


def is_isomorphic(p: FinitePoset, q: FinitePoset, max_size: Optional[int] = None) -> bool:
    return find_isomorphism(p, q, max_size) is not None


def is_order_isomorphism(p: FinitePoset, q: FinitePoset, mapping: Callable[[Hashable], Hashable]) -> bool:
    """Check that an explicit map is a bijection preserving and reflecting order"""
    images = [mapping(x) for x in p.elements]
    if len(set(images)) != len(p) or set(images) != set(q.elements):
        return False
    perm = [q.index(y) for y in images]
    return bool((p.leq == q.leq[np.ix_(perm, perm)]).all())


# Bruhat order

def _dominance(word: Sequence[Any]) -> np.ndarray:
    """Cumulative counts #{a <= i : u(a) >= j} over value ranks"""
    ranks = np.argsort(np.argsort(np.asarray(word), kind='stable'), kind='stable')
    m = len(word)
    return (ranks[:, None] >= np.arange(m)[None, :]).cumsum(axis=0)


def _check_ground(u: Sequence[Any], v: Sequence[Any]) -> None:
    if sorted(u) != sorted(v):
        raise ValueError(f'ground-set mismatch: {tuple(u)} vs {tuple(v)}')
    if len(set(u)) != len(u):
        raise ValueError(f'not a permutation: {tuple(u)}')


def bruhat_leq(u: Sequence[Any], v: Sequence[Any]) -> bool:
    """Strong Bruhat order by the dominance criterion"""
    _check_ground(u, v)
    return bool((_dominance(u) <= _dominance(v)).all())


def _bruhat_up_set(u: Tuple[Any, ...]) -> set:
    seen = {u}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        for i, j in combinations(range(len(w)), 2):
            if w[i] < w[j]:
                nxt = list(w)
                nxt[i], nxt[j] = nxt[j], nxt[i]
                nxt = tuple(nxt)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return seen


_up_set_cache: Dict[Tuple[Any, ...], set] = {}


def bruhat_closure_leq(u: Sequence[Any], v: Sequence[Any]) -> bool:
    """Oracle: v reachable from u by inversion-increasing transpositions"""
    _check_ground(u, v)
    key = tuple(u)
    if key not in _up_set_cache:
        _up_set_cache[key] = _bruhat_up_set(key)
    return tuple(v) in _up_set_cache[key]


def induced_bruhat_poset(words: Sequence[Sequence[Any]], labels: Optional[Sequence[Hashable]] = None) -> FinitePoset:
    """Restriction of the Bruhat order to a set of same-size permutations"""
    words = [tuple(w) for w in words]
    labels = list(labels) if labels is not None else words
    if not words:
        return FinitePoset([], np.zeros((0, 0), dtype=bool))
    for w in words[1:]:
        _check_ground(words[0], w)
    dom = np.stack([_dominance(w) for w in words])
    leq = (dom[:, None, :, :] <= dom[None, :, :, :]).all(axis=(2, 3))
    return FinitePoset(labels, leq)


# Export

def to_dot(poset: FinitePoset, name: str = 'hasse', label: Callable[[Hashable], str] = str) -> str:
    """Graphviz digraph of the cover relation, layered by rank"""
    lines = [f'digraph "{name}" {{', '  rankdir=BT;', '  node [shape=plaintext];']
    for i, x in enumerate(poset.elements):
        lines.append(f'  n{i} [label="{label(x)}"];')
    if poset.is_graded:
        for r in range(len(poset.whitney_numbers)):
            members = ' '.join(f'n{i};' for i in np.flatnonzero(poset.rank == r))
            lines.append(f'  {{ rank=same; {members} }}')
    for i, j in np.argwhere(poset.cover):
        lines.append(f'  n{i} -> n{j};')
    lines.append('}')
    return '\n'.join(lines) + '\n'
