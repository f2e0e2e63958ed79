"""
Generating trees for the succession rule Omega
Grand-Dyck paths and the shuffle class B_n(21, -2-1) grow by the same rule,
so aligning the two trees child by child gives a bijection between them
"""

import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

from src.config import get_config, check_size
from src.lattice_paths import PathWord, Step, count_peaks
from src.signed_permutations import SignedPermutation, a_statistic

logger = logging.getLogger(__name__)

EcoObject = Union[PathWord, SignedPermutation]


class EcoConstructionError(RuntimeError):
    """A construction broke its own succession rule"""


@dataclass(frozen=True)
class SuccessionRule:
    axiom: int
    production: Callable[[int], Tuple[int, ...]]
    name: str = 'rule'

    def __call__(self, label: int) -> Tuple[int, ...]:
        return self.production(label)


def _omega_production(k: int) -> Tuple[int, ...]:
    if k < 2:
        raise EcoConstructionError(f'label {k} is not reachable under Omega')
    return (3,) + tuple(range(3, k + 2))


def omega() -> SuccessionRule:
    """(2); (k) -> (3)(3)(4)...(k)(k+1)"""
    return SuccessionRule(axiom=2, production=_omega_production, name='Omega')


def level_sizes(rule: SuccessionRule, depth: int) -> List[int]:
    """Nodes per level 0..depth from label dynamics alone"""
    sizes = []
    labels = Counter({rule.axiom: 1})
    for _ in range(depth + 1):
        sizes.append(sum(labels.values()))
        nxt: Counter = Counter()
        for label, count in labels.items():
            for child in rule(label):
                nxt[child] += count
        labels = nxt
    return sizes


@dataclass(frozen=True)
class GenTreeNode:
    obj: EcoObject
    label: int
    child_index_path: Tuple[int, ...] = field(default=())

    @property
    def level(self) -> int:
        return len(self.child_index_path)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'object': str(self.obj),
            'label': self.label,
            'childIndexPath': list(self.child_index_path),
        }


# Paths

def path_label(path: PathWord) -> int:
    """Length of the last run plus two"""
    steps = path.steps
    run = 0
    while run < len(steps) and steps[-1 - run] is steps[-1]:
        run += 1
    return run + 2


def _insert(path: PathWord, at: int, piece: Tuple[Step, Step]) -> PathWord:
    return PathWord(path.steps[:at] + piece + path.steps[at:])


def _path_children(path: PathWord) -> List[PathWord]:
    peak, valley = (Step.UP, Step.DOWN), (Step.DOWN, Step.UP)
    if not path.steps:
        return [PathWord(peak), PathWord(valley)]
    tail = path_label(path) - 2
    start = len(path) - tail
    if path.steps[-1] is Step.DOWN:
        children = [_insert(path, start + j, peak) for j in range(tail + 1)]
        children.append(_insert(path, len(path), valley))
    else:
        children = [_insert(path, start + j, valley) for j in range(tail + 1)]
        children.append(_insert(path, len(path), peak))
    return children


def _path_key(parent: PathWord, child: PathWord) -> Tuple[int, int, int]:
    return (path_label(child),
            0 if count_peaks(child) == count_peaks(parent) else 1,
            0 if child.steps[-1] is Step.DOWN else 1)


# Permutations

def perm_label(perm: SignedPermutation) -> int:
    """n + 2 - |quasi maximum|, an absent quasi maximum counting as 0"""
    n = perm.n
    top_signed = max((abs(v) for v in perm if v < 0), default=0)
    top_unsigned = max((v for v in perm if v > 0), default=0)
    if n == 0 or not top_signed or not top_unsigned:
        return n + 2
    return n + 2 - (top_signed if top_signed != n else top_unsigned)


def _append(perm: SignedPermutation, value: int) -> SignedPermutation:
    """Append ±|value|, shifting every entry of absolute value >= |value| up by one"""
    mag = abs(value)
    shifted = tuple((v + 1 if v > 0 else v - 1) if abs(v) >= mag else v for v in perm)
    return SignedPermutation(shifted + (value,))


def _perm_children(perm: SignedPermutation) -> List[SignedPermutation]:
    n = perm.n
    top_signed = max((abs(v) for v in perm if v < 0), default=0)
    top_unsigned = max((v for v in perm if v > 0), default=0)
    children = [_append(perm, -v) for v in range(top_signed + 1, n + 2)]
    children += [_append(perm, v) for v in range(top_unsigned + 1, n + 2)]
    return children


def _perm_key(parent: SignedPermutation, child: SignedPermutation) -> Tuple[int, int, int]:
    top = max(child, key=abs)
    return (perm_label(child),
            0 if a_statistic(child) == a_statistic(parent) else 1,
            0 if top > 0 else 1)


# Trees

@dataclass(frozen=True)
class TreeFamily:
    name: str
    root: EcoObject
    label: Callable[[Any], int]
    children: Callable[[Any], List[Any]]
    sort_key: Callable[[Any, Any], Tuple[int, ...]]


FAMILIES: Dict[str, TreeFamily] = {
    'paths': TreeFamily('paths', PathWord(()), path_label, _path_children, _path_key),
    'perms': TreeFamily('perms', SignedPermutation(()), perm_label, _perm_children, _perm_key),
}


def _family(name: str) -> TreeFamily:
    if name not in FAMILIES:
        raise ValueError(f'unknown tree family {name!r}; known: {sorted(FAMILIES)}')
    return FAMILIES[name]


def root_node(family: str) -> GenTreeNode:
    fam = _family(family)
    return GenTreeNode(fam.root, fam.label(fam.root), ())


def grow(node: GenTreeNode, family: str, rule: Optional[SuccessionRule] = None) -> List[GenTreeNode]:
    """Children of node in canonical order, checked against the rule"""
    fam = _family(family)
    rule = rule or omega()
    kids = sorted(fam.children(node.obj), key=lambda c: fam.sort_key(node.obj, c))
    labels = tuple(fam.label(c) for c in kids)
    expected = rule(node.label)
    if labels != expected:
        raise EcoConstructionError(
            f'{family}: {node.obj} (label {node.label}) produced labels {labels}, rule says {expected}')
    if len(set(kids)) != len(kids):
        raise EcoConstructionError(f'{family}: {node.obj} produced duplicate children')
    return [GenTreeNode(c, lab, node.child_index_path + (i,)) for i, (c, lab) in enumerate(zip(kids, labels))]


def grow_paths(node: GenTreeNode) -> List[GenTreeNode]:
    return grow(node, 'paths')


def grow_perms(node: GenTreeNode) -> List[GenTreeNode]:
    return grow(node, 'perms')


@lru_cache(maxsize=None)
def _level(family: str, n: int) -> Tuple[GenTreeNode, ...]:
    if n == 0:
        return (root_node(family),)
    nodes = []
    for parent in _level(family, n - 1):
        nodes.extend(grow(parent, family))
    logger.debug(f'{family} level {n}: {len(nodes)} nodes')
    return tuple(nodes)


def tree_level(n: int, family: str) -> List[GenTreeNode]:
    """Level n of the generating tree, ordered by child index path"""
    check_size(n, get_config().max_n, 'tree_level')
    return list(_level(family, n))


def level_records(n: int, family: str) -> str:
    """JSON dump of a level"""
    return json.dumps([node.to_dict() for node in tree_level(n, family)])


@lru_cache(maxsize=None)
def _twin_index(n: int) -> Tuple[Dict[PathWord, SignedPermutation], Dict[SignedPermutation, PathWord]]:
    forward: Dict[PathWord, SignedPermutation] = {}
    backward: Dict[SignedPermutation, PathWord] = {}
    for p_node, s_node in zip(tree_level(n, 'paths'), tree_level(n, 'perms')):
        if p_node.child_index_path != s_node.child_index_path or p_node.label != s_node.label:
            raise EcoConstructionError(
                f'level {n} out of step at {p_node.child_index_path}: {p_node.obj} vs {s_node.obj}')
        forward[p_node.obj] = s_node.obj
        backward[s_node.obj] = p_node.obj
    return forward, backward


def eco_bijection(path: PathWord) -> SignedPermutation:
    """The permutation sitting at the path's position in the twin tree"""
    forward, _ = _twin_index(path.semilength)
    try:
        return forward[path]
    except KeyError:
        raise ValueError(f'{path} is not a Grand-Dyck path') from None


def eco_bijection_inverse(perm: SignedPermutation) -> PathWord:
    _, backward = _twin_index(perm.n)
    try:
        return backward[perm]
    except KeyError:
        raise ValueError(f'{perm} is not in B_n(21, -2-1)') from None


def conformance(n: int, family: str) -> bool:
    """Every node up to level n has fan-out equal to its label"""
    for level in range(n):
        for node in tree_level(level, family):
            if len(grow(node, family)) != node.label:
                return False
    return True
