"""
Finite preorders and their closed subsets. These are the index spaces every other module is built on.

Elements are kept in constructor order and every matrix is indexed by that order. Antisymmetry is never assumed.
"""
import itertools
from dataclasses import dataclass, field
from typing import Any, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from absl import logging

from negdesign.constant import Defaults, Direction
from negdesign.errors import ClosureError, EnumerationCapError, ObjectMismatchError, UnknownElementError
from negdesign.utils import matrix_utils


@dataclass(frozen=True, eq=False)
class Preorder:
    """A finite set with a reflexive and transitive order matrix. leq[i][j] means elements[i] <= elements[j]"""
    elements: Tuple[Any, ...]
    leq: np.ndarray
    factors: Optional[Tuple['Preorder', 'Preorder']] = field(default=None, repr=False)

    def __post_init__(self):
        elements = tuple(self.elements)
        if len(set(elements)) != len(elements):
            duplicates = sorted({str(e) for e in elements if elements.count(e) > 1})
            raise ObjectMismatchError(f'Duplicate element names: {duplicates}')
        leq = matrix_utils.frozen(self.leq)
        if leq.shape != (len(elements), len(elements)):
            raise ObjectMismatchError(f'Order matrix of shape {leq.shape} does not match {len(elements)} elements')
        if not leq.diagonal().all():
            raise ClosureError('Order matrix is not reflexive', axis='reflexivity')
        if (matrix_utils.bool_matmul(leq, leq) & ~leq).any():
            raise ClosureError('Order matrix is not transitive', axis='transitivity')
        object.__setattr__(self, 'elements', elements)
        object.__setattr__(self, 'leq', leq)

    @property
    def size(self):
        return len(self.elements)

    def index(self, name):
        """Returns the position of an element, raising UnknownElementError for unknown names"""
        try:
            return self.elements.index(name)
        except ValueError:
            raise UnknownElementError(f'Unknown element {name!r}; known elements are {list(self.elements)}') from None

    def is_leq(self, a, b):
        return bool(self.leq[self.index(a), self.index(b)])

    def covers(self):
        """Returns the Hasse diagram as index pairs (i, j) with i < j strictly and nothing strictly between

        Elements in the same equivalence class (i <= j <= i) are not covers of each other; see equivalent_pairs()
        """
        strict = self.leq & ~self.leq.T
        between = matrix_utils.bool_matmul(strict, strict)
        return [tuple(int(x) for x in pair) for pair in np.argwhere(strict & ~between)]

    def equivalent_pairs(self):
        """Returns index pairs (i, j), i < j, with i <= j and j <= i"""
        both = self.leq & self.leq.T
        return [(int(i), int(j)) for i, j in np.argwhere(both) if i < j]

    def __eq__(self, other):
        if not isinstance(other, Preorder):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self.leq, other.leq)

    def __hash__(self):
        return hash((self.elements, self.leq.tobytes()))


@dataclass(frozen=True, eq=False)
class ClosedSet:
    """A subset of a preorder closed upward or downward"""
    preorder: Preorder
    membership: np.ndarray
    direction: str

    def __post_init__(self):
        membership = matrix_utils.frozen(self.membership)
        if not check_closed(self.preorder, membership, self.direction):
            raise ClosureError(f'Membership {membership.astype(int).tolist()} is not {self.direction}-closed', axis=self.direction)
        object.__setattr__(self, 'membership', membership)

    def members(self):
        return [e for e, m in zip(self.preorder.elements, self.membership) if m]

    def __eq__(self, other):
        if not isinstance(other, ClosedSet):
            return NotImplemented
        return (self.preorder == other.preorder and self.direction == other.direction
                and np.array_equal(self.membership, other.membership))

    def __hash__(self):
        return hash((self.preorder, self.direction, self.membership.tobytes()))


def _check_direction(direction):
    if direction not in (Direction.UPWARD, Direction.DOWNWARD):
        raise ValueError(f'Unknown closure direction {direction!r}')


def from_hasse(elements: Sequence[Any], covers: Iterable[Tuple[Any, Any]]) -> Preorder:
    """Builds the preorder whose order is the reflexive-transitive closure of covers

    :param elements: element names in canonical order
    :param covers: pairs (a, b) meaning a <= b. Cycles are allowed
    """
    elements = tuple(elements)
    if len(set(elements)) != len(elements):
        raise ObjectMismatchError(f'Duplicate element names in {list(elements)}')
    position = {e: i for i, e in enumerate(elements)}
    relation = np.zeros((len(elements), len(elements)), dtype=bool)
    for a, b in covers:
        for name in (a, b):
            if name not in position:
                raise UnknownElementError(f'Cover ({a!r}, {b!r}) names unknown element {name!r}')
        relation[position[a], position[b]] = True
    return Preorder(elements, matrix_utils.transitive_closure(relation))


def opposite(P: Preorder) -> Preorder:
    """Returns the dual preorder: a <= b in the result iff b <= a in P"""
    factors = None
    if P.factors is not None:
        factors = (opposite(P.factors[0]), opposite(P.factors[1]))
    return Preorder(P.elements, P.leq.T, factors=factors)


def product(P: Preorder, Q: Preorder) -> Preorder:
    """Componentwise order on ordered pairs. Pair (p, q) sits at index p * |Q| + q"""
    elements = tuple(itertools.product(P.elements, Q.elements))
    leq = np.kron(P.leq.astype(np.int64), Q.leq.astype(np.int64)) > 0
    return Preorder(elements, leq, factors=(P, Q))


def unit() -> Preorder:
    """The one-element space, which is the monoidal unit"""
    return Preorder(('*',), np.ones((1, 1), dtype=bool))


def chain(n: int, prefix: str = '') -> Preorder:
    """Total order 0 <= 1 <= ... <= n-1"""
    names = [f'{prefix}{i}' for i in range(n)]
    return from_hasse(names, zip(names, names[1:]))


def antichain(n: int, prefix: str = '') -> Preorder:
    """Discrete order: only reflexive pairs"""
    return from_hasse([f'{prefix}{i}' for i in range(n)], [])


def antichain_on(elements: Sequence[Any]) -> Preorder:
    """Discrete order on arbitrary elements"""
    return Preorder(tuple(elements), np.eye(len(elements), dtype=bool))


def diamond() -> Preorder:
    """bot <= a, b <= top with a, b incomparable"""
    return from_hasse(['bot', 'a', 'b', 'top'], [('bot', 'a'), ('bot', 'b'), ('a', 'top'), ('b', 'top')])


def vee() -> Preorder:
    """One bottom below two incomparable elements"""
    return from_hasse(['bot', 'a', 'b'], [('bot', 'a'), ('bot', 'b')])


def wedge() -> Preorder:
    """Two incomparable elements below one top"""
    return from_hasse(['a', 'b', 'top'], [('a', 'top'), ('b', 'top')])


def close_vector(P: Preorder, membership, direction: str) -> np.ndarray:
    """Smallest closed boolean vector containing membership"""
    _check_direction(direction)
    membership = matrix_utils.as_bool_array(membership, ndim=1)
    if len(membership) != P.size:
        raise ObjectMismatchError(f'Vector of length {len(membership)} on a preorder with {P.size} elements')
    order = P.leq if direction == Direction.UPWARD else P.leq.T
    return matrix_utils.bool_matmul(membership[None, :], order)[0]


def closure(P: Preorder, seed: Iterable[Any], direction: str) -> ClosedSet:
    """Returns the smallest closed set containing the named seed elements"""
    membership = np.zeros(P.size, dtype=bool)
    for name in seed:
        membership[P.index(name)] = True
    return ClosedSet(P, close_vector(P, membership, direction), direction)


def check_closed(P: Preorder, membership, direction: str) -> bool:
    """True iff membership is closed in the given direction"""
    membership = matrix_utils.as_bool_array(membership, ndim=1)
    return bool(np.array_equal(close_vector(P, membership, direction), membership))


def enumerate_closed_sets(P: Preorder, direction: str, cap: Optional[int] = None) -> List[ClosedSet]:
    """Returns every closed subset exactly once, ordered by their binary code

    :param cap: max number of elements of P. Defaults to Defaults.POSET_CAP
    """
    _check_direction(direction)
    cap = Defaults.POSET_CAP if cap is None else cap
    if P.size > cap:
        raise EnumerationCapError(f'Closed-set enumeration on {P.size} elements exceeds cap {cap}')
    candidates = matrix_utils.boolean_grid(P.size)
    order = P.leq if direction == Direction.UPWARD else P.leq.T
    closed = np.all(matrix_utils.bool_matmul(candidates, order) == candidates, axis=1)
    logging.debug(f'{int(closed.sum())} of {len(candidates)} subsets are {direction}-closed')
    return [ClosedSet(P, membership, direction) for membership in candidates[closed]]
