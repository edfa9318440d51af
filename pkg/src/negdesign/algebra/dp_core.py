"""
The category DP at desk scale: monotone Boolean relations between finite preorders.

A design problem d : P -> Q is a Boolean matrix rel[p][q] that is non-increasing along the domain axis and non-decreasing
along the codomain axis. Functionality vectors f : 1 -> P are upward-closed, resource covectors r : P -> 1 are
downward-closed, and their contraction answers whether the demand is met by the available resources.
"""
from dataclasses import InitVar, dataclass
from typing import Iterable, List, Optional, Tuple

import numpy as np
from absl import logging

from negdesign.algebra import poset
from negdesign.algebra.poset import Preorder
from negdesign.constant import Defaults, Direction
from negdesign.errors import ClosureError, EnumerationCapError, ObjectMismatchError
from negdesign.utils import matrix_utils

DOMAIN_AXIS = 'domain'
CODOMAIN_AXIS = 'codomain'


def _require_same(first: Preorder, second: Preorder, what: str):
    if first != second:
        raise ObjectMismatchError(f'{what}: {list(first.elements)} does not match {list(second.elements)}')


@dataclass(frozen=True, eq=False)
class BooleanVector:
    """A closed Boolean vector on a preorder. Subclasses fix the closure direction"""
    space: Preorder
    membership: np.ndarray
    check: InitVar[bool] = True

    direction = None

    def __post_init__(self, check):
        membership = matrix_utils.frozen(self.membership)
        if membership.shape != (self.space.size,):
            raise ObjectMismatchError(f'Vector of shape {membership.shape} on a space with {self.space.size} elements')
        if check and not poset.check_closed(self.space, membership, self.direction):
            raise ClosureError(f'{type(self).__name__} {membership.astype(int).tolist()} is not {self.direction}-closed',
                               axis=self.direction)
        object.__setattr__(self, 'membership', membership)

    @classmethod
    def generated_by(cls, space: Preorder, seed: Iterable):
        """Closes a seed set of element names in the direction of this vector type"""
        return cls(space, poset.closure(space, seed, cls.direction).membership)

    @classmethod
    def empty(cls, space: Preorder):
        return cls(space, np.zeros(space.size, dtype=bool))

    def members(self):
        return [e for e, m in zip(self.space.elements, self.membership) if m]

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.membership, other.membership)

    def __hash__(self):
        return hash((type(self).__name__, self.space, self.membership.tobytes()))

    def __repr__(self):
        return f'{type(self).__name__}({self.membership.astype(int).tolist()})'


class FVector(BooleanVector):
    """Functionality requirement f : 1 -> P (upward-closed)"""
    direction = Direction.UPWARD


class RCovector(BooleanVector):
    """Resource availability r : P -> 1 (downward-closed)"""
    direction = Direction.DOWNWARD


@dataclass(frozen=True, eq=False)
class BooleanRelation:
    """A Boolean matrix rel[p][q] between two preorders. Subclasses define the monotonicity they require"""
    dom: Preorder
    cod: Preorder
    rel: np.ndarray
    check: InitVar[bool] = True

    def __post_init__(self, check):
        rel = matrix_utils.frozen(self.rel)
        if rel.shape != (self.dom.size, self.cod.size):
            raise ObjectMismatchError(f'Matrix of shape {rel.shape} does not match {self.dom.size} x {self.cod.size}')
        object.__setattr__(self, 'rel', rel)
        if check:
            violated = self.violated_axes()
            if violated:
                raise ClosureError(f'{type(self).__name__} violates monotonicity along the {" and ".join(violated)} axis',
                                   axis=violated[0])

    def violated_axes(self) -> List[str]:
        raise NotImplementedError

    @classmethod
    def from_pairs(cls, dom: Preorder, cod: Preorder, true_pairs: Iterable[Tuple], autoclose=False):
        """Builds the relation from named true cells, optionally closing it instead of rejecting it"""
        rel = np.zeros((dom.size, cod.size), dtype=bool)
        for p, q in true_pairs:
            rel[dom.index(p), cod.index(q)] = True
        if autoclose:
            rel = cls.close(dom, cod, rel)
        return cls(dom, cod, rel)

    @classmethod
    def close(cls, dom: Preorder, cod: Preorder, rel) -> np.ndarray:
        raise NotImplementedError

    def true_pairs(self):
        return [(self.dom.elements[i], self.cod.elements[j]) for i, j in np.argwhere(self.rel)]

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and np.array_equal(self.rel, other.rel)

    def __hash__(self):
        return hash((type(self).__name__, self.dom, self.cod, self.rel.tobytes()))

    def __repr__(self):
        return f'{type(self).__name__}({self.rel.astype(int).tolist()})'


def _non_increasing_rows(order, rel):
    """rel[p'] <= rel[p] whenever p <= p'"""
    return np.array_equal(matrix_utils.bool_matmul(order, rel), rel)


def _non_decreasing_cols(rel, order):
    """rel[:, q] <= rel[:, q'] whenever q <= q'"""
    return np.array_equal(matrix_utils.bool_matmul(rel, order), rel)


class DesignProblem(BooleanRelation):
    """Monotone Boolean relation d : P -> Q, i.e. a covector on P x Q^op read as a matrix"""

    def violated_axes(self):
        violated = []
        if not _non_increasing_rows(self.dom.leq, self.rel):
            violated.append(DOMAIN_AXIS)
        if not _non_decreasing_cols(self.rel, self.cod.leq):
            violated.append(CODOMAIN_AXIS)
        return violated

    @classmethod
    def close(cls, dom, cod, rel):
        """Smallest design problem containing rel: down along the domain axis, up along the codomain axis"""
        rel = matrix_utils.as_bool_array(rel, ndim=2)
        return matrix_utils.bool_matmul(matrix_utils.bool_matmul(dom.leq, rel), cod.leq)


def close_relation(dom: Preorder, cod: Preorder, rel) -> DesignProblem:
    """Implements `autoclose`: the smallest valid design problem containing the given cells"""
    return DesignProblem(dom, cod, DesignProblem.close(dom, cod, rel))


def validate(d: BooleanRelation) -> bool:
    """True iff both monotonicity invariants hold"""
    return not d.violated_axes()


def identity(P: Preorder) -> DesignProblem:
    """The identity design problem is the order relation itself"""
    return DesignProblem(P, P, P.leq)


def compose(d: DesignProblem, e: DesignProblem) -> DesignProblem:
    """Diagrammatic composition d;e : P -> R by ∨/∧ contraction over Q"""
    _require_same(d.cod, e.dom, 'compose: codomain of d and domain of e')
    return DesignProblem(d.dom, e.cod, matrix_utils.bool_matmul(d.rel, e.rel))


def map_functionality(f: FVector, d: DesignProblem) -> FVector:
    """Pushes a functionality requirement on P forward to Q: f;d"""
    _require_same(f.space, d.dom, 'map_functionality: vector space and domain')
    return FVector(d.cod, matrix_utils.bool_matmul(f.membership[None, :], d.rel)[0])


def map_resources(d: DesignProblem, r: RCovector) -> RCovector:
    """Pulls a resource pool on Q back to P: d;r"""
    _require_same(d.cod, r.space, 'map_resources: codomain and covector space')
    return RCovector(d.dom, matrix_utils.bool_matmul(d.rel, r.membership[:, None])[:, 0])


def contract(f: FVector, r: RCovector) -> bool:
    """⋁_p f[p] ∧ r[p]"""
    _require_same(f.space, r.space, 'contract: vector and covector spaces')
    return matrix_utils.any_and(f.membership, r.membership)


def feasible(f: FVector, d: DesignProblem, r: RCovector) -> bool:
    """True iff some demanded functionality is delivered by d from the available resources"""
    _require_same(f.space, d.dom, 'feasible: vector space and domain')
    _require_same(d.cod, r.space, 'feasible: codomain and covector space')
    return matrix_utils.any_and(matrix_utils.bool_outer(f.membership, r.membership), d.rel)


def tensor(d: DesignProblem, d2: DesignProblem) -> DesignProblem:
    """Monoidal product (P x P') -> (Q x Q') given by the outer ∧-product of the matrices"""
    rel = np.kron(d.rel.astype(np.int64), d2.rel.astype(np.int64)) > 0
    return DesignProblem(poset.product(d.dom, d2.dom), poset.product(d.cod, d2.cod), rel)


def unit_eta(P: Preorder) -> FVector:
    """η_P : 1 -> P^op ⊗ P. Its entries are the order of P, so untranspose(η) is the identity"""
    return FVector(poset.product(poset.opposite(P), P), P.leq.reshape(-1))


def transpose(d: DesignProblem) -> FVector:
    """Re-indexes d : P -> Q as a vector 1 -> P^op ⊗ Q"""
    return FVector(poset.product(poset.opposite(d.dom), d.cod), d.rel.reshape(-1))


def untranspose(v, dom: Optional[Preorder] = None, cod: Optional[Preorder] = None) -> DesignProblem:
    """Inverse of transpose

    :param v: an FVector on a product space P^op x Q, or a raw membership vector when dom and cod are given
    :param dom: P. Recovered from the product factors of v's space when omitted
    :param cod: Q. Recovered from the product factors of v's space when omitted
    """
    if isinstance(v, BooleanVector):
        membership = v.membership
        if dom is None or cod is None:
            if v.space.factors is None:
                raise ObjectMismatchError('untranspose needs dom and cod when the vector space is not a product')
            dom, cod = poset.opposite(v.space.factors[0]), v.space.factors[1]
    else:
        if dom is None or cod is None:
            raise ObjectMismatchError('untranspose of a raw vector needs dom and cod')
        membership = matrix_utils.as_bool_array(v, ndim=1)
    space = poset.product(poset.opposite(dom), cod)
    if len(membership) != space.size:
        raise ObjectMismatchError(f'Vector of length {len(membership)} on P^op x Q with {space.size} elements')
    if not poset.check_closed(space, membership, Direction.UPWARD):
        raise ClosureError('untranspose: vector is not upward-closed in P^op x Q', axis=Direction.UPWARD)
    return DesignProblem(dom, cod, membership.reshape(dom.size, cod.size))


def leq_dp(d: BooleanRelation, d2: BooleanRelation) -> bool:
    """Pointwise order of a hom-set"""
    _require_same(d.dom, d2.dom, 'leq_dp: domains')
    _require_same(d.cod, d2.cod, 'leq_dp: codomains')
    return not bool((d.rel & ~d2.rel).any())


def _monotone_matrices(dom: Preorder, cod: Preorder, cap: Optional[int], close):
    """Every boolean matrix fixed by `close`, ordered by binary code"""
    cap = Defaults.DP_CELL_CAP if cap is None else cap
    num_cells = dom.size * cod.size
    if num_cells > cap:
        raise EnumerationCapError(f'Hom-set enumeration over {dom.size} x {cod.size} = {num_cells} cells exceeds cap {cap}')
    candidates = matrix_utils.boolean_grid(num_cells).reshape(-1, dom.size, cod.size)
    valid = np.all(close(candidates) == candidates, axis=(1, 2))
    logging.debug(f'{int(valid.sum())} of {len(candidates)} matrices on {dom.size} x {cod.size} cells are monotone')
    return candidates[valid]


def enumerate_design_problems(P: Preorder, Q: Preorder, cap: Optional[int] = None) -> List[DesignProblem]:
    """Every design problem P -> Q

    :param cap: max number of cells |P|*|Q|. Defaults to Defaults.DP_CELL_CAP
    """
    matrices = _monotone_matrices(P, Q, cap, lambda rel: DesignProblem.close(P, Q, rel))
    return [DesignProblem(P, Q, rel, check=False) for rel in matrices]
