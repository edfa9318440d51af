"""
Norphisms internal to DP.

A norphism on P -> Q is itself a design problem P^op ⊗ Q -> 1, stored as the Boolean matrix rel[p][q]. It is
non-decreasing in p and non-increasing in q, and it bans m : P -> Q iff the contraction ⋁ rel ∧ m is true.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from absl import logging

from negdesign.algebra import dp_core, nategory, poset
from negdesign.algebra.dp_core import BooleanRelation, DesignProblem, FVector, RCovector
from negdesign.algebra.nategory import FiniteCategory, HomPreorder, NorphismGeneric
from negdesign.algebra.poset import Preorder
from negdesign.constant import Side
from negdesign.errors import ObjectMismatchError
from negdesign.utils import matrix_utils


class NorphismDP(BooleanRelation):
    """A ban on design problems P -> Q, i.e. a covector on P^op x Q read as a matrix"""

    def violated_axes(self):
        violated = []
        if not np.array_equal(matrix_utils.bool_matmul(self.dom.leq.T, self.rel), self.rel):
            violated.append(dp_core.DOMAIN_AXIS)
        if not np.array_equal(matrix_utils.bool_matmul(self.rel, self.cod.leq.T), self.rel):
            violated.append(dp_core.CODOMAIN_AXIS)
        return violated

    @classmethod
    def close(cls, dom, cod, rel):
        """Smallest norphism containing rel: up along the domain axis, down along the codomain axis"""
        rel = matrix_utils.as_bool_array(rel, ndim=2)
        return matrix_utils.bool_matmul(matrix_utils.bool_matmul(dom.leq.T, rel), cod.leq.T)


def _require_hom(n: BooleanRelation, m: BooleanRelation, what: str):
    if n.dom != m.dom or n.cod != m.cod:
        raise ObjectMismatchError(f'{what}: hom-sets do not match')


def zero_norphism(P: Preorder, Q: Preorder) -> NorphismDP:
    """Bans nothing"""
    return NorphismDP(P, Q, np.zeros((P.size, Q.size), dtype=bool))


def performance_norphism(f: FVector, r: RCovector) -> NorphismDP:
    """Bans every m : P -> Q delivering the demand f from the resources r"""
    return NorphismDP(f.space, r.space, matrix_utils.bool_outer(f.membership, r.membership))


def join(n: NorphismDP, n2: NorphismDP) -> NorphismDP:
    """∨-sum: bans what either norphism bans"""
    _require_hom(n, n2, 'join')
    return NorphismDP(n.dom, n.cod, n.rel | n2.rel)


def bans(n: NorphismDP, m: DesignProblem) -> bool:
    """Incompatibility i(n, m): 1 means banned"""
    _require_hom(n, m, 'bans')
    return matrix_utils.any_and(n.rel, m.rel)


def propagate(n: NorphismDP, attach: DesignProblem, side: str) -> NorphismDP:
    """Moves a ban along a design problem so that it cannot be circumvented by composing with it

    :param side: Side.PRE for attach e : P -> R, giving a ban on R -> Q with bans(out, m) = bans(n, e;m).
        Side.POST for attach g : R -> Q, giving a ban on P -> R with bans(out, m) = bans(n, m;g)
    """
    if side == Side.PRE:
        if attach.dom != n.dom:
            raise ObjectMismatchError('propagate pre: attach must start at the norphism domain')
        return NorphismDP(attach.cod, n.cod, matrix_utils.bool_matmul(attach.rel.T, n.rel))
    if side == Side.POST:
        if attach.cod != n.cod:
            raise ObjectMismatchError('propagate post: attach must end at the norphism codomain')
        return NorphismDP(n.dom, attach.dom, matrix_utils.bool_matmul(n.rel, attach.rel.T))
    raise ValueError(f'Unknown propagation side {side!r}')


def transposed_negation(pool: RCovector) -> FVector:
    """Functionality just beyond what a pool provides: the complement of a downward-closed set is upward-closed"""
    return FVector(pool.space, ~pool.membership)


def resource_limit_schema(pools: Sequence[RCovector]) -> NorphismDP:
    """Bans every design problem offering more of a pooled resource than the pool itself

    Never bans the identity, since a pool and its transposed negation do not overlap
    """
    pools = list(pools)
    if not pools:
        raise ObjectMismatchError('resource_limit_schema needs at least one pool')
    space = pools[0].space
    schema = zero_norphism(space, space)
    for pool in pools:
        if pool.space != space:
            raise ObjectMismatchError('resource_limit_schema: pools live on different spaces')
        schema = join(schema, performance_norphism(transposed_negation(pool), pool))
    return schema


def banned_set(n: NorphismDP, cap: Optional[int] = None) -> List[DesignProblem]:
    """Every design problem the norphism bans, in enumeration order"""
    return [m for m in dp_core.enumerate_design_problems(n.dom, n.cod, cap=cap) if bans(n, m)]


def decompose(n: NorphismDP) -> List[Tuple[FVector, RCovector]]:
    """Generators (f[i], r[i]) with n = ⋁_i performance_norphism(f[i], r[i])

    One generator per true cell (p, q): the up-closure of p and the down-closure of q. Cells whose generator is contained
    in another cell's generator are dropped; among equivalent cells the first in index order is kept.
    """
    cells = [tuple(int(x) for x in cell) for cell in np.argwhere(n.rel)]
    generators = []
    for p, q in cells:
        dominated = False
        for p0, q0 in cells:
            if (p0, q0) == (p, q):
                continue
            # (p0, q0) generates (p, q) when p0 <= p and q <= q0
            covers = n.dom.leq[p0, p] and n.cod.leq[q, q0]
            equivalent = n.dom.leq[p, p0] and n.cod.leq[q0, q]
            if covers and (not equivalent or (p0, q0) < (p, q)):
                dominated = True
                break
        if not dominated:
            generators.append((FVector.generated_by(n.dom, [n.dom.elements[p]]),
                               RCovector.generated_by(n.cod, [n.cod.elements[q]])))
    return generators


def recompose(dom: Preorder, cod: Preorder, generators: Sequence[Tuple[FVector, RCovector]]) -> NorphismDP:
    """∨-sum of the performance norphisms of the generators"""
    result = zero_norphism(dom, cod)
    for f, r in generators:
        result = join(result, performance_norphism(f, r))
    return result


def enumerate_norphisms(P: Preorder, Q: Preorder, cap: Optional[int] = None) -> List[NorphismDP]:
    """Every norphism on P -> Q"""
    matrices = dp_core._monotone_matrices(P, Q, cap, lambda rel: NorphismDP.close(P, Q, rel))
    return [NorphismDP(P, Q, rel, check=False) for rel in matrices]


@dataclass
class DPNategory:
    """The finite DP nategory on a handful of spaces: hom-sets are enumerated design problems, ordered pointwise"""
    spaces: Dict[str, Preorder]
    category: FiniteCategory
    hom_preorder: HomPreorder
    design_problems: Dict[str, DesignProblem]
    ids: Dict[DesignProblem, str]

    def morphism_id(self, d: DesignProblem) -> str:
        return self.ids[d]

    def space_name(self, P: Preorder) -> str:
        for name, space in self.spaces.items():
            if space == P:
                return name
        raise ObjectMismatchError(f'Space {list(P.elements)} is not an object of this instance')

    def wrap(self, n: NorphismDP, name='') -> NorphismGeneric:
        """The generic curried form of a DP norphism"""
        a, b = self.space_name(n.dom), self.space_name(n.cod)
        return NorphismGeneric.from_predicate(self.category, a, b, lambda f: bans(n, self.design_problems[f]), name=name, tag=n)

    def norphisms(self, cap: Optional[int] = None) -> List[NorphismGeneric]:
        """Every norphism on every hom-set, wrapped"""
        wrapped = []
        for a, P in self.spaces.items():
            for b, Q in self.spaces.items():
                for k, n in enumerate(enumerate_norphisms(P, Q, cap=cap)):
                    wrapped.append(self.wrap(n, name=f'n:{a}->{b}#{k}'))
        return wrapped


def dp_nategory(spaces: Dict[str, Preorder], cap: Optional[int] = None) -> DPNategory:
    """Builds the DP category restricted to the given spaces and checks its axioms

    Distinct names must carry distinct preorders, since design problems are identified by their matrices
    """
    homs, identities, comp, design_problems, ids = {}, {}, {}, {}, {}
    for a, P in spaces.items():
        for b, Q in spaces.items():
            homs[(a, b)] = []
            for k, d in enumerate(dp_core.enumerate_design_problems(P, Q, cap=cap)):
                morphism_id = f'{a}->{b}#{k}'
                homs[(a, b)].append(morphism_id)
                design_problems[morphism_id] = d
                ids[d] = morphism_id
        identities[a] = ids[dp_core.identity(P)]
    for a in spaces:
        for b in spaces:
            for c in spaces:
                for f in homs[(a, b)]:
                    for g in homs[(b, c)]:
                        comp[(f, g)] = ids[dp_core.compose(design_problems[f], design_problems[g])]
    category = nategory.build_finite_category(list(spaces), homs, identities, comp)

    orders = {}
    for (a, b), morphisms in homs.items():
        leq = np.array([[dp_core.leq_dp(design_problems[f], design_problems[g]) for g in morphisms] for f in morphisms], dtype=bool)
        orders[(a, b)] = Preorder(tuple(morphisms), leq.reshape(len(morphisms), len(morphisms)))
    logging.info(f'DP nategory on {list(spaces)}: {len(design_problems)} design problems')
    return DPNategory(dict(spaces), category, HomPreorder(category, orders), design_problems, ids)
