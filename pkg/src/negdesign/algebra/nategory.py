"""
Generic nategory kernel over finite categories.

A norphism on a hom-set (a, b) is stored extensionally as its curried predicate Hom(a, b) -> 2, i.e. a Boolean vector over
the hom-set with True meaning banned. Inexact composition builds norphisms on neighbouring hom-sets and must satisfy the
equivariance conditions

    equiv-1: i_bc(f • n, g) => i_ac(n, f;g)
    equiv-2: i_ab(n ⟜ g, f) => i_ac(n, f;g)

The checkers here report violations as data.
"""
import abc
import itertools
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from absl import logging

from negdesign.algebra import poset
from negdesign.algebra.poset import Preorder
from negdesign.constant import Direction, InexactSide
from negdesign.errors import CategoryAxiomError, ObjectMismatchError

EQUIV_1 = 'equiv-1'
EQUIV_2 = 'equiv-2'

Violation = namedtuple('Violation', ['norphism', 'f', 'g', 'condition'])


class SmallCategory(abc.ABC):
    """Interface the checkers rely on. Hom-sets are finite sequences of hashable morphism ids"""

    @property
    @abc.abstractmethod
    def objects(self) -> Tuple[Hashable, ...]:
        pass

    @abc.abstractmethod
    def hom(self, a, b) -> Tuple[Hashable, ...]:
        pass

    @abc.abstractmethod
    def identity(self, a) -> Hashable:
        pass

    @abc.abstractmethod
    def compose(self, f, g) -> Hashable:
        """Diagrammatic order: f : a -> b, g : b -> c gives f;g : a -> c"""

    @abc.abstractmethod
    def endpoints(self, f) -> Tuple[Hashable, Hashable]:
        pass

    def can_compose(self, f, g) -> bool:
        """Whether f;g is available. Total on composable pairs for finite categories"""
        return self.endpoints(f)[1] == self.endpoints(g)[0]


class FiniteCategory(SmallCategory):
    """A category given by explicit tables"""

    def __init__(self, objects, homs, identities, comp):
        self._objects = tuple(objects)
        self._homs = {pair: tuple(ids) for pair, ids in homs.items()}
        self._identities = dict(identities)
        self._comp = dict(comp)
        self._endpoints = {}
        for (a, b), ids in self._homs.items():
            for f in ids:
                if f in self._endpoints:
                    raise CategoryAxiomError(f'Morphism {f!r} appears in hom-sets {self._endpoints[f]} and {(a, b)}', (f,))
                self._endpoints[f] = (a, b)

    @property
    def objects(self):
        return self._objects

    def hom(self, a, b):
        return self._homs.get((a, b), ())

    def identity(self, a):
        return self._identities[a]

    def compose(self, f, g):
        return self._comp[(f, g)]

    def endpoints(self, f):
        try:
            return self._endpoints[f]
        except KeyError:
            raise ObjectMismatchError(f'Unknown morphism {f!r}') from None

    def morphisms(self):
        return list(self._endpoints)


def _check_tables(category: FiniteCategory):
    objects = set(category.objects)
    for (a, b) in category._homs:
        if a not in objects or b not in objects:
            raise CategoryAxiomError(f'Hom-set {(a, b)} refers to an unknown object', (a, b))
    for a in category.objects:
        if a not in category._identities:
            raise CategoryAxiomError(f'Object {a!r} has no identity', (a,))
        if category._identities[a] not in category.hom(a, a):
            raise CategoryAxiomError(f'Identity {category._identities[a]!r} of {a!r} is a dangling id', (category._identities[a],))
    for a, b, c in itertools.product(category.objects, repeat=3):
        for f, g in itertools.product(category.hom(a, b), category.hom(b, c)):
            if (f, g) not in category._comp:
                raise CategoryAxiomError(f'Composition of {f!r} and {g!r} is missing', (f, g))
            h = category._comp[(f, g)]
            if h not in category.hom(a, c):
                raise CategoryAxiomError(f'Composite {f!r};{g!r} = {h!r} is not in Hom({a!r}, {c!r})', (f, g, h))


def _check_axioms(category: FiniteCategory):
    for (a, b), ids in category._homs.items():
        for f in ids:
            if category.compose(category.identity(a), f) != f:
                raise CategoryAxiomError(f'Left unit law fails for {f!r}', (category.identity(a), f))
            if category.compose(f, category.identity(b)) != f:
                raise CategoryAxiomError(f'Right unit law fails for {f!r}', (f, category.identity(b)))
    for a, b, c, d in itertools.product(category.objects, repeat=4):
        for f, g, h in itertools.product(category.hom(a, b), category.hom(b, c), category.hom(c, d)):
            if category.compose(category.compose(f, g), h) != category.compose(f, category.compose(g, h)):
                raise CategoryAxiomError(f'Associativity fails for ({f!r}, {g!r}, {h!r})', (f, g, h))


def build_finite_category(objects: Sequence[Hashable], homs: Dict[Tuple, Sequence[Hashable]], identities: Dict[Hashable, Hashable],
                          comp: Dict[Tuple, Hashable]) -> FiniteCategory:
    """Builds a finite category after verifying totality, unit laws and associativity exhaustively

    :param homs: map (a, b) -> morphism ids. Ids must be unique across hom-sets
    :param identities: map object -> identity morphism id
    :param comp: map (f, g) -> f;g for every composable pair
    """
    category = FiniteCategory(objects, homs, identities, comp)
    _check_tables(category)
    _check_axioms(category)
    logging.debug(f'Built finite category with {len(category.objects)} objects and {len(category.morphisms())} morphisms')
    return category


@dataclass(frozen=True)
class HomPreorder:
    """A preorder on some hom-sets of a category. Hom-sets without an entry carry the discrete order"""
    category: SmallCategory
    orders: Dict[Tuple, Preorder] = field(default_factory=dict)

    def order(self, a, b) -> Preorder:
        if (a, b) in self.orders:
            order = self.orders[(a, b)]
            if order.elements != tuple(self.category.hom(a, b)):
                raise ObjectMismatchError(f'Hom-preorder on {(a, b)} is not indexed by the hom-set')
            return order
        return poset.antichain_on(self.category.hom(a, b))

    def leq(self, f, g) -> bool:
        a, b = self.category.endpoints(f)
        if self.category.endpoints(g) != (a, b):
            raise ObjectMismatchError(f'{f!r} and {g!r} live in different hom-sets')
        return self.order(a, b).is_leq(f, g)

    @classmethod
    def discrete(cls, category):
        return cls(category)


@dataclass(frozen=True)
class OrderWitness:
    """Evidence lower <= upper inside the hom-set (a, b)"""
    lower: Hashable
    upper: Hashable
    hom: Tuple[Hashable, Hashable]


def witness(hom_preorder: HomPreorder, f, g) -> OrderWitness:
    """Builds the witness f <= g, raising CategoryAxiomError when the pair is not ordered"""
    if not hom_preorder.leq(f, g):
        raise CategoryAxiomError(f'{f!r} <= {g!r} does not hold', (f, g))
    return OrderWitness(f, g, hom_preorder.category.endpoints(f))


def compose_witness(hom_preorder: HomPreorder, w1: OrderWitness, w2: OrderWitness) -> OrderWitness:
    """The bifunctor ↑ on witnesses: (f <= g) and (k <= h) give (f;k <= g;h)"""
    category = hom_preorder.category
    if w1.hom[1] != w2.hom[0]:
        raise ObjectMismatchError(f'Witnesses on {w1.hom} and {w2.hom} are not composable')
    lower = category.compose(w1.lower, w2.lower)
    upper = category.compose(w1.upper, w2.upper)
    if not hom_preorder.leq(lower, upper):
        raise CategoryAxiomError(f'Monotonicity violated: {lower!r} <= {upper!r} fails', (w1.lower, w1.upper, w2.lower, w2.upper))
    return OrderWitness(lower, upper, (w1.hom[0], w2.hom[1]))


@dataclass(frozen=True, eq=False)
class NorphismGeneric:
    """A ban on Hom(a, b), stored as its curried predicate over the hom-set"""
    hom: Tuple[Hashable, Hashable]
    morphisms: Tuple[Hashable, ...]
    banned: Tuple[bool, ...]
    name: str = ''
    # Instance data inexact rules may need, e.g. the lower bound a threshold norphism was built from
    tag: Any = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'morphisms', tuple(self.morphisms))
        object.__setattr__(self, 'banned', tuple(bool(b) for b in self.banned))
        if len(self.morphisms) != len(self.banned):
            raise ObjectMismatchError(f'{len(self.banned)} ban flags for {len(self.morphisms)} morphisms')
        object.__setattr__(self, '_position', {f: i for i, f in enumerate(self.morphisms)})

    @classmethod
    def from_predicate(cls, category: SmallCategory, a, b, predicate, name='', tag=None):
        morphisms = category.hom(a, b)
        return cls((a, b), morphisms, [predicate(f) for f in morphisms], name=name, tag=tag)

    @classmethod
    def zero(cls, category: SmallCategory, a, b, name='zero'):
        return cls.from_predicate(category, a, b, lambda f: False, name=name)

    def bans(self, f) -> bool:
        try:
            return self.banned[self._position[f]]
        except KeyError:
            raise ObjectMismatchError(f'Morphism {f!r} is not in the hom-set {self.hom} of norphism {self.name!r}') from None

    def banned_morphisms(self):
        return [f for f, b in zip(self.morphisms, self.banned) if b]

    def __eq__(self, other):
        if not isinstance(other, NorphismGeneric):
            return NotImplemented
        return self.hom == other.hom and self.morphisms == other.morphisms and self.banned == other.banned

    def __hash__(self):
        return hash((self.hom, self.morphisms, self.banned))


def incompatibility(n: NorphismGeneric, f) -> bool:
    """i(n, f): True iff n bans f"""
    return n.bans(f)


class InexactRule(abc.ABC):
    """Inexact composition of morphisms with norphisms"""

    @abc.abstractmethod
    def left(self, category: SmallCategory, f, n: NorphismGeneric) -> NorphismGeneric:
        """f • n : Nom(a, c) -> Nom(b, c) for f : a -> b"""

    @abc.abstractmethod
    def right(self, category: SmallCategory, n: NorphismGeneric, g) -> NorphismGeneric:
        """n ⟜ g : Nom(a, c) -> Nom(a, b) for g : b -> c"""


class ExactRule(InexactRule):
    """Bans exactly what would be banned downstream: (f • n)(g) = n(f;g) and (n ⟜ g)(f) = n(f;g)

    Composites the category cannot form (e.g. beyond a truncation cap) are left unbanned.
    """

    def left(self, category, f, n):
        a, b = category.endpoints(f)
        if a != n.hom[0]:
            raise ObjectMismatchError(f'f : {a!r} -> {b!r} cannot precompose a norphism on {n.hom}')
        return NorphismGeneric.from_predicate(
            category, b, n.hom[1], lambda g: category.can_compose(f, g) and n.bans(category.compose(f, g)),
            name=f'{f}•{n.name}')

    def right(self, category, n, g):
        b, c = category.endpoints(g)
        if c != n.hom[1]:
            raise ObjectMismatchError(f'g : {b!r} -> {c!r} cannot postcompose a norphism on {n.hom}')
        return NorphismGeneric.from_predicate(
            category, n.hom[0], b, lambda f: category.can_compose(f, g) and n.bans(category.compose(f, g)),
            name=f'{n.name}⟜{g}')


def inexact_compose(category: SmallCategory, x, n: NorphismGeneric, side: str, rule: Optional[InexactRule] = None) -> NorphismGeneric:
    """Composes the morphism x with n on the given side

    :param side: InexactSide.LEFT for x • n (x : a -> b), InexactSide.RIGHT for n ⟜ x (x : b -> c)
    :param rule: defaults to ExactRule
    """
    rule = rule or ExactRule()
    if side == InexactSide.LEFT:
        return rule.left(category, x, n)
    if side == InexactSide.RIGHT:
        return rule.right(category, n, x)
    raise ValueError(f'Unknown inexact composition side {side!r}')


@dataclass
class EquivarianceReport:
    """Outcome of check_equivariance. An empty violation list means both equivariance conditions hold"""
    violations: List[Violation] = field(default_factory=list)
    exact: bool = True
    checked: int = 0
    non_expansive: List[str] = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def merge(self, other: 'EquivarianceReport'):
        return EquivarianceReport(
            violations=sorted(set(self.violations) | set(other.violations), key=repr),
            exact=self.exact and other.exact,
            checked=self.checked + other.checked,
            non_expansive=sorted(set(self.non_expansive) | set(other.non_expansive)))

    def to_dict(self):
        return {
            'passed': self.passed,
            'exact': self.exact,
            'checked': self.checked,
            'violations': [{'norphism': v.norphism, 'f': str(v.f), 'g': str(v.g), 'condition': v.condition} for v in self.violations],
            'non_expansive': list(self.non_expansive),
        }


def _check_norphism(category: SmallCategory, n: NorphismGeneric, rule: InexactRule) -> EquivarianceReport:
    report = EquivarianceReport()
    a, c = n.hom
    left_cache, right_cache = {}, {}
    for b in category.objects:
        for f in category.hom(a, b):
            for g in category.hom(b, c):
                if not category.can_compose(f, g):
                    continue
                exact_ban = n.bans(category.compose(f, g))
                if f not in left_cache:
                    left_cache[f] = rule.left(category, f, n)
                if g not in right_cache:
                    right_cache[g] = rule.right(category, n, g)
                left_ban = left_cache[f].bans(g)
                right_ban = right_cache[g].bans(f)
                report.checked += 1
                if left_ban and not exact_ban:
                    report.violations.append(Violation(n.name, f, g, EQUIV_1))
                if right_ban and not exact_ban:
                    report.violations.append(Violation(n.name, f, g, EQUIV_2))
                if left_ban != exact_ban or right_ban != exact_ban:
                    report.exact = False
    return report


def check_equivariance(category: SmallCategory, hom_preorder: Optional[HomPreorder], norphisms: Iterable[NorphismGeneric],
                       rule: Optional[InexactRule] = None, num_workers: int = 1) -> EquivarianceReport:
    """Checks equiv-1 and equiv-2 on every quadruple (n, f, g, condition) and whether they hold with equality

    :param hom_preorder: when given, norphisms whose banned sets are not upward-closed are listed as non-expansive
    :param num_workers: partitions the norphisms over a thread pool; partial reports are merged by union
    """
    rule = rule or ExactRule()
    norphisms = list(norphisms)
    if num_workers > 1:
        with ThreadPoolExecutor(max_workers=num_workers) as executor:
            partial = list(executor.map(lambda n: _check_norphism(category, n, rule), norphisms))
    else:
        partial = [_check_norphism(category, n, rule) for n in norphisms]

    report = EquivarianceReport()
    for part in partial:
        report = report.merge(part)
    if hom_preorder is not None:
        report.non_expansive = sorted(n.name for n in norphisms if not check_expansiveness(n, hom_preorder))
    logging.info(f'Equivariance: {report.checked} (n, f, g) triples, {len(report.violations)} violations, exact={report.exact}')
    return report


def check_expansiveness(n: NorphismGeneric, hom_preorder: HomPreorder) -> bool:
    """True iff the banned set is upward-closed: banning f bans everything superior to f"""
    order = hom_preorder.order(*n.hom)
    membership = np.array([n.bans(f) for f in order.elements], dtype=bool)
    return poset.check_closed(order, membership, Direction.UPWARD)


def monotonicity_violations(category: SmallCategory, hom_preorder: HomPreorder) -> List[Tuple]:
    """Returns (f, g, h, side) where f <= g but composing with h on the given side breaks the order"""
    violations = []
    for a, b in itertools.product(category.objects, repeat=2):
        order = hom_preorder.order(a, b)
        ordered = [(f, g) for f, g in itertools.product(order.elements, repeat=2) if f != g and order.is_leq(f, g)]
        if not ordered:
            continue
        for c in category.objects:
            for h in category.hom(b, c):
                for f, g in ordered:
                    if category.can_compose(f, h) and category.can_compose(g, h) \
                            and not hom_preorder.leq(category.compose(f, h), category.compose(g, h)):
                        violations.append((f, g, h, 'post'))
            for k in category.hom(c, a):
                for f, g in ordered:
                    if category.can_compose(k, f) and category.can_compose(k, g) \
                            and not hom_preorder.leq(category.compose(k, f), category.compose(k, g)):
                        violations.append((f, g, k, 'pre'))
    return violations


def check_monotone_homs(category: SmallCategory, hom_preorder: HomPreorder) -> bool:
    """True iff f <= g implies f;h <= g;h and k;f <= k;g"""
    return not monotonicity_violations(category, hom_preorder)
