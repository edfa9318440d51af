import itertools

from absl.testing import absltest

from negdesign.algebra import nategory, norphism_dp
from negdesign.algebra.nategory import InexactRule, NorphismGeneric
from negdesign.constant import InexactSide, Side
from negdesign.errors import CategoryAxiomError, ObjectMismatchError
from negdesign.utils import corpus_utils
from negdesign.utils.testing.data_setup import DataSetup
from negdesign.utils.verify_utils import SpuriousBanRule


class HashRule(InexactRule):
    """Bans an arbitrary but fixed subset on both sides"""

    def left(self, category, f, n):
        return NorphismGeneric.from_predicate(category, category.endpoints(f)[1], n.hom[1], lambda g: hash((str(f), str(g))) % 3 == 0)

    def right(self, category, n, g):
        return NorphismGeneric.from_predicate(category, n.hom[0], category.endpoints(g)[0], lambda f: hash((str(g), str(f))) % 5 == 0)


class TestNategory(absltest.TestCase, DataSetup):
    """Unit test for nategory.py"""
    nat = norphism_dp.dp_nategory(corpus_utils.small_spaces())

    def testSingleObject(self):
        """Tests that one object with its identity is a category"""
        category = nategory.build_finite_category(['a'], {('a', 'a'): ['id']}, {'a': 'id'}, {('id', 'id'): 'id'})
        self.assertEqual(category.morphisms(), ['id'])
        self.assertEqual(category.endpoints('id'), ('a', 'a'))

    def testUnitLawFailure(self):
        """Tests that a broken unit law is reported with its witness"""
        comp = {('id', 'id'): 'id', ('id', 'e'): 'id', ('e', 'id'): 'e', ('e', 'e'): 'id'}
        with self.assertRaises(CategoryAxiomError) as context:
            nategory.build_finite_category(['a'], {('a', 'a'): ['id', 'e']}, {'a': 'id'}, comp)
        self.assertEqual(context.exception.witness, ('id', 'e'))

    def testAssociativityFailure(self):
        """Tests that a non-associative table is rejected"""
        comp = {('id', m): m for m in ('id', 'x', 'y')}
        comp.update({(m, 'id'): m for m in ('x', 'y')})
        comp.update({('x', 'x'): 'x', ('x', 'y'): 'y', ('y', 'x'): 'x', ('y', 'y'): 'x'})
        with self.assertRaises(CategoryAxiomError):
            nategory.build_finite_category(['a'], {('a', 'a'): ['id', 'x', 'y']}, {'a': 'id'}, comp)

    def testMalformedTables(self):
        """Tests missing compositions, dangling identities and reused ids"""
        with self.assertRaises(CategoryAxiomError):
            nategory.build_finite_category(['a'], {('a', 'a'): ['id']}, {'a': 'id'}, {})
        with self.assertRaises(CategoryAxiomError):
            nategory.build_finite_category(['a'], {('a', 'a'): ['id']}, {'a': 'other'}, {('id', 'id'): 'id'})
        with self.assertRaises(CategoryAxiomError):
            nategory.build_finite_category(['a', 'b'], {('a', 'a'): ['f'], ('b', 'b'): ['f']}, {'a': 'f', 'b': 'f'}, {})

    def testWitnesses(self):
        """Tests that composed witnesses are valid witnesses"""
        hom_preorder = self.nat.hom_preorder
        order = hom_preorder.order('chain2', 'chain2')
        pairs = [(f, g) for f in order.elements for g in order.elements if order.is_leq(f, g)]
        for f, g in pairs:
            for k, h in pairs:
                w = nategory.compose_witness(hom_preorder, nategory.witness(hom_preorder, f, g), nategory.witness(hom_preorder, k, h))
                self.assertTrue(hom_preorder.leq(w.lower, w.upper))
                self.assertEqual(w.hom, ('chain2', 'chain2'))

        identity = self.nat.category.identity('chain2')
        top = [f for f in order.elements if self.nat.design_problems[f].rel.all()][0]
        with self.assertRaises(CategoryAxiomError):
            nategory.witness(hom_preorder, top, identity)

    def testMonotoneHoms(self):
        """Tests that composition is monotone in the pointwise order"""
        self.assertTrue(nategory.check_monotone_homs(self.nat.category, self.nat.hom_preorder))

    def testEquivarianceExact(self):
        """Tests that the DP instance is equivariant and exact"""
        report = nategory.check_equivariance(self.nat.category, self.nat.hom_preorder, self.nat.norphisms())
        self.assertTrue(report.passed)
        self.assertTrue(report.exact)
        self.assertEqual(report.non_expansive, [])
        self.assertGreater(report.checked, 0)

    def testSpuriousBanDetected(self):
        """Tests that one extra ban is reported as an equiv-1 violation"""
        zero = NorphismGeneric.zero(self.nat.category, 'chain2', 'chain2')
        report = nategory.check_equivariance(self.nat.category, None, [zero], rule=SpuriousBanRule())
        self.assertFalse(report.passed)
        self.assertEqual({v.condition for v in report.violations}, {nategory.EQUIV_1})

    def testMatchesDirectLoop(self):
        """Tests that the checker flags exactly the violating quadruples"""
        category, rule = self.nat.category, HashRule()
        norphisms = self.nat.norphisms()[:12]
        expected = set()
        for n in norphisms:
            a, c = n.hom
            for b in category.objects:
                for f in category.hom(a, b):
                    for g in category.hom(b, c):
                        exact = n.bans(category.compose(f, g))
                        if rule.left(category, f, n).bans(g) and not exact:
                            expected.add(nategory.Violation(n.name, f, g, nategory.EQUIV_1))
                        if rule.right(category, n, g).bans(f) and not exact:
                            expected.add(nategory.Violation(n.name, f, g, nategory.EQUIV_2))
        report = nategory.check_equivariance(category, None, norphisms, rule=rule)
        self.assertEqual(set(report.violations), expected)

        parallel = nategory.check_equivariance(category, None, norphisms, rule=rule, num_workers=3)
        self.assertEqual(parallel.to_dict(), report.to_dict())

    def testNonExpansiveReported(self):
        """Tests that a ban on the identity alone is not expansive"""
        identity = self.nat.category.identity('chain2')
        n = NorphismGeneric.from_predicate(self.nat.category, 'chain2', 'chain2', lambda f: f == identity, name='only-id')
        self.assertFalse(nategory.check_expansiveness(n, self.nat.hom_preorder))
        report = nategory.check_equivariance(self.nat.category, self.nat.hom_preorder, [n])
        self.assertEqual(report.non_expansive, ['only-id'])

    def testInexactCompose(self):
        """Tests the exact rule on both sides and argument checks"""
        category = self.nat.category
        n = self.nat.wrap(norphism_dp.performance_norphism(self.f_top, self.r_bottom), name='n')
        f = category.identity('chain2')
        left = nategory.inexact_compose(category, f, n, InexactSide.LEFT)
        right = nategory.inexact_compose(category, f, n, InexactSide.RIGHT)
        self.assertEqual(left.banned, n.banned)
        self.assertEqual(right.banned, n.banned)
        with self.assertRaises(ValueError):
            nategory.inexact_compose(category, f, n, 'middle')
        with self.assertRaises(ObjectMismatchError):
            nategory.inexact_compose(category, category.identity('1'), n, InexactSide.LEFT)
        with self.assertRaises(ObjectMismatchError):
            n.bans(category.identity('1'))

    def testDiscreteHomPreorder(self):
        """Tests that hom-sets without an order are discrete"""
        discrete = nategory.HomPreorder.discrete(self.nat.category)
        f = self.nat.category.identity('chain2')
        self.assertTrue(discrete.leq(f, f))
        others = [g for g in self.nat.category.hom('chain2', 'chain2') if g != f]
        self.assertFalse(any(discrete.leq(f, g) for g in others))

    def testExactRuleAgreesWithPropagate(self):
        """Tests that exact inexact composition on the DP instance is propagation, on every hom-set of the small spaces"""
        nat = norphism_dp.dp_nategory(corpus_utils.small_spaces())
        spaces = list(nat.spaces)
        for a, b, c in itertools.product(spaces, repeat=3):
            for k, n in enumerate(norphism_dp.enumerate_norphisms(nat.spaces[a], nat.spaces[c])):
                wrapped = nat.wrap(n, name=f'n{k}')
                for f in nat.category.hom(a, b):
                    self.assertEqual(nategory.inexact_compose(nat.category, f, wrapped, InexactSide.LEFT),
                                     nat.wrap(norphism_dp.propagate(n, nat.design_problems[f], Side.PRE)))
                for g in nat.category.hom(b, c):
                    self.assertEqual(nategory.inexact_compose(nat.category, g, wrapped, InexactSide.RIGHT),
                                     nat.wrap(norphism_dp.propagate(n, nat.design_problems[g], Side.POST)))


if __name__ == '__main__':
    absltest.main()
