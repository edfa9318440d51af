import itertools

import numpy as np
from absl.testing import absltest

from negdesign.algebra import dp_core, nategory, norphism_dp, poset
from negdesign.algebra.dp_core import RCovector
from negdesign.algebra.norphism_dp import NorphismDP
from negdesign.constant import Direction, Side
from negdesign.errors import ClosureError, ObjectMismatchError
from negdesign.utils import corpus_utils
from negdesign.utils.testing.data_setup import DataSetup


class TestNorphismDp(absltest.TestCase, DataSetup):
    """Unit test for norphism_dp.py"""

    def testPerformanceNorphism(self):
        """Tests the outer product of demand and resources"""
        n = norphism_dp.performance_norphism(self.f_top, self.r_bottom)
        np.testing.assert_array_equal(n.rel, [[0, 0], [1, 0]])
        self.assertFalse(norphism_dp.bans(n, self.identity2))
        top = dp_core.DesignProblem(self.chain2, self.chain2, np.ones((2, 2), dtype=bool))
        self.assertTrue(norphism_dp.bans(n, top))

    def testValidation(self):
        """Tests monotonicity checks of norphisms"""
        with self.assertRaises(ClosureError) as context:
            NorphismDP(self.chain2, self.chain2, np.array([[1, 0], [0, 0]]))
        self.assertEqual(context.exception.axis, dp_core.DOMAIN_AXIS)
        with self.assertRaises(ClosureError) as context:
            NorphismDP(self.chain2, self.chain2, np.array([[0, 0], [0, 1]]))
        self.assertEqual(context.exception.axis, dp_core.CODOMAIN_AXIS)

    def testJoin(self):
        """Tests that a join bans what either side bans"""
        n1 = norphism_dp.performance_norphism(self.f_top, self.r_bottom)
        n2 = norphism_dp.performance_norphism(self.f_all, self.r_bottom)
        joined = norphism_dp.join(n1, n2)
        for m in dp_core.enumerate_design_problems(self.chain2, self.chain2):
            self.assertEqual(norphism_dp.bans(joined, m), norphism_dp.bans(n1, m) or norphism_dp.bans(n2, m))
        with self.assertRaises(ObjectMismatchError):
            norphism_dp.join(n1, norphism_dp.zero_norphism(poset.unit(), self.chain2))

    def testZeroNorphism(self):
        """Tests that the zero norphism bans nothing"""
        zero = norphism_dp.zero_norphism(self.chain2, self.chain2)
        self.assertEqual(norphism_dp.banned_set(zero), [])

    def testBannedSet(self):
        """Tests that f = [0, 1], r = [1, 0] only bans the design problem with rel[1][0] = 1"""
        n = norphism_dp.performance_norphism(self.f_top, self.r_bottom)
        banned = norphism_dp.banned_set(n)
        self.assertLen(banned, 1)
        np.testing.assert_array_equal(banned[0].rel, np.ones((2, 2)))

    def testPropagateExact(self):
        """Tests exactness of propagation over every (n, attach, m) on 2-chains"""
        dps = dp_core.enumerate_design_problems(self.chain2, self.chain2)
        for n, attach in itertools.product(norphism_dp.enumerate_norphisms(self.chain2, self.chain2), dps):
            pre = norphism_dp.propagate(n, attach, Side.PRE)
            post = norphism_dp.propagate(n, attach, Side.POST)
            for m in dps:
                self.assertEqual(norphism_dp.bans(pre, m), norphism_dp.bans(n, dp_core.compose(attach, m)))
                self.assertEqual(norphism_dp.bans(post, m), norphism_dp.bans(n, dp_core.compose(m, attach)))

    def testDoublePropagationCommutes(self):
        """Tests that propagating on both sides gives the same ban in either order"""
        spaces = list(corpus_utils.small_spaces().values())
        for P, Q, R, S in itertools.product(spaces, repeat=4):
            for n, e, g in itertools.product(norphism_dp.enumerate_norphisms(P, Q), dp_core.enumerate_design_problems(P, R),
                                             dp_core.enumerate_design_problems(S, Q)):
                self.assertEqual(norphism_dp.propagate(norphism_dp.propagate(n, e, Side.PRE), g, Side.POST),
                                 norphism_dp.propagate(norphism_dp.propagate(n, g, Side.POST), e, Side.PRE))

        dps = dp_core.enumerate_design_problems(self.chain2, self.chain2)
        for n, e, g in itertools.product(norphism_dp.enumerate_norphisms(self.chain2, self.chain2), dps, dps):
            both = norphism_dp.propagate(norphism_dp.propagate(n, e, Side.PRE), g, Side.POST)
            for m in dps:
                self.assertEqual(norphism_dp.bans(both, m), norphism_dp.bans(n, dp_core.compose(dp_core.compose(e, m), g)))

    def testPerformanceNorphismBansFeasible(self):
        """Tests that a performance norphism bans exactly the design problems meeting its demand from its resources"""
        spaces = [self.chain2, poset.antichain(2), poset.vee(), poset.wedge()]
        for P, Q in itertools.product(spaces, repeat=2):
            dps = dp_core.enumerate_design_problems(P, Q)
            for upper in poset.enumerate_closed_sets(P, Direction.UPWARD):
                for lower in poset.enumerate_closed_sets(Q, Direction.DOWNWARD):
                    f, r = dp_core.FVector(P, upper.membership), RCovector(Q, lower.membership)
                    n = norphism_dp.performance_norphism(f, r)
                    for m in dps:
                        self.assertEqual(norphism_dp.bans(n, m), dp_core.feasible(f, m, r))

    def testPropagateAcrossObjects(self):
        """Tests propagation along design problems between different spaces"""
        rng = np.random.default_rng(3)
        P, Q, R = poset.vee(), poset.chain(2), poset.wedge()
        for _ in range(20):
            n = corpus_utils.random_norphism(rng, P, Q, density=0.2)
            e = corpus_utils.random_design_problem(rng, P, R)
            g = corpus_utils.random_design_problem(rng, R, Q)
            pre = norphism_dp.propagate(n, e, Side.PRE)
            post = norphism_dp.propagate(n, g, Side.POST)
            self.assertEqual((pre.dom, pre.cod), (R, Q))
            self.assertEqual((post.dom, post.cod), (P, R))
            for m in dp_core.enumerate_design_problems(R, Q):
                self.assertEqual(norphism_dp.bans(pre, m), norphism_dp.bans(n, dp_core.compose(e, m)))
            for m in dp_core.enumerate_design_problems(P, R):
                self.assertEqual(norphism_dp.bans(post, m), norphism_dp.bans(n, dp_core.compose(m, g)))
        with self.assertRaises(ObjectMismatchError):
            norphism_dp.propagate(n, g, Side.PRE)

    def testPropagateIdentity(self):
        """Tests that propagating along the identity leaves the norphism unchanged"""
        n = norphism_dp.performance_norphism(self.f_top, self.r_bottom)
        self.assertEqual(norphism_dp.propagate(n, self.identity2, Side.PRE), n)
        self.assertEqual(norphism_dp.propagate(n, self.identity2, Side.POST), n)

    def testResourceLimitSchema(self):
        """Tests the schema built from one pool and that it never bans the identity"""
        schema = norphism_dp.resource_limit_schema([self.r_bottom])
        np.testing.assert_array_equal(schema.rel, [[0, 0], [1, 0]])
        self.assertFalse(norphism_dp.bans(schema, self.identity2))
        self.assertEqual(norphism_dp.transposed_negation(self.r_bottom), self.f_top)

        for P in corpus_utils.generator_preorders().values():
            pools = [RCovector(P, s.membership) for s in poset.enumerate_closed_sets(P, Direction.DOWNWARD)]
            self.assertFalse(norphism_dp.bans(norphism_dp.resource_limit_schema(pools), dp_core.identity(P)))
        with self.assertRaises(ObjectMismatchError):
            norphism_dp.resource_limit_schema([])

    def testDecompose(self):
        """Tests that the generators of every norphism join back to it"""
        for P, Q in [(self.chain2, self.chain2), (poset.vee(), poset.chain(2)), (poset.antichain(2), poset.wedge())]:
            for n in norphism_dp.enumerate_norphisms(P, Q):
                generators = norphism_dp.decompose(n)
                self.assertEqual(norphism_dp.recompose(P, Q, generators), n)
                self.assertLessEqual(len(generators), int(n.rel.sum()))

    def testDecomposeDropsDominatedCells(self):
        """Tests that one generator suffices for a performance norphism"""
        n = norphism_dp.performance_norphism(self.f_all, self.r_all)
        generators = norphism_dp.decompose(n)
        self.assertLen(generators, 1)
        self.assertEqual(generators[0], (self.f_all, self.r_all))

    def testEnumerateNorphisms(self):
        """Tests that there are as many norphisms as design problems on the 2-chain"""
        self.assertLen(norphism_dp.enumerate_norphisms(self.chain2, self.chain2), 6)

    def testDpNategory(self):
        """Tests the finite DP nategory and the wrapped norphisms"""
        nat = norphism_dp.dp_nategory(corpus_utils.small_spaces())
        self.assertLen(nat.category.hom('chain2', 'chain2'), 6)
        self.assertLen(nat.category.hom('1', 'chain2'), 3)
        self.assertEqual(nat.design_problems[nat.category.identity('chain2')], self.identity2)

        n = norphism_dp.performance_norphism(self.f_top, self.r_bottom)
        wrapped = nat.wrap(n, name='n')
        for f in nat.category.hom('chain2', 'chain2'):
            self.assertEqual(nategory.incompatibility(wrapped, f), norphism_dp.bans(n, nat.design_problems[f]))
        self.assertTrue(nategory.check_expansiveness(wrapped, nat.hom_preorder))
        with self.assertRaises(ObjectMismatchError):
            nat.wrap(norphism_dp.zero_norphism(poset.chain(3), poset.chain(3)))


if __name__ == '__main__':
    absltest.main()
