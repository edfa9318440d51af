import numpy as np
from absl.testing import absltest

from negdesign.algebra import dp_core, poset
from negdesign.utils import corpus_utils


class TestCorpusUtils(absltest.TestCase):
    """Unit test for corpus_utils.py"""

    def testGeneratorPreorders(self):
        """Tests the generator names and the size filter"""
        self.assertEqual(sorted(corpus_utils.generator_preorders()),
                         ['antichain2', 'antichain3', 'antichain4', 'chain1', 'chain2', 'chain3', 'chain4', 'diamond', 'vee', 'wedge'])
        self.assertEqual(sorted(corpus_utils.generator_preorders(max_size=2)), ['antichain2', 'chain1', 'chain2'])

    def testSmallSpaces(self):
        """Tests that the small spaces are pairwise distinct"""
        spaces = list(corpus_utils.small_spaces().values())
        self.assertLen(spaces, 3)
        self.assertNotEqual(spaces[1], spaces[2])
        self.assertEqual(spaces[2].size, 2)

    def testRandomInstances(self):
        """Tests that random design problems are closed and seeded"""
        rng = np.random.default_rng(0)
        P, Q = corpus_utils.random_preorder(rng, 4), corpus_utils.random_preorder(rng, 3)
        self.assertTrue(dp_core.validate(corpus_utils.random_design_problem(rng, P, Q)))
        corpus_utils.random_norphism(rng, P, Q)

        first = corpus_utils.random_preorder(np.random.default_rng(9), 4)
        self.assertEqual(first, corpus_utils.random_preorder(np.random.default_rng(9), 4))

    def testGraphCorpus(self):
        """Tests corpus size, node names and weight range"""
        corpus = corpus_utils.graph_corpus(seed=1, count=10, max_nodes=6)
        self.assertLen(corpus, 10)
        for graph in corpus:
            self.assertBetween(len(graph.nodes), 2, 6)
            self.assertEqual(graph.nodes[0], 'v0')
            self.assertTrue(all(1 <= e.weight <= 9 for e in graph.edges))
        self.assertEqual(corpus, corpus_utils.graph_corpus(seed=1, count=10, max_nodes=6))

    def testGeneratorNorphisms(self):
        """Tests that the performance norphisms come first"""
        chain2 = poset.chain(2)
        norphisms = corpus_utils.generator_norphisms(chain2, chain2)
        self.assertLen(norphisms, 3 * 3 + 6)


if __name__ == '__main__':
    absltest.main()
