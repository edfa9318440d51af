import itertools

from absl.testing import absltest

from negdesign.algebra import dp_core, metric, nategory, norphism_dp
from negdesign.constant import Defaults, Suite
from negdesign.utils import corpus_utils, parsing_utils, verify_utils
from negdesign.utils.testing.data_setup import DataSetup
from negdesign.utils.verify_utils import VerificationReport


class TestVerifyUtils(absltest.TestCase, DataSetup):
    """Unit test for verify_utils.py"""

    def setUp(self):
        self.chain2_problem = parsing_utils.load_problem_file(self.golden_chain2_file)
        self.metric_problem = parsing_utils.load_problem_file(self.golden_metric_file)

    def testReport(self):
        """Tests recording, witness truncation and merging"""
        report = VerificationReport(suites=['a'])
        report.record('ok', [])
        self.assertTrue(report.passed)
        report.record('broken', [f'w{i}' for i in range(verify_utils.MAX_REPORTED_VIOLATIONS + 5)])
        self.assertFalse(report.passed)
        self.assertLen(report.violations, verify_utils.MAX_REPORTED_VIOLATIONS)
        self.assertEqual(report.violation_counts['broken'], verify_utils.MAX_REPORTED_VIOLATIONS + 5)

        merged = VerificationReport(suites=['b'], checks={'other': True}).merge(report)
        self.assertEqual(merged.suites, ['b', 'a'])
        self.assertEqual(merged.to_dict()['checks'], {'other': True, 'ok': True, 'broken': False})
        self.assertFalse(merged.to_dict()['passed'])

    def testExhaustiveSpaces(self):
        """Tests that file posets equal to a small space are not added twice"""
        self.assertEqual(list(verify_utils.exhaustive_spaces(self.chain2_problem)), list(corpus_utils.small_spaces()))

    def testAxioms(self):
        """Tests the axioms suite on the 2-chain problem"""
        report = verify_utils.verify_axioms(self.chain2_problem, trials=20)
        self.assertTrue(report.passed, report.violations)
        self.assertEqual(report.suites, [Suite.AXIOMS])
        self.assertEqual(report.diagnostics['axioms']['objects'], ['1', 'chain2', '1xchain2', 'antichain2', 'cycle2'])
        spaces = list(verify_utils.axiom_spaces().values())
        self.assertEqual(report.diagnostics['axioms']['morphisms'],
                         sum(len(dp_core.enumerate_design_problems(P, Q)) for P in spaces for Q in spaces))

    def testEquivariance(self):
        """Tests the equivariance suite including the file norphisms and bounds"""
        for problem in (self.chain2_problem, self.metric_problem):
            report = verify_utils.verify_equivariance(problem)
            self.assertTrue(report.passed, report.violations)
            self.assertTrue(report.checks['mutation_detected'])
            self.assertTrue(report.checks['metric_exact'])
        self.assertEqual(report.diagnostics['equivariance']['non_expansive'], [])

    def testSpuriousBanRule(self):
        """Tests that the mutated rule breaks equivariance"""
        nat = norphism_dp.dp_nategory(corpus_utils.small_spaces())
        zero = nat.wrap(norphism_dp.zero_norphism(self.chain2, self.chain2), name='zero')
        self.assertFalse(nategory.check_equivariance(nat.category, None, [zero], rule=verify_utils.SpuriousBanRule()).passed)

    def testExpansiveness(self):
        """Tests the expansiveness suite with file norphisms"""
        report = verify_utils.verify_expansiveness(self.chain2_problem, trials=100)
        self.assertTrue(report.passed, report.violations)
        self.assertEqual(report.diagnostics['expansiveness']['random_trials'], 100)

    def testSoundness(self):
        """Tests the soundness suite and the A* demonstration on the seeded corpus"""
        report = verify_utils.verify_soundness(self.metric_problem)
        self.assertTrue(report.passed, report.violations)
        diagnostics = report.diagnostics['soundness']
        self.assertLessEqual(diagnostics['expansions_with_bounds'], diagnostics['expansions_without_bounds'])
        self.assertGreater(diagnostics['graphs_improved'], 0)
        self.assertEqual(diagnostics['file_bounds_sound'], {'ac': True, 'ad_loose': True})

    def testSoundnessIsSeeded(self):
        """Tests that diagnostics only depend on the seed"""
        first = verify_utils.verify_soundness(seed=5, count=5)
        second = verify_utils.verify_soundness(seed=5, count=5)
        self.assertEqual(first.to_dict(), second.to_dict())

    def testStrictThresholdsCoverEveryPair(self):
        """Tests that strict thresholds at the oracle distance are checked for every reachable pair"""
        report = verify_utils.verify_soundness(seed=5, count=3)
        self.assertTrue(report.checks['strict_thresholds_safe'])
        reachable = sum(metric.shortest_path_oracle(graph, a, c) is not None
                        for graph in corpus_utils.graph_corpus(5, 3) for a, c in itertools.product(graph.nodes, repeat=2))
        self.assertEqual(report.diagnostics['soundness']['threshold_pairs'], reachable)
        self.assertEqual(report.diagnostics['soundness']['threshold_path_cap'], Defaults.EQUIVARIANCE_PATH_CAP)

    def testRunSuite(self):
        """Tests suite selection"""
        report = verify_utils.run_suite(Suite.EXPANSIVENESS, self.chain2_problem)
        self.assertEqual(report.suites, [Suite.EXPANSIVENESS])
        with self.assertRaises(ValueError):
            verify_utils.run_suite('everything')


if __name__ == '__main__':
    absltest.main()
