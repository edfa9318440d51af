"""
Verification suites behind the `verify` command.

Each suite fills a VerificationReport with per-check booleans and the witnesses of every violation found. Violations are
data: a suite only raises when its own inputs are malformed.
"""
import itertools
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import networkx as nx
import numpy as np
from absl import logging

from negdesign.algebra import dp_core, nategory, norphism_dp, poset
from negdesign.algebra.dp_core import BooleanRelation, FVector, RCovector
from negdesign.algebra.metric import (CappedLength, LowerBound, PathCategory, PathSumLength, ThresholdRule, WeightedDigraph,
                                      astar_with_bounds, is_sound, landmark_bounds, path_through, propagate_bound,
                                      shortest_path_oracle, threshold_norphism)
from negdesign.algebra.nategory import ExactRule, HomPreorder, NorphismGeneric
from negdesign.constant import Defaults, Direction, EntityKind, Side, Suite
from negdesign.errors import NegDesignError
from negdesign.utils import corpus_utils

# Witnesses kept per check; the count of all violations is always reported
MAX_REPORTED_VIOLATIONS = 50


@dataclass
class VerificationReport:
    """Per-check booleans, violation witnesses and deterministic diagnostics"""
    suites: List[str] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)
    violations: List[Dict[str, str]] = field(default_factory=list)
    violation_counts: Dict[str, int] = field(default_factory=dict)
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.checks.values()) and not self.violations

    def record(self, check: str, witnesses: List[str]):
        """Sets the check to pass iff there are no witnesses"""
        self.checks[check] = not witnesses
        self.violation_counts[check] = len(witnesses)
        self.violations.extend({'check': check, 'witness': w} for w in witnesses[:MAX_REPORTED_VIOLATIONS])
        level = logging.INFO if not witnesses else logging.WARNING
        logging.log(level, f'{check}: {"pass" if not witnesses else f"{len(witnesses)} violations"}')

    def merge(self, other: 'VerificationReport'):
        return VerificationReport(
            suites=self.suites + other.suites,
            checks={**self.checks, **other.checks},
            violations=self.violations + other.violations,
            violation_counts={**self.violation_counts, **other.violation_counts},
            diagnostics={**self.diagnostics, **other.diagnostics})

    def to_dict(self):
        return {
            'suites': list(self.suites),
            'passed': self.passed,
            'checks': dict(self.checks),
            'violations': list(self.violations),
            'violation_counts': dict(self.violation_counts),
            'diagnostics': dict(self.diagnostics),
        }


class SpuriousBanRule(ExactRule):
    """Exact rule plus one extra ban on the first morphism of every left composite. Used to check the checker"""

    def left(self, category, f, n):
        exact = super().left(category, f, n)
        banned = list(exact.banned)
        if banned:
            banned[0] = True
        return NorphismGeneric(exact.hom, exact.morphisms, banned, name=f'{exact.name}+spurious')


def demo_graph() -> WeightedDigraph:
    """A four-node cyclic graph used for the truncated path category checks"""
    return WeightedDigraph(('a', 'b', 'c', 'd'),
                           (('a', 'b', 2), ('b', 'c', 3), ('a', 'c', 7), ('c', 'd', 1), ('b', 'd', 6), ('d', 'a', 4)))


def exhaustive_spaces(problem=None) -> Dict[str, poset.Preorder]:
    """The small DP objects plus the distinct file posets with at most two elements"""
    spaces = corpus_utils.small_spaces()
    if problem is not None:
        for name, P in sorted(problem.entities[EntityKind.POSETS].items()):
            if P.size <= 2 and P not in spaces.values():
                spaces[name if name not in spaces else f'file:{name}'] = P
    return spaces


def axiom_spaces(problem=None) -> Dict[str, poset.Preorder]:
    """The exhaustive spaces plus the remaining two-element preorders: the antichain and the 2-cycle"""
    spaces = exhaustive_spaces(problem)
    for name, P in (('antichain2', poset.antichain(2)), ('cycle2', poset.from_hasse(['0', '1'], [('0', '1'), ('1', '0')]))):
        if P not in spaces.values():
            spaces[name if name not in spaces else f'generator:{name}'] = P
    return spaces


def _random_fvector(rng, P):
    return FVector(P, poset.close_vector(P, rng.random(P.size) < 0.3, Direction.UPWARD))


def _random_rcovector(rng, P):
    return RCovector(P, poset.close_vector(P, rng.random(P.size) < 0.5, Direction.DOWNWARD))


def _preserves_closure(build):
    try:
        result = build()
    except NegDesignError:
        return False
    if isinstance(result, BooleanRelation):
        return dp_core.validate(result)
    return poset.check_closed(result.space, result.membership, result.direction)


def _feasibility_factors(f, d, r):
    """feasible(f, d, r) = ⟨f;d, r⟩ = ⟨f, d;r⟩"""
    answer = dp_core.feasible(f, d, r)
    return answer == dp_core.contract(dp_core.map_functionality(f, d), r) == dp_core.contract(f, dp_core.map_resources(d, r))


def verify_axioms(problem=None, cap: Optional[int] = None, seed: int = Defaults.RANDOM_SEED,
                  trials: int = Defaults.RANDOM_DP_TRIALS) -> VerificationReport:
    """Category laws, closure preservation, transposes, feasibility factorization and tensor functoriality"""
    report = VerificationReport(suites=[Suite.AXIOMS])
    spaces = axiom_spaces(problem)

    axiom_witnesses = []
    nat = None
    try:
        nat = norphism_dp.dp_nategory(spaces, cap=cap)
    except NegDesignError as e:
        axiom_witnesses.append(f'{type(e).__name__}: {e} {getattr(e, "witness", "")}'.strip())

    transpose_witnesses = []
    feasibility_witnesses = []
    monotone_witnesses = []
    if nat is not None:
        monotone_witnesses = [f'{f} <= {g} broken by {h} ({side})' for f, g, h, side in
                              nategory.monotonicity_violations(nat.category, nat.hom_preorder)]
        for name, d in nat.design_problems.items():
            if dp_core.untranspose(dp_core.transpose(d)) != d:
                transpose_witnesses.append(f'untranspose(transpose({name})) != {name}')
        chain2 = spaces['chain2']
        for d in dp_core.enumerate_design_problems(chain2, chain2, cap=cap):
            for f in poset.enumerate_closed_sets(chain2, Direction.UPWARD):
                for r in poset.enumerate_closed_sets(chain2, Direction.DOWNWARD):
                    fv, rc = FVector(chain2, f.membership), RCovector(chain2, r.membership)
                    if not _feasibility_factors(fv, d, rc):
                        feasibility_witnesses.append(f'f={f.members()} d={d!r} r={r.members()}')

    generators = dict(corpus_utils.generator_preorders())
    if problem is not None:
        generators.update({f'file:{k}': P for k, P in problem.entities[EntityKind.POSETS].items() if P.size <= Defaults.POSET_CAP})
    for name, P in sorted(generators.items()):
        if dp_core.untranspose(dp_core.unit_eta(P)) != dp_core.identity(P):
            transpose_witnesses.append(f'untranspose(eta({name})) != identity({name})')
    if problem is not None:
        for name, d in sorted(problem.entities[EntityKind.DPS].items()):
            if dp_core.untranspose(dp_core.transpose(d)) != d:
                transpose_witnesses.append(f'untranspose(transpose({name})) != {name}')

    rng = np.random.default_rng(seed)
    closure_witnesses, tensor_witnesses = [], []
    for trial in range(trials):
        P, Q, R, S = [corpus_utils.random_preorder(rng, int(rng.choice(Defaults.RANDOM_SIZES))) for _ in range(4)]
        d = corpus_utils.random_design_problem(rng, P, Q)
        e = corpus_utils.random_design_problem(rng, Q, R)
        g = corpus_utils.random_design_problem(rng, R, S)
        f, r = _random_fvector(rng, P), _random_rcovector(rng, Q)

        if dp_core.compose(dp_core.identity(P), d) != d or dp_core.compose(d, dp_core.identity(Q)) != d:
            axiom_witnesses.append(f'trial {trial}: unit law')
        if dp_core.compose(dp_core.compose(d, e), g) != dp_core.compose(d, dp_core.compose(e, g)):
            axiom_witnesses.append(f'trial {trial}: associativity')
        for what, build in (('compose', lambda: dp_core.compose(d, e)), ('tensor', lambda: dp_core.tensor(d, e)),
                            ('map_functionality', lambda: dp_core.map_functionality(f, d)),
                            ('map_resources', lambda: dp_core.map_resources(d, r))):
            if not _preserves_closure(build):
                closure_witnesses.append(f'trial {trial}: {what}')
        if dp_core.untranspose(dp_core.transpose(d)) != d:
            transpose_witnesses.append(f'trial {trial}: untranspose(transpose(d)) != d')
        if not _feasibility_factors(f, d, r):
            feasibility_witnesses.append(f'trial {trial}')
        if dp_core.tensor(dp_core.compose(d, e), dp_core.compose(e, g)) != \
                dp_core.compose(dp_core.tensor(d, e), dp_core.tensor(e, g)):
            tensor_witnesses.append(f'trial {trial}: interchange')
        if dp_core.tensor(dp_core.identity(P), dp_core.identity(Q)) != dp_core.identity(poset.product(P, Q)):
            tensor_witnesses.append(f'trial {trial}: identity')

    report.record('category_axioms', axiom_witnesses)
    report.record('hom_order_monotone', monotone_witnesses)
    report.record('closure_preserved', closure_witnesses)
    report.record('transpose_coherent', transpose_witnesses)
    report.record('feasibility_factorizes', feasibility_witnesses)
    report.record('tensor_functorial', tensor_witnesses)
    report.diagnostics['axioms'] = {
        'objects': list(spaces),
        'morphisms': 0 if nat is None else len(nat.design_problems),
        'random_trials': trials,
    }
    return report


def _metric_equivariance(report: VerificationReport, graphs: Dict[str, WeightedDigraph], bounds, num_workers: int):
    equivariant, exact, capped = [], [], []
    checked = 0
    for graph_name, graph in graphs.items():
        category = PathCategory(graph, max_len=Defaults.EQUIVARIANCE_PATH_CAP)
        pair_bounds = []
        for a, c in itertools.product(graph.nodes, repeat=2):
            distance = shortest_path_oracle(graph, a, c)
            if distance is not None:
                pair_bounds.append(LowerBound(a, c, distance))
        pair_bounds.extend(b for g, b in bounds if g == graph_name)

        for L, witnesses, exactness in ((PathSumLength(graph), equivariant, exact), (CappedLength(graph, 5), capped, None)):
            norphisms = [threshold_norphism(category, L, b) for b in pair_bounds]
            result = nategory.check_equivariance(category, HomPreorder.discrete(category), norphisms, rule=ThresholdRule(L),
                                                 num_workers=num_workers)
            checked += result.checked
            witnesses.extend(f'{graph_name}: {v.norphism} f={v.f} g={v.g} {v.condition}' for v in result.violations)
            witnesses.extend(f'{graph_name}: {n} is not expansive' for n in result.non_expansive)
            if exactness is not None and not result.exact:
                exactness.append(f'{graph_name}: path-sum threshold composition is not exact')
    report.record('metric_equivariant', equivariant)
    report.record('metric_exact', exact)
    report.record('capped_metric_equivariant', capped)
    return checked


def verify_equivariance(problem=None, cap: Optional[int] = None, num_workers: int = 1) -> VerificationReport:
    """Equivariance and exactness on the DP nategory, exact propagation, mutation detection and the metric instance"""
    report = VerificationReport(suites=[Suite.EQUIVARIANCE])
    spaces = exhaustive_spaces(problem)
    nat = norphism_dp.dp_nategory(spaces, cap=cap)
    norphisms = nat.norphisms(cap=cap)
    if problem is not None:
        for name, n in sorted(problem.entities[EntityKind.NORPHISMS].items()):
            if n.dom in spaces.values() and n.cod in spaces.values():
                norphisms.append(nat.wrap(n, name=name))

    dp_report = nategory.check_equivariance(nat.category, nat.hom_preorder, norphisms, num_workers=num_workers)
    report.record('dp_equivariant', [f'{v.norphism} f={v.f} g={v.g} {v.condition}' for v in dp_report.violations])
    report.record('dp_exact', [] if dp_report.exact else ['inexact composition differs from composition on the DP instance'])

    chain2 = spaces['chain2']
    zero = nat.wrap(norphism_dp.zero_norphism(chain2, chain2), name='zero')
    mutated = nategory.check_equivariance(nat.category, None, [zero], rule=SpuriousBanRule())
    report.record('mutation_detected', [] if mutated.violations else ['a spurious ban went unreported'])

    propagation_witnesses = []
    dps = dp_core.enumerate_design_problems(chain2, chain2, cap=cap)
    for k, n in enumerate(norphism_dp.enumerate_norphisms(chain2, chain2, cap=cap)):
        for i, attach in enumerate(dps):
            pre = norphism_dp.propagate(n, attach, Side.PRE)
            post = norphism_dp.propagate(n, attach, Side.POST)
            for j, m in enumerate(dps):
                if norphism_dp.bans(pre, m) != norphism_dp.bans(n, dp_core.compose(attach, m)):
                    propagation_witnesses.append(f'pre n#{k} e#{i} m#{j}')
                if norphism_dp.bans(post, m) != norphism_dp.bans(n, dp_core.compose(m, attach)):
                    propagation_witnesses.append(f'post n#{k} g#{i} m#{j}')
    report.record('propagation_exact', propagation_witnesses)

    graphs = {'demo': demo_graph()}
    bounds = []
    if problem is not None:
        graphs.update({f'file:{name}': g for name, g in sorted(problem.entities[EntityKind.GRAPHS].items())})
        for name, definition in sorted(problem.definitions[EntityKind.BOUNDS].items()):
            bounds.append((f'file:{definition["graph"]}', problem.entities[EntityKind.BOUNDS][name]))
    metric_checked = _metric_equivariance(report, graphs, bounds, num_workers)

    report.diagnostics['equivariance'] = {
        'dp_triples': dp_report.checked,
        'dp_norphisms': len(norphisms),
        'metric_triples': metric_checked,
        'non_expansive': dp_report.non_expansive,
    }
    return report


def verify_expansiveness(problem=None, cap: Optional[int] = None, seed: int = Defaults.RANDOM_SEED,
                         trials: int = Defaults.RANDOM_EXPANSIVENESS_TRIALS) -> VerificationReport:
    """Banned sets are upward-closed under the pointwise order: exhaustively on small spaces, then on random pairs m <= m2"""
    report = VerificationReport(suites=[Suite.EXPANSIVENESS])
    nat = norphism_dp.dp_nategory(corpus_utils.small_spaces(), cap=cap)
    witnesses = [n.name for n in nat.norphisms(cap=cap) if not nategory.check_expansiveness(n, nat.hom_preorder)]

    rng = np.random.default_rng(seed)
    candidates = [] if problem is None else sorted(problem.entities[EntityKind.NORPHISMS].items())
    for trial in range(trials):
        if candidates and trial % 2:
            name, n = candidates[(trial // 2) % len(candidates)]
            P, Q = n.dom, n.cod
        else:
            P, Q = [corpus_utils.random_preorder(rng, int(rng.choice(Defaults.RANDOM_SIZES))) for _ in range(2)]
            name, n = f'random#{trial}', corpus_utils.random_norphism(rng, P, Q)
        m = corpus_utils.random_design_problem(rng, P, Q)
        m2 = dp_core.close_relation(P, Q, m.rel | (rng.random((P.size, Q.size)) < 0.2))
        if norphism_dp.bans(n, m) and not norphism_dp.bans(n, m2):
            witnesses.append(f'trial {trial}: {name} bans {m!r} but not {m2!r}')

    report.record('dp_expansive', witnesses)
    report.diagnostics['expansiveness'] = {'exhaustive_norphisms': len(nat.norphisms(cap=cap)), 'random_trials': trials}
    return report


def _schema_witnesses():
    witnesses = []
    for name, P in corpus_utils.generator_preorders().items():
        pools = [RCovector(P, s.membership) for s in poset.enumerate_closed_sets(P, Direction.DOWNWARD)]
        subsets = [(i,) for i in range(len(pools))] + list(itertools.combinations(range(len(pools)), 2))
        subsets.append(tuple(range(len(pools))))
        for subset in subsets:
            schema = norphism_dp.resource_limit_schema([pools[i] for i in subset])
            if norphism_dp.bans(schema, dp_core.identity(P)):
                witnesses.append(f'{name}: pools {[pools[i].members() for i in subset]}')
    return witnesses


def verify_soundness(problem=None, seed: int = Defaults.RANDOM_SEED, count: int = Defaults.CORPUS_GRAPHS) -> VerificationReport:
    """Metric soundness on the seeded graph corpus, the A* demonstration and resource-limit schema soundness"""
    report = VerificationReport(suites=[Suite.SOUNDNESS])
    corpus = corpus_utils.graph_corpus(seed, count)

    propagation, strict_safety, astar_exact = [], [], []
    expansions_with_bounds = expansions_without = improved = 0
    threshold_pairs = 0
    for k, graph in enumerate(corpus):
        network = graph.to_networkx()
        distances = {a: {c: d + graph.zero() for c, d in lengths.items()}
                     for a, lengths in nx.all_pairs_dijkstra_path_length(network, weight='weight')}
        routes = dict(nx.all_pairs_dijkstra_path(network, weight='weight'))
        paths = {(a, b): path_through(graph, nodes) for a in routes for b, nodes in routes[a].items()}
        L = PathSumLength(graph)

        for a, c in itertools.product(graph.nodes, repeat=2):
            if c not in distances[a]:
                continue
            bound = LowerBound(a, c, distances[a][c])
            for b in graph.nodes:
                if (a, b) in paths:
                    out = propagate_bound(bound, paths[(a, b)], Side.PRE, L)
                    if c in distances[b] and out.mu > distances[b][c]:
                        propagation.append(f'graph {k}: pre ({a},{c}) via {b}')
                if (b, c) in paths:
                    out = propagate_bound(bound, paths[(b, c)], Side.POST, L)
                    if b in distances[a] and out.mu > distances[a][b]:
                        propagation.append(f'graph {k}: post ({a},{c}) via {b}')

        category = PathCategory(graph, max_len=Defaults.EQUIVARIANCE_PATH_CAP)
        for a, c in itertools.product(graph.nodes, repeat=2):
            if c in distances[a]:
                n = threshold_norphism(category, L, LowerBound(a, c, distances[a][c]))
                strict_safety.extend(f'graph {k}: {h} banned' for h in n.banned_morphisms())
                threshold_pairs += 1

        source, goal = graph.nodes[0], graph.nodes[-1]
        best = {}
        for b in landmark_bounds(graph, goal):
            if b.source not in best or b.mu > best[b.source].mu:
                best[b.source] = b
        guided = astar_with_bounds(graph, source, goal, [best[v] for v in sorted(best)])
        blind = astar_with_bounds(graph, source, goal)
        oracle = distances[source].get(goal)
        if guided.distance != oracle or blind.distance != oracle:
            astar_exact.append(f'graph {k}: {guided.distance} / {blind.distance} vs oracle {oracle}')
        expansions_with_bounds += guided.expansions
        expansions_without += blind.expansions
        improved += guided.expansions < blind.expansions

    report.record('bound_propagation_sound', propagation)
    report.record('strict_thresholds_safe', strict_safety)
    report.record('astar_exact', astar_exact)
    report.record('astar_no_worse', [] if expansions_with_bounds <= expansions_without
                  else [f'{expansions_with_bounds} expansions with bounds vs {expansions_without} without'])
    report.record('astar_improves', [] if improved else ['no corpus graph needed fewer expansions with bounds'])
    report.record('schema_sound', _schema_witnesses())

    diagnostics = {
        'graphs': len(corpus),
        'seed': seed,
        'expansions_with_bounds': expansions_with_bounds,
        'expansions_without_bounds': expansions_without,
        'graphs_improved': improved,
        'threshold_pairs': threshold_pairs,
        'threshold_path_cap': Defaults.EQUIVARIANCE_PATH_CAP,
    }
    if problem is not None:
        diagnostics['file_bounds_sound'] = {
            name: is_sound(problem.entities[EntityKind.GRAPHS][problem.definitions[EntityKind.BOUNDS][name]['graph']], b)
            for name, b in sorted(problem.entities[EntityKind.BOUNDS].items())}
    report.diagnostics['soundness'] = diagnostics
    return report


def run_suite(suite: str, problem=None, cap: Optional[int] = None, seed: int = Defaults.RANDOM_SEED,
              num_workers: int = 1) -> VerificationReport:
    """Runs one suite, or every suite for Suite.ALL, and merges the reports"""
    runners = {
        Suite.AXIOMS: lambda: verify_axioms(problem, cap=cap, seed=seed),
        Suite.EQUIVARIANCE: lambda: verify_equivariance(problem, cap=cap, num_workers=num_workers),
        Suite.EXPANSIVENESS: lambda: verify_expansiveness(problem, cap=cap, seed=seed),
        Suite.SOUNDNESS: lambda: verify_soundness(problem, seed=seed),
    }
    if suite == Suite.ALL:
        selected = list(runners)
    elif suite in runners:
        selected = [suite]
    else:
        raise ValueError(f'Unknown suite {suite!r}')

    report = VerificationReport()
    for name in selected:
        start = time.time()
        report = report.merge(runners[name]())
        logging.info(f'Suite {name} finished in {time.time() - start:.2f}s')
    return report
