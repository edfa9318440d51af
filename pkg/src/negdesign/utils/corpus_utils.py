"""
Fixed generator preorders and seeded random instances used by the verification suites and tests
"""
from typing import Dict

import numpy as np

from negdesign.algebra import dp_core, norphism_dp, poset
from negdesign.algebra.dp_core import DesignProblem
from negdesign.algebra.metric import WeightedDigraph
from negdesign.algebra.norphism_dp import NorphismDP
from negdesign.algebra.poset import Preorder
from negdesign.constant import Defaults, Direction


def generator_preorders(max_size: int = 4) -> Dict[str, Preorder]:
    """Chains, antichains, diamond, V and Λ with at most max_size elements"""
    generators = {}
    for n in range(1, max_size + 1):
        generators[f'chain{n}'] = poset.chain(n)
        if n > 1:
            generators[f'antichain{n}'] = poset.antichain(n)
    for name, build in (('vee', poset.vee), ('wedge', poset.wedge), ('diamond', poset.diamond)):
        space = build()
        if space.size <= max_size:
            generators[name] = space
    return generators


def small_spaces() -> Dict[str, Preorder]:
    """Objects of the exhaustive DP instance: the unit space, the 2-chain and their product"""
    unit, chain2 = poset.unit(), poset.chain(2)
    return {'1': unit, 'chain2': chain2, '1xchain2': poset.product(unit, chain2)}


def random_preorder(rng: np.random.Generator, size: int, density: float = 0.4) -> Preorder:
    """Closure of random covers. Forward covers dominate; an occasional backward cover creates a cycle"""
    names = [f'x{i}' for i in range(size)]
    covers = []
    for i in range(size):
        for j in range(size):
            if i < j and rng.random() < density:
                covers.append((names[i], names[j]))
            elif i > j and rng.random() < density / 8:
                covers.append((names[i], names[j]))
    return poset.from_hasse(names, covers)


def random_design_problem(rng: np.random.Generator, dom: Preorder, cod: Preorder, density: float = 0.2) -> DesignProblem:
    """Closure of a random seed matrix"""
    return dp_core.close_relation(dom, cod, rng.random((dom.size, cod.size)) < density)


def random_norphism(rng: np.random.Generator, dom: Preorder, cod: Preorder, density: float = 0.2) -> NorphismDP:
    return NorphismDP(dom, cod, NorphismDP.close(dom, cod, rng.random((dom.size, cod.size)) < density))


def random_digraph(rng: np.random.Generator, max_nodes: int = Defaults.CORPUS_MAX_NODES, min_weight: int = Defaults.CORPUS_MIN_WEIGHT,
                   max_weight: int = Defaults.CORPUS_MAX_WEIGHT, mean_out_degree: float = 2.0) -> WeightedDigraph:
    """Random digraph with integer weights in [min_weight, max_weight]"""
    num_nodes = int(rng.integers(2, max_nodes + 1))
    nodes = [f'v{i}' for i in range(num_nodes)]
    edge_probability = min(1.0, mean_out_degree / max(1, num_nodes - 1))
    edges = []
    for i in range(num_nodes):
        for j in range(num_nodes):
            if i != j and rng.random() < edge_probability:
                edges.append((nodes[i], nodes[j], int(rng.integers(min_weight, max_weight + 1))))
    return WeightedDigraph(tuple(nodes), tuple(edges))


def graph_corpus(seed: int = Defaults.RANDOM_SEED, count: int = Defaults.CORPUS_GRAPHS, max_nodes: int = Defaults.CORPUS_MAX_NODES):
    """Seed-controlled list of random digraphs"""
    rng = np.random.default_rng(seed)
    return [random_digraph(rng, max_nodes=max_nodes) for _ in range(count)]


def generator_norphisms(P: Preorder, Q: Preorder):
    """Every performance norphism over closed demand/availability pairs plus every norphism of the hom-set"""
    performance = [norphism_dp.performance_norphism(dp_core.FVector(P, f.membership), dp_core.RCovector(Q, r.membership))
                   for f in poset.enumerate_closed_sets(P, Direction.UPWARD) for r in poset.enumerate_closed_sets(Q, Direction.DOWNWARD)]
    return performance + norphism_dp.enumerate_norphisms(P, Q)
