"""
Lower-bound norphisms on path categories.

Morphisms are paths of a weighted digraph and a length functional L is subadditive: L(f;g) <= L(f) + L(g). A lower
bound mu on the pair (a, c) is the norphism (-L);(>= -mu). Rearranging the triangle inequality gives the inexact rule:
attaching a known path g : b -> c turns a bound mu on (a, c) into the bound mu - L(g) on (a, b).
"""
import abc
import heapq
import itertools
from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from absl import logging

from negdesign.algebra.nategory import InexactRule, NorphismGeneric, SmallCategory
from negdesign.constant import Defaults, Side, Strictness
from negdesign.errors import (BrokenPathError, EnumerationCapError, InadmissibleBoundError, NegativeWeightError,
                              ObjectMismatchError)

# Distance of a pair with no path
UNREACHABLE = None

Edge = namedtuple('Edge', ['source', 'target', 'weight'])
SearchResult = namedtuple('SearchResult', ['distance', 'expansions', 'path'])


def to_number(value, exact=True):
    """Parses a weight or bound. Exact mode gives a Fraction, so decimal strings such as '0.1' stay exact"""
    if isinstance(value, bool):
        raise ValueError(f'Not a number: {value!r}')
    if not exact:
        return float(Fraction(value)) if isinstance(value, str) else float(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def format_number(value):
    """Canonical form of a number: int when integral, 'p/q' string for other fractions, float otherwise"""
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    return value


@dataclass(frozen=True)
class WeightedDigraph:
    """Directed multigraph with non-negative weights. Edge indices follow the edge list order"""
    nodes: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    exact: bool = True

    def __post_init__(self):
        nodes = tuple(self.nodes)
        if len(set(nodes)) != len(nodes):
            raise ObjectMismatchError(f'Duplicate node names in {list(nodes)}')
        edges = []
        for source, target, weight in self.edges:
            if source not in nodes or target not in nodes:
                raise ObjectMismatchError(f'Edge ({source!r}, {target!r}) has an unknown endpoint')
            weight = to_number(weight, self.exact)
            if weight < 0:
                raise NegativeWeightError(f'Edge ({source!r}, {target!r}) has negative weight {weight}')
            edges.append(Edge(source, target, weight))
        object.__setattr__(self, 'nodes', nodes)
        object.__setattr__(self, 'edges', tuple(edges))

    @property
    def tolerance(self):
        return 0 if self.exact else Defaults.FLOAT_TOLERANCE

    def zero(self):
        return Fraction(0) if self.exact else 0.0

    def out_edges(self, node):
        return [i for i, edge in enumerate(self.edges) if edge.source == node]

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.nodes)
        for i, edge in enumerate(self.edges):
            graph.add_edge(edge.source, edge.target, key=i, weight=edge.weight)
        return graph


@dataclass(frozen=True)
class Path:
    """A morphism of the path category: a walk from source to target given by edge indices"""
    source: str
    target: str
    edges: Tuple[int, ...] = ()

    def __len__(self):
        return len(self.edges)

    def __str__(self):
        return f'{self.source}-[{",".join(str(e) for e in self.edges)}]->{self.target}'


def make_path(graph: WeightedDigraph, edges: Sequence[int], source: Optional[str] = None) -> Path:
    """Validates a walk. The empty path needs its source node"""
    edges = tuple(int(e) for e in edges)
    if not edges:
        if source not in graph.nodes:
            raise BrokenPathError(f'Empty path at unknown node {source!r}')
        return Path(source, source)
    for e in edges:
        if not 0 <= e < len(graph.edges):
            raise BrokenPathError(f'Unknown edge index {e}')
    if source is not None and graph.edges[edges[0]].source != source:
        raise BrokenPathError(f'Path starts at {graph.edges[edges[0]].source!r}, not {source!r}')
    for e1, e2 in zip(edges, edges[1:]):
        if graph.edges[e1].target != graph.edges[e2].source:
            raise BrokenPathError(f'Edges {e1} and {e2} are not consecutive')
    return Path(graph.edges[edges[0]].source, graph.edges[edges[-1]].target, edges)


def path_through(graph: WeightedDigraph, nodes: Sequence[str]) -> Path:
    """Path visiting the given nodes, taking the lightest edge at each step (lowest index on ties)"""
    if not nodes:
        raise BrokenPathError('A path needs at least one node')
    edges = []
    for u, v in zip(nodes, nodes[1:]):
        candidates = [i for i in graph.out_edges(u) if graph.edges[i].target == v]
        if not candidates:
            raise BrokenPathError(f'No edge from {u!r} to {v!r}')
        edges.append(min(candidates, key=lambda i: (graph.edges[i].weight, i)))
    return make_path(graph, edges, source=nodes[0])


def compose_paths(f: Path, g: Path) -> Path:
    if f.target != g.source:
        raise ObjectMismatchError(f'Paths {f} and {g} are not composable')
    return Path(f.source, g.target, f.edges + g.edges)


def enumerate_paths(graph: WeightedDigraph, a: str, b: str, max_len: int = Defaults.PATH_LENGTH_CAP,
                    max_paths: int = Defaults.MAX_PATHS) -> List[Path]:
    """Every walk from a to b with at most max_len edges, shortest first then by edge indices"""
    for node in (a, b):
        if node not in graph.nodes:
            raise ObjectMismatchError(f'Unknown node {node!r}')
    found = [Path(a, a)] if a == b else []
    frontier = [((), a)]
    for _ in range(max_len):
        next_frontier = []
        for edges, node in frontier:
            for e in graph.out_edges(node):
                walk = edges + (e,)
                target = graph.edges[e].target
                next_frontier.append((walk, target))
                if target == b:
                    found.append(Path(a, b, walk))
                    if len(found) > max_paths:
                        raise EnumerationCapError(f'More than {max_paths} paths from {a!r} to {b!r} within {max_len} edges')
        frontier = next_frontier
    return sorted(found, key=lambda p: (len(p), p.edges))


class LengthFunctional(abc.ABC):
    """Assigns a value L(h) to each path of a graph"""

    def __init__(self, graph: WeightedDigraph):
        self.graph = graph

    @abc.abstractmethod
    def __call__(self, path: Path):
        pass


class PathSumLength(LengthFunctional):
    """Sum of edge weights. Additive, hence subadditive with equality"""

    def __call__(self, path):
        return sum((self.graph.edges[e].weight for e in path.edges), self.graph.zero())


class CappedLength(LengthFunctional):
    """min(path sum, cap). Subadditive for cap >= 0"""

    def __init__(self, graph, cap):
        super().__init__(graph)
        self.cap = to_number(cap, graph.exact)
        self._sum = PathSumLength(graph)

    def __call__(self, path):
        return min(self._sum(path), self.cap)


class TableLength(LengthFunctional):
    """A base functional with explicitly assigned values for some paths"""

    def __init__(self, base: LengthFunctional, overrides: Dict[Path, object]):
        super().__init__(base.graph)
        self.base = base
        self.overrides = {path: to_number(value, base.graph.exact) for path, value in overrides.items()}

    def __call__(self, path):
        if path in self.overrides:
            return self.overrides[path]
        return self.base(path)


def path_length(L: LengthFunctional, path: Path):
    """L(path)"""
    make_path(L.graph, path.edges, source=path.source)
    return L(path)


def subadditivity_violations(L: LengthFunctional, max_path_len: int = Defaults.PATH_LENGTH_CAP) -> List[Tuple[Path, Path]]:
    """Composable pairs (f, g), with f;g within max_path_len edges, such that L(f;g) > L(f) + L(g)"""
    graph = L.graph
    violations = []
    for a, b, c in itertools.product(graph.nodes, repeat=3):
        for f in enumerate_paths(graph, a, b, max_path_len):
            for g in enumerate_paths(graph, b, c, max_path_len - len(f)):
                if L(compose_paths(f, g)) > L(f) + L(g) + graph.tolerance:
                    violations.append((f, g))
    return violations


def check_subadditive(L: LengthFunctional, max_path_len: int = Defaults.PATH_LENGTH_CAP) -> bool:
    """True iff L(f;g) <= L(f) + L(g) on every enumerated composable pair"""
    return not subadditivity_violations(L, max_path_len)


class PathCategory(SmallCategory):
    """The path category truncated at max_len edges. f;g is available iff it stays within the cap"""

    def __init__(self, graph: WeightedDigraph, max_len: int = Defaults.PATH_LENGTH_CAP, max_paths: int = Defaults.MAX_PATHS):
        self.graph = graph
        self.max_len = max_len
        self.max_paths = max_paths
        self._homs = {}

    @property
    def objects(self):
        return self.graph.nodes

    def hom(self, a, b):
        if (a, b) not in self._homs:
            self._homs[(a, b)] = tuple(enumerate_paths(self.graph, a, b, self.max_len, self.max_paths))
        return self._homs[(a, b)]

    def identity(self, a):
        return Path(a, a)

    def compose(self, f, g):
        return compose_paths(f, g)

    def endpoints(self, f):
        return f.source, f.target

    def can_compose(self, f, g):
        return f.target == g.source and len(f) + len(g) <= self.max_len


@dataclass(frozen=True)
class LowerBound:
    """Claim that every path from source to target has length at least mu"""
    source: str
    target: str
    mu: object
    strictness: str = Strictness.STRICT

    def __post_init__(self):
        if self.strictness not in (Strictness.STRICT, Strictness.LITERAL):
            raise ValueError(f'Unknown strictness {self.strictness!r}')

    def bans_length(self, length) -> bool:
        """-L(h) >= -mu in literal mode, L(h) < mu in strict mode"""
        if self.strictness == Strictness.LITERAL:
            return length <= self.mu
        return length < self.mu


def threshold_norphism(category: PathCategory, L: LengthFunctional, bound: LowerBound, name='') -> NorphismGeneric:
    """Materializes the bound as a norphism on the enumerated hom-set (source, target)"""
    return NorphismGeneric.from_predicate(category, bound.source, bound.target, lambda h: bound.bans_length(L(h)),
                                          name=name or f'mu({bound.source},{bound.target})={bound.mu}', tag=bound)


def propagate_bound(bound: LowerBound, attach: Path, side: str, L: LengthFunctional) -> LowerBound:
    """Inherits the bound along a known path

    :param side: Side.POST for attach g : b -> target, giving a bound on (source, b).
        Side.PRE for attach f : source -> b, giving a bound on (b, target)
    :return: bound with value mu - L(attach) and the same strictness
    """
    if side == Side.POST:
        if attach.target != bound.target:
            raise ObjectMismatchError(f'post-attached path must end at {bound.target!r}, got {attach}')
        return LowerBound(bound.source, attach.source, bound.mu - L(attach), bound.strictness)
    if side == Side.PRE:
        if attach.source != bound.source:
            raise ObjectMismatchError(f'pre-attached path must start at {bound.source!r}, got {attach}')
        return LowerBound(attach.target, bound.target, bound.mu - L(attach), bound.strictness)
    raise ValueError(f'Unknown propagation side {side!r}')


class ThresholdRule(InexactRule):
    """Inexact composition of threshold norphisms by subtracting the length of the attached path"""

    def __init__(self, L: LengthFunctional):
        self.L = L

    def left(self, category, f, n):
        return threshold_norphism(category, self.L, propagate_bound(n.tag, f, Side.PRE, self.L))

    def right(self, category, n, g):
        return threshold_norphism(category, self.L, propagate_bound(n.tag, g, Side.POST, self.L))


def shortest_path_oracle(graph: WeightedDigraph, a: str, c: str):
    """Exact distance from a to c, or UNREACHABLE"""
    for node in (a, c):
        if node not in graph.nodes:
            raise ObjectMismatchError(f'Unknown node {node!r}')
    try:
        return nx.dijkstra_path_length(graph.to_networkx(), a, c, weight='weight') + graph.zero()
    except nx.NetworkXNoPath:
        return UNREACHABLE


def shortest_path(graph: WeightedDigraph, a: str, c: str) -> Optional[Path]:
    """A shortest path from a to c as a morphism, or None when c is unreachable"""
    try:
        nodes = nx.dijkstra_path(graph.to_networkx(), a, c, weight='weight')
    except nx.NetworkXNoPath:
        return None
    return path_through(graph, nodes)


def is_sound(graph: WeightedDigraph, bound: LowerBound) -> bool:
    """True iff every path of the pair is at least mu long"""
    distance = shortest_path_oracle(graph, bound.source, bound.target)
    return distance is UNREACHABLE or bound.mu <= distance + graph.tolerance


def landmark_bounds(graph: WeightedDigraph, goal: str, landmarks: Optional[Iterable[str]] = None,
                    strictness: str = Strictness.STRICT) -> List[LowerBound]:
    """Exact goal distances of the landmarks, propagated along shortest paths to every node they reach

    A landmark l with d(l, goal) gives the bound d(l, goal) - d(l, v) on (v, goal), the admissible landmark heuristic
    """
    L = PathSumLength(graph)
    network = graph.to_networkx()
    bounds = []
    for landmark in (graph.nodes if landmarks is None else landmarks):
        distance = shortest_path_oracle(graph, landmark, goal)
        if distance is UNREACHABLE:
            continue
        exact = LowerBound(landmark, goal, distance, strictness)
        for node, nodes in sorted(nx.single_source_dijkstra_path(network, landmark, weight='weight').items()):
            bounds.append(propagate_bound(exact, path_through(graph, nodes), Side.PRE, L))
    return bounds


def astar_with_bounds(graph: WeightedDigraph, a: str, c: str, bounds: Sequence[LowerBound] = ()) -> SearchResult:
    """A* search whose heuristic is the best supplied lower bound towards c (0 when none)

    Every bound is checked against the oracle first. Nodes are re-opened when a cheaper route appears, so admissible but
    inconsistent bounds still give exact distances. Ties are broken on smaller heuristic, then node order.
    """
    for node in (a, c):
        if node not in graph.nodes:
            raise ObjectMismatchError(f'Unknown node {node!r}')
    for bound in bounds:
        if not is_sound(graph, bound):
            raise InadmissibleBoundError(f'Bound {bound.mu} on ({bound.source}, {bound.target}) exceeds the true distance')

    zero = graph.zero()
    heuristic = {node: zero for node in graph.nodes}
    for bound in bounds:
        if bound.target == c and bound.mu > heuristic[bound.source]:
            heuristic[bound.source] = bound.mu
    order = {node: i for i, node in enumerate(graph.nodes)}

    cost = {a: zero}
    parent_edge = {}
    queue = [(heuristic[a], heuristic[a], order[a], a)]
    expansions = 0
    while queue:
        priority, _, _, node = heapq.heappop(queue)
        if priority > cost[node] + heuristic[node]:
            continue
        expansions += 1
        if node == c:
            edges = []
            while node in parent_edge:
                edges.append(parent_edge[node])
                node = graph.edges[parent_edge[node]].source
            return SearchResult(cost[c], expansions, Path(a, c, tuple(reversed(edges))))
        for e in graph.out_edges(node):
            successor = graph.edges[e].target
            successor_cost = cost[node] + graph.edges[e].weight
            if successor not in cost or successor_cost < cost[successor]:
                cost[successor] = successor_cost
                parent_edge[successor] = e
                h = heuristic[successor]
                heapq.heappush(queue, (successor_cost + h, h, order[successor], successor))
    logging.debug(f'{c!r} is unreachable from {a!r} after {expansions} expansions')
    return SearchResult(UNREACHABLE, expansions, None)
