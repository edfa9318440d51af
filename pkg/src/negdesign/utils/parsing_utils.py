""" Problem file parsing, validation and canonical serialization

A problem file is a JSON document with the top-level keys of EntityKind, each a name -> definition map:

    posets:    {elements: [names], covers: [[a, b], ...]}
    vectors:   {space: poset, members: [names]}                      (closed upward on load)
    covectors: {space: poset, members: [names]}                      (closed downward on load)
    dps:       {dom: poset, cod: poset, true_pairs: [[p, q], ...], autoclose: bool} or {identity: poset}
    norphisms: {parts: [{f: vector, r: covector}, ...]}
               or {dom: poset, cod: poset, true_pairs: [[p, q], ...], autoclose: bool}
               or {schema: "resource_limit", pools: [covector, ...]}
    graphs:    {nodes: [names], edges: [[src, dst, weight], ...], exact: bool}
    paths:     {graph: graph, nodes: [names]}
    bounds:    {graph: graph, from: node, to: node, mu: number, strict: bool}

Weights and bounds are integers or strings ("2.5", "5/2") parsed exactly; floats are accepted with exact=false.
"""
import copy
import json
from dataclasses import dataclass, field
from typing import Any, Dict

from absl import logging

from negdesign.algebra import dp_core, metric, norphism_dp, poset
from negdesign.algebra.dp_core import DesignProblem, FVector, RCovector
from negdesign.algebra.metric import LowerBound, WeightedDigraph
from negdesign.algebra.norphism_dp import NorphismDP
from negdesign.constant import EntityKind, Strictness, get_values
from negdesign.errors import NegDesignError, ProblemFileError

RESOURCE_LIMIT_SCHEMA = 'resource_limit'


@dataclass
class ProblemFile:
    """Canonical definitions plus the validated entities built from them. Equality compares definitions"""
    definitions: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    entities: Dict[str, Dict[str, Any]] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for kind in get_values(EntityKind):
            self.definitions.setdefault(kind, {})
            self.entities.setdefault(kind, {})

    def get(self, kind, name):
        try:
            return self.entities[kind][name]
        except KeyError:
            raise ProblemFileError(f'Unknown {kind[:-1]} {name!r}', entity=name) from None

    def find(self, name):
        """Returns (kind, entity) for a name; names are looked up in resolution order"""
        for kind in get_values(EntityKind):
            if name in self.entities[kind]:
                return kind, self.entities[kind][name]
        raise ProblemFileError(f'Unknown entity {name!r}', entity=name)


def _sorted_unique(items, key):
    seen, result = set(), []
    for item in sorted(items, key=key):
        marker = json.dumps(item)
        if marker not in seen:
            seen.add(marker)
            result.append(item)
    return result


def _require_keys(definition, name, *keys):
    if not isinstance(definition, dict):
        raise ProblemFileError(f'Definition of {name!r} must be an object', entity=name)
    missing = [k for k in keys if k not in definition]
    if missing:
        raise ProblemFileError(f'{name!r} is missing {missing}', entity=name)


def _pairs(space_a, space_b, raw_pairs, name):
    pairs = []
    for pair in raw_pairs:
        if not isinstance(pair, list) or len(pair) != 2:
            raise ProblemFileError(f'{name!r}: true pair {pair!r} must be a two-element list', entity=name)
        pairs.append(pair)
    return _sorted_unique(pairs, key=lambda pq: (space_a.index(pq[0]), space_b.index(pq[1])))


def _parse_poset(name, definition):
    _require_keys(definition, name, 'elements')
    preorder = poset.from_hasse(definition['elements'], [tuple(c) for c in definition.get('covers', [])])
    covers = _sorted_unique([list(c) for c in definition.get('covers', [])], key=lambda ab: (preorder.index(ab[0]), preorder.index(ab[1])))
    return {'elements': list(definition['elements']), 'covers': covers}, preorder


def _parse_vector(problem, name, definition, vector_class):
    _require_keys(definition, name, 'space', 'members')
    space = problem.get(EntityKind.POSETS, definition['space'])
    vector = vector_class.generated_by(space, definition['members'])
    return {'space': definition['space'], 'members': vector.members()}, vector


def _parse_relation(problem, name, definition, relation_class):
    _require_keys(definition, name, 'dom', 'cod', 'true_pairs')
    dom = problem.get(EntityKind.POSETS, definition['dom'])
    cod = problem.get(EntityKind.POSETS, definition['cod'])
    pairs = _pairs(dom, cod, definition['true_pairs'], name)
    autoclose = bool(definition.get('autoclose', False))
    relation = relation_class.from_pairs(dom, cod, [tuple(pq) for pq in pairs], autoclose=autoclose)
    canonical = {'dom': definition['dom'], 'cod': definition['cod'], 'true_pairs': pairs}
    if autoclose:
        canonical['autoclose'] = True
    return canonical, relation


def _parse_dp(problem, name, definition):
    if isinstance(definition, dict) and 'identity' in definition:
        return {'identity': definition['identity']}, dp_core.identity(problem.get(EntityKind.POSETS, definition['identity']))
    return _parse_relation(problem, name, definition, DesignProblem)


def _parse_norphism(problem, name, definition):
    if isinstance(definition, dict) and 'parts' in definition:
        parts = definition['parts']
        if not parts:
            raise ProblemFileError(f'{name!r}: parts must not be empty', entity=name)
        result = None
        for part in parts:
            _require_keys(part, name, 'f', 'r')
            n = norphism_dp.performance_norphism(problem.get(EntityKind.VECTORS, part['f']), problem.get(EntityKind.COVECTORS, part['r']))
            result = n if result is None else norphism_dp.join(result, n)
        return {'parts': [{'f': p['f'], 'r': p['r']} for p in parts]}, result
    if isinstance(definition, dict) and 'schema' in definition:
        if definition['schema'] != RESOURCE_LIMIT_SCHEMA:
            raise ProblemFileError(f'{name!r}: unknown schema {definition["schema"]!r}', entity=name)
        _require_keys(definition, name, 'pools')
        pools = [problem.get(EntityKind.COVECTORS, pool) for pool in definition['pools']]
        return {'schema': RESOURCE_LIMIT_SCHEMA, 'pools': list(definition['pools'])}, norphism_dp.resource_limit_schema(pools)
    return _parse_relation(problem, name, definition, NorphismDP)


def _parse_graph(name, definition):
    _require_keys(definition, name, 'nodes', 'edges')
    exact = bool(definition.get('exact', True))
    edges = []
    for edge in definition['edges']:
        if not isinstance(edge, list) or len(edge) != 3:
            raise ProblemFileError(f'{name!r}: edge {edge!r} must be [src, dst, weight]', entity=name)
        edges.append((edge[0], edge[1], metric.to_number(edge[2], exact)))
    graph = WeightedDigraph(tuple(definition['nodes']), tuple(edges), exact=exact)
    canonical = {'nodes': list(graph.nodes), 'edges': [[e.source, e.target, metric.format_number(e.weight)] for e in graph.edges]}
    if not exact:
        canonical['exact'] = False
    return canonical, graph


def _parse_path(problem, name, definition):
    _require_keys(definition, name, 'graph', 'nodes')
    graph = problem.get(EntityKind.GRAPHS, definition['graph'])
    return {'graph': definition['graph'], 'nodes': list(definition['nodes'])}, metric.path_through(graph, definition['nodes'])


def _parse_bound(problem, name, definition):
    _require_keys(definition, name, 'graph', 'from', 'to', 'mu')
    graph = problem.get(EntityKind.GRAPHS, definition['graph'])
    for node in (definition['from'], definition['to']):
        if node not in graph.nodes:
            raise ProblemFileError(f'{name!r}: unknown node {node!r}', entity=name)
    strict = bool(definition.get('strict', True))
    mu = metric.to_number(definition['mu'], graph.exact)
    bound = LowerBound(definition['from'], definition['to'], mu, Strictness.STRICT if strict else Strictness.LITERAL)
    canonical = {'graph': definition['graph'], 'from': bound.source, 'to': bound.target, 'mu': metric.format_number(mu), 'strict': strict}
    return canonical, bound


def _parse_entity(problem, kind, name, definition):
    if kind == EntityKind.POSETS:
        return _parse_poset(name, definition)
    if kind == EntityKind.VECTORS:
        return _parse_vector(problem, name, definition, FVector)
    if kind == EntityKind.COVECTORS:
        return _parse_vector(problem, name, definition, RCovector)
    if kind == EntityKind.DPS:
        return _parse_dp(problem, name, definition)
    if kind == EntityKind.NORPHISMS:
        return _parse_norphism(problem, name, definition)
    if kind == EntityKind.GRAPHS:
        return _parse_graph(name, definition)
    if kind == EntityKind.PATHS:
        return _parse_path(problem, name, definition)
    return _parse_bound(problem, name, definition)


def build_problem(document: Dict[str, Any]) -> ProblemFile:
    """Resolves and validates a decoded problem document"""
    if not isinstance(document, dict):
        raise ProblemFileError('A problem file must be a JSON object')
    unknown = sorted(set(document) - set(get_values(EntityKind)))
    if unknown:
        raise ProblemFileError(f'Unknown top-level keys {unknown}')
    problem = ProblemFile()
    for kind in get_values(EntityKind):
        section = document.get(kind, {})
        if not isinstance(section, dict):
            raise ProblemFileError(f'{kind} must map names to definitions')
        for name in sorted(section):
            try:
                canonical, entity = _parse_entity(problem, kind, name, copy.deepcopy(section[name]))
            except ProblemFileError:
                raise
            except NegDesignError as e:
                axis = getattr(e, 'axis', None)
                detail = f' (violated: {axis})' if axis else ''
                raise ProblemFileError(f'{kind[:-1]} {name!r}: {e}{detail}', entity=name) from e
            except (TypeError, ValueError, AttributeError) as e:
                raise ProblemFileError(f'{kind[:-1]} {name!r}: malformed definition ({e})', entity=name) from e
            problem.definitions[kind][name] = canonical
            problem.entities[kind][name] = entity
    logging.info('Loaded problem with ' + ', '.join(f'{len(problem.entities[k])} {k}' for k in get_values(EntityKind)))
    return problem


def parse_problem_file(data) -> ProblemFile:
    """Parses bytes or text of a problem file into a validated model"""
    if isinstance(data, bytes):
        data = data.decode('utf-8')
    try:
        document = json.loads(data)
    except json.JSONDecodeError as e:
        raise ProblemFileError(f'syntax error: {e.msg}', line=e.lineno) from None
    return build_problem(document)


def serialize_problem_file(problem: ProblemFile) -> str:
    """Canonical text form: non-empty sections only, sorted keys, two-space indent, trailing newline"""
    document = {kind: section for kind, section in problem.definitions.items() if section}
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def load_problem_file(path) -> ProblemFile:
    """Reads and parses a problem file from disk"""
    logging.info(f'Loading problem file {path}')
    with open(path, 'rb') as fin:
        return parse_problem_file(fin.read())


def save_problem_file(path, problem: ProblemFile):
    """Writes the canonical form of a problem to disk"""
    logging.info(f'Saving problem file to {path}')
    with open(path, 'w', encoding='utf-8') as fout:
        fout.write(serialize_problem_file(problem))
