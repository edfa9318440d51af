"""
Command line entry point. It parses arguments, loads a problem file, runs one command and prints one JSON document.

Example:

    python run_negdesign.py --problem golden_chain2.json --command feasible --entities f d r --exit_status True
"""
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence

from absl import logging
from smart_arg import arg_suite

from negdesign.algebra import dp_core, metric, norphism_dp
from negdesign.args import CommandArg, ProblemArg, VerifyArg, check_arity
from negdesign.constant import Command, Defaults, EntityKind, Side, Suite
from negdesign.errors import NegDesignError, ObjectMismatchError
from negdesign.utils import dot_utils, matrix_utils, parsing_utils, verify_utils
from negdesign.utils.parsing_utils import ProblemFile

# Exit codes
EXIT_OK = 0
EXIT_FALSE = 1
EXIT_ERROR = 2

BOOLEAN_COMMANDS = (Command.FEASIBLE, Command.BAN_CHECK, Command.VERIFY)
SCHEMA_NAMES = ('resource-limit', parsing_utils.RESOURCE_LIMIT_SCHEMA)


@arg_suite
@dataclass
class NegDesignArg(ProblemArg, CommandArg, VerifyArg):
    """
    negdesign: negative information in co-design.

    Builds, combines and propagates bans on monotone design problems, checks the nategory laws on finite instances and
    propagates lower bounds on weighted digraphs against a shortest-path oracle.
    """

    def __post_init__(self):
        """ Post initializes fields

        This method is automatically called by smart-arg once the argument is created by parsing cli or the constructor
        """
        logging.info(f"Start __post_init__ the argument now: {self}")
        super().__post_init__()
        assert self.problem or self.command == Command.VERIFY, f'problem must be specified for {self.command}'


@dataclass
class CommandResult:
    """The single output document of one invocation"""
    command: str
    result: Any
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def answer(self) -> Optional[bool]:
        """The Boolean answer of Boolean queries, None otherwise"""
        if self.command == Command.VERIFY:
            return self.result['passed']
        if self.command in BOOLEAN_COMMANDS:
            return self.result
        return None

    def to_json(self):
        document = {'command': self.command, 'result': self.result, 'diagnostics': self.diagnostics}
        return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def _lookup(problem: ProblemFile, kind: str, name: str):
    """Fetches a named entity of the given kind, telling type mismatches apart from unknown names"""
    if name in problem.entities[kind]:
        return problem.entities[kind][name]
    found_kind, _ = problem.find(name)
    raise ObjectMismatchError(f'{name!r} is one of the {found_kind}, expected one of the {kind}')


def _same_graph(problem: ProblemFile, graph_name: str, kind: str, names: Sequence[str]):
    """Paths and bounds only index into the graph they were defined on"""
    for name in names:
        defined_on = problem.definitions[kind][name]['graph']
        if defined_on != graph_name:
            raise ObjectMismatchError(f'{kind[:-1]} {name!r} is defined on graph {defined_on!r}, expected {graph_name!r}')


def _relation_payload(relation):
    return {
        'dom': list(relation.dom.elements),
        'cod': list(relation.cod.elements),
        'matrix': matrix_utils.to_int_lists(relation.rel),
        'true_pairs': [list(pair) for pair in relation.true_pairs()],
    }


def _bound_payload(bound):
    return {'from': bound.source, 'to': bound.target, 'mu': metric.format_number(bound.mu), 'strictness': bound.strictness}


def _search_payload(graph, result):
    path = None if result.path is None else {'edges': list(result.path.edges),
                                             'nodes': [result.path.source] + [graph.edges[e].target for e in result.path.edges]}
    return {'distance': metric.format_number(result.distance) if result.distance is not None else None,
            'expansions': result.expansions, 'path': path}


def run_command(problem: Optional[ProblemFile], command: str, entities: Sequence[str] = (), side: str = Side.PRE,
                bounds: Sequence[str] = (), suite: str = Suite.ALL, cap: Optional[int] = None, seed: int = Defaults.RANDOM_SEED,
                num_workers: int = 1) -> CommandResult:
    """Runs one command against a loaded problem. Every payload is the return value of the matching library call"""
    entities = list(entities)
    if command == Command.SCHEMA and entities and entities[0] in SCHEMA_NAMES:
        entities = entities[1:]
    check_arity(command, entities)
    if problem is None and command != Command.VERIFY:
        raise ValueError(f'{command} needs a problem file')
    logging.info(f'Running {command} on {entities}')

    if command == Command.COMPOSE:
        d, e = (_lookup(problem, EntityKind.DPS, name) for name in entities)
        return CommandResult(command, _relation_payload(dp_core.compose(d, e)))

    if command == Command.FEASIBLE:
        f = _lookup(problem, EntityKind.VECTORS, entities[0])
        d = _lookup(problem, EntityKind.DPS, entities[1])
        r = _lookup(problem, EntityKind.COVECTORS, entities[2])
        return CommandResult(command, dp_core.feasible(f, d, r))

    if command == Command.BAN_CHECK:
        n = _lookup(problem, EntityKind.NORPHISMS, entities[0])
        m = _lookup(problem, EntityKind.DPS, entities[1])
        return CommandResult(command, norphism_dp.bans(n, m))

    if command == Command.BANNED_SET:
        n = _lookup(problem, EntityKind.NORPHISMS, entities[0])
        banned = norphism_dp.banned_set(n, cap=cap)
        return CommandResult(command, [matrix_utils.to_int_lists(m.rel) for m in banned], {'banned': len(banned)})

    if command == Command.DECOMPOSE:
        n = _lookup(problem, EntityKind.NORPHISMS, entities[0])
        generators = norphism_dp.decompose(n)
        recomposed = norphism_dp.recompose(n.dom, n.cod, generators)
        return CommandResult(command, [{'f': f.members(), 'r': r.members()} for f, r in generators],
                             {'generators': len(generators), 'recomposes': recomposed == n})

    if command == Command.PROPAGATE:
        n = _lookup(problem, EntityKind.NORPHISMS, entities[0])
        attach = _lookup(problem, EntityKind.DPS, entities[1])
        return CommandResult(command, _relation_payload(norphism_dp.propagate(n, attach, side)), {'side': side})

    if command == Command.SCHEMA:
        pools = [_lookup(problem, EntityKind.COVECTORS, name) for name in entities]
        return CommandResult(command, _relation_payload(norphism_dp.resource_limit_schema(pools)), {'pools': entities})

    if command == Command.BOUND_PROPAGATE:
        bound = _lookup(problem, EntityKind.BOUNDS, entities[0])
        attach = _lookup(problem, EntityKind.PATHS, entities[1])
        graph_name = problem.definitions[EntityKind.BOUNDS][entities[0]]['graph']
        _same_graph(problem, graph_name, EntityKind.PATHS, entities[1:])
        graph = problem.entities[EntityKind.GRAPHS][graph_name]
        propagated = metric.propagate_bound(bound, attach, side, metric.PathSumLength(graph))
        return CommandResult(command, _bound_payload(propagated), {'side': side, 'sound': metric.is_sound(graph, propagated)})

    if command == Command.DISTANCE:
        graph = _lookup(problem, EntityKind.GRAPHS, entities[0])
        distance = metric.shortest_path_oracle(graph, entities[1], entities[2])
        path = metric.shortest_path(graph, entities[1], entities[2])
        return CommandResult(command, {'distance': None if distance is None else metric.format_number(distance),
                                       'edges': None if path is None else list(path.edges)})

    if command == Command.ASTAR:
        graph = _lookup(problem, EntityKind.GRAPHS, entities[0])
        guides = [_lookup(problem, EntityKind.BOUNDS, name) for name in bounds]
        _same_graph(problem, entities[0], EntityKind.BOUNDS, bounds)
        result = metric.astar_with_bounds(graph, entities[1], entities[2], guides)
        return CommandResult(command, _search_payload(graph, result), {'bounds': list(bounds)})

    if command == Command.VERIFY:
        report = verify_utils.run_suite(suite, problem, cap=cap, seed=seed, num_workers=num_workers)
        return CommandResult(command, report.to_dict(), {'suite': suite, 'seed': seed})

    if command == Command.EXPORT_DOT:
        kind, entity = problem.find(entities[0])
        return CommandResult(command, dot_utils.export_dot(entity), {'kind': kind})

    if command == Command.CANONICALIZE:
        return CommandResult(command, json.loads(parsing_utils.serialize_problem_file(problem)))

    raise ValueError(f'Unknown command {command!r}')


def main(argv) -> int:
    """ Runs one command and returns the exit code

    :param argv: command line, program name first
    """
    logging.set_verbosity(logging.INFO)
    try:
        argument = NegDesignArg.__from_argv__(argv[1:], error_on_unknown=False)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ERROR
    except AssertionError as e:
        logging.error(f'Invalid arguments: {e}')
        return EXIT_ERROR
    return run_negdesign(argument)


def run_negdesign(argument) -> int:
    """ Loads the problem, dispatches the command and writes the output document"""
    logging.info(f"Args:\n {argument}")
    try:
        problem = parsing_utils.load_problem_file(argument.problem) if argument.problem else None
        result = run_command(problem, argument.command, argument.entities, side=argument.side, bounds=argument.bounds,
                             suite=argument.suite, cap=None if argument.cap < 0 else argument.cap, seed=argument.seed,
                             num_workers=argument.num_workers)
    except (NegDesignError, ValueError, TypeError, OSError) as e:
        logging.error(f'{type(e).__name__}: {e}')
        return EXIT_ERROR

    document = result.to_json()
    if argument.out_file:
        logging.info(f'Writing result to {argument.out_file}')
        with open(argument.out_file, 'w', encoding='utf-8') as fout:
            fout.write(document)
    else:
        sys.stdout.write(document)

    if argument.exit_status and result.answer is not None:
        return EXIT_OK if result.answer else EXIT_FALSE
    return EXIT_OK


def console_main():
    sys.exit(main(sys.argv))


if __name__ == '__main__':
    console_main()
