from dataclasses import dataclass
from typing import List

from smart_arg import LateInit

from negdesign.constant import Command, Defaults, Side, Suite, get_values

# Number of entity names each command takes. None means one or more
COMMAND_ARITY = {
    Command.COMPOSE: 2,
    Command.FEASIBLE: 3,
    Command.BAN_CHECK: 2,
    Command.BANNED_SET: 1,
    Command.DECOMPOSE: 1,
    Command.PROPAGATE: 2,
    Command.SCHEMA: None,
    Command.BOUND_PROPAGATE: 2,
    Command.DISTANCE: 3,
    Command.ASTAR: 3,
    Command.VERIFY: 0,
    Command.EXPORT_DOT: 1,
    Command.CANONICALIZE: 0,
}


def check_arity(command, entities):
    """Raises ValueError when the number of entity names does not fit the command"""
    if command not in COMMAND_ARITY:
        raise ValueError(f'Unknown command {command!r}')
    arity = COMMAND_ARITY[command]
    if arity is None and not entities:
        raise ValueError(f'{command} needs at least one entity name')
    if arity is not None and len(entities) != arity:
        raise ValueError(f'{command} needs {arity} entity names, got {len(entities)}: {entities}')


class Arg:
    """Helper class for cooperative multi-inheritance"""

    def _set_late_init_attr(self, attr, value):
        """Sets an attribute to value if it's LateInit"""
        if getattr(self, attr) is LateInit:
            setattr(self, attr, value)

    def __post_init__(self):
        pass


@dataclass
class ProblemArg(Arg):
    """Problem file related arguments"""
    problem: str = ''  # Problem file (JSON). Required by every command except verify
    cap: int = -1  # Design problem enumeration cap (max |P|*|Q| cells). -1 keeps the library default
    out_file: str = ''  # Write the output document to this file instead of standard output

    def __post_init__(self):
        super().__post_init__()
        assert self.cap == -1 or self.cap >= 0, 'cap must be -1 (default) or a non-negative integer'


@dataclass
class CommandArg(Arg):
    """Command related arguments"""
    command: str = ''  # Command to run
    __command = {'choices': get_values(Command)}
    entities: List[str] = LateInit  # Entity names the command operates on, e.g. f d r for feasible
    side: str = Side.PRE  # Attachment side for propagate and bound-propagate
    __side = {'choices': get_values(Side)}
    bounds: List[str] = LateInit  # Names of bounds guiding astar
    exit_status: bool = False  # Exit with 0/1 for true/false answers of Boolean queries

    def __post_init__(self):
        super().__post_init__()
        self._set_late_init_attr('entities', [])
        self._set_late_init_attr('bounds', [])
        assert self.command, 'command must be specified'
        try:
            check_arity(self.command, self.entities)
        except ValueError as e:
            raise AssertionError(str(e)) from None
        assert not self.bounds or self.command == Command.ASTAR, 'bounds are only used by astar'


@dataclass
class VerifyArg(Arg):
    """Verification suite related arguments"""
    suite: str = Suite.ALL  # Verification suite to run
    __suite = {'choices': get_values(Suite)}
    seed: int = Defaults.RANDOM_SEED  # Seed of the randomized checks and the graph corpus
    num_workers: int = 1  # Threads used by the equivariance checker

    def __post_init__(self):
        super().__post_init__()
        assert self.num_workers >= 1, 'num_workers must be positive'
