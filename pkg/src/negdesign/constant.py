"""Constants shared across negdesign"""


class Direction:
    """ Closure directions of subsets of a preorder """
    UPWARD = 'upward'
    DOWNWARD = 'downward'


class Side:
    """ Sides on which a design problem or path is attached during propagation """
    PRE = 'pre'
    POST = 'post'


class InexactSide:
    """ Sides of inexact composition in a nategory. LEFT is f • n, RIGHT is n ⟜ g """
    LEFT = 'left'
    RIGHT = 'right'


class Strictness:
    """ Threshold semantics of lower-bound norphisms """
    # Bans L(h) < mu. A sound bound never bans an existing path
    STRICT = 'strict'
    # Bans L(h) <= mu, i.e. (-L);(>= -mu) read verbatim
    LITERAL = 'literal'


class Suite:
    """ Verification suites of the `verify` command """
    AXIOMS = 'axioms'
    EQUIVARIANCE = 'equivariance'
    EXPANSIVENESS = 'expansiveness'
    SOUNDNESS = 'soundness'
    ALL = 'all'


class Command:
    """ Commands accepted by run_negdesign """
    COMPOSE = 'compose'
    FEASIBLE = 'feasible'
    BAN_CHECK = 'ban-check'
    BANNED_SET = 'banned-set'
    DECOMPOSE = 'decompose'
    PROPAGATE = 'propagate'
    SCHEMA = 'schema'
    BOUND_PROPAGATE = 'bound-propagate'
    DISTANCE = 'distance'
    ASTAR = 'astar'
    VERIFY = 'verify'
    EXPORT_DOT = 'export-dot'
    CANONICALIZE = 'canonicalize'


class EntityKind:
    """ Top-level keys of a problem file, in resolution order """
    POSETS = 'posets'
    VECTORS = 'vectors'
    COVECTORS = 'covectors'
    DPS = 'dps'
    NORPHISMS = 'norphisms'
    GRAPHS = 'graphs'
    PATHS = 'paths'
    BOUNDS = 'bounds'


class Defaults:
    """ Default caps and corpus sizes. Every enumerating operation takes an explicit override """
    POSET_CAP = 6  # Max number of elements for closed-set enumeration
    DP_CELL_CAP = 16  # Max |P|*|Q| for design problem enumeration
    PATH_LENGTH_CAP = 5  # Max number of edges of an enumerated path
    MAX_PATHS = 100000  # Max number of paths materialized for one hom-set
    EQUIVARIANCE_PATH_CAP = 3  # Path length cap of the truncated path category checked by the equivariance suite
    FLOAT_TOLERANCE = 1e-9  # Comparison tolerance for graphs imported in float mode

    RANDOM_SEED = 4321
    RANDOM_DP_TRIALS = 200
    RANDOM_EXPANSIVENESS_TRIALS = 1000
    RANDOM_SIZES = (3, 4)

    CORPUS_GRAPHS = 50
    CORPUS_MAX_NODES = 12
    CORPUS_MIN_WEIGHT = 1
    CORPUS_MAX_WEIGHT = 9


def get_values(constant_class):
    """ Returns the public constant values defined in a constant class, in definition order"""
    constant_to_name_tuples = filter(lambda x: not x[0].startswith(('_', '__')), vars(constant_class).items())
    return [t[1] for t in constant_to_name_tuples]
