"""
Boolean semiring helpers. Addition is replaced by ∨ and multiplication by ∧
"""
import numpy as np


def as_bool_array(value, ndim=None):
    """Converts nested lists/arrays of 0/1 or booleans to a fresh boolean array"""
    array = np.array(value, dtype=bool)
    if ndim is not None and array.ndim != ndim:
        raise ValueError(f'Expected a {ndim}-d boolean array, got shape {array.shape}')
    return array


def frozen(array):
    """Returns a read-only boolean copy of array"""
    array = np.array(array, dtype=bool)
    array.flags.writeable = False
    return array


def bool_matmul(a, b):
    """Relational composition: out[i][k] = ⋁_j a[i][j] ∧ b[j][k]. Works on stacks of matrices too"""
    return np.matmul(a.astype(np.int64), b.astype(np.int64)) > 0


def bool_outer(u, v):
    """Outer ∧-product of two boolean vectors"""
    return np.logical_and.outer(u, v)


def any_and(*arrays):
    """⋁ over all cells of the pointwise ∧ of equally shaped arrays"""
    return bool(np.logical_and.reduce(arrays).any())


def boolean_grid(num_cells):
    """Returns every boolean vector of length num_cells as rows of a (2**num_cells, num_cells) array

    Row k is the binary expansion of k, least significant bit in cell 0
    """
    codes = np.arange(2 ** num_cells, dtype=np.int64)
    return ((codes[:, None] >> np.arange(num_cells, dtype=np.int64)) & 1).astype(bool)


def transitive_closure(relation):
    """Reflexive-transitive closure of a square boolean matrix (Warshall)"""
    closure = np.array(relation, dtype=bool) | np.eye(len(relation), dtype=bool)
    for k in range(len(closure)):
        closure |= closure[:, k:k + 1] & closure[k:k + 1, :]
    return closure


def to_int_lists(array):
    """Boolean array to nested lists of 0/1 for structured output"""
    return array.astype(int).tolist()
