"""Random instance generators and fixtures shared by the test modules."""

from pathlib import Path

import numpy as np

from smla import SuperDiagonalMatrix

# Fixed matrices behind the golden tests.
GRID_6X6 = np.array([[3, 0, 1, 1, 2, 0],
                     [1, 0, 0, 3, 5, 2],
                     [5, -1, 6, 7, 8, 4],
                     [0, 9, 1, 2, 0, -1],
                     [2, 5, 2, 3, 4, 6],
                     [1, 6, 1, 2, 3, 9]])
SYM_CUT_4X4 = np.array([[2, 3, 4, 1], [5, 6, 9, 2], [0, 6, 1, 9], [5, 1, 1, 5]])
SYMMETRIC_4X4 = np.array([[4, 3, 2, 7], [3, 6, 1, 4], [2, 1, 5, 2], [7, 4, 2, 7]])
GRID_5X5 = np.array([[3, 6, 0, 4, 5],
                      [2, 1, 6, 3, 0],
                      [1, 1, 1, 2, 1],
                      [0, 1, 0, 1, 0],
                      [2, 0, 1, 2, 1]])
TALL_7X5 = np.array([[2, 1, 3, 5, 6],
                      [0, 2, 0, 1, 1],
                      [1, 1, 1, 0, 2],
                      [2, 2, 0, 1, 1],
                      [5, 6, 1, 0, 1],
                      [2, 0, 0, 0, 4],
                      [1, 0, 1, 1, 5]])
CUT_A = np.array([[3, 0, 1], [1, 2, 7], [4, 3, 6]])
CUT_B = np.array([[2, 1, 3], [5, 4, 1], [2, 0, 2]])
ROTATIONS = [np.array([[0, -1], [1, 0]]), np.array([[0, -1], [1, 0]]),
             np.array([[0, 1], [-1, 0]])]
RECT_BLOCKS = [np.array([[3, 1, 0, 2], [1, 0, 5, 0], [0, 1, 0, 1]]),
            np.array([[3, 4, 5], [1, 3, 1]]),
            np.array([[8, 1], [6, -1], [2, 5]]),
            np.array([[1, 0, 1, 2, 0], [2, 0, 2, 1, 1], [3, 5, 1, 0, 0], [4, 1, 0, 3, 6]])]
TWO_STATE_CHAIN = [np.array([[0.19, 0.81], [0.92, 0.08]]),
               np.array([[0.31, 0.69], [0.23, 0.77]]),
               np.array([[0.09, 0.91], [0.87, 0.13]]),
               np.array([[0.18, 0.82], [0.92, 0.08]]),
               np.array([[0.73, 0.27], [0.50, 0.50]])]


def random_sizes(rng, lo=1, hi=5, nmin=2, nmax=4):
    return [int(n) for n in rng.integers(lo, hi + 1, size=int(rng.integers(nmin, nmax + 1)))]


def random_square(rng, sizes=None, low=-1.0, high=1.0):
    sizes = random_sizes(rng) if sizes is None else sizes
    return SuperDiagonalMatrix([rng.uniform(low, high, (n, n)) for n in sizes])


def random_integer_square(rng, sizes=None, bound=3):
    sizes = random_sizes(rng) if sizes is None else sizes
    return SuperDiagonalMatrix([rng.integers(-bound, bound + 1, (n, n)) for n in sizes],
                               exact=True)


def random_rect(rng, nblocks=None, lo=1, hi=5):
    nblocks = int(rng.integers(2, 5)) if nblocks is None else nblocks
    return SuperDiagonalMatrix([rng.uniform(-1, 1, (int(rng.integers(lo, hi + 1)),
                                                    int(rng.integers(lo, hi + 1))))
                                for _ in range(nblocks)])


def low_rank(rng, m, n, r):
    """``m x n`` integer matrix of rank exactly ``r`` (almost surely for floats)."""
    if r == 0:
        return np.zeros((m, n), dtype=int)
    while True:
        a = rng.integers(-3, 4, (m, r)) @ rng.integers(-3, 4, (r, n))
        if np.linalg.matrix_rank(a) == r:
            return a


def well_conditioned(rng, n, shift=3.0):
    return rng.normal(size=(n, n)) + shift * np.eye(n)


def random_orthogonal(rng, n):
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


def random_stochastic(rng, n, rows=True):
    m = rng.uniform(0, 1, (n, n))
    return m / m.sum(axis=1, keepdims=True) if rows else m / m.sum(axis=0, keepdims=True)


DATA = Path(__file__).parent / "data"

# One command line per CLI verb/op pair, each run against a fixture file.
GOLDEN_COMMANDS = [
    ["matrix", "add", "row_x.json", "row_y.json"],
    ["matrix", "transpose", "rotations.json"],
    ["matrix", "flatten", "rotations.json"],
    ["matrix", "det", "identity_3blocks.json"],
    ["matrix", "det", "--rational", "rotations.json"],
    ["spec", "charpoly", "--rational", "rotations.json"],
    ["spec", "charpoly", "rotations.json"],
    ["spec", "minpoly", "rotations.json"],
    ["spec", "eigen", "rotations.json"],
    ["spec", "eigen", "--real", "rotations.json"],
    ["spec", "diag", "identity_3blocks.json"],
    ["spec", "cayley", "--rational", "rotations.json"],
    ["metric", "gram-schmidt", "vectors.json"],
    ["metric", "project", "vectors.json", "beta.json"],
    ["metric", "form-report", "hyperbolic_form.json"],
    ["metric", "form-report", "skew_form.json"],
    ["metric", "signature", "hyperbolic_form.json"],
    ["markov", "step", "--steps", "3", "two_state_chain.json"],
    ["markov", "limit", "two_state_chain.json"],
    ["leontief", "closed", "leontief_closed.json"],
    ["leontief", "open", "leontief_open.json"],
]


def golden_argv(cmd, json_flag=False):
    argv = [str(DATA / a) if a.endswith(".json") else a for a in cmd]
    return argv + (["--json"] if json_flag else [])
