"""The order-3 to order-9 Latin square worked example, as fixed tables.

Squares are row-major lists; a square ``L`` is the code
``{(r, c, L[r][c])}``.  ``U_A``, ``U_B`` and ``U_C`` are listed with their
display symbols (blocks 0-2, 3-5, 6-8); ``inner_square`` strips the block
offset.  ``SWITCHES`` records the four switchings taking ``L1`` to ``L5``:
the subcube, the coordinate that is permuted inside it, and the permutation.
"""

from __future__ import annotations

from .core_codes import ExplicitCode

A = [["a", "b", "c"], ["b", "c", "a"], ["c", "a", "b"]]

U_A = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
U_B = [[4, 3, 5], [3, 5, 4], [5, 4, 3]]
U_C = [[8, 7, 6], [6, 8, 7], [7, 6, 8]]

# partial square of order 3: (row, col) -> symbol
C3_CELLS = {(0, 0): 0, (0, 1): 3, (0, 2): 6, (1, 0): 3, (1, 2): 0, (2, 1): 6}

L1 = [
    [0, 1, 2, 4, 3, 5, 8, 7, 6],
    [1, 2, 0, 3, 5, 4, 6, 8, 7],
    [2, 0, 1, 5, 4, 3, 7, 6, 8],
    [4, 3, 5, 8, 7, 6, 0, 1, 2],
    [3, 5, 4, 6, 8, 7, 1, 2, 0],
    [5, 4, 3, 7, 6, 8, 2, 0, 1],
    [8, 7, 6, 0, 1, 2, 4, 3, 5],
    [6, 8, 7, 1, 2, 0, 3, 5, 4],
    [7, 6, 8, 2, 0, 1, 5, 4, 3],
]
L2 = [
    [0, 3, 2, 4, 7, 5, 8, 1, 6],
    [1, 2, 0, 3, 5, 4, 6, 8, 7],
    [2, 0, 1, 5, 4, 3, 7, 6, 8],
    [4, 7, 5, 8, 1, 6, 0, 3, 2],
    [3, 5, 4, 6, 8, 7, 1, 2, 0],
    [5, 4, 3, 7, 6, 8, 2, 0, 1],
    [8, 1, 6, 0, 3, 2, 4, 7, 5],
    [6, 8, 7, 1, 2, 0, 3, 5, 4],
    [7, 6, 8, 2, 0, 1, 5, 4, 3],
]
L3 = [
    [0, 3, 2, 4, 7, 5, 8, 1, 6],
    [3, 2, 0, 6, 5, 4, 1, 8, 7],
    [2, 0, 1, 5, 4, 3, 7, 6, 8],
    [4, 7, 5, 8, 1, 6, 0, 3, 2],
    [1, 5, 4, 3, 8, 7, 6, 2, 0],
    [5, 4, 3, 7, 6, 8, 2, 0, 1],
    [8, 1, 6, 0, 3, 2, 4, 7, 5],
    [6, 8, 7, 1, 2, 0, 3, 5, 4],
    [7, 6, 8, 2, 0, 1, 5, 4, 3],
]
L4 = [
    [0, 3, 6, 4, 7, 2, 8, 1, 5],
    [3, 2, 0, 6, 5, 4, 1, 8, 7],
    [2, 0, 1, 5, 4, 3, 7, 6, 8],
    [4, 7, 2, 8, 1, 5, 0, 3, 6],
    [1, 5, 4, 3, 8, 7, 6, 2, 0],
    [5, 4, 3, 7, 6, 8, 2, 0, 1],
    [8, 1, 5, 0, 3, 6, 4, 7, 2],
    [6, 8, 7, 1, 2, 0, 3, 5, 4],
    [7, 6, 8, 2, 0, 1, 5, 4, 3],
]
L5 = [
    [0, 3, 6, 4, 7, 2, 8, 1, 5],
    [3, 2, 0, 6, 5, 4, 1, 8, 7],
    [2, 6, 1, 5, 0, 3, 7, 4, 8],
    [4, 7, 2, 8, 1, 5, 0, 3, 6],
    [1, 5, 4, 3, 8, 7, 6, 2, 0],
    [5, 4, 3, 7, 6, 8, 2, 0, 1],
    [8, 1, 5, 0, 3, 6, 4, 7, 2],
    [6, 8, 7, 1, 2, 0, 3, 5, 4],
    [7, 0, 8, 2, 4, 1, 5, 6, 3],
]

SQUARES = {"L1": L1, "L2": L2, "L3": L3, "L4": L4, "L5": L5}

# coord 0 permutes rows, coord 2 permutes symbols
SWITCHES = [
    {"rows": (0, 3, 6), "cols": (1, 4, 7), "symbols": (1, 3, 7), "coord": 2, "perm": {1: 3, 3: 7, 7: 1}, "target": (0, 1, 3)},
    {"rows": (1, 4, 7), "cols": (0, 3, 6), "symbols": (1, 3, 6), "coord": 0, "perm": {1: 4, 4: 1}, "target": (1, 0, 3)},
    {"rows": (0, 3, 6), "cols": (2, 5, 8), "symbols": (2, 5, 6), "coord": 2, "perm": {2: 6, 6: 5, 5: 2}, "target": (0, 2, 6)},
    {"rows": (2, 5, 8), "cols": (1, 4, 7), "symbols": (0, 4, 6), "coord": 0, "perm": {2: 8, 8: 2}, "target": (2, 1, 6)},
]


def square_code(square, alphabets=None) -> ExplicitCode:
    """A square as the triples ``(row, col, entry)``."""
    n = len(square)
    if alphabets is None:
        symbols = sorted({x for row in square for x in row}, key=str)
        alphabets = (tuple(range(n)), tuple(range(len(square[0]))), tuple(symbols))
    words = frozenset((r, c, x) for r, row in enumerate(square) for c, x in enumerate(row))
    return ExplicitCode(alphabets, words)


def square_from_code(C: ExplicitCode) -> list[list]:
    rows, cols = len(C.alphabets[0]), len(C.alphabets[1])
    out: list[list] = [[None] * cols for _ in range(rows)]
    for r, c, x in C.words:
        out[C.index_of(0, r)][C.index_of(1, c)] = x
    return out


def inner_square(U) -> list[list[int]]:
    base = min(min(row) for row in U)
    return [[x - base for x in row] for row in U]


def c3_code() -> ExplicitCode:
    return ExplicitCode(
        ((0, 1, 2), (0, 1, 2), (0, 3, 6)),
        frozenset((r, c, x) for (r, c), x in C3_CELLS.items()),
    )


def a_code() -> ExplicitCode:
    return square_code(A, ((0, 1, 2), (0, 1, 2), ("a", "b", "c")))


def u_codes() -> dict[str, ExplicitCode]:
    """Inner squares keyed by the symbol of ``A`` they sit under."""
    q = tuple(range(3))
    return {k: square_code(inner_square(U), (q, q, q)) for k, U in zip("abc", (U_A, U_B, U_C))}
