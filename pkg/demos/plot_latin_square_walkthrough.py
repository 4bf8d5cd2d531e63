"""
From a partial square of order 3 to a Latin square of order 9
=============================================================

Builds the order-9 square by a block product, then switches four
subsquares so that it contains a given partial square of order 3.
"""

from mdsembed import Subcube, embed_partial_latin, flatten, generalized_product, is_mds
from mdsembed.combinators import permute_coordinate, switch_subcode
from mdsembed.fixtures import C3_CELLS, L5, SWITCHES, a_code, c3_code, square_from_code, u_codes


def show(square):
    for row in square:
        print(" ".join(str(x) for x in row))
    print()


# The partial square has six filled cells and is not yet Latin.
print("partial square:", C3_CELLS)
print("is it already Latin?", bool(is_mds(c3_code(), 1)))

# Block product: each cell of the order-3 square A is replaced by one of
# three inner squares, chosen by the symbol in that cell.
L = flatten(generalized_product(a_code(), 2, u_codes()))
print("block product, a Latin square of order", L.order)
show(square_from_code(L))

# Each switch replaces a 3x3 subsquare sitting on three rows, three columns
# and three symbols by another Latin square on the same cells.
for s in SWITCHES:
    sub = Subcube((s["rows"], s["cols"], s["symbols"]))
    inside = sub.intersect(L)
    L = switch_subcode(L, inside, permute_coordinate(inside, s["coord"], s["perm"]), 1, sub)
    print(f"after forcing {s['target']}: still Latin = {bool(is_mds(L, 1))}")

final = square_from_code(L)
show(final)
print("matches the reference square:", final == L5)
print("contains every cell:", all(final[r][c] == x for (r, c), x in C3_CELLS.items()))

# The same result, found automatically: the embedding recurses on the
# rows of the partial square and records the injections it used.
cert = embed_partial_latin(c3_code())
print(cert.verify().summary())
show(cert.output.array.tolist())
