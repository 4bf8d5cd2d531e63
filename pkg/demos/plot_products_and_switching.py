"""
Products, extra dimensions and switching
========================================

Combining Latin squares of orders 2 and 3 into one of order 6, adding a
coordinate to a Latin square, and replacing a subsquare at random.
"""

import random

from mdsembed import ExplicitCode, Subcube, extend_dimension, flatten, is_mds, mcneish_product, retract, switch_subcode
from mdsembed.embed_latin import modular_sum_code
from mdsembed.fixtures import square_code, square_from_code

two = modular_sum_code(2, 3)
three = modular_sum_code(3, 3)
six = flatten(mcneish_product(two, three))
print("order-6 square from orders 2 and 3:")
for row in square_from_code(six):
    print(" ".join(map(str, row)))
print(is_mds(six, 1).summary())

# A Latin square becomes a Latin cube; each layer is a shifted copy.
cube = extend_dimension(three)
print("\ncube words:", len(cube), "| Latin:", bool(is_mds(cube, 1)))
for a in range(3):
    layer = sorted(retract(cube, 3, a).words)
    print(f"layer {a}:", layer)

# The 3x3 blocks of the order-6 square are subsquares; swap one for a
# different Latin square on the same rows, columns and symbols.
rng = random.Random(3)
sub = Subcube(((0, 1, 2), (3, 4, 5), tuple(sorted({w[2] for w in six.words if w[0] < 3 and w[1] >= 3}))))
old = sub.intersect(six)
symbols = list(sub.sets[2])
rng.shuffle(symbols)
new = ExplicitCode(sub.sets, frozenset((r, c, symbols[(r + c) % 3]) for r in sub.sets[0] for c in sub.sets[1]))
switched = switch_subcode(six, old, new, 1, sub)
print("\nafter switching the top-right block:")
for row in square_from_code(switched):
    print(" ".join(map(str, row)))
print("still Latin:", bool(is_mds(switched, 1)))
