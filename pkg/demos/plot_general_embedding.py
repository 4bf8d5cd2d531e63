"""
Embedding a code of distance 3 into an MDS code
================================================

The two words 000 and 111 form a code of length 3 and distance 3 over
two symbols.  Every coordinate symbol becomes a unit vector of GF(2)^6,
the words become points of a linear MDS code over that vector
alphabet, and small affine subcodes are swapped so that those points
are codewords.  The result has 2^6 = 64 symbols and is small enough to
enumerate.
"""

from mdsembed import AxisPlane, ExplicitCode, build_patched_code, is_mds, oracle_complete_plane, oracle_contains
from mdsembed.embed_general import enumerate_patched, verify_patched
from mdsembed.fixtures import c3_code

C = ExplicitCode.uniform(2, 3, [(0, 0, 0), (1, 1, 1)])
P = build_patched_code(C, t=2)
print(f"field GF({P.p}), vectors of length {P.n}, alphabet size {P.q_prime}")
print("check matrix:\n", P.base.A)

# Each word gets a patch: its image w_bar, the subspace W spanned by A w_bar,
# and the codeword u whose subcode u + M|W is removed.
for pt in P.patches:
    print("word", pt.source_word)
    print("  image rows:", pt.w_bar.tolist())
    print("  W basis:   ", pt.W.basis.tolist())
    print("  removed anchor u:", pt.u.tolist())

# Membership and plane completion never enumerate the code.
e5 = (0, 0, 0, 0, 1, 0)
print("image of 000 is a codeword:", oracle_contains(P, P.patches[0].w_bar))
print("u is not:", oracle_contains(P, P.patches[0].u))
print("the line x3 = e5 meets the code at", oracle_complete_plane(P, AxisPlane.from_mapping(3, {2: e5})))

# At this size the whole code can be listed and checked plane by plane.
E = enumerate_patched(P)
rep = is_mds(E, 2)
print(rep.summary())
print(verify_patched(P, C, "exhaustive").summary())

# A larger input can only be sampled: the alphabet below has 3^9 symbols.
P3 = build_patched_code(c3_code(), t=1)
print(verify_patched(P3, c3_code(), "sample", budget=300, seed=1).summary())
