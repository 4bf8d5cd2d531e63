"""
Reed-Solomon check matrices and plane completion
================================================

Systematic check matrices over a prime field, their minor test, and
unique completion of an axis plane by a small linear solve.
"""

from mdsembed import AxisPlane, LinearMdsCode, build_check_matrix, is_mds, verify_mds_matrix
from mdsembed.linear_mds import subcode_restriction, subspace_span

H = build_check_matrix(5, 5, 2)
print("systematic check matrix over GF(5):")
print(H.array)
print(verify_mds_matrix(H).summary())

# Fix any three of five coordinates; the other two are determined.
L = LinearMdsCode(H)
plane = AxisPlane.from_mapping(5, {0: 1, 2: 4, 4: 0})
y = L.complete(plane)
print("completion of", plane.assignment, "->", y, "syndrome", L.syndrome(y).ravel())

# Listing all 125 codewords confirms the matrix view and the set view agree.
print(is_mds(L.explicit(), 2).summary())

# When d = p + 1, a column at infinity extends the construction.
H2 = build_check_matrix(2, 3, 2)
print("GF(2), length 3:", H2.rows, bool(verify_mds_matrix(H2)))

# Over the vector alphabet GF(2)^6 the same matrix acts row-wise; restricting
# to a subspace W gives an MDS subcode on a smaller cube.
V = LinearMdsCode(H2, n=6)
W = subspace_span([[1, 0, 0, 0, 1, 0], [0, 0, 1, 0, 1, 0]], 2, 6)
anchor = [[0, 0, 0, 0, 1, 0]] * 3
S = subcode_restriction(V, W, anchor)
print(f"subcode of size {S.cardinality}:")
for w in S.iter_words():
    print("  ", w)
