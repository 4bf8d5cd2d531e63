"""Exact linear algebra over GF(p) and linear MDS codes.

Matrices are numpy ``int64`` arrays holding residues in ``[0, p)``.  The
primes involved are tiny, so products never overflow.

A linear code is given by a systematic check matrix ``A = (I | A')``.  The
same matrix defines a code over the scalar alphabet GF(p) and, applied
column-wise, a code over the vector alphabet ``V = GF(p)^n`` whose words
are ``d x n`` matrices ``Y`` with ``A Y = 0``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .core_codes import AxisPlane, ExplicitCode

#: Row combinations of a check matrix are enumerated exhaustively up to this count.
DUAL_WEIGHT_EXHAUSTIVE_LIMIT = 10**5
#: Subcodes are enumerated only up to this many words.
ENUMERATION_LIMIT = 10**5

VectorSymbol = tuple


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    for k in range(2, math.isqrt(m) + 1):
        if m % k == 0:
            return False
    return True


def smallest_prime_geq(m: int) -> int:
    p = max(m, 2)
    while not is_prime(p):
        p += 1
    return p


def as_mod(M, p: int) -> np.ndarray:
    return np.asarray(M, dtype=np.int64) % p


def rref(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod ``p`` and the pivot columns."""
    R = as_mod(M, p).copy()
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, p)) % p
        col = R[:, c].copy()
        col[r] = 0
        R = (R - np.outer(col, R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def inverse(M, p: int) -> np.ndarray:
    M = as_mod(M, p)
    k = M.shape[0]
    if M.shape != (k, k):
        raise ValueError("inverse of a non-square matrix")
    R, piv = rref(np.hstack([M, np.eye(k, dtype=np.int64)]), p)
    if piv[:k] != list(range(k)):
        raise ZeroDivisionError("matrix is singular mod p")
    return R[:, k:]


def solve(A, b, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``A x = b`` mod ``p``, or ``None`` if inconsistent.

    ``b`` may be a vector or a matrix of right-hand sides.
    """
    A = as_mod(A, p)
    b = as_mod(b, p)
    vec = b.ndim == 1
    B = b.reshape(-1, 1) if vec else b
    rows, cols = A.shape
    R, piv = rref(np.hstack([A, B]), p)
    if any(c >= cols for c in piv):
        return None
    x = np.zeros((cols, B.shape[1]), dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = R[r, cols:]
    return x[:, 0] if vec else x


def nullspace(M, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : M x = 0}``."""
    M = as_mod(M, p)
    cols = M.shape[1]
    R, piv = rref(M, p)
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, c in enumerate(piv):
            basis[k, c] = (-R[r, f]) % p
    return basis


@dataclass(frozen=True)
class CheckMatrix:
    """A ``t x d`` check matrix over GF(p)."""

    p: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        rows = tuple(tuple(int(x) % self.p for x in r) for r in self.rows)
        if not rows or len({len(r) for r in rows}) != 1:
            raise ValueError("check matrix rows must be nonempty and of equal length")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_array(cls, p: int, A) -> "CheckMatrix":
        return cls(p, tuple(map(tuple, np.asarray(A).tolist())))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    @property
    def t(self) -> int:
        return len(self.rows)

    @property
    def d(self) -> int:
        return len(self.rows[0])

    @property
    def systematic(self) -> bool:
        return bool(np.array_equal(self.array[:, : self.t], np.eye(self.t, dtype=np.int64)))


def build_check_matrix(p: int, d: int, t: int) -> CheckMatrix:
    """Systematic check matrix of a linear MDS code of length ``d`` and distance ``t + 1``.

    ``t = 1`` gives the all-ones parity row for any ``d``.  For ``t >= 2`` the
    rows are ``alpha_j ** i`` on the points ``alpha_j = 0, 1, ..., d - 1``;
    when ``d = p + 1`` the last column is the point at infinity
    ``(0, ..., 0, 1)``.  The result is reduced to the form ``(I | A')``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 1 <= t < d:
        raise ValueError(f"need 1 <= t < d, got t={t}, d={d}")
    if t == 1:
        return CheckMatrix(p, (tuple([1] * d),))
    if d > p + 1:
        raise ValueError(f"no Reed-Solomon check matrix of length {d} over GF({p}) with t={t}")
    points = min(d, p)
    H = np.zeros((t, d), dtype=np.int64)
    for j in range(points):
        for i in range(t):
            H[i, j] = pow(j, i, p)
    if d == p + 1:
        H[t - 1, d - 1] = 1
    A = (inverse(H[:, :t], p) @ H) % p
    return CheckMatrix.from_array(p, A)


@dataclass
class MatrixReport:
    ok: bool
    p: int
    t: int
    d: int
    minors_checked: int
    bad_minor: tuple[int, ...] | None
    dual_bound: int
    dual_min_weight: int | None
    dual_exhaustive: bool
    combos_checked: int
    dual_witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        head = f"check matrix {self.t}x{self.d} over GF({self.p}): {'PASS' if self.ok else 'FAIL'}"
        minors = f"{self.minors_checked} minors of order {self.t}"
        if self.bad_minor is not None:
            minors += f", singular on columns {list(self.bad_minor)}"
        mode = "exhaustive" if self.dual_exhaustive else "sampled"
        dual = (
            f"row combinations ({mode}, {self.combos_checked}): min weight {self.dual_min_weight}"
            f" vs bound {self.dual_bound}"
        )
        return f"{head}; {minors}; {dual}"


def _nonzero_combos(p: int, t: int, samples: int, rng: random.Random) -> tuple[np.ndarray, bool]:
    total = p**t - 1
    if total <= DUAL_WEIGHT_EXHAUSTIVE_LIMIT:
        combos = np.array(list(itertools.product(range(p), repeat=t))[1:], dtype=np.int64)
        return combos.reshape(-1, t), True
    rows = []
    while len(rows) < samples:
        c = [rng.randrange(p) for _ in range(t)]
        if any(c):
            rows.append(c)
    return np.array(rows, dtype=np.int64), False


def verify_mds_matrix(H: CheckMatrix, samples: int = 10_000, seed: int = 0) -> MatrixReport:
    """Check that every ``t x t`` minor is nonzero and that row combinations are heavy.

    Every nonzero combination of the rows must have weight at least
    ``d - t + 1``.  Combinations are enumerated when there are at most
    ``DUAL_WEIGHT_EXHAUSTIVE_LIMIT`` of them and sampled otherwise.
    """
    A, p, t, d = H.array, H.p, H.t, H.d
    report = MatrixReport(True, p, t, d, 0, None, d - t + 1, None, True, 0)
    for cols in itertools.combinations(range(d), t):
        report.minors_checked += 1
        if rank(A[:, cols], p) < t:
            report.ok, report.bad_minor = False, cols
            break
    combos, report.dual_exhaustive = _nonzero_combos(p, t, samples, random.Random(seed))
    weights = np.count_nonzero((combos @ A) % p, axis=1)
    report.combos_checked = len(combos)
    k = int(weights.argmin())
    report.dual_min_weight = int(weights[k])
    if report.dual_min_weight < report.dual_bound:
        report.ok = False
        report.dual_witness = tuple(int(x) for x in combos[k])
    return report


@dataclass(frozen=True)
class LinearMdsCode:
    """Kernel of a check matrix, over GF(p) (``n is None``) or over ``GF(p)^n``.

    Scalar words are tuples of ints; vector words are ``d``-tuples of
    ``n``-tuples.  ``as_matrix`` converts either to a ``d x n`` array.
    """

    matrix: CheckMatrix
    n: int | None = None

    @property
    def p(self) -> int:
        return self.matrix.p

    @property
    def d(self) -> int:
        return self.matrix.d

    @property
    def t(self) -> int:
        return self.matrix.t

    @property
    def A(self) -> np.ndarray:
        return self.matrix.array

    @property
    def width(self) -> int:
        return 1 if self.n is None else self.n

    @property
    def order(self) -> int:
        return self.p**self.width

    @property
    def size(self) -> int:
        return self.order ** (self.d - self.t)

    def as_matrix(self, Y) -> np.ndarray:
        Y = np.asarray(Y, dtype=np.int64) % self.p
        if self.n is None:
            Y = Y.reshape(-1, 1)
        if Y.shape != (self.d, self.width):
            raise ValueError(f"expected a word of shape ({self.d}, {self.width}), got {Y.shape}")
        return Y

    def to_word(self, Y: np.ndarray) -> tuple:
        Y = np.asarray(Y, dtype=np.int64) % self.p
        if self.n is None:
            return tuple(int(x) for x in Y.reshape(-1))
        return tuple(tuple(int(x) for x in row) for row in Y)

    def syndrome(self, Y) -> np.ndarray:
        return (self.A @ self.as_matrix(Y)) % self.p

    def contains(self, Y) -> bool:
        return not self.syndrome(Y).any()

    def alphabet(self) -> tuple:
        if self.n is None:
            return tuple(range(self.p))
        return tuple(itertools.product(range(self.p), repeat=self.n))

    def info_to_word(self, info: np.ndarray) -> np.ndarray:
        """Codeword whose last ``d - t`` rows are ``info`` (systematic form required)."""
        if not self.matrix.systematic:
            raise ValueError("systematic check matrix required")
        info = np.asarray(info, dtype=np.int64).reshape(self.d - self.t, self.width)
        top = (-self.A[:, self.t :] @ info) % self.p
        return np.vstack([top, info % self.p])

    def iter_words(self) -> Iterator[tuple]:
        if self.size > ENUMERATION_LIMIT:
            raise ValueError(f"code has {self.size} words, above the enumeration limit")
        alph = self.alphabet()
        for info in itertools.product(alph, repeat=self.d - self.t):
            yield self.to_word(self.info_to_word(np.array(info, dtype=np.int64)))

    def explicit(self) -> ExplicitCode:
        return ExplicitCode((self.alphabet(),) * self.d, frozenset(self.iter_words()))

    def complete(self, plane: AxisPlane) -> tuple:
        return complete_plane_linear(self, plane)


def complete_plane_linear(L: LinearMdsCode, plane: AxisPlane) -> tuple:
    """The unique codeword of ``L`` agreeing with the plane's fixed coordinates."""
    if plane.d != L.d or len(plane.fixed) != L.d - L.t:
        raise ValueError(f"plane must fix exactly d - t = {L.d - L.t} of {L.d} coordinates")
    fixed = plane.fixed_coords
    free = list(plane.free_coords)
    YF = np.array([np.asarray(s, dtype=np.int64).reshape(-1) for _, s in plane.fixed], dtype=np.int64)
    YF = YF.reshape(len(fixed), L.width)
    if (YF < 0).any() or (YF >= L.p).any():
        raise ValueError("fixed value outside the alphabet")
    A = L.A
    rhs = (-A[:, list(fixed)] @ YF) % L.p
    YT = (inverse(A[:, free], L.p) @ rhs) % L.p
    Y = np.zeros((L.d, L.width), dtype=np.int64)
    Y[list(fixed)] = YF
    Y[free] = YT
    return L.to_word(Y)


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of ``GF(p)^n`` held as a reduced echelon basis."""

    p: int
    n: int
    basis: np.ndarray = field(compare=False)
    pivots: tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def residue(self, v) -> np.ndarray:
        """Reduce rows of ``v`` against the basis; rows in the subspace reduce to zero."""
        v = as_mod(v, self.p)
        if not self.pivots:
            return v
        coeff = v[..., list(self.pivots)]
        return (v - coeff @ self.basis) % self.p

    def contains(self, v) -> bool:
        return not self.residue(v).any()

    def contains_rows(self, V) -> bool:
        """True when every row of the matrix ``V`` lies in the subspace."""
        return not self.residue(np.atleast_2d(V)).any()

    def same_coset(self, a, b) -> bool:
        return self.contains((np.asarray(a) - np.asarray(b)) % self.p)

    def elements(self) -> Iterator[np.ndarray]:
        for c in itertools.product(range(self.p), repeat=self.dim):
            yield (np.array(c, dtype=np.int64) @ self.basis) % self.p if self.dim else np.zeros(self.n, dtype=np.int64)

    def random_element(self, rng: random.Random) -> np.ndarray:
        c = np.array([rng.randrange(self.p) for _ in range(self.dim)], dtype=np.int64)
        return (c @ self.basis) % self.p if self.dim else np.zeros(self.n, dtype=np.int64)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.p, self.n, self.pivots) == (other.p, other.n, other.pivots) and np.array_equal(
            self.basis, other.basis
        )

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.pivots, self.basis.tobytes()))


def subspace_span(vectors: Iterable[Sequence[int]], p: int, n: int) -> Subspace:
    rows = [np.asarray(v, dtype=np.int64).reshape(-1) for v in vectors]
    for r in rows:
        if r.shape != (n,):
            raise ValueError(f"vector of length {r.shape[0]} in GF({p})^{n}")
    if not rows:
        return Subspace(p, n, np.zeros((0, n), dtype=np.int64), ())
    R, piv = rref(np.vstack(rows), p)
    return Subspace(p, n, R[: len(piv)].copy(), tuple(piv))


@dataclass(frozen=True)
class AffineSubcode:
    """The set ``anchor + M|_W`` for a vector-alphabet linear code ``M``.

    ``M|_W`` consists of the codewords all of whose rows lie in ``W``.  With
    ``free_standing`` the anchor need not be a codeword; the set is then an
    MDS code on the subcube ``prod_j (anchor_j + W)`` disjoint from ``M``.
    """

    code: LinearMdsCode
    W: Subspace
    anchor: np.ndarray = field(compare=False)
    free_standing: bool = False

    @property
    def cardinality(self) -> int:
        return (self.W.p**self.W.dim) ** (self.code.d - self.code.t)

    def _offset(self, Y) -> np.ndarray:
        return (self.code.as_matrix(Y) - self.anchor) % self.code.p

    def contains(self, Y) -> bool:
        X = self._offset(Y)
        return self.W.contains_rows(X) and not ((self.code.A @ X) % self.code.p).any()

    def in_subcube(self, Y) -> bool:
        return self.W.contains_rows(self._offset(Y))

    def coordinate_alphabet(self, j: int) -> list[tuple]:
        """Symbols in coordinate ``j``: the coset ``anchor_j + W``."""
        return sorted({tuple(int(x) for x in (self.anchor[j] + w) % self.code.p) for w in self.W.elements()})

    def linear_basis(self) -> np.ndarray:
        """Basis of ``M|_W`` as flattened ``d * n`` vectors (kernel of A tensored with W)."""
        K = nullspace(self.code.A, self.code.p)
        rows = [np.outer(k, b).reshape(-1) for k in K for b in self.W.basis]
        return np.array(rows, dtype=np.int64).reshape(len(rows), self.code.d * self.code.width)

    def random_element(self, rng: random.Random) -> np.ndarray:
        B = self.linear_basis()
        c = np.array([rng.randrange(self.code.p) for _ in range(len(B))], dtype=np.int64)
        X = (c @ B) % self.code.p if len(B) else np.zeros(self.code.d * self.code.width, dtype=np.int64)
        return (self.anchor + X.reshape(self.code.d, self.code.width)) % self.code.p

    def iter_words(self) -> Iterator[tuple]:
        if self.cardinality > ENUMERATION_LIMIT:
            raise ValueError(f"subcode has {self.cardinality} words, above the enumeration limit")
        B = self.linear_basis()
        p = self.code.p
        for c in itertools.product(range(p), repeat=len(B)):
            X = (np.array(c, dtype=np.int64) @ B) % p if len(B) else np.zeros(B.shape[1], dtype=np.int64)
            yield self.code.to_word(self.anchor + X.reshape(self.code.d, self.code.width))


def subcode_restriction(L: LinearMdsCode, W: Subspace, anchor=None, free_standing: bool = False) -> AffineSubcode:
    if L.n is None or W.n != L.n or W.p != L.p:
        raise ValueError("subspace must live in the vector alphabet of the code")
    if anchor is None:
        anchor_m = np.zeros((L.d, L.n), dtype=np.int64)
    else:
        anchor_m = L.as_matrix(anchor)
    if not free_standing and not L.contains(anchor_m):
        raise ValueError("anchor is not a codeword; pass free_standing=True for a translated subcode")
    return AffineSubcode(L, W, anchor_m, free_standing)


def affine_intersection(a, S, b, T, p: int) -> np.ndarray | None:
    """A common point of ``a + span(S)`` and ``b + span(T)``, or ``None``.

    ``a`` and ``b`` are flat vectors, ``S`` and ``T`` matrices whose rows
    span the directions.  The sets meet iff ``b - a`` lies in
    ``span(S) + span(T)``.
    """
    a = as_mod(a, p).reshape(-1)
    b = as_mod(b, p).reshape(-1)
    S = as_mod(S, p).reshape(-1, a.size)
    T = as_mod(T, p).reshape(-1, a.size)
    if len(S) + len(T) == 0:
        return a if np.array_equal(a, b) else None
    # a + S^T x = b - T^T y  <=>  [S^T | T^T] (x, y) = b - a
    M = np.hstack([S.T, T.T])
    sol = solve(M, (b - a) % p, p)
    if sol is None:
        return None
    return (a + sol[: len(S)] @ S) % p
