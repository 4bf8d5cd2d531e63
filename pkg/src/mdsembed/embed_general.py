"""Embedding an arbitrary code of distance ``t + 1`` into an MDS code.

The target alphabet is ``V = GF(p)^n`` with ``n`` the total number of
symbols used by the input code, one unit vector per (coordinate, symbol).
The base code is ``M = {Y in V^d : A Y = 0}`` for a systematic MDS check
matrix ``A``.  Each input word ``w`` with unit-vector image ``w_bar``
contributes one patch:

* ``g^i = a^i . w_bar`` for the rows ``a^i`` of ``A``, and ``W = span(g)``;
* ``u = w_bar - (g^1, ..., g^t, 0, ..., 0)``, a codeword of ``M``;
* the removed set ``u + M|_W`` and the replacement ``w_bar + M|_W``, both
  MDS codes on the subcube ``prod_j (u_j + W)``.

The resulting code is never materialized.  ``PatchedMdsCode`` answers
membership and plane-completion queries, and every pair of patches is
certified disjoint by exact affine intersection.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from .core_codes import AxisPlane, ExplicitCode, closest_pair, is_mds
from .linear_mds import (
    ENUMERATION_LIMIT,
    AffineSubcode,
    CheckMatrix,
    LinearMdsCode,
    Subspace,
    affine_intersection,
    build_check_matrix,
    complete_plane_linear,
    inverse,
    is_prime,
    smallest_prime_geq,
    subcode_restriction,
    subspace_span,
    verify_mds_matrix,
)


class EmbeddingError(ValueError):
    """The input violates a precondition of the construction."""


class InvariantError(RuntimeError):
    """A certified invariant of the construction failed; carries a witness."""


@dataclass(frozen=True)
class SymbolEmbedding:
    """Assignment of a unit vector of ``GF(p)^n`` to every used (coordinate, symbol)."""

    p: int
    n: int
    index: tuple[dict, ...]

    @property
    def d(self) -> int:
        return len(self.index)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(m) for m in self.index)

    @property
    def q_prime(self) -> int:
        return self.p**self.n

    def unit(self, k: int) -> np.ndarray:
        e = np.zeros(self.n, dtype=np.int64)
        e[k] = 1
        return e

    def embed_word(self, w) -> np.ndarray:
        """``d x n`` matrix of unit vectors."""
        if len(w) != self.d:
            raise EmbeddingError(f"word {w!r} has length {len(w)}, expected {self.d}")
        Y = np.zeros((self.d, self.n), dtype=np.int64)
        for j, s in enumerate(w):
            try:
                Y[j, self.index[j][s]] = 1
            except KeyError:
                raise EmbeddingError(f"symbol {s!r} in coordinate {j} has no unit vector") from None
        return Y

    def entries(self) -> list[tuple[int, object, int]]:
        return [(j, s, k) for j, m in enumerate(self.index) for s, k in m.items()]


@dataclass(frozen=True)
class SwitchPatch:
    source_word: tuple
    w_bar: np.ndarray = field(compare=False)
    u: np.ndarray = field(compare=False)
    W: Subspace
    g: np.ndarray = field(compare=False)
    removed: AffineSubcode = field(compare=False)
    replacement: AffineSubcode = field(compare=False)


@dataclass
class DisjointnessCertificate:
    family: str
    pairs_checked: int = 0
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.witness is None


@dataclass
class PatchedMdsCode:
    """``(M minus the removed subcodes) union the replacement subcodes``, held implicitly."""

    base: LinearMdsCode
    embedding: SymbolEmbedding
    patches: list[SwitchPatch]
    certificates: list[DisjointnessCertificate] = field(default_factory=list)

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def n(self) -> int:
        return self.embedding.n

    @property
    def d(self) -> int:
        return self.base.d

    @property
    def t(self) -> int:
        return self.base.t

    @property
    def q_prime(self) -> int:
        return self.embedding.q_prime

    @property
    def size(self) -> int:
        return self.q_prime ** (self.d - self.t)

    def contains(self, Y) -> bool:
        return oracle_contains(self, Y)

    def complete(self, plane: AxisPlane) -> tuple:
        return oracle_complete_plane(self, plane)


def _prime_for(q_used: int, d: int, t: int) -> int:
    p = smallest_prime_geq(max(q_used, 2))
    if t == 1:
        return p
    while True:
        if d <= p:
            return p
        if d == p + 1 and verify_mds_matrix(build_check_matrix(p, d, t)):
            return p
        p = smallest_prime_geq(p + 1)


def plan_symbol_embedding(C: ExplicitCode, t: int) -> tuple[SymbolEmbedding, LinearMdsCode]:
    """Choose ``p``, assign unit vectors and build the base code.

    Unit vectors are numbered coordinate by coordinate, symbols in alphabet
    order; unused symbols get none.  An empty code gets one placeholder
    vector per coordinate.
    """
    d = C.d
    if not 1 <= t < d:
        raise EmbeddingError(f"need 1 <= t < d, got t={t}, d={d}")
    if len(C) >= 2:
        dist, x, y = closest_pair(C)
        if dist < t + 1:
            raise EmbeddingError(f"words {x!r} and {y!r} are at distance {dist} < {t + 1}")
    index = []
    k = 0
    for j, alph in enumerate(C.alphabets):
        used = {w[j] for w in C.words}
        symbols = [s for s in alph if s in used] if C.words else [alph[0]]
        index.append({s: k + r for r, s in enumerate(symbols)})
        k += len(symbols)
    q_used = max(len(m) for m in index)
    p = _prime_for(q_used, d, t)
    emb = SymbolEmbedding(p, k, tuple(index))
    return emb, LinearMdsCode(build_check_matrix(p, d, t), n=k)


def compute_patch(base: LinearMdsCode, emb: SymbolEmbedding, w) -> SwitchPatch:
    p, t = base.p, base.t
    A = base.A
    if not base.matrix.systematic:
        raise EmbeddingError("check matrix must be systematic")
    w_bar = emb.embed_word(w)
    g = (A @ w_bar) % p  # row i is a^i . w_bar
    W = subspace_span(g, p, emb.n)
    if W.dim != t:
        raise InvariantError(f"span of g for {w!r} has dimension {W.dim} < {t}")
    u = w_bar.copy()
    u[:t] = (u[:t] - g) % p
    if not base.contains(u):
        raise InvariantError(f"anchor for {w!r} is not a codeword")
    removed = subcode_restriction(base, W, u)
    replacement = subcode_restriction(base, W, w_bar, free_standing=True)
    return SwitchPatch(tuple(w), w_bar, u, W, g, removed, replacement)


def _certify_family(subcodes: list[AffineSubcode], words: list, family: str) -> DisjointnessCertificate:
    cert = DisjointnessCertificate(family)
    bases = [s.linear_basis() for s in subcodes]
    for i, j in itertools.combinations(range(len(subcodes)), 2):
        cert.pairs_checked += 1
        a, b = subcodes[i], subcodes[j]
        point = affine_intersection(a.anchor.reshape(-1), bases[i], b.anchor.reshape(-1), bases[j], a.code.p)
        if point is not None:
            cert.witness = (words[i], words[j], point.reshape(a.anchor.shape))
            break
    return cert


def build_patched_code(C: ExplicitCode, t: int) -> PatchedMdsCode:
    """One patch per word of ``C`` (in sorted order), with disjointness certificates."""
    emb, base = plan_symbol_embedding(C, t)
    patches = [compute_patch(base, emb, w) for w in C.sorted_words()]
    P = PatchedMdsCode(base, emb, patches)
    words = [pt.source_word for pt in patches]
    P.certificates = [
        _certify_family([pt.removed for pt in patches], words, "removed"),
        _certify_family([pt.replacement for pt in patches], words, "replacement"),
    ]
    for cert in P.certificates:
        if not cert.ok:
            raise InvariantError(f"{cert.family} subcodes of {cert.witness[0]!r} and {cert.witness[1]!r} intersect")
    return P


def oracle_contains(P: PatchedMdsCode, Y) -> bool:
    Y = P.base.as_matrix(Y)
    for pt in P.patches:
        if pt.replacement.contains(Y):
            return True
    if not P.base.contains(Y):
        return False
    return not any(pt.removed.in_subcube(Y) for pt in P.patches)


def _plane_matrix(P: PatchedMdsCode, plane: AxisPlane) -> tuple[list[int], list[int], np.ndarray]:
    if plane.d != P.d or len(plane.fixed) != P.d - P.t:
        raise ValueError(f"plane must fix exactly {P.d - P.t} of {P.d} coordinates")
    YF = np.array([np.asarray(s, dtype=np.int64).reshape(-1) for _, s in plane.fixed], dtype=np.int64)
    if YF.shape != (P.d - P.t, P.n):
        raise ValueError(f"fixed values must be vectors of length {P.n}")
    if (YF < 0).any() or (YF >= P.p).any():
        raise ValueError("fixed value outside GF(p)")
    return list(plane.fixed_coords), list(plane.free_coords), YF


def _replacement_point(P: PatchedMdsCode, pt: SwitchPatch, fixed, free, YF) -> np.ndarray | None:
    p = P.p
    XF = (YF - pt.w_bar[fixed]) % p
    if not pt.W.contains_rows(XF):
        return None
    A = P.base.A
    X = np.zeros((P.d, P.n), dtype=np.int64)
    X[fixed] = XF
    X[free] = (inverse(A[:, free], p) @ ((-A[:, fixed] @ XF) % p)) % p
    return (pt.w_bar + X) % p


def plane_hits(P: PatchedMdsCode, plane: AxisPlane) -> tuple[list[np.ndarray], list[int], np.ndarray, list[int]]:
    """All points of the patched code on ``plane``, computed cover by cover.

    Returns the points, the indices of patches whose replacement meets the
    plane, the base completion, and the indices of patches whose removed
    subcode contains it.
    """
    fixed, free, YF = _plane_matrix(P, plane)
    hits, rep = [], []
    for k, pt in enumerate(P.patches):
        Y = _replacement_point(P, pt, fixed, free, YF)
        if Y is not None:
            hits.append(Y)
            rep.append(k)
    Y0 = P.base.as_matrix(complete_plane_linear(P.base, plane))
    removed_by = [k for k, pt in enumerate(P.patches) if pt.removed.in_subcube(Y0)]
    if not removed_by:
        hits.append(Y0)
    return hits, rep, Y0, removed_by


def oracle_complete_plane(P: PatchedMdsCode, plane: AxisPlane) -> tuple:
    """The unique codeword of the patched code on ``plane``."""
    hits, rep, Y0, removed_by = plane_hits(P, plane)
    if len(hits) == 1:
        return P.base.to_word(hits[0])
    if len(rep) > 1:
        words = [P.patches[k].source_word for k in rep]
        raise InvariantError(f"replacement subcodes of {words} all meet plane {plane}")
    if removed_by:
        raise InvariantError(
            f"base completion on {plane} is removed by {P.patches[removed_by[0]].source_word!r} "
            "but no replacement meets the plane"
        )
    raise InvariantError(f"replacement of {P.patches[rep[0]].source_word!r} meets {plane} next to a surviving base word")


def enumerate_patched(P: PatchedMdsCode) -> ExplicitCode:
    """Materialize the patched code; only for ``q'^(d-t)`` up to ``ENUMERATION_LIMIT``."""
    if P.size > ENUMERATION_LIMIT:
        raise ValueError(f"patched code has {P.size} words, above the enumeration limit")
    words = set(P.base.iter_words())
    for pt in P.patches:
        removed = set(pt.removed.iter_words())
        if not removed <= words:
            raise InvariantError(f"removed subcode of {pt.source_word!r} is not inside the base code")
        words -= removed
    for pt in P.patches:
        added = set(pt.replacement.iter_words())
        if added & words:
            raise InvariantError(f"replacement of {pt.source_word!r} overlaps the code")
        words |= added
    return ExplicitCode((P.base.alphabet(),) * P.d, frozenset(words))


@dataclass
class PatchedReport:
    ok: bool
    mode: str
    q_prime: int
    mapped_contained: int
    mapped_total: int
    matrix_ok: bool
    certificates_ok: bool
    enumerated_size: int | None = None
    mds_ok: bool | None = None
    planes_checked: int = 0
    replacement_words_checked: int = 0
    replacement_min_distance: int | None = None
    failures: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        lines = [
            f"patched MDS code over q'={self.q_prime}: {'PASS' if self.ok else 'FAIL'} ({self.mode})",
            f"  base check matrix verified: {self.matrix_ok}",
            f"  disjointness certificates: {self.certificates_ok}",
            f"  mapped input words contained: {self.mapped_contained}/{self.mapped_total}",
        ]
        if self.enumerated_size is not None:
            lines.append(
                f"  |M'| = {self.enumerated_size}; {self.planes_checked} axis planes, each hit once: {self.mds_ok}"
            )
        elif self.planes_checked:
            lines.append(f"  sampled planes completed uniquely: {self.planes_checked}")
        if self.replacement_words_checked:
            lines.append(
                f"  replacement words checked: {self.replacement_words_checked}, "
                f"min distance {self.replacement_min_distance}"
            )
        lines.extend(f"  failure: {f}" for f in self.failures)
        return "\n".join(lines)


def _random_plane(P: PatchedMdsCode, rng: random.Random) -> AxisPlane:
    fixed = sorted(rng.sample(range(P.d), P.d - P.t))
    mode = rng.randrange(3) if P.patches else 0
    if mode == 0:
        source = np.array([[rng.randrange(P.p) for _ in range(P.n)] for _ in range(P.d)], dtype=np.int64)
    else:
        pt = rng.choice(P.patches)
        sub = pt.replacement if mode == 1 else pt.removed
        source = sub.random_element(rng)
    return AxisPlane(P.d, tuple((j, tuple(int(x) for x in source[j])) for j in fixed))


def verify_patched(
    P: PatchedMdsCode, C: ExplicitCode, mode: str = "exhaustive", budget: int = 1000, seed: int = 0
) -> PatchedReport:
    """Re-check the patched code independently of how it was built.

    Exhaustive mode enumerates the code and runs ``is_mds``.  Sample mode
    completes ``budget`` random planes (a third uniform, the rest through a
    patch subcube), counts every cover's points on each plane, and checks
    pairwise distances among all replacement words.
    """
    if mode not in ("exhaustive", "sample"):
        raise ValueError(f"unknown mode {mode!r}")
    matrix_ok = bool(verify_mds_matrix(P.base.matrix))
    certs_ok = all(c.ok for c in P.certificates)
    report = PatchedReport(False, mode, P.q_prime, 0, len(C), matrix_ok, certs_ok)
    for w in C.sorted_words():
        Y = P.embedding.embed_word(w)
        if oracle_contains(P, Y):
            report.mapped_contained += 1
        else:
            report.failures.append(f"mapped word of {w!r} is not in the code")
    if not C.words:
        report.ok = matrix_ok
        return report

    if mode == "exhaustive":
        if P.size > ENUMERATION_LIMIT:
            raise ValueError(f"exhaustive mode needs q'^(d-t) <= {ENUMERATION_LIMIT}, got {P.size}")
        code = enumerate_patched(P)
        report.enumerated_size = len(code)
        mds = is_mds(code, P.t)
        report.mds_ok = bool(mds)
        report.planes_checked = mds.planes_checked
        if not mds:
            report.failures.append(mds.summary())
        if len(code) != P.size:
            report.failures.append(f"enumerated {len(code)} words, expected {P.size}")
    else:
        rng = random.Random(seed)
        for _ in range(budget):
            plane = _random_plane(P, rng)
            hits = plane_hits(P, plane)[0]
            if len(hits) != 1:
                report.failures.append(f"plane {plane} meets the code {len(hits)} times")
                break
            try:
                Y = oracle_complete_plane(P, plane)
            except InvariantError as exc:
                report.failures.append(str(exc))
                break
            if not oracle_contains(P, Y) or not plane.contains(Y):
                report.failures.append(f"completion {Y} of {plane} fails the membership re-check")
                break
            report.planes_checked += 1
        rep_words = []
        for pt in P.patches:
            if pt.replacement.cardinality <= ENUMERATION_LIMIT:
                rep_words.extend(pt.replacement.iter_words())
        if len(rep_words) >= 2:
            arr = np.array([np.asarray(w).reshape(-1) for w in rep_words])
            arr = arr.reshape(len(rep_words), P.d, P.n)
            best = P.d
            for i in range(len(arr) - 1):
                diff = (arr[i + 1 :] != arr[i]).any(axis=2).sum(axis=1)
                best = min(best, int(diff.min()))
            report.replacement_words_checked = len(rep_words)
            report.replacement_min_distance = best
            if best < P.t + 1:
                report.failures.append(f"replacement words at distance {best} < {P.t + 1}")
    report.ok = matrix_ok and certs_ok and not report.failures
    return report


def patched_from_parts(
    p: int, rows, emb_entries, d: int, patch_words
) -> PatchedMdsCode:
    """Rebuild a patched code from stored parts, recomputing every derived quantity."""
    if not is_prime(p):
        raise EmbeddingError(f"{p} is not prime")
    matrix = CheckMatrix(p, tuple(map(tuple, rows)))
    index: list[dict] = [dict() for _ in range(d)]
    n = 0
    for j, s, k in emb_entries:
        index[j][s] = k
        n = max(n, k + 1)
    emb = SymbolEmbedding(p, n, tuple(index))
    base = LinearMdsCode(matrix, n=n)
    patches = [compute_patch(base, emb, w) for w in patch_words]
    P = PatchedMdsCode(base, emb, patches)
    P.certificates = [
        _certify_family([pt.removed for pt in patches], list(patch_words), "removed"),
        _certify_family([pt.replacement for pt in patches], list(patch_words), "replacement"),
    ]
    return P
