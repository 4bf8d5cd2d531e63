"""Embedding partial Latin hypercubes into complete ones.

A distance-2 code ``C`` in ``Q_q^d`` is a partial Latin hypercube of
dimension ``d - 1``.  Dimension two is a partial permutation and is
completed directly.  Higher dimensions recurse on the retracts along the
last coordinate, reattach each completed retract with ``extend_dimension``,
take the generalized product with a base code ``B`` and then switch one
order-``q`` subcode per word of ``C`` so that the image of that word is
present.  The final order is ``q^(d-1)``.

About the switching subcubes: for ``z = (z', a)`` in ``C`` the subcube is
``prod_i {(x, z_i) : x in Q_q}`` times ``{(b, M_b(z')) : b in Q_q}``, where
``M_b(z')`` is the last symbol completing ``z'`` in the inner code ``M_b``.
Inside the product this intersection is a relabeled copy of ``B``, hence an
MDS subcode.  With ``M_a(z') = a`` the target ``((0, z_1), ..., (a, a))``
lies in it.  The diagonal ``{(b, b)}`` is the special case where every
``M_b`` passes through ``(z', b)``, which the recursion does not guarantee.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .combinators import Subcube, extend_dimension, flatten, force_point_latin, generalized_product
from .core_codes import ExplicitCode, closest_pair, is_mds, retract


class PartialLatinError(ValueError):
    """Input is not a partial Latin hypercube (distance below 2, bad alphabets)."""


@dataclass(frozen=True)
class LatinHypercube:
    """A Latin hypercube stored densely: ``array[x_1, ..., x_{d-1}] = x_d``."""

    array: np.ndarray = field(compare=False)

    @property
    def q(self) -> int:
        return self.array.shape[0]

    @property
    def d(self) -> int:
        return self.array.ndim + 1

    @classmethod
    def from_code(cls, C: ExplicitCode) -> "LatinHypercube":
        q = C.order
        arr = np.full((q,) * (C.d - 1), -1, dtype=np.int64)
        if len(C) != q ** (C.d - 1):
            raise PartialLatinError(f"{len(C)} words, a Latin hypercube of order {q} needs {q ** (C.d - 1)}")
        for w in C.words:
            key = C.word_key(w)
            arr[key[:-1]] = key[-1]
        if (arr < 0).any():
            raise PartialLatinError("some cell is unfilled")
        return cls(arr)

    @property
    def code(self) -> ExplicitCode:
        q = self.q
        cells = itertools.product(range(q), repeat=self.d - 1)
        return ExplicitCode.uniform(q, self.d, (c + (int(self.array[c]),) for c in cells))

    def is_latin(self) -> bool:
        """Every axis line is a permutation (checked on the array, independently of ``is_mds``)."""
        ref = np.arange(self.q)
        return all(
            np.array_equal(np.sort(self.array, axis=ax), np.broadcast_to(
                ref.reshape([-1 if k == ax else 1 for k in range(self.array.ndim)]), self.array.shape))
            for ax in range(self.array.ndim)
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, LatinHypercube) and np.array_equal(self.array, other.array)

    def __hash__(self) -> int:
        return hash(self.array.tobytes())


@dataclass
class LatinEmbeddingCertificate:
    """Result of ``embed_partial_latin``.

    ``injections[i]`` maps each symbol of coordinate ``i`` of the input to a
    symbol of ``range(order)``; ``trace`` records the recursion.
    """

    code: ExplicitCode
    output: LatinHypercube
    injections: list[dict]
    trace: dict

    @property
    def order(self) -> int:
        return self.output.q

    def mapped_words(self) -> list[tuple]:
        return sorted(tuple(self.injections[i][s] for i, s in enumerate(w)) for w in self.code.words)

    def verify(self) -> "LatinReport":
        return verify_latin_embedding(self)


@dataclass
class LatinReport:
    ok: bool
    order: int
    bound: int
    mds_ok: bool
    contained: int
    missing: list
    injective: bool

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> str:
        return (
            f"Latin embedding: {'PASS' if self.ok else 'FAIL'} [order {self.order} <= {self.bound}: "
            f"{self.order <= self.bound}; MDS: {self.mds_ok}; injections injective: {self.injective}; "
            f"{self.contained} input words contained, {len(self.missing)} missing]"
        )


def verify_latin_embedding(cert: LatinEmbeddingCertificate) -> LatinReport:
    C = cert.code
    q = C.order
    bound = q ** (C.d - 1)
    out = cert.output.code
    mds_ok = bool(is_mds(out, 1)) and cert.output.is_latin()
    injective = all(len(set(m.values())) == len(m) for m in cert.injections) and all(
        set(m) == set(a) for m, a in zip(cert.injections, C.alphabets)
    )
    mapped = cert.mapped_words() if injective else []
    missing = [w for w in mapped if w not in out.words]
    ok = mds_ok and injective and not missing and cert.order <= bound and out.d == C.d
    return LatinReport(ok, cert.order, bound, mds_ok, len(mapped) - len(missing), missing, injective)


def _check_partial(C: ExplicitCode) -> int:
    if C.d < 2:
        raise PartialLatinError("need d >= 2")
    try:
        q = C.order
    except ValueError as exc:
        raise PartialLatinError(str(exc)) from None
    if len(C) >= 2:
        dist, x, y = closest_pair(C)
        if dist < 2:
            raise PartialLatinError(f"words {x!r} and {y!r} are at distance {dist}")
    return q


def complete_partial_permutation(C: ExplicitCode) -> LatinHypercube:
    """Lexicographically smallest permutation extending a partial permutation.

    Free rows are filled in order with the smallest free column; since the
    free rows and columns form a complete bipartite graph this never
    needs to backtrack, and no smaller extension exists.
    """
    if C.d != 2:
        raise PartialLatinError(f"partial permutation must have d=2, got {C.d}")
    q = _check_partial(C)
    perm = [-1] * q
    for w in C.words:
        r, c = C.word_key(w)
        perm[r] = c
    free_cols = iter(sorted(set(range(q)) - set(perm)))
    perm = [c if c >= 0 else next(free_cols) for c in perm]
    return LatinHypercube(np.array(perm, dtype=np.int64))


def modular_sum_code(q: int, d: int) -> ExplicitCode:
    """``{x in Q_q^d : x_1 + ... + x_d = 0 mod q}``, the default base code."""
    words = (w + ((-sum(w)) % q,) for w in itertools.product(range(q), repeat=d - 1))
    return ExplicitCode.uniform(q, d, words)


def _completion_index(M: ExplicitCode) -> dict:
    return {w[:-1]: w[-1] for w in M.words}


def lemma_step(C: ExplicitCode, M: dict, B: ExplicitCode) -> tuple[ExplicitCode, list[dict]]:
    """Product of ``B`` with the codes ``M[a]``, then one switch per word of ``C``.

    ``C`` lives in ``range(q)^d``; ``M[a]`` is an MDS(1, d, Q) code over
    ``range(Q)`` containing every word of ``C`` whose last symbol is ``a``;
    ``B`` is an MDS(1, d, q) code over ``range(q)``.  Returns the flattened
    code of order ``q * Q`` (pair ``(x, y)`` becomes ``Q * x + y``) and the
    switch trace.  The word ``z`` of ``C`` is realized as
    ``(z_1, ..., z_{d-1}, (Q + 1) * z_d)``.
    """
    q = C.order
    d = C.d
    Qs = {M[a].order for a in M}
    if len(Qs) != 1:
        raise ValueError(f"inner codes have different orders {sorted(Qs)}")
    Q = Qs.pop()
    for a in range(q):
        if a not in M:
            raise ValueError(f"no inner code for last symbol {a}")
        M_a = M[a]
        missing = [z for z in C.words if z[-1] == a and z not in M_a.words]
        if missing:
            raise ValueError(f"inner code for {a} misses {missing[0]!r}")
    product = flatten(generalized_product(B, d - 1, M, t=1))
    completions = {a: _completion_index(M[a]) for a in range(q)}

    code = product
    trace = []
    used: list[Subcube] = []
    for z in sorted(C.words):
        a = z[-1]
        prefix = z[:-1]
        sets = [tuple(Q * x + zi for x in range(q)) for zi in prefix]
        sets.append(tuple(Q * b + completions[b][prefix] for b in range(q)))
        sub = Subcube(tuple(sets))
        for other in used:
            if not sub.disjoint_from(other):
                raise ValueError(f"switching subcube for {z!r} overlaps an earlier one")
        used.append(sub)
        target = prefix + (Q * a + a,)
        if target in code.words:
            continue
        before = code
        code = force_point_latin(code, sub, target, check=False)
        changed = sorted(before.words - code.words)
        swap = sorted({w[-1] for w in changed})
        trace.append({"z": list(z), "target": list(target), "subcube": [list(s) for s in sub.sets], "swap": swap})
    return code, trace


def _canonical_relabel(q_out: int, images: dict) -> dict:
    """Permutation of ``range(q_out)`` sending ``images[s]`` to ``s`` for integer ``s`` where possible."""
    wanted = {img: s for s, img in images.items() if isinstance(s, int) and 0 <= s < q_out}
    if len(set(wanted.values())) != len(wanted):
        wanted = {}
    perm = dict(wanted)
    rest_src = [x for x in range(q_out) if x not in perm]
    rest_dst = [x for x in range(q_out) if x not in set(perm.values())]
    perm.update(zip(rest_src, rest_dst))
    return perm


def _embed_indexed(C: ExplicitCode, base: ExplicitCode | None = None) -> tuple[ExplicitCode, dict]:
    """Embed ``C`` over ``range(q)^d`` so that every word of ``C`` is literally present."""
    q = C.order
    d = C.d
    if d == 2:
        perm = complete_partial_permutation(C)
        return perm.code, {"d": 2, "q": q, "order": q}
    children = []
    M = {}
    for a in range(q):
        sub_code, sub_trace = _embed_indexed(retract(C, d - 1, a))
        children.append(sub_trace)
        M[a] = extend_dimension(sub_code, shift=a, check=False)
    B = base if base is not None else modular_sum_code(q, d)
    if B.alphabets != C.alphabets:
        raise ValueError("base code must use the alphabets of the code being embedded")
    code, switches = lemma_step(C, M, B)
    Q = M[0].order
    order = q * Q
    relabel = _canonical_relabel(order, {a: (Q + 1) * a for a in range(q)})
    words = frozenset(w[:-1] + (relabel[w[-1]],) for w in code.words)
    code = ExplicitCode.uniform(order, d, words)
    trace = {
        "d": d,
        "q": q,
        "order": order,
        "base": sorted(list(w) for w in B.words),
        "children": children,
        "switches": switches,
        "relabel_last": [relabel[x] for x in range(order)],
    }
    return code, trace


def embed_partial_latin(C: ExplicitCode, base: ExplicitCode | None = None) -> LatinEmbeddingCertificate:
    """Embed a distance-2 code of ``Q_q^d`` into a Latin hypercube of order at most ``q^(d-1)``.

    Symbols are first replaced by alphabet positions.  A code that is
    already an MDS(1, d, q) code is returned unchanged.  ``base`` overrides
    the top-level base code (given over alphabet positions).
    """
    q = _check_partial(C)
    d = C.d
    idx = ExplicitCode.uniform(q, d, (C.word_key(w) for w in C.words))
    if len(C) == q ** (d - 1):
        code = idx
        trace: dict = {"d": d, "q": q, "order": q, "already_mds": True}
    else:
        if base is not None:
            base = ExplicitCode.uniform(q, d, (base.word_key(w) for w in base.words))
        code, trace = _embed_indexed(idx, base)
    order = code.order
    images = []
    for i, alph in enumerate(C.alphabets):
        images.append({s: k for k, s in enumerate(alph)})
    if trace.get("already_mds"):
        injections = images
    else:
        # the internal code contains each position literally; move integer symbols onto themselves
        injections = []
        maps = []
        for i, alph in enumerate(C.alphabets):
            perm = _canonical_relabel(order, images[i])
            maps.append(perm)
            injections.append({s: perm[images[i][s]] for s in alph})
        code = ExplicitCode.uniform(order, d, (tuple(m[x] for m, x in zip(maps, w)) for w in code.words))
        trace["output_relabel"] = [[m[x] for x in range(order)] for m in maps]
    return LatinEmbeddingCertificate(C, LatinHypercube.from_code(code), injections, trace)
