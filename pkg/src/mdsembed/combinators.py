"""Building MDS codes from smaller ones, and switching MDS subcodes.

Pair symbols are plain tuples ``(outer, inner)``.  Product alphabets list
pairs outer-major, so an alphabet position is ``q2 * i + j`` for outer
position ``i`` and inner position ``j``; ``flatten`` relabels by position.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Mapping, Sequence

from .core_codes import ExplicitCode, Word, is_mds


class NotMdsError(ValueError):
    """An input that must be an MDS code (or subcode) is not."""


@dataclass(frozen=True)
class Subcube:
    """Cartesian product of per-coordinate symbol subsets."""

    sets: tuple[tuple[Hashable, ...], ...]

    def __post_init__(self) -> None:
        sets = tuple(tuple(s) for s in self.sets)
        if any(len(s) == 0 for s in sets):
            raise ValueError("subcube coordinates must be nonempty")
        object.__setattr__(self, "sets", sets)

    @classmethod
    def spanned_by(cls, C: ExplicitCode) -> "Subcube":
        """Smallest subcube holding ``C``, symbols in ``C``'s alphabet order."""
        used = [{w[i] for w in C.words} for i in range(C.d)]
        return cls(tuple(tuple(s for s in C.alphabets[i] if s in used[i]) for i in range(C.d)))

    @property
    def d(self) -> int:
        return len(self.sets)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)

    def contains(self, word: Sequence) -> bool:
        return all(s in allowed for s, allowed in zip(word, self._lookup))

    @property
    def _lookup(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(s) for s in self.sets)

    def intersect(self, C: ExplicitCode) -> ExplicitCode:
        """``C`` restricted to the subcube, as a code over the subcube's alphabets."""
        look = self._lookup
        words = frozenset(w for w in C.words if all(s in a for s, a in zip(w, look)))
        return ExplicitCode(self.sets, words)

    def disjoint_from(self, other: "Subcube") -> bool:
        return any(not (set(a) & set(b)) for a, b in zip(self.sets, other.sets))


def _require_mds(C: ExplicitCode, t: int, what: str) -> None:
    report = is_mds(C, t)
    if not report:
        raise NotMdsError(f"{what} is not MDS with distance {t + 1}: {report.summary()}")


def _pair_alphabets(outer: ExplicitCode, inner_alphabets) -> tuple:
    return tuple(
        tuple((x, y) for x in outer.alphabets[i] for y in inner_alphabets[i]) for i in range(outer.d)
    )


def mcneish_product(M1: ExplicitCode, M2: ExplicitCode, t: int = 1, check: bool = True) -> ExplicitCode:
    """Coordinate-wise pairing ``M1 x M2``; MDS of order ``q1 * q2`` when both factors are."""
    if M1.d != M2.d:
        raise ValueError(f"dimension mismatch: {M1.d} != {M2.d}")
    if check:
        _require_mds(M1, t, "first factor")
        _require_mds(M2, t, "second factor")
    words = frozenset(tuple(zip(x, y)) for x in M1.words for y in M2.words)
    return ExplicitCode(_pair_alphabets(M1, M2.alphabets), words)


def generalized_product(
    B: ExplicitCode,
    key_coord: int | None,
    U: Mapping | Callable[[Word], ExplicitCode],
    t: int = 1,
    check: bool = True,
) -> ExplicitCode:
    """Union over ``x`` in ``B`` of ``x x U[x]``.

    ``U`` is looked up by the symbol ``x[key_coord]``, or by the whole word
    when ``key_coord`` is ``None``; a callable taking the word also works.
    All inner codes must share their alphabets.
    """
    if check:
        _require_mds(B, t, "outer code")

    def inner(x: Word) -> ExplicitCode:
        if callable(U) and not isinstance(U, Mapping):
            return U(x)
        return U[x] if key_coord is None else U[x[key_coord]]

    words = set()
    alphabets = None
    checked: set[int] = set()
    for x in B.sorted_words():
        Ux = inner(x)
        if Ux.d != B.d:
            raise ValueError(f"inner code for {x!r} has dimension {Ux.d}, expected {B.d}")
        if alphabets is None:
            alphabets = Ux.alphabets
        elif Ux.alphabets != alphabets:
            raise ValueError(f"inner code for {x!r} has alphabets inconsistent with the others")
        if check and id(Ux) not in checked:
            _require_mds(Ux, t, f"inner code for {x!r}")
            checked.add(id(Ux))
        words.update(tuple(zip(x, y)) for y in Ux.words)
    if alphabets is None:
        raise ValueError("outer code is empty")
    return ExplicitCode(_pair_alphabets(B, alphabets), frozenset(words))


def relabel(C: ExplicitCode, maps: Sequence[Mapping | None]) -> ExplicitCode:
    """Apply a bijection of symbols per coordinate (``None`` keeps a coordinate)."""
    maps = [m if m is not None else {s: s for s in a} for m, a in zip(maps, C.alphabets)]
    alphabets = tuple(tuple(m[s] for s in a) for m, a in zip(maps, C.alphabets))
    words = frozenset(tuple(m[s] for m, s in zip(maps, w)) for w in C.words)
    return ExplicitCode(alphabets, words)


def flatten(C: ExplicitCode) -> ExplicitCode:
    """Replace every symbol by its alphabet position; alphabets become ``range(q_i)``."""
    maps = [{s: k for k, s in enumerate(a)} for a in C.alphabets]
    out = relabel(C, maps)
    return ExplicitCode(tuple(tuple(range(len(a))) for a in C.alphabets), out.words)


def extend_dimension(M: ExplicitCode, shift=None, check: bool = True) -> ExplicitCode:
    """Append a coordinate to a distance-2 MDS code.

    Result: ``{(x_1, ..., x_{d-1}, x_d + (a - a0) mod q, a)}`` over ``a`` in
    the last alphabet, with symbols read as their alphabet positions.  Its
    retract at ``a = a0`` is ``M`` itself.  The new coordinate reuses the
    alphabet of the last one; ``shift`` (``a0``) defaults to its first symbol.
    """
    if check:
        _require_mds(M, 1, "code to extend")
    q = M.order
    last = M.alphabets[-1]
    a0 = last[0] if shift is None else shift
    if a0 not in last:
        raise ValueError(f"shift symbol {a0!r} not in the last alphabet")
    i0 = M.index_of(M.d - 1, a0)
    words = frozenset(
        w[:-1] + (last[(M.index_of(M.d - 1, w[-1]) + ia - i0) % q], a)
        for w in M.words
        for ia, a in enumerate(last)
    )
    return ExplicitCode(M.alphabets + (last,), words)


def check_subcode(C: ExplicitCode, C1: ExplicitCode, sub: Subcube, t: int) -> None:
    """Raise unless ``C1 = C ∩ sub`` and ``C1`` is MDS on ``sub`` with distance ``t + 1``."""
    if sub.d != C.d:
        raise ValueError("subcube dimension mismatch")
    if not C1.words <= C.words:
        raise ValueError("C1 is not contained in C")
    if sub.intersect(C).words != C1.words:
        raise ValueError("C1 is not the intersection of C with the subcube")
    if len(set(sub.orders)) != 1:
        raise NotMdsError(f"subcube has unequal side lengths {sub.orders}")
    _require_mds(ExplicitCode(sub.sets, C1.words), t, "subcode")


def switch_subcode(
    C: ExplicitCode,
    C1: ExplicitCode,
    C2: ExplicitCode,
    t: int = 1,
    subcube: Subcube | None = None,
) -> ExplicitCode:
    """Replace the MDS subcode ``C1`` of ``C`` by the MDS code ``C2`` on the same subcube."""
    sub = subcube or Subcube.spanned_by(C1)
    check_subcode(C, C1, sub, t)
    if not all(sub.contains(w) for w in C2.words):
        raise ValueError("replacement leaves the subcube")
    _require_mds(ExplicitCode(sub.sets, C2.words), t, "replacement")
    return C.with_words((C.words - C1.words) | C2.words)


def permute_coordinate(C: ExplicitCode, coord: int, mapping: Mapping) -> ExplicitCode:
    """Apply ``mapping`` (symbols not listed are fixed) to one coordinate of every word."""
    words = frozenset(w[:coord] + (mapping.get(w[coord], w[coord]),) + w[coord + 1 :] for w in C.words)
    return C.with_words(words)


def force_point_latin(C: ExplicitCode, sub: Subcube, u: Word, check: bool = True) -> ExplicitCode:
    """Switch the distance-2 subcode ``C ∩ sub`` so that the result contains ``u``.

    The subcode word ``v`` agreeing with ``u`` off the last coordinate is
    found, and the symbols ``u_d`` and ``v_d`` are swapped throughout the
    subcode.  Only words inside ``sub`` change.
    """
    u = tuple(u)
    if not sub.contains(u):
        raise ValueError(f"{u!r} lies outside the subcube")
    if check:
        _require_mds(C, 1, "code")
    C1 = sub.intersect(C)
    check_subcode(C, C1, sub, 1)
    matches = [v for v in C1.words if v[:-1] == u[:-1]]
    if len(matches) != 1:
        raise NotMdsError(f"subcode has {len(matches)} words on the line through {u!r}")
    v = matches[0]
    if v == u:
        return C
    swap = {u[-1]: v[-1], v[-1]: u[-1]}
    C2 = permute_coordinate(C1, C.d - 1, swap)
    return C.with_words((C.words - C1.words) | C2.words)
