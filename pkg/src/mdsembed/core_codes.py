"""Explicit codes, the Hamming metric and brute-force MDS verification.

Everything here works on materialized sets of words.  Symbols are opaque
hashable values scoped per coordinate; each coordinate carries its own
ordered alphabet.  The functions in this module are the ground truth the
constructive modules are checked against, so they stay deliberately simple.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

Symbol = Hashable
Word = tuple

#: Largest number of planes per coordinate choice that ``is_mds`` will scan exhaustively.
EXHAUSTIVE_PLANE_LIMIT = 10**6


class UndefinedDistanceError(ValueError):
    """Raised when the minimum distance of a code with fewer than two words is requested."""


class ExhaustiveLimitError(ValueError):
    """Raised when exhaustive verification would exceed ``EXHAUSTIVE_PLANE_LIMIT``."""


@dataclass(frozen=True)
class ExplicitCode:
    """A finite set of words over per-coordinate alphabets.

    ``alphabets[i]`` is the ordered tuple of symbols allowed in coordinate
    ``i``; the order is used for deterministic iteration and for relabeling
    symbols to indices.
    """

    alphabets: tuple[tuple[Symbol, ...], ...]
    words: frozenset[Word]
    declared_distance: int | None = None
    _positions: tuple[dict, ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        alphabets = tuple(tuple(a) for a in self.alphabets)
        object.__setattr__(self, "alphabets", alphabets)
        object.__setattr__(self, "words", frozenset(tuple(w) for w in self.words))
        positions = []
        for i, alph in enumerate(alphabets):
            pos = {s: k for k, s in enumerate(alph)}
            if len(pos) != len(alph):
                raise ValueError(f"alphabet of coordinate {i} has repeated symbols")
            positions.append(pos)
        object.__setattr__(self, "_positions", tuple(positions))
        d = len(alphabets)
        for w in self.words:
            if len(w) != d:
                raise ValueError(f"word {w!r} has length {len(w)}, expected {d}")
            for i, s in enumerate(w):
                if s not in positions[i]:
                    raise ValueError(f"symbol {s!r} of word {w!r} is outside the alphabet of coordinate {i}")
        if self.declared_distance is not None:
            if self.declared_distance < 1:
                raise ValueError("declared_distance must be positive")
            if len(self.words) >= 2:
                actual = code_distance(self)
                if actual < self.declared_distance:
                    raise ValueError(
                        f"declared distance {self.declared_distance} but computed distance is {actual}"
                    )

    @classmethod
    def uniform(cls, q: int, d: int, words: Iterable[Sequence], declared_distance: int | None = None) -> "ExplicitCode":
        """Code in ``Q_q^d`` with every alphabet equal to ``range(q)``."""
        alph = tuple(range(q))
        return cls((alph,) * d, frozenset(tuple(w) for w in words), declared_distance)

    @property
    def d(self) -> int:
        return len(self.alphabets)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.alphabets)

    @property
    def order(self) -> int:
        """Common alphabet size; raises for non-uniform alphabets."""
        orders = set(self.orders)
        if len(orders) != 1:
            raise ValueError(f"non-uniform alphabet sizes {self.orders}")
        return orders.pop()

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.sorted_words())

    def __contains__(self, word) -> bool:
        return tuple(word) in self.words

    def index_of(self, i: int, symbol: Symbol) -> int:
        return self._positions[i][symbol]

    def word_key(self, word: Word) -> tuple[int, ...]:
        return tuple(self._positions[i][s] for i, s in enumerate(word))

    def sorted_words(self) -> list[Word]:
        return sorted(self.words, key=self.word_key)

    def index_array(self) -> np.ndarray:
        """Words as an ``(|C|, d)`` integer array of alphabet positions, in sorted order."""
        rows = [self.word_key(w) for w in self.sorted_words()]
        return np.array(rows, dtype=np.int64).reshape(len(rows), self.d)

    def with_words(self, words: Iterable[Word]) -> "ExplicitCode":
        return ExplicitCode(self.alphabets, frozenset(words))


@dataclass(frozen=True)
class AxisPlane:
    """An axis-aligned plane: the coordinates in ``fixed`` are pinned, the rest are free."""

    d: int
    fixed: tuple[tuple[int, Symbol], ...]

    def __post_init__(self) -> None:
        fixed = tuple(sorted((int(i), s) for i, s in dict(self.fixed).items()))
        if len(fixed) != len(self.fixed):
            raise ValueError("coordinate fixed twice")
        for i, _ in fixed:
            if not 0 <= i < self.d:
                raise ValueError(f"coordinate {i} out of range for d={self.d}")
        object.__setattr__(self, "fixed", fixed)

    @classmethod
    def from_mapping(cls, d: int, assignment: Mapping[int, Symbol]) -> "AxisPlane":
        return cls(d, tuple(assignment.items()))

    @property
    def fixed_coords(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.fixed)

    @property
    def free_coords(self) -> tuple[int, ...]:
        fixed = set(self.fixed_coords)
        return tuple(i for i in range(self.d) if i not in fixed)

    @property
    def dimension(self) -> int:
        return self.d - len(self.fixed)

    def assignment(self) -> dict[int, Symbol]:
        return dict(self.fixed)

    def contains(self, word: Sequence) -> bool:
        return all(word[i] == s for i, s in self.fixed)


def hamming_distance(x: Sequence, y: Sequence) -> int:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} != {len(y)}")
    return sum(a != b for a, b in zip(x, y))


def closest_pair(C: ExplicitCode) -> tuple[int, Word, Word]:
    """Minimum distance together with a pair of words attaining it."""
    if len(C) < 2:
        raise UndefinedDistanceError(f"distance is undefined for a code with {len(C)} word(s)")
    words = C.sorted_words()
    arr = C.index_array()
    best = (C.d + 1, -1, -1)
    for i in range(len(arr) - 1):
        dist = (arr[i + 1 :] != arr[i]).sum(axis=1)
        j = int(dist.argmin())
        if dist[j] < best[0]:
            best = (int(dist[j]), i, i + 1 + j)
            if best[0] == 1:
                break
    return best[0], words[best[1]], words[best[2]]


def code_distance(C: ExplicitCode) -> int:
    """Minimum pairwise Hamming distance.

    Codes with fewer than two words have no defined distance and raise
    ``UndefinedDistanceError``; callers treat them as having any distance.
    """
    return closest_pair(C)[0]


def has_distance_at_least(C: ExplicitCode, rho: int) -> bool:
    if len(C) < 2:
        return True
    return code_distance(C) >= rho


@dataclass
class MdsReport:
    ok: bool
    t: int
    q: int
    size: int
    singleton_size: int
    exhaustive: bool
    planes_checked: int
    witness: AxisPlane | None = None
    witness_hits: int | None = None

    def __bool__(self) -> bool:
        return self.ok

    @property
    def singleton_ok(self) -> bool:
        return self.size == self.singleton_size

    def summary(self) -> str:
        mode = "exhaustive" if self.exhaustive else "sampled"
        line = (
            f"MDS(t={self.t}, q={self.q}): {'PASS' if self.ok else 'FAIL'} "
            f"[{mode}, {self.planes_checked} planes, |C|={self.size}, q^(d-t)={self.singleton_size}]"
        )
        if self.witness is not None:
            line += f" witness plane {dict(self.witness.fixed)} has {self.witness_hits} point(s)"
        return line


def _projection_counts(C: ExplicitCode, coords: tuple[int, ...]) -> dict:
    counts: dict = {}
    for w in C.words:
        key = tuple(w[i] for i in coords)
        counts[key] = counts.get(key, 0) + 1
    return counts


def is_mds(C: ExplicitCode, t: int, samples: int | None = None, seed: int | None = None) -> MdsReport:
    """Check that every ``t``-dimensional axis-aligned plane meets ``C`` exactly once.

    A plane is fixed by choosing ``d - t`` coordinates and a symbol for each.
    The exhaustive mode scans all of them; it refuses when one coordinate
    choice alone spans more than ``EXHAUSTIVE_PLANE_LIMIT`` planes, in which
    case ``samples`` random planes are checked instead.
    """
    d = C.d
    if not 0 <= t < d:
        raise ValueError(f"need 0 <= t < d, got t={t}, d={d}")
    q = C.order
    per_choice = q ** (d - t)
    choices = list(itertools.combinations(range(d), d - t))
    exhaustive = samples is None
    if exhaustive and per_choice > EXHAUSTIVE_PLANE_LIMIT:
        raise ExhaustiveLimitError(
            f"q^(d-t) = {per_choice} exceeds {EXHAUSTIVE_PLANE_LIMIT}; pass a sample budget"
        )
    report = MdsReport(True, t, q, len(C), per_choice, exhaustive, 0)

    if exhaustive:
        for coords in choices:
            counts = _projection_counts(C, coords)
            report.planes_checked += per_choice
            bad = [(k, c) for k, c in counts.items() if c != 1]
            if bad:
                key, hits = min(bad, key=lambda kc: [C.index_of(i, s) for i, s in zip(coords, kc[0])])
                report.ok, report.witness_hits = False, hits
                report.witness = AxisPlane(d, tuple(zip(coords, key)))
                return report
            if len(counts) < per_choice:
                for key in itertools.product(*(C.alphabets[i] for i in coords)):
                    if key not in counts:
                        report.ok, report.witness_hits = False, 0
                        report.witness = AxisPlane(d, tuple(zip(coords, key)))
                        return report
        return report

    rng = random.Random(seed)
    tables = {coords: _projection_counts(C, coords) for coords in choices}
    for _ in range(samples):
        coords = rng.choice(choices)
        key = tuple(rng.choice(C.alphabets[i]) for i in coords)
        hits = tables[coords].get(key, 0)
        report.planes_checked += 1
        if hits != 1:
            report.ok, report.witness_hits = False, hits
            report.witness = AxisPlane(d, tuple(zip(coords, key)))
            return report
    report.ok = report.ok and report.singleton_ok
    return report


def plane_points(C: ExplicitCode, plane: AxisPlane) -> list[Word]:
    return sorted((w for w in C.words if plane.contains(w)), key=C.word_key)


def _check_coord(C: ExplicitCode, i: int) -> int:
    if not -C.d <= i < C.d:
        raise ValueError(f"coordinate {i} out of range for d={C.d}")
    return i % C.d


def retract(C: ExplicitCode, i: int, a: Symbol) -> ExplicitCode:
    """Words with ``x_i = a``, with coordinate ``i`` deleted (0-based ``i``)."""
    i = _check_coord(C, i)
    if a not in C.alphabets[i]:
        raise ValueError(f"symbol {a!r} not in alphabet of coordinate {i}")
    alphabets = C.alphabets[:i] + C.alphabets[i + 1 :]
    words = frozenset(w[:i] + w[i + 1 :] for w in C.words if w[i] == a)
    return ExplicitCode(alphabets, words)


def embedded_retract(C: ExplicitCode, i: int, a: Symbol) -> ExplicitCode:
    """Words with ``x_i = a``, coordinate kept."""
    i = _check_coord(C, i)
    return C.with_words(w for w in C.words if w[i] == a)


def projection(C: ExplicitCode, i: int) -> ExplicitCode:
    """Delete coordinate ``i``; duplicates collapse."""
    i = _check_coord(C, i)
    alphabets = C.alphabets[:i] + C.alphabets[i + 1 :]
    return ExplicitCode(alphabets, frozenset(w[:i] + w[i + 1 :] for w in C.words))


def full_space(alphabets: Sequence[Sequence[Symbol]]) -> ExplicitCode:
    return ExplicitCode(tuple(map(tuple, alphabets)), frozenset(itertools.product(*alphabets)))


def singleton_size(q: int, d: int, t: int) -> int:
    return q ** (d - t)


def count_planes(q: int, d: int, t: int) -> int:
    return math.comb(d, t) * q ** (d - t)
