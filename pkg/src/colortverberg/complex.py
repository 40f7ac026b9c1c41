"""Vertex sets, simplicial complexes, colorings and labeled partitions.

Vertex sets are int bitmasks throughout: label ``v`` (1-based) is bit ``v - 1``.
Helpers :func:`vmask` and :func:`vlabels` convert between masks and sorted
label tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable, Iterator, Sequence

from .errors import InstanceError, ResourceLimitError

MAX_M = 24
DEFAULT_CAP = 20_000_000

Face = int


def vmask(labels: Iterable[int]) -> Face:
    out = 0
    for v in labels:
        out |= 1 << (v - 1)
    return out


def vlabels(mask: Face) -> tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def submasks(mask: Face) -> Iterator[Face]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def ground_mask(m: int) -> Face:
    return (1 << m) - 1


def _as_mask(face) -> Face:
    return face if isinstance(face, int) else vmask(face)


def check_cap(m: int, r: int, cap: int | None) -> None:
    """Raise if the (r+1)^m assignment space exceeds ``cap``."""
    cap = DEFAULT_CAP if cap is None else cap
    size = (r + 1) ** m
    if size > cap:
        raise ResourceLimitError(
            f"state space (r+1)^m = {r + 1}^{m} = {size} exceeds cap {cap}"
        )


@dataclass(frozen=True)
class SimplicialComplex:
    """A hereditary family of faces on the ground set [m].

    Direct construction trusts the caller; use :meth:`from_faces` or
    :meth:`from_maximal_faces` to validate labels and close under subsets.
    """

    m: int
    faces: frozenset[Face]

    @classmethod
    def from_faces(cls, m: int, faces: Iterable, close: bool = True) -> "SimplicialComplex":
        if not 0 <= m <= MAX_M:
            raise InstanceError(f"ground size m={m} outside 0..{MAX_M}")
        masks = set()
        for face in faces:
            if isinstance(face, int):
                if face >> m:
                    raise InstanceError(f"face mask {face:b} has labels above m={m}")
                masks.add(face)
                continue
            labels = list(face)
            if len(set(labels)) != len(labels):
                raise InstanceError(f"face {labels} repeats a label")
            for v in labels:
                if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= m:
                    raise InstanceError(f"label {v!r} outside 1..{m}")
            masks.add(vmask(labels))
        if close:
            closed: set[Face] = set()
            for f in masks:
                if f not in closed:
                    closed.update(submasks(f))
            masks = closed
        return cls(m, frozenset(masks))

    @classmethod
    def from_maximal_faces(cls, m: int, faces: Iterable) -> "SimplicialComplex":
        return cls.from_faces(m, faces, close=True)

    @classmethod
    def simplex(cls, m: int) -> "SimplicialComplex":
        return cls(m, frozenset(range(1 << m)))

    def __contains__(self, face) -> bool:
        return _as_mask(face) in self.faces

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self) -> Iterator[Face]:
        return iter(sorted(self.faces, key=lambda f: (f.bit_count(), vlabels(f))))

    @property
    def dim(self) -> int:
        return max((f.bit_count() for f in self.faces), default=0) - 1

    def is_hereditary(self) -> bool:
        for f in self.faces:
            g = f
            while g:
                low = g & -g
                if f ^ low not in self.faces:
                    return False
                g ^= low
        return True

    def closure(self) -> "SimplicialComplex":
        closed: set[Face] = set()
        for f in self.faces:
            if f not in closed:
                closed.update(submasks(f))
        return SimplicialComplex(self.m, frozenset(closed))

    def maximal_faces(self) -> list[Face]:
        full = ground_mask(self.m)
        out = []
        for f in self.faces:
            rest = full & ~f
            maximal = True
            while rest:
                low = rest & -rest
                if f | low in self.faces:
                    maximal = False
                    break
                rest ^= low
            if maximal:
                out.append(f)
        return sorted(out, key=vlabels)

    def count_by_size(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for f in self.faces:
            n = f.bit_count()
            out[n] = out.get(n, 0) + 1
        return dict(sorted(out.items()))


@dataclass(frozen=True)
class Coloring:
    """Partition of [m] into color classes C_1 ... C_{k+1} (stored as masks)."""

    m: int
    classes: tuple[Face, ...]

    def __post_init__(self):
        seen = 0
        for cls_mask in self.classes:
            if cls_mask & seen:
                raise InstanceError("color classes overlap")
            seen |= cls_mask
        if seen != ground_mask(self.m):
            raise InstanceError(f"color classes do not cover [1..{self.m}]")

    @classmethod
    def from_classes(cls, m: int, classes: Sequence[Iterable[int]]) -> "Coloring":
        masks = []
        for labels in classes:
            labels = list(labels)
            for v in labels:
                if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= m:
                    raise InstanceError(f"color label {v!r} outside 1..{m}")
            if len(set(labels)) != len(labels):
                raise InstanceError(f"color class {labels} repeats a label")
            masks.append(vmask(labels))
        return cls(m, tuple(masks))

    @classmethod
    def contiguous(cls, r: int, k: int) -> "Coloring":
        """k+1 consecutive blocks of 2r-1 labels each."""
        size = 2 * r - 1
        classes = tuple(((1 << size) - 1) << (i * size) for i in range(k + 1))
        return cls(size * (k + 1), classes)

    @property
    def num_colors(self) -> int:
        return len(self.classes)

    def sizes(self) -> tuple[int, ...]:
        return tuple(c.bit_count() for c in self.classes)

    def color_of(self, v: int) -> int:
        """0-based index of the class containing label ``v``."""
        bit = 1 << (v - 1)
        for i, c in enumerate(self.classes):
            if c & bit:
                return i
        raise KeyError(v)

    def is_rainbow(self, face) -> bool:
        f = _as_mask(face)
        for c in self.classes:
            x = f & c
            if x & (x - 1):
                return False
        return True

    def as_lists(self) -> list[list[int]]:
        return [list(vlabels(c)) for c in self.classes]


@dataclass(frozen=True, slots=True)
class LabeledPartition:
    """Ordered parts (A_1, ..., A_r) of [m]; the remainder B is implicit.

    The all-empty partition is representable (the Morse module uses it as a
    sentinel) but it is not a cell of a join; see :attr:`is_empty`.
    """

    m: int
    parts: tuple[Face, ...]

    def __post_init__(self):
        seen = 0
        for p in self.parts:
            if p & seen:
                raise ValueError("parts overlap")
            seen |= p
        if seen >> self.m:
            raise ValueError(f"part labels exceed m={self.m}")

    @classmethod
    def from_sets(cls, m: int, parts: Sequence[Iterable[int]]) -> "LabeledPartition":
        return cls(m, tuple(vmask(p) for p in parts))

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def union(self) -> Face:
        out = 0
        for p in self.parts:
            out |= p
        return out

    @property
    def remainder(self) -> Face:
        return ground_mask(self.m) & ~self.union

    @property
    def size(self) -> int:
        return sum(p.bit_count() for p in self.parts)

    @property
    def dim(self) -> int:
        return self.size - 1

    @property
    def is_empty(self) -> bool:
        return not any(self.parts)

    def toggle(self, v: int, j: int) -> "LabeledPartition":
        """Move label ``v`` between part ``j`` (0-based) and the remainder."""
        parts = list(self.parts)
        parts[j] ^= 1 << (v - 1)
        return LabeledPartition(self.m, tuple(parts))

    def facets(self) -> Iterator[tuple["LabeledPartition", int, int]]:
        """Yield (facet, part index, label) for each single-vertex deletion."""
        for j, p in enumerate(self.parts):
            for v in vlabels(p):
                parts = list(self.parts)
                parts[j] = p & ~(1 << (v - 1))
                yield LabeledPartition(self.m, tuple(parts)), j, v

    def cofaces(self) -> Iterator[tuple["LabeledPartition", int, int]]:
        """Yield every partition obtained by moving one remainder label into a part."""
        rest = vlabels(self.remainder)
        for j in range(self.r):
            for v in rest:
                parts = list(self.parts)
                parts[j] |= 1 << (v - 1)
                yield LabeledPartition(self.m, tuple(parts)), j, v

    def as_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(vlabels(p) for p in self.parts)

    def sort_key(self):
        """Order by size, then by the assignment word (parts before B)."""
        word = []
        for v in range(self.m):
            bit = 1 << v
            for j, p in enumerate(self.parts):
                if p & bit:
                    word.append(j)
                    break
            else:
                word.append(self.r)
        return (self.size, tuple(word))

    def to_json(self) -> dict:
        return {"parts": [list(s) for s in self.as_sets()], "B": list(vlabels(self.remainder))}

    @classmethod
    def from_json(cls, m: int, data: dict) -> "LabeledPartition":
        return cls.from_sets(m, data["parts"])

    def __repr__(self) -> str:
        inner = ", ".join("{" + ",".join(map(str, s)) + "}" for s in self.as_sets())
        rest = ",".join(map(str, vlabels(self.remainder)))
        return f"({inner}; B={{{rest}}})"


@dataclass(frozen=True)
class ComplexFamily:
    members: tuple[SimplicialComplex, ...]

    def __post_init__(self):
        if not self.members:
            raise InstanceError("a complex family needs at least one member")
        ms = {K.m for K in self.members}
        if len(ms) != 1:
            raise InstanceError(f"family members disagree on ground size: {sorted(ms)}")

    @property
    def m(self) -> int:
        return self.members[0].m

    @property
    def r(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, i: int) -> SimplicialComplex:
        return self.members[i]

    def __iter__(self) -> Iterator[SimplicialComplex]:
        return iter(self.members)


# --- operations -----------------------------------------------------------


def skeleton(K: SimplicialComplex, d: int) -> SimplicialComplex:
    if d < -1:
        raise ValueError("skeleton level must be >= -1")
    return SimplicialComplex(K.m, frozenset(f for f in K.faces if f.bit_count() <= d + 1))


def simplex_skeleton(m: int, d: int) -> SimplicialComplex:
    """Delta_[m]^{(d)}: all subsets of [m] with at most d+1 labels."""
    faces = [0]
    for size in range(1, min(d + 1, m) + 1):
        for combo in itertools.combinations(range(m), size):
            f = 0
            for v in combo:
                f |= 1 << v
            faces.append(f)
    return SimplicialComplex(m, frozenset(faces) if d >= -1 else frozenset())


def is_rainbow(F, c: Coloring) -> bool:
    return c.is_rainbow(F)


def rainbow_complex(c: Coloring, dim_cap: int) -> SimplicialComplex:
    """ColDelta^{(dim_cap)}: rainbow sets with at most dim_cap+1 labels."""
    if dim_cap < -1:
        raise ValueError("dim_cap must be >= -1")
    options = [[0] + [1 << (v - 1) for v in vlabels(cls)] for cls in c.classes]
    faces = set()
    for pick in itertools.product(*options):
        f = 0
        n = 0
        for bit in pick:
            if bit:
                f |= bit
                n += 1
        if n <= dim_cap + 1:
            faces.add(f)
    return SimplicialComplex(c.m, frozenset(faces))


def _rainbow_count_up_to(c: Coloring, size: int) -> int:
    # elementary symmetric sums of the class sizes
    e = [1]
    for n in c.sizes():
        e = [(e[j] if j < len(e) else 0) + (n * e[j - 1] if j >= 1 else 0) for j in range(len(e) + 1)]
    return sum(e[: size + 1])


def is_balanced(K: SimplicialComplex, m: int, k: int) -> bool:
    """Delta^{(k-1)} <= K <= Delta^{(k)} on [m]."""
    if K.m != m:
        return False
    small = 0
    for f in K.faces:
        n = f.bit_count()
        if n > k + 1:
            return False
        if n <= k:
            small += 1
    return small == sum(comb(m, j) for j in range(k + 1))


def is_rainbow_balanced(K: SimplicialComplex, c: Coloring, k: int) -> bool:
    """ColDelta^{(k-1)} <= K <= ColDelta^{(k)} for the coloring ``c``."""
    if K.m != c.m:
        return False
    small = 0
    for f in K.faces:
        n = f.bit_count()
        if n > k + 1 or not c.is_rainbow(f):
            return False
        if n <= k:
            small += 1
    return small == _rainbow_count_up_to(c, k)


def admissible_assignment(parts: Sequence[Face], fam: ComplexFamily) -> tuple[int, ...] | None:
    """Return ``pi`` with ``parts[pi[i]]`` in ``fam[i]`` for every i, or None.

    Perfect matching on the r x r membership relation by augmenting paths.
    """
    r = len(parts)
    if r != fam.r:
        raise ValueError(f"partition has {r} parts, family has {fam.r} members")
    adj = [[i for i, K in enumerate(fam.members) if p in K.faces] for p in parts]
    owner = [-1] * r  # complex index -> part index

    def augment(j: int, seen: list[bool]) -> bool:
        for i in adj[j]:
            if not seen[i]:
                seen[i] = True
                if owner[i] < 0 or augment(owner[i], seen):
                    owner[i] = j
                    return True
        return False

    for j in range(r):
        if not adj[j] or not augment(j, [False] * r):
            return None
    return tuple(owner)


def is_admissible(pi: LabeledPartition | Sequence[Face], fam: ComplexFamily) -> bool:
    parts = pi.parts if isinstance(pi, LabeledPartition) else tuple(pi)
    return admissible_assignment(parts, fam) is not None


def iter_assignments(
    m: int,
    r: int,
    sizes: Iterable[int] | None = None,
    allow: Callable[[int, Face], bool] | None = None,
) -> Iterator[tuple[Face, ...]]:
    """Yield part tuples (A_1, ..., A_r) covering every ordered partition of [m].

    Order: by total size sum |A_i|, then lexicographically by the assignment
    word (vertex 1 first; part 1 < ... < part r < remainder). ``allow(j, A)``
    prunes any branch in which part ``j`` would become ``A``; it must be
    monotone (once false, false for all supersets).
    """
    for t in range(m + 1) if sizes is None else sizes:
        parts = [0] * r

        def rec(v: int, left: int) -> Iterator[tuple[Face, ...]]:
            if left == 0:
                yield tuple(parts)
                return
            if m - v < left:
                return
            bit = 1 << v
            for j in range(r):
                new = parts[j] | bit
                if allow is not None and not allow(j, new):
                    continue
                parts[j] = new
                yield from rec(v + 1, left - 1)
                parts[j] ^= bit
            yield from rec(v + 1, left)

        yield from rec(0, t)


def enumerate_symm_deleted_join(fam: ComplexFamily, cap: int | None = None) -> Iterator[LabeledPartition]:
    """Yield every cell of SymmDelJoin(fam) exactly once, in ``sort_key`` order."""
    m, r = fam.m, fam.r
    check_cap(m, r, cap)
    union = frozenset().union(*(K.faces for K in fam.members))
    for parts in iter_assignments(m, r, range(1, m + 1), lambda j, f: f in union):
        if admissible_assignment(parts, fam) is not None:
            yield LabeledPartition(m, parts)


def symm_deleted_join_cells(fam: ComplexFamily, cap: int | None = None) -> list[LabeledPartition]:
    return list(enumerate_symm_deleted_join(fam, cap))
