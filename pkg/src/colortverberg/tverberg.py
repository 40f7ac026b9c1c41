"""Affine Tverberg search: rational point configurations and exact hull tests."""

from __future__ import annotations

from random import Random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .complex import (
    ComplexFamily,
    Face,
    LabeledPartition,
    admissible_assignment,
    enumerate_symm_deleted_join,
    vlabels,
)
from .errors import InstanceError
from .lp import feasible_point

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class PointConfiguration:
    """Vertex ``v`` of the simplex is sent to ``points[v - 1]`` in R^d."""

    d: int
    points: tuple[Point, ...]

    def __post_init__(self):
        if self.d < 1:
            raise InstanceError("dimension d must be >= 1")
        for n, p in enumerate(self.points, 1):
            if len(p) != self.d:
                raise InstanceError(f"point {n} has {len(p)} coordinates, expected d={self.d}")

    @property
    def m(self) -> int:
        return len(self.points)

    def point(self, v: int) -> Point:
        return self.points[v - 1]

    @classmethod
    def from_json(cls, data: dict) -> "PointConfiguration":
        try:
            d = int(data["d"])
            pts = tuple(tuple(Fraction(str(x)) for x in p) for p in data["points"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InstanceError(f"bad point file: {exc}") from exc
        return cls(d, pts)

    def to_json(self) -> dict:
        return {"d": self.d, "points": [[str(x) for x in p] for p in self.points]}

    @classmethod
    def random(cls, m: int, d: int, rng: Random, bound: int = 20, den: int = 7) -> "PointConfiguration":
        pts = tuple(
            tuple(Fraction(rng.randint(-bound * den, bound * den), rng.randint(1, den)) for _ in range(d))
            for _ in range(m)
        )
        return cls(d, pts)


def hulls_intersect(config: PointConfiguration, faces: Sequence[Iterable[int] | Face]) -> Point | None:
    """A common point of conv(f(face)) over all faces, or None (exact)."""
    faces = [vlabels(f) if isinstance(f, int) else tuple(f) for f in faces]
    if not faces or any(not f for f in faces):
        return None
    d = config.d
    cols = [(i, v) for i, f in enumerate(faces) for v in f]
    n = len(cols)
    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    for i in range(len(faces)):
        A.append([Fraction(1) if ci == i else Fraction(0) for ci, _ in cols])
        b.append(Fraction(1))
    for i in range(1, len(faces)):
        for t in range(d):
            row = [Fraction(0)] * n
            for c, (ci, v) in enumerate(cols):
                if ci == 0:
                    row[c] = config.point(v)[t]
                elif ci == i:
                    row[c] = -config.point(v)[t]
            A.append(row)
            b.append(Fraction(0))
    lam = feasible_point(A, b)
    if lam is None:
        return None
    return tuple(
        sum((lam[c] * config.point(v)[t] for c, (ci, v) in enumerate(cols) if ci == 0), Fraction(0))
        for t in range(d)
    )


def convex_weights(config: PointConfiguration, face: Sequence[int], x: Point) -> list[Fraction] | None:
    """Barycentric weights expressing x over f(face), or None."""
    A = [[Fraction(1)] * len(face)] + [[config.point(v)[t] for v in face] for t in range(config.d)]
    b = [Fraction(1)] + list(x)
    return feasible_point(A, b)


@dataclass(frozen=True)
class TverbergWitness:
    """Disjoint faces with ``faces[i]`` in K_{i+1} and a common hull point."""

    faces: tuple[tuple[int, ...], ...]
    point: Point
    weights: tuple[tuple[Fraction, ...], ...]

    def verify(self, config: PointConfiguration, fam: ComplexFamily) -> list[str]:
        """Exact re-check; returns the list of failures (empty when sound)."""
        problems = []
        seen: set[int] = set()
        for i, face in enumerate(self.faces, 1):
            if seen & set(face):
                problems.append(f"face {i} overlaps an earlier face")
            seen |= set(face)
            if face not in fam[i - 1]:
                problems.append(f"face {i} = {list(face)} is not in K_{i}")
        for i, (face, w) in enumerate(zip(self.faces, self.weights), 1):
            if len(w) != len(face) or any(x < 0 for x in w) or sum(w) != 1:
                problems.append(f"weights of face {i} are not a convex combination")
                continue
            comb = tuple(sum((wv * config.point(v)[t] for wv, v in zip(w, face)), Fraction(0))
                         for t in range(config.d))
            if comb != tuple(self.point):
                problems.append(f"face {i} weights do not reproduce the point")
        return problems

    def dims(self) -> list[int]:
        return [len(f) - 1 for f in self.faces]

    def to_json(self) -> dict:
        return {
            "faces": [list(f) for f in self.faces],
            "point": [str(x) for x in self.point],
            "weights": [[str(x) for x in w] for w in self.weights],
            "memberships": [f"K_{i}" for i in range(1, len(self.faces) + 1)],
        }


def search_tverberg(
    config: PointConfiguration,
    fam: ComplexFamily,
    cells: Sequence[LabeledPartition] | None = None,
    cap: int | None = None,
) -> TverbergWitness | None:
    """First admissible partition (in cell order) whose part hulls meet.

    None means no witness exists among the cells of the join: this is a
    reportable outcome, not an error.
    """
    if config.m != fam.m:
        raise InstanceError(f"configuration has {config.m} points, family is on [{fam.m}]")
    if cells is None:
        cells = enumerate_symm_deleted_join(fam, cap)
    for cell in cells:
        if not all(cell.parts):
            continue
        x = hulls_intersect(config, cell.parts)
        if x is None:
            continue
        pi = admissible_assignment(cell.parts, fam)
        faces = tuple(vlabels(cell.parts[pi[i]]) for i in range(fam.r))
        weights = tuple(tuple(convex_weights(config, f, x)) for f in faces)
        return TverbergWitness(faces, x, weights)
    return None
