"""JSON interchange for problem instances and point files.

Instance schema::

    {"m": int, "r": int, "k": int, "s": int, "d": int,
     "coloring": [[labels of C_1], ...] | null,
     "complexes": [{"maximal_faces": [[labels], ...]}, ...]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .complex import Coloring, ComplexFamily, SimplicialComplex, vlabels
from .errors import InstanceError
from .params import Parameters
from .tverberg import PointConfiguration


@dataclass(frozen=True)
class Instance:
    family: ComplexFamily
    k: int
    s: int
    d: int
    coloring: Coloring | None = None

    @property
    def m(self) -> int:
        return self.family.m

    @property
    def r(self) -> int:
        return self.family.r

    @property
    def params(self) -> Parameters:
        return Parameters(r=self.r, d=self.d, k=self.k, s=self.s, m=self.m)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "r": self.r,
            "k": self.k,
            "s": self.s,
            "d": self.d,
            "coloring": self.coloring.as_lists() if self.coloring else None,
            "complexes": [{"maximal_faces": [list(vlabels(f)) for f in K.maximal_faces()]}
                          for K in self.family],
        }


def _int(data: dict, key: str, minimum: int) -> int:
    v = data.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise InstanceError(f"field {key!r} must be an integer, got {v!r}")
    if v < minimum:
        raise InstanceError(f"field {key!r} must be >= {minimum}, got {v}")
    return v


def instance_from_json(data: dict) -> Instance:
    if not isinstance(data, dict):
        raise InstanceError("instance must be a JSON object")
    m = _int(data, "m", 1)
    r = _int(data, "r", 1)
    k = _int(data, "k", 0)
    s = _int(data, "s", 1)
    d = _int(data, "d", 1)
    if s > r:
        raise InstanceError(f"s={s} exceeds r={r}")
    complexes = data.get("complexes")
    if not isinstance(complexes, list) or len(complexes) != r:
        raise InstanceError(f"'complexes' must list exactly r={r} complexes")
    members = []
    for n, entry in enumerate(complexes, 1):
        faces = entry.get("maximal_faces") if isinstance(entry, dict) else None
        if not isinstance(faces, list) or not all(isinstance(f, list) for f in faces):
            raise InstanceError(f"complex {n} needs a 'maximal_faces' list of label lists")
        try:
            members.append(SimplicialComplex.from_maximal_faces(m, faces))
        except InstanceError as exc:
            raise InstanceError(f"complex {n}: {exc}") from exc
    coloring = None
    raw = data.get("coloring")
    if raw:
        if not isinstance(raw, list) or not all(isinstance(c, list) for c in raw):
            raise InstanceError("'coloring' must be a list of label lists")
        coloring = Coloring.from_classes(m, raw)
        if coloring.num_colors != k + 1:
            raise InstanceError(f"coloring has {coloring.num_colors} classes, expected k+1 = {k + 1}")
    return Instance(ComplexFamily(tuple(members)), k, s, d, coloring)


def _read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path} is not valid JSON: {exc}") from exc


def load_instance(path) -> Instance:
    return instance_from_json(_read_json(path))


def save_instance(inst: Instance, path) -> None:
    Path(path).write_text(json.dumps(inst.to_json(), indent=1) + "\n")


def load_points(path) -> PointConfiguration:
    return PointConfiguration.from_json(_read_json(path))
