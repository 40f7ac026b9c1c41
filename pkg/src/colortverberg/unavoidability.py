"""Brute-force deciders for (collective, rainbow) (r,s)-unavoidability.

Every decider quantifies over ordered partitions (A_1, ..., A_r, B) of [m];
empty parts are allowed. Candidates are scanned in the order of
:func:`colortverberg.complex.iter_assignments`, so the witness returned is the
first violation by (total size, assignment word).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .complex import (
    Coloring,
    ComplexFamily,
    Face,
    LabeledPartition,
    SimplicialComplex,
    check_cap,
    iter_assignments,
)
from .errors import PreconditionError


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: LabeledPartition | None = None
    violations: int | None = None  # only counted in census mode
    checked: int = 0

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        out: dict = {"holds": self.holds, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.violations is not None:
            out["violations"] = self.violations
        return out


def _scan(
    m: int,
    candidates: Iterable[tuple[Face, ...]],
    members: Sequence[frozenset[Face]],
    s: int,
    census: bool,
) -> Verdict:
    witness = None
    violations = 0
    checked = 0
    for parts in candidates:
        checked += 1
        hits = 0
        for A, faces in zip(parts, members):
            if A in faces:
                hits += 1
                if hits >= s:
                    break
        if hits < s:
            if witness is None:
                witness = LabeledPartition(m, parts)
            violations += 1
            if not census:
                break
    return Verdict(witness is None, witness, violations if census else None, checked)


def is_rs_unavoidable_single(
    K: SimplicialComplex, r: int, s: int, census: bool = False, cap: int | None = None
) -> Verdict:
    """Every ordered disjoint r-tuple has at least s coordinates in K."""
    if r < 1 or not 0 < s <= r:
        raise ValueError(f"need r >= 1 and 0 < s <= r, got r={r}, s={s}")
    check_cap(K.m, r, cap)
    return _scan(K.m, iter_assignments(K.m, r), [K.faces] * r, s, census)


def is_r_unavoidable(K: SimplicialComplex, r: int, census: bool = False, cap: int | None = None) -> Verdict:
    return is_rs_unavoidable_single(K, r, 1, census, cap)


def is_collectively_rs_unavoidable(
    fam: ComplexFamily, s: int, census: bool = False, cap: int | None = None
) -> Verdict:
    """Every ordered disjoint tuple has at least s coordinates with A_i in K_i."""
    if not 0 < s <= fam.r:
        raise ValueError(f"need 0 < s <= r={fam.r}, got s={s}")
    check_cap(fam.m, fam.r, cap)
    members = [K.faces for K in fam.members]
    return _scan(fam.m, iter_assignments(fam.m, fam.r), members, s, census)


@lru_cache(maxsize=32)
def rainbow_partitions(c: Coloring, r: int) -> tuple[tuple[Face, ...], ...]:
    """All ordered partitions of [m] into r rainbow parts plus a remainder."""
    return tuple(iter_assignments(c.m, r, allow=lambda j, f: c.is_rainbow(f)))


def is_rs_rainbow_unavoidable(
    fam: ComplexFamily, c: Coloring, s: int, census: bool = False, cap: int | None = None
) -> Verdict:
    """Every rainbow partition has at least s coordinates with A_i in K_i."""
    if not 0 < s <= fam.r:
        raise ValueError(f"need 0 < s <= r={fam.r}, got s={s}")
    if c.m != fam.m:
        raise PreconditionError(f"coloring is on [{c.m}], family on [{fam.m}]")
    for i, K in enumerate(fam.members, 1):
        bad = next((f for f in K.faces if not c.is_rainbow(f)), None)
        if bad is not None:
            raise PreconditionError(f"K_{i} is not rainbow: face mask {bad:b}")
    check_cap(fam.m, fam.r, cap)
    members = [K.faces for K in fam.members]
    return _scan(fam.m, rainbow_partitions(c, fam.r), members, s, census)


def violates(witness: LabeledPartition, members: Sequence[SimplicialComplex], s: int) -> bool:
    """Independent re-check: fewer than s coordinates satisfy A_i in K_i."""
    return sum(1 for A, K in zip(witness.parts, members) if A in K) < s


DECIDERS: dict[str, Callable] = {
    "r": is_r_unavoidable,
    "rs": is_rs_unavoidable_single,
    "collective-rs": is_collectively_rs_unavoidable,
    "rainbow-rs": is_rs_rainbow_unavoidable,
}
