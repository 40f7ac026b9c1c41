"""Reduced simplicial homology of the symmetrized deleted join.

A join cell (A_1, ..., A_r, B) is a simplex on the vertex set (part, label),
ordered part-major and label-minor. The boundary deletes one vertex at a time
into B with sign (-1)^position in that order. The chain complex is augmented
by the empty cell in dimension -1, so ranks come out reduced.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import ComplexFamily, LabeledPartition, enumerate_symm_deleted_join, vlabels
from .linalg import SparseColumn, compose_is_zero, invariant_factors, rank_mod_p, rank_rational
from .params import Parameters, prime_power

DENSE_SNF_LIMIT = 400


def _parse_ring(coefficients: str, p: int | None) -> tuple[str, int | None]:
    if coefficients in ("rational", "Q"):
        return "rational", None
    if coefficients in ("integer", "Z"):
        return "integer", None
    if coefficients.startswith("mod"):
        tail = coefficients[3:].lstrip("-")
        if tail and tail != "p":
            p = int(tail)
        if p is None or prime_power(p) != (p, 1):
            raise ValueError(f"mod-p coefficients need a prime p, got {p}")
        return "mod", p
    raise ValueError(f"unknown coefficient ring {coefficients!r}")


@dataclass
class ChainComplex:
    bases: dict[int, list[LabeledPartition]]
    boundaries: dict[int, list[SparseColumn]]  # q -> columns over q-cells, rows over (q-1)-cells
    coefficients: str = "rational"
    p: int | None = None

    @property
    def top_dim(self) -> int:
        return max(self.bases)

    def cell_counts(self) -> dict[int, int]:
        return {q: len(b) for q, b in sorted(self.bases.items())}

    def reduced_euler(self) -> int:
        return sum((1 if q % 2 == 0 else -1) * len(b) for q, b in self.bases.items())

    def boundary_squared_zero(self) -> dict[int, bool]:
        return {
            q: compose_is_zero(self.boundaries[q - 1], self.boundaries[q])
            for q in sorted(self.boundaries)
            if q - 1 in self.boundaries
        }


def boundary_column(cell: LabeledPartition, row_index: dict[LabeledPartition, int]) -> SparseColumn:
    col: SparseColumn = {}
    pos = 0
    m = cell.m
    for j, part in enumerate(cell.parts):
        for v in vlabels(part):
            parts = list(cell.parts)
            parts[j] = part & ~(1 << (v - 1))
            face = LabeledPartition(m, tuple(parts))
            col[row_index[face]] = -1 if pos % 2 else 1
            pos += 1
    return col


def build_chain_complex(
    fam: ComplexFamily,
    coefficients: str = "rational",
    p: int | None = None,
    cells: list[LabeledPartition] | None = None,
    cap: int | None = None,
) -> ChainComplex:
    ring, p = _parse_ring(coefficients, p)
    if cells is None:
        cells = list(enumerate_symm_deleted_join(fam, cap))
    empty = LabeledPartition(fam.m, (0,) * fam.r)
    bases: dict[int, list[LabeledPartition]] = {-1: [empty]}
    for cell in cells:
        bases.setdefault(cell.dim, []).append(cell)
    index = {q: {c: n for n, c in enumerate(b)} for q, b in bases.items()}
    boundaries = {}
    for q in sorted(bases):
        if q < 0:
            continue
        rows = index[q - 1]
        boundaries[q] = [boundary_column(c, rows) for c in bases[q]]
    cc = ChainComplex(bases, boundaries, ring, p)
    bad = [q for q, ok in cc.boundary_squared_zero().items() if not ok]
    if bad:
        raise AssertionError(f"boundary squared is nonzero in dimensions {bad}")
    return cc


@dataclass
class HomologyResult:
    coefficients: str
    betti: dict[int, int]  # reduced ranks, q >= -1
    boundary_ranks: dict[int, int]
    torsion: dict[int, list[int]] = field(default_factory=dict)
    through_dim: int | None = None

    def to_json(self) -> dict:
        out = {"coefficients": self.coefficients,
               "betti": {str(q): b for q, b in self.betti.items()},
               "boundary_ranks": {str(q): b for q, b in self.boundary_ranks.items()}}
        if self.torsion:
            out["torsion"] = {str(q): t for q, t in self.torsion.items()}
        if self.through_dim is not None:
            out["through_dim"] = self.through_dim
        return out


def reduced_homology_ranks(
    cc: ChainComplex,
    coefficients: str | None = None,
    p: int | None = None,
    through_dim: int | None = None,
) -> HomologyResult:
    """Reduced Betti numbers from boundary ranks: n_q - rk d_q - rk d_{q+1}."""
    ring, p = _parse_ring(coefficients, p) if coefficients else (cc.coefficients, cc.p)
    top = cc.top_dim if through_dim is None else min(cc.top_dim, through_dim)

    def rank(cols):
        if ring == "mod":
            return rank_mod_p(cols, p)
        return rank_rational(cols)

    ranks = {q: rank(cc.boundaries[q]) for q in sorted(cc.boundaries) if q <= top + 1}
    betti = {}
    for q in range(-1, top + 1):
        n = len(cc.bases.get(q, []))
        betti[q] = n - ranks.get(q, 0) - ranks.get(q + 1, 0)
    torsion = {}
    if ring == "integer":
        for q in range(-1, top + 1):
            cols = cc.boundaries.get(q + 1)
            if not cols:
                continue
            if len(cols) > DENSE_SNF_LIMIT or len(cc.bases[q]) > DENSE_SNF_LIMIT:
                raise ValueError(f"integer torsion capped: d_{q + 1} exceeds {DENSE_SNF_LIMIT} cells")
            factors = [f for f in invariant_factors(cols, len(cc.bases[q])) if f > 1]
            if factors:
                torsion[q] = factors
    label = f"mod-{p}" if ring == "mod" else ring
    return HomologyResult(label, betti, ranks, torsion, through_dim)


def morse_inequality_violations(betti: dict[int, int], critical_by_dim: dict[int, int]) -> list[int]:
    """Dimensions q >= 0 where rank H~_q exceeds the number of critical q-cells."""
    return [q for q, b in betti.items() if q >= 0 and b > critical_by_dim.get(q, 0)]


def euler_identity(cc: ChainComplex, res: HomologyResult) -> bool:
    if res.through_dim is not None and res.through_dim < cc.top_dim:
        raise ValueError("Euler identity needs ranks in every dimension")
    return cc.reduced_euler() == sum((1 if q % 2 == 0 else -1) * b for q, b in res.betti.items())


@dataclass
class ConnectivityVerdict:
    """Homology-level verdict; ``ok`` means H~_q = 0 for all q <= level."""

    level: int
    ok: bool
    vanishing: dict[str, bool]
    connected: bool
    results: list[HomologyResult]
    complex: ChainComplex
    euler_identity: dict[str, bool]
    disagreement: list[int]

    def to_json(self) -> dict:
        return {
            "kind": "homology-level",
            "level": self.level,
            "status": "PASS" if self.ok else "FAIL",
            "vanishing": self.vanishing,
            "connected": self.connected,
            "cell_counts": {str(q): n for q, n in self.complex.cell_counts().items()},
            "euler_characteristic": self.complex.reduced_euler() + 1,
            "euler_identity": self.euler_identity,
            "coefficient_disagreement": self.disagreement,
            "results": [res.to_json() for res in self.results],
        }


def verify_connectivity_bound(
    fam: ComplexFamily,
    params: Parameters,
    primes: list[int] | None = None,
    cells: list[LabeledPartition] | None = None,
    cap: int | None = None,
) -> ConnectivityVerdict:
    """Check that H~_q vanishes for q <= rk+s-2 over Q and each GF(p).

    Vanishing homology is necessary but not sufficient for topological
    connectivity; pair this with the Morse certificate.
    """
    level = params.connectivity
    if primes is None:
        primes = [params.prime or 2]
    cc = build_chain_complex(fam, cells=cells, cap=cap)
    results = [reduced_homology_ranks(cc)] + [reduced_homology_ranks(cc, "mod", p) for p in primes]
    vanish = {res.coefficients: all(res.betti.get(q, 0) == 0 for q in range(-1, level + 1))
              for res in results}
    base = results[0].betti
    disagree = sorted({q for res in results[1:] for q in res.betti if res.betti[q] != base.get(q)})
    euler = {res.coefficients: euler_identity(cc, res) for res in results}
    connected = bool(cc.bases.get(0)) and all(res.betti.get(0, 0) == 0 for res in results)
    ok = all(vanish.values()) and connected
    return ConnectivityVerdict(level, ok, vanish, connected, results, cc, euler, disagree)
