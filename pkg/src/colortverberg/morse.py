"""Discrete Morse matching on the symmetrized deleted join, plus its verifiers.

The matching runs in r big steps of k+1 small steps. Step (j, i) computes for
each unmatched cell the pivot

    a_j^i = min(((A_j | B) minus [1, a_{j-1}^i]) & C_i)

(no subtraction for j = 1) and pairs the cell having a_j^i in B with the cell
having it in A_j, provided both are cells and both are still unmatched.
Moving a_j^i between A_j and B leaves A_j | B unchanged, and every earlier
pivot of the same color is smaller than a_j^i, so both cells of a candidate
pair compute the same pivot: the rule is an involution within each step.

Steps and part/color indices are 1-based in every public record and 0-based
internally.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

from .complex import (
    Coloring,
    ComplexFamily,
    LabeledPartition,
    admissible_assignment,
    enumerate_symm_deleted_join,
    is_rainbow_balanced,
)
from .errors import MatchingError, PreconditionError
from .params import Parameters
from .unavoidability import is_rs_rainbow_unavoidable

ILL_DEFINED = math.inf  # compares above every label
UNREACHED = None  # cell was matched before this step

Step = tuple[int, int]


class Pair(NamedTuple):
    alpha: LabeledPartition  # lower cell, pivot in B
    beta: LabeledPartition  # upper cell, pivot in A_j
    step: Step | None = None


@dataclass(frozen=True)
class MorseTrace:
    """Pivot table of one cell: ``pivots[j][i]`` for part j+1 and color i+1."""

    cell: LabeledPartition
    pivots: tuple[tuple, ...]
    match_step: Step | None
    notes: tuple[tuple[int, int, int], ...] = ()  # (j, i, unmatched type)

    @property
    def pi(self) -> tuple:
        """Pivots in step order, truncated where the cell stopped being processed."""
        out = []
        for row in self.pivots:
            for a in row:
                if a is UNREACHED:
                    return tuple(out)
                out.append(a)
        return tuple(out)

    def to_json(self) -> dict:
        enc = [["ill" if a == ILL_DEFINED else a for a in row] for row in self.pivots]
        return {"cell": self.cell.to_json(), "pivots": enc,
                "match_step": list(self.match_step) if self.match_step else None,
                "notes": [list(n) for n in self.notes]}


@dataclass(frozen=True)
class DiscreteVectorField:
    pairs: tuple[Pair, ...]
    critical: tuple[LabeledPartition, ...]

    @cached_property
    def up(self) -> dict[LabeledPartition, LabeledPartition]:
        return {p.alpha: p.beta for p in self.pairs}

    @cached_property
    def down(self) -> dict[LabeledPartition, LabeledPartition]:
        return {p.beta: p.alpha for p in self.pairs}

    @cached_property
    def steps(self) -> dict[LabeledPartition, Step | None]:
        out = {}
        for p in self.pairs:
            out[p.alpha] = p.step
            out[p.beta] = p.step
        return out

    def critical_by_dim(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.critical:
            out[c.dim] = out.get(c.dim, 0) + 1
        return dict(sorted(out.items()))

    def pair_set(self) -> set[tuple[LabeledPartition, LabeledPartition]]:
        return {(p.alpha, p.beta) for p in self.pairs}


@dataclass
class MorseRun:
    field: DiscreteVectorField
    traces: dict[LabeledPartition, MorseTrace]
    cells: list[LabeledPartition]
    warnings: list[str] = field(default_factory=list)


# --- the matching ---------------------------------------------------------


def check_matching_hypotheses(fam: ComplexFamily, c: Coloring, k: int, s: int | None) -> list[str]:
    """Return the list of violated hypotheses (empty when all hold)."""
    problems = []
    if c.m != fam.m:
        problems.append(f"coloring is on [{c.m}] but the family is on [{fam.m}]")
        return problems
    if c.num_colors != k + 1:
        problems.append(f"coloring has {c.num_colors} classes, expected k+1 = {k + 1}")
    for i, size in enumerate(c.sizes(), 1):
        if size != 2 * fam.r - 1:
            problems.append(f"|C_{i}| = {size}, expected 2r-1 = {2 * fam.r - 1}")
    for i, K in enumerate(fam.members, 1):
        if not is_rainbow_balanced(K, c, k):
            problems.append(f"K_{i} is not ({fam.m},{k})-rainbow balanced")
    all_rainbow = all(c.is_rainbow(f) for K in fam.members for f in K.faces)
    if s is not None and all_rainbow:
        verdict = is_rs_rainbow_unavoidable(fam, c, s)
        if not verdict.holds:
            problems.append(f"family is not ({fam.r},{s})-rainbow unavoidable; witness {verdict.witness}")
    return problems


def run_matching(
    fam: ComplexFamily,
    c: Coloring,
    k: int,
    s: int | None = None,
    *,
    force: bool = False,
    cells: Sequence[LabeledPartition] | None = None,
    cap: int | None = None,
) -> MorseRun:
    """Run steps 1.1 through r.(k+1) and return the field with per-cell traces.

    Hypotheses (rainbow balance, |C_i| = 2r-1, and rainbow unavoidability when
    ``s`` is given) raise :class:`PreconditionError` unless ``force`` is set, in
    which case they are reported as warnings.
    """
    problems = check_matching_hypotheses(fam, c, k, s)
    if c.m != fam.m or c.num_colors != k + 1:
        raise PreconditionError("; ".join(problems))
    if problems and not force:
        raise PreconditionError("; ".join(problems))
    for p in problems:
        warnings.warn(f"forced matching run: {p}", stacklevel=2)

    r, m = fam.r, fam.m
    if cells is None:
        cells = list(enumerate_symm_deleted_join(fam, cap))
    else:
        cells = list(cells)
    index = {cell.parts: x for x, cell in enumerate(cells)}
    n = len(cells)
    full = (1 << m) - 1
    unions = [cell.union for cell in cells]
    piv: list[list[list]] = [[[UNREACHED] * (k + 1) for _ in range(r)] for _ in range(n)]
    partner = [-1] * n
    match_step: list[Step | None] = [None] * n
    notes: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]

    def pivot(x: int, j: int, i: int):
        parts = cells[x].parts
        avail = (parts[j] | (full & ~unions[x])) & c.classes[i]
        if j:
            prev = piv[x][j - 1][i]
            avail &= ~((1 << prev) - 1)
        if not avail:
            piv[x][j][i] = ILL_DEFINED
            return ILL_DEFINED
        a = (avail & -avail).bit_length()
        piv[x][j][i] = a
        return a

    for j in range(r):
        for i in range(k + 1):
            for x in range(n):
                if partner[x] >= 0:
                    continue
                a = pivot(x, j, i)
                if a == ILL_DEFINED:
                    if j < r - 1:
                        raise MatchingError(
                            f"pivot a_{j + 1}^{i + 1} is ill-defined for unmatched cell {cells[x]}"
                        )
                    notes[x].append((j + 1, i + 1, 3))
                    continue
                bit = 1 << (a - 1)
                parts = cells[x].parts
                other = parts[:j] + (parts[j] ^ bit,) + parts[j + 1:]
                y = index.get(other)
                if y is None or partner[y] >= 0:
                    notes[x].append((j + 1, i + 1, 2 if parts[j] & bit else 1))
                    continue
                if pivot(y, j, i) != a:
                    raise MatchingError(f"partner cells {cells[x]} and {cells[y]} disagree on a_{j + 1}^{i + 1}")
                partner[x], partner[y] = y, x
                match_step[x] = match_step[y] = (j + 1, i + 1)

    pairs = []
    critical = []
    for x, cell in enumerate(cells):
        y = partner[x]
        if y < 0:
            critical.append(cell)
        elif cell.size < cells[y].size:
            pairs.append(Pair(cell, cells[y], match_step[x]))
    traces = {
        cell: MorseTrace(cell, tuple(tuple(row) for row in piv[x]), match_step[x], tuple(notes[x]))
        for x, cell in enumerate(cells)
    }
    return MorseRun(DiscreteVectorField(tuple(pairs), tuple(critical)), traces, cells, problems)


def compute_trace(cell: LabeledPartition, c: Coloring, k: int, stop: Step | None = None) -> MorseTrace:
    """Pivot table of ``cell`` computed through step ``stop`` (all steps if None).

    Pivots depend only on the cell itself, so this replays any field's traces.
    """
    r, m = cell.r, cell.m
    rest = ((1 << m) - 1) & ~cell.union
    rows = []
    done = False
    for j in range(r):
        row = []
        for i in range(k + 1):
            if done:
                row.append(UNREACHED)
                continue
            avail = (cell.parts[j] | rest) & c.classes[i]
            if j:
                prev = rows[j - 1][i]
                if prev == ILL_DEFINED:
                    avail = 0
                else:
                    avail &= ~((1 << prev) - 1)
            row.append((avail & -avail).bit_length() if avail else ILL_DEFINED)
            if stop is not None and (j + 1, i + 1) == tuple(stop):
                done = True
        rows.append(tuple(row))
    return MorseTrace(cell, tuple(rows), tuple(stop) if stop else None)


def replay_traces(dvf: DiscreteVectorField, c: Coloring, k: int) -> dict[LabeledPartition, MorseTrace]:
    steps = dvf.steps
    cells = list(steps) + [x for x in dvf.critical if x not in steps]
    return {x: compute_trace(x, c, k, steps.get(x)) for x in cells}


# --- verification -----------------------------------------------------------


@dataclass
class Report:
    name: str
    violations: list[dict] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, **detail) -> None:
        self.violations.append({"kind": kind, **{k: _jsonable(v) for k, v in detail.items()}})

    def to_json(self) -> dict:
        return {"check": self.name, "ok": self.ok, "violations": self.violations, "stats": self.stats}


def _jsonable(v):
    if isinstance(v, LabeledPartition):
        return v.to_json()
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    return v


def is_facet_pair(alpha: LabeledPartition, beta: LabeledPartition) -> bool:
    """beta arises from alpha by moving exactly one remainder vertex into one part."""
    if alpha.m != beta.m or alpha.r != beta.r:
        return False
    moved = 0
    for a, b in zip(alpha.parts, beta.parts):
        if a & ~b:
            return False
        if b != a:
            moved += 1
            if (b ^ a).bit_count() != 1:
                return False
    return moved == 1


def verify_vector_field(dvf: DiscreteVectorField, cells: Iterable[LabeledPartition]) -> Report:
    rep = Report("field")
    seen: dict[LabeledPartition, int] = {}
    for p in dvf.pairs:
        for x in (p.alpha, p.beta):
            seen[x] = seen.get(x, 0) + 1
        if not is_facet_pair(p.alpha, p.beta):
            rep.add("not_facet", alpha=p.alpha, beta=p.beta)
    for x in dvf.critical:
        seen[x] = seen.get(x, 0) + 1
    for x, n in seen.items():
        if n > 1:
            rep.add("duplicate", cell=x, occurrences=n)
    universe = set(cells)
    for x in seen:
        if x not in universe:
            rep.add("not_a_cell", cell=x)
    missing = [x for x in universe if x not in seen]
    for x in sorted(missing, key=LabeledPartition.sort_key):
        rep.add("uncovered", cell=x)
    rep.stats = {"pairs": len(dvf.pairs), "critical": len(dvf.critical), "cells": len(universe)}
    return rep


@dataclass
class AcyclicReport:
    acyclic: bool
    cycle: list[LabeledPartition]
    edges: int

    def to_json(self) -> dict:
        return {"check": "acyclic", "ok": self.acyclic, "edges": self.edges,
                "cycle": [x.to_json() for x in self.cycle]}


def _gradient_successors(dvf: DiscreteVectorField, alpha: LabeledPartition) -> list[LabeledPartition]:
    beta = dvf.up[alpha]
    return [f for f, _, _ in beta.facets() if f != alpha and f in dvf.up]


def verify_acyclic(dvf: DiscreteVectorField) -> AcyclicReport:
    """Search for a closed gradient path alpha_0, beta_0, ..., alpha_0.

    Only lower cells of pairs can continue a path, so the search runs on the
    graph alpha -> alpha' (alpha' a facet of up(alpha), alpha' != alpha).
    """
    up = dvf.up
    color: dict[LabeledPartition, int] = {}
    edges = 0
    for root in up:
        if root in color:
            continue
        stack = [(root, iter(_gradient_successors(dvf, root)))]
        path = [root]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
                path.pop()
                continue
            edges += 1
            state = color.get(nxt, 0)
            if state == 1:
                loop = path[path.index(nxt):] + [nxt]
                closed = []
                for a in loop[:-1]:
                    closed += [a, up[a]]
                closed.append(nxt)
                return AcyclicReport(False, closed, edges)
            if state == 0:
                color[nxt] = 1
                path.append(nxt)
                stack.append((nxt, iter(_gradient_successors(dvf, nxt))))
    return AcyclicReport(True, [], edges)


def verify_pi_monotone(dvf: DiscreteVectorField, traces: Mapping[LabeledPartition, MorseTrace]) -> Report:
    """Check Pi(alpha') < Pi(alpha) on every gradient step alpha -> beta -> alpha'.

    A step is checked when alpha' is itself the lower cell of a pair, i.e. the
    path can continue through it; steps into a critical or upper cell end the
    path and cannot close it.
    """
    rep = Report("pi")
    checked = terminal = 0
    for p in dvf.pairs:
        ta = traces.get(p.alpha)
        if ta is None:
            rep.add("missing_trace", cell=p.alpha)
            continue
        for nxt, _, _ in p.beta.facets():
            if nxt == p.alpha:
                continue
            if nxt not in dvf.up:
                terminal += 1
                continue
            tn = traces.get(nxt)
            if tn is None:
                rep.add("missing_trace", cell=nxt)
                continue
            checked += 1
            if not tn.pi < ta.pi:
                rep.add("not_decreasing", alpha=p.alpha, beta=p.beta, next=nxt,
                        pi_alpha=list(ta.pi), pi_next=list(tn.pi))
    rep.stats = {"edges_checked": checked, "terminal_edges": terminal}
    return rep


def verify_traces(run: MorseRun, c: Coloring) -> Report:
    """Trace invariants: pivots of color i lie in C_i, no ill-defined pivot
    before the last part, and each pair differs exactly by its step pivot."""
    rep = Report("traces")
    r = run.cells[0].r if run.cells else 0
    for cell, tr in run.traces.items():
        for j, row in enumerate(tr.pivots):
            for i, a in enumerate(row):
                if a is UNREACHED:
                    continue
                if a == ILL_DEFINED:
                    if j < r - 1:
                        rep.add("ill_defined_early", cell=cell, step=[j + 1, i + 1])
                elif not c.classes[i] >> (a - 1) & 1:
                    rep.add("pivot_wrong_color", cell=cell, step=[j + 1, i + 1], pivot=a)
    for p in run.field.pairs:
        j, i = p.step
        ta, tb = run.traces[p.alpha], run.traces[p.beta]
        a = ta.pivots[j - 1][i - 1]
        moved = p.beta.parts[j - 1] ^ p.alpha.parts[j - 1]
        if a != tb.pivots[j - 1][i - 1] or a == ILL_DEFINED or moved != 1 << (a - 1):
            rep.add("pair_not_local", alpha=p.alpha, beta=p.beta, step=[j, i])
    return rep


def _is_maximal(cell: LabeledPartition, fam: ComplexFamily) -> bool:
    return not any(admissible_assignment(co.parts, fam) is not None for co, _, _ in cell.cofaces())


def verify_critical_census(dvf: DiscreteVectorField, params: Parameters, fam: ComplexFamily) -> Report:
    """One 0-dimensional critical cell; every other has >= rk+s vertices and is maximal."""
    rep = Report("census")
    need = params.r * params.k + params.s
    zero = [x for x in dvf.critical if x.dim == 0]
    if len(zero) != 1:
        rep.add("zero_cells", count=len(zero), cells=zero)
    identity = 0
    for x in dvf.critical:
        if all(A in K for A, K in zip(x.parts, fam.members)):
            identity += 1
        if x.dim <= 0:
            continue
        if x.size < need:
            rep.add("too_small", cell=x, vertices=x.size, required=need)
        if not _is_maximal(x, fam):
            rep.add("not_maximal", cell=x)
    rep.stats = {
        "critical_by_dim": {str(d): n for d, n in dvf.critical_by_dim().items()},
        "required_vertices": need,
        "zero_cell": zero[0].to_json() if len(zero) == 1 else None,
        "identity_admissible_critical": identity,
    }
    return rep


@dataclass
class Certificate:
    """``forman`` is the raw Forman evidence; ``certified`` also needs the hypotheses."""

    certified: bool
    level: int
    reasons: list[str]
    forman: bool = False
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        status = f"CERTIFIED({self.level})" if self.certified else "UNCERTIFIED"
        return {"status": status, "certified": self.certified, "level": self.level,
                "forman_criterion": self.forman, "reasons": self.reasons, "notes": self.notes}


def connectivity_certificate(
    dvf: DiscreteVectorField,
    params: Parameters,
    fam: ComplexFamily,
    cells: Iterable[LabeledPartition],
    hypotheses: Sequence[str] = (),
) -> Certificate:
    """Forman: acyclic field, one critical 0-cell, others of dim >= rk+s-1.

    ``hypotheses`` lists violated matching hypotheses (the warnings of a
    forced run). Any entry blocks certification even when the Forman
    criterion itself holds, since the verdict is a claim about the level
    rk+s-2 that the hypotheses tie to the family.
    """
    reasons = []
    field_rep = verify_vector_field(dvf, cells)
    if not field_rep.ok:
        reasons.append(f"invalid vector field: {field_rep.violations[0]['kind']}")
    acyc = verify_acyclic(dvf)
    if not acyc.acyclic:
        reasons.append(f"closed gradient path of length {len(acyc.cycle) // 2}")
    census = verify_critical_census(dvf, params, fam)
    notes = []
    for kind in dict.fromkeys(v["kind"] for v in census.violations):
        # maximality is a structural claim about the matching, not a Forman condition
        (notes if kind == "not_maximal" else reasons).append(f"census: {kind}")
    forman = not reasons
    reasons.extend(f"hypothesis: {h}" for h in hypotheses)
    return Certificate(not reasons, params.connectivity, reasons, forman, notes)


# --- serialization ----------------------------------------------------------


def field_to_json(dvf: DiscreteVectorField) -> dict:
    return {
        "pairs": [{"alpha": p.alpha.to_json(), "beta": p.beta.to_json(),
                   "step": list(p.step) if p.step else None} for p in dvf.pairs],
        "critical": [{"cell": x.to_json(), "dim": x.dim} for x in dvf.critical],
    }


def field_from_json(m: int, data: dict) -> DiscreteVectorField:
    pairs = tuple(
        Pair(LabeledPartition.from_json(m, p["alpha"]), LabeledPartition.from_json(m, p["beta"]),
             tuple(p["step"]) if p.get("step") else None)
        for p in data["pairs"]
    )
    critical = tuple(LabeledPartition.from_json(m, x["cell"]) for x in data["critical"])
    return DiscreteVectorField(pairs, critical)
