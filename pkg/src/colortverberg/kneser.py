"""The r-partite Kneser graph of missing top faces, and the clique criterion."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complex import (
    Coloring,
    ComplexFamily,
    Face,
    is_balanced,
    is_rainbow_balanced,
    rainbow_complex,
    simplex_skeleton,
    vlabels,
)
from .errors import PreconditionError
from .unavoidability import is_collectively_rs_unavoidable, is_rs_rainbow_unavoidable

DEFAULT_NODE_CAP = 5_000_000


@dataclass(frozen=True)
class KneserGraph:
    """Vertices are pairs (i, A) with i 1-based; ``adj[u]`` is a frozenset of indices."""

    r: int
    k: int
    vertices: tuple[tuple[int, Face], ...]
    adj: tuple[frozenset[int], ...]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(len(self.vertices)) for v in self.adj[u] if u < v]

    def by_part(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.r)]
        for u, (i, _) in enumerate(self.vertices):
            out[i - 1].append(u)
        return out

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "k": self.k,
            "vertices": [{"id": u, "complex": i, "face": list(vlabels(A))}
                         for u, (i, A) in enumerate(self.vertices)],
            "adjacency": {str(u): sorted(self.adj[u]) for u in range(len(self.vertices))},
        }


def build_gamma(fam: ComplexFamily, k: int, c: Coloring | None = None) -> KneserGraph:
    """Gamma(fam): missing (k+1)-faces of each K_i, joined when disjoint across parts."""
    if c is None:
        top = simplex_skeleton(fam.m, k)
        for i, K in enumerate(fam.members, 1):
            if not is_balanced(K, fam.m, k):
                raise PreconditionError(_balance_diagnostic(i, K, fam.m, k, None))
    else:
        top = rainbow_complex(c, k)
        for i, K in enumerate(fam.members, 1):
            if not is_rainbow_balanced(K, c, k):
                raise PreconditionError(_balance_diagnostic(i, K, fam.m, k, c))
    tops = sorted((f for f in top.faces if f.bit_count() == k + 1), key=vlabels)
    vertices = tuple((i, A) for i, K in enumerate(fam.members, 1) for A in tops if A not in K.faces)
    adj = tuple(
        frozenset(v for v, (i2, A2) in enumerate(vertices) if i2 != i and not (A & A2))
        for (i, A) in vertices
    )
    return KneserGraph(fam.r, k, vertices, adj)


def _balance_diagnostic(i: int, K, m: int, k: int, c: Coloring | None) -> str:
    kind = "rainbow balanced" if c is not None else "balanced"
    for f in K.faces:
        if f.bit_count() > k + 1:
            return f"K_{i} is not ({m},{k})-{kind}: face {list(vlabels(f))} has size {f.bit_count()} > {k + 1}"
        if c is not None and not c.is_rainbow(f):
            return f"K_{i} is not ({m},{k})-{kind}: face {list(vlabels(f))} (size {f.bit_count()}) is not rainbow"
    reference = simplex_skeleton(m, k - 1) if c is None else rainbow_complex(c, k - 1)
    missing = sorted((f for f in reference.faces if f not in K.faces), key=lambda f: (f.bit_count(), vlabels(f)))
    if missing:
        f = missing[0]
        return f"K_{i} is not ({m},{k})-{kind}: missing face {list(vlabels(f))} of size {f.bit_count()}"
    return f"K_{i} is not ({m},{k})-{kind}"


@dataclass(frozen=True)
class CliqueResult:
    found: bool
    clique: tuple[int, ...] = ()
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.found


def has_clique(g: KneserGraph, q: int, node_cap: int = DEFAULT_NODE_CAP) -> CliqueResult:
    """Branch and bound over the parts: at most one vertex per complex index."""
    if q < 1:
        raise ValueError("clique size must be >= 1")
    if q > g.r:
        return CliqueResult(False)
    parts = [p for p in g.by_part() if p]
    nodes = 0

    def rec(start: int, chosen: list[int], cand: frozenset[int]) -> tuple[int, ...] | None:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise RuntimeError(f"clique search exceeded node cap {node_cap}")
        if len(chosen) == q:
            return tuple(chosen)
        # parts still able to contribute a vertex
        live = [idx for idx in range(start, len(parts)) if any(v in cand for v in parts[idx])]
        if len(chosen) + len(live) < q:
            return None
        for pos, idx in enumerate(live):
            if len(chosen) + len(live) - pos < q:
                break
            for v in parts[idx]:
                if v in cand:
                    found = rec(idx + 1, chosen + [v], cand & g.adj[v])
                    if found:
                        return found
        return None

    everyone = frozenset(range(len(g.vertices)))
    clique = rec(0, [], everyone)
    return CliqueResult(clique is not None, clique or (), nodes)


def is_clique(g: KneserGraph, clique) -> bool:
    return all(v in g.adj[u] for u, v in itertools.combinations(clique, 2))


def check_proposition(fam: ComplexFamily, s: int, k: int, c: Coloring | None = None) -> dict:
    """Compare (r,s)-unavoidability with the absence of an (r-s+1)-clique.

    FAIL when unavoidable but a clique exists; in the rainbow-balanced setting
    also FAIL when no clique exists but the family is not rainbow-unavoidable.
    """
    g = build_gamma(fam, k, c)
    q = fam.r - s + 1
    clique = has_clique(g, q)
    if c is None:
        verdict = is_collectively_rs_unavoidable(fam, s)
    else:
        verdict = is_rs_rainbow_unavoidable(fam, c, s)
    forward_ok = not (verdict.holds and clique.found)
    converse_ok = True if c is None else (clique.found or verdict.holds)
    consistent = forward_ok and converse_ok
    report = {
        "setting": "rainbow" if c is not None else "balanced",
        "r": fam.r,
        "s": s,
        "k": k,
        "clique_size": q,
        "gamma_vertices": len(g.vertices),
        "gamma_edges": len(g.edges),
        "unavoidable": verdict.holds,
        "has_clique": clique.found,
        "consistent": consistent,
        "status": "PASS" if consistent else "FAIL",
    }
    if verdict.witness is not None:
        report["witness"] = verdict.witness.to_json()
    if clique.found:
        report["clique"] = [{"complex": g.vertices[u][0], "face": list(vlabels(g.vertices[u][1]))}
                            for u in clique.clique]
    return report
