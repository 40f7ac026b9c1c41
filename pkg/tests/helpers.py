"""Shared builders for tests."""

from colortverberg import Coloring, ComplexFamily, Parameters, SimplicialComplex, make_bct_family
from colortverberg.complex import rainbow_complex, vlabels


def bct(r, k, s, d):
    params = Parameters(r=r, d=d, k=k, s=s, m=(2 * r - 1) * (k + 1))
    c = Coloring.contiguous(r, k)
    return params, c, make_bct_family(params, c)


def rainbow_edges(c: Coloring):
    return sorted(f for f in rainbow_complex(c, 1).faces if bin(f).count("1") == 2)


def family_from_masks(c: Coloring, masks, edges=None):
    """K_i = ColDelta^{(0)} plus the rainbow edges selected by bit mask masks[i]."""
    edges = edges or rainbow_edges(c)
    base = rainbow_complex(c, 0).faces
    members = [SimplicialComplex(c.m, base | {e for n, e in enumerate(edges) if mask >> n & 1})
               for mask in masks]
    return ComplexFamily(tuple(members))


def as_sets(K):
    return {frozenset(vlabels(f)) for f in K.faces}


def cell_sets(cell):
    return tuple(frozenset(vlabels(p)) for p in cell.parts)
