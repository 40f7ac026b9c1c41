"""Named complex families: the balanced colored Tverberg family and the
balanced-but-avoidable counterexample to the clique converse."""

from __future__ import annotations

from .complex import Coloring, ComplexFamily, rainbow_complex, simplex_skeleton
from .params import Parameters


def make_bct_family(params: Parameters, c: Coloring | None = None) -> ComplexFamily:
    """K_i = ColDelta^{(k)} for i <= s and ColDelta^{(k-1)} for i > s."""
    if not (params.ctcruc_identity() and params.bct_ground()):
        raise ValueError(
            f"parameters r={params.r}, k={params.k}, s={params.s}, d={params.d}, m={params.m} "
            "violate r(k-1)+s=(r-1)d or m=(2r-1)(k+1)"
        )
    c = c or Coloring.contiguous(params.r, params.k)
    if c.m != params.m:
        raise ValueError(f"coloring is on [{c.m}], parameters say m={params.m}")
    top = rainbow_complex(c, params.k)
    low = rainbow_complex(c, params.k - 1)
    return ComplexFamily(tuple(top if i < params.s else low for i in range(params.r)))


def make_remark_counterexample(r: int, s: int, k: int) -> tuple[int, ComplexFamily]:
    """m = (k+2)(r-s+1)+1 and K_i = Delta^{(k)}_[m] for every i."""
    if r < 2 or not 0 < s <= r or k < 0:
        raise ValueError(f"need r >= 2, 0 < s <= r, k >= 0; got r={r}, s={s}, k={k}")
    m = (k + 2) * (r - s + 1) + 1
    K = simplex_skeleton(m, k)
    return m, ComplexFamily((K,) * r)
