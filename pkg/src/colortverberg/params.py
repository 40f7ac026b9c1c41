"""Parameter bundles and the arithmetic identities tying them together."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import ceil


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, nu) with n = p**nu and p prime, or None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        return n, 1
    nu = 0
    while n % p == 0:
        n //= p
        nu += 1
    return (p, nu) if n == 1 else None


@dataclass(frozen=True)
class Parameters:
    r: int
    d: int
    k: int
    s: int
    m: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be a positive integer")
        if self.d < 1:
            raise ValueError("d must be >= 1")
        if self.k < 0:
            raise ValueError("k must be >= 0")
        if not 0 < self.s <= self.r:
            raise ValueError(f"s={self.s} must satisfy 0 < s <= r={self.r}")
        if self.m < 1:
            raise ValueError("m must be >= 1")

    @classmethod
    def for_ctcruc(cls, r: int, k: int, d: int) -> "Parameters":
        """Solve r(k-1) + s = (r-1)d for s and set m = (2r-1)(k+1)."""
        s = (r - 1) * d - r * (k - 1)
        return cls(r=r, d=d, k=k, s=s, m=(2 * r - 1) * (k + 1))

    @property
    def N(self) -> int:
        return self.m - 1

    @property
    def prime(self) -> int | None:
        pp = prime_power(self.r)
        return pp[0] if pp else None

    @property
    def nu(self) -> int | None:
        pp = prime_power(self.r)
        return pp[1] if pp else None

    @property
    def connectivity(self) -> int:
        """rk + s - 2, the connectivity level claimed for the join."""
        return self.r * self.k + self.s - 2

    def ctcruc_identity(self) -> bool:
        return self.r * (self.k - 1) + self.s == (self.r - 1) * self.d

    def bct_ground(self) -> bool:
        return self.m == (2 * self.r - 1) * (self.k + 1)

    def ttrsu_identity(self) -> bool:
        return self.N == (self.r - 1) * (self.d + 2) - self.s + 1

    def to_json(self) -> dict:
        return asdict(self)


def compatible_sd(r: int, k: int, d_max: int | None = None) -> list[tuple[int, int]]:
    """All (s, d) with 0 < s <= r, d >= 1 solving r(k-1) + s = (r-1)d."""
    out = []
    if r == 1:
        # identity degenerates to k - 1 + s = 0 with s = 1, independent of d
        if k == 0 and d_max:
            out = [(1, d) for d in range(1, d_max + 1)]
        return out
    for s in range(1, r + 1):
        num = r * (k - 1) + s
        if num % (r - 1) == 0 and num // (r - 1) >= 1:
            d = num // (r - 1)
            if d_max is None or d <= d_max:
                out.append((s, d))
    return out


def ttrsu_feasible_k(r: int, s: int, d: int) -> list[int]:
    """Skeleton levels k for which a balanced family can be (r,s)-unavoidable.

    Necessary condition m <= (k+2)(r-s+1): otherwise r-s+1 disjoint
    (k+2)-sets all avoid any complex inside Delta^{(k)}.
    """
    m = (r - 1) * (d + 2) - s + 2
    if m < 1:
        return []
    lo = max(0, ceil(m / (r - s + 1)) - 2)
    return list(range(lo, m))


def validate_parameters(
    r: int,
    k: int | None = None,
    s: int | None = None,
    d: int | None = None,
    m: int | None = None,
    theorem: str = "CTCRUC",
) -> dict:
    """Check the identities of the chosen theorem; never raises on bad values."""
    theorem = theorem.upper()
    if theorem not in ("CTCRUC", "TTRSU", "BCT"):
        raise ValueError(f"unknown theorem {theorem!r}")
    checks: list[dict] = []
    pp = prime_power(r)
    checks.append({"name": "prime_power", "ok": pp is not None,
                   "detail": f"r={r} = {pp[0]}^{pp[1]}" if pp else f"r={r} is not a prime power"})
    report: dict = {"theorem": theorem, "r": r, "k": k, "s": s, "d": d, "m": m, "checks": checks}

    if s is not None:
        checks.append({"name": "s_range", "ok": 0 < s <= r, "detail": f"0 < s={s} <= r={r}"})

    if theorem in ("CTCRUC", "BCT"):
        if k is None:
            raise ValueError(f"{theorem} validation needs k")
        expected_m = (2 * r - 1) * (k + 1)
        report["expected_m"] = expected_m
        report["expected_N"] = expected_m - 1
        report["compatible_sd"] = [list(x) for x in compatible_sd(r, k)]
        if m is not None:
            checks.append({"name": "ground_size", "ok": m == expected_m,
                           "detail": f"m={m}, (2r-1)(k+1)={expected_m}"})
        if s is not None and d is not None:
            lhs, rhs = r * (k - 1) + s, (r - 1) * d
            checks.append({"name": "dimension_identity", "ok": lhs == rhs,
                           "detail": f"r(k-1)+s={lhs}, (r-1)d={rhs}"})
    else:
        if s is None or d is None:
            raise ValueError("TTRSU validation needs s and d")
        N = (r - 1) * (d + 2) - s + 1
        report["expected_N"] = N
        report["expected_m"] = N + 1
        report["feasible_k"] = ttrsu_feasible_k(r, s, d)
        if m is not None:
            checks.append({"name": "simplex_dimension", "ok": m - 1 == N,
                           "detail": f"N=m-1={m - 1}, (r-1)(d+2)-s+1={N}"})
        if k is not None:
            checks.append({"name": "k_feasible", "ok": k in report["feasible_k"],
                           "detail": f"k={k} among necessary range"})
    report["ok"] = all(c["ok"] for c in checks)
    return report
